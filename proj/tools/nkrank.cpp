// nkrank: command-line front end.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 I/O, format or usage error, 3 infeasible system or exhausted budget.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nkrank/nkrank.hpp"
#include "report.hpp"

namespace {

using namespace nkrank;
using nkrank::cli::Report;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_io = 2;
constexpr int exit_infeasible = 3;

/// Raised when a search ends without any candidate.
class NoResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::size_t> n, k, beta;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t budget = 10000;
  std::size_t threshold = 20;
  std::size_t restarts = 4;
  std::size_t n_max = 200;
  bool geometric = false;
  std::string form = "identity";
  std::string file;
  std::string output;
  std::string json;
  unsigned threads = 1;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing required flag ") + flag);
  return *v;
}

std::string oct_name(const JoinPower& jp, std::size_t index) { return to_string(jp.octahedron({index})); }

OctMatrix load_matrix(const Options& o) {
  std::ifstream in(o.file);
  if (!in) throw FormatError("cannot open '" + o.file + "'");
  Gf2mFile f = read_gf2m(in);
  std::size_t n = 0, k = 0;
  if (f.meta) {
    if ((o.n && *o.n != f.meta->n) || (o.k && *o.k != f.meta->k))
      throw FormatError("--n/--k contradict the file's meta line");
    n = f.meta->n;
    k = f.meta->k;
  } else {
    if (!o.n || !o.k) throw FormatError("file has no meta line; pass --n and --k");
    n = *o.n;
    k = *o.k;
  }
  if (n < 2) throw FormatError("n must be at least 2");
  const std::size_t size = JoinPower(n, k).octahedron_count();
  if (f.matrix.rows() != size || f.matrix.cols() != size)
    throw FormatError("matrix is not C(n,2)^(k+1) square for n=" + std::to_string(n) + " k=" + std::to_string(k));
  return {n, k, std::move(f.matrix)};
}

void save_matrix(const std::string& path, const OctMatrix& a) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  write_gf2m(out, a.matrix(), Gf2mMeta{a.n(), a.k()});
  if (!out) throw FormatError("write failed for '" + path + "'");
}

/// "a.gf2m" -> "a-3.gf2m" when several files are written.
std::string indexed_path(const std::string& path, std::size_t i, std::size_t count) {
  if (count == 1) return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? path.substr(0, dot) : path;
  const std::string ext = has_ext ? path.substr(dot) : "";
  return stem + "-" + std::to_string(i) + ext;
}

void add_nk_params(Report& r, std::size_t n, std::size_t k) {
  r.param("n", std::to_string(n));
  r.param("k", std::to_string(k));
}

void property_verdicts(Report& r, const OctMatrix& a, const PropertyReport& p) {
  const JoinPower& jp = a.indexing();
  auto pair_witness = [&](const std::optional<std::pair<std::size_t, std::size_t>>& w) -> std::optional<std::string> {
    if (!w) return std::nullopt;
    return "P=" + oct_name(jp, w->first) + " Q=" + oct_name(jp, w->second);
  };
  r.verdict("symmetric", "nk-matrix-definition", p.symmetric, pair_witness(p.symmetry_witness));
  r.verdict("independent", "nk-matrix-definition", p.independent, pair_witness(p.independence_witness));
  std::optional<std::string> add;
  if (p.additivity_witness) {
    const auto& w = *p.additivity_witness;
    add = "P=" + oct_name(jp, w.p) + " X=" + oct_name(jp, w.x) + " Y=" + oct_name(jp, w.y) + " Q=" + oct_name(jp, w.q);
  }
  r.verdict("additive", "nk-matrix-definition", p.additive, add);
  r.verdict("nontrivial", "nk-matrix-definition", p.nontrivial,
            p.nontrivial ? std::nullopt : std::optional<std::string>("SA=0"));
}

// ---- verify -------------------------------------------------------------

Report verify_combinatorial(const Options& o) {
  const std::size_t k = need(o.k, "--k");
  const std::size_t n = o.n.value_or(4);
  Report r;
  r.command = "verify combinatorial";
  add_nk_params(r, n, k);

  const auto id = verify_combinatorial_identity(k);
  std::optional<std::string> w;
  if (id.witness) w = to_string(id.witness->first) + " " + to_string(id.witness->second);
  r.verdict("disjoint-pairs-equal-octahedron-sum", "combinatorial-identity", id.holds, w);
  r.number("disjoint-ordered-pairs", id.disjoint_pairs);
  r.number("octahedron-product-sum-size", id.product_sum_size);
  r.number("octahedron-pairs-meeting-at-base", id.octahedron_pairs);

  if (k >= 1) {
    const auto cob = scan_elementary_coboundaries(k);
    std::optional<std::string> cw;
    if (cob.witness) cw = "alpha=" + to_string(cob.witness->first) + " e=" + to_string(cob.witness->second);
    r.verdict("coboundaries-have-size-two", "elementary-coboundary", cob.all_size_two, cw);
    r.number("coboundaries-checked", cob.checked);
  }

  const auto oc = verify_one_coordinate_only(n, k);
  std::optional<std::string> ow;
  if (oc.witness)
    ow = "P=" + to_string(oc.witness->first) + " X=" + to_string(oc.witness->second.first) +
         " Y=" + to_string(oc.witness->second.second);
  r.verdict("decompositions-are-one-coordinate", "one-coordinate-decompositions", oc.holds, ow);
  r.number("octahedra-checked", oc.octahedra_checked);
  r.number("decompositions-found", oc.decompositions);
  return r;
}

Report verify_vankampen(const Options& o) {
  const std::size_t k = need(o.k, "--k");
  Report r;
  r.command = "verify vankampen";
  r.param("k", std::to_string(k));
  r.param("geometric", bool_str(o.geometric));
  const auto v = van_kampen_number(k, o.geometric, o.threads);
  const std::size_t expected = ipow(3, k + 1);
  r.verdict("intersecting-pairs-odd", "van-kampen-parity", v.parity && v.intersecting == expected,
            v.intersecting == expected ? std::nullopt
                                       : std::optional<std::string>("count " + std::to_string(v.intersecting)));
  r.number("disjoint-pairs", v.disjoint_pairs);
  r.number("intersecting-pairs", v.intersecting);
  r.number("expected-pairs", expected);
  r.number("v", v.parity ? 1 : 0);
  if (o.geometric) {
    const auto g = moment_map(k);
    const std::size_t points = g.coordinates.size();
    const std::size_t take = std::min(points, 2 * k + 1);
    bool independent = true;
    std::size_t subsets = 0;
    std::vector<bool> mask(points, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(take), true);
    do {
      std::vector<Point> pts;
      for (std::size_t i = 0; i < points; ++i)
        if (mask[i]) pts.push_back(g.coordinates[i]);
      ++subsets;
      independent = independent && affinely_independent(pts);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    r.verdict("moment-map-general-position", "moment-curve-independence", independent);
    r.number("point-subsets-checked", subsets);

    std::optional<std::string> w;
    if (v.disagreement) w = to_string(v.disagreement->first) + " " + to_string(v.disagreement->second);
    r.verdict("exact-solve-matches-alternation", "intersection-criterion",
              v.geometric_agreements == v.disjoint_pairs && v.boundary_contacts == 0, w);
    r.number("geometric-agreements", v.geometric_agreements);
    r.number("boundary-contacts", v.boundary_contacts);
  }
  return r;
}

Report verify_bounds(const Options& o) {
  const std::size_t k = need(o.k, "--k");
  const std::size_t beta = o.beta.value_or(2);
  Report r;
  r.command = "verify bounds";
  r.param("k", std::to_string(k));
  r.param("n-max", std::to_string(o.n_max));
  r.param("beta", std::to_string(beta));

  const auto scan = gamma_inequality_scan(k, o.n_max);
  std::size_t holding = 0;
  for (const auto& row : scan.rows) holding += row.holds ? 1 : 0;
  std::optional<std::string> w;
  if (!scan.threshold) w = "no trailing run of " + std::to_string(k + 2) + " holding values";
  r.verdict("eventually-both-inequalities-hold", "gamma-inequalities", scan.threshold.has_value(), w);
  r.number("values-holding", holding);
  r.number("threshold", scan.threshold ? std::to_string(*scan.threshold) : std::string("none"));
  for (const auto& row : scan.rows)
    if (row.n == 10) {
      r.number("left-at-10", to_decimal(row.left));
      r.number("middle-at-10", to_decimal(row.middle));
      r.number("right-at-10", to_decimal(row.right));
    }

  bool consistent = true;
  std::optional<std::string> cw;
  std::size_t checked = 0;
  for (std::size_t n = 5 * k + 3; n <= std::max<std::size_t>(o.n_max, 5 * k + 3); ++n) {
    ++checked;
    if (!skeleton_consistent(n, k) && consistent) {
      consistent = false;
      cw = "n=" + std::to_string(n);
    }
  }
  r.verdict("skeleton-bound-below-joinpower-bound", "skeleton-reduction", consistent, cw);
  r.number("skeleton-values-checked", checked);

  const auto h = helly_threshold(k, beta);
  r.verdict("threshold-enclosure-width", "helly-threshold", h.width() < Rational(1, 1000000));
  r.number("helly-lower", to_decimal(h.lower));
  r.number("helly-upper", to_decimal(h.upper));
  return r;
}

Report bounds_report(const Options& o) {
  const std::size_t n = need(o.n, "--n");
  const std::size_t k = need(o.k, "--k");
  Report r;
  r.command = "bounds";
  add_nk_params(r, n, k);
  if (o.beta) r.param("beta", std::to_string(*o.beta));
  const auto b = evaluate_bounds(n, k, o.beta);
  r.number("heawood", to_decimal(b.heawood));
  r.number("skeleton-bound", to_decimal(b.skeleton_bound));
  r.number("skeleton-valid", bool_str(b.skeleton_valid));
  r.number("joinpower-bound", to_decimal(b.joinpower_bound));
  r.number("joinpower-valid", bool_str(b.joinpower_valid));
  r.number("kuhnel-coefficient", to_decimal(b.kuhnel_coefficient));
  r.number("kuhnel-rhs", to_decimal(b.kuhnel_rhs));
  r.number("gamma", b.gamma ? to_decimal(*b.gamma) : std::string("undefined"));
  r.number("gamma-negative", bool_str(b.gamma_negative));
  if (b.helly) {
    r.number("helly-lower", to_decimal(b.helly->lower));
    r.number("helly-upper", to_decimal(b.helly->upper));
  }
  r.number("crossing-bound", to_decimal(b.crossing_bound));
  return r;
}

// ---- matrix files -------------------------------------------------------

Report check_file(const Options& o) {
  const OctMatrix a = load_matrix(o);
  Report r;
  r.command = "check";
  add_nk_params(r, a.n(), a.k());
  const auto p = check_properties(a);
  property_verdicts(r, a, p);
  r.number("size", a.size());
  r.number("sa", p.sa_value ? 1 : 0);
  return r;
}

Report rank_file(const Options& o) {
  const OctMatrix a = load_matrix(o);
  Report r;
  r.command = "rank";
  add_nk_params(r, a.n(), a.k());
  const auto p = check_properties(a);
  r.number("rank", rank(a.matrix()));
  r.number("is-nk-matrix", bool_str(p.is_nk_matrix()));
  if (!p.is_nk_matrix()) {
    r.verdict("is-nk-matrix", "nk-matrix-definition", false, "not " + p.first_failure());
  } else if (a.n() >= 4 && a.k() >= 1) {
    const auto rb = verify_rank_bound(a, &p);
    r.verdict("rank-at-least-bound", "rank-lower-bound", rb.pass);
    r.number("bound", rb.bound);
    r.number("bound-exact", std::to_string(rb.bound_numerator) + "/" + std::to_string(rb.bound_denominator));
    for (const auto& s : rb.chain) {
      const std::string pre = "level-" + std::to_string(s.level) + "-";
      r.number(pre + "rank", s.rank);
      if (s.level > 1) {
        r.number(pre + "rank-block-23", s.rank_block_23);
        r.number(pre + "rank-block-32", s.rank_block_32);
        r.number(pre + "rank-reduced", s.rank_reduced);
      }
    }
  }
  return r;
}

Report heredity_file(const Options& o) {
  const OctMatrix a = load_matrix(o);
  Report r;
  r.command = "heredity";
  add_nk_params(r, a.n(), a.k());
  if (a.k() < 1 || a.n() < 4) throw std::invalid_argument("heredity needs k >= 1 and n >= 4");
  const auto p = check_properties(a);
  if (!p.is_nk_matrix()) {
    property_verdicts(r, a, p);
    return r;
  }
  const Gf2Matrix b23 = coordinate_block(a, bar(2), bar(3));
  const Gf2Matrix b32 = coordinate_block(a, bar(3), bar(2));
  const OctMatrix z = heredity_reduce(a);
  const auto pz = check_properties(z);
  std::optional<std::string> w;
  if (!pz.is_nk_matrix()) w = "reduced matrix is not " + pz.first_failure();
  r.verdict("reduction-is-nk-matrix", "heredity", pz.is_nk_matrix(), w);
  const std::size_t ra = rank(a.matrix()), r23 = rank(b23), r32 = rank(b32), rz = rank(z.matrix());
  r.verdict("rank-halving-chain", "heredity-rank", 2 * ra >= r23 + r32 && r23 + r32 >= rz);
  r.number("rank", ra);
  r.number("rank-block-23", r23);
  r.number("rank-block-32", r32);
  r.number("rank-reduced", rz);
  if (!o.output.empty()) save_matrix(o.output, z);
  return r;
}

Report k1_certify_file(const Options& o) {
  const OctMatrix a = load_matrix(o);
  Report r;
  r.command = "k1 certify";
  add_nk_params(r, a.n(), a.k());
  if (a.k() != 1 || a.n() < 4) throw std::invalid_argument("k1 certify needs k = 1 and n >= 4");
  const auto p = check_properties(a);
  if (!p.is_nk_matrix()) {
    property_verdicts(r, a, p);
    return r;
  }
  const auto c = certify_k1(a, &p);
  std::optional<std::string> bw, tw;
  if (c.block_sums.witness)
    bw = "i=" + std::to_string(c.block_sums.witness->i) + " j=" + std::to_string(c.block_sums.witness->j) +
         " s=" + std::to_string(c.block_sums.witness->s);
  if (c.first_row.witness) tw = "j=" + std::to_string(*c.first_row.witness);
  r.verdict("block-sums-diagonal-or-inversed", "block-sum-structure", c.block_sums.holds, bw);
  r.verdict("first-block-row-tournament", "tournament-row", c.first_row.holds, tw);
  if (c.staircase) r.verdict("c-plus-d-rank-at-most-l-minus-1", "staircase-rank", c.staircase->pass);
  if (c.certificate) {
    std::optional<std::string> cw;
    if (!c.certificate->pass) cw = c.certificate->failure;
    r.verdict("d-rank-certificate", "diagonal-tournament-rank", c.certificate->pass, cw);
    r.number("certificate-steps", c.certificate->pivots.size());
    r.number("certificate-bound", c.certificate->bound);
  }
  std::optional<std::string> fw;
  if (!c.pass && !c.failure.empty()) fw = c.failure;
  r.verdict("rank-chain", "k1-rank-chain", c.pass, fw);
  r.number("rank-a", c.rank_a);
  r.number("rank-b", c.rank_b);
  r.number("rank-c", c.rank_c);
  r.number("rank-d", c.rank_d);
  r.number("rank-c-plus-d", c.rank_c_plus_d);
  r.number("d-bound", c.d_bound);
  r.number("final-bound", c.final_bound);
  return r;
}

// ---- constraint space ---------------------------------------------------

Report space_build(const Options& o) {
  const std::size_t n = need(o.n, "--n"), k = need(o.k, "--k");
  Report r;
  r.command = "space build";
  add_nk_params(r, n, k);
  const auto sys = build_system(n, k);
  r.verdict("single-affine-equation", "nk-matrix-definition", sys.count_rhs_one() == 1);
  r.number("variables", sys.variable_count);
  r.number("equations", sys.equations.size());
  r.number("fixed-zero", sys.count_fixed_zero());
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) throw FormatError("cannot write '" + o.output + "'");
    write_nksys(out, sys);
  }
  return r;
}

SolutionSpace load_space(const Options& o, Report& r) {
  // With --system, (n, k) come from the file; flags, if given, must agree.
  ConstraintSystem sys;
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw FormatError("cannot open '" + o.file + "'");
    sys = read_nksys(in);
    if ((o.n && *o.n != sys.n) || (o.k && *o.k != sys.k))
      throw FormatError("system file is for a different (n, k)");
  } else {
    sys = build_system(need(o.n, "--n"), need(o.k, "--k"));
  }
  add_nk_params(r, sys.n, sys.k);
  auto space = solve_space(sys);
  r.number("dimension", space.dimension());
  return space;
}

Report space_sample(const Options& o) {
  Report r;
  r.command = "space sample";
  const auto space = load_space(o, r);
  r.param("count", std::to_string(o.count));
  r.seed = o.seed;
  const auto samples = sample(space, o.seed, o.count, o.threads);
  const PropertyChecker checker(space.n, space.k);
  std::size_t good = 0, above = 0;
  const bool bounded = space.n >= 4 && space.k >= 1;
  const std::size_t bound = bounded ? rank_lower_bound(space.n, space.k) : 0;
  std::optional<std::string> w, bw;
  std::vector<std::size_t> ranks(samples.size());
  parallel_chunks(samples.size(), o.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ranks[i] = rank(samples[i].matrix());
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto p = checker.check(samples[i]);
    if (p.is_nk_matrix())
      ++good;
    else if (!w)
      w = "sample " + std::to_string(i) + " is not " + p.first_failure();
    if (ranks[i] >= bound)
      ++above;
    else if (!bw)
      bw = "sample " + std::to_string(i) + " rank " + std::to_string(ranks[i]);
  }
  r.verdict("samples-are-nk-matrices", "nk-matrix-definition", good == samples.size(), w);
  if (bounded) {
    r.verdict("sample-ranks-at-least-bound", "rank-lower-bound", above == samples.size(), bw);
    r.number("bound", bound);
  }
  std::size_t lo = samples.empty() ? 0 : ranks[0], hi = lo;
  for (auto x : ranks) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  r.number("min-rank", lo);
  r.number("max-rank", hi);
  if (!o.output.empty())
    for (std::size_t i = 0; i < samples.size(); ++i) save_matrix(indexed_path(o.output, i, samples.size()), samples[i]);
  return r;
}

Report space_minrank(const Options& o) {
  Report r;
  r.command = "space minrank";
  const auto space = load_space(o, r);
  r.param("budget", std::to_string(o.budget));
  r.param("threshold", std::to_string(o.threshold));
  r.param("restarts", std::to_string(o.restarts));
  r.seed = o.seed;
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  cfg.exhaustive_threshold = o.threshold;
  cfg.restarts = o.restarts;
  cfg.threads = o.threads;
  const auto res = min_rank_search(space, cfg);
  r.number("method", to_string(res.method));
  if (!res.found) throw NoResult("budget 0 with a coset above the exhaustive threshold: no result");
  r.number("best-rank", res.best_rank);
  r.number("evaluations", res.evaluations);
  if (space.n >= 4 && space.k >= 1) {
    r.verdict("best-rank-at-least-bound", "rank-lower-bound", res.best_rank >= res.lower_bound);
    r.number("bound", res.lower_bound);
  }
  if (!o.output.empty()) save_matrix(o.output, *res.witness);
  return r;
}

Report gram_report(const Options& o) {
  const std::size_t n = need(o.n, "--n"), k = need(o.k, "--k"), beta = need(o.beta, "--beta");
  if (o.form != "identity" && o.form != "hyperbolic") throw std::invalid_argument("--form is identity or hyperbolic");
  Report r;
  r.command = "gram";
  add_nk_params(r, n, k);
  r.param("beta", std::to_string(beta));
  r.param("form", o.form);
  r.param("count", std::to_string(o.count));
  r.seed = o.seed;
  const GramForm form = o.form == "identity" ? GramForm::identity : GramForm::hyperbolic;
  std::mt19937_64 rng(o.seed);
  const std::size_t cols = JoinPower(n, k).octahedron_count();
  std::vector<Gf2Matrix> ys;
  for (std::size_t i = 0; i < o.count; ++i) ys.push_back(Gf2Matrix::random(beta, cols, rng));
  std::vector<std::optional<OctMatrix>> out(ys.size());
  parallel_chunks(ys.size(), o.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = gram_construct(beta, form, ys[i], n, k);
  });
  std::size_t within = 0, symmetric = 0, max_rank = 0;
  std::optional<std::string> w;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t rk = rank(out[i]->matrix());
    max_rank = std::max(max_rank, rk);
    symmetric += out[i]->matrix().is_symmetric() ? 1 : 0;
    if (rk <= beta)
      ++within;
    else if (!w)
      w = "sample " + std::to_string(i) + " rank " + std::to_string(rk);
  }
  r.verdict("gram-rank-at-most-beta", "gram-construction", within == out.size(), w);
  r.verdict("gram-symmetric", "gram-construction", symmetric == out.size());
  r.number("max-rank", max_rank);
  if (!o.output.empty() && !out.empty()) save_matrix(o.output, *out[0]);
  return r;
}

int emit(const Report& r, const Options& o) {
  cli::write_text(std::cout, r);
  if (!o.json.empty()) {
    std::ofstream out(o.json);
    if (!out) throw FormatError("cannot write '" + o.json + "'");
    out << cli::to_json(r).dump(2) << '\n';
  }
  return r.all_pass() ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank bounds and constraint spaces for (n,k)-matrices over GF(2)"};
  app.require_subcommand(1);
  Options o;

  auto nk = [&](CLI::App* c, bool required) {
    auto* n = c->add_option("--n", o.n, "vertices per line");
    auto* k = c->add_option("--k", o.k, "dimension k");
    if (required) {
      n->required();
      k->required();
    }
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--json", o.json, "also write the report as JSON");
    c->add_option("--threads", o.threads, "worker threads (output does not depend on it)")
        ->check(CLI::Range(1U, 256U));
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  auto* v_comb = verify->add_subcommand("combinatorial", "pair identity, coboundaries, decompositions");
  nk(v_comb, false);
  common(v_comb);
  auto* v_vk = verify->add_subcommand("vankampen", "van Kampen number of the moment-curve map");
  v_vk->add_option("--k", o.k)->required();
  v_vk->add_flag("--geometric", o.geometric, "cross-check with exact rational intersection");
  common(v_vk);
  auto* v_bounds = verify->add_subcommand("bounds", "exact checks of the bound formulas");
  v_bounds->add_option("--k", o.k)->required();
  v_bounds->add_option("--n", o.n_max, "largest n scanned")->check(CLI::PositiveNumber);
  v_bounds->add_option("--beta", o.beta);
  common(v_bounds);

  auto* check = app.add_subcommand("check", "check the four (n,k)-matrix properties");
  check->add_option("file", o.file)->required();
  nk(check, false);
  common(check);
  auto* rank_cmd = app.add_subcommand("rank", "rank and rank lower bound");
  rank_cmd->add_option("file", o.file)->required();
  nk(rank_cmd, false);
  common(rank_cmd);
  auto* her = app.add_subcommand("heredity", "reduce an (n,k)-matrix to an (n,k-1)-matrix");
  her->add_option("file", o.file)->required();
  her->add_option("-o", o.output, "output GF2M file");
  nk(her, false);
  common(her);

  auto* k1 = app.add_subcommand("k1", "k = 1 tools");
  k1->require_subcommand(1);
  auto* k1c = k1->add_subcommand("certify", "certify the k = 1 rank chain");
  k1c->add_option("file", o.file)->required();
  nk(k1c, false);
  common(k1c);

  auto* space = app.add_subcommand("space", "the affine space of (n,k)-matrices");
  space->require_subcommand(1);
  auto* s_build = space->add_subcommand("build", "write the constraint system");
  nk(s_build, true);
  s_build->add_option("-o", o.output, "output NKSYS file");
  common(s_build);
  auto* s_sample = space->add_subcommand("sample", "seeded samples");
  nk(s_sample, false);  // required unless --system is given
  s_sample->add_option("--system", o.file, "read the system from an NKSYS file");
  s_sample->add_option("--seed", o.seed, "RNG seed");
  s_sample->add_option("--count", o.count, "number of samples");
  s_sample->add_option("-o", o.output, "output GF2M path (indexed when count > 1)");
  common(s_sample);
  auto* s_min = space->add_subcommand("minrank", "minimum-rank search");
  nk(s_min, false);
  s_min->add_option("--system", o.file, "read the system from an NKSYS file");
  s_min->add_option("--seed", o.seed, "RNG seed");
  s_min->add_option("--budget", o.budget, "rank evaluations for the heuristic search");
  s_min->add_option("--threshold", o.threshold, "enumerate the coset when its dimension is at most this");
  s_min->add_option("--restarts", o.restarts, "independent descent chains")->check(CLI::PositiveNumber);
  s_min->add_option("-o", o.output, "write the best matrix");
  common(s_min);

  auto* gram_cmd = app.add_subcommand("gram", "Gram-form matrices y^T Omega y");
  nk(gram_cmd, true);
  gram_cmd->add_option("--beta", o.beta)->required();
  gram_cmd->add_option("--form", o.form, "identity or hyperbolic");
  gram_cmd->add_option("--seed", o.seed, "RNG seed");
  gram_cmd->add_option("--count", o.count, "number of random y");
  gram_cmd->add_option("-o", o.output, "write the first matrix");
  common(gram_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the bound formulas");
  nk(bounds_cmd, true);
  bounds_cmd->add_option("--beta", o.beta);
  common(bounds_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_io;
  }

  try {
    Report r;
    if (*v_comb) r = verify_combinatorial(o);
    else if (*v_vk) r = verify_vankampen(o);
    else if (*v_bounds) r = verify_bounds(o);
    else if (*check) r = check_file(o);
    else if (*rank_cmd) r = rank_file(o);
    else if (*her) r = heredity_file(o);
    else if (*k1c) r = k1_certify_file(o);
    else if (*s_build) r = space_build(o);
    else if (*s_sample) r = space_sample(o);
    else if (*s_min) r = space_minrank(o);
    else if (*gram_cmd) r = gram_report(o);
    else if (*bounds_cmd) r = bounds_report(o);
    return emit(r, o);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return exit_infeasible;
  } catch (const NoResult& e) {
    std::cerr << "no result: " << e.what() << '\n';
    return exit_infeasible;
  } catch (const PreconditionError& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return exit_check_failed;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return exit_check_failed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  }
}
