// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every sample count, size range, seed and time limit is pinned here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nkrank/nkrank.hpp"
#include "support/oracles.hpp"
#include "support/run.hpp"

using namespace nkrank;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::vector<OctMatrix> seeded_samples(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t count) {
  return sample(solve_space(build_system(n, k)), seed, count, 4);
}

// 1. Pair identity for k = 0..3, sizes 6 and 36 at k = 0 and 1, under 10 s.
Outcome combinatorial_identity() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool ok = true;
  for (std::size_t k = 0; k <= 3; ++k) {
    const auto r = verify_combinatorial_identity(k);
    ok = ok && r.holds && r.disjoint_pairs == r.product_sum_size;
    d << "k=" << k << ":" << r.disjoint_pairs << (r.holds ? "" : "(fails)") << " ";
    if (k == 0) ok = ok && r.disjoint_pairs == 6;
    if (k == 1) ok = ok && r.disjoint_pairs == 36;
  }
  const double s = seconds_since(t0);
  ok = ok && s < 10.0;
  d << fmt_seconds(s) << " (limit 10s)";
  return {ok, d.str()};
}

// 2. Count 3^{k+1} for k = 1..6; exact geometry agrees on every pair for k = 1, 2; under 60 s.
Outcome van_kampen() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool ok = true;
  std::size_t three = 3;
  for (std::size_t k = 1; k <= 6; ++k) {
    three *= 3;
    const auto r = van_kampen_number(k, k <= 2, 4);
    ok = ok && r.intersecting == three && r.parity;
    if (k <= 2) {
      ok = ok && r.geometric_agreements == r.disjoint_pairs && !r.disagreement;
      d << "k=" << k << ":" << r.intersecting << " geo " << r.geometric_agreements << "/" << r.disjoint_pairs << " ";
    } else {
      d << "k=" << k << ":" << r.intersecting << " ";
    }
  }
  const double s = seconds_since(t0);
  ok = ok && s < 60.0;
  d << fmt_seconds(s) << " (limit 60s)";
  return {ok, d.str()};
}

// 3. Only one-coordinate XOR decompositions at (4,1), (5,1), (4,2); the
// pairwise oracle confirms the enumeration itself at (4,1).
Outcome one_coordinate_decompositions_only() {
  std::ostringstream d;
  bool ok = true;
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{4, 1}, {5, 1}, {4, 2}}) {
    const auto r = verify_one_coordinate_only(n, k);
    ok = ok && r.holds;
    d << "(" << n << "," << k << "):" << r.decompositions << (r.holds ? " " : " EXTRA ");
  }
  const auto all = oracle::octahedra(4, 1);
  std::size_t mismatches = 0;
  for (const auto& p : all) {
    const auto ref = oracle::xor_decompositions(p, all);
    const auto fam = one_coordinate_decompositions(p, 4);
    std::set<std::pair<Octahedron, Octahedron>> got;
    for (const auto& x : fam) got.insert({x.first, x.second});
    mismatches += got == ref ? 0 : 1;
  }
  ok = ok && mismatches == 0;
  d << "oracle mismatches at (4,1): " << mismatches;
  return {ok, d.str()};
}

// 4. (4,1): feasible, 100 seeded samples pass all four checks with rank >= 1,
// and the min-rank search reports a method.
Outcome space_four_one() {
  const auto sys = build_system(4, 1);
  const auto space = solve_space(sys);  // throws InfeasibleError otherwise
  const auto samples = sample(space, 2026, 100, 4);
  const PropertyChecker checker(4, 1);
  const oracle::NaiveChecker naive(4, 1);
  std::size_t good = 0, ranked = 0, min_rank = SIZE_MAX;
  for (const auto& a : samples) {
    const bool fast = checker.check(a).is_nk_matrix();
    const bool slow = naive.is_nk([&](std::size_t p, std::size_t q) { return a.matrix().get(p, q); });
    good += fast && slow ? 1 : 0;
    const std::size_t r = rank(a.matrix());
    ranked += r >= 1 ? 1 : 0;
    min_rank = std::min(min_rank, r);
  }
  SearchConfig cfg;
  cfg.seed = 2026;
  cfg.budget = 2000;
  cfg.threads = 4;
  const auto mr = min_rank_search(space, cfg);
  std::ostringstream d;
  d << "dim " << space.dimension() << ", " << good << "/100 pass checks, " << ranked << "/100 rank>=1 (min " << min_rank
    << "), minrank " << mr.best_rank << " [" << to_string(mr.method) << "]";
  return {good == 100 && ranked == 100 && mr.found && mr.best_rank >= 1, d.str()};
}

// 5. 20 sampled (4,2)-matrices reduce to (4,1)-matrices; rank chain holds.
Outcome heredity() {
  std::size_t reduced_ok = 0, chain_ok = 0;
  for (const auto& a : seeded_samples(4, 2, 2026, 20)) {
    const OctMatrix z = heredity_reduce(a);
    reduced_ok += check_properties(z).is_nk_matrix() ? 1 : 0;
    const std::size_t ra = rank(a.matrix());
    const std::size_t r23 = rank(coordinate_block(a, bar(2), bar(3)));
    const std::size_t r32 = rank(coordinate_block(a, bar(3), bar(2)));
    const std::size_t rz = rank(z.matrix());
    chain_ok += 2 * ra >= r23 + r32 && r23 + r32 >= rz ? 1 : 0;
  }
  std::ostringstream d;
  d << reduced_ok << "/20 reductions pass (4,1) checks, " << chain_ok << "/20 rank chains hold";
  return {reduced_ok == 20 && chain_ok == 20, d.str()};
}

// 6. 20 sampled (5,1)-matrices: structural checks and the full chain, under 60 s.
Outcome k1_pipeline() {
  const auto t0 = Clock::now();
  std::size_t structural = 0, chain = 0;
  std::size_t min_a = SIZE_MAX;
  for (const auto& a : seeded_samples(5, 1, 2026, 20)) {
    const auto props = check_properties(a);
    const bool s = check_block_sums(a, &props).holds && check_first_row_tournaments(a, &props).holds;
    structural += s ? 1 : 0;
    const auto c = certify_k1(a, &props);
    // rk A >= rk B >= rk C >= rk D - rk(C+D) >= (5-2)^2/2 - 2, compared doubled.
    const bool ok = c.pass && c.rank_a >= c.rank_b && c.rank_b >= c.rank_c &&
                    c.rank_c + c.rank_c_plus_d >= c.rank_d &&
                    2 * c.rank_d >= 2 * c.rank_c_plus_d + 9 - 4 && c.rank_a >= 2;
    chain += ok ? 1 : 0;
    min_a = std::min(min_a, c.rank_a);
  }
  const double sec = seconds_since(t0);
  std::ostringstream d;
  d << structural << "/20 structural, " << chain << "/20 chains certify rank>=2 (min rk A " << min_a << "), "
    << fmt_seconds(sec) << " (limit 60s)";
  return {structural == 20 && chain == 20 && sec < 60.0, d.str()};
}

// 7. 1000 random tournaments, m <= 64.
Outcome tournaments() {
  std::mt19937_64 rng(7001);
  std::size_t ok = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = rng() % 64 + 1;
    const Gf2Matrix y = oracle::random_tournament(m, rng);
    const auto r = tournament_rank_check(y);
    const std::size_t sym = rank(y + y.transpose());
    ok += r.is_tournament && r.rank >= (m - 1 + 1) / 2 && sym == (m % 2 ? m - 1 : m) ? 1 : 0;
  }
  return {ok == 1000, std::to_string(ok) + "/1000 meet ceil((m-1)/2) with rk(Y+Y^T) = m-1 or m"};
}

// 8. 1000 random staircase block matrices, l <= 6, m <= 8.
Outcome staircase() {
  std::mt19937_64 rng(8001);
  std::size_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t l = rng() % 6 + 1, m = rng() % 8 + 1;
    const auto r = staircase_rank_bound(oracle::random_staircase(l, m, rng));
    failures += r.pass ? 0 : 1;
  }
  return {failures == 0, std::to_string(failures) + " failures of rank <= l-1 in 1000"};
}

// 9. 500 random diagonal-like matrices, l <= 4, m_i <= 6.
Outcome certificate() {
  std::mt19937_64 rng(9001);
  std::size_t failures = 0, pivots = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t l = rng() % 4 + 1, m = rng() % 6 + 1;
    const auto s = oracle::random_diag_like(l, m, rng);
    const auto c = diag_tournament_certify(s.matrix, s.layout);
    bool ok = c.pass && c.steps_ok && c.bound == c.pivots.size() + c.base_bound && c.rank >= c.target;
    for (const auto& p : c.pivots) ok = ok && p.rank_after + 1 <= p.rank_before;
    failures += ok ? 0 : 1;
    pivots += c.pivots.size();
  }
  return {failures == 0, std::to_string(failures) + " failures in 500 (" + std::to_string(pivots) + " pivots)"};
}

// 10. Every elementary coboundary has two elements, k = 1..3.
Outcome coboundaries() {
  std::ostringstream d;
  bool ok = true;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto r = scan_elementary_coboundaries(k);
    ok = ok && r.all_size_two && r.checked > 0;
    d << "k=" << k << ":" << r.checked << (r.all_size_two ? " " : " BAD ");
  }
  return {ok, d.str()};
}

// 11. Both gamma inequalities, k = 1..5, n <= 200.
Outcome gamma_inequalities() {
  std::ostringstream d;
  bool ok = true;
  const auto s1 = gamma_inequality_scan(1, 200);
  const auto& row = s1.rows[10 - 2];
  ok = row.n == 10 && row.left == 15 && row.middle == 22 && row.right == 28 && row.holds;
  d << "n=10: " << to_decimal(row.left) << " < " << to_decimal(row.middle) << " < " << to_decimal(row.right)
    << "; thresholds";
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto s = gamma_inequality_scan(k, 200);
    ok = ok && s.threshold.has_value();
    d << " k=" << k << ":" << (s.threshold ? std::to_string(*s.threshold) : "none");
  }
  return {ok, d.str()};
}

// 12. Gram forms at (4,1): rank <= beta for beta in {2, 4}; odd beta rejected.
Outcome gram_forms() {
  std::mt19937_64 rng(12001);
  std::size_t ok = 0, total = 0;
  for (auto form : {GramForm::identity, GramForm::hyperbolic})
    for (std::size_t beta : {2, 4})
      for (int t = 0; t < 100; ++t) {
        const auto a = gram_construct(beta, form, Gf2Matrix::random(beta, 36, rng), 4, 1);
        ok += rank(a.matrix()) <= beta && a.matrix().is_symmetric() ? 1 : 0;
        ++total;
      }
  bool rejected = false;
  try {
    gram_construct(3, GramForm::hyperbolic, Gf2Matrix::random(3, 36, rng), 4, 1);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  return {ok == total && rejected,
          std::to_string(ok) + "/" + std::to_string(total) + " rank <= beta, odd hyperbolic " +
              (rejected ? "rejected" : "accepted")};
}

// 13. (4,0): all 2^21 symmetric assignments, naive checks vs decoded solution set.
Outcome completeness() {
  const auto sys = build_system(4, 0);
  const auto space = solve_space(sys);
  const oracle::NaiveChecker naive(4, 0);
  // Membership in particular + span(kernel) via elimination on the kernel basis.
  Gf2Matrix basis(space.dimension(), sys.variable_count);
  for (std::size_t i = 0; i < space.dimension(); ++i) basis.set_row(i, space.kernel_basis[i]);
  const std::size_t dim = rank(basis);
  std::size_t naive_count = 0, mismatches = 0;
  BitVector x(sys.variable_count);
  for (std::uint32_t code = 0; code < (1U << 21); ++code) {
    for (std::size_t b = 0; b < 21; ++b) x.set(b, (code >> b) & 1U);
    const OctMatrix a = space.decode(x);
    const bool ok = naive.is_nk([&](std::size_t p, std::size_t q) { return a.matrix().get(p, q); });
    naive_count += ok ? 1 : 0;
    BitVector diff = x;
    diff ^= space.particular;
    Gf2Matrix ext(space.dimension() + 1, sys.variable_count);
    for (std::size_t i = 0; i < space.dimension(); ++i) ext.set_row(i, space.kernel_basis[i]);
    ext.set_row(space.dimension(), diff);
    const bool in_space = rank(ext) == dim;
    mismatches += ok == in_space ? 0 : 1;
  }
  std::ostringstream d;
  d << naive_count << " naive solutions, solution space 2^" << dim << ", " << mismatches << " mismatches";
  return {mismatches == 0 && naive_count == (std::size_t{1} << dim), d.str()};
}

// 14. Every CLI command: identical stdout, JSON and output files under 1, 4
// and 8 threads, and on a repeated run.
Outcome determinism() {
  run::TempDir dir("determinism");
  const std::string matrix41 = dir.file("m41.gf2m"), matrix42 = dir.file("m42.gf2m"), matrix51 = dir.file("m51.gf2m");
  if (run::cli("space sample --n 4 --k 1 --seed 1 --count 1 -o " + matrix41).code != 0 ||
      run::cli("space sample --n 4 --k 2 --seed 1 --count 1 -o " + matrix42).code != 0 ||
      run::cli("space sample --n 5 --k 1 --seed 1 --count 1 -o " + matrix51).code != 0)
    return {false, "could not create input matrices"};
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify combinatorial --k 2", ""},
      {"verify vankampen --k 2 --geometric", ""},
      {"verify bounds --k 3", ""},
      {"check " + matrix41, ""},
      {"rank " + matrix42, ""},
      {"heredity " + matrix42, "out.gf2m"},
      {"k1 certify " + matrix51, ""},
      {"space build --n 4 --k 1", "out.nksys"},
      {"space sample --n 4 --k 1 --seed 17 --count 6", "out.gf2m"},
      {"space minrank --n 4 --k 1 --seed 17 --budget 400 --restarts 4", "out.gf2m"},
      {"gram --n 4 --k 1 --beta 4 --form hyperbolic --seed 17 --count 10", "out.gf2m"},
      {"bounds --n 12 --k 2 --beta 3", ""},
  };
  std::size_t identical = 0;
  std::string first_bad;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    const auto& [args, out_name] = commands[c];
    std::vector<std::string> stdouts, jsons, files;
    std::vector<int> codes;
    for (unsigned threads : {1U, 1U, 4U, 8U}) {
      const std::string tag = std::to_string(c) + "-" + std::to_string(threads) + "-" + std::to_string(stdouts.size());
      const std::string json = dir.file("r" + tag + ".json");
      std::string cmd = args + " --threads " + std::to_string(threads) + " --json " + json;
      std::string out;
      if (!out_name.empty()) {
        out = dir.file("o" + tag + "-" + out_name);
        cmd += " -o " + out;
      }
      const auto r = run::cli(cmd);
      codes.push_back(r.code);
      stdouts.push_back(r.out);
      jsons.push_back(run::slurp(json));
      std::string bytes;
      if (!out.empty()) {
        // Multi-sample commands index their outputs; compare the first one.
        const auto dot = out.find_last_of('.');
        const std::string indexed = out.substr(0, dot) + "-0" + out.substr(dot);
        bytes = std::filesystem::exists(out) ? run::slurp(out) : run::slurp(indexed);
      }
      files.push_back(bytes);
    }
    bool same = codes[0] == 0 && !jsons[0].empty();
    for (std::size_t i = 1; i < stdouts.size(); ++i)
      same = same && codes[i] == codes[0] && stdouts[i] == stdouts[0] && jsons[i] == jsons[0] && files[i] == files[0];
    if (!out_name.empty()) same = same && !files[0].empty();
    identical += same ? 1 : 0;
    if (!same && first_bad.empty()) first_bad = args;
  }
  std::string d = std::to_string(identical) + "/" + std::to_string(commands.size()) +
                  " commands byte-identical across runs and 1/4/8 threads";
  if (!first_bad.empty()) d += "; first difference: " + first_bad;
  return {identical == commands.size(), d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pair identity k=0..3", combinatorial_identity},
      {"van Kampen number k=1..6", van_kampen},
      {"one-coordinate decompositions only", one_coordinate_decompositions_only},
      {"constraint space at (4,1)", space_four_one},
      {"heredity on (4,2) samples", heredity},
      {"k=1 rank chain on (5,1) samples", k1_pipeline},
      {"tournament rank", tournaments},
      {"staircase rank", staircase},
      {"diagonal-tournament certificate", certificate},
      {"elementary coboundaries", coboundaries},
      {"gamma inequalities", gamma_inequalities},
      {"Gram forms", gram_forms},
      {"completeness at (4,0)", completeness},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ". " << criteria[i].first << " -- " << o.detail
              << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
