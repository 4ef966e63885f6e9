#ifndef NKRANK_COMPLETION_HPP
#define NKRANK_COMPLETION_HPP

// The affine space of all (n,k)-matrices as the solution set of a linear
// system over GF(2), plus sampling, minimum-rank search and Gram-form
// construction yᵀ Ω y.
//
// One variable per unordered octahedron pair {P, Q} (P = Q included), so
// symmetry is structural. Equations:
//   independence   x_{P,Q} = 0                       P, Q vertex-disjoint
//   additivity     x_{P,Q} + x_{X,Q} + x_{Y,Q} = 0   P = X ⊕ Y, every Q
//   non-triviality sum_{{P,Q} in G_k} x_{P,Q} = 1

#include <algorithm>
#include <bit>
#include <tuple>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkrank/affine_solver.hpp"
#include "nkrank/complex.hpp"
#include "nkrank/errors.hpp"
#include "nkrank/gf2_matrix.hpp"
#include "nkrank/nk_matrix.hpp"
#include "nkrank/parallel.hpp"

namespace nkrank {

namespace detail {

inline std::size_t pair_offset(std::size_t p, std::size_t count) { return p * count - (p * (p - 1)) / 2; }

}  // namespace detail

struct Equation {
  std::vector<std::size_t> vars;  // sorted, distinct
  bool rhs = false;
  friend auto operator<=>(const Equation&, const Equation&) = default;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct ConstraintSystem {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t octahedra = 0;
  std::size_t variable_count = 0;
  std::vector<Equation> equations;

  std::size_t variable(std::size_t p, std::size_t q) const {
    if (q < p) std::swap(p, q);
    return detail::pair_offset(p, octahedra) + (q - p);
  }
  std::pair<std::size_t, std::size_t> pair_of(std::size_t var) const {
    std::size_t p = 0;
    while (detail::pair_offset(p + 1, octahedra) <= var) ++p;
    return {p, p + (var - detail::pair_offset(p, octahedra))};
  }
  std::size_t count_rhs_one() const {
    return static_cast<std::size_t>(std::count_if(equations.begin(), equations.end(), [](const Equation& e) { return e.rhs; }));
  }
  std::size_t count_fixed_zero() const {
    return static_cast<std::size_t>(std::count_if(
        equations.begin(), equations.end(), [](const Equation& e) { return e.vars.size() == 1 && !e.rhs; }));
  }
};

/// Assembles the system for (n, k). Additivity uses the exhaustive XOR
/// decompositions; `DecompositionMode::one_coordinate` is accepted only after
/// the one-coordinate-only check passes for this (n, k).
inline ConstraintSystem build_system(std::size_t n, std::size_t k,
                                     DecompositionMode mode = DecompositionMode::exhaustive) {
  if (n < 4) throw std::invalid_argument("constraint systems need n >= 4");
  if (mode == DecompositionMode::one_coordinate && !verify_one_coordinate_only(n, k).holds)
    throw InvariantViolation("one-coordinate decompositions are incomplete for this (n, k)");
  const JoinPower jp(n, k);
  ConstraintSystem sys;
  sys.n = n;
  sys.k = k;
  sys.octahedra = jp.octahedron_count();
  sys.variable_count = sys.octahedra * (sys.octahedra + 1) / 2;
  const std::size_t count = sys.octahedra;

  std::vector<Octahedron> octs;
  octs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) octs.push_back(jp.octahedron({i}));
  for (std::size_t p = 0; p < count; ++p)
    for (std::size_t q = p + 1; q < count; ++q)
      if (vertex_disjoint(octs[p], octs[q])) sys.equations.push_back({{sys.variable(p, q)}, false});

  const auto table = DecompositionTable::build(n, k, mode);
  for (std::size_t p = 0; p < count; ++p)
    for (const auto& d : table.by_octahedron[p])
      for (std::size_t q = 0; q < count; ++q) {
        std::vector<std::size_t> vars{sys.variable(p, q), sys.variable(d.x, q), sys.variable(d.y, q)};
        std::sort(vars.begin(), vars.end());
        // P, X, Y are distinct so the three variables are distinct.
        sys.equations.push_back({std::move(vars), false});
      }

  Equation sa;
  for (auto [p, q] : sa_index_pairs(jp)) sa.vars.push_back(sys.variable(p, q));
  std::sort(sa.vars.begin(), sa.vars.end());
  sa.rhs = true;
  sys.equations.push_back(std::move(sa));

  std::sort(sys.equations.begin(), sys.equations.end());
  sys.equations.erase(std::unique(sys.equations.begin(), sys.equations.end()), sys.equations.end());
  return sys;
}

// NKSYS text format:
//   NKSYS 1
//   n <n> k <k>
//   vars <V>
//   one equation per line: sorted variable indices, then "= 0" or "= 1"

inline void write_nksys(std::ostream& os, const ConstraintSystem& sys) {
  os << "NKSYS 1\n";
  os << "n " << sys.n << " k " << sys.k << "\n";
  os << "vars " << sys.variable_count << "\n";
  for (const auto& e : sys.equations) {
    for (auto v : e.vars) os << v << ' ';
    os << "= " << (e.rhs ? 1 : 0) << '\n';
  }
}

inline ConstraintSystem read_nksys(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "NKSYS 1") throw FormatError("NKSYS: missing 'NKSYS 1' header");
  ConstraintSystem sys;
  {
    if (!std::getline(is, line)) throw FormatError("NKSYS: truncated header");
    std::istringstream ss(line);
    std::string nt, kt, extra;
    if (!(ss >> nt >> sys.n >> kt >> sys.k) || nt != "n" || kt != "k" || (ss >> extra))
      throw FormatError("NKSYS: malformed 'n <n> k <k>' line");
  }
  {
    if (!std::getline(is, line)) throw FormatError("NKSYS: truncated header");
    std::istringstream ss(line);
    std::string vt, extra;
    if (!(ss >> vt >> sys.variable_count) || vt != "vars" || (ss >> extra))
      throw FormatError("NKSYS: malformed 'vars <V>' line");
  }
  if (sys.n < 2) throw FormatError("NKSYS: n must be at least 2");
  sys.octahedra = JoinPower(sys.n, sys.k).octahedron_count();
  if (sys.variable_count != sys.octahedra * (sys.octahedra + 1) / 2)
    throw FormatError("NKSYS: variable count does not match (n, k)");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Equation e;
    std::string tok;
    bool seen_eq = false;
    while (ss >> tok) {
      if (tok == "=") {
        seen_eq = true;
        break;
      }
      if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) || tok.size() > 18)
        throw FormatError("NKSYS: bad variable index '" + tok + "'");
      const auto v = static_cast<std::size_t>(std::stoull(tok));
      if (v >= sys.variable_count) throw FormatError("NKSYS: variable index out of range");
      e.vars.push_back(v);
    }
    std::string rhs, extra;
    if (!seen_eq || !(ss >> rhs) || (rhs != "0" && rhs != "1") || (ss >> extra))
      throw FormatError("NKSYS: malformed equation line '" + line + "'");
    if (!std::is_sorted(e.vars.begin(), e.vars.end()) ||
        std::adjacent_find(e.vars.begin(), e.vars.end()) != e.vars.end())
      throw FormatError("NKSYS: variable indices must be sorted and distinct");
    e.rhs = rhs == "1";
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

/// particular ⊕ span(kernel_basis): every (n, k)-matrix, as pair-variable assignments.
struct SolutionSpace {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t octahedra = 0;
  BitVector particular;
  std::vector<BitVector> kernel_basis;

  std::size_t dimension() const { return kernel_basis.size(); }

  OctMatrix decode(const BitVector& assignment) const {
    Gf2Matrix m(octahedra, octahedra);
    std::size_t var = 0;
    for (std::size_t p = 0; p < octahedra; ++p)
      for (std::size_t q = p; q < octahedra; ++q, ++var)
        if (assignment.get(var)) {
          m.set(p, q);
          m.set(q, p);
        }
    return {n, k, std::move(m)};
  }

  /// particular + sum of kernel vectors selected by `coefficients`.
  BitVector combine(const BitVector& coefficients) const {
    if (coefficients.size() != dimension()) throw std::invalid_argument("coefficient vector length mismatch");
    BitVector x = particular;
    for (auto i : coefficients.ones()) x ^= kernel_basis[i];
    return x;
  }
};

namespace detail {

/// Column order for elimination: variables whose octahedra use more 2-subsets
/// avoiding vertex 1 come first, so they become pivots and get expressed
/// through the {1, x} ones. Keeps the echelon rows short.
inline std::vector<std::size_t> elimination_order(const ConstraintSystem& sys) {
  const JoinPower jp(sys.n, sys.k);
  std::vector<std::size_t> weight(sys.octahedra);
  for (std::size_t i = 0; i < sys.octahedra; ++i) {
    const Octahedron p = jp.octahedron({i});
    weight[i] = static_cast<std::size_t>(
        std::count_if(p.parts.begin(), p.parts.end(), [](const VertexPair& v) { return v.lo != 1; }));
  }
  std::vector<std::size_t> var_weight(sys.variable_count);
  std::size_t var = 0;
  for (std::size_t p = 0; p < sys.octahedra; ++p)
    for (std::size_t q = p; q < sys.octahedra; ++q, ++var) var_weight[var] = weight[p] + weight[q];
  std::vector<std::size_t> order(sys.variable_count);
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return var_weight[a] > var_weight[b]; });
  return order;  // order[column] = variable
}

}  // namespace detail

/// Eliminates the system; throws InfeasibleError when it has no solution.
inline SolutionSpace solve_space(const ConstraintSystem& sys) {
  const auto order = detail::elimination_order(sys);
  std::vector<std::size_t> column_of(sys.variable_count);
  for (std::size_t c = 0; c < order.size(); ++c) column_of[order[c]] = c;

  AffineSolver solver(sys.variable_count);
  std::vector<std::size_t> cols;
  for (const auto& e : sys.equations) {
    cols.clear();
    for (auto v : e.vars) cols.push_back(column_of[v]);
    solver.add_equation(cols, e.rhs);
  }
  auto solution = solver.solve();
  if (!solution)
    throw InfeasibleError("the (n,k) constraint system is infeasible for n=" + std::to_string(sys.n) +
                          " k=" + std::to_string(sys.k));

  auto to_variables = [&](const BitVector& by_column) {
    BitVector out(sys.variable_count);
    for (auto c : by_column.ones()) out.set(order[c]);
    return out;
  };
  SolutionSpace space;
  space.n = sys.n;
  space.k = sys.k;
  space.octahedra = sys.octahedra;
  space.particular = to_variables(solution->particular);
  for (const auto& v : solution->kernel_basis) space.kernel_basis.push_back(to_variables(v));
  return space;
}

/// Reproducible samples: coefficients are drawn sequentially from one
/// mt19937_64 stream; decoding is parallel over sample index.
inline std::vector<OctMatrix> sample(const SolutionSpace& space, std::uint64_t seed, std::size_t count,
                                     unsigned threads = 1) {
  std::mt19937_64 rng(seed);
  std::vector<BitVector> coefficients;
  coefficients.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    BitVector c(space.dimension());
    auto words = c.words();
    for (auto& w : words) w = rng();
    if (!words.empty()) words.back() &= tail_mask(space.dimension());
    coefficients.push_back(std::move(c));
  }
  std::vector<std::optional<OctMatrix>> slots(count);
  parallel_chunks(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) slots[s] = space.decode(space.combine(coefficients[s]));
  });
  std::vector<OctMatrix> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct SearchConfig {
  std::uint64_t seed = 0;
  std::size_t budget = 10000;               // heuristic rank evaluations
  std::size_t exhaustive_threshold = 20;    // enumerate the coset when dimension <= this
  std::size_t restarts = 4;
  unsigned threads = 1;
};

enum class SearchMethod { exhaustive, heuristic };

inline const char* to_string(SearchMethod m) { return m == SearchMethod::exhaustive ? "exhaustive" : "heuristic"; }

struct MinRankResult {
  bool found = false;
  SearchMethod method = SearchMethod::exhaustive;
  std::size_t best_rank = 0;
  std::optional<OctMatrix> witness;
  BitVector witness_coefficients;
  std::size_t evaluations = 0;
  std::size_t lower_bound = 0;  // ceil((n-3)^2 / 2^k)
};

namespace detail {

struct Candidate {
  std::size_t rank = std::numeric_limits<std::size_t>::max();
  std::size_t chain = 0;
  std::size_t step = 0;
  BitVector coefficients;
  bool better_than(const Candidate& o) const {
    return std::tie(rank, chain, step) < std::tie(o.rank, o.chain, o.step);
  }
};

}  // namespace detail

/// Minimum rank over the coset. Exhaustive (Gray-code walk) when the
/// dimension is at most `exhaustive_threshold`; otherwise bit-flip descent
/// (accept when rank does not increase) with seeded restarts, reporting the
/// best found. Ties go to the earliest (chain, step).
inline MinRankResult min_rank_search(const SolutionSpace& space, const SearchConfig& config) {
  MinRankResult res;
  res.lower_bound = space.n >= 3 ? rank_lower_bound(space.n, space.k) : 0;
  const std::size_t d = space.dimension();
  const Gf2Matrix base = space.decode(space.particular).matrix();
  std::vector<Gf2Matrix> kernel;
  kernel.reserve(d);
  for (const auto& v : space.kernel_basis) {
    BitVector x(v.size());
    x ^= v;
    kernel.push_back(space.decode(x).matrix());
  }

  detail::Candidate best;
  if (d <= config.exhaustive_threshold) {
    res.method = SearchMethod::exhaustive;
    const std::size_t total = std::size_t{1} << d;
    const unsigned threads = std::max(1U, config.threads);
    std::vector<detail::Candidate> per_chunk(threads);
    parallel_chunks(total, threads, [&](std::size_t begin, std::size_t end) {
      if (begin >= end) return;
      const std::size_t chunk = begin * threads / total;
      detail::Candidate local;
      BitVector coeff(d);
      const std::size_t g0 = begin ^ (begin >> 1);
      for (std::size_t b = 0; b < d; ++b)
        if ((g0 >> b) & 1U) coeff.set(b);
      Gf2Matrix m = base;
      for (auto b : coeff.ones()) m += kernel[b];
      for (std::size_t i = begin; i < end; ++i) {
        if (i != begin) {
          const auto b = static_cast<std::size_t>(std::countr_zero(i));
          m += kernel[b];
          coeff.flip(b);
        }
        const std::size_t r = rank(m);
        if (r < local.rank) local = {r, 0, i, coeff};
      }
      per_chunk[std::min<std::size_t>(chunk, threads - 1)] = std::move(local);
    });
    for (auto& c : per_chunk)
      if (c.rank != std::numeric_limits<std::size_t>::max() && c.better_than(best)) best = std::move(c);
    res.evaluations = total;
  } else {
    res.method = SearchMethod::heuristic;
    if (config.budget == 0) return res;
    const std::size_t chains = std::max<std::size_t>(1, std::min(config.restarts, config.budget));
    std::vector<detail::Candidate> per_chain(chains);
    std::vector<std::size_t> steps(chains);
    for (std::size_t c = 0; c < chains; ++c) steps[c] = config.budget / chains + (c < config.budget % chains ? 1 : 0);
    parallel_chunks(chains, config.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t c = begin; c < end; ++c) {
        std::mt19937_64 rng(mix_seed(config.seed ^ mix_seed(c)));
        BitVector coeff(d);
        for (std::size_t b = 0; b < d; ++b)
          if (rng() & 1U) coeff.set(b);
        Gf2Matrix m = base;
        for (auto b : coeff.ones()) m += kernel[b];
        std::size_t current = rank(m);
        detail::Candidate local{current, c, 0, coeff};
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        for (std::size_t s = 1; s < steps[c]; ++s) {
          const std::size_t b = pick(rng);
          m += kernel[b];
          const std::size_t r = rank(m);
          if (r <= current) {
            current = r;
            coeff.flip(b);
            if (r < local.rank) local = {r, c, s, coeff};
          } else {
            m += kernel[b];
          }
        }
        per_chain[c] = std::move(local);
      }
    });
    for (auto& c : per_chain)
      if (c.better_than(best)) best = std::move(c);
    res.evaluations = config.budget;
  }

  res.found = true;
  res.best_rank = best.rank;
  res.witness_coefficients = best.coefficients;
  res.witness = space.decode(space.combine(best.coefficients));
  if (rank(res.witness->matrix()) != res.best_rank) throw InvariantViolation("min-rank witness rank mismatch");
  if (!check_properties(*res.witness).is_nk_matrix())
    throw InvariantViolation("min-rank witness is not an (n,k)-matrix");
  if (space.n >= 4 && space.k >= 1 && res.best_rank < res.lower_bound)
    throw InvariantViolation("found an (n,k)-matrix below the proven rank lower bound");
  return res;
}

enum class GramForm { identity, hyperbolic };

/// yᵀ Ω y with Ω the β×β identity or the direct sum of β/2 hyperbolic blocks.
inline OctMatrix gram_construct(std::size_t beta, GramForm form, const Gf2Matrix& y, std::size_t n, std::size_t k) {
  const JoinPower jp(n, k);
  if (y.rows() != beta || y.cols() != jp.octahedron_count())
    throw std::invalid_argument("y must be beta x C(n,2)^{k+1}");
  if (form == GramForm::hyperbolic && beta % 2 != 0)
    throw std::invalid_argument("the hyperbolic form needs an even beta");
  const Gf2Matrix omega = form == GramForm::identity ? Gf2Matrix::identity(beta) : Gf2Matrix::hyperbolic(beta / 2);
  return {n, k, gram(y, omega)};
}

}  // namespace nkrank

#endif  // NKRANK_COMPLETION_HPP
