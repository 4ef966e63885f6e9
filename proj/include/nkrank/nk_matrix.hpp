#ifndef NKRANK_NK_MATRIX_HPP
#define NKRANK_NK_MATRIX_HPP

// Matrices indexed by k-octahedra of [n]^{*k+1}: the four defining
// properties (symmetric, independent, additive, non-trivial), coordinate
// blocks, the heredity reduction and the rank-bound chain.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "nkrank/complex.hpp"
#include "nkrank/errors.hpp"
#include "nkrank/gf2_matrix.hpp"

namespace nkrank {

class OctMatrix {
 public:
  OctMatrix(std::size_t n, std::size_t k, Gf2Matrix m) : jp_(n, k), m_(std::move(m)) {
    const std::size_t size = jp_.octahedron_count();
    if (m_.rows() != size || m_.cols() != size)
      throw std::invalid_argument("matrix size " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                                  " does not match C(n,2)^{k+1} = " + std::to_string(size));
  }
  static OctMatrix zero(std::size_t n, std::size_t k) {
    const JoinPower jp(n, k);
    return {n, k, Gf2Matrix(jp.octahedron_count(), jp.octahedron_count())};
  }

  std::size_t n() const { return jp_.n(); }
  std::size_t k() const { return jp_.k(); }
  std::size_t size() const { return m_.rows(); }
  const JoinPower& indexing() const { return jp_; }
  const Gf2Matrix& matrix() const { return m_; }
  Gf2Matrix& matrix() { return m_; }

  bool at(const Octahedron& p, const Octahedron& q) const {
    return m_.get(jp_.index(p).value, jp_.index(q).value);
  }
  /// Sets A_{P,Q} and A_{Q,P}.
  void set_symmetric(const Octahedron& p, const Octahedron& q, bool value) {
    const auto i = jp_.index(p).value, j = jp_.index(q).value;
    m_.set(i, j, value);
    m_.set(j, i, value);
  }

 private:
  JoinPower jp_;
  Gf2Matrix m_;
};

struct AdditivityWitness {
  std::size_t p, x, y, q;  // A_{P,Q} != A_{X,Q} + A_{Y,Q} with P = X ⊕ Y
  friend auto operator<=>(const AdditivityWitness&, const AdditivityWitness&) = default;
};

struct PropertyReport {
  bool symmetric = false;
  bool independent = false;
  bool additive = false;
  bool nontrivial = false;
  bool sa_value = false;
  std::optional<std::pair<std::size_t, std::size_t>> symmetry_witness;
  std::optional<std::pair<std::size_t, std::size_t>> independence_witness;
  std::optional<AdditivityWitness> additivity_witness;

  bool is_nk_matrix() const { return symmetric && independent && additive && nontrivial; }
  /// Name of the first failed property, or empty.
  std::string first_failure() const {
    if (!symmetric) return "symmetric";
    if (!independent) return "independent";
    if (!additive) return "additive";
    if (!nontrivial) return "nontrivial";
    return {};
  }
};

/// G_k embedded in [n], as octahedron index pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> sa_index_pairs(const JoinPower& jp) {
  if (jp.n() < 3) throw std::invalid_argument("SA needs n >= 3");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& pq : g_pairs(jp.k())) out.emplace_back(jp.index(pq.first).value, jp.index(pq.second).value);
  return out;
}

/// Reusable property checker for one (n, k); holds the decomposition table
/// and the vertex-disjointness masks.
class PropertyChecker {
 public:
  PropertyChecker(std::size_t n, std::size_t k)
      : jp_(n, k), decompositions_(DecompositionTable::build(n, k, DecompositionMode::exhaustive)) {
    const std::size_t size = jp_.octahedron_count();
    disjoint_.reserve(size);
    std::vector<Octahedron> octs;
    octs.reserve(size);
    for (std::size_t i = 0; i < size; ++i) octs.push_back(jp_.octahedron({i}));
    for (std::size_t p = 0; p < size; ++p) {
      BitVector mask(size);
      for (std::size_t q = 0; q < size; ++q)
        if (vertex_disjoint(octs[p], octs[q])) mask.set(q);
      disjoint_.push_back(std::move(mask));
    }
    if (n >= 3) sa_pairs_ = sa_index_pairs(jp_);
  }

  const JoinPower& indexing() const { return jp_; }
  const DecompositionTable& decompositions() const { return decompositions_; }
  const BitVector& disjoint_mask(std::size_t p) const { return disjoint_.at(p); }
  const std::vector<std::pair<std::size_t, std::size_t>>& sa_pairs() const { return sa_pairs_; }

  PropertyReport check(const OctMatrix& a) const {
    require_shape(a);
    const Gf2Matrix& m = a.matrix();
    const std::size_t size = m.rows();
    PropertyReport r;

    const Gf2Matrix t = m.transpose();
    r.symmetric = (t == m);
    if (!r.symmetric) {
      for (std::size_t i = 0; i < size && !r.symmetry_witness; ++i)
        for (std::size_t j = 0; j < size; ++j)
          if (m.get(i, j) != m.get(j, i)) {
            r.symmetry_witness = std::pair{i, j};
            break;
          }
    }

    r.independent = true;
    for (std::size_t p = 0; p < size && r.independent; ++p) {
      BitVector hit = m.row_vector(p);
      for (std::size_t w = 0; w < hit.words().size(); ++w) hit.words()[w] &= disjoint_[p].words()[w];
      if (!hit.none()) {
        r.independent = false;
        r.independence_witness = std::pair{p, hit.first()};
      }
    }

    r.additive = true;
    for (std::size_t p = 0; p < size && r.additive; ++p) {
      for (const auto& d : decompositions_.by_octahedron[p]) {
        BitVector v = m.row_vector(p);
        v ^= m.row_vector(d.x);
        v ^= m.row_vector(d.y);
        if (!v.none()) {
          r.additive = false;
          r.additivity_witness = AdditivityWitness{p, d.x, d.y, v.first()};
          break;
        }
      }
    }

    r.sa_value = sa(m);
    r.nontrivial = r.sa_value;
    return r;
  }

  bool sa(const Gf2Matrix& m) const {
    if (sa_pairs_.empty()) throw std::invalid_argument("SA needs n >= 3");
    bool s = false;
    for (auto [p, q] : sa_pairs_) s ^= m.get(p, q);
    return s;
  }

  void require_shape(const OctMatrix& a) const {
    if (a.n() != jp_.n() || a.k() != jp_.k()) throw std::invalid_argument("matrix (n,k) does not match checker");
  }

 private:
  JoinPower jp_;
  DecompositionTable decompositions_;
  std::vector<BitVector> disjoint_;
  std::vector<std::pair<std::size_t, std::size_t>> sa_pairs_;
};

inline PropertyReport check_properties(const OctMatrix& a) { return PropertyChecker(a.n(), a.k()).check(a); }

/// Sum of A_{P,Q} over {P, Q} ∈ G_k.
inline bool compute_sa(const OctMatrix& a) {
  if (a.n() < 3) throw std::invalid_argument("SA needs n >= 3");
  bool s = false;
  for (auto [p, q] : sa_index_pairs(a.indexing())) s ^= a.matrix().get(p, q);
  return s;
}

namespace detail {

inline void require_properties(const PropertyReport& r, bool sym, bool indep, bool add, bool nontriv) {
  auto fail = [](const char* name) {
    throw PreconditionError(name, std::string("matrix is not ") + name);
  };
  if (sym && !r.symmetric) fail("symmetric");
  if (indep && !r.independent) fail("independent");
  if (add && !r.additive) fail("additive");
  if (nontriv && !r.nontrivial) fail("nontrivial");
}

inline std::vector<std::vector<int>> three_subsets(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (int a = 1; a <= static_cast<int>(n); ++a)
    for (int b = a + 1; b <= static_cast<int>(n); ++b)
      for (int c = b + 1; c <= static_cast<int>(n); ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace detail

struct StrongNontrivialityResult {
  bool holds_everywhere = true;
  std::size_t subcomplexes = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  // First failing subcomplex (three labels per line) and face.
  std::optional<std::pair<std::vector<std::vector<int>>, Face>> first_failure;
};

/// S_{α,K} A for a copy K of [3]^{*k+1} (three labels per line) and a face α
/// of K: the sum of A_{P,Q} over unordered {P, Q} in K with P ∩ Q = α.
inline bool strong_sa(const OctMatrix& a, const std::vector<std::vector<int>>& labels, const Face& alpha) {
  const std::size_t arity = a.k() + 1;
  if (labels.size() != arity || alpha.arity() != arity) throw std::invalid_argument("subcomplex arity mismatch");
  std::vector<std::pair<int, int>> others(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<int> rest;
    for (int v : labels[i])
      if (v != alpha.coords[i]) rest.push_back(v);
    if (rest.size() != 2) throw std::invalid_argument("alpha is not a face of the subcomplex");
    others[i] = {rest[0], rest[1]};
  }
  bool s = false;
  const std::size_t count = ipow(2, arity - 1);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Octahedron p, q;
    for (std::size_t i = 0; i < arity; ++i) {
      const bool swapped = i > 0 && ((mask >> (arity - 1 - i)) & 1U);
      const int x = swapped ? others[i].second : others[i].first;
      const int y = swapped ? others[i].first : others[i].second;
      p.parts.push_back(make_pair(alpha.coords[i], x));
      q.parts.push_back(make_pair(alpha.coords[i], y));
    }
    s ^= a.at(p, q);
  }
  return s;
}

/// Checks S_{α,K} A = 1 for every copy K of [3]^{*k+1} in [n]^{*k+1} and
/// every k-face α of K. Requires A symmetric, independent and additive.
inline StrongNontrivialityResult check_strong_nontriviality(const OctMatrix& a,
                                                            const PropertyReport* known = nullptr) {
  const PropertyReport r = known ? *known : check_properties(a);
  detail::require_properties(r, true, true, true, false);
  const std::size_t arity = a.k() + 1;
  const auto triples = detail::three_subsets(a.n());
  StrongNontrivialityResult res;
  std::vector<std::size_t> choice(arity, 0);
  while (true) {
    std::vector<std::vector<int>> labels(arity);
    for (std::size_t i = 0; i < arity; ++i) labels[i] = triples[choice[i]];
    ++res.subcomplexes;
    const std::size_t faces = ipow(3, arity);
    for (std::size_t f = 0; f < faces; ++f) {
      Face alpha;
      alpha.coords.resize(arity);
      std::size_t v = f;
      for (std::size_t i = arity; i-- > 0;) {
        alpha.coords[i] = labels[i][v % 3];
        v /= 3;
      }
      ++res.checks;
      if (!strong_sa(a, labels, alpha)) {
        ++res.failures;
        if (res.holds_everywhere) res.first_failure = std::pair{labels, alpha};
        res.holds_everywhere = false;
      }
    }
    std::size_t i = arity;
    while (i-- > 0) {
      if (++choice[i] < triples.size()) break;
      choice[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return res;
}

/// A_{U,V}: (A_{U,V})_{P,Q} = A_{U*P, V*Q} over (k-1)-octahedra P, Q.
/// With big-endian indexing this is a contiguous square block.
inline Gf2Matrix coordinate_block(const OctMatrix& a, const VertexPair& u, const VertexPair& v) {
  if (a.k() < 1) throw std::invalid_argument("coordinate blocks need k >= 1");
  const JoinPower& jp = a.indexing();
  const std::size_t inner = ipow(jp.subset_count(), a.k());
  return block(a.matrix(), jp.subset_index(u) * inner, jp.subset_index(v) * inner, inner, inner);
}

/// Z = A_{2̄,3̄} + A_{3̄,2̄}, an (n, k-1)-indexed matrix.
inline OctMatrix heredity_reduce(const OctMatrix& a) {
  if (a.n() < 4) throw std::invalid_argument("heredity reduction needs n >= 4");
  if (a.k() < 1) throw std::invalid_argument("heredity reduction needs k >= 1");
  Gf2Matrix z = coordinate_block(a, bar(2), bar(3)) + coordinate_block(a, bar(3), bar(2));
  return {a.n(), a.k() - 1, std::move(z)};
}

struct SwapConfiguration {
  std::size_t p, q, p_prime;
  friend auto operator<=>(const SwapConfiguration&, const SwapConfiguration&) = default;
};

struct SwapCheckResult {
  bool holds = true;
  std::size_t configurations = 0;
  std::optional<SwapConfiguration> witness;  // smallest (P, Q, P') with A_{P,Q} != A_{P',Q}
};

/// Scans every (P, Q, P') where P and Q share exactly one vertex at one
/// coordinate i, are disjoint elsewhere, and P' differs from P only at i with
/// P'_i ∩ Q_i = P_i ∩ Q_i. No precondition check.
inline SwapCheckResult scan_one_coordinate_swap(const OctMatrix& a) {
  const JoinPower& jp = a.indexing();
  const int n = static_cast<int>(a.n());
  const std::size_t arity = a.k() + 1;
  SwapCheckResult res;
  for (std::size_t qi = 0; qi < jp.octahedron_count(); ++qi) {
    const Octahedron q = jp.octahedron({qi});
    for (std::size_t i = 0; i < arity; ++i) {
      // For j != i choose P_j disjoint from Q_j.
      std::vector<std::vector<VertexPair>> options(arity);
      bool feasible = true;
      for (std::size_t j = 0; j < arity; ++j) {
        if (j == i) continue;
        for (int x = 1; x <= n; ++x)
          for (int y = x + 1; y <= n; ++y)
            if (!q.parts[j].contains(x) && !q.parts[j].contains(y)) options[j].push_back({x, y});
        feasible = feasible && !options[j].empty();
      }
      if (feasible) {
        std::vector<std::size_t> pick(arity, 0);
        while (true) {
          Octahedron p;
          p.parts.resize(arity);
          for (std::size_t j = 0; j < arity; ++j)
            if (j != i) p.parts[j] = options[j][pick[j]];
          for (int c : {q.parts[i].lo, q.parts[i].hi})
            for (int x = 1; x <= n; ++x) {
              if (q.parts[i].contains(x)) continue;
              p.parts[i] = make_pair(c, x);
              const std::size_t pi = jp.index(p).value;
              const bool apq = a.matrix().get(pi, qi);
              for (int x2 = 1; x2 <= n; ++x2) {
                if (q.parts[i].contains(x2)) continue;
                Octahedron pp = p;
                pp.parts[i] = make_pair(c, x2);
                const std::size_t ppi = jp.index(pp).value;
                ++res.configurations;
                if (a.matrix().get(ppi, qi) != apq) {
                  const SwapConfiguration w{pi, qi, ppi};
                  if (!res.witness || w < *res.witness) res.witness = w;
                  res.holds = false;
                }
              }
            }
          std::size_t j = arity;
          while (j-- > 0) {
            if (j == i) continue;
            if (++pick[j] < options[j].size()) break;
            pick[j] = 0;
          }
          if (j == static_cast<std::size_t>(-1)) break;
        }
      }
    }
  }
  return res;
}

/// Same scan, after checking that A is independent and additive.
inline SwapCheckResult check_one_coordinate_swap(const OctMatrix& a, const PropertyReport* known = nullptr) {
  const PropertyReport r = known ? *known : check_properties(a);
  detail::require_properties(r, false, true, true, false);
  return scan_one_coordinate_swap(a);
}

struct ChainStep {
  std::size_t level = 0;          // k of the matrix at this step
  std::size_t rank = 0;           // rk A
  std::size_t rank_block_23 = 0;  // rk A_{2̄,3̄}
  std::size_t rank_block_32 = 0;  // rk A_{3̄,2̄}
  std::size_t rank_reduced = 0;   // rk Z
  bool submatrix_ok = false;      // rk A >= rk A_{U,V} for both blocks
  bool subadditivity_ok = false;  // rk A_{2̄,3̄} + rk A_{3̄,2̄} >= rk Z
  bool half_sum_ok = false;       // 2 rk A >= rk A_{2̄,3̄} + rk A_{3̄,2̄}
  bool reduced_is_nk = false;     // Z passes the four (n, level-1) checks
  std::size_t bound = 0;          // ceil((n-3)^2 / 2^level)
  bool bound_ok = false;
};

struct RankBoundResult {
  std::size_t rank = 0;
  std::size_t bound = 0;                 // ceil((n-3)^2 / 2^k)
  std::size_t bound_numerator = 0;       // (n-3)^2
  std::size_t bound_denominator = 0;     // 2^k
  bool pass = false;
  std::vector<ChainStep> chain;          // levels k, k-1, ..., 1
};

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

inline std::size_t rank_lower_bound(std::size_t n, std::size_t k) {
  return n < 3 ? 0 : ceil_div((n - 3) * (n - 3), ipow(2, k));
}

/// Rank versus ceil((n-3)^2/2^k), with the heredity chain down to k = 1:
/// rk A >= (rk A_{2̄,3̄} + rk A_{3̄,2̄})/2 >= rk Z / 2 at every level.
inline RankBoundResult verify_rank_bound(const OctMatrix& a, const PropertyReport* known = nullptr) {
  if (a.n() < 4) throw std::invalid_argument("rank bound needs n >= 4");
  if (a.k() < 1) throw std::invalid_argument("rank bound needs k >= 1");
  const PropertyReport r = known ? *known : check_properties(a);
  detail::require_properties(r, true, true, true, true);

  RankBoundResult res;
  res.rank = rank(a.matrix());
  res.bound_numerator = (a.n() - 3) * (a.n() - 3);
  res.bound_denominator = ipow(2, a.k());
  res.bound = rank_lower_bound(a.n(), a.k());
  res.pass = res.rank >= res.bound;

  OctMatrix current = a;
  std::size_t current_rank = res.rank;
  while (true) {
    ChainStep step;
    step.level = current.k();
    step.rank = current_rank;
    step.bound = rank_lower_bound(a.n(), current.k());
    step.bound_ok = step.rank >= step.bound;
    if (current.k() == 1) {
      step.submatrix_ok = step.subadditivity_ok = step.half_sum_ok = step.reduced_is_nk = true;
      res.chain.push_back(step);
      break;
    }
    const Gf2Matrix b23 = coordinate_block(current, bar(2), bar(3));
    const Gf2Matrix b32 = coordinate_block(current, bar(3), bar(2));
    OctMatrix z{a.n(), current.k() - 1, b23 + b32};
    step.rank_block_23 = rank(b23);
    step.rank_block_32 = rank(b32);
    step.rank_reduced = rank(z.matrix());
    step.submatrix_ok = step.rank >= step.rank_block_23 && step.rank >= step.rank_block_32;
    step.subadditivity_ok = step.rank_block_23 + step.rank_block_32 >= step.rank_reduced;
    step.half_sum_ok = 2 * step.rank >= step.rank_block_23 + step.rank_block_32;
    step.reduced_is_nk = check_properties(z).is_nk_matrix();
    res.chain.push_back(step);
    current_rank = step.rank_reduced;
    current = std::move(z);
  }
  for (const auto& s : res.chain)
    res.pass = res.pass && s.submatrix_ok && s.subadditivity_ok && s.half_sum_ok && s.reduced_is_nk && s.bound_ok;
  return res;
}

}  // namespace nkrank

#endif  // NKRANK_NK_MATRIX_HPP
