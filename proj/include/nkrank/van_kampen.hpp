#ifndef NKRANK_VAN_KAMPEN_HPP
#define NKRANK_VAN_KAMPEN_HPP

// The moment-curve map of [3]^{*k+1} into R^{2k}, the alternation criterion
// for intersecting images of vertex-disjoint k-faces, an exact rational
// intersection oracle, and the van Kampen number v(g).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nkrank/complex.hpp"
#include "nkrank/parallel.hpp"

namespace nkrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Point = std::vector<Rational>;

class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Images of the vertices (i, a), i in {0..k}, a in {1,2,3}, in R^{2k}.
struct GeneralPositionMap {
  std::size_t k = 0;
  std::vector<Point> coordinates;  // index 3i + (a-1)

  const Point& at(std::size_t line, int label) const {
    if (line > k || label < 1 || label > 3) throw std::out_of_range("vertex outside [3]^{*k+1}");
    return coordinates[3 * line + static_cast<std::size_t>(label - 1)];
  }
  std::size_t dimension() const { return 2 * k; }
};

/// γ(t) = (t, t², …, t^{2k}) at t = a + 3i.
inline GeneralPositionMap moment_map(std::size_t k) {
  if (k == 0) throw std::invalid_argument("the moment map needs k >= 1");
  GeneralPositionMap g;
  g.k = k;
  for (std::size_t i = 0; i <= k; ++i)
    for (int a = 1; a <= 3; ++a) {
      const BigInt t = a + 3 * static_cast<long>(i);
      Point p;
      BigInt power = 1;
      for (std::size_t d = 0; d < 2 * k; ++d) {
        power *= t;
        p.emplace_back(power);
      }
      g.coordinates.push_back(std::move(p));
    }
  return g;
}

namespace detail {

/// Rank of a rational matrix by fraction-exact elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

enum class SystemKind { unique, inconsistent, underdetermined };

/// Gauss-Jordan on a square system; `rhs` holds the solution when unique.
inline SystemKind solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational>& rhs) {
  const std::size_t n = m.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = r;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[r]);
    std::swap(rhs[piv], rhs[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (rhs[i] != 0) return SystemKind::inconsistent;
  if (r < n) return SystemKind::underdetermined;
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return SystemKind::unique;
}

inline void require_face(const Face& f, std::size_t k) {
  if (f.arity() != k + 1) throw std::invalid_argument("face has the wrong arity");
  for (int c : f.coords)
    if (c < 1 || c > 3) throw std::invalid_argument("not a k-face of [3]^{*k+1}: " + to_string(f));
}

}  // namespace detail

inline bool affinely_independent(const std::vector<Point>& points) {
  if (points.size() <= 1) return true;
  std::vector<std::vector<Rational>> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != points[0].size()) throw std::invalid_argument("points of different dimension");
    std::vector<Rational> row;
    for (std::size_t d = 0; d < points[0].size(); ++d) row.push_back(points[i][d] - points[0][d]);
    diffs.push_back(std::move(row));
  }
  return detail::rational_rank(std::move(diffs)) == points.size() - 1;
}

/// σ_i < τ_i for every i, or σ_i > τ_i for every i.
inline bool alternation_intersects(const Face& sigma, const Face& tau) {
  if (sigma.arity() != tau.arity() || sigma.arity() < 1) throw std::invalid_argument("faces of different arity");
  detail::require_face(sigma, sigma.arity() - 1);
  detail::require_face(tau, tau.arity() - 1);
  if (!vertex_disjoint(sigma, tau)) throw std::invalid_argument("faces are not vertex-disjoint");
  bool less = true, greater = true;
  for (std::size_t i = 0; i < sigma.arity(); ++i) {
    less = less && sigma.coords[i] < tau.coords[i];
    greater = greater && sigma.coords[i] > tau.coords[i];
  }
  return less || greater;
}

struct GeometricIntersection {
  bool intersects = false;
  bool boundary_contact = false;        // unique solution with a zero barycentric coordinate
  std::vector<Rational> barycentric;    // λ_0..λ_k, μ_0..μ_k
};

/// Solves Σλ_i g(σ_i) = Σμ_j g(τ_j), Σλ = Σμ = 1 exactly. The images meet in
/// their relative interiors iff the unique solution is strictly positive. An
/// inconsistent system (parallel hulls) means no intersection; a consistent
/// singular one is a degenerate map.
inline GeometricIntersection geometric_intersection(const GeneralPositionMap& g, const Face& sigma,
                                                    const Face& tau) {
  detail::require_face(sigma, g.k);
  detail::require_face(tau, g.k);
  if (!vertex_disjoint(sigma, tau)) throw std::invalid_argument("faces are not vertex-disjoint");
  const std::size_t m = g.k + 1;
  const std::size_t dim = g.dimension();
  const std::size_t unknowns = 2 * m;
  std::vector<std::vector<Rational>> a(unknowns, std::vector<Rational>(unknowns));
  std::vector<Rational> rhs(unknowns);
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = g.at(i, sigma.coords[i]);
    const Point& q = g.at(i, tau.coords[i]);
    for (std::size_t d = 0; d < dim; ++d) {
      a[d][i] = p[d];
      a[d][m + i] = -q[d];
    }
    a[dim][i] = 1;
    a[dim + 1][m + i] = 1;
  }
  rhs[dim] = 1;
  rhs[dim + 1] = 1;
  const auto kind = detail::solve_square(std::move(a), rhs);
  GeometricIntersection res;
  // Parallel affine hulls: no common point at all.
  if (kind == detail::SystemKind::inconsistent) return res;
  if (kind == detail::SystemKind::underdetermined)
    throw DegenerateError("intersection system has non-unique solutions for " + to_string(sigma) + " and " +
                          to_string(tau));
  bool positive = true, nonnegative = true;
  for (const auto& v : rhs) {
    positive = positive && v > 0;
    nonnegative = nonnegative && v >= 0;
  }
  res.intersects = positive;
  res.boundary_contact = nonnegative && !positive;
  res.barycentric = std::move(rhs);
  return res;
}

inline bool geometric_intersects(const GeneralPositionMap& g, const Face& sigma, const Face& tau) {
  return geometric_intersection(g, sigma, tau).intersects;
}

struct VanKampenResult {
  std::size_t k = 0;
  std::size_t disjoint_pairs = 0;   // unordered
  std::size_t intersecting = 0;     // alternation criterion
  bool parity = false;
  bool geometric_checked = false;
  std::size_t geometric_agreements = 0;
  std::size_t boundary_contacts = 0;
  std::optional<FacePair> disagreement;  // first pair where the two criteria differ
};

/// Counts unordered vertex-disjoint k-face pairs of [3]^{*k+1} whose images
/// under the moment map cross. With `geometric`, every pair is also solved
/// exactly and compared against the alternation criterion.
inline VanKampenResult van_kampen_number(std::size_t k, bool geometric = false, unsigned threads = 1) {
  if (k == 0) throw std::invalid_argument("the van Kampen number needs k >= 1");
  const auto pairs = h_pairs(k);
  VanKampenResult res;
  res.k = k;
  res.disjoint_pairs = pairs.size();
  res.geometric_checked = geometric;
  const GeneralPositionMap g = geometric ? moment_map(k) : GeneralPositionMap{};
  std::vector<signed char> combinatorial(pairs.size()), exact(pairs.size()), boundary(pairs.size());
  parallel_chunks(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      combinatorial[i] = alternation_intersects(pairs[i].first, pairs[i].second);
      if (geometric) {
        const auto r = geometric_intersection(g, pairs[i].first, pairs[i].second);
        exact[i] = r.intersects;
        boundary[i] = r.boundary_contact;
      }
    }
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    res.intersecting += combinatorial[i] ? 1 : 0;
    if (!geometric) continue;
    res.boundary_contacts += boundary[i] ? 1 : 0;
    if (exact[i] == combinatorial[i])
      ++res.geometric_agreements;
    else if (!res.disagreement)
      res.disagreement = pairs[i];
  }
  res.parity = res.intersecting % 2 == 1;
  return res;
}

}  // namespace nkrank

#endif  // NKRANK_VAN_KAMPEN_HPP
