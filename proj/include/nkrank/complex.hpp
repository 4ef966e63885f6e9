#ifndef NKRANK_COMPLEX_HPP
#define NKRANK_COMPLEX_HPP

// Combinatorics of the join power [n]^{*k+1}.
//
// Vertex labels are 1-based. A face has one coordinate per line; a k-face has
// every coordinate in [n], a (k-1)-face has exactly one `empty_vertex`.
// Octahedra are tuples of 2-subsets. Canonical indexing: 2-subsets {a<b} in
// lexicographic (a, b) order; an octahedron is a big-endian mixed-radix number
// over its subset indices (first coordinate most significant). Faces are
// big-endian base-n numbers over (coordinate - 1).

#include <algorithm>
#include <compare>
#include <iterator>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nkrank/bit_vector.hpp"

namespace nkrank {

inline constexpr int empty_vertex = 0;

constexpr std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}
constexpr std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// A 2-element subset {lo, hi} of [n], lo < hi.
struct VertexPair {
  int lo = 1;
  int hi = 2;

  bool contains(int v) const { return v == lo || v == hi; }
  bool disjoint(const VertexPair& o) const { return !o.contains(lo) && !o.contains(hi); }
  std::size_t common(const VertexPair& o) const {
    return static_cast<std::size_t>(o.contains(lo)) + static_cast<std::size_t>(o.contains(hi));
  }
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

inline VertexPair make_pair(int a, int b) {
  if (a == b) throw std::invalid_argument("a 2-subset needs two distinct elements");
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

/// x̄ = {1, x}
inline VertexPair bar(int x) { return make_pair(1, x); }

struct Face {
  std::vector<int> coords;

  std::size_t arity() const { return coords.size(); }
  /// Number of empty coordinates.
  std::size_t empties() const {
    return static_cast<std::size_t>(std::count(coords.begin(), coords.end(), empty_vertex));
  }
  /// Position of the empty coordinate of a (k-1)-face (0-based).
  std::size_t missing_line() const {
    auto it = std::find(coords.begin(), coords.end(), empty_vertex);
    if (it == coords.end()) throw std::invalid_argument("face has no empty coordinate");
    return static_cast<std::size_t>(it - coords.begin());
  }
  friend auto operator<=>(const Face&, const Face&) = default;
  friend bool operator==(const Face&, const Face&) = default;
};

struct Octahedron {
  std::vector<VertexPair> parts;

  std::size_t arity() const { return parts.size(); }
  friend auto operator<=>(const Octahedron&, const Octahedron&) = default;
  friend bool operator==(const Octahedron&, const Octahedron&) = default;
};

/// Octahedron built from bars: oct_bar({2,3}) = 2̄ * 3̄.
inline Octahedron oct_bar(std::initializer_list<int> xs) {
  Octahedron p;
  for (int x : xs) p.parts.push_back(bar(x));
  return p;
}

struct OctIndex {
  std::size_t value = 0;
  friend auto operator<=>(const OctIndex&, const OctIndex&) = default;
};

template <class T>
struct UnorderedPair {
  T first;
  T second;  // first <= second
  friend auto operator<=>(const UnorderedPair&, const UnorderedPair&) = default;
  friend bool operator==(const UnorderedPair&, const UnorderedPair&) = default;
};

template <class T>
UnorderedPair<T> unordered(T a, T b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

using FacePair = UnorderedPair<Face>;
using OctPair = UnorderedPair<Octahedron>;

inline std::string to_string(const Face& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.coords.size(); ++i) {
    if (i) s += ',';
    s += f.coords[i] == empty_vertex ? std::string("-") : std::to_string(f.coords[i]);
  }
  return s + ")";
}

inline std::string to_string(const Octahedron& p) {
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i) s += '*';
    s += '{' + std::to_string(p.parts[i].lo) + ',' + std::to_string(p.parts[i].hi) + '}';
  }
  return s;
}

/// Index arithmetic for [n]^{*k+1}.
class JoinPower {
 public:
  JoinPower(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (n < 2) throw std::invalid_argument("join power needs n >= 2");
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t arity() const { return k_ + 1; }
  std::size_t subset_count() const { return choose2(n_); }
  std::size_t octahedron_count() const { return ipow(subset_count(), k_ + 1); }
  std::size_t face_count() const { return ipow(n_, k_ + 1); }

  std::size_t subset_index(const VertexPair& p) const {
    check_pair(p);
    const auto a = static_cast<std::size_t>(p.lo), b = static_cast<std::size_t>(p.hi);
    // subsets starting below a: sum_{x<a} (n - x)
    const std::size_t before = (a - 1) * n_ - (a - 1) * a / 2;
    return before + (b - a - 1);
  }
  VertexPair subset(std::size_t index) const {
    if (index >= subset_count()) throw std::out_of_range("subset index out of range");
    std::size_t a = 1;
    while (index >= n_ - a) {
      index -= n_ - a;
      ++a;
    }
    return {static_cast<int>(a), static_cast<int>(a + 1 + index)};
  }

  OctIndex index(const Octahedron& p) const {
    if (p.arity() != arity()) throw std::invalid_argument("octahedron arity does not match k+1");
    std::size_t v = 0;
    for (const auto& part : p.parts) v = v * subset_count() + subset_index(part);
    return {v};
  }
  Octahedron octahedron(OctIndex idx) const {
    if (idx.value >= octahedron_count()) throw std::out_of_range("octahedron index out of range");
    Octahedron p;
    p.parts.resize(arity());
    std::size_t v = idx.value;
    for (std::size_t i = arity(); i-- > 0;) {
      p.parts[i] = subset(v % subset_count());
      v /= subset_count();
    }
    return p;
  }

  std::size_t face_index(const Face& f) const {
    if (f.arity() != arity()) throw std::invalid_argument("face arity does not match k+1");
    std::size_t v = 0;
    for (int c : f.coords) {
      if (c < 1 || static_cast<std::size_t>(c) > n_) throw std::invalid_argument("face coordinate out of [n]");
      v = v * n_ + static_cast<std::size_t>(c - 1);
    }
    return v;
  }
  Face face(std::size_t index) const {
    if (index >= face_count()) throw std::out_of_range("face index out of range");
    Face f;
    f.coords.resize(arity());
    for (std::size_t i = arity(); i-- > 0;) {
      f.coords[i] = static_cast<int>(index % n_) + 1;
      index /= n_;
    }
    return f;
  }

  /// Sorted face indices of an octahedron's 2^{k+1} faces.
  std::vector<std::size_t> face_indices(const Octahedron& p) const {
    std::vector<std::size_t> out{0};
    for (const auto& part : p.parts) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * 2);
      for (auto v : out) {
        next.push_back(v * n_ + static_cast<std::size_t>(part.lo - 1));
        next.push_back(v * n_ + static_cast<std::size_t>(part.hi - 1));
      }
      out = std::move(next);
    }
    return out;  // lexicographic since lo < hi in each coordinate
  }

  void check_pair(const VertexPair& p) const {
    if (p.lo < 1 || p.hi <= p.lo || static_cast<std::size_t>(p.hi) > n_)
      throw std::invalid_argument("not a 2-subset of [n]");
  }

 private:
  std::size_t n_;
  std::size_t k_;
};

inline std::vector<Octahedron> enumerate_octahedra(std::size_t n, std::size_t k) {
  const JoinPower jp(n, k);
  std::vector<Octahedron> out;
  out.reserve(jp.octahedron_count());
  for (std::size_t i = 0; i < jp.octahedron_count(); ++i) out.push_back(jp.octahedron({i}));
  return out;
}

/// The 2^{k+1} k-faces a_1 * ... * a_{k+1}, a_i ∈ P_i, in lexicographic order.
inline std::vector<Face> faces_of(const Octahedron& p) {
  std::vector<Face> out{Face{}};
  for (const auto& part : p.parts) {
    std::vector<Face> next;
    next.reserve(out.size() * 2);
    for (const auto& f : out)
      for (int v : {part.lo, part.hi}) {
        Face g = f;
        g.coords.push_back(v);
        next.push_back(std::move(g));
      }
    out = std::move(next);
  }
  return out;
}

/// Coordinatewise disjointness. An empty coordinate is disjoint from anything.
inline bool vertex_disjoint(const Face& a, const Face& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("faces of different arity");
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.coords[i] != empty_vertex && a.coords[i] == b.coords[i]) return false;
  return true;
}

inline bool vertex_disjoint(const Octahedron& p, const Octahedron& q) {
  if (p.arity() != q.arity()) throw std::invalid_argument("octahedra of different arity");
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (!p.parts[i].disjoint(q.parts[i])) return false;
  return true;
}

/// Face-set intersection of two octahedra equals the single face 1^{*k+1}.
inline bool meets_exactly_at_base(const Octahedron& p, const Octahedron& q) {
  if (p.arity() != q.arity()) return false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    const auto& a = p.parts[i];
    const auto& b = q.parts[i];
    if (a.common(b) != 1 || !a.contains(1) || !b.contains(1)) return false;
  }
  return true;
}

/// All k-faces of [3]^{*k+1} (or [n]^{*k+1}) in lexicographic order.
inline std::vector<Face> all_faces(std::size_t n, std::size_t k) {
  const JoinPower jp(n, k);
  std::vector<Face> out;
  out.reserve(jp.face_count());
  for (std::size_t i = 0; i < jp.face_count(); ++i) out.push_back(jp.face(i));
  return out;
}

/// G_l: unordered pairs {P, Q} of l-octahedra of [3]^{*l+1} with P ∩ Q = 1^{*l+1}.
/// Each coordinate is either (2̄, 3̄) or (3̄, 2̄); normalizing by the first
/// coordinate leaves 2^l pairs.
inline std::vector<OctPair> g_pairs(std::size_t l) {
  std::vector<OctPair> out;
  const std::size_t count = ipow(2, l);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Octahedron p, q;
    p.parts.push_back(bar(2));
    q.parts.push_back(bar(3));
    for (std::size_t i = 0; i < l; ++i) {
      const bool swapped = (mask >> (l - 1 - i)) & 1U;
      p.parts.push_back(bar(swapped ? 3 : 2));
      q.parts.push_back(bar(swapped ? 2 : 3));
    }
    out.push_back(unordered(std::move(p), std::move(q)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// H: unordered pairs of vertex-disjoint k-faces of [3]^{*k+1}.
inline std::vector<FacePair> h_pairs(std::size_t k) {
  const auto faces = all_faces(3, k);
  std::vector<FacePair> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (std::size_t j = i + 1; j < faces.size(); ++j)
      if (vertex_disjoint(faces[i], faces[j])) out.push_back({faces[i], faces[j]});
  return out;
}

/// T{P,Q}: unordered pairs {α, β} with α ∈ P, β ∈ Q or vice versa.
inline std::vector<FacePair> t_pairs(const Octahedron& p, const Octahedron& q) {
  if (!meets_exactly_at_base(p, q)) throw std::invalid_argument("t_pairs requires P ∩ Q = 1^{*k+1}");
  std::vector<FacePair> out;
  for (const auto& a : faces_of(p))
    for (const auto& b : faces_of(q)) out.push_back(unordered(a, b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct CombinatorialIdentityResult {
  bool holds = false;
  std::size_t disjoint_pairs = 0;      // ordered vertex-disjoint face pairs
  std::size_t product_sum_size = 0;    // size of the mod-2 sum of P × Q
  std::size_t octahedron_pairs = 0;    // ordered (P, Q) with P ∩ Q = 1^{*k+1}
  std::size_t base_pair_multiplicity = 0;  // products containing (1^{*k+1}, 1^{*k+1})
  std::optional<std::pair<Face, Face>> witness;
};

/// Checks that the ordered vertex-disjoint k-face pairs of [3]^{*k+1} equal
/// the mod-2 sum of P × Q over ordered octahedron pairs meeting in 1^{*k+1}.
inline CombinatorialIdentityResult verify_combinatorial_identity(std::size_t k) {
  const JoinPower jp(3, k);
  const std::size_t faces = jp.face_count();
  BitVector disjoint(faces * faces), products(faces * faces);
  CombinatorialIdentityResult res;
  for (std::size_t a = 0; a < faces; ++a)
    for (std::size_t b = 0; b < faces; ++b)
      if (vertex_disjoint(jp.face(a), jp.face(b))) {
        disjoint.set(a * faces + b);
        ++res.disjoint_pairs;
      }
  const std::size_t base = jp.face_index(Face{std::vector<int>(k + 1, 1)});
  for (const auto& pq : g_pairs(k)) {
    for (const auto& [p, q] : {std::pair{pq.first, pq.second}, std::pair{pq.second, pq.first}}) {
      ++res.octahedron_pairs;
      const auto fp = jp.face_indices(p);
      const auto fq = jp.face_indices(q);
      if (std::binary_search(fp.begin(), fp.end(), base) && std::binary_search(fq.begin(), fq.end(), base))
        ++res.base_pair_multiplicity;
      for (auto a : fp)
        for (auto b : fq) products.flip(a * faces + b);
    }
  }
  res.product_sum_size = products.count();
  const BitVector diff = disjoint ^ products;
  res.holds = diff.none();
  if (!res.holds) {
    const std::size_t w = diff.first();
    res.witness = std::pair{jp.face(w / faces), jp.face(w % faces)};
  }
  return res;
}

namespace detail {

/// Sorted symmetric difference of two sorted index lists.
inline std::vector<std::size_t> sym_diff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// The octahedron whose face set is exactly `faces` (sorted indices), if any.
inline std::optional<Octahedron> octahedron_with_faces(const JoinPower& jp, const std::vector<std::size_t>& faces) {
  if (faces.size() != ipow(2, jp.arity())) return std::nullopt;
  std::vector<std::vector<int>> values(jp.arity());
  for (auto fi : faces) {
    const Face f = jp.face(fi);
    for (std::size_t i = 0; i < jp.arity(); ++i) {
      auto& vs = values[i];
      if (std::find(vs.begin(), vs.end(), f.coords[i]) == vs.end()) {
        if (vs.size() == 2) return std::nullopt;
        vs.push_back(f.coords[i]);
      }
    }
  }
  Octahedron p;
  for (auto& vs : values) {
    if (vs.size() != 2) return std::nullopt;
    p.parts.push_back(make_pair(vs[0], vs[1]));
  }
  if (jp.face_indices(p) != faces) return std::nullopt;
  return p;
}

}  // namespace detail

/// Every unordered pair {X, Y} of distinct octahedra of [n]^{*k+1} whose
/// face-set symmetric difference is the face set of `p`. Exhaustive: for each
/// X the partner is forced, so this scans all octahedra once.
inline std::vector<OctPair> xor_decompositions(const Octahedron& p, std::size_t n) {
  const JoinPower jp(n, p.arity() - 1);
  for (const auto& part : p.parts) jp.check_pair(part);
  const auto target = jp.face_indices(p);
  std::vector<OctPair> out;
  for (std::size_t xi = 0; xi < jp.octahedron_count(); ++xi) {
    const Octahedron x = jp.octahedron({xi});
    if (x == p) continue;
    const auto rest = detail::sym_diff(target, jp.face_indices(x));
    auto y = detail::octahedron_with_faces(jp, rest);
    if (y && x < *y) out.push_back({x, *y});
  }
  return out;
}

/// The one-coordinate family: X_j = Y_j = P_j for j ≠ i and
/// P_i = X_i ⊕ Y_i with |X_i ∩ Y_i| = 1 (third element c ∉ P_i).
inline std::vector<OctPair> one_coordinate_decompositions(const Octahedron& p, std::size_t n) {
  std::vector<OctPair> out;
  for (std::size_t i = 0; i < p.arity(); ++i)
    for (int c = 1; c <= static_cast<int>(n); ++c) {
      if (p.parts[i].contains(c)) continue;
      Octahedron x = p, y = p;
      x.parts[i] = make_pair(p.parts[i].lo, c);
      y.parts[i] = make_pair(p.parts[i].hi, c);
      out.push_back(unordered(std::move(x), std::move(y)));
    }
  std::sort(out.begin(), out.end());
  return out;
}

enum class DecompositionMode { exhaustive, one_coordinate };

/// Decompositions P = X ⊕ Y for every octahedron P of (n, k), by index.
struct DecompositionTable {
  struct Entry {
    std::size_t x;
    std::size_t y;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };
  std::size_t n = 0;
  std::size_t k = 0;
  DecompositionMode mode = DecompositionMode::exhaustive;
  std::vector<std::vector<Entry>> by_octahedron;

  static DecompositionTable build(std::size_t n, std::size_t k, DecompositionMode mode) {
    const JoinPower jp(n, k);
    DecompositionTable t{n, k, mode, {}};
    t.by_octahedron.resize(jp.octahedron_count());
    for (std::size_t pi = 0; pi < jp.octahedron_count(); ++pi) {
      const Octahedron p = jp.octahedron({pi});
      const auto pairs = mode == DecompositionMode::exhaustive ? xor_decompositions(p, n)
                                                               : one_coordinate_decompositions(p, n);
      for (const auto& d : pairs) t.by_octahedron[pi].push_back({jp.index(d.first).value, jp.index(d.second).value});
      std::sort(t.by_octahedron[pi].begin(), t.by_octahedron[pi].end());
    }
    return t;
  }
};

struct OneCoordinateOnlyResult {
  bool holds = true;
  std::size_t octahedra_checked = 0;
  std::size_t decompositions = 0;
  std::optional<std::pair<Octahedron, OctPair>> witness;  // first P with a differing family
};

/// Empirical check that the exhaustive search finds exactly the
/// one-coordinate family for every octahedron of (n, k).
inline OneCoordinateOnlyResult verify_one_coordinate_only(std::size_t n, std::size_t k) {
  const JoinPower jp(n, k);
  OneCoordinateOnlyResult res;
  for (std::size_t pi = 0; pi < jp.octahedron_count(); ++pi) {
    const Octahedron p = jp.octahedron({pi});
    const auto all = xor_decompositions(p, n);
    const auto family = one_coordinate_decompositions(p, n);
    ++res.octahedra_checked;
    res.decompositions += all.size();
    if (all != family && res.holds) {
      res.holds = false;
      std::vector<OctPair> extra;
      std::set_symmetric_difference(all.begin(), all.end(), family.begin(), family.end(), std::back_inserter(extra));
      res.witness = std::pair{p, extra.front()};
    }
  }
  return res;
}

/// Pairs {α, β} of vertex-disjoint k-faces of [3]^{*k+1} with e ⊂ β, for a
/// k-face α and a vertex-disjoint (k-1)-face e.
inline std::vector<FacePair> elementary_coboundary(const Face& alpha, const Face& e) {
  const std::size_t arity = alpha.arity();
  if (arity < 2) throw std::invalid_argument("elementary coboundaries need k >= 1");
  if (e.arity() != arity) throw std::invalid_argument("faces of different arity");
  if (alpha.empties() != 0) throw std::invalid_argument("alpha must be a k-face");
  if (e.empties() != 1) throw std::invalid_argument("e must be a (k-1)-face");
  for (std::size_t i = 0; i < arity; ++i) {
    if (alpha.coords[i] < 1 || alpha.coords[i] > 3) throw std::invalid_argument("alpha is not a face of [3]^{*k+1}");
    if (e.coords[i] != empty_vertex && (e.coords[i] < 1 || e.coords[i] > 3))
      throw std::invalid_argument("e is not a face of [3]^{*k+1}");
  }
  if (!vertex_disjoint(alpha, e)) throw std::invalid_argument("alpha and e must be vertex-disjoint");
  const std::size_t t = e.missing_line();
  std::vector<FacePair> out;
  for (int v = 1; v <= 3; ++v) {
    Face beta = e;
    beta.coords[t] = v;
    if (vertex_disjoint(alpha, beta)) out.push_back(unordered(alpha, beta));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CoboundaryScan {
  std::size_t checked = 0;        // valid (α, e) inputs
  bool all_size_two = true;
  std::optional<std::pair<Face, Face>> witness;  // first (α, e) whose coboundary is not of size 2
};

/// Sizes of all elementary coboundaries in [3]^{*k+1}.
inline CoboundaryScan scan_elementary_coboundaries(std::size_t k) {
  if (k < 1) throw std::invalid_argument("elementary coboundaries need k >= 1");
  const auto alphas = all_faces(3, k);
  std::vector<Face> es;
  for (std::size_t t = 0; t <= k; ++t)
    for (const auto& f : all_faces(3, k)) {
      Face e = f;
      e.coords[t] = empty_vertex;
      es.push_back(std::move(e));
    }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  CoboundaryScan res;
  for (const auto& alpha : alphas)
    for (const auto& e : es) {
      if (!vertex_disjoint(alpha, e)) continue;
      ++res.checked;
      if (elementary_coboundary(alpha, e).size() != 2 && res.all_size_two) {
        res.all_size_two = false;
        res.witness = std::pair{alpha, e};
      }
    }
  return res;
}

struct SkeletonParams {
  std::size_t s = 0;
  std::vector<std::vector<std::size_t>> groups;  // vertices 1..n+1 of the n-simplex
};

/// Splits the n+1 vertices of the n-simplex into k+1 groups of size >= s,
/// s = floor((n+1)/(k+1)), exhibiting [s]^{*k+1} inside the k-skeleton.
inline SkeletonParams skeleton_joinpower_params(std::size_t n, std::size_t k) {
  if (k < 1) throw std::invalid_argument("skeleton parameters need k >= 1");
  if (n < k) throw std::invalid_argument("skeleton parameters need n >= k");
  SkeletonParams out;
  const std::size_t parts = k + 1;
  out.s = (n + 1) / parts;
  const std::size_t larger = (n + 1) % parts;
  std::size_t next = 1;
  for (std::size_t g = 0; g < parts; ++g) {
    const std::size_t size = out.s + (g < larger ? 1 : 0);
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < size; ++i) group.push_back(next++);
    out.groups.push_back(std::move(group));
  }
  return out;
}

}  // namespace nkrank

#endif  // NKRANK_COMPLEX_HPP
