#ifndef NKRANK_K1_PIPELINE_HPP
#define NKRANK_K1_PIPELINE_HPP

// Rank certification for (n,1)-matrices through the block matrices B, C, D:
//   rk A >= rk B >= rk C >= rk D - rk(C+D) >= ceil((n-2)^2/2) - (n-3) >= ceil((n-3)^2/2)
// together with the structural checks and bounds the chain relies on.
//
// Block indices and in-block indices are 0-based in this API. Block i of B
// corresponds to the vertex i+2 (B's (i,a) entry uses {1,i+2} * {1,a+2}).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nkrank/complex.hpp"
#include "nkrank/errors.hpp"
#include "nkrank/gf2_matrix.hpp"
#include "nkrank/nk_matrix.hpp"

namespace nkrank {

/// A matrix with rows split as [m_1] ⊔ … ⊔ [m_l] and columns likewise.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(Gf2Matrix m, std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes)
      : m_(std::move(m)), row_sizes_(std::move(row_sizes)), col_sizes_(std::move(col_sizes)) {
    if (std::accumulate(row_sizes_.begin(), row_sizes_.end(), std::size_t{0}) != m_.rows() ||
        std::accumulate(col_sizes_.begin(), col_sizes_.end(), std::size_t{0}) != m_.cols())
      throw std::invalid_argument("block sizes do not add up to the matrix dimensions");
    row_offsets_ = offsets(row_sizes_);
    col_offsets_ = offsets(col_sizes_);
  }

  /// l x l blocks of size m x m.
  static BlockMatrix uniform(Gf2Matrix m, std::size_t blocks, std::size_t size) {
    return {std::move(m), std::vector<std::size_t>(blocks, size), std::vector<std::size_t>(blocks, size)};
  }

  const Gf2Matrix& matrix() const { return m_; }
  Gf2Matrix& matrix() { return m_; }
  std::size_t row_blocks() const { return row_sizes_.size(); }
  std::size_t col_blocks() const { return col_sizes_.size(); }
  const std::vector<std::size_t>& row_sizes() const { return row_sizes_; }
  const std::vector<std::size_t>& col_sizes() const { return col_sizes_; }
  std::size_t row_of(std::size_t i, std::size_t a) const { return row_offsets_.at(i) + a; }
  std::size_t col_of(std::size_t j, std::size_t b) const { return col_offsets_.at(j) + b; }

  bool is_uniform() const {
    return row_sizes_ == col_sizes_ &&
           std::adjacent_find(row_sizes_.begin(), row_sizes_.end(), std::not_equal_to<>()) == row_sizes_.end();
  }

  bool get(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
    return m_.get(row_of(i, a), col_of(j, b));
  }

  Gf2Matrix block(std::size_t i, std::size_t j) const {
    return nkrank::block(m_, row_offsets_.at(i), col_offsets_.at(j), row_sizes_.at(i), col_sizes_.at(j));
  }

  void set_block(std::size_t i, std::size_t j, const Gf2Matrix& x) {
    if (x.rows() != row_sizes_.at(i) || x.cols() != col_sizes_.at(j)) throw std::invalid_argument("block shape mismatch");
    for (std::size_t a = 0; a < x.rows(); ++a)
      for (std::size_t b = 0; b < x.cols(); ++b) m_.set(row_of(i, a), col_of(j, b), x.get(a, b));
  }

 private:
  static std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> out(sizes.size());
    std::size_t acc = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      out[i] = acc;
      acc += sizes[i];
    }
    return out;
  }

  Gf2Matrix m_;
  std::vector<std::size_t> row_sizes_, col_sizes_;
  std::vector<std::size_t> row_offsets_, col_offsets_;
};

enum class BlockShape { diagonal, inversed_diagonal, neither };

inline const char* to_string(BlockShape s) {
  switch (s) {
    case BlockShape::diagonal: return "diagonal";
    case BlockShape::inversed_diagonal: return "inversed-diagonal";
    default: return "neither";
  }
}

/// Off-diagonal entries all 0 → diagonal, all 1 → inversed diagonal. The
/// diagonal itself is ignored. A 1x1 block counts as diagonal.
inline BlockShape classify_block(const Gf2Matrix& x) {
  if (!x.is_square()) return BlockShape::neither;
  bool zeros = true, ones = true;
  for (std::size_t a = 0; a < x.rows(); ++a)
    for (std::size_t b = 0; b < x.cols(); ++b) {
      if (a == b) continue;
      if (x.get(a, b))
        zeros = false;
      else
        ones = false;
    }
  if (zeros) return BlockShape::diagonal;
  if (ones) return BlockShape::inversed_diagonal;
  return BlockShape::neither;
}

/// Y_{a,b} + Y_{b,a} = 1 for all a != b; the diagonal is free.
inline bool is_tournament(const Gf2Matrix& y) {
  if (!y.is_square()) return false;
  for (std::size_t a = 0; a < y.rows(); ++a)
    for (std::size_t b = a + 1; b < y.cols(); ++b)
      if (y.get(a, b) == y.get(b, a)) return false;
  return true;
}

/// B_{(i,a)(j,b)} = A_{ {1,i+2}*{1,a+2}, {1,j+2}*{1,b+2} }, size (n-1)^2.
inline BlockMatrix build_b(const OctMatrix& a) {
  if (a.k() != 1) throw std::invalid_argument("B is defined for k = 1");
  if (a.n() < 3) throw std::invalid_argument("B needs n >= 3");
  const std::size_t m = a.n() - 1;
  const JoinPower& jp = a.indexing();
  std::vector<std::size_t> index(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t x = 0; x < m; ++x)
      index[i * m + x] = jp.index(oct_bar({static_cast<int>(i) + 2, static_cast<int>(x) + 2})).value;
  return BlockMatrix::uniform(nkrank::block(a.matrix(), index, index), m, m);
}

struct BlockSumWitness {
  std::size_t i, j, s;  // B_{i,j} + B_{s,j} has unequal off-diagonal entries
};

struct BlockSumCheck {
  bool holds = true;
  std::size_t triples = 0;
  std::optional<BlockSumWitness> witness;  // first triple in (i, j, s) order
};

/// For pairwise distinct i, j, s: B_{i,j} + B_{s,j} is diagonal or inversed
/// diagonal. No precondition check.
inline BlockSumCheck scan_block_sums(const BlockMatrix& b) {
  BlockSumCheck res;
  const std::size_t l = b.row_blocks();
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t s = 0; s < l; ++s) {
        if (i == j || j == s || i == s) continue;
        ++res.triples;
        if (classify_block(b.block(i, j) + b.block(s, j)) == BlockShape::neither && res.holds) {
          res.holds = false;
          res.witness = BlockSumWitness{i, j, s};
        }
      }
  return res;
}

/// The same scan on B(A), after requiring A to be independent and additive.
inline BlockSumCheck check_block_sums(const OctMatrix& a, const PropertyReport* known = nullptr) {
  if (a.n() < 4) throw std::invalid_argument("the block-sum check needs n >= 4");
  const PropertyReport r = known ? *known : check_properties(a);
  detail::require_properties(r, false, true, true, false);
  return scan_block_sums(build_b(a));
}

struct TournamentRowCheck {
  bool holds = true;
  std::optional<std::size_t> witness;  // first block j (0-based) with B_{0,j} not a tournament
};

/// B_{0,j} is a tournament matrix for every j > 0. No precondition check.
inline TournamentRowCheck scan_first_row_tournaments(const BlockMatrix& b) {
  TournamentRowCheck res;
  for (std::size_t j = 1; j < b.col_blocks(); ++j)
    if (!is_tournament(b.block(0, j))) {
      res.holds = false;
      res.witness = j;
      break;
    }
  return res;
}

inline TournamentRowCheck check_first_row_tournaments(const OctMatrix& a, const PropertyReport* known = nullptr) {
  if (a.n() < 4) throw std::invalid_argument("the tournament-row check needs n >= 4");
  if (a.k() != 1) throw std::invalid_argument("the tournament-row check is for k = 1");
  const PropertyReport r = known ? *known : check_properties(a);
  detail::require_properties(r, true, true, true, true);
  return scan_first_row_tournaments(build_b(a));
}

/// C_{i,j} = B_{i+1,j+1} + B_{0,j+1} for i, j in [0, n-3]; blocks of size n-1.
inline BlockMatrix build_c(const BlockMatrix& b) {
  if (!b.is_uniform() || b.row_blocks() < 2) throw std::invalid_argument("C needs a uniform B with >= 2 blocks");
  const std::size_t l = b.row_blocks() - 1;
  const std::size_t m = b.row_sizes()[0];
  BlockMatrix c = BlockMatrix::uniform(Gf2Matrix(l * m, l * m), l, m);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) c.set_block(i, j, b.block(i + 1, j + 1) + b.block(0, j + 1));
  return c;
}

/// D_{i,j} = C_{i,j} + J when i > j and C_{i,j} is inversed diagonal, else C_{i,j}.
/// Throws when an off-diagonal block of C is neither diagonal nor inversed diagonal.
inline BlockMatrix build_d(const BlockMatrix& c) {
  if (!c.is_uniform()) throw std::invalid_argument("D needs a uniform C");
  BlockMatrix d = c;
  const std::size_t l = c.row_blocks();
  const std::size_t m = l ? c.row_sizes()[0] : 0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      if (i == j) continue;
      const Gf2Matrix x = c.block(i, j);
      const BlockShape shape = classify_block(x);
      if (shape == BlockShape::neither)
        throw PreconditionError("block-sum structure",
                                "C block (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is neither diagonal nor inversed diagonal");
      if (i > j && shape == BlockShape::inversed_diagonal) d.set_block(i, j, x + Gf2Matrix::ones(m, m));
    }
  return d;
}

struct StaircaseBound {
  bool pattern_ok = false;
  std::size_t rank = 0;
  std::size_t limit = 0;  // l - 1
  bool pass = false;
};

/// N uniform l x l with blocks 0 on and above the diagonal and 0 or J below:
/// rk N <= l - 1. Throws PreconditionError when the pattern is violated.
inline StaircaseBound staircase_rank_bound(const BlockMatrix& nm) {
  if (!nm.is_uniform()) throw std::invalid_argument("the staircase bound needs a uniform block matrix");
  const std::size_t l = nm.row_blocks();
  const std::size_t m = l ? nm.row_sizes()[0] : 0;
  const Gf2Matrix ones = Gf2Matrix::ones(m, m), zero(m, m);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      const Gf2Matrix x = nm.block(i, j);
      if (x == zero || (i > j && x == ones)) continue;
      throw PreconditionError("staircase pattern",
                              "block (" + std::to_string(i) + "," + std::to_string(j) + ") breaks the pattern");
    }
  StaircaseBound res;
  res.pattern_ok = true;
  res.rank = rank(nm.matrix());
  res.limit = l == 0 ? 0 : l - 1;
  res.pass = res.rank <= res.limit;
  return res;
}

struct TournamentRank {
  bool is_tournament = false;
  std::size_t rank = 0;
  std::size_t bound = 0;  // ceil((m-1)/2)
  bool pass = false;
};

inline TournamentRank tournament_rank_check(const Gf2Matrix& y) {
  if (!y.is_square()) throw std::invalid_argument("tournament rank check needs a square matrix");
  TournamentRank res;
  res.is_tournament = is_tournament(y);
  res.rank = rank(y);
  res.bound = y.rows() == 0 ? 0 : y.rows() / 2;  // ceil((m-1)/2) = floor(m/2)
  res.pass = res.rank >= res.bound;
  return res;
}

/// Position of every row/column in a parent [l] x [m] grid: parents[i][a] is
/// the parent index of in-block index a of block i (distinct within a block).
/// Under-diagonal blocks may only be nonzero where parents agree.
struct DiagLikeLayout {
  std::vector<std::vector<std::size_t>> parents;

  static DiagLikeLayout uniform(std::size_t blocks, std::size_t size) {
    DiagLikeLayout out;
    out.parents.assign(blocks, std::vector<std::size_t>(size));
    for (auto& p : out.parents) std::iota(p.begin(), p.end(), std::size_t{0});
    return out;
  }
  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s;
    for (const auto& p : parents) s.push_back(p.size());
    return s;
  }
};

struct CertificatePivot {
  std::size_t row_block, row_index;  // original (block, in-block index) of the lowest row
  std::size_t col_block, col_index;  // its leftmost under-diagonal 1
  std::size_t rank_before = 0, rank_after = 0;
  friend bool operator==(const CertificatePivot&, const CertificatePivot&) = default;
};

struct DiagTournamentCertificate {
  std::vector<CertificatePivot> pivots;
  std::vector<std::size_t> base_sizes;  // block sizes once the under-diagonal region is zero
  std::size_t base_bound = 0;           // sum of ceil((m_i - 1)/2) over the base blocks
  std::size_t bound = 0;                // pivots + base_bound
  std::size_t target = 0;               // ceil(sum(m_i - 1) / 2) over the input sizes
  std::size_t rank = 0;
  bool steps_ok = true;                 // every step lowered the rank by at least 1
  bool pass = false;                    // steps_ok, bound >= target, rank >= bound
  std::string failure;
};

namespace detail {

struct Label {
  std::size_t block, index, parent;
};

/// Tournament diagonal blocks and parent-consistent under-diagonal blocks.
inline std::string diag_tournament_violation(const Gf2Matrix& m, const std::vector<Label>& labels) {
  for (std::size_t r = 0; r < labels.size(); ++r)
    for (std::size_t c = 0; c < labels.size(); ++c) {
      const Label& lr = labels[r];
      const Label& lc = labels[c];
      if (lr.block == lc.block && r < c && m.get(r, c) == m.get(c, r))
        return "block " + std::to_string(lr.block) + " is not a tournament at (" + std::to_string(lr.index) + "," +
               std::to_string(lc.index) + ")";
      if (lr.block > lc.block && m.get(r, c) && lr.parent != lc.parent)
        return "under-diagonal 1 at (" + std::to_string(lr.block) + ":" + std::to_string(lr.index) + ", " +
               std::to_string(lc.block) + ":" + std::to_string(lc.index) + ") between different parents";
    }
  return {};
}

}  // namespace detail

/// Certifies rk D >= ceil(sum(m_i - 1)/2) for a tournament-like,
/// diagonal-like D. Repeatedly takes the lexicographically largest row with a
/// 1 under the block diagonal and that row's leftmost such 1, clears the cross
/// through it by row then column additions, deletes both rows and both columns
/// and counts one. What remains is block upper triangular with tournament
/// diagonal blocks, each of rank >= ceil((m-1)/2).
inline DiagTournamentCertificate diag_tournament_certify(const BlockMatrix& d, const DiagLikeLayout& layout) {
  if (d.row_sizes() != d.col_sizes()) throw std::invalid_argument("D must have matching row and column blocks");
  if (layout.sizes() != d.row_sizes()) throw std::invalid_argument("layout does not match the block sizes");
  for (const auto& p : layout.parents) {
    auto s = p;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("parent indices repeat within a block");
  }
  std::vector<detail::Label> labels;
  for (std::size_t i = 0; i < layout.parents.size(); ++i)
    for (std::size_t a = 0; a < layout.parents[i].size(); ++a) labels.push_back({i, a, layout.parents[i][a]});

  Gf2Matrix m = d.matrix();
  if (auto why = detail::diag_tournament_violation(m, labels); !why.empty())
    throw PreconditionError("tournament-like and diagonal-like", why);

  DiagTournamentCertificate cert;
  std::size_t excess = 0;
  for (auto s : d.row_sizes()) excess += s == 0 ? 0 : s - 1;
  // Blocks of size 0 would contribute -1; the target uses the non-negative form.
  cert.target = (excess + 1) / 2;
  cert.rank = rank(m);

  std::size_t current_rank = cert.rank;
  while (true) {
    std::size_t pr = labels.size(), pc = 0;
    for (std::size_t r = labels.size(); r-- > 0 && pr == labels.size();) {
      for (std::size_t c = 0; c < labels.size() && labels[c].block < labels[r].block; ++c)
        if (m.get(r, c)) {
          pr = r;
          pc = c;
          break;
        }
    }
    if (pr == labels.size()) break;

    for (std::size_t r = 0; r < labels.size(); ++r)
      if (r != pr && m.get(r, pc)) m.add_row(r, pr);
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < labels.size(); ++c)
      if (c != pc && m.get(pr, c)) cols.push_back(c);
    for (std::size_t r = 0; r < labels.size(); ++r)
      if (m.get(r, pc))
        for (auto c : cols) m.flip(r, c);

    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < labels.size(); ++x)
      if (x != pr && x != pc) keep.push_back(x);
    Gf2Matrix next = nkrank::block(m, keep, keep);
    std::vector<detail::Label> next_labels;
    for (auto x : keep) next_labels.push_back(labels[x]);

    CertificatePivot piv{labels[pr].block, labels[pr].index, labels[pc].block, labels[pc].index, current_rank,
                         rank(next)};
    if (piv.rank_after + 1 > piv.rank_before) {
      cert.steps_ok = false;
      if (cert.failure.empty()) cert.failure = "step " + std::to_string(cert.pivots.size()) + " did not lower the rank";
    }
    current_rank = piv.rank_after;
    cert.pivots.push_back(piv);
    m = std::move(next);
    labels = std::move(next_labels);
    if (auto why = detail::diag_tournament_violation(m, labels); !why.empty() && cert.failure.empty()) {
      cert.steps_ok = false;
      cert.failure = "structure lost after step " + std::to_string(cert.pivots.size()) + ": " + why;
    }
  }

  cert.base_sizes.assign(d.row_blocks(), 0);
  for (const auto& l : labels) ++cert.base_sizes[l.block];
  for (auto s : cert.base_sizes) cert.base_bound += s / 2;  // ceil((s-1)/2), 0 for s = 0
  cert.bound = cert.pivots.size() + cert.base_bound;
  cert.pass = cert.steps_ok && cert.bound >= cert.target && cert.rank >= cert.bound;
  if (cert.failure.empty() && !cert.pass) cert.failure = "certified bound below target or rank";
  return cert;
}

struct K1Chain {
  std::size_t n = 0;
  std::size_t rank_a = 0, rank_b = 0, rank_c = 0, rank_d = 0, rank_c_plus_d = 0;
  std::size_t d_bound = 0;          // ceil((n-2)^2 / 2), certified for rk D
  std::size_t c_plus_d_limit = 0;   // n - 3
  std::size_t final_bound = 0;      // ceil((n-3)^2 / 2)
  BlockSumCheck block_sums;
  TournamentRowCheck first_row;
  std::optional<DiagTournamentCertificate> certificate;
  std::optional<StaircaseBound> staircase;
  bool a_ge_b = false, b_ge_c = false, c_ge_difference = false, difference_ge_middle = false,
       middle_ge_final = false;
  bool agrees_with_rank_bound = false;  // same verdict as the heredity-chain rank check
  bool pass = false;
  std::string failure;
};

/// Builds B, C, D for an (n,1)-matrix and checks every inequality of the chain.
inline K1Chain certify_k1(const OctMatrix& a, const PropertyReport* known = nullptr) {
  if (a.k() != 1) throw std::invalid_argument("the k = 1 chain needs k = 1");
  if (a.n() < 4) throw std::invalid_argument("the k = 1 chain needs n >= 4");
  const PropertyReport props = known ? *known : check_properties(a);
  detail::require_properties(props, true, true, true, true);

  K1Chain res;
  const std::size_t n = a.n();
  res.n = n;
  const BlockMatrix b = build_b(a);
  res.block_sums = scan_block_sums(b);
  res.first_row = scan_first_row_tournaments(b);
  if (!res.block_sums.holds || !res.first_row.holds) {
    res.failure = !res.block_sums.holds ? "block-sum structure fails" : "first block row is not tournament";
    return res;
  }
  const BlockMatrix c = build_c(b);
  const BlockMatrix d = build_d(c);
  BlockMatrix c_plus_d = c;
  c_plus_d.matrix() += d.matrix();

  res.rank_a = rank(a.matrix());
  res.rank_b = rank(b.matrix());
  res.rank_c = rank(c.matrix());
  res.rank_d = rank(d.matrix());
  res.rank_c_plus_d = rank(c_plus_d.matrix());
  res.d_bound = ceil_div((n - 2) * (n - 2), 2);
  res.c_plus_d_limit = n - 3;
  res.final_bound = ceil_div((n - 3) * (n - 3), 2);

  try {
    res.staircase = staircase_rank_bound(c_plus_d);
    res.certificate = diag_tournament_certify(d, DiagLikeLayout::uniform(d.row_blocks(), d.row_sizes()[0]));
  } catch (const PreconditionError& e) {
    res.failure = e.what();
    return res;
  }

  res.a_ge_b = res.rank_a >= res.rank_b;
  res.b_ge_c = res.rank_b >= res.rank_c;
  res.c_ge_difference = res.rank_c + res.rank_c_plus_d >= res.rank_d;
  // rk D - rk(C+D) >= ceil((n-2)^2/2) - (n-3), through the two certified bounds.
  res.difference_ge_middle = res.certificate->pass && res.certificate->bound >= res.d_bound &&
                             res.staircase->pass && res.rank_c_plus_d <= res.c_plus_d_limit &&
                             res.rank_d >= res.d_bound + res.rank_c_plus_d - res.c_plus_d_limit;
  res.middle_ge_final = res.d_bound >= res.c_plus_d_limit + res.final_bound;
  const bool chain = res.a_ge_b && res.b_ge_c && res.c_ge_difference && res.difference_ge_middle &&
                     res.middle_ge_final && res.rank_a >= res.final_bound;
  const RankBoundResult cross = verify_rank_bound(a, &props);
  res.agrees_with_rank_bound = cross.pass == chain && cross.bound == res.final_bound;
  res.pass = chain && res.agrees_with_rank_bound;
  if (!res.pass && res.failure.empty()) res.failure = "rank chain inequality fails";
  return res;
}

}  // namespace nkrank

#endif  // NKRANK_K1_PIPELINE_HPP
