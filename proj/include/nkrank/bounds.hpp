#ifndef NKRANK_BOUNDS_HPP
#define NKRANK_BOUNDS_HPP

// Closed-form genus/Betti-number bounds, evaluated exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nkrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, r) for integer n (0 when r < 0 or r > n >= 0).
inline BigInt binomial(long long n, long long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt out = 1;
  for (long long i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

/// "p/q" in lowest terms, or "p" when integral.
inline std::string to_decimal(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// Exact rational bracket lower <= value <= upper.
struct Enclosure {
  Rational lower;
  Rational upper;
  Rational width() const { return upper - lower; }
};

/// (k+1) 2^{k-1} sqrt(beta) + 4k + 4, bracketed to width < 1e-6.
inline Enclosure helly_threshold(std::size_t k, std::size_t beta) {
  if (k < 1) throw std::invalid_argument("the Helly threshold needs k >= 1");
  const BigInt c = BigInt(k + 1) * (BigInt(1) << (k - 1));
  const BigInt scale = c * 10'000'000;  // width c / scale = 1e-7
  const BigInt scaled = boost::multiprecision::sqrt(BigInt(beta) * scale * scale);
  Rational lo(scaled, scale);
  Rational hi = scaled * scaled == BigInt(beta) * scale * scale ? lo : Rational(scaled + 1, scale);
  const Rational offset = Rational(4 * static_cast<long long>(k) + 4);
  return {lo * c + offset, hi * c + offset};
}

/// C(n+1,k+1) - (k+2) C(n+1,k): the quantity f_k - (k+2) f_{k-1} for the
/// k-skeleton of the n-simplex. May be negative.
inline BigInt gamma_delta(std::size_t n, std::size_t k) {
  if (k < 1 || n < k) throw std::invalid_argument("gamma needs n >= k >= 1");
  const auto nn = static_cast<long long>(n), kk = static_cast<long long>(k);
  return binomial(nn + 1, kk + 1) - BigInt(kk + 2) * binomial(nn + 1, kk);
}

struct BoundReport {
  std::size_t n = 0, k = 0;
  Rational heawood;             // (n-3)(n-4)/12
  Rational skeleton_bound;      // (n-4k-2)^2 / (2^k (k+1)^2)
  bool skeleton_valid = false;  // n >= 5k+3
  Rational joinpower_bound;     // (n-3)^2 / 2^k
  bool joinpower_valid = false; // n >= 4
  BigInt kuhnel_coefficient;    // C(2k+1, k+1)
  BigInt kuhnel_rhs;            // C(n-k-1, k+1)
  std::optional<BigInt> gamma;  // defined for n >= k
  bool gamma_negative = false;
  std::optional<std::size_t> beta;
  std::optional<Enclosure> helly;  // only with beta
  Rational crossing_bound;      // n^2 / (2^k (k+1)^2)
};

inline BoundReport evaluate_bounds(std::size_t n, std::size_t k, std::optional<std::size_t> beta = std::nullopt) {
  if (n < 1 || k < 1) throw std::invalid_argument("bounds need n >= 1 and k >= 1");
  const auto nn = static_cast<long long>(n), kk = static_cast<long long>(k);
  const BigInt two_k = BigInt(1) << k;
  const BigInt k1_sq = BigInt(kk + 1) * (kk + 1);
  BoundReport r;
  r.n = n;
  r.k = k;
  r.heawood = Rational(BigInt(nn - 3) * (nn - 4), 12);
  r.skeleton_bound = Rational(BigInt(nn - 4 * kk - 2) * (nn - 4 * kk - 2), two_k * k1_sq);
  r.skeleton_valid = n >= 5 * k + 3;
  r.joinpower_bound = Rational(BigInt(nn - 3) * (nn - 3), two_k);
  r.joinpower_valid = n >= 4;
  r.kuhnel_coefficient = binomial(2 * kk + 1, kk + 1);
  r.kuhnel_rhs = binomial(nn - kk - 1, kk + 1);
  if (n >= k) {
    r.gamma = gamma_delta(n, k);
    r.gamma_negative = *r.gamma < 0;
  }
  r.beta = beta;
  if (beta) r.helly = helly_threshold(k, *beta);
  r.crossing_bound = Rational(BigInt(nn) * nn, two_k * k1_sq);
  return r;
}

/// The skeleton bound at n never exceeds the join-power bound at
/// s = floor((n+1)/(k+1)), the size of the join power found in the skeleton.
inline bool skeleton_consistent(std::size_t n, std::size_t k) {
  const std::size_t s = (n + 1) / (k + 1);
  const auto nn = static_cast<long long>(n), kk = static_cast<long long>(k), ss = static_cast<long long>(s);
  const Rational skeleton(BigInt(nn - 4 * kk - 2) * (nn - 4 * kk - 2), (BigInt(1) << k) * (kk + 1) * (kk + 1));
  const Rational joinpower(BigInt(ss - 3) * (ss - 3), BigInt(1) << k);
  return skeleton <= joinpower;
}

struct GammaInequalityRow {
  std::size_t n = 0;
  BigInt left;    // C(n,k+1) - (k+2) C(n,k)
  BigInt middle;  // C(n+1,k+1) - (k+2) C(n+1,k)
  BigInt right;   // C(n-k-1,k+1)
  bool holds = false;  // left < middle < right
};

struct GammaInequalityScan {
  std::size_t k = 0;
  std::vector<GammaInequalityRow> rows;  // n = k+1 .. n_max
  std::optional<std::size_t> threshold;  // start of the final all-holding run, if it spans >= k+2 values
};

/// Evaluates C(n,k+1) − (k+2)C(n,k) < C(n+1,k+1) − (k+2)C(n+1,k) < C(n−k−1,k+1)
/// for every n up to n_max.
inline GammaInequalityScan gamma_inequality_scan(std::size_t k, std::size_t n_max) {
  if (k < 1) throw std::invalid_argument("the scan needs k >= 1");
  if (n_max < k + 3) throw std::invalid_argument("the scan needs n_max >= k + 3");
  const auto kk = static_cast<long long>(k);
  GammaInequalityScan scan;
  scan.k = k;
  for (std::size_t n = k + 1; n <= n_max; ++n) {
    const auto nn = static_cast<long long>(n);
    GammaInequalityRow row;
    row.n = n;
    row.left = binomial(nn, kk + 1) - BigInt(kk + 2) * binomial(nn, kk);
    row.middle = binomial(nn + 1, kk + 1) - BigInt(kk + 2) * binomial(nn + 1, kk);
    row.right = binomial(nn - kk - 1, kk + 1);
    row.holds = row.left < row.middle && row.middle < row.right;
    scan.rows.push_back(std::move(row));
  }
  std::size_t run = 0;
  for (auto it = scan.rows.rbegin(); it != scan.rows.rend() && it->holds; ++it) ++run;
  if (run >= k + 2) scan.threshold = scan.rows[scan.rows.size() - run].n;
  return scan;
}

}  // namespace nkrank

#endif  // NKRANK_BOUNDS_HPP
