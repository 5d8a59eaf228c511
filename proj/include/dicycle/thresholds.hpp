#pragma once

// Closed-form threshold algebra for long cycles.
//
// leftover_fraction(a) is the piecewise function
//     w(a) = 1 - (1 - a) * floor(1 / (1 - a)),
// the share of vertices left over after packing as many classes of size
// (1 - a) n as fit. The directed resilience curve relates the kept edge
// fraction 1/2 + gamma of a pseudorandom digraph to the longest cycle
// (1 - a) n that must survive:
//     2 gamma = 1 - (1 - w(a)) (a + w(a)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>

#include "dicycle/errors.hpp"

namespace dicycle {

// Floats within this distance below an integer are floored up to it, so that
// 1 / (1 - 2/3) = 2.9999999999999996 lands on the piece it belongs to.
inline constexpr double kPieceGuard = 1e-12;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

// floor(1 / (1 - alpha)): the number of full classes of size (1 - alpha) n.
inline std::uint64_t class_count(double alpha, double guard = kPieceGuard) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  const double x = 1.0 / (1.0 - alpha);
  double m = std::floor(x);
  if (x - m > 1.0 - guard) m += 1.0;
  return static_cast<std::uint64_t>(m);
}

inline double leftover_fraction(double alpha) {
  const auto m = class_count(alpha);
  const double w = 1.0 - (1.0 - alpha) * static_cast<double>(m);
  return w < 0.0 ? 0.0 : w;
}

// Exact evaluation for alpha = num / den.
inline Rational leftover_fraction(Rational alpha) {
  if (alpha.den <= 0 || alpha.num < 0 || alpha.num >= alpha.den) throw DomainError("alpha must lie in [0, 1)");
  const std::int64_t gap = alpha.den - alpha.num;  // (1 - alpha) * den
  const std::int64_t m = alpha.den / gap;
  Rational w{alpha.den - m * gap, alpha.den};
  const std::int64_t g = std::gcd(w.num, w.den);
  if (g > 1) {
    w.num /= g;
    w.den /= g;
  }
  return w;
}

// Edge-count threshold guaranteeing an undirected cycle of length >= ell on n
// vertices: q C(ell-1, 2) + C(r+1, 2) + 1 with q = floor((n-1)/(ell-2)),
// r = (n-1) mod (ell-2). One less than the edge count of woodall_extremal.
inline std::uint64_t woodall_bound(std::uint64_t n, std::uint64_t ell) {
  if (ell < 3 || ell > n) throw DomainError("cycle length must satisfy 3 <= ell <= n");
  const std::uint64_t q = (n - 1) / (ell - 2);
  const std::uint64_t r = (n - 1) % (ell - 2);
  return q * ((ell - 1) * (ell - 2) / 2) + (r + 1) * r / 2 + 1;
}

// Same expression with the clique count rounded up instead of down. Kept for
// comparison only; it overshoots whenever (ell - 2) does not divide (n - 1).
inline std::uint64_t woodall_bound_ceil_variant(std::uint64_t n, std::uint64_t ell) {
  if (ell < 3 || ell > n) throw DomainError("cycle length must satisfy 3 <= ell <= n");
  const std::uint64_t q = (n - 1 + ell - 3) / (ell - 2);
  const std::uint64_t r = (n - 1) % (ell - 2);
  return q * ((ell - 1) * (ell - 2) / 2) + (r + 1) * r / 2 + 1;
}

// 1 - (1 - w(alpha)) (alpha + w(alpha)): the edge fraction above which every
// large graph has a cycle of length (1 - alpha) n.
inline double asymptotic_threshold(double alpha) {
  const double w = leftover_fraction(alpha);
  return 1.0 - (1.0 - w) * (alpha + w);
}

struct ResilienceCurvePoint {
  double alpha = 0.0;
  double w_alpha = 0.0;
  double gamma = 0.0;
  double predicted_fraction = 1.0;  // 1 - alpha
};

inline ResilienceCurvePoint curve_point_from_alpha(double alpha) {
  return {alpha, leftover_fraction(alpha), asymptotic_threshold(alpha) / 2.0, 1.0 - alpha};
}

// Minimal alpha with 2 gamma = 1 - (1 - w(alpha)) (alpha + w(alpha)).
//
// With s = 1 - alpha and m = floor(1/s), the right side is
// 1 - 2ms + m(m+1)s^2 on s in (1/(m+1), 1/m]. It decreases from 1/m to 1/(m+1)
// as alpha moves across that piece, so pieces are scanned in increasing alpha
// and the larger quadratic root is taken.
inline ResilienceCurvePoint solve_alpha(double gamma, double tol = 1e-12) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw DomainError("gamma must lie in (0, 1/2)");
  if (!(tol > 0.0)) throw InvalidParameter("tolerance must be positive");
  const double target = 2.0 * gamma;
  const auto last_piece = static_cast<std::uint64_t>(std::ceil(1.0 / target)) + 2;
  for (std::uint64_t m = 1; m <= last_piece; ++m) {
    const double md = static_cast<double>(m);
    const double lo = 1.0 / (md + 1.0);
    const double hi = 1.0 / md;
    double disc = md * md - md * (md + 1.0) * (1.0 - target);
    if (disc < 0.0) {
      if (disc < -1e-12) continue;
      disc = 0.0;
    }
    double s = (md + std::sqrt(disc)) / (md * (md + 1.0));
    if (s > hi + tol || s < lo - tol) continue;
    s = std::clamp(s, lo, hi);
    const double alpha = 1.0 - s;
    if (std::abs(asymptotic_threshold(alpha) - target) > std::max(tol, 1e-12)) continue;
    return {alpha, leftover_fraction(alpha), gamma, s};
  }
  throw DomainError("no solution found for gamma; tolerance too tight?");
}

// floor((1 - alpha) n) for the alpha solving the curve at gamma.
inline std::uint64_t predicted_cycle_length(std::uint64_t n, double gamma, double tol = 1e-12) {
  const auto point = solve_alpha(gamma, tol);
  return static_cast<std::uint64_t>(std::floor(point.predicted_fraction * static_cast<double>(n) + 1e-9));
}

// Fraction of edges the layered construction keeps from a pseudorandom graph,
// up to lower-order terms: 1 - (1 - w)(alpha + w) / 2.
inline double layered_kept_fraction(double alpha) {
  const double w = leftover_fraction(alpha);
  return 1.0 - (1.0 - w) * (alpha + w) / 2.0;
}

}  // namespace dicycle
