#pragma once

// Brute-force verifiers for the closed-form steplengths. Nothing in here
// calls the closed forms to do its search; they are only used for reporting.

#include <bbstep/errors.hpp>
#include <bbstep/steplength.hpp>
#include <bbstep/vector_ops.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace bbstep {

namespace oracle_detail {
inline constexpr std::size_t kGridIntervals = 1000;
inline constexpr int kMaxGoldenIterations = 1000;
} // namespace oracle_detail

/// Coarse grid scan of [lo, hi] followed by golden-section refinement of the
/// cell around the best grid point. Returns a point within `tol` of the
/// minimizer when `fn` is unimodal on [lo, hi].
///
/// `fn` may return any totally ordered type, so callers can evaluate in
/// extended precision when double resolution of the objective is the limit.
template <class Fn>
double minimize_scalar(Fn &&fn, double lo, double hi, double tol) {
  if (!(lo < hi))
    throw InvalidBracket("minimize_scalar: requires lo < hi");
  if (!(tol > 0.0))
    throw DomainError("minimize_scalar: tol must be positive");

  constexpr std::size_t n = oracle_detail::kGridIntervals;
  const double h = (hi - lo) / static_cast<double>(n);
  auto grid = [&](std::size_t i) { return i == n ? hi : lo + h * static_cast<double>(i); };

  std::size_t best = 0;
  auto best_value = fn(grid(0));
  for (std::size_t i = 1; i <= n; ++i) {
    auto v = fn(grid(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  double a = grid(best == 0 ? 0 : best - 1);
  double b = grid(best == n ? n : best + 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  auto fc = fn(c);
  auto fd = fn(d);
  for (int it = 0; it < oracle_detail::kMaxGoldenIterations && b - a > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

struct Bb3Verification {
  double closed_form = 0.0;
  double oracle = 0.0;
  bool agree = false;
};

/// Compares bb3(pair) against a direct search for argmin q(α) on [0, 2·bb2].
/// q is evaluated in quad precision from the raw vectors so the search
/// resolves the minimizer of a very flat q well below `tol`.
inline Bb3Verification verify_bb3(const SecantPair &pair, double tol) {
  const double closed = bb3(pair).value;
  if (!(pair.sy() > 0.0))
    throw DomainError("verify_bb3: requires sᵀy > 0");

  // Products of doubles are exact in quad precision, so these sums carry far
  // more accuracy than the cached double inner products.
  __float128 ss = 0, yy = 0, sy = 0;
  const auto s = pair.s();
  const auto y = pair.y();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const __float128 si = s[i], yi = y[i];
    ss += si * si;
    yy += yi * yi;
    sy += si * yi;
  }
  auto q = [&](double alpha) {
    const __float128 a = alpha;
    return (a * a * yy - 2 * a * sy + ss) / (a * a + 1);
  };

  const double hi = 2.0 * bb2(pair).value;
  // bb1 bounds the minimizer from below, so this tolerance is relative to it.
  const double search_tol = 1e-3 * tol * bb1(pair).value;
  const double found = minimize_scalar(q, 0.0, hi, search_tol);

  Bb3Verification out;
  out.closed_form = closed;
  out.oracle = found;
  out.agree = std::abs(closed - found) <= tol * std::max(1.0, std::abs(closed));
  return out;
}

/// Random secant pair with sᵀy > 0: dimension 1–10, Gaussian entries, and s
/// rescaled by 10^U(−2, 2) so the three steplengths spread over several decades.
inline SecantPair random_positive_pair(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> dim_dist(1, 10);
  std::normal_distribution<double> entry(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
  for (;;) {
    const auto n = static_cast<std::size_t>(dim_dist(rng));
    const double scale = std::pow(10.0, log_scale(rng));
    Vector s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = scale * entry(rng);
      y[i] = entry(rng);
    }
    double sy = dot(s, y);
    if (sy == 0.0)
      continue;
    if (sy < 0.0)
      for (double &v : y)
        v = -v;
    return SecantPair(std::move(s), std::move(y));
  }
}

struct Bb3SweepReport {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t disagreements = 0;
  double worst_relative_error = 0.0;
};

/// verify_bb3 over `count` seeded random pairs.
inline Bb3SweepReport verify_bb3_sweep(std::size_t count, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  Bb3SweepReport report;
  report.seed = seed;
  report.count = count;
  for (std::size_t i = 0; i < count; ++i) {
    const auto pair = random_positive_pair(rng);
    const auto v = verify_bb3(pair, tol);
    if (!v.agree)
      ++report.disagreements;
    report.worst_relative_error = std::max(
        report.worst_relative_error, std::abs(v.closed_form - v.oracle) / std::abs(v.closed_form));
  }
  return report;
}

} // namespace bbstep
