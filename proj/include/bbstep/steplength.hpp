#pragma once

// Closed-form Barzilai–Borwein steplengths and the scalar-unknown
// least-squares triad (ordinary, data, total) they are derived from.
//
// With a secant pair s = x_{k+1} − x_k, y = g_{k+1} − g_k:
//
//   bb1 = sᵀy / yᵀy                                  argmin_α ‖s − αy‖²
//   bb2 = sᵀs / sᵀy                                  1 / argmin_β ‖βs − y‖²
//   bb3 = (sᵀs − yᵀy + √((yᵀy − sᵀs)² + 4(sᵀy)²)) / (2sᵀy)
//                                                    argmin_α ‖αy − s‖²/(α²+1)
//
// For sᵀy > 0 the three satisfy bb1 ≤ bb3 ≤ bb2.

#include <bbstep/errors.hpp>
#include <bbstep/vector_ops.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>

namespace bbstep {

/// A steplength α multiplying the gradient.
struct Steplength {
  double value = 0.0;

  constexpr Steplength() = default;
  constexpr explicit Steplength(double v) : value(v) {}

  friend constexpr auto operator<=>(const Steplength &, const Steplength &) = default;
};

/// Displacement s and gradient change y with their inner products cached once.
class SecantPair {
public:
  SecantPair(Vector s, Vector y) : s_(std::move(s)), y_(std::move(y)) {
    if (s_.empty() || s_.size() != y_.size())
      throw DomainError("SecantPair: s and y must have equal nonzero dimension");
    ss_ = dot(s_, s_);
    yy_ = dot(y_, y_);
    sy_ = dot(s_, y_);
  }

  std::span<const double> s() const noexcept { return s_; }
  std::span<const double> y() const noexcept { return y_; }
  std::size_t dim() const noexcept { return s_.size(); }

  double ss() const noexcept { return ss_; }
  double yy() const noexcept { return yy_; }
  double sy() const noexcept { return sy_; }

private:
  Vector s_;
  Vector y_;
  double ss_ = 0.0;
  double yy_ = 0.0;
  double sy_ = 0.0;
};

namespace detail {

// Root of c·x² + (q − p)·x − c = 0 with the sign of c, i.e.
// (p − q + √((q − p)² + 4c²)) / (2c). The branch is chosen on the sign of
// p − q so the numerator never subtracts nearly equal quantities.
inline double tls_root(double p, double q, double c) {
  const double d = q - p;
  const double r = std::hypot(d, 2.0 * c);
  if (d <= 0.0)
    return (r - d) / (2.0 * c);
  return 2.0 * c / (d + r);
}

} // namespace detail

inline Steplength bb1(const SecantPair &pair) {
  if (pair.yy() == 0.0 || pair.sy() == 0.0)
    throw DegeneratePair("bb1: requires yᵀy ≠ 0 and sᵀy ≠ 0");
  return Steplength(pair.sy() / pair.yy());
}

inline Steplength bb2(const SecantPair &pair) {
  if (pair.ss() == 0.0 || pair.sy() == 0.0)
    throw DegeneratePair("bb2: requires sᵀs ≠ 0 and sᵀy ≠ 0");
  return Steplength(pair.ss() / pair.sy());
}

/// Total-least-squares steplength. Sign follows sᵀy.
inline Steplength bb3(const SecantPair &pair) {
  if (pair.sy() == 0.0)
    throw DegeneratePair("bb3: requires sᵀy ≠ 0");
  return Steplength(detail::tls_root(pair.ss(), pair.yy(), pair.sy()));
}

/// bb3 expressed through bb1 and bb2 alone:
///   (α₂ − 1/α₁ + √((1/α₁ − α₂)² + 4)) / 2.
/// Inputs are expected to satisfy α₁ ≤ α₂ but this is not checked.
inline Steplength bb3_from_components(Steplength alpha_bb1, Steplength alpha_bb2) {
  const double a1 = alpha_bb1.value;
  const double a2 = alpha_bb2.value;
  if (!(a1 > 0.0) || !(a2 > 0.0))
    throw DomainError("bb3_from_components: both steplengths must be positive");
  return Steplength(detail::tls_root(a2, 1.0 / a1, 1.0));
}

/// q(α) = ‖αy − s‖² / (α² + 1).
inline double tls_objective(double alpha, const SecantPair &pair) {
  const double num = alpha * alpha * pair.yy() - 2.0 * alpha * pair.sy() + pair.ss();
  return std::max(0.0, num / (alpha * alpha + 1.0));
}

/// Data column a and observations b of the one-unknown system a·x ≈ b.
class ScalarLSInstance {
public:
  ScalarLSInstance(Vector a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.empty() || a_.size() != b_.size())
      throw DomainError("ScalarLSInstance: a and b must have equal nonzero dimension");
    aa_ = dot(a_, a_);
    bb_ = dot(b_, b_);
    ab_ = dot(a_, b_);
  }

  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }
  double aa() const noexcept { return aa_; }
  double bb() const noexcept { return bb_; }
  double ab() const noexcept { return ab_; }

private:
  Vector a_;
  Vector b_;
  double aa_ = 0.0;
  double bb_ = 0.0;
  double ab_ = 0.0;
};

/// argmin_x ‖ax − b‖² (noise in b only).
inline double scalar_ols(const ScalarLSInstance &inst) {
  if (inst.aa() == 0.0)
    throw DegenerateData("scalar_ols: a is the zero vector");
  return inst.ab() / inst.aa();
}

/// argmin_x ‖ax − b‖² / x² (noise in a only).
inline double scalar_dls(const ScalarLSInstance &inst) {
  if (inst.ab() == 0.0)
    throw DegenerateData("scalar_dls: aᵀb = 0 has no finite stationary point");
  return inst.bb() / inst.ab();
}

/// argmin_x ‖ax − b‖² / (x² + 1) (noise in both a and b).
inline double scalar_tls(const ScalarLSInstance &inst) {
  if (inst.ab() == 0.0)
    throw DegenerateData("scalar_tls: aᵀb = 0 has no finite stationary point");
  return detail::tls_root(inst.bb(), inst.aa(), inst.ab());
}

} // namespace bbstep
