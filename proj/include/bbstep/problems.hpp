#pragma once

#include <bbstep/errors.hpp>
#include <bbstep/vector_ops.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace bbstep {

/// Smooth objective with analytic gradient. Evaluators must be deterministic
/// and reentrant.
struct Problem {
  std::string name;
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> f;
  std::function<Vector(std::span<const double>)> grad;
  std::optional<Vector> minimizer;
  std::optional<Vector> start;
};

/// f(x) = 100(x₂ − x₁²)² + (1 − x₁)², minimized at (1, 1), started at (−1.2, 1).
inline Problem rosenbrock() {
  Problem p;
  p.name = "rosenbrock";
  p.dim = 2;
  p.f = [](std::span<const double> x) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
  };
  p.grad = [](std::span<const double> x) {
    const double a = x[1] - x[0] * x[0];
    return Vector{-400.0 * x[0] * a - 2.0 * (1.0 - x[0]), 200.0 * a};
  };
  p.minimizer = Vector{1.0, 1.0};
  p.start = Vector{-1.2, 1.0};
  return p;
}

/// ½xᵀ diag(d) x − bᵀx.
struct QuadraticSpec {
  Vector diag;
  Vector b;
};

inline Problem quadratic(const QuadraticSpec &spec) {
  if (spec.diag.empty() || spec.diag.size() != spec.b.size())
    throw InvalidSpec("quadratic: diag and b must have equal nonzero dimension");
  for (double d : spec.diag)
    if (!(d > 0.0))
      throw InvalidSpec("quadratic: diagonal entries must be positive");

  Problem p;
  p.name = "quadratic";
  p.dim = spec.diag.size();
  p.f = [d = spec.diag, b = spec.b](std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      acc += 0.5 * d[i] * x[i] * x[i] - b[i] * x[i];
    return acc;
  };
  p.grad = [d = spec.diag, b = spec.b](std::span<const double> x) {
    Vector g(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      g[i] = d[i] * x[i] - b[i];
    return g;
  };
  Vector xstar(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i)
    xstar[i] = spec.b[i] / spec.diag[i];
  p.minimizer = std::move(xstar);
  p.start = Vector(p.dim, 1.0);
  return p;
}

inline constexpr double kDefaultFiniteDiffStep = 1e-5;

/// Central differences (f(x + h·eᵢ) − f(x − h·eᵢ)) / 2h.
inline Vector finite_diff_grad(const Problem &problem, std::span<const double> x,
                               double h = kDefaultFiniteDiffStep) {
  if (!(h > 0.0))
    throw DomainError("finite_diff_grad: h must be positive");
  Vector probe(x.begin(), x.end());
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = problem.f(probe);
    probe[i] = x[i] - h;
    const double fm = problem.f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

} // namespace bbstep
