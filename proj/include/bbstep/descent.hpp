#pragma once

// Gradient descent x_{k+1} = x_k − α_k·g_k with Barzilai–Borwein steplengths.
//
// Convention: the first update is a plain gradient step with `alpha0` (no
// secant pair exists yet) and counts as iteration 1. Every later steplength
// comes from the pair formed by the two most recent iterates. The stopping
// rule is checked once before any update and after every update.

#include <bbstep/errors.hpp>
#include <bbstep/problems.hpp>
#include <bbstep/steplength.hpp>
#include <bbstep/vector_ops.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bbstep {

enum class Method { bb1, bb2, bb3, fixed };

constexpr std::string_view to_string(Method m) {
  switch (m) {
  case Method::bb1: return "bb1";
  case Method::bb2: return "bb2";
  case Method::bb3: return "bb3";
  case Method::fixed: return "fixed";
  }
  return "?";
}

enum class StopKind { target_distance, gradient_norm };

struct StoppingRule {
  StopKind kind = StopKind::target_distance;
  double epsilon = 1e-8;
};

/// What to do with a steplength the raw formula cannot deliver.
struct Safeguard {
  enum class Kind { none, fallback_on_degenerate, clamp };

  Kind kind = Kind::none;
  double alpha_min = 0.0;
  double alpha_max = 0.0;

  static constexpr Safeguard none() { return {}; }
  static constexpr Safeguard fallback() { return {Kind::fallback_on_degenerate, 0.0, 0.0}; }
  static constexpr Safeguard clamp(double lo, double hi) { return {Kind::clamp, lo, hi}; }

  friend constexpr bool operator==(const Safeguard &, const Safeguard &) = default;
};

inline constexpr double kDefaultAlpha0 = 1e-3;
inline constexpr std::size_t kDefaultMaxIter = 5000;

struct SolverConfig {
  Method method = Method::bb3;
  double alpha0 = kDefaultAlpha0;
  std::size_t max_iter = kDefaultMaxIter;
  StoppingRule stopping;
  Safeguard safeguard;
};

inline void validate(const SolverConfig &config) {
  if (!(config.alpha0 > 0.0) || !std::isfinite(config.alpha0))
    throw DomainError("SolverConfig: alpha0 must be positive and finite");
  if (config.max_iter < 1)
    throw DomainError("SolverConfig: max_iter must be at least 1");
  if (!(config.stopping.epsilon > 0.0))
    throw DomainError("SolverConfig: stopping epsilon must be positive");
  const auto &sg = config.safeguard;
  if (sg.kind == Safeguard::Kind::clamp && !(0.0 < sg.alpha_min && sg.alpha_min < sg.alpha_max))
    throw DomainError("SolverConfig: clamp requires 0 < alpha_min < alpha_max");
}

struct IterationRecord {
  std::size_t k = 0;
  Vector x;
  double f_value = 0.0;
  double grad_norm = 0.0;
  std::optional<double> alpha; // steplength that produced x; empty for k = 0
};

enum class RunStatus { converged, max_iter, diverged, degenerate };

constexpr std::string_view to_string(RunStatus s) {
  switch (s) {
  case RunStatus::converged: return "converged";
  case RunStatus::max_iter: return "max-iter";
  case RunStatus::diverged: return "diverged";
  case RunStatus::degenerate: return "degenerate";
  }
  return "?";
}

struct RunResult {
  RunStatus status = RunStatus::max_iter;
  std::size_t iterations = 0;
  std::vector<IterationRecord> trace;
  Vector final_x;
};

/// Steplength for the next update from the latest secant pair.
///
/// Under Safeguard::none the raw value is returned as is, negative values
/// included; DegenerateStep is thrown only if the formula is undefined.
/// Under fallback, an undefined, nonpositive or non-finite value is replaced
/// by `prev_alpha`. Under clamp, the value (or `prev_alpha` if the formula is
/// undefined or non-finite) is projected onto [alpha_min, alpha_max].
inline Steplength propose_steplength(Method method, const SecantPair &pair,
                                     Steplength prev_alpha, const SolverConfig &config) {
  std::optional<double> raw;
  try {
    switch (method) {
    case Method::bb1: raw = bb1(pair).value; break;
    case Method::bb2: raw = bb2(pair).value; break;
    case Method::bb3: raw = bb3(pair).value; break;
    case Method::fixed: raw = config.alpha0; break;
    }
  } catch (const DegeneratePair &) {
    raw.reset();
  }

  const auto &sg = config.safeguard;
  switch (sg.kind) {
  case Safeguard::Kind::none:
    if (!raw)
      throw DegenerateStep("propose_steplength: steplength undefined for sᵀy = 0");
    return Steplength(*raw);
  case Safeguard::Kind::fallback_on_degenerate:
    if (!raw || !(*raw > 0.0) || !std::isfinite(*raw))
      return prev_alpha;
    return Steplength(*raw);
  case Safeguard::Kind::clamp: {
    const double v = (raw && std::isfinite(*raw)) ? *raw : prev_alpha.value;
    return Steplength(std::clamp(v, sg.alpha_min, sg.alpha_max));
  }
  }
  return prev_alpha;
}

inline Vector first_step(std::span<const double> x0, std::span<const double> g0, double alpha0) {
  if (!(alpha0 > 0.0))
    throw DomainError("first_step: alpha0 must be positive");
  return gradient_step(x0, g0, alpha0);
}

inline bool check_stop(std::span<const double> x, std::span<const double> g,
                       const StoppingRule &rule, const Problem &problem) {
  switch (rule.kind) {
  case StopKind::target_distance:
    if (!problem.minimizer)
      throw MissingMinimizer("check_stop: target-distance stopping needs a known minimizer");
    return distance(x, *problem.minimizer) <= rule.epsilon;
  case StopKind::gradient_norm:
    return norm(g) <= rule.epsilon;
  }
  return false;
}

/// Runs the iteration from `x0`. All outcomes are reported through
/// RunResult::status; only an invalid configuration throws.
inline RunResult run(const Problem &problem, const SolverConfig &config, Vector x0) {
  validate(config);
  if (x0.size() != problem.dim)
    throw DomainError("run: start point has the wrong dimension");
  if (config.stopping.kind == StopKind::target_distance && !problem.minimizer)
    throw MissingMinimizer("run: target-distance stopping needs a known minimizer");

  RunResult result;
  auto finish = [&](RunStatus status, std::size_t iterations, Vector x) {
    result.status = status;
    result.iterations = iterations;
    result.final_x = std::move(x);
    return std::move(result);
  };
  auto finite_state = [](std::span<const double> x, double f, std::span<const double> g) {
    return all_finite(x) && std::isfinite(f) && all_finite(g);
  };

  Vector x = std::move(x0);
  double f = problem.f(x);
  Vector g = problem.grad(x);
  result.trace.push_back({0, x, f, norm(g), std::nullopt});
  if (!finite_state(x, f, g))
    return finish(RunStatus::diverged, 0, std::move(x));
  if (check_stop(x, g, config.stopping, problem))
    return finish(RunStatus::converged, 0, std::move(x));

  Steplength alpha(config.alpha0);
  Vector x_next = first_step(x, g, alpha.value);
  std::size_t iterations = 1;

  for (;;) {
    const double f_next = problem.f(x_next);
    Vector g_next = problem.grad(x_next);
    result.trace.push_back({iterations, x_next, f_next, norm(g_next), alpha.value});

    if (!finite_state(x_next, f_next, g_next))
      return finish(RunStatus::diverged, iterations, std::move(x_next));
    if (check_stop(x_next, g_next, config.stopping, problem))
      return finish(RunStatus::converged, iterations, std::move(x_next));
    if (iterations >= config.max_iter)
      return finish(RunStatus::max_iter, iterations, std::move(x_next));

    const SecantPair pair(difference(x_next, x), difference(g_next, g));
    try {
      alpha = propose_steplength(config.method, pair, alpha, config);
    } catch (const DegenerateStep &) {
      return finish(RunStatus::degenerate, iterations, std::move(x_next));
    }

    x = std::move(x_next);
    g = std::move(g_next);
    x_next = gradient_step(x, g, alpha.value);
    ++iterations;
  }
}

/// Runs from the problem's canonical start point.
inline RunResult run(const Problem &problem, const SolverConfig &config) {
  if (!problem.start)
    throw DomainError("run: problem has no canonical start point");
  return run(problem, config, *problem.start);
}

} // namespace bbstep
