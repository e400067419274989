#include <bbstep/descent.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace bbstep;

namespace {

SolverConfig config(Method m, double alpha0, StopKind kind, double eps,
                    std::size_t max_iter = kDefaultMaxIter) {
  SolverConfig c;
  c.method = m;
  c.alpha0 = alpha0;
  c.stopping = {kind, eps};
  c.max_iter = max_iter;
  return c;
}

Problem linear() {
  Problem p;
  p.name = "linear";
  p.dim = 2;
  p.f = [](std::span<const double> x) { return x[0] + 2 * x[1]; };
  p.grad = [](std::span<const double>) { return Vector{1.0, 2.0}; };
  p.start = Vector{0.0, 0.0};
  return p;
}

} // namespace

TEST(ProposeSteplength, Examples) {
  const SolverConfig c;
  EXPECT_EQ(propose_steplength(Method::bb1, SecantPair({1, 1}, {1, 1}), Steplength(0.3), c).value,
            1.0);
  EXPECT_NEAR(
      propose_steplength(Method::bb3, SecantPair({1, 0}, {1, 1}), Steplength(0.3), c).value,
      0.6180339887, 1e-10);

  SolverConfig fb;
  fb.safeguard = Safeguard::fallback();
  EXPECT_EQ(propose_steplength(Method::bb2, SecantPair({1, 0}, {0, 1}), Steplength(0.01), fb).value,
            0.01);
}

TEST(ProposeSteplength, RawModeKeepsNegativeAndRejectsUndefined) {
  const SolverConfig c;
  const SecantPair negative({1, 0}, {-2, 0});
  EXPECT_EQ(propose_steplength(Method::bb1, negative, Steplength(1.0), c).value, -0.5);
  EXPECT_THROW(propose_steplength(Method::bb3, SecantPair({1, 0}, {0, 1}), Steplength(1.0), c),
               DegenerateStep);
}

TEST(ProposeSteplength, FallbackReplacesNonpositive) {
  SolverConfig c;
  c.safeguard = Safeguard::fallback();
  const SecantPair negative({1, 0}, {-2, 0});
  for (Method m : {Method::bb1, Method::bb2, Method::bb3})
    EXPECT_EQ(propose_steplength(m, negative, Steplength(0.25), c).value, 0.25);
  EXPECT_EQ(propose_steplength(Method::bb2, SecantPair({2, 0}, {1, 0}), Steplength(0.25), c).value,
            2.0);
}

TEST(ProposeSteplength, ClampProjects) {
  SolverConfig c;
  c.safeguard = Safeguard::clamp(1e-3, 1.0);
  EXPECT_EQ(propose_steplength(Method::bb2, SecantPair({4, 0}, {1, 0}), Steplength(0.5), c).value,
            1.0);
  EXPECT_EQ(propose_steplength(Method::bb1, SecantPair({1, 0}, {-2, 0}), Steplength(0.5), c).value,
            1e-3);
  EXPECT_EQ(propose_steplength(Method::bb1, SecantPair({1, 0}, {0, 1}), Steplength(0.5), c).value,
            0.5);
  EXPECT_EQ(propose_steplength(Method::bb1, SecantPair({1, 0}, {0, 1}), Steplength(5.0), c).value,
            1.0);
}

TEST(ProposeSteplength, FixedReturnsAlpha0) {
  SolverConfig c;
  c.alpha0 = 0.125;
  EXPECT_EQ(propose_steplength(Method::fixed, SecantPair({1, 0}, {0, 1}), Steplength(9.0), c).value,
            0.125);
}

TEST(FirstStep, Examples) {
  EXPECT_EQ(first_step(Vector{0, 0}, Vector{1, 1}, 1.0), (Vector{-1, -1}));
  const auto x = first_step(Vector{-1.2, 1.0}, Vector{-215.6, -88.0}, 1e-3);
  EXPECT_NEAR(x[0], -0.9844, 1e-14);
  EXPECT_NEAR(x[1], 1.088, 1e-14);
  EXPECT_THROW(first_step(Vector{0, 0}, Vector{1, 1}, 0.0), DomainError);
}

TEST(CheckStop, Examples) {
  const auto r = rosenbrock();
  const StoppingRule tight{StopKind::target_distance, 0.01};
  const StoppingRule loose{StopKind::target_distance, 0.1};
  EXPECT_TRUE(check_stop(Vector{1, 1}, Vector{0, 0}, tight, r));
  EXPECT_TRUE(check_stop(Vector{1.05, 1}, Vector{9, 9}, loose, r));
  EXPECT_FALSE(check_stop(Vector{1.05, 1}, Vector{9, 9}, tight, r));
  EXPECT_TRUE(check_stop(Vector{7, 7}, Vector{3, 4}, {StopKind::gradient_norm, 5.0}, r));
  EXPECT_FALSE(check_stop(Vector{7, 7}, Vector{3, 4}, {StopKind::gradient_norm, 4.9}, r));
  EXPECT_THROW(check_stop(Vector{0, 0}, Vector{1, 2}, tight, linear()), MissingMinimizer);
}

TEST(Validate, RejectsBadConfig) {
  const auto q = quadratic({{1, 1}, {0, 0}});
  auto c = config(Method::bb1, 0.0, StopKind::gradient_norm, 1e-8);
  EXPECT_THROW(run(q, c), DomainError);
  c.alpha0 = 1e-3;
  c.max_iter = 0;
  EXPECT_THROW(run(q, c), DomainError);
  c.max_iter = 10;
  c.safeguard = Safeguard::clamp(1.0, 0.5);
  EXPECT_THROW(run(q, c), DomainError);
  c.safeguard = Safeguard::none();
  c.stopping.epsilon = 0.0;
  EXPECT_THROW(run(q, c), DomainError);
  EXPECT_THROW(run(linear(), config(Method::bb1, 1e-3, StopKind::target_distance, 1e-3)),
               MissingMinimizer);
}

TEST(Run, HandSimulatedIsotropicQuadratic) {
  const auto q = quadratic({{1, 1}, {0, 0}});
  const auto r = run(q, config(Method::bb1, 0.5, StopKind::gradient_norm, 1e-12), Vector{1, 1});
  EXPECT_EQ(r.status, RunStatus::converged);
  EXPECT_EQ(r.iterations, 2u);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[1].x, (Vector{0.5, 0.5}));
  EXPECT_EQ(*r.trace[1].alpha, 0.5);
  EXPECT_EQ(*r.trace[2].alpha, 1.0);
  EXPECT_EQ(r.final_x, (Vector{0.0, 0.0}));
}

TEST(Run, MaxIterCap) {
  const auto r = run(rosenbrock(), config(Method::bb3, 1e-3, StopKind::target_distance, 1e-8, 1));
  EXPECT_EQ(r.status, RunStatus::max_iter);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST(Run, StartAtMinimizer) {
  const auto r =
      run(rosenbrock(), config(Method::bb1, 1e-3, StopKind::target_distance, 1e-8), Vector{1, 1});
  EXPECT_EQ(r.status, RunStatus::converged);
  EXPECT_EQ(r.iterations, 0u);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_FALSE(r.trace[0].alpha);
}

TEST(Run, OverflowIsDiverged) {
  const auto q = quadratic({{1, 10}, {0, 0}});
  const auto r = run(q, config(Method::fixed, 10.0, StopKind::gradient_norm, 1e-8));
  EXPECT_EQ(r.status, RunStatus::diverged);
  EXPECT_LT(r.iterations, kDefaultMaxIter);
}

TEST(Run, ZeroCurvatureIsDegenerate) {
  const auto r = run(linear(), config(Method::bb2, 1e-3, StopKind::gradient_norm, 1e-8));
  EXPECT_EQ(r.status, RunStatus::degenerate);
  EXPECT_EQ(r.iterations, 1u);

  auto c = config(Method::bb2, 1e-3, StopKind::gradient_norm, 1e-8, 50);
  c.safeguard = Safeguard::fallback();
  const auto fb = run(linear(), c);
  EXPECT_EQ(fb.status, RunStatus::max_iter);
  EXPECT_EQ(fb.iterations, 50u);
  for (std::size_t k = 1; k < fb.trace.size(); ++k)
    EXPECT_EQ(*fb.trace[k].alpha, 1e-3);
}

TEST(Run, TraceReplaysExactly) {
  const auto p = rosenbrock();
  for (Method m : {Method::bb1, Method::bb2, Method::bb3}) {
    const auto r = run(p, config(m, 1e-3, StopKind::target_distance, 1e-8, 400));
    ASSERT_EQ(r.trace.size(), r.iterations + 1);
    for (std::size_t k = 0; k + 1 < r.trace.size(); ++k) {
      const auto &cur = r.trace[k];
      const auto &next = r.trace[k + 1];
      ASSERT_EQ(next.k, cur.k + 1);
      ASSERT_EQ(next.x, gradient_step(cur.x, p.grad(cur.x), *next.alpha)) << to_string(m) << k;
      ASSERT_EQ(next.f_value, p.f(next.x));
    }
    EXPECT_EQ(r.final_x, r.trace.back().x);
  }
}

TEST(Run, RecordedSteplengthsFollowSandwich) {
  const auto p = rosenbrock();
  const auto r = run(p, config(Method::bb3, 1e-3, StopKind::target_distance, 1e-8));
  ASSERT_EQ(r.status, RunStatus::converged);
  for (std::size_t k = 1; k + 1 < r.trace.size(); ++k) {
    const auto &a = r.trace[k - 1];
    const auto &b = r.trace[k];
    const SecantPair pair(difference(b.x, a.x), difference(p.grad(b.x), p.grad(a.x)));
    const double used = *r.trace[k + 1].alpha;
    EXPECT_EQ(used, bb3(pair).value);
    if (pair.sy() > 0) {
      EXPECT_LE(bb1(pair).value, used * (1 + 1e-12));
      EXPECT_LE(used, bb2(pair).value * (1 + 1e-12));
    }
  }

  // All methods share the same first secant pair.
  double second[3];
  int i = 0;
  for (Method m : {Method::bb1, Method::bb3, Method::bb2}) {
    const auto rr = run(p, config(m, 1e-3, StopKind::target_distance, 1e-8, 3));
    second[i++] = *rr.trace[2].alpha;
  }
  EXPECT_LE(second[0], second[1]);
  EXPECT_LE(second[1], second[2]);
}

TEST(Run, Deterministic) {
  const auto p = rosenbrock();
  const auto c = config(Method::bb3, 1e-2, StopKind::target_distance, 1e-8);
  const auto a = run(p, c), b = run(p, c);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].x, b.trace[k].x);
    EXPECT_EQ(a.trace[k].alpha, b.trace[k].alpha);
  }
  EXPECT_EQ(a.status, b.status);
}

TEST(Run, SpdQuadraticConvergesForAllMethods) {
  const auto q = quadratic({{1, 10}, {0, 0}});
  for (Method m : {Method::bb1, Method::bb2, Method::bb3}) {
    const auto r = run(q, config(m, 0.1, StopKind::gradient_norm, 1e-8), Vector{1, 1});
    EXPECT_EQ(r.status, RunStatus::converged) << to_string(m);
    EXPECT_LE(r.iterations, 100u) << to_string(m);
  }
}
