#include <gtest/gtest.h>

#include <cmath>

#include "fgm/harness/datasets.hpp"
#include "fgm/optim.hpp"
#include "oracles.hpp"

using fgm::Agent;
using fgm::Bounds;
using fgm::FracOrder;
using fgm::GreyParams;
using fgm::SwarmConfig;
using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const fgm::Objective sphere = [](const VectorXd& x) { return x.squaredNorm(); };

Bounds box5() { return Bounds(VectorXd::Constant(2, -5.0), VectorXd::Constant(2, 5.0)); }

const fgm::Series& wuhan() { return fgm::harness::wuhan().series; }
const fgm::Series& zhejiang() { return fgm::harness::zhejiang().series; }

fgm::Series series_of(const std::vector<double>& v)
{
    return fgm::Series(Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

Agent agent_at(double a, double b, double fitness = kInf)
{
    return Agent{Eigen::Vector2d(a, b), Eigen::Vector2d::Zero(), fgm::Mode::Seeking, fitness};
}

} // namespace

TEST(Bounds, Validation)
{
    EXPECT_THROW(Bounds(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)), fgm::PreconditionError);
    EXPECT_THROW(Bounds(VectorXd(0), VectorXd(0)), fgm::PreconditionError);
    EXPECT_THROW(Bounds(Eigen::Vector2d(0, 0), Eigen::Vector3d(1, 1, 1)), fgm::PreconditionError);
    EXPECT_THROW(Bounds(Eigen::Vector2d(0, -INFINITY), Eigen::Vector2d(1, 1)), fgm::PreconditionError);
    const Bounds b = box5();
    EXPECT_EQ(b.clamp(Eigen::Vector2d(7, -9)), Eigen::Vector2d(5, -5));
    EXPECT_TRUE(b.contains(Eigen::Vector2d(5, -5)));
    EXPECT_FALSE(b.contains(Eigen::Vector2d(5.01, 0)));
}

TEST(DefaultGreyBounds, ContainPublishedOptimum)
{
    const Bounds b = fgm::default_grey_bounds(wuhan());
    EXPECT_TRUE(b.contains(Eigen::Vector2d(0.015, 212927)));
    EXPECT_EQ(b.lower()(0), -1.0);
    EXPECT_EQ(b.upper()(1), 2.0 * 1061400.0);
}

TEST(Objective, Examples)
{
    const GreyParams p{FracOrder(0.4), 0.07, 300.0};
    const auto x = oracle::generate_time_response(0.4, p.a, p.b, 1000.0, 7);
    const auto f = fgm::make_objective(series_of(x), p.order);
    EXPECT_LT(f(Eigen::Vector2d(p.a, p.b)), 1e-9);
    EXPECT_EQ(f(Eigen::Vector2d(0.0, 300.0)), kInf);

    const auto fw = fgm::make_objective(wuhan(), FracOrder(0.25));
    const GreyParams lsm = fgm::lsm_fit(wuhan(), FracOrder(0.25));
    EXPECT_NEAR(fw(Eigen::Vector2d(lsm.a, lsm.b)), 1.57, 0.3);
}

TEST(Objective, OutOfBoundsIsInfinite)
{
    const auto f = fgm::make_objective(wuhan(), FracOrder(0.25), fgm::default_grey_bounds(wuhan()));
    EXPECT_EQ(f(Eigen::Vector2d(1.5, 1000.0)), kInf);
    EXPECT_TRUE(std::isfinite(f(Eigen::Vector2d(0.02, 2e5))));
    // Overflowing exponentials are folded into +inf rather than thrown.
    const auto g = fgm::make_objective(wuhan(), FracOrder(0.25));
    EXPECT_EQ(g(Eigen::Vector2d(-900.0, 1.0)), kInf);
}

TEST(SeekingProbabilities, Examples)
{
    const std::vector<double> f{5, 3, 9};
    const VectorXd p = fgm::seeking_probabilities(f);
    EXPECT_NEAR(p(0), 4.0 / 6.0, 1e-15);
    EXPECT_EQ(p(1), 1.0);
    EXPECT_EQ(p(2), 0.0);

    const VectorXd u = fgm::seeking_probabilities(std::vector<double>{2, 2, 2, 2});
    EXPECT_TRUE(u.isApprox(VectorXd::Constant(4, 0.25)));

    const VectorXd w = fgm::seeking_probabilities(std::vector<double>{4, kInf, 1});
    EXPECT_EQ(w(1), 0.0);
    EXPECT_EQ(w(2), 1.0);
    EXPECT_EQ(w(0), 0.0);

    const VectorXd all_inf = fgm::seeking_probabilities(std::vector<double>{kInf, kInf});
    EXPECT_EQ(all_inf(0), all_inf(1));
}

TEST(SeekingProbabilities, PropertyValidRange)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-10, 10);
    std::bernoulli_distribution degenerate(0.1);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> f(static_cast<std::size_t>(2 + trial % 30));
        for (auto& v : f) v = degenerate(rng) ? kInf : u(rng);
        const VectorXd p = fgm::seeking_probabilities(f);
        EXPECT_TRUE((p.array() >= 0.0).all() && (p.array() <= 1.0).all());
        double lo = kInf;
        double hi = -kInf;
        for (double v : f) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (std::isfinite(lo) && lo < hi) {
            for (std::size_t j = 0; j < f.size(); ++j) {
                if (f[j] == lo) EXPECT_EQ(p(static_cast<Eigen::Index>(j)), 1.0);
            }
        }
    }
}

TEST(SeekingStep, MovesToLowestFitnessCandidate)
{
    SwarmConfig cfg;
    cfg.smp = 3;
    cfg.spc = false;
    int calls = 0;
    const double scripted[] = {5, 3, 9};
    std::vector<VectorXd> seen;
    const fgm::Objective f = [&](const VectorXd& x) {
        seen.push_back(x);
        return scripted[calls++];
    };
    fgm::Rng rng(1);
    const Agent next = fgm::seeking_step(agent_at(1.0, 1.0), cfg, box5(), f, rng);
    EXPECT_EQ(calls, 3);
    EXPECT_EQ(next.fitness, 3.0);
    EXPECT_EQ(next.position, seen[1]);
}

TEST(SeekingStep, MutatesByRelativeRange)
{
    SwarmConfig cfg;
    cfg.spc = false;
    std::vector<VectorXd> seen;
    const fgm::Objective f = [&](const VectorXd& x) {
        seen.push_back(x);
        return 1.0;
    };
    fgm::Rng rng(4);
    (void)fgm::seeking_step(agent_at(2.0, -1.0), cfg, box5(), f, rng);
    ASSERT_EQ(seen.size(), 30u);
    for (const auto& x : seen) {
        EXPECT_NEAR(std::abs(x(0) - 2.0), 0.4, 1e-15);
        EXPECT_NEAR(std::abs(x(1) + 1.0), 0.2, 1e-15);
    }
}

TEST(SeekingStep, SingleDimensionChangeAndZeroAxis)
{
    SwarmConfig cfg;
    cfg.cdc = 1;
    cfg.spc = false;
    std::vector<VectorXd> seen;
    const fgm::Objective f = [&](const VectorXd& x) {
        seen.push_back(x);
        return x.squaredNorm();
    };
    fgm::Rng rng(8);
    (void)fgm::seeking_step(agent_at(0.0, 1.0), cfg, box5(), f, rng);
    for (const auto& x : seen) {
        const int changed = (x(0) != 0.0) + (x(1) != 1.0);
        EXPECT_EQ(changed, 1);
        if (x(0) != 0.0) {
            EXPECT_NEAR(std::abs(x(0)), 0.2 * 10.0 * 1e-3, 1e-15);
        }
    }
}

TEST(SeekingStep, ZeroRangeKeepsPosition)
{
    SwarmConfig cfg;
    cfg.srd = 0.0;
    cfg.spc = true;
    fgm::Rng rng(3);
    const Agent a = agent_at(1.5, -2.0, sphere(Eigen::Vector2d(1.5, -2.0)));
    const Agent next = fgm::seeking_step(a, cfg, box5(), sphere, rng);
    EXPECT_EQ(next.position, a.position);
    EXPECT_EQ(next.fitness, a.fitness);
}

TEST(SeekingStep, SpcEvaluatesOneFewerCandidate)
{
    SwarmConfig cfg;
    int calls = 0;
    const fgm::Objective f = [&](const VectorXd& x) {
        ++calls;
        return x.squaredNorm();
    };
    fgm::Rng rng(2);
    (void)fgm::seeking_step(agent_at(1, 1, 2.0), cfg, box5(), f, rng);
    EXPECT_EQ(calls, cfg.smp - 1);
}

TEST(AdaptiveCoefficients, TwoDimensions)
{
    EXPECT_DOUBLE_EQ(fgm::adaptive_inertia(0.6, 1, 2), 0.85);
    EXPECT_DOUBLE_EQ(fgm::adaptive_inertia(0.6, 2, 2), 0.6);
    EXPECT_DOUBLE_EQ(fgm::adaptive_acceleration(1.05, 1, 2), 0.8);
    EXPECT_DOUBLE_EQ(fgm::adaptive_acceleration(1.05, 2, 2), 1.05);
}

TEST(TracingStep, FixedPointAtGlobalBest)
{
    SwarmConfig cfg;
    fgm::Rng rng(1);
    const Agent a = agent_at(0.3, -0.7);
    const Agent next = fgm::tracing_step(a, a.position, cfg, box5(), rng);
    EXPECT_EQ(next.position, a.position);
    EXPECT_EQ(next.velocity, a.velocity);
}

TEST(TracingStep, VelocityClampedExactly)
{
    SwarmConfig cfg;
    cfg.v_frac = 0.1;  // v_max = 1 on a width-10 box
    Agent a = agent_at(-4.0, -4.0);
    a.velocity = Eigen::Vector2d(50.0, -50.0);
    fgm::Rng rng(6);
    const Agent next = fgm::tracing_step(a, Eigen::Vector2d(4.0, -4.0), cfg, box5(), rng);
    EXPECT_EQ(next.velocity(0), 1.0);
    EXPECT_EQ(next.velocity(1), -1.0);
    EXPECT_EQ(next.position, Eigen::Vector2d(-3.0, -5.0));
}

TEST(TracingStep, UpdateFollowsAdaptiveFormula)
{
    SwarmConfig cfg;
    cfg.v_frac = 10.0;
    Agent a = agent_at(1.0, 2.0);
    a.velocity = Eigen::Vector2d(0.1, -0.2);
    const Eigen::Vector2d best(-1.0, 0.5);
    fgm::Rng rng(12);
    fgm::Rng replay(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r1 = u(replay);
    const double r2 = u(replay);
    const Agent next = fgm::tracing_step(a, best, cfg, box5(), rng);
    EXPECT_DOUBLE_EQ(next.velocity(0), 0.85 * 0.1 + r1 * 0.8 * (-2.0));
    EXPECT_DOUBLE_EQ(next.velocity(1), 0.6 * -0.2 + r2 * 1.05 * (-1.5));
}

TEST(SwarmConfig, DefaultsAndValidation)
{
    const SwarmConfig c;
    EXPECT_EQ(c.n_agents, 40);
    EXPECT_EQ(c.smp, 30);
    EXPECT_EQ(c.srd, 0.2);
    EXPECT_EQ(c.mr, 0.2);
    EXPECT_EQ(c.c0, 1.05);
    EXPECT_EQ(c.w0, 0.6);
    EXPECT_EQ(c.iter_max, 300);
    const fgm::PsoConfig p;
    EXPECT_EQ(p.n_particles, 40);
    EXPECT_EQ(p.c1, 1.5);
    EXPECT_EQ(p.c2, 1.5);
    EXPECT_EQ(p.w, 0.7);
    EXPECT_EQ(p.iter_max, 300);

    SwarmConfig bad = c;
    bad.cdc = 3;
    EXPECT_THROW(fgm::adcso_minimize(sphere, box5(), bad), fgm::PreconditionError);
    bad = c;
    bad.mr = 1.0;
    EXPECT_THROW(fgm::adcso_minimize(sphere, box5(), bad), fgm::PreconditionError);
    fgm::PsoConfig pbad;
    pbad.iter_max = 0;
    EXPECT_THROW(fgm::pso_minimize(sphere, box5(), pbad), fgm::PreconditionError);
}

TEST(Adcso, SphereEverySeed)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SwarmConfig cfg;
        cfg.seed = seed;
        const auto trace = fgm::adcso_minimize(sphere, box5(), cfg);
        EXPECT_LT(trace.best_fitness, 1e-3) << "seed " << seed;
        EXPECT_EQ(trace.best_fitness_per_iter.size(), 300u);
    }
}

TEST(Adcso, DeterministicForFixedSeed)
{
    SwarmConfig cfg;
    cfg.seed = 77;
    cfg.iter_max = 60;
    const auto f = fgm::make_objective(zhejiang(), FracOrder(0.5), fgm::default_grey_bounds(zhejiang()));
    const auto t1 = fgm::adcso_minimize(f, fgm::default_grey_bounds(zhejiang()), cfg);
    const auto t2 = fgm::adcso_minimize(f, fgm::default_grey_bounds(zhejiang()), cfg);
    EXPECT_EQ(t1.best_fitness_per_iter, t2.best_fitness_per_iter);
    EXPECT_EQ(t1.best_position, t2.best_position);
    EXPECT_EQ(t1.evaluations, t2.evaluations);
}

TEST(Adcso, ContainmentAndMonotoneTrace)
{
    SwarmConfig cfg;
    cfg.iter_max = 80;
    const Bounds bounds = fgm::default_grey_bounds(wuhan());
    const VectorXd v_max = cfg.v_frac * bounds.width();
    const auto f = fgm::make_objective(wuhan(), FracOrder(0.25), bounds);
    int tracing_seen = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        cfg.seed = seed;
        const auto trace = fgm::adcso_minimize(f, bounds, cfg, [&](int, std::span<const Agent> cats) {
            int tracing = 0;
            for (const Agent& c : cats) {
                ASSERT_TRUE(bounds.contains(c.position));
                ASSERT_TRUE((c.velocity.cwiseAbs().array() <= v_max.array()).all());
                tracing += c.mode == fgm::Mode::Tracing;
            }
            ASSERT_EQ(tracing, 8);  // mr = 0.2 of 40
            ++tracing_seen;
        });
        for (std::size_t i = 1; i < trace.best_fitness_per_iter.size(); ++i) {
            ASSERT_LE(trace.best_fitness_per_iter[i], trace.best_fitness_per_iter[i - 1]);
        }
    }
    EXPECT_EQ(tracing_seen, 240);
}

TEST(Adcso, BeatsRandomSearchAtEqualBudget)
{
    double adcso_sum = 0.0;
    double random_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SwarmConfig cfg;
        cfg.seed = seed;
        const auto trace = fgm::adcso_minimize(sphere, box5(), cfg);
        adcso_sum += trace.best_fitness;
        random_sum += oracle::random_search_sphere(seed, trace.evaluations, 2, 5.0);
    }
    EXPECT_LT(adcso_sum / 10, random_sum / 10);
}

TEST(Pso, SphereAndDeterminism)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        fgm::PsoConfig cfg;
        cfg.seed = seed;
        const auto t1 = fgm::pso_minimize(sphere, box5(), cfg);
        EXPECT_LT(t1.best_fitness, 1e-2);
        for (std::size_t i = 1; i < t1.best_fitness_per_iter.size(); ++i) {
            ASSERT_LE(t1.best_fitness_per_iter[i], t1.best_fitness_per_iter[i - 1]);
        }
        const auto t2 = fgm::pso_minimize(sphere, box5(), cfg);
        EXPECT_EQ(t1.best_fitness_per_iter, t2.best_fitness_per_iter);
        EXPECT_EQ(t1.best_position, t2.best_position);
    }
}

TEST(Pso, Containment)
{
    fgm::PsoConfig cfg;
    cfg.iter_max = 50;
    const Bounds b = box5();
    const auto trace = fgm::pso_minimize(sphere, b, cfg, [&](int, std::span<const Agent> swarm) {
        for (const Agent& p : swarm) {
            ASSERT_TRUE(b.contains(p.position));
            ASSERT_TRUE((p.velocity.cwiseAbs().array() <= 2.0).all());
        }
    });
    EXPECT_EQ(trace.evaluations, 40u * 51u);
}

TEST(RepeatStats, SingleRun)
{
    SwarmConfig cfg;
    cfg.iter_max = 30;
    const auto s = fgm::repeat_stats(sphere, box5(), cfg, 1);
    EXPECT_EQ(s.mean, s.min);
    EXPECT_EQ(s.max, s.min);
    EXPECT_EQ(s.stddev, 0.0);
    EXPECT_THROW(fgm::repeat_stats(sphere, box5(), cfg, 0), fgm::PreconditionError);
}

TEST(RepeatStats, SeedsAreConsecutive)
{
    SwarmConfig cfg;
    cfg.iter_max = 20;
    cfg.seed = 40;
    const auto s = fgm::repeat_stats(sphere, box5(), cfg, 3);
    ASSERT_EQ(s.runs.size(), 3u);
    for (std::uint64_t k = 0; k < 3; ++k) {
        SwarmConfig c = cfg;
        c.seed = 40 + k;
        EXPECT_EQ(s.runs[k].best_fitness_per_iter, fgm::adcso_minimize(sphere, box5(), c).best_fitness_per_iter);
    }
    const double m = (s.runs[0].best_fitness + s.runs[1].best_fitness + s.runs[2].best_fitness) / 3;
    EXPECT_NEAR(s.mean, m, 1e-18);
}

TEST(RepeatStats, PublishedAdcsoCells)
{
    fgm::Estimator est;
    EXPECT_NEAR(fgm::estimate(wuhan(), FracOrder(0.75), est, 10).stats.mean, 1.36, 0.3);
    EXPECT_NEAR(fgm::estimate(zhejiang(), FracOrder(0.25), est, 10).stats.mean, 1.485, 0.3);
}

TEST(Estimate, FirstFittedPointIsObservationForEveryEstimator)
{
    for (auto kind : {fgm::EstimatorKind::Lsm, fgm::EstimatorKind::Pso, fgm::EstimatorKind::Adcso}) {
        fgm::Estimator est;
        est.kind = kind;
        est.swarm.iter_max = 20;
        est.pso.iter_max = 20;
        const auto e = fgm::estimate(zhejiang(), FracOrder(0.3), est, 2);
        EXPECT_EQ(fgm::fit_series(zhejiang(), e.params).fitted(0), zhejiang().first());
        if (kind == fgm::EstimatorKind::Lsm) {
            EXPECT_EQ(e.stats.stddev, 0.0);
            EXPECT_EQ(e.stats.runs.size(), 1u);
        }
    }
}

TEST(OrderGrid, StepsAndErrors)
{
    const auto g = fgm::order_grid(0.01);
    ASSERT_EQ(g.size(), 100u);
    EXPECT_EQ(g.front(), 0.01);
    EXPECT_EQ(g[49], 0.5);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(fgm::order_grid(0.25).size(), 4u);
    EXPECT_THROW(fgm::order_grid(0.0), fgm::PreconditionError);
    EXPECT_THROW(fgm::order_grid(0.6), fgm::PreconditionError);
}

TEST(OrderSearch, LsmRecoversGeneratingOrder)
{
    for (double r : {0.25, 0.5, 0.75}) {
        const auto x = oracle::generate_discrete(r, 0.05, 150.0, 1000.0, 7);
        fgm::Estimator est;
        est.kind = fgm::EstimatorKind::Lsm;
        const auto res = fgm::order_search(series_of(x), 0.01, est, 1);
        EXPECT_EQ(res.order.value(), r);
        EXPECT_NEAR(res.params.a, 0.05, 1e-6);
        EXPECT_EQ(res.grid.size(), 100u);
        EXPECT_EQ(res.mean_fitness.size(), 100u);
    }
}
