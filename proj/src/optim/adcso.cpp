#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fgm/optim.hpp"

namespace fgm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

Bounds::Bounds(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.size() == 0 || lower_.size() != upper_.size()) {
        throw PreconditionError("bounds: lower and upper must be non-empty and equal length");
    }
    if (!lower_.allFinite() || !upper_.allFinite()) {
        throw PreconditionError("bounds must be finite");
    }
    if ((lower_.array() >= upper_.array()).any()) {
        throw PreconditionError("bounds: lower must be strictly below upper");
    }
}

bool Bounds::contains(const Eigen::VectorXd& x) const
{
    return x.size() == dim() && (x.array() >= lower_.array()).all() &&
           (x.array() <= upper_.array()).all();
}

Eigen::VectorXd Bounds::clamp(const Eigen::VectorXd& x) const
{
    return x.cwiseMax(lower_).cwiseMin(upper_);
}

Eigen::VectorXd Bounds::sample(Rng& rng) const
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd x(dim());
    for (Eigen::Index d = 0; d < dim(); ++d) {
        x(d) = lower_(d) + u(rng) * (upper_(d) - lower_(d));
    }
    return x;
}

Bounds default_grey_bounds(const Series& series)
{
    const double m = series.max();
    return Bounds(Eigen::Vector2d(-1.0, -2.0 * m), Eigen::Vector2d(1.0, 2.0 * m));
}

Objective make_objective(const Series& series, FracOrder order, std::optional<Bounds> bounds)
{
    return [eval = MapeEvaluator(series, order), bounds = std::move(bounds)](
               const Eigen::VectorXd& p) -> double {
        if (p.size() != 2 || (bounds && !bounds->contains(p))) {
            return kInf;
        }
        try {
            return eval(p(0), p(1));
        } catch (const NumericalError&) {
            return kInf;
        }
    };
}

void SwarmConfig::validate(Eigen::Index dim) const
{
    auto fail = [](const std::string& what) { throw PreconditionError("swarm config: " + what); };
    if (n_agents < 1) fail("N must be >= 1");
    if (smp < 1) fail("M must be >= 1");
    if (spc && smp < 2) fail("M must be >= 2 when SPC is set");
    if (!(srd >= 0.0) || !std::isfinite(srd)) fail("SRD must be >= 0");
    if (cdc < 1 || cdc > dim) fail("CDC must lie in 1..D");
    if (!(mr > 0.0 && mr < 1.0)) fail("mr must lie in (0, 1)");
    if (!std::isfinite(c0) || !std::isfinite(w0)) fail("c and w must be finite");
    if (iter_max < 1) fail("Iter_max must be >= 1");
    if (!(v_frac > 0.0) || !std::isfinite(v_frac)) fail("v_frac must be > 0");
}

Eigen::VectorXd seeking_probabilities(std::span<const double> fitness)
{
    const auto k = static_cast<Eigen::Index>(fitness.size());
    Eigen::VectorXd p = Eigen::VectorXd::Zero(k);
    if (k == 0) {
        return p;
    }
    double f_min = kInf;
    double f_max = -kInf;
    for (double f : fitness) {
        if (std::isfinite(f)) {
            f_min = std::min(f_min, f);
            f_max = std::max(f_max, f);
        }
    }
    if (f_min == kInf) {
        // Nothing finite: every candidate is equally (un)attractive.
        p.setConstant(1.0 / static_cast<double>(k));
        return p;
    }
    const bool all_finite =
        std::all_of(fitness.begin(), fitness.end(), [](double f) { return std::isfinite(f); });
    if (f_max == f_min) {
        if (all_finite) {
            p.setConstant(1.0 / static_cast<double>(k));
        } else {
            for (Eigen::Index j = 0; j < k; ++j) {
                p(j) = std::isfinite(fitness[j]) ? 1.0 : 0.0;
            }
        }
        return p;
    }
    const double span = std::abs(f_max - f_min);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (std::isfinite(fitness[j])) {
            p(j) = std::abs(fitness[j] - f_max) / span;
        }
    }
    return p;
}

double adaptive_inertia(double w0, Eigen::Index d, Eigen::Index dim)
{
    return w0 + static_cast<double>(dim - d) / (2.0 * static_cast<double>(dim));
}

double adaptive_acceleration(double c0, Eigen::Index d, Eigen::Index dim)
{
    return c0 - static_cast<double>(dim - d) / (2.0 * static_cast<double>(dim));
}

Agent seeking_step(const Agent& agent, const SwarmConfig& cfg, const Bounds& bounds,
                   const Objective& objective, Rng& rng)
{
    const Eigen::Index dim = bounds.dim();
    const Eigen::VectorXd width = bounds.width();
    const auto pool = static_cast<std::size_t>(cfg.smp);

    Eigen::MatrixXd candidates(dim, cfg.smp);
    std::vector<double> fitness;
    fitness.reserve(pool);
    if (cfg.spc) {
        candidates.col(0) = agent.position;
        fitness.push_back(agent.fitness);
    }

    std::vector<Eigen::Index> dims(static_cast<std::size_t>(dim));
    std::iota(dims.begin(), dims.end(), Eigen::Index{0});
    std::bernoulli_distribution coin(0.5);
    Eigen::VectorXd x(dim);

    while (fitness.size() < pool) {
        x = agent.position;
        if (cfg.cdc < dim) {
            std::shuffle(dims.begin(), dims.end(), rng);
        }
        for (int c = 0; c < cfg.cdc; ++c) {
            const Eigen::Index d = dims[static_cast<std::size_t>(c)];
            // Relative step vanishes on the axis; fall back to a tiny absolute one.
            const double step = std::abs(x(d)) < 1e-9 * width(d) ? cfg.srd * width(d) * 1e-3
                                                                 : cfg.srd * std::abs(x(d));
            x(d) += coin(rng) ? step : -step;
        }
        x = x.cwiseMax(bounds.lower()).cwiseMin(bounds.upper());
        candidates.col(static_cast<Eigen::Index>(fitness.size())) = x;
        fitness.push_back(objective(x));
    }

    const Eigen::VectorXd prob = seeking_probabilities(fitness);
    const double best_p = prob.maxCoeff();
    std::vector<std::size_t> ties;
    for (std::size_t j = 0; j < pool; ++j) {
        if (prob(static_cast<Eigen::Index>(j)) == best_p) {
            ties.push_back(j);
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    const std::size_t chosen = ties[pick(rng)];

    Agent next = agent;
    next.position = candidates.col(static_cast<Eigen::Index>(chosen));
    next.fitness = fitness[chosen];
    return next;
}

Agent tracing_step(const Agent& agent, const Eigen::VectorXd& global_best, const SwarmConfig& cfg,
                   const Bounds& bounds, Rng& rng)
{
    const Eigen::Index dim = bounds.dim();
    const Eigen::VectorXd v_max = cfg.v_frac * bounds.width();
    std::uniform_real_distribution<double> u(0.0, 1.0);

    Agent next = agent;
    for (Eigen::Index d = 0; d < dim; ++d) {
        const double w = adaptive_inertia(cfg.w0, d + 1, dim);
        const double c = adaptive_acceleration(cfg.c0, d + 1, dim);
        double v = w * next.velocity(d) + u(rng) * c * (global_best(d) - next.position(d));
        next.velocity(d) = std::clamp(v, -v_max(d), v_max(d));
    }
    next.position = bounds.clamp(next.position + next.velocity);
    return next;
}

RunTrace adcso_minimize(const Objective& objective, const Bounds& bounds, const SwarmConfig& cfg,
                        const SwarmObserver& observer)
{
    cfg.validate(bounds.dim());
    Rng rng(cfg.seed);
    RunTrace trace;
    const Objective counted = [&](const Eigen::VectorXd& x) {
        ++trace.evaluations;
        return objective(x);
    };

    const auto n = static_cast<std::size_t>(cfg.n_agents);
    const Eigen::VectorXd v_max = cfg.v_frac * bounds.width();
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    std::vector<Agent> cats(n);
    for (auto& cat : cats) {
        cat.position = bounds.sample(rng);
        cat.velocity = Eigen::VectorXd(bounds.dim());
        for (Eigen::Index d = 0; d < bounds.dim(); ++d) {
            cat.velocity(d) = u(rng) * v_max(d);
        }
        cat.fitness = counted(cat.position);
    }

    auto remember_best = [&] {
        for (const auto& cat : cats) {
            if (cat.fitness < trace.best_fitness || trace.best_position.size() == 0) {
                trace.best_fitness = cat.fitness;
                trace.best_position = cat.position;
            }
        }
    };
    remember_best();

    const auto n_tracing = static_cast<std::size_t>(std::lround(cfg.mr * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    trace.best_fitness_per_iter.reserve(static_cast<std::size_t>(cfg.iter_max));

    for (int it = 0; it < cfg.iter_max; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i = 0; i < n; ++i) {
            cats[order[i]].mode = i < n_tracing ? Mode::Tracing : Mode::Seeking;
        }

        const Eigen::VectorXd global_best = trace.best_position;
        for (auto& cat : cats) {
            if (cat.mode == Mode::Tracing) {
                cat = tracing_step(cat, global_best, cfg, bounds, rng);
                cat.fitness = counted(cat.position);
            } else {
                cat = seeking_step(cat, cfg, bounds, counted, rng);
            }
        }
        remember_best();
        trace.best_fitness_per_iter.push_back(trace.best_fitness);
        if (observer) {
            observer(it, cats);
        }
    }
    return trace;
}

} // namespace fgm
