#include <algorithm>
#include <cmath>
#include <string>

#include "fgm/optim.hpp"

namespace fgm {

void PsoConfig::validate() const
{
    auto fail = [](const std::string& what) { throw PreconditionError("pso config: " + what); };
    if (n_particles < 1) fail("N must be >= 1");
    if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(w)) fail("c1, c2, w must be finite");
    if (iter_max < 1) fail("Iter_max must be >= 1");
    if (!(v_frac > 0.0) || !std::isfinite(v_frac)) fail("v_frac must be > 0");
}

RunTrace pso_minimize(const Objective& objective, const Bounds& bounds, const PsoConfig& cfg,
                      const SwarmObserver& observer)
{
    cfg.validate();
    Rng rng(cfg.seed);
    RunTrace trace;
    auto evaluate = [&](const Eigen::VectorXd& x) {
        ++trace.evaluations;
        return objective(x);
    };

    const Eigen::Index dim = bounds.dim();
    const auto n = static_cast<std::size_t>(cfg.n_particles);
    const Eigen::VectorXd v_max = cfg.v_frac * bounds.width();
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // Particles reuse Agent; mode is unused.
    std::vector<Agent> swarm(n);
    std::vector<Eigen::VectorXd> pbest(n);
    std::vector<double> pbest_fit(n);
    for (std::size_t i = 0; i < n; ++i) {
        swarm[i].position = bounds.sample(rng);
        swarm[i].velocity = Eigen::VectorXd(dim);
        for (Eigen::Index d = 0; d < dim; ++d) {
            swarm[i].velocity(d) = sym(rng) * v_max(d);
        }
        swarm[i].fitness = evaluate(swarm[i].position);
        pbest[i] = swarm[i].position;
        pbest_fit[i] = swarm[i].fitness;
    }

    auto update_global = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            if (pbest_fit[i] < trace.best_fitness || trace.best_position.size() == 0) {
                trace.best_fitness = pbest_fit[i];
                trace.best_position = pbest[i];
            }
        }
    };
    update_global();
    trace.best_fitness_per_iter.reserve(static_cast<std::size_t>(cfg.iter_max));

    for (int it = 0; it < cfg.iter_max; ++it) {
        const Eigen::VectorXd gbest = trace.best_position;
        for (std::size_t i = 0; i < n; ++i) {
            Agent& p = swarm[i];
            for (Eigen::Index d = 0; d < dim; ++d) {
                const double r1 = u(rng);
                const double r2 = u(rng);
                const double v = cfg.w * p.velocity(d) + cfg.c1 * r1 * (pbest[i](d) - p.position(d)) +
                                 cfg.c2 * r2 * (gbest(d) - p.position(d));
                p.velocity(d) = std::clamp(v, -v_max(d), v_max(d));
            }
            p.position = bounds.clamp(p.position + p.velocity);
            p.fitness = evaluate(p.position);
            if (p.fitness < pbest_fit[i]) {
                pbest_fit[i] = p.fitness;
                pbest[i] = p.position;
            }
        }
        update_global();
        trace.best_fitness_per_iter.push_back(trace.best_fitness);
        if (observer) {
            observer(it, swarm);
        }
    }
    return trace;
}

} // namespace fgm
