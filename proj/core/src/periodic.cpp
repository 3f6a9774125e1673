#include "burgers/periodic.hpp"

#include <algorithm>
#include <cmath>

namespace burgers {

PropagatorMatrix build_period_operator(double eps, const SpatialGrid& grid,
                                       const Potential& pot, int n_steps) {
    if (n_steps <= 0) n_steps = default_propagator_steps(eps, 0.0, two_pi, grid);
    return build_propagator(pot, eps, 0.0, two_pi, grid, n_steps);
}

PowerIterationResult power_iteration(
    const std::function<std::vector<double>(const std::vector<double>&)>& apply, int n,
    double tol, int max_iter) {
    if (n < 1) throw ParameterError("power_iteration: empty vector");
    std::vector<double> v(n, 1.0);
    std::vector<double> residual_history;
    double lambda = 0.0;

    for (int iter = 1; iter <= max_iter; ++iter) {
        std::vector<double> w = apply(v);
        double vw = 0.0, vv = 0.0;
        for (int i = 0; i < n; ++i) {
            vw += v[i] * w[i];
            vv += v[i] * v[i];
        }
        lambda = vw / vv;
        double num = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = w[i] - lambda * v[i];
            num += r * r;
        }
        double residual = std::sqrt(num / vv) / std::abs(lambda);
        residual_history.push_back(residual);
        double wmax = 0.0;
        for (double x : w) wmax = std::max(wmax, std::abs(x));
        if (!(wmax > 0.0) || !std::isfinite(wmax))
            throw ConvergenceError("power_iteration: iterate degenerated",
                                   residual_history);
        for (double& x : w) x /= wmax;
        v.swap(w);
        if (residual < tol) return {lambda, std::move(v), iter, residual};
    }
    throw ConvergenceError("power_iteration: tolerance not reached", residual_history);
}

EigenPair principal_eigenpair(const PropagatorMatrix& op, double tol, int max_iter) {
    if (!(op.min_entry() > 0.0))
        throw ParameterError("principal_eigenpair: operator must be strictly positive");
    auto apply = [&op](const std::vector<double>& v) { return op.apply(v); };
    PowerIterationResult r = power_iteration(apply, op.grid.n, tol, max_iter);
    return {r.lambda, PeriodicField(op.grid, std::move(r.vec)), r.iterations, r.residual};
}

PeriodicInitialCondition periodic_initial_condition(double eps, const SpatialGrid& grid,
                                                    const Potential& pot) {
    if (!(eps >= 0.05 && eps <= 1.0))
        throw ParameterError("periodic_initial_condition: eps in [0.05, 1]");
    const int n_steps = default_propagator_steps(eps, 0.0, two_pi, grid);
    PropagatorMatrix op = build_period_operator(eps, grid, pot, n_steps);
    EigenPair eig = principal_eigenpair(op);

    const int n = grid.n;
    std::vector<double> log_phi(n);
    for (int i = 0; i < n; ++i) log_phi[i] = std::log(eig.phi_eig[i]);

    std::vector<double> u0(n);
    const double inv2dx = 1.0 / (2.0 * grid.dx());
    for (int i = 0; i < n; ++i)
        u0[i] = -eps * (log_phi[(i + 1) % n] - log_phi[(i + n - 1) % n]) * inv2dx;

    double mean_lp = 0.0;
    for (double v : log_phi) mean_lp += v;
    mean_lp /= n;
    std::vector<double> phi_f(n);
    for (int i = 0; i < n; ++i) phi_f[i] = -eps * (log_phi[i] - mean_lp);

    return {PeriodicField(grid, std::move(phi_f)), PeriodicField(grid, std::move(u0)),
            std::move(eig), n_steps};
}

InviscidRun PeriodicSolution::as_run() const {
    InviscidRun run;
    run.times = times;
    run.slices = slices;
    run.time_periodic = true;
    return run;
}

PeriodicSolution inviscid_periodic(const SpatialGrid& grid, const Potential& pot,
                                   int n_relax_periods, const PeriodicField& u_init,
                                   double cfl) {
    if (n_relax_periods < 1)
        throw ParameterError("inviscid_periodic: need at least one period");
    if (u_init.grid() != grid) throw ParameterError("inviscid_periodic: grid mismatch");
    u_init.require_mean_zero(1e-8);
    const double bound = l2_growth_bound(pot.k1(), pot.k2());
    if (bound > 0.0 && l2_norm(u_init) > bound)
        throw ParameterError("inviscid_periodic: initial data above the a-priori bound");

    PeriodicField u = u_init;
    std::vector<double> residuals;
    residuals.reserve(n_relax_periods);
    InviscidRun last;
    for (int k = 0; k < n_relax_periods; ++k) {
        const bool final_period = (k + 1 == n_relax_periods);
        InviscidRun run = solve_inviscid(u, pot, two_pi, cfl, final_period ? 1 : 1 << 20);
        residuals.push_back(l2_distance(run.slices.back(), u));
        u = run.slices.back();
        if (final_period) last = std::move(run);
    }

    const double floor = 1e-2;
    if (residuals.size() >= 8) {
        const size_t q = residuals.size() * 3 / 4;
        if (residuals.back() > floor && residuals.back() > 0.95 * residuals[q])
            throw ConvergenceError("inviscid_periodic: residual stalled above the floor",
                                   residuals);
    }

    PeriodicSolution sol{0.0, last.slices.front(), std::move(last.times),
                         std::move(last.slices), residuals.back(), std::move(residuals)};
    return sol;
}

PeriodicSolution viscous_periodic(double eps, const SpatialGrid& grid,
                                  const Potential& pot) {
    PeriodicInitialCondition pic = periodic_initial_condition(eps, grid, pot);
    const double dt = two_pi / pic.n_steps;
    ViscousRun run = solve_viscous(eps, pic.phi_field, pot, two_pi, dt);
    PeriodicSolution sol{eps,
                         run.u.front(),
                         run.times,
                         run.u,
                         l2_distance(run.u.back(), run.u.front()),
                         {}};
    return sol;
}

ViscosityConvergenceTable viscosity_convergence(const std::vector<double>& eps_list,
                                                const SpatialGrid& grid,
                                                const Potential& pot, int relax_periods,
                                                int mollifier_cells) {
    PeriodicSolution inv = inviscid_periodic(grid, pot, relax_periods,
                                             PeriodicField::zero(grid));
    const PeriodicField u0_smooth = mollify(inv.u0, mollifier_cells);
    const PeriodicField phi_inv = cumulative_integral_mean_zero(inv.u0);

    ViscosityConvergenceTable table;
    table.inviscid_residual = inv.periodicity_residual;
    for (double eps : eps_list) {
        PeriodicInitialCondition pic = periodic_initial_condition(eps, grid, pot);
        PeriodicSolution vis = viscous_periodic(eps, grid, pot);
        table.rows.push_back({eps, pic.eigen.lambda, vis.periodicity_residual,
                              l2_distance(mollify(pic.u0, mollifier_cells), u0_smooth),
                              sup_distance(pic.phi_field, phi_inv)});
    }
    return table;
}

}  // namespace burgers
