// The action functional
//   A(xi) = 1/2 int_0^t xi'^2 + int_0^t V(s, xi(s)) ds + phi(xi(0)),
// evaluated on piecewise-linear paths (2^n equal slope intervals) and on
// sampled trajectories, with its exact gradient in the slope coordinates,
// descent-based minimization under the endpoint constraint xi(t) = x, and the
// small-noise consistency checks against the viscous solver.
#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/potential.hpp"
#include "burgers/trajectory.hpp"

namespace burgers {

using ScalarFn = std::function<double(double)>;

// Element of the dyadic path space: start point plus 2^level constant slopes
// on equal subintervals of [0, t_end].
struct PiecewisePath {
    double t_end;
    int level;
    double start;
    std::vector<double> slopes;

    PiecewisePath(double t, int n, double start_, std::vector<double> slopes_);

    int segments() const { return 1 << level; }
    double seg_width() const { return t_end / segments(); }
    double endpoint() const;
    double position(double s) const;
    double terminal_slope() const { return slopes.back(); }
    std::vector<double> node_positions() const;  // xi(j h), j = 0..2^level

    // Same path expressed one level finer (each slope duplicated).
    PiecewisePath refined() const;
};

struct ActionReport {
    double value;
    double kinetic;
    double potential;
    double boundary;
    double el_residual;
};

ActionReport action_eval(const PiecewisePath& path, const ScalarFn& phi,
                         const ScalarFn& phi_prime, const Potential& pot);
ActionReport action_eval(const Trajectory& traj, const ScalarFn& phi,
                         const ScalarFn& phi_prime, const Potential& pot);

// Interior equation defect plus boundary defect |q'(0) - phi'(q(0))|.
double el_residual(const Trajectory& traj, const Potential& pot,
                   const ScalarFn& phi_prime);

struct ActionGradient {
    std::vector<double> d_slopes;
    double d_start;
};

// Analytic first variation in (start, slopes); segment integrals by Simpson.
ActionGradient action_gradient(const PiecewisePath& path, const ScalarFn& phi_prime,
                               const Potential& pot);

struct MinimizeOptions {
    int restarts = 32;
    std::uint64_t seed = 1;
    int max_iterations = 10000;
    double grad_tol = 1e-8;
    double armijo_c = 1e-4;
    double shrink = 0.5;
    std::optional<double> fixed_start;         // pin xi(0) instead of freeing it
    std::optional<PiecewisePath> warm_start;   // extra deterministic initial guess
};

struct MinimizeResult {
    PiecewisePath best;
    ActionReport report;
    int restarts_converged;
    bool unique_among_restarts;  // all near-optimal restarts landed on one path
};

// Gradient descent with Armijo backtracking (Barzilai-Borwein trial steps)
// from `restarts` random starts; the endpoint constraint xi(t) = x is imposed
// by eliminating the last slope. Throws OptimizationError when nothing converges.
MinimizeResult minimize_action(double t, double x, int level, const ScalarFn& phi,
                               const ScalarFn& phi_prime, const Potential& pot,
                               const MinimizeOptions& opts = {});

// (2^n / 2t) sum x_j^2, the rate function of the scaled Gaussian increments.
double fenchel_legendre(const std::vector<double>& xs, int level, double t);

struct LaplaceRow {
    double eps;
    double neg_eps_log_u;   // Monte-Carlo estimate
    double rel_std_error;   // of the underlying expectation
    double gap;             // neg_eps_log_u - inf action over the level
    bool precision_warning;
};

struct LaplaceTable {
    double t, x;
    int level;
    double inf_action;
    std::vector<LaplaceRow> rows;
};

// Discrete-path expectation against the level-n minimum of A.
LaplaceTable laplace_limit_check(double t, double x, int level,
                                 const std::vector<double>& eps_list, const ScalarFn& phi,
                                 const ScalarFn& phi_prime, const Potential& pot,
                                 int n_paths, std::uint64_t seed,
                                 const MinimizeOptions& opts = {});

struct VaradhanTable {
    double t;
    double x;                        // snapped to a grid node
    std::vector<double> eps_list;
    std::vector<int> levels;
    std::vector<double> lhs;         // -eps log U^eps per eps
    std::vector<double> min_action;  // per level
    double gap(int i_eps, int i_level) const {
        return lhs[i_eps] - min_action[i_level];
    }
};

// Deterministic propagator solution against level-n minima; phi enters both
// sides, as a sampled field for the solver and interpolated for the paths.
VaradhanTable varadhan_check(double t, double x, const std::vector<double>& eps_list,
                             const PeriodicField& phi, const Potential& pot,
                             const std::vector<int>& levels,
                             const MinimizeOptions& opts = {});

struct ValueGradientResult {
    double lhs;            // centered difference of the value in x, step dx
    double lhs_double_dx;  // same with step 2 dx (order check)
    double rhs;            // terminal velocity of the minimizer at x
    double value;          // minimal action at x
    bool ambiguous;        // restarts disagreed on the minimizer
};

ValueGradientResult value_gradient_identity(double t, double x, double dx, int level,
                                            const ScalarFn& phi, const ScalarFn& phi_prime,
                                            const Potential& pot,
                                            const MinimizeOptions& opts = {});

}  // namespace burgers
