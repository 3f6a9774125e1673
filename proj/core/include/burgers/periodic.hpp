// Space/time periodic solutions.
//
// For eps > 0 the periodic initial condition is the principal eigenfunction of
// the one-period linear evolution (strictly positive kernel, so plain power
// iteration converges); u0 = -eps (log phi)'. For eps = 0 the periodic orbit
// is reached by relaxing the finite-volume solver over many forcing periods.
#pragma once
#include <functional>
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/inviscid.hpp"
#include "burgers/potential.hpp"
#include "burgers/viscous.hpp"

namespace burgers {

// Full one-period propagator (both potential terms included; the x-constant
// part of V only rescales the eigenvalue, not the eigenfunction).
PropagatorMatrix build_period_operator(double eps, const SpatialGrid& grid,
                                       const Potential& pot, int n_steps = 0);

struct PowerIterationResult {
    double lambda;
    std::vector<double> vec;  // sup-normalized
    int iterations;
    double residual;
};

// Power iteration from the constant vector on an arbitrary linear action.
PowerIterationResult power_iteration(
    const std::function<std::vector<double>(const std::vector<double>&)>& apply, int n,
    double tol, int max_iter);

struct EigenPair {
    double lambda;
    PeriodicField phi_eig;  // strictly positive
    int iterations;
    double residual;        // ||T v - lambda v|| / (lambda ||v||)
};

EigenPair principal_eigenpair(const PropagatorMatrix& op, double tol = 1e-12,
                              int max_iter = 500);

struct PeriodicInitialCondition {
    PeriodicField phi_field;  // -eps log phi_eig, mean zero
    PeriodicField u0;         // -eps (log phi_eig)', mean zero by construction
    EigenPair eigen;
    int n_steps;              // stepping that reproduces the eigen restart exactly
};

PeriodicInitialCondition periodic_initial_condition(double eps, const SpatialGrid& grid,
                                                    const Potential& pot);

struct PeriodicSolution {
    double eps;
    PeriodicField u0;
    std::vector<double> times;  // covering [0, 2pi]
    std::vector<PeriodicField> slices;
    double periodicity_residual;
    std::vector<double> residual_history;  // per relaxation period (inviscid path)

    InviscidRun as_run() const;  // time-periodic interpolation view
};

// Relax the finite-volume solver for n_relax_periods forcing periods and keep
// the final period. Throws when the residual is still above the scheme floor
// and no longer decreasing.
PeriodicSolution inviscid_periodic(const SpatialGrid& grid, const Potential& pot,
                                   int n_relax_periods, const PeriodicField& u_init,
                                   double cfl = 0.4);

// Eigen restart over one period with the matched step count.
PeriodicSolution viscous_periodic(double eps, const SpatialGrid& grid,
                                  const Potential& pot);

struct ViscosityConvergenceRow {
    double eps;
    double lambda;
    double periodicity_residual;
    double mollified_distance;  // smoothed L2 distance of u0^eps to the inviscid u0
    double phi_sup_distance;    // sup |phi^eps - phi|
};

struct ViscosityConvergenceTable {
    std::vector<ViscosityConvergenceRow> rows;
    double inviscid_residual;
};

ViscosityConvergenceTable viscosity_convergence(const std::vector<double>& eps_list,
                                                const SpatialGrid& grid,
                                                const Potential& pot, int relax_periods,
                                                int mollifier_cells = 4);

}  // namespace burgers
