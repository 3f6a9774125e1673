// Viscous Burgers solvers.
//
// The equation u_t + (u^2/2)_x = (eps/2) u_xx + V_x is solved two ways:
//  * log-transform: evolve the linear equation U_t = (eps/2) U_xx - (1/eps) U V
//    from U(0) = exp(-phi/eps) and read off u = -eps (log U)_x;
//  * direct: explicit conservative finite differences on u itself.
// The linear evolution also yields the discretized propagator kernel used by
// the periodic module.
#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/potential.hpp"

namespace burgers {

// Discretized kernel of the linear evolution over [t0, t1]:
//   (P u)(x_i) = dx * sum_j entries[i*n+j] * u(x_j).
// Entries are kernel values, strictly positive over positive time intervals.
struct PropagatorMatrix {
    double eps;
    double t0, t1;
    SpatialGrid grid;
    std::vector<double> entries;  // row-major n*n

    double entry(int i, int j) const { return entries[static_cast<size_t>(i) * grid.n + j]; }
    double min_entry() const;
    double row_sum(int i) const;
    std::vector<double> apply(const std::vector<double>& u) const;
    PeriodicField apply(const PeriodicField& u) const;
};

// Strang splitting with Crank-Nicolson heat steps; V frozen at interval midpoints.
// Positivity of the assembled kernel requires eps*dt/(2 dx^2) <= 1 per step,
// which the default step count keeps at 0.25.
PropagatorMatrix build_propagator(const Potential& pot, double eps, double t0, double t1,
                                  const SpatialGrid& grid, int n_steps);

// (later o earlier): valid when the intervals abut on a common grid.
PropagatorMatrix compose(const PropagatorMatrix& later, const PropagatorMatrix& earlier);

// Step width giving eps*dt/(2 dx^2) = 0.25 (safety factor 0.5 on the positivity rule).
double default_viscous_dt(double eps, const SpatialGrid& grid);
int default_propagator_steps(double eps, double t0, double t1, const SpatialGrid& grid);

// One run of the log-transform solver. v = -eps log U is kept exactly
// (internal rescaling of U is folded back into v), u = -eps (log U)_x by
// centered differences. Slices are recorded with the given stride; the first
// and final slices are always present.
struct ViscousRun {
    double eps;
    std::vector<double> times;
    std::vector<PeriodicField> u;
    std::vector<PeriodicField> v;

    const PeriodicField& final_u() const { return u.back(); }
    const PeriodicField& final_v() const { return v.back(); }
};

ViscousRun solve_viscous(double eps, const PeriodicField& phi, const Potential& pot,
                         double t_end, double dt, int record_stride = 0);

// Direct conservative scheme; one explicit step (central flux + central diffusion
// + midpoint source). Throws CflError with the admissible step when dt violates
// dt <= dx/max|u| or dt <= dx^2/eps.
PeriodicField direct_viscous_step(const PeriodicField& u, double eps, const Potential& pot,
                                  double t, double dt);

struct DirectViscousRun {
    double eps;
    std::vector<double> times;
    std::vector<PeriodicField> u;

    const PeriodicField& final_u() const { return u.back(); }
};

DirectViscousRun solve_viscous_direct(double eps, const PeriodicField& u0,
                                      const Potential& pot, double t_end,
                                      double safety = 0.5, int record_stride = 0);

struct FeynmanKacEstimate {
    double estimate;
    double std_error;
};

// Monte-Carlo value of U(t,x) = E exp(-(phi(x+sqrt(eps) w_t)
//   + int_0^t V(t-s, x+sqrt(eps) w_s) ds)/eps).
// Deterministic for a fixed seed; path blocks are seeded seed+block.
FeynmanKacEstimate feynman_kac_estimate(double eps, const std::function<double(double)>& phi,
                                        const Potential& pot, double t, double x,
                                        int n_paths, int n_steps, std::uint64_t seed);

// sup_x |eps log U(t,x; phi_a) - eps log U(t,x; phi_b)|; bounded by
// sup|phi_a - phi_b| up to roundoff (the discrete kernel is positive).
double log_stability_gap(double eps, const PeriodicField& phi_a, const PeriodicField& phi_b,
                         const Potential& pot, double t, double dt = 0.0);

// A-priori L2 bound 6 pi K2 + sqrt(6 K1 + 6 pi K2), valid along runs whose
// initial L2 norm is below 9 pi.
double l2_growth_bound(double k1, double k2);

}  // namespace burgers
