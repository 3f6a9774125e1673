// Second-order trajectory machinery: q'' = V'(t,q) integration, two-point
// shooting, the time-2pi return map and its fixed points.
#pragma once
#include <array>
#include <functional>
#include <vector>

#include "burgers/potential.hpp"
#include "burgers/trajectory.hpp"

namespace burgers {

// RK4 with fixed step; backward integration (t1 < t0) is allowed and the
// returned samples are ordered by increasing time either way.
Trajectory integrate_el(PhasePoint start, double t0, double t1, double dt,
                        const Potential& pot);

struct ShootResult {
    std::vector<Trajectory> solutions;    // deduplicated, |xi(t) - x| < tol
    std::vector<double> seed_residuals;   // final |g| for every seed (diagnostic)
};

// Newton in the free left endpoint xi(0) for the boundary-value problem
//   q'' = V'(s,q), q'(0) = phi'(q(0)), q(t) = x.
// Multiple solutions are expected once characteristics have crossed; an empty
// result with nonzero residuals signals bad seeding, not an error.
ShootResult shoot_bvp(double t, double x, const std::function<double(double)>& phi_prime,
                      const Potential& pot, const std::vector<double>& seeds,
                      double dt = 1e-3, double tol = 1e-9);

// Endpoint of the flow over one forcing period [0, 2pi]; q stays on the cover.
PhasePoint poincare_map(PhasePoint point, const Potential& pot, double dt = 1e-3);

struct PoincareFixedPoint {
    PhasePoint point;   // q reduced to [0, 2pi)
    int winding;        // q-advance per period in units of 2pi
    double residual;    // sup norm of the return-map defect
};

struct PeriodicOrbitScan {
    std::vector<PoincareFixedPoint> fixed_points;
    bool degenerate_family = false;  // set when most seeds see a singular Jacobian
    int seeds_total = 0;
    int seeds_attempted = 0;   // seeds that entered Newton
    int seeds_converged = 0;
    int seeds_singular = 0;    // skipped on a singular Jacobian
};

// Newton on F(q,p) = map^periods(q,p) - (q + 2pi w, p) over integer windings
// |w| <= 3*periods, seeded on a q_seeds x p_seeds grid. Windings are taken
// from each seed's own map image rather than reducing q mod 2pi inside Newton.
PeriodicOrbitScan find_periodic_orbits(const Potential& pot, int q_seeds, double p_min,
                                       double p_max, int p_seeds, int periods, double tol);

// Forward-difference Jacobian of the time-2pi map at a point.
std::array<double, 4> poincare_jacobian(PhasePoint point, const Potential& pot,
                                        double h = 1e-6, double dt = 1e-3);

}  // namespace burgers
