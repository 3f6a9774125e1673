// Entropy solutions of u_t + (u^2/2)_x = V_x on the circle.
//
// Godunov finite volume with Strang source splitting is the production scheme;
// shock tracking post-processes the slices (detection, sub-cell interface
// position, one-sided traces). Characteristics are integrated through the
// stored slices with bilinear interpolation.
#pragma once
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/potential.hpp"
#include "burgers/trajectory.hpp"

namespace burgers {

enum class InviscidScheme { finite_volume, front_tracking };

struct InviscidRun {
    std::vector<double> times;
    std::vector<PeriodicField> slices;
    InviscidScheme scheme = InviscidScheme::finite_volume;
    bool time_periodic = false;  // slices cover one time period; wrap outside it

    const SpatialGrid& grid() const { return slices.front().grid(); }
    double t_front() const { return times.front(); }
    double t_back() const { return times.back(); }
    double time_span() const { return t_back() - t_front(); }

    // Bilinear interpolation; t is wrapped when time_periodic, clamped otherwise.
    double value(double t, double x) const;
};

InviscidRun solve_inviscid(const PeriodicField& u0, const Potential& pot, double t_end,
                           double cfl, int record_stride = 1);

// Rankine-Hugoniot speed of an admissible jump.
double shock_speed(double u_left, double u_right);

// One tracked discontinuity: interface path on the cover plus one-sided traces
// sampled two cells outside the numerical shock layer.
struct ShockRecord {
    double birth_time;
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> left_trace;
    std::vector<double> right_trace;

    int size() const { return static_cast<int>(times.size()); }
    // Centered-difference speed at sample k (one-sided at the ends).
    double measured_speed(int k) const;
    double rh_speed(int k) const { return shock_speed(left_trace[k], right_trace[k]); }
};

// Discontinuities with one-cell drop below -threshold. A handy threshold is
// 5*C(t)*dx: smooth gradients stay below the derivative bound C(t), so
// anything steeper is a shock layer.
std::vector<ShockRecord> track_shocks(const InviscidRun& run, double threshold);

struct CharacteristicResult {
    Trajectory path;
    bool absorbed;
    double absorption_time;  // meaningful when absorbed
};

// d theta/dt = u(t, theta) by RK4 through the slices; stops when the path
// comes within capture_radius_cells * dx of a tracked shock.
CharacteristicResult forward_characteristic(const InviscidRun& run, double x0,
                                            const std::vector<ShockRecord>& shocks,
                                            double capture_radius_cells = 3.0);

// d theta/ds = -u(t_start - s, theta), s in [0, horizon]; needs a
// time-periodic run (or horizon within the stored span).
Trajectory backward_flow(const InviscidRun& run, double t_start, double x, double horizon,
                         double ds = 0.0);

// |k (Z(s,x) - Z(s,y)) mod 2pi| sampled at whole backward periods s = 2pi m.
std::vector<double> sync_measure(const InviscidRun& run, double x, double y, int k,
                                 double horizon);

enum class AttractorType { TypeA, TypeB };

struct AttractorClassification {
    AttractorType type;
    double max_deviation;                 // worst over samples, last 25% of horizon
    std::vector<double> deviations;      // per sample, for the chosen type
};

// Which reference phase the backward flow locks to:
//   TypeA: theta + t - sin t -> 0 (mod 2pi)      [forward orbit t - sin t]
//   TypeB: theta - pi - t - sin t -> 0 (mod 2pi) [forward orbit pi - t - sin t]
// Throws AmbiguityError when the samples disagree (horizon too short).
AttractorClassification attractor_classification(const InviscidRun& run, int samples,
                                                 double horizon);

// C(t) = sup phi'' + t * sup V_xx, the upper bound on u_x along the run.
double derivative_upper_bound(double phi_xx_sup, const Potential& pot, double t);

// Largest one-sided difference quotient (u_{i+1}-u_i)/dx of a slice.
double max_one_sided_slope(const PeriodicField& u);

}  // namespace burgers
