// Time-sampled paths of characteristics and second-order trajectories.
#pragma once
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

// Positions live on the universal cover (plain reals, never reduced mod 2*pi);
// winding information is part of the data.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> velocities;

    Trajectory(std::vector<double> t, std::vector<double> q, std::vector<double> p);

    int size() const { return static_cast<int>(times.size()); }
    double t0() const { return times.front(); }
    double t1() const { return times.back(); }
};

struct PhasePoint {
    double q;  // position on the cover
    double p;  // velocity

    PhasePoint(double q_, double p_);
};

// Distance from a to the nearest multiple of 2*pi (circle distance to 0).
double circle_distance(double a);

// Representative of x in [0, 2*pi).
double wrap_angle(double x);

}  // namespace burgers
