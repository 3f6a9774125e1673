#include "burgers/trajectory.hpp"

#include <cmath>
#include <numbers>

namespace burgers {

Trajectory::Trajectory(std::vector<double> t, std::vector<double> q,
                       std::vector<double> p)
    : times(std::move(t)), positions(std::move(q)), velocities(std::move(p)) {
    if (times.size() < 2) throw ParameterError("Trajectory: need at least 2 samples");
    if (times.size() != positions.size() || times.size() != velocities.size())
        throw ParameterError("Trajectory: sequence length mismatch");
    for (size_t k = 0; k + 1 < times.size(); ++k)
        if (!(times[k] < times[k + 1]))
            throw ParameterError("Trajectory: times must be strictly increasing");
    for (size_t k = 0; k < times.size(); ++k)
        if (!std::isfinite(positions[k]) || !std::isfinite(velocities[k]) ||
            !std::isfinite(times[k]))
            throw ParameterError("Trajectory: non-finite sample");
}

PhasePoint::PhasePoint(double q_, double p_) : q(q_), p(p_) {
    if (!std::isfinite(q) || !std::isfinite(p))
        throw ParameterError("PhasePoint: non-finite coordinates");
}

double wrap_angle(double x) {
    const double p = 2.0 * std::numbers::pi;
    double r = std::fmod(x, p);
    return r < 0 ? r + p : r;
}

double circle_distance(double a) {
    const double p = 2.0 * std::numbers::pi;
    double r = std::abs(std::remainder(a, p));
    return r;
}

}  // namespace burgers
