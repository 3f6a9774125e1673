#include "burgers/potential.hpp"

#include <cmath>

namespace burgers {

Potential Potential::paper() {
    return Potential(
        Kind::paper,
        [](double t, double x) { return std::cos(std::sin(t)) - std::cos(x + std::sin(t)); },
        [](double t, double x) { return std::sin(x + std::sin(t)); },
        [](double t, double x) { return std::cos(x + std::sin(t)); },
        2.0, 1.0, 1.0);
}

Potential Potential::zero() {
    return Potential(
        Kind::custom,
        [](double, double) { return 0.0; },
        [](double, double) { return 0.0; },
        [](double, double) { return 0.0; },
        0.0, 0.0, 0.0);
}

Potential Potential::custom(Fn value, Fn gradient, Fn second, double k1, double k2,
                            double kxx) {
    return Potential(Kind::custom, std::move(value), std::move(gradient),
                     std::move(second), k1, k2, kxx);
}

}  // namespace burgers
