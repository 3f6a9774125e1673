// Uniform grid on the circle [0, 2*pi) and sampled periodic fields.
#pragma once
#include <cmath>
#include <numbers>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Uniform nodes x_j = j * period / n, j = 0..n-1, with node n identified with node 0.
struct SpatialGrid {
    int n;
    double period;

    explicit SpatialGrid(int n_points, double period_ = two_pi)
        : n(n_points), period(period_) {
        if (n < 8) throw ParameterError("SpatialGrid: need at least 8 nodes");
        if (!(period > 0.0)) throw ParameterError("SpatialGrid: period must be positive");
    }

    double dx() const { return period / n; }
    double node(int j) const { return j * period / n; }

    // Index of the node at or just left of x, and the fractional offset in [0,1).
    int wrap(int j) const {
        int m = j % n;
        return m < 0 ? m + n : m;
    }

    bool operator==(const SpatialGrid&) const = default;
};

// One sampled 2*pi-periodic function of space (a solution slice, initial data,
// an eigenfunction). Values are owned; the grid is small enough to copy.
class PeriodicField {
  public:
    PeriodicField(SpatialGrid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.n)
            throw ParameterError("PeriodicField: value count does not match grid");
        for (double v : values_)
            if (!std::isfinite(v)) throw ParameterError("PeriodicField: non-finite value");
    }

    static PeriodicField zero(SpatialGrid grid) {
        return PeriodicField(grid, std::vector<double>(grid.n, 0.0));
    }

    template <class Fn>
    static PeriodicField sample(SpatialGrid grid, Fn&& f) {
        std::vector<double> v(grid.n);
        for (int j = 0; j < grid.n; ++j) v[j] = f(grid.node(j));
        return PeriodicField(grid, std::move(v));
    }

    const SpatialGrid& grid() const { return grid_; }
    int size() const { return grid_.n; }
    double operator[](int j) const { return values_[j]; }
    double at_wrapped(int j) const { return values_[grid_.wrap(j)]; }
    const std::vector<double>& values() const { return values_; }

    // Linear interpolation with periodic wrap; x may be any real.
    double interp(double x) const;

    double mean() const;
    double max_abs() const;
    double min_value() const;

    void require_mean_zero(double tol) const {
        if (std::abs(mean()) * grid_.period > tol)
            throw ParameterError("PeriodicField: mean-zero assertion failed");
    }

  private:
    SpatialGrid grid_;
    std::vector<double> values_;
};

// Normalized L2 norm, (1/2pi int f^2)^(1/2), trapezoid rule on the grid
// (exact rectangle sum for periodic data).
double l2_norm(const PeriodicField& f);
double l2_distance(const PeriodicField& a, const PeriodicField& b);
double l1_distance(const PeriodicField& a, const PeriodicField& b);  // unnormalized int |a-b| dx
double sup_distance(const PeriodicField& a, const PeriodicField& b);

// Centered difference derivative on the circle.
PeriodicField derivative_centered(const PeriodicField& f);

// Cumulative trapezoid integral of a (mean-zero) field, normalized to mean zero.
// The circle closes exactly when the input has zero mean.
PeriodicField cumulative_integral_mean_zero(const PeriodicField& f);

// Triangular smoothing kernel of half-width `cells` grid cells (weak-topology surrogate).
PeriodicField mollify(const PeriodicField& f, int cells);

// Pointwise algebra helpers.
PeriodicField operator+(const PeriodicField& a, const PeriodicField& b);
PeriodicField operator-(const PeriodicField& a, const PeriodicField& b);
PeriodicField operator*(double c, const PeriodicField& a);

}  // namespace burgers
