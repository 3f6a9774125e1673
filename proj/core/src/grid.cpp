#include "burgers/grid.hpp"

#include <algorithm>
#include <cmath>

namespace burgers {

double PeriodicField::interp(double x) const {
    const double dx = grid_.dx();
    double s = x / dx;
    double base = std::floor(s);
    double frac = s - base;
    int j = grid_.wrap(static_cast<int>(base) % grid_.n);
    int jp = grid_.wrap(j + 1);
    return (1.0 - frac) * values_[j] + frac * values_[jp];
}

double PeriodicField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / grid_.n;
}

double PeriodicField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double PeriodicField::min_value() const {
    double m = values_[0];
    for (double v : values_) m = std::min(m, v);
    return m;
}

double l2_norm(const PeriodicField& f) {
    double s = 0.0;
    for (int j = 0; j < f.size(); ++j) s += f[j] * f[j];
    return std::sqrt(s / f.size() * (f.grid().period / two_pi));
}

double l2_distance(const PeriodicField& a, const PeriodicField& b) {
    if (a.grid() != b.grid()) throw ParameterError("l2_distance: grid mismatch");
    double s = 0.0;
    for (int j = 0; j < a.size(); ++j) {
        double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s / a.size() * (a.grid().period / two_pi));
}

double l1_distance(const PeriodicField& a, const PeriodicField& b) {
    if (a.grid() != b.grid()) throw ParameterError("l1_distance: grid mismatch");
    double s = 0.0;
    for (int j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
    return s * a.grid().dx();
}

double sup_distance(const PeriodicField& a, const PeriodicField& b) {
    if (a.grid() != b.grid()) throw ParameterError("sup_distance: grid mismatch");
    double s = 0.0;
    for (int j = 0; j < a.size(); ++j) s = std::max(s, std::abs(a[j] - b[j]));
    return s;
}

PeriodicField derivative_centered(const PeriodicField& f) {
    const int n = f.size();
    const double inv2dx = 1.0 / (2.0 * f.grid().dx());
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j)
        d[j] = (f.at_wrapped(j + 1) - f.at_wrapped(j - 1)) * inv2dx;
    return PeriodicField(f.grid(), std::move(d));
}

PeriodicField cumulative_integral_mean_zero(const PeriodicField& f) {
    const int n = f.size();
    const double dx = f.grid().dx();
    std::vector<double> g(n, 0.0);
    for (int j = 1; j < n; ++j)
        g[j] = g[j - 1] + 0.5 * dx * (f[j - 1] + f[j]);
    double m = 0.0;
    for (double v : g) m += v;
    m /= n;
    for (double& v : g) v -= m;
    return PeriodicField(f.grid(), std::move(g));
}

PeriodicField mollify(const PeriodicField& f, int cells) {
    if (cells < 1) throw ParameterError("mollify: kernel half-width must be >= 1 cell");
    const int n = f.size();
    std::vector<double> w(2 * cells + 1);
    double wsum = 0.0;
    for (int m = -cells; m <= cells; ++m) {
        w[m + cells] = 1.0 - std::abs(m) / static_cast<double>(cells + 1);
        wsum += w[m + cells];
    }
    for (double& x : w) x /= wsum;
    std::vector<double> g(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int m = -cells; m <= cells; ++m)
            g[j] += w[m + cells] * f.at_wrapped(j + m);
    return PeriodicField(f.grid(), std::move(g));
}

PeriodicField operator+(const PeriodicField& a, const PeriodicField& b) {
    if (a.grid() != b.grid()) throw ParameterError("field +: grid mismatch");
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = a[j] + b[j];
    return PeriodicField(a.grid(), std::move(v));
}

PeriodicField operator-(const PeriodicField& a, const PeriodicField& b) {
    if (a.grid() != b.grid()) throw ParameterError("field -: grid mismatch");
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = a[j] - b[j];
    return PeriodicField(a.grid(), std::move(v));
}

PeriodicField operator*(double c, const PeriodicField& a) {
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = c * a[j];
    return PeriodicField(a.grid(), std::move(v));
}

}  // namespace burgers
