#include "burgers/quadrature.hpp"

#include <cmath>
#include <vector>

namespace burgers {

double quadrature(const std::function<double(double)>& f, double a, double b, int n) {
    if (!(a < b)) throw ParameterError("quadrature: need a < b");
    if (n < 2) throw ParameterError("quadrature: need n >= 2");
    if (n % 2) ++n;
    const double h = (b - a) / n;
    auto eval = [&](double x) {
        double y = f(x);
        if (!std::isfinite(y)) throw EvaluationError("quadrature: non-finite integrand", x);
        return y;
    };
    double s = eval(a) + eval(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * eval(a + k * h);
    return s * h / 3.0;
}

double integrate_samples(const std::vector<double>& v, double h) {
    const int m = static_cast<int>(v.size()) - 1;  // interval count
    if (m < 1) throw ParameterError("integrate_samples: need at least 2 samples");
    if (m == 1) return 0.5 * h * (v[0] + v[1]);
    if (m == 2) return h / 3.0 * (v[0] + 4.0 * v[1] + v[2]);
    int m_simpson = (m % 2 == 0) ? m : m - 3;
    double s = 0.0;
    if (m_simpson > 0) {
        s = v[0] + v[m_simpson];
        for (int k = 1; k < m_simpson; ++k) s += (k % 2 ? 4.0 : 2.0) * v[k];
        s *= h / 3.0;
    }
    if (m % 2) {
        // Simpson 3/8 on the final three intervals.
        s += 3.0 * h / 8.0 *
             (v[m - 3] + 3.0 * v[m - 2] + 3.0 * v[m - 1] + v[m]);
    }
    return s;
}

}  // namespace burgers
