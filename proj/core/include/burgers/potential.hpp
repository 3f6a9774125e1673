// Space/time periodic forcing potential V(t,x) with its first two space derivatives.
#pragma once
#include <functional>

#include "burgers/errors.hpp"

namespace burgers {

// The solvers only ever see V through value/gradient/second-derivative calls,
// so a custom potential is three callables plus its sup bounds
//   k1 = sup|V|, k2 = sup|V_x|, kxx = sup|V_xx|.
// The built-in potential is
//   V(t,x) = cos(sin t) - cos(x + sin t),   V_x(t,x) = sin(x + sin t),
// 2*pi-periodic in both arguments, with k1 = 2, k2 = kxx = 1.
class Potential {
  public:
    enum class Kind { paper, custom };
    using Fn = std::function<double(double, double)>;

    static Potential paper();
    static Potential zero();
    static Potential custom(Fn value, Fn gradient, Fn second, double k1, double k2,
                            double kxx);

    Kind kind() const { return kind_; }
    double value(double t, double x) const { return v_(t, x); }
    double gradient(double t, double x) const { return vx_(t, x); }
    double second_derivative(double t, double x) const { return vxx_(t, x); }

    double k1() const { return k1_; }
    double k2() const { return k2_; }
    double kxx() const { return kxx_; }

  private:
    Potential(Kind k, Fn v, Fn vx, Fn vxx, double k1, double k2, double kxx)
        : kind_(k), v_(std::move(v)), vx_(std::move(vx)), vxx_(std::move(vxx)),
          k1_(k1), k2_(k2), kxx_(kxx) {
        if (!v_ || !vx_ || !vxx_) throw ParameterError("Potential: missing evaluator");
        if (k1_ < 0 || k2_ < 0 || kxx_ < 0)
            throw ParameterError("Potential: bounds must be nonnegative");
    }

    Kind kind_;
    Fn v_, vx_, vxx_;
    double k1_, k2_, kxx_;
};

// Spec-facing names; total functions.
inline double eval_potential(const Potential& p, double t, double x) {
    return p.value(t, x);
}
inline double eval_potential_gradient(const Potential& p, double t, double x) {
    return p.gradient(t, x);
}

}  // namespace burgers
