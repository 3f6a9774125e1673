#include "burgers/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace burgers {

namespace {

// Constant-coefficient cyclic tridiagonal solve (rows: sub*x_{i-1} + diag*x_i
// + super*x_{i+1}, wrapped). Sherman-Morrison correction of a plain Thomas
// sweep; the elimination coefficients are precomputed once.
class CyclicTridiagonalSolver {
  public:
    CyclicTridiagonalSolver(int n, double sub, double diag, double super)
        : n_(n), sub_(sub), gamma_(-diag) {
        std::vector<double> bprime(n, diag);
        bprime[0] = diag - gamma_;
        bprime[n - 1] = diag - super * sub / gamma_;
        cprime_.resize(n);
        m_.resize(n);
        m_[0] = 1.0 / bprime[0];
        cprime_[0] = super * m_[0];
        for (int i = 1; i < n; ++i) {
            m_[i] = 1.0 / (bprime[i] - sub * cprime_[i - 1]);
            cprime_[i] = super * m_[i];
        }
        std::vector<double> u(n, 0.0);
        u[0] = gamma_;
        u[n - 1] = super;  // A[n-1][0]
        z_ = u;
        plain_solve(z_);
        denom_ = 1.0 + z_[0] + sub / gamma_ * z_[n - 1];
        work_.resize(n);
    }

    void solve(std::vector<double>& x) const {
        plain_solve(x);
        double fact = (x[0] + sub_ / gamma_ * x[n_ - 1]) / denom_;
        for (int i = 0; i < n_; ++i) x[i] -= fact * z_[i];
    }

  private:
    void plain_solve(std::vector<double>& x) const {
        x[0] *= m_[0];
        for (int i = 1; i < n_; ++i) x[i] = (x[i] - sub_ * x[i - 1]) * m_[i];
        for (int i = n_ - 2; i >= 0; --i) x[i] -= cprime_[i] * x[i + 1];
    }

    int n_;
    double sub_, gamma_;
    std::vector<double> cprime_, m_, z_;
    double denom_;
    mutable std::vector<double> work_;
};

// One Strang step of U_t = (eps/2) U_xx - (1/eps) U V over a fixed dt:
// half potential multiply at the midpoint time, Crank-Nicolson heat step,
// half potential multiply again.
class HeatPotentialStepper {
  public:
    HeatPotentialStepper(const Potential& pot, double eps, const SpatialGrid& grid,
                         double dt)
        : pot_(pot), grid_(grid), eps_(eps), dt_(dt),
          r_(eps * dt / (4.0 * grid.dx() * grid.dx())),
          solver_(grid.n, -r_, 1.0 + 2.0 * r_, -r_),
          diag_(grid.n), tmp_(grid.n) {}

    void load_diagonal(double t) {
        const double tm = t + 0.5 * dt_;
        const double c = -0.5 * dt_ / eps_;
        for (int i = 0; i < grid_.n; ++i)
            diag_[i] = std::exp(c * pot_.value(tm, grid_.node(i)));
    }

    // Advance one state vector; load_diagonal(t) must have been called for this step.
    void step_loaded(std::vector<double>& u) {
        const int n = grid_.n;
        for (int i = 0; i < n; ++i) u[i] *= diag_[i];
        for (int i = 0; i < n; ++i) {
            double um = u[(i + n - 1) % n];
            double up = u[(i + 1) % n];
            tmp_[i] = (1.0 - 2.0 * r_) * u[i] + r_ * (um + up);
        }
        solver_.solve(tmp_);
        for (int i = 0; i < n; ++i) u[i] = tmp_[i] * diag_[i];
    }

    void step(std::vector<double>& u, double t) {
        load_diagonal(t);
        step_loaded(u);
    }

  private:
    const Potential& pot_;
    SpatialGrid grid_;
    double eps_, dt_, r_;
    CyclicTridiagonalSolver solver_;
    std::vector<double> diag_, tmp_;
};

std::vector<double> log_derivative_times(const std::vector<double>& u, double factor,
                                         const SpatialGrid& grid) {
    const int n = grid.n;
    const double inv2dx = 1.0 / (2.0 * grid.dx());
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        double lp = std::log(u[(i + 1) % n]);
        double lm = std::log(u[(i + n - 1) % n]);
        d[i] = factor * (lp - lm) * inv2dx;
    }
    return d;
}

}  // namespace

double PropagatorMatrix::min_entry() const {
    double m = entries[0];
    for (double e : entries) m = std::min(m, e);
    return m;
}

double PropagatorMatrix::row_sum(int i) const {
    double s = 0.0;
    for (int j = 0; j < grid.n; ++j) s += entry(i, j);
    return s;
}

std::vector<double> PropagatorMatrix::apply(const std::vector<double>& u) const {
    const int n = grid.n;
    if (static_cast<int>(u.size()) != n)
        throw ParameterError("PropagatorMatrix::apply: size mismatch");
    const double dx = grid.dx();
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* row = entries.data() + static_cast<size_t>(i) * n;
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j] * u[j];
        out[i] = dx * s;
    }
    return out;
}

PeriodicField PropagatorMatrix::apply(const PeriodicField& u) const {
    if (u.grid() != grid) throw ParameterError("PropagatorMatrix::apply: grid mismatch");
    return PeriodicField(grid, apply(u.values()));
}

double default_viscous_dt(double eps, const SpatialGrid& grid) {
    const double dx = grid.dx();
    return 0.5 * dx * dx / eps;
}

int default_propagator_steps(double eps, double t0, double t1, const SpatialGrid& grid) {
    return std::max(1, static_cast<int>(std::ceil((t1 - t0) / default_viscous_dt(eps, grid))));
}

PropagatorMatrix build_propagator(const Potential& pot, double eps, double t0, double t1,
                                  const SpatialGrid& grid, int n_steps) {
    if (!(eps > 0.0)) throw ParameterError("build_propagator: eps must be positive");
    if (!(t1 > t0)) throw ParameterError("build_propagator: need t1 > t0");
    if (n_steps < 1) throw ParameterError("build_propagator: need n_steps >= 1");

    const int n = grid.n;
    const double dt = (t1 - t0) / n_steps;
    HeatPotentialStepper stepper(pot, eps, grid, dt);

    // Evolve all basis vectors at once; row j of `states` is the image of e_j.
    std::vector<std::vector<double>> states(n, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) states[j][j] = 1.0;
    for (int k = 0; k < n_steps; ++k) {
        stepper.load_diagonal(t0 + k * dt);
        for (int j = 0; j < n; ++j) stepper.step_loaded(states[j]);
    }

    PropagatorMatrix P{eps, t0, t1, grid, std::vector<double>(static_cast<size_t>(n) * n)};
    const double inv_dx = 1.0 / grid.dx();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            P.entries[static_cast<size_t>(i) * n + j] = states[j][i] * inv_dx;
    return P;
}

PropagatorMatrix compose(const PropagatorMatrix& later, const PropagatorMatrix& earlier) {
    if (later.grid != earlier.grid) throw ParameterError("compose: grid mismatch");
    if (later.eps != earlier.eps) throw ParameterError("compose: eps mismatch");
    if (std::abs(later.t0 - earlier.t1) > 1e-12)
        throw ParameterError("compose: intervals do not abut");
    const int n = later.grid.n;
    const double dx = later.grid.dx();
    PropagatorMatrix P{later.eps, earlier.t0, later.t1, later.grid,
                       std::vector<double>(static_cast<size_t>(n) * n, 0.0)};
    for (int i = 0; i < n; ++i) {
        const double* a = later.entries.data() + static_cast<size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const double aik = a[k] * dx;
            const double* b = earlier.entries.data() + static_cast<size_t>(k) * n;
            double* c = P.entries.data() + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) c[j] += aik * b[j];
        }
    }
    return P;
}

ViscousRun solve_viscous(double eps, const PeriodicField& phi, const Potential& pot,
                         double t_end, double dt, int record_stride) {
    if (!(eps > 0.0)) throw ParameterError("solve_viscous: eps must be positive");
    if (!(t_end > 0.0)) throw ParameterError("solve_viscous: need t_end > 0");
    if (!(dt > 0.0)) throw ParameterError("solve_viscous: need dt > 0");

    const SpatialGrid grid = phi.grid();
    const int n = grid.n;
    const int n_steps = std::max(1, static_cast<int>(std::llround(t_end / dt)));
    const double dt_actual = t_end / n_steps;
    if (record_stride <= 0)
        record_stride = std::max(1, n_steps / 2000);

    // U = exp(-phi/eps), rescaled by its running maximum; the removed scale is
    // accumulated in log_scale so that v = -eps (log U + log_scale) is exact.
    double phi_min = phi[0];
    for (int i = 0; i < n; ++i) phi_min = std::min(phi_min, phi[i]);
    std::vector<double> U(n);
    for (int i = 0; i < n; ++i) U[i] = std::exp(-(phi[i] - phi_min) / eps);
    double log_scale = -phi_min / eps;

    HeatPotentialStepper stepper(pot, eps, grid, dt_actual);

    ViscousRun run;
    run.eps = eps;
    auto record = [&](double t) {
        run.times.push_back(t);
        run.u.emplace_back(grid, log_derivative_times(U, -eps, grid));
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = -eps * (std::log(U[i]) + log_scale);
        run.v.emplace_back(grid, std::move(v));
    };
    record(0.0);

    for (int k = 0; k < n_steps; ++k) {
        stepper.step(U, k * dt_actual);
        double umax = 0.0, umin = U[0];
        for (double x : U) {
            umax = std::max(umax, x);
            umin = std::min(umin, x);
        }
        const double t_now = (k + 1) * dt_actual;
        if (!(umin > 0.0) || !std::isfinite(umax))
            throw NumericRangeError("solve_viscous: positive field lost its dynamic range",
                                    t_now);
        for (double& x : U) x /= umax;
        log_scale += std::log(umax);
        if ((k + 1) % record_stride == 0 || k + 1 == n_steps) record(t_now);
    }
    return run;
}

PeriodicField direct_viscous_step(const PeriodicField& u, double eps, const Potential& pot,
                                  double t, double dt) {
    const SpatialGrid grid = u.grid();
    const int n = grid.n;
    const double dx = grid.dx();
    double umax = u.max_abs();
    const double dt_adv = umax > 0.0 ? dx / umax : std::numeric_limits<double>::infinity();
    const double dt_diff = eps > 0.0 ? dx * dx / eps : std::numeric_limits<double>::infinity();
    const double dt_ok = std::min(dt_adv, dt_diff);
    if (dt > dt_ok)
        throw CflError("direct_viscous_step: dt violates stability", dt_ok);

    const double tm = t + 0.5 * dt;
    const double nu = 0.5 * eps * dt / (dx * dx);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double uc = u[i];
        const double up = u.at_wrapped(i + 1);
        const double um = u.at_wrapped(i - 1);
        const double flux_right = 0.25 * (uc * uc + up * up);
        const double flux_left = 0.25 * (um * um + uc * uc);
        out[i] = uc - dt / dx * (flux_right - flux_left) + nu * (up - 2.0 * uc + um) +
                 dt * pot.gradient(tm, grid.node(i));
    }
    return PeriodicField(grid, std::move(out));
}

DirectViscousRun solve_viscous_direct(double eps, const PeriodicField& u0,
                                      const Potential& pot, double t_end, double safety,
                                      int record_stride) {
    if (!(t_end > 0.0)) throw ParameterError("solve_viscous_direct: need t_end > 0");
    if (!(safety > 0.0 && safety <= 1.0))
        throw ParameterError("solve_viscous_direct: safety in (0,1]");
    const SpatialGrid grid = u0.grid();
    const double dx = grid.dx();
    if (record_stride <= 0) record_stride = 16;

    DirectViscousRun run;
    run.eps = eps;
    run.times.push_back(0.0);
    run.u.push_back(u0);

    PeriodicField u = u0;
    double t = 0.0;
    int k = 0;
    while (t < t_end - 1e-14) {
        double umax = std::max(u.max_abs(), 1e-12);
        double dt = safety * std::min(dx / umax, eps > 0 ? dx * dx / eps
                                                          : std::numeric_limits<double>::infinity());
        dt = std::min(dt, t_end - t);
        u = direct_viscous_step(u, eps, pot, t, dt);
        t += dt;
        ++k;
        if (k % record_stride == 0 || t >= t_end - 1e-14) {
            run.times.push_back(t);
            run.u.push_back(u);
        }
    }
    return run;
}

FeynmanKacEstimate feynman_kac_estimate(double eps, const std::function<double(double)>& phi,
                                        const Potential& pot, double t, double x,
                                        int n_paths, int n_steps, std::uint64_t seed) {
    if (!(eps > 0.0)) throw ParameterError("feynman_kac_estimate: eps must be positive");
    if (!(t > 0.0)) throw ParameterError("feynman_kac_estimate: need t > 0");
    if (n_paths < 1 || n_steps < 1)
        throw ParameterError("feynman_kac_estimate: need paths and steps >= 1");

    const double ds = t / n_steps;
    const double root_eps = std::sqrt(eps);
    const double root_ds = std::sqrt(ds);
    constexpr int block = 4096;

    double sum = 0.0, sum_sq = 0.0;
    int done = 0;
    std::uint64_t block_index = 0;
    while (done < n_paths) {
        std::mt19937_64 rng(seed + block_index);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int m = std::min(block, n_paths - done);
        for (int p = 0; p < m; ++p) {
            double w = 0.0;
            // Trapezoid in s along the sampled path.
            double f_prev = pot.value(t, x);
            double integral = 0.0;
            for (int k = 1; k <= n_steps; ++k) {
                w += root_ds * gauss(rng);
                double f = pot.value(t - k * ds, x + root_eps * w);
                integral += 0.5 * ds * (f_prev + f);
                f_prev = f;
            }
            double val = std::exp(-(phi(x + root_eps * w) + integral) / eps);
            sum += val;
            sum_sq += val * val;
        }
        done += m;
        ++block_index;
    }
    const double mean = sum / n_paths;
    double var = std::max(0.0, sum_sq / n_paths - mean * mean);
    double std_error = n_paths > 1 ? std::sqrt(var / (n_paths - 1)) : 0.0;
    return {mean, std_error};
}

double log_stability_gap(double eps, const PeriodicField& phi_a, const PeriodicField& phi_b,
                         const Potential& pot, double t, double dt) {
    if (phi_a.grid() != phi_b.grid())
        throw ParameterError("log_stability_gap: grid mismatch");
    if (dt <= 0.0) dt = default_viscous_dt(eps, phi_a.grid());
    ViscousRun ra = solve_viscous(eps, phi_a, pot, t, dt);
    ViscousRun rb = solve_viscous(eps, phi_b, pot, t, dt);
    return sup_distance(ra.final_v(), rb.final_v());
}

double l2_growth_bound(double k1, double k2) {
    return 6.0 * std::numbers::pi * k2 + std::sqrt(6.0 * k1 + 6.0 * std::numbers::pi * k2);
}

}  // namespace burgers
