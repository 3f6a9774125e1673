#include "burgers/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "burgers/errors.hpp"
#include "burgers/quadrature.hpp"
#include "burgers/viscous.hpp"

namespace burgers {

namespace {

constexpr int kNodesPerSegment = 64;  // Simpson subintervals per slope interval

// Simpson weights over one segment, premultiplied by h_sub/3.
struct SegmentRule {
    double h_sub;
    std::vector<double> w;
    explicit SegmentRule(double seg_width)
        : h_sub(seg_width / kNodesPerSegment), w(kNodesPerSegment + 1) {
        for (int k = 0; k <= kNodesPerSegment; ++k) {
            double c = (k == 0 || k == kNodesPerSegment) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            w[k] = c * h_sub / 3.0;
        }
    }
};

double potential_integral(const PiecewisePath& path, const Potential& pot) {
    const SegmentRule rule(path.seg_width());
    const double h = path.seg_width();
    double total = 0.0;
    double node = path.start;
    for (int j = 0; j < path.segments(); ++j) {
        const double s0 = j * h;
        const double lam = path.slopes[j];
        for (int k = 0; k <= kNodesPerSegment; ++k) {
            const double ds = k * rule.h_sub;
            total += rule.w[k] * pot.value(s0 + ds, node + lam * ds);
        }
        node += lam * h;
    }
    return total;
}

}  // namespace

PiecewisePath::PiecewisePath(double t, int n, double start_, std::vector<double> slopes_)
    : t_end(t), level(n), start(start_), slopes(std::move(slopes_)) {
    if (!(t_end > 0.0)) throw ParameterError("PiecewisePath: need t_end > 0");
    if (level < 0 || level > 16) throw ParameterError("PiecewisePath: level out of range");
    if (static_cast<int>(slopes.size()) != (1 << level))
        throw ParameterError("PiecewisePath: slope count must be 2^level");
    for (double l : slopes)
        if (!std::isfinite(l)) throw ParameterError("PiecewisePath: non-finite slope");
    if (!std::isfinite(start)) throw ParameterError("PiecewisePath: non-finite start");
}

double PiecewisePath::endpoint() const {
    double s = 0.0;
    for (double l : slopes) s += l;
    return start + seg_width() * s;
}

double PiecewisePath::position(double s) const {
    const double h = seg_width();
    int j = std::clamp(static_cast<int>(std::floor(s / h)), 0, segments() - 1);
    double node = start;
    for (int i = 0; i < j; ++i) node += slopes[i] * h;
    return node + slopes[j] * (s - j * h);
}

std::vector<double> PiecewisePath::node_positions() const {
    std::vector<double> nodes(segments() + 1);
    nodes[0] = start;
    const double h = seg_width();
    for (int j = 0; j < segments(); ++j) nodes[j + 1] = nodes[j] + slopes[j] * h;
    return nodes;
}

PiecewisePath PiecewisePath::refined() const {
    std::vector<double> s2(slopes.size() * 2);
    for (size_t j = 0; j < slopes.size(); ++j) s2[2 * j] = s2[2 * j + 1] = slopes[j];
    return PiecewisePath(t_end, level + 1, start, std::move(s2));
}

ActionReport action_eval(const PiecewisePath& path, const ScalarFn& phi,
                         const ScalarFn& phi_prime, const Potential& pot) {
    const double h = path.seg_width();
    double kinetic = 0.0;
    for (double l : path.slopes) kinetic += l * l;
    kinetic *= 0.5 * h;
    const double potential = potential_integral(path, pot);
    const double boundary = phi(path.start);

    const auto nodes = path.node_positions();
    double defect = std::abs(path.slopes[0] - phi_prime(path.start));
    double interior = 0.0;
    for (int j = 1; j < path.segments(); ++j) {
        double r = (path.slopes[j] - path.slopes[j - 1]) / h -
                   pot.gradient(j * h, nodes[j]);
        interior = std::max(interior, std::abs(r));
    }
    return {kinetic + potential + boundary, kinetic, potential, boundary,
            interior + defect};
}

ActionReport action_eval(const Trajectory& traj, const ScalarFn& phi,
                         const ScalarFn& phi_prime, const Potential& pot) {
    const int m = traj.size();
    const double h = (traj.t1() - traj.t0()) / (m - 1);
    std::vector<double> ke(m), pe(m);
    for (int k = 0; k < m; ++k) {
        ke[k] = 0.5 * traj.velocities[k] * traj.velocities[k];
        pe[k] = pot.value(traj.times[k], traj.positions[k]);
    }
    const double kinetic = integrate_samples(ke, h);
    const double potential = integrate_samples(pe, h);
    const double boundary = phi(traj.positions.front());
    const double resid = el_residual(traj, pot, phi_prime);
    return {kinetic + potential + boundary, kinetic, potential, boundary, resid};
}

double el_residual(const Trajectory& traj, const Potential& pot,
                   const ScalarFn& phi_prime) {
    const int m = traj.size();
    if (m < 8) throw ParameterError("el_residual: need at least 8 samples");
    const double span = traj.t1() - traj.t0();
    const double h = span / (m - 1);
    for (int k = 0; k + 1 < m; ++k)
        if (std::abs(traj.times[k + 1] - traj.times[k] - h) > 1e-9 * std::abs(span))
            throw ParameterError("el_residual: needs uniform time samples");

    double interior = 0.0;
    for (int k = 1; k + 1 < m; ++k) {
        double dd = (traj.positions[k + 1] - 2.0 * traj.positions[k] +
                     traj.positions[k - 1]) /
                    (h * h);
        interior = std::max(interior,
                            std::abs(dd - pot.gradient(traj.times[k], traj.positions[k])));
    }
    double boundary = std::abs(traj.velocities.front() - phi_prime(traj.positions.front()));
    return interior + boundary;
}

ActionGradient action_gradient(const PiecewisePath& path, const ScalarFn& phi_prime,
                               const Potential& pot) {
    const int m = path.segments();
    const double h = path.seg_width();
    const SegmentRule rule(h);

    // I_j = int_seg V'(s, xi) ds, J_j = int_seg V'(s, xi) (s - s_j) ds.
    std::vector<double> I(m, 0.0), J(m, 0.0);
    double node = path.start;
    for (int j = 0; j < m; ++j) {
        const double s0 = j * h;
        const double lam = path.slopes[j];
        for (int k = 0; k <= kNodesPerSegment; ++k) {
            const double ds = k * rule.h_sub;
            const double g = rule.w[k] * pot.gradient(s0 + ds, node + lam * ds);
            I[j] += g;
            J[j] += g * ds;
        }
        node += lam * h;
    }
    std::vector<double> suffix(m + 1, 0.0);
    for (int j = m - 1; j >= 0; --j) suffix[j] = suffix[j + 1] + I[j];

    ActionGradient grad;
    grad.d_slopes.resize(m);
    for (int j = 0; j < m; ++j)
        grad.d_slopes[j] = h * path.slopes[j] + J[j] + h * suffix[j + 1];
    grad.d_start = phi_prime(path.start) + suffix[0];
    return grad;
}

namespace {

// Reduced coordinates for the constrained minimization: the last slope is
// eliminated by the endpoint condition, the start is optionally pinned.
class ReducedProblem {
  public:
    ReducedProblem(double t, double x, int level, const ScalarFn& phi,
                   const ScalarFn& phi_prime, const Potential& pot,
                   std::optional<double> fixed_start)
        : t_(t), x_(x), level_(level), phi_(phi), phi_prime_(phi_prime), pot_(pot),
          fixed_start_(fixed_start), m_(1 << level), h_(t / m_) {}

    int dim() const { return (fixed_start_ ? 0 : 1) + m_ - 1; }

    PiecewisePath path(const std::vector<double>& z) const {
        const int off = fixed_start_ ? 0 : 1;
        const double start = fixed_start_ ? *fixed_start_ : z[0];
        std::vector<double> slopes(m_);
        double sum = 0.0;
        for (int j = 0; j + 1 < m_; ++j) {
            slopes[j] = z[off + j];
            sum += slopes[j];
        }
        slopes[m_ - 1] = (x_ - start) / h_ - sum;
        return PiecewisePath(t_, level_, start, std::move(slopes));
    }

    double value(const std::vector<double>& z) const {
        PiecewisePath p = path(z);
        double kinetic = 0.0;
        for (double l : p.slopes) kinetic += l * l;
        kinetic *= 0.5 * h_;
        return kinetic + potential_integral(p, pot_) + phi_(p.start);
    }

    std::vector<double> gradient(const std::vector<double>& z) const {
        PiecewisePath p = path(z);
        ActionGradient g = action_gradient(p, phi_prime_, pot_);
        const int off = fixed_start_ ? 0 : 1;
        const double g_last = g.d_slopes[m_ - 1];
        std::vector<double> out(dim());
        if (!fixed_start_) out[0] = g.d_start - g_last / h_;
        for (int j = 0; j + 1 < m_; ++j) out[off + j] = g.d_slopes[j] - g_last;
        return out;
    }

    // Reduced coordinates of an existing path, endpoint re-imposed implicitly.
    std::vector<double> coords(const PiecewisePath& p) const {
        std::vector<double> z(dim());
        const int off = fixed_start_ ? 0 : 1;
        if (!fixed_start_) z[0] = p.start;
        for (int j = 0; j + 1 < m_; ++j) z[off + j] = p.slopes[j];
        return z;
    }

  private:
    double t_, x_;
    int level_;
    const ScalarFn& phi_;
    const ScalarFn& phi_prime_;
    const Potential& pot_;
    std::optional<double> fixed_start_;
    int m_;
    double h_;
};

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

struct DescentOutcome {
    std::vector<double> z;
    double value;
    bool converged;
};

DescentOutcome descend(const ReducedProblem& prob, std::vector<double> z,
                       const MinimizeOptions& opts) {
    double f = prob.value(z);
    std::vector<double> g = prob.gradient(z);
    double step = 0.05 / (1.0 + norm2(g));
    std::vector<double> z_new(z.size()), g_new;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const double gnorm = norm2(g);
        if (gnorm < opts.grad_tol) return {std::move(z), f, true};

        double beta = step;
        double f_try = 0.0;
        bool decreased = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (size_t i = 0; i < z.size(); ++i) z_new[i] = z[i] - beta * g[i];
            f_try = prob.value(z_new);
            if (std::isfinite(f_try) && f_try <= f - opts.armijo_c * beta * gnorm * gnorm) {
                decreased = true;
                break;
            }
            beta *= opts.shrink;
        }
        if (!decreased) return {std::move(z), f, gnorm < 1e2 * opts.grad_tol};

        g_new = prob.gradient(z_new);
        // Barzilai-Borwein trial step for the next iteration.
        double sty = 0.0, sts = 0.0;
        for (size_t i = 0; i < z.size(); ++i) {
            const double s = z_new[i] - z[i];
            const double y = g_new[i] - g[i];
            sty += s * y;
            sts += s * s;
        }
        step = (sty > 1e-16) ? sts / sty : beta * 2.0;
        z.swap(z_new);
        g.swap(g_new);
        f = f_try;
    }
    return {std::move(z), f, false};
}

}  // namespace

MinimizeResult minimize_action(double t, double x, int level, const ScalarFn& phi,
                               const ScalarFn& phi_prime, const Potential& pot,
                               const MinimizeOptions& opts) {
    if (!(t > 0.0)) throw ParameterError("minimize_action: need t > 0");
    if (opts.restarts < 1 && !opts.warm_start)
        throw ParameterError("minimize_action: need at least one start");

    ReducedProblem prob(t, x, level, phi, phi_prime, pot, opts.fixed_start);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> slope_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> start_dist(0.0, two_pi);

    std::vector<DescentOutcome> converged;
    double best_unconverged_gap = std::numeric_limits<double>::infinity();

    auto run_from = [&](std::vector<double> z0) {
        DescentOutcome out = descend(prob, std::move(z0), opts);
        if (out.converged)
            converged.push_back(std::move(out));
        else
            best_unconverged_gap = std::min(best_unconverged_gap, norm2(prob.gradient(out.z)));
    };

    if (opts.warm_start) {
        if (opts.warm_start->level != level ||
            std::abs(opts.warm_start->t_end - t) > 1e-12)
            throw ParameterError("minimize_action: warm start has wrong level or horizon");
        run_from(prob.coords(*opts.warm_start));
    }
    const int m = 1 << level;
    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<double> z(prob.dim());
        int off = opts.fixed_start ? 0 : 1;
        if (!opts.fixed_start) z[0] = start_dist(rng);
        for (int j = 0; j + 1 < m; ++j) z[off + j] = slope_dist(rng);
        run_from(std::move(z));
    }

    if (converged.empty())
        throw OptimizationError("minimize_action: no restart converged (best residual " +
                                std::to_string(best_unconverged_gap) + ")");

    const auto best_it = std::min_element(
        converged.begin(), converged.end(),
        [](const auto& a, const auto& b) { return a.value < b.value; });
    PiecewisePath best = prob.path(best_it->z);

    // Restart agreement: near-optimal runs should all be the same path.
    bool unique = true;
    const auto best_nodes = best.node_positions();
    for (const auto& c : converged) {
        if (c.value > best_it->value + 1e-6) continue;
        const auto nodes = prob.path(c.z).node_positions();
        for (size_t k = 0; k < nodes.size(); ++k)
            if (std::abs(nodes[k] - best_nodes[k]) > 1e-3) unique = false;
    }

    MinimizeResult result{best, action_eval(best, phi, phi_prime, pot),
                          static_cast<int>(converged.size()), unique};
    return result;
}

double fenchel_legendre(const std::vector<double>& xs, int level, double t) {
    if (static_cast<int>(xs.size()) != (1 << level))
        throw ParameterError("fenchel_legendre: need 2^level components");
    if (!(t > 0.0)) throw ParameterError("fenchel_legendre: need t > 0");
    double s = 0.0;
    for (double x : xs) s += x * x;
    return (1 << level) / (2.0 * t) * s;
}

LaplaceTable laplace_limit_check(double t, double x, int level,
                                 const std::vector<double>& eps_list, const ScalarFn& phi,
                                 const ScalarFn& phi_prime, const Potential& pot,
                                 int n_paths, std::uint64_t seed,
                                 const MinimizeOptions& opts) {
    if (level > 4) throw ParameterError("laplace_limit_check: level capped at 4");
    if (n_paths < 2) throw ParameterError("laplace_limit_check: need n_paths >= 2");

    MinimizeResult min_res = minimize_action(t, x, level, phi, phi_prime, pot, opts);
    LaplaceTable table{t, x, level, min_res.report.value, {}};

    const int m = 1 << level;
    const double h = t / m;
    std::vector<double> logw(n_paths);
    std::vector<double> slopes(m);

    for (double eps : eps_list) {
        const double sigma = std::sqrt(eps * t / m);
        constexpr int block = 8192;
        int done = 0;
        std::uint64_t b = 0;
        while (done < n_paths) {
            std::mt19937_64 rng(seed + b);
            std::normal_distribution<double> gauss(0.0, sigma);
            const int cnt = std::min(block, n_paths - done);
            for (int p = 0; p < cnt; ++p) {
                double sum_z = 0.0;
                for (int j = 0; j < m; ++j) {
                    const double z = gauss(rng);
                    slopes[m - 1 - j] = -z / h;
                    sum_z += z;
                }
                PiecewisePath path(t, level, x + sum_z, slopes);
                const double F = phi(path.start) + potential_integral(path, pot);
                logw[done + p] = -F / eps;
            }
            done += cnt;
            ++b;
        }
        const double mx = *std::max_element(logw.begin(), logw.end());
        double s1 = 0.0, s2 = 0.0;
        for (double w : logw) {
            const double e = std::exp(w - mx);
            s1 += e;
            s2 += e * e;
        }
        const double mean_shift = s1 / n_paths;
        const double neg_eps_log_u = -eps * (mx + std::log(mean_shift));
        const double rel_var =
            std::max(0.0, n_paths * s2 / (s1 * s1) - 1.0) / (n_paths - 1);
        const double rel_std = std::sqrt(rel_var);
        table.rows.push_back({eps, neg_eps_log_u, rel_std,
                              neg_eps_log_u - table.inf_action, rel_std > 0.1});
    }
    return table;
}

VaradhanTable varadhan_check(double t, double x, const std::vector<double>& eps_list,
                             const PeriodicField& phi, const Potential& pot,
                             const std::vector<int>& levels, const MinimizeOptions& opts) {
    const SpatialGrid grid = phi.grid();
    const int idx = grid.wrap(static_cast<int>(std::llround(x / grid.dx())));
    const double x_used = grid.node(idx);

    VaradhanTable table;
    table.t = t;
    table.x = x_used;
    table.eps_list = eps_list;
    table.levels = levels;

    for (double eps : eps_list) {
        ViscousRun run = solve_viscous(eps, phi, pot, t, default_viscous_dt(eps, grid));
        table.lhs.push_back(run.final_v()[idx]);
    }

    const PeriodicField phi_deriv = derivative_centered(phi);
    ScalarFn phi_fn = [&phi](double y) { return phi.interp(y); };
    ScalarFn phi_prime_fn = [&phi_deriv](double y) { return phi_deriv.interp(y); };

    std::optional<PiecewisePath> warm;
    for (int level : levels) {
        MinimizeOptions o = opts;
        while (warm && warm->level < level) warm = warm->refined();
        if (warm && warm->level == level) o.warm_start = warm;
        MinimizeResult res =
            minimize_action(t, x_used, level, phi_fn, phi_prime_fn, pot, o);
        table.min_action.push_back(res.report.value);
        warm = res.best;
    }
    return table;
}

ValueGradientResult value_gradient_identity(double t, double x, double dx, int level,
                                            const ScalarFn& phi, const ScalarFn& phi_prime,
                                            const Potential& pot,
                                            const MinimizeOptions& opts) {
    if (!(dx > 0.0)) throw ParameterError("value_gradient_identity: need dx > 0");
    MinimizeResult base = minimize_action(t, x, level, phi, phi_prime, pot, opts);

    auto shifted_value = [&](double x_shift) {
        MinimizeOptions o = opts;
        o.restarts = std::max(2, opts.restarts / 8);
        // Same basin: polish the base minimizer with the endpoint moved.
        o.warm_start = PiecewisePath(base.best);
        MinimizeResult r =
            minimize_action(t, x_shift, level, phi, phi_prime, pot, o);
        return r.report.value;
    };

    const double vp1 = shifted_value(x + dx);
    const double vm1 = shifted_value(x - dx);
    const double vp2 = shifted_value(x + 2 * dx);
    const double vm2 = shifted_value(x - 2 * dx);

    return {(vp1 - vm1) / (2 * dx), (vp2 - vm2) / (4 * dx),
            base.best.terminal_slope(), base.report.value, !base.unique_among_restarts};
}

}  // namespace burgers
