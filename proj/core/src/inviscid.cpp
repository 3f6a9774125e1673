#include "burgers/inviscid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "burgers/viscous.hpp"  // l2_growth_bound

namespace burgers {

namespace {

// Godunov flux for f(u) = u^2/2.
inline double godunov_flux(double a, double b) {
    double fa = std::max(a, 0.0);
    double fb = std::min(b, 0.0);
    return 0.5 * std::max(fa * fa, fb * fb);
}

int lower_slice(const std::vector<double>& times, double t) {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    int k = static_cast<int>(it - times.begin()) - 1;
    return std::clamp(k, 0, static_cast<int>(times.size()) - 2);
}

}  // namespace

double InviscidRun::value(double t, double x) const {
    if (time_periodic) {
        const double span = time_span();
        t = t_front() + std::fmod(t - t_front(), span);
        if (t < t_front()) t += span;
    } else {
        t = std::clamp(t, t_front(), t_back());
    }
    const int k = lower_slice(times, t);
    const double t0 = times[k], t1 = times[k + 1];
    const double w = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
    return (1.0 - w) * slices[k].interp(x) + w * slices[k + 1].interp(x);
}

InviscidRun solve_inviscid(const PeriodicField& u0, const Potential& pot, double t_end,
                           double cfl, int record_stride) {
    if (!(cfl > 0.0 && cfl < 1.0)) throw ParameterError("solve_inviscid: cfl in (0,1)");
    if (!(t_end > 0.0)) throw ParameterError("solve_inviscid: need t_end > 0");
    if (record_stride < 1) record_stride = 1;

    const SpatialGrid grid = u0.grid();
    const int n = grid.n;
    const double dx = grid.dx();
    const double blow_limit =
        10.0 * std::max({l2_growth_bound(pot.k1(), pot.k2()), u0.max_abs(), 1.0});

    InviscidRun run;
    run.times.push_back(0.0);
    run.slices.push_back(u0);

    std::vector<double> u = u0.values();
    std::vector<double> flux(n);
    double t = 0.0;
    long step = 0;
    while (t < t_end - 1e-14) {
        double umax = 1e-12;
        for (double v : u) umax = std::max(umax, std::abs(v));
        double dt = std::min(cfl * dx / umax, t_end - t);

        for (int i = 0; i < n; ++i)
            u[i] += 0.5 * dt * pot.gradient(t + 0.25 * dt, grid.node(i));
        for (int i = 0; i < n; ++i) flux[i] = godunov_flux(u[i], u[(i + 1) % n]);
        const double lam = dt / dx;
        for (int i = 0; i < n; ++i)
            u[i] -= lam * (flux[i] - flux[(i + n - 1) % n]);
        for (int i = 0; i < n; ++i)
            u[i] += 0.5 * dt * pot.gradient(t + 0.75 * dt, grid.node(i));

        t += dt;
        ++step;
        double amax = 0.0;
        for (double v : u) amax = std::max(amax, std::abs(v));
        if (!(amax <= blow_limit))
            throw DivergenceError("solve_inviscid: solution left the plausible range");
        if (step % record_stride == 0 || t >= t_end - 1e-14) {
            run.times.push_back(t);
            run.slices.emplace_back(grid, u);
        }
    }
    return run;
}

double shock_speed(double u_left, double u_right) {
    if (u_left < u_right)
        throw InadmissibleJumpError("shock_speed: left trace below right trace");
    return 0.5 * (u_left + u_right);
}

double ShockRecord::measured_speed(int k) const {
    const int m = size();
    if (m < 2) throw ParameterError("ShockRecord: need >= 2 samples for a speed");
    int a = std::max(0, k - 1), b = std::min(m - 1, k + 1);
    return (positions[b] - positions[a]) / (times[b] - times[a]);
}

namespace {

struct Detection {
    double position;   // in [0, 2pi)
    double u_left;
    double u_right;
};

// Contiguous steep-drop groups in one slice, with sub-cell interface position.
std::vector<Detection> detect_shocks(const PeriodicField& u, double threshold) {
    const int n = u.size();
    const SpatialGrid& g = u.grid();
    std::vector<bool> steep(n, false);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (u.at_wrapped(i + 1) - u[i] < -threshold) {
            steep[i] = true;
            ++count;
        }
    }
    std::vector<Detection> out;
    if (count == 0 || count == n) return out;

    // Walk groups starting just after a non-steep cell.
    int start = 0;
    while (steep[start]) ++start;
    for (int scan = 0; scan < n; ++scan) {
        int i = (start + scan) % n;
        if (!steep[i]) continue;
        int first = i;
        int len = 1;
        while (steep[(first + len) % n]) ++len;
        scan += len - 1;
        int last = first + len - 1;  // unwrapped index of last steep interface

        double uL = u.at_wrapped(first - 2);
        double uR = u.at_wrapped(last + 1 + 2);
        double mid = 0.5 * (uL + uR);
        // Crossing of the mid value inside the layer.
        double pos = g.node(g.wrap(first));
        for (int j = first; j <= last; ++j) {
            double a = u.at_wrapped(j), b = u.at_wrapped(j + 1);
            if (a >= mid && mid >= b && a > b) {
                double frac = (a - mid) / (a - b);
                pos = g.node(g.wrap(j)) + frac * g.dx();
                break;
            }
        }
        out.push_back({wrap_angle(pos), uL, uR});
    }
    return out;
}

}  // namespace

std::vector<ShockRecord> track_shocks(const InviscidRun& run, double threshold) {
    if (!(threshold > 0.0)) throw ParameterError("track_shocks: threshold must be positive");
    const double dx = run.grid().dx();
    std::vector<ShockRecord> records;
    std::vector<int> active;  // indices into records still being extended

    for (size_t k = 0; k < run.times.size(); ++k) {
        const double t = run.times[k];
        auto detections = detect_shocks(run.slices[k], threshold);
        std::vector<bool> used(detections.size(), false);
        std::vector<int> still_active;

        for (int ri : active) {
            ShockRecord& r = records[ri];
            const double dt = t - r.times.back();
            const double v_pred = 0.5 * (r.left_trace.back() + r.right_trace.back());
            const double pred = r.positions.back() + v_pred * dt;
            const double radius = 6.0 * dx + 2.0 * std::abs(v_pred) * dt;
            int best = -1;
            double best_dist = radius;
            for (size_t d = 0; d < detections.size(); ++d) {
                if (used[d]) continue;
                double dist = circle_distance(detections[d].position - pred);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = static_cast<int>(d);
                }
            }
            if (best >= 0) {
                used[best] = true;
                // Lift the detection onto the record's cover sheet.
                double raw = detections[best].position;
                double lifted = pred + std::remainder(raw - pred, two_pi);
                r.times.push_back(t);
                r.positions.push_back(lifted);
                r.left_trace.push_back(detections[best].u_left);
                r.right_trace.push_back(detections[best].u_right);
                still_active.push_back(ri);
            }
        }
        for (size_t d = 0; d < detections.size(); ++d) {
            if (used[d]) continue;
            ShockRecord r;
            r.birth_time = t;
            r.times.push_back(t);
            r.positions.push_back(detections[d].position);
            r.left_trace.push_back(detections[d].u_left);
            r.right_trace.push_back(detections[d].u_right);
            records.push_back(std::move(r));
            still_active.push_back(static_cast<int>(records.size()) - 1);
        }
        active = std::move(still_active);
    }
    return records;
}

namespace {

// Position of a record at time t by linear interpolation, or nan outside its life.
double record_position(const ShockRecord& r, double t) {
    if (t < r.times.front() - 1e-12 || t > r.times.back() + 1e-12)
        return std::numeric_limits<double>::quiet_NaN();
    auto it = std::upper_bound(r.times.begin(), r.times.end(), t);
    int k = std::clamp(static_cast<int>(it - r.times.begin()) - 1, 0,
                       static_cast<int>(r.times.size()) - 2);
    double t0 = r.times[k], t1 = r.times[k + 1];
    double w = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
    return (1.0 - w) * r.positions[k] + w * r.positions[k + 1];
}

}  // namespace

CharacteristicResult forward_characteristic(const InviscidRun& run, double x0,
                                            const std::vector<ShockRecord>& shocks,
                                            double capture_radius_cells) {
    const double radius = capture_radius_cells * run.grid().dx();
    const double t0 = run.t_front(), t1 = run.t_back();
    double dt = 0.0;
    for (size_t k = 0; k + 1 < run.times.size(); ++k)
        dt = std::max(dt, run.times[k + 1] - run.times[k]);
    dt = std::min(dt, (t1 - t0) / 2);
    if (dt <= 0.0) dt = (t1 - t0) / 64.0;

    std::vector<double> ts{t0}, qs{x0}, ps{run.value(t0, x0)};
    bool absorbed = false;
    double absorption_time = t1;
    double q = x0, t = t0;
    auto rhs = [&](double tt, double qq) { return run.value(tt, qq); };
    while (t < t1 - 1e-12 && !absorbed) {
        double h = std::min(dt, t1 - t);
        double k1 = rhs(t, q);
        double k2 = rhs(t + 0.5 * h, q + 0.5 * h * k1);
        double k3 = rhs(t + 0.5 * h, q + 0.5 * h * k2);
        double k4 = rhs(t + h, q + h * k3);
        q += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
        ts.push_back(t);
        qs.push_back(q);
        ps.push_back(rhs(t, q));
        for (const ShockRecord& s : shocks) {
            double pos = record_position(s, t);
            if (std::isfinite(pos) && circle_distance(q - pos) < radius) {
                absorbed = true;
                absorption_time = t;
                break;
            }
        }
    }
    return {Trajectory(std::move(ts), std::move(qs), std::move(ps)), absorbed,
            absorption_time};
}

Trajectory backward_flow(const InviscidRun& run, double t_start, double x, double horizon,
                         double ds) {
    if (!(horizon > 0.0)) throw ParameterError("backward_flow: need horizon > 0");
    if (!run.time_periodic && horizon > t_start - run.t_front() + 1e-12)
        throw ParameterError("backward_flow: horizon exceeds stored span of a non-periodic run");
    if (ds <= 0.0) ds = std::min(5e-3, horizon / 64.0);
    const long n_steps = std::lround(std::ceil(horizon / ds));
    const double h = horizon / n_steps;

    std::vector<double> ts, qs, ps;
    ts.reserve(n_steps + 1);
    qs.reserve(n_steps + 1);
    ps.reserve(n_steps + 1);
    double q = x;
    auto rhs = [&](double s, double qq) { return -run.value(t_start - s, qq); };
    ts.push_back(0.0);
    qs.push_back(q);
    ps.push_back(rhs(0.0, q));
    for (long k = 0; k < n_steps; ++k) {
        double s = k * h;
        double k1 = rhs(s, q);
        double k2 = rhs(s + 0.5 * h, q + 0.5 * h * k1);
        double k3 = rhs(s + 0.5 * h, q + 0.5 * h * k2);
        double k4 = rhs(s + h, q + h * k3);
        q += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        ts.push_back(s + h);
        qs.push_back(q);
        ps.push_back(rhs(s + h, q));
    }
    return Trajectory(std::move(ts), std::move(qs), std::move(ps));
}

std::vector<double> sync_measure(const InviscidRun& run, double x, double y, int k,
                                 double horizon) {
    if (k < 1) throw ParameterError("sync_measure: need k >= 1");
    const int periods = static_cast<int>(std::floor(horizon / two_pi));
    // Step chosen to land exactly on period multiples.
    const int per_period = 1257;
    const double ds = two_pi / per_period;
    Trajectory zx = backward_flow(run, 0.0, x, periods * two_pi, ds);
    Trajectory zy = backward_flow(run, 0.0, y, periods * two_pi, ds);
    std::vector<double> out;
    for (int m = 0; m <= periods; ++m) {
        size_t idx = static_cast<size_t>(m) * per_period;
        out.push_back(circle_distance(k * (zx.positions[idx] - zy.positions[idx])));
    }
    return out;
}

AttractorClassification attractor_classification(const InviscidRun& run, int samples,
                                                 double horizon) {
    if (samples < 1) throw ParameterError("attractor_classification: need samples >= 1");
    std::vector<double> deviations;
    deviations.reserve(samples);
    int votes_a = 0, votes_b = 0;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x0 = i * two_pi / samples;
        Trajectory path = backward_flow(run, 0.0, x0, horizon);
        const size_t start = path.times.size() * 3 / 4;
        double dev_a = 0.0, dev_b = 0.0;
        for (size_t j = start; j < path.times.size(); ++j) {
            const double s = path.times[j];
            const double th = path.positions[j];
            dev_a = std::max(dev_a, circle_distance(th + s - std::sin(s)));
            dev_b = std::max(dev_b, circle_distance(th - std::numbers::pi - s - std::sin(s)));
        }
        if (dev_a < dev_b) {
            ++votes_a;
            deviations.push_back(dev_a);
        } else {
            ++votes_b;
            deviations.push_back(dev_b);
        }
        worst = std::max(worst, deviations.back());
    }
    if (votes_a > 0 && votes_b > 0)
        throw AmbiguityError("attractor_classification: mixed types, raise the horizon");
    return {votes_a > 0 ? AttractorType::TypeA : AttractorType::TypeB, worst, deviations};
}

double derivative_upper_bound(double phi_xx_sup, const Potential& pot, double t) {
    if (t < 0.0) throw ParameterError("derivative_upper_bound: need t >= 0");
    return phi_xx_sup + t * pot.kxx();
}

double max_one_sided_slope(const PeriodicField& u) {
    double m = -std::numeric_limits<double>::infinity();
    const double inv_dx = 1.0 / u.grid().dx();
    for (int i = 0; i < u.size(); ++i)
        m = std::max(m, (u.at_wrapped(i + 1) - u[i]) * inv_dx);
    return m;
}

}  // namespace burgers
