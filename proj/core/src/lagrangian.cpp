#include "burgers/lagrangian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "burgers/grid.hpp"  // two_pi

namespace burgers {

namespace {

// One RK4 step of (q,p) -> (q + h p, p + h V'(t,q)).
inline void rk4_step(const Potential& pot, double t, double h, double& q, double& p) {
    const double k1q = p;
    const double k1p = pot.gradient(t, q);
    const double k2q = p + 0.5 * h * k1p;
    const double k2p = pot.gradient(t + 0.5 * h, q + 0.5 * h * k1q);
    const double k3q = p + 0.5 * h * k2p;
    const double k3p = pot.gradient(t + 0.5 * h, q + 0.5 * h * k2q);
    const double k4q = p + h * k3p;
    const double k4p = pot.gradient(t + h, q + h * k3q);
    q += h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
    p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
}

// Endpoint only, no recording.
PhasePoint flow(PhasePoint start, double t0, double t1, double dt, const Potential& pot) {
    const double span = t1 - t0;
    const long n = std::max(1L, std::lround(std::ceil(std::abs(span) / dt)));
    const double h = span / n;
    double q = start.q, p = start.p;
    for (long k = 0; k < n; ++k) rk4_step(pot, t0 + k * h, h, q, p);
    return {q, p};
}

}  // namespace

Trajectory integrate_el(PhasePoint start, double t0, double t1, double dt,
                        const Potential& pot) {
    if (!(dt > 0.0)) throw ParameterError("integrate_el: need dt > 0");
    if (t0 == t1) throw ParameterError("integrate_el: empty time interval");
    const double span = t1 - t0;
    const long n = std::max(1L, std::lround(std::ceil(std::abs(span) / dt)));
    const double h = span / n;

    std::vector<double> ts(n + 1), qs(n + 1), ps(n + 1);
    double q = start.q, p = start.p;
    ts[0] = t0;
    qs[0] = q;
    ps[0] = p;
    for (long k = 0; k < n; ++k) {
        rk4_step(pot, t0 + k * h, h, q, p);
        ts[k + 1] = t0 + (k + 1) * h;
        qs[k + 1] = q;
        ps[k + 1] = p;
    }
    if (t1 < t0) {
        std::reverse(ts.begin(), ts.end());
        std::reverse(qs.begin(), qs.end());
        std::reverse(ps.begin(), ps.end());
    }
    return Trajectory(std::move(ts), std::move(qs), std::move(ps));
}

ShootResult shoot_bvp(double t, double x, const std::function<double(double)>& phi_prime,
                      const Potential& pot, const std::vector<double>& seeds, double dt,
                      double tol) {
    if (!(t > 0.0)) throw ParameterError("shoot_bvp: need t > 0");
    if (seeds.empty()) throw ParameterError("shoot_bvp: need at least one seed");

    auto endpoint = [&](double q0) {
        return flow({q0, phi_prime(q0)}, 0.0, t, dt, pot).q;
    };

    ShootResult result;
    std::vector<double> roots;
    for (double seed : seeds) {
        double q0 = seed;
        double g = endpoint(q0) - x;
        bool ok = false;
        for (int iter = 0; iter < 30; ++iter) {
            if (std::abs(g) < tol) {
                ok = true;
                break;
            }
            const double h = 1e-6;
            double gp = (endpoint(q0 + h) - endpoint(q0 - h)) / (2.0 * h);
            if (!std::isfinite(gp) || std::abs(gp) < 1e-14) break;
            double step = g / gp;
            if (!std::isfinite(step) || std::abs(step) > 6.0 * two_pi) break;
            q0 -= step;
            g = endpoint(q0) - x;
        }
        result.seed_residuals.push_back(std::abs(g));
        if (!ok) continue;
        bool dup = false;
        for (double r : roots)
            if (std::abs(r - q0) < 1e-6) dup = true;
        if (dup) continue;
        roots.push_back(q0);
        result.solutions.push_back(
            integrate_el({q0, phi_prime(q0)}, 0.0, t, dt, pot));
    }
    return result;
}

PhasePoint poincare_map(PhasePoint point, const Potential& pot, double dt) {
    return flow(point, 0.0, two_pi, dt, pot);
}

std::array<double, 4> poincare_jacobian(PhasePoint point, const Potential& pot, double h,
                                        double dt) {
    PhasePoint qp = poincare_map({point.q + h, point.p}, pot, dt);
    PhasePoint qm = poincare_map({point.q - h, point.p}, pot, dt);
    PhasePoint pp = poincare_map({point.q, point.p + h}, pot, dt);
    PhasePoint pm = poincare_map({point.q, point.p - h}, pot, dt);
    return {(qp.q - qm.q) / (2 * h), (pp.q - pm.q) / (2 * h),
            (qp.p - qm.p) / (2 * h), (pp.p - pm.p) / (2 * h)};
}

namespace {

struct Defect {
    double g1, g2;
    double norm() const { return std::max(std::abs(g1), std::abs(g2)); }
};

Defect return_defect(PhasePoint z, int periods, int w, double dt, const Potential& pot) {
    PhasePoint cur = z;
    for (int k = 0; k < periods; ++k) cur = poincare_map(cur, pot, dt);
    return {cur.q - z.q - two_pi * w, cur.p - z.p};
}

}  // namespace

PeriodicOrbitScan find_periodic_orbits(const Potential& pot, int q_seeds, double p_min,
                                       double p_max, int p_seeds, int periods,
                                       double tol) {
    if (q_seeds < 1 || p_seeds < 1)
        throw ParameterError("find_periodic_orbits: empty seed grid");
    if (periods < 1 || periods > 4)
        throw ParameterError("find_periodic_orbits: periods in 1..4");
    if (!(p_min < p_max)) throw ParameterError("find_periodic_orbits: need p_min < p_max");
    if (!(tol > 0.0)) throw ParameterError("find_periodic_orbits: need tol > 0");

    const int w_max = 3 * periods;
    const double dt_scan = 2e-3;   // flow error ~1e-11, well below any tol in use
    const double dt_fine = 1e-3;
    const double prefilter = 1.2;  // Newton only near the seed's own basin

    PeriodicOrbitScan scan;
    scan.seeds_total = q_seeds * p_seeds;

    auto newton = [&](PhasePoint z0, int w, double dt, double target,
                      bool& singular) -> std::pair<PhasePoint, double> {
        PhasePoint z = z0;
        Defect f = return_defect(z, periods, w, dt, pot);
        for (int iter = 0; iter < 20; ++iter) {
            if (f.norm() < target) return {z, f.norm()};
            const double h = 1e-7;
            Defect fq = return_defect({z.q + h, z.p}, periods, w, dt, pot);
            Defect fp = return_defect({z.q, z.p + h}, periods, w, dt, pot);
            const double a = (fq.g1 - f.g1) / h, b = (fp.g1 - f.g1) / h;
            const double c = (fq.g2 - f.g2) / h, d = (fp.g2 - f.g2) / h;
            const double det = a * d - b * c;
            const double scale = std::max({std::abs(a), std::abs(b), std::abs(c),
                                           std::abs(d), 1.0});
            if (std::abs(det) < 1e-10 * scale * scale) {
                singular = true;
                return {z, f.norm()};
            }
            const double dq = (d * f.g1 - b * f.g2) / det;
            const double dp = (a * f.g2 - c * f.g1) / det;
            if (!std::isfinite(dq) || !std::isfinite(dp) ||
                std::max(std::abs(dq), std::abs(dp)) > 4.0)
                return {z, f.norm()};
            z = {z.q - dq, z.p - dp};
            f = return_defect(z, periods, w, dt, pot);
        }
        return {z, f.norm()};
    };

    for (int iq = 0; iq < q_seeds; ++iq) {
        for (int ip = 0; ip < p_seeds; ++ip) {
            PhasePoint seed(iq * two_pi / q_seeds,
                            p_min + (p_max - p_min) * (ip + 0.5) / p_seeds);
            PhasePoint img = seed;
            for (int k = 0; k < periods; ++k) img = poincare_map(img, pot, dt_scan);
            const int w = static_cast<int>(std::lround((img.q - seed.q) / two_pi));
            if (std::abs(w) > w_max) continue;
            Defect f0{img.q - seed.q - two_pi * w, img.p - seed.p};
            if (f0.norm() > prefilter) continue;
            ++scan.seeds_attempted;

            bool singular = false;
            auto [z, res] = newton(seed, w, dt_scan, std::min(tol, 1e-6), singular);
            if (singular) {
                ++scan.seeds_singular;
                continue;
            }
            if (res >= std::min(tol, 1e-6)) continue;
            // Polish at the fine step and re-measure the residual.
            auto [zf, resf] = newton(z, w, dt_fine, tol * 0.1, singular);
            if (singular) {
                ++scan.seeds_singular;
                continue;
            }
            if (resf >= tol) continue;
            ++scan.seeds_converged;

            PoincareFixedPoint fp{{wrap_angle(zf.q), zf.p}, w, resf};
            bool dup = false;
            for (const auto& known : scan.fixed_points) {
                if (circle_distance(known.point.q - fp.point.q) < 1e-4 &&
                    std::abs(known.point.p - fp.point.p) < 1e-4)
                    dup = true;
            }
            if (!dup) scan.fixed_points.push_back(fp);
        }
    }
    if (scan.seeds_attempted > 0 &&
        scan.seeds_singular > scan.seeds_attempted / 2)
        scan.degenerate_family = true;
    std::sort(scan.fixed_points.begin(), scan.fixed_points.end(),
              [](const auto& a, const auto& b) { return a.point.q < b.point.q; });
    return scan;
}

}  // namespace burgers
