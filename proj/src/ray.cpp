#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ray_internal.hpp"

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Local picture of the continuation at one point of the path.
struct Probe {
    Cx g{};
    double abs_g = 0.0;
    // zeta-distance estimates: to the nearest branch point of the inverse,
    // to the region boundary, to the ambient boundary.
    double d_sing = kInf;
    double d_region = kInf;
    double d_ambient = kInf;
    // Estimated zeta-offset to the nearest obstruction.
    Cx offset{kNaN, 0.0};
    double proximity = kInf;
};

class RayIntegrator {
public:
    RayIntegrator(const ProblemSpec& spec, double theta, const EngineConfig& cfg)
        : region_(spec.region), ambient_(spec.ambient), frame_(spec.frame), dir_(std::polar(1.0, theta)),
          cfg_(cfg) {}

    bool rhs(Cx z, Cx& out) const {
        if (!finite(z) || frame_excludes(frame_, z)) return false;
        const Cx g = frame_eval(frame_, z);
        if (g == Cx{} || !finite(g)) return false;
        out = dir_ / g;
        return finite(out);
    }

    struct Step {
        Cx z{};
        Cx k7{};
        double err = kInf;
        bool ok = false;
    };

    Step step(Cx z, Cx k1, double h) const {
        Step s;
        Cx k2, k3, k4, k5, k6, k7;
        if (!rhs(z + h * (a21 * k1), k2)) return s;
        if (!rhs(z + h * (a31 * k1 + a32 * k2), k3)) return s;
        if (!rhs(z + h * (a41 * k1 + a42 * k2 + a43 * k3), k4)) return s;
        if (!rhs(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5)) return s;
        if (!rhs(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6)) return s;
        const Cx z5 = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        if (!rhs(z5, k7)) return s;
        const Cx err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale = cfg_.atol + cfg_.rtol * std::max(std::abs(z), std::abs(z5));
        s.z = z5;
        s.k7 = k7;
        s.err = std::abs(err) / scale;
        s.ok = std::isfinite(s.err);
        return s;
    }

    bool inside(Cx z) const { return contains(region_, z) && contains(ambient_, z); }
    bool inside_ambient(Cx z) const { return contains(ambient_, z); }

    Probe probe(Cx z) const {
        Probe p;
        const FrameJet jet = frame_jet(frame_, z);
        p.g = jet.g;
        p.abs_g = std::abs(jet.g);
        // Order-adaptive (Halley-type) estimate of the zeta-offset to the
        // branch point: exact for exponential frames and for monomial
        // frames near their zero or pole.
        const Cx denom = 2.0 * jet.dg * jet.dg - jet.g * jet.d2g;
        if (denom != Cx{}) {
            const Cx off = -jet.g * jet.g * jet.dg / denom;
            if (finite(off)) {
                p.d_sing = std::abs(off);
                p.offset = off;
                p.proximity = p.d_sing;
            }
        }
        const double gap_r = boundary_gap(region_, z);
        const double gap_a = boundary_gap(ambient_, z);
        p.d_region = p.abs_g * gap_r;
        p.d_ambient = p.abs_g * gap_a;
        if (p.d_region < p.proximity) {
            if (auto w = nearest_complement_point(region_, z)) {
                p.proximity = p.d_region;
                p.offset = jet.g * (*w - z);
            }
        }
        return p;
    }

    const EngineConfig& cfg() const { return cfg_; }
    Cx dir() const { return dir_; }

private:
    const Domain& region_;
    const Domain& ambient_;
    const Frame& frame_;
    Cx dir_;
    const EngineConfig& cfg_;
};

}  // namespace

bool RayOutcome::has_obstruction() const { return finite(obstruction); }

std::string to_string(RayKind k) {
    switch (k) {
        case RayKind::ExitRegion: return "ExitRegion";
        case RayKind::ExitAmbient: return "ExitAmbient";
        case RayKind::Singularity: return "Singularity";
        case RayKind::StepCollapse: return "StepCollapse";
        case RayKind::Capped: return "Capped";
    }
    return "?";
}

void validate_config(const EngineConfig& c) {
    auto fail = [](const char* what) { throw InvalidSpec(std::string("engine config: ") + what); };
    if (c.n_rays_init < 8) fail("n_rays_init must be >= 8");
    if (c.refine_depth < 0) fail("refine_depth must be >= 0");
    if (!(c.refine_trigger > 0)) fail("refine_trigger must be positive");
    if (!(c.rtol > 0 && c.rtol < 1)) fail("rtol must lie in (0, 1)");
    if (!(c.atol > 0 && c.atol < 1)) fail("atol must lie in (0, 1)");
    if (!(c.h_min > 0)) fail("h_min must be positive");
    if (!(c.t_cap > 0) || !std::isfinite(c.t_cap)) fail("t_cap must be positive and finite");
    if (!(c.eps_sing > 0)) fail("eps_sing must be positive");
    if (!(c.z_max > 1)) fail("z_max must exceed 1");
    if (!(c.bisect_tol > 0) || !(c.bisect_tol < 1e-3 * c.t_cap)) fail("bisect_tol must lie in (0, 1e-3 t_cap)");
    if (!(c.bisect_tol < 0.1)) fail("bisect_tol is relative and must be < 0.1");
    if (c.threads < 0) fail("threads must be >= 0");
    if (c.max_steps < 1) fail("max_steps must be positive");
}

namespace detail {

RayRun integrate_ray(const ProblemSpec& spec, Cx a, double theta, double t_end, const EngineConfig& cfg,
                     bool record_path) {
    RayIntegrator ode(spec, theta, cfg);
    RayRun run;
    RayOutcome& out = run.outcome;
    out.theta = theta;

    double t = 0.0;
    Cx z = a;
    Cx k1;
    if (!ode.rhs(z, k1)) throw EvaluationError("frame is not defined at the base point");
    if (record_path) run.path.push_back({t, z});

    const bool zero_outside = !contains(spec.ambient, Cx{});

    auto finish = [&](RayKind kind, double radius) {
        out.kind = kind;
        out.failure_radius = radius;
        out.witness = z;
        run.z_end = z;
        return run;
    };

    // Scale for the first step and the step-collapse floor.
    Probe p0 = ode.probe(z);
    double scale0 = 1.0;
    for (double s : {p0.d_sing, p0.d_region, p0.d_ambient, std::abs(z) * p0.abs_g})
        if (std::isfinite(s) && s > 0) scale0 = std::min(scale0, s);
    double h = 0.01 * scale0;
    out.start_proximity = p0.proximity;
    double err_prev = 1e-4;

    // Periodic-orbit detection (the ODE is autonomous, so returning to a
    // means the continuation repeats forever).
    struct Node {
        double t;
        Cx z;
        Cx k1;
        double h_next;
        double d;
    };
    std::array<Node, 2> hist{};
    int hist_n = 0;
    const double close_tol = 1e-6 * std::max(1.0, std::abs(a));

    // Last two proximity samples, for interior local minima.
    struct Sample {
        double t;
        double prox;
        Cx obstruction;
    };
    std::array<Sample, 2> prox_hist{};
    int prox_n = 0;

    for (;;) {
        const Probe p = t == 0.0 ? p0 : ode.probe(z);
        if (p.abs_g < out.min_abs_g) {
            out.min_abs_g = p.abs_g;
            out.t_at_min_abs_g = t;
        }
        if (p.proximity < out.min_proximity) {
            out.min_proximity = p.proximity;
            out.t_at_min_proximity = t;
            out.obstruction = t * ode.dir() + p.offset;
        }
        if (t > 0.0 && std::isfinite(p.proximity)) {
            const Sample cur{t, p.proximity, t * ode.dir() + p.offset};
            if (prox_n == 2 && prox_hist[1].prox < prox_hist[0].prox && prox_hist[1].prox <= cur.prox &&
                prox_hist[1].prox / prox_hist[1].t < out.graze_proximity / std::max(out.t_at_graze, 1e-300)) {
                out.graze_proximity = prox_hist[1].prox;
                out.t_at_graze = prox_hist[1].t;
                out.graze_obstruction = prox_hist[1].obstruction;
            }
            prox_hist[0] = prox_hist[1];
            prox_hist[1] = cur;
            prox_n = std::min(prox_n + 1, 2);
        }

        if (t > 0.0) {
            if (p.d_sing <= cfg.eps_sing * t) return finish(RayKind::Singularity, t);
            const double loc = 0.1 * cfg.bisect_tol * t;
            if (p.d_ambient <= loc) return finish(RayKind::ExitAmbient, std::min(t + p.d_ambient, t_end));
            if (p.d_region <= loc) return finish(RayKind::ExitRegion, std::min(t + p.d_region, t_end));
        }
        if (std::abs(z) > cfg.z_max || (zero_outside && std::abs(z) < 1.0 / cfg.z_max)) {
            // The obstruction estimate stays away while z runs to 0 or
            // infinity: that takes unbounded zeta-time.
            out.escaped = true;
            run.z_end = z;
            out.witness = z;
            out.kind = RayKind::Capped;
            out.failure_radius = cfg.t_cap;
            return run;
        }
        if (t >= t_end) {
            run.reached = true;
            return finish(RayKind::Capped, t_end);
        }
        if (out.steps >= cfg.max_steps) {
            out.truncated = true;
            return finish(RayKind::Capped, cfg.t_cap);
        }

        h = std::min(h, t_end - t);
        const double lim = 0.9 * std::min(p.d_sing, p.d_region);
        if (std::isfinite(lim)) h = std::min(h, lim);

        auto s = ode.step(z, k1, h);
        if (!s.ok || s.err > 1.0) {
            const double fac = s.ok ? std::max(0.2, 0.9 * std::pow(s.err, -0.2)) : 0.25;
            h *= fac;
            if (h < cfg.h_min * std::max(t, scale0)) return finish(RayKind::StepCollapse, t);
            continue;
        }

        if (!ode.inside(s.z)) {
            // Crossing inside this step: bisect on the step length using
            // fresh single steps from the last accepted point.
            double lo = 0.0, hi = h;
            Cx z_lo = z;
            bool hi_outside_ambient = !ode.inside_ambient(s.z);
            while (hi - lo > 0.1 * cfg.bisect_tol * std::max(t + lo, 1e-300)) {
                const double mid = 0.5 * (lo + hi);
                auto sm = ode.step(z, k1, mid);
                if (sm.ok && ode.inside(sm.z)) {
                    lo = mid;
                    z_lo = sm.z;
                } else {
                    hi = mid;
                    hi_outside_ambient = !sm.ok || !ode.inside_ambient(sm.z);
                }
                if (hi - lo <= std::numeric_limits<double>::epsilon() * (t + hi)) break;
            }
            z = z_lo;
            if (record_path) run.path.push_back({t + lo, z});
            const double r = std::min(t + 0.5 * (lo + hi), t_end);
            return finish(hi_outside_ambient ? RayKind::ExitAmbient : RayKind::ExitRegion, r);
        }

        const double h_used = h;
        t += h;
        z = s.z;
        k1 = s.k7;
        ++out.steps;
        if (record_path) run.path.push_back({t, z});

        const double e = std::max(s.err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        err_prev = std::max(e, 1e-4);
        h = h_used * fac;

        // Periodic orbit check on the last three nodes.
        const double d = std::abs(z - a);
        if (hist_n == 2 && hist[1].d < hist[0].d && hist[1].d <= d) {
            const double reach = std::abs(z - hist[0].z);
            if (hist[1].d < reach) {
                const Node& n0 = hist[0];
                const double span = t - n0.t;
                double lo = 0.0, hi = span;
                auto dist_at = [&](double sl) {
                    auto sm = ode.step(n0.z, n0.k1, sl);
                    return sm.ok ? std::abs(sm.z - a) : kInf;
                };
                const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
                double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
                double f1 = dist_at(x1), f2 = dist_at(x2);
                for (int it = 0; it < 60 && hi - lo > 1e-14 * span; ++it) {
                    if (f1 < f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - gr * (hi - lo);
                        f1 = dist_at(x1);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + gr * (hi - lo);
                        f2 = dist_at(x2);
                    }
                }
                if (std::min(f1, f2) <= close_tol && n0.t + lo > 0.0) {
                    out.periodic = true;
                    return finish(RayKind::Capped, cfg.t_cap);
                }
            }
        }
        if (hist_n < 2) {
            hist[hist_n++] = {t, z, k1, h, d};
        } else {
            hist[0] = hist[1];
            hist[1] = {t, z, k1, h, d};
        }
    }
}

}  // namespace detail

RayOutcome trace_ray(const ProblemSpec& spec, Cx a, double theta, const EngineConfig& cfg) {
    validate_config(cfg);
    if (spec.region.is_product()) throw DimensionMismatch("trace_ray needs a planar problem; use factor_problem");
    require_valid(spec);
    if (!contains(spec.region, a)) throw OutsideDomain("base point is outside the region");
    return detail::trace_ray_unchecked(spec, a, theta, cfg);
}

}  // namespace hartogs
