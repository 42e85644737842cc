#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hartogs/kernels.hpp"
#include "ray_internal.hpp"

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Hard ceiling on the fan size of a single estimate.
constexpr std::size_t kMaxRays = 4096;
constexpr int kMaxAimCandidates = 8;
constexpr int kMaxAimIterations = 24;
constexpr int kMaxPolishEvaluations = 48;
constexpr double kPolishWidth = 1e-6;
constexpr std::size_t kMaxPolishBrackets = 6;

double wrap(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

// Angular width of the interval from fan[i] to the next ray (cyclic).
double gap_after(const std::vector<RayOutcome>& fan, std::size_t i) {
    const std::size_t j = (i + 1) % fan.size();
    double w = fan[j].theta - fan[i].theta;
    if (w <= 0) w += kTwoPi;
    return w;
}

class FanBuilder {
public:
    FanBuilder(const ProblemSpec& spec, Cx a, const EngineConfig& cfg, bool parallel)
        : spec_(spec), a_(a), cfg_(cfg), parallel_(parallel) {}

    std::vector<RayOutcome> trace(const std::vector<double>& thetas) const {
        return parallel_ ? trace_fan(spec_, a_, thetas, cfg_) : trace_fan_serial(spec_, a_, thetas, cfg_);
    }

    RayOutcome trace_one(double theta) const { return detail::trace_ray_unchecked(spec_, a_, wrap(theta), cfg_); }

    void add(std::vector<RayOutcome> rays) {
        for (auto& r : rays) fan_.push_back(std::move(r));
        std::sort(fan_.begin(), fan_.end(),
                  [](const RayOutcome& x, const RayOutcome& y) { return x.theta < y.theta; });
    }

    void add(RayOutcome r) {
        auto it = std::lower_bound(fan_.begin(), fan_.end(), r.theta,
                                   [](const RayOutcome& x, double th) { return x.theta < th; });
        fan_.insert(it, std::move(r));
    }

    double best() const {
        double b = kInf;
        for (const auto& r : fan_)
            if (!r.capped()) b = std::min(b, r.failure_radius);
        return b;
    }

    std::vector<RayOutcome>& fan() { return fan_; }
    const EngineConfig& cfg() const { return cfg_; }

private:
    const ProblemSpec& spec_;
    Cx a_;
    const EngineConfig& cfg_;
    bool parallel_;
    std::vector<RayOutcome> fan_;
};

double rel_disagreement(double r1, double r2) {
    const double lo = std::min(r1, r2);
    if (lo <= 0) return kInf;
    return std::abs(r1 - r2) / lo;
}

// Angular miss of a capped ray relative to its closest approach: small
// values mean the ray grazed an obstruction.
double angular_miss(const RayOutcome& r) {
    if (!r.capped() || !std::isfinite(r.min_proximity)) return kInf;
    if (!(r.min_proximity < 0.5 * r.start_proximity)) return kInf;
    return r.min_proximity / std::max(r.t_at_min_proximity, 1e-300);
}

bool near_hit(const RayOutcome& r, const EngineConfig& cfg) {
    return r.capped() && std::isfinite(r.min_proximity) && r.t_at_min_proximity > 0 &&
           r.min_proximity <= 10.0 * cfg.eps_sing * r.t_at_min_proximity;
}

// Bisect intervals whose end rays disagree or sit next to an obstruction.
// Returns false when the depth limit was hit with intervals still flagged.
bool refine(FanBuilder& fb, int& rounds) {
    const auto& cfg = fb.cfg();
    for (int round = 0; round < cfg.refine_depth; ++round) {
        auto& fan = fb.fan();
        const std::size_t n = fan.size();
        std::vector<double> miss(n);
        for (std::size_t i = 0; i < n; ++i) miss[i] = angular_miss(fan[i]);
        auto local_min_miss = [&](std::size_t k) {
            const double m = miss[k];
            if (!(m < 0.25)) return false;
            return m <= miss[(k + n - 1) % n] && m <= miss[(k + 1) % n];
        };
        std::vector<double> fresh;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            const double w = gap_after(fan, i);
            if (w < 1e-12) continue;
            bool flag = rel_disagreement(fan[i].failure_radius, fan[j].failure_radius) > cfg.refine_trigger;
            flag = flag || near_hit(fan[i], cfg) || near_hit(fan[j], cfg);
            flag = flag || local_min_miss(i) || local_min_miss(j);
            if (flag) fresh.push_back(wrap(fan[i].theta + 0.5 * w));
        }
        if (fresh.empty()) return true;
        if (fan.size() + fresh.size() > kMaxRays) return false;
        fb.add(fb.trace(fresh));
        ++rounds;
    }
    return false;
}

// Chase the estimated obstruction locations of grazing rays.
void aim(FanBuilder& fb) {
    const auto& cfg = fb.cfg();
    struct Candidate {
        Cx target;
        double dist;
    };
    std::vector<Candidate> cands;
    {
        const double bound = std::min(fb.best(), cfg.t_cap);
        for (const auto& r : fb.fan()) {
            if (r.has_obstruction()) {
                const double d = std::abs(r.obstruction);
                if (d > 0 && d < bound * (1.0 - 1e-9)) cands.push_back({r.obstruction, d});
            }
            // Interior near misses, e.g. a small hole the ray passed by.
            if (std::isfinite(r.graze_proximity) && r.graze_proximity < 0.5 * r.start_proximity) {
                const double d = std::abs(r.graze_obstruction);
                if (d > 0 && d < bound * (1.0 - 1e-9)) cands.push_back({r.graze_obstruction, d});
            }
        }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& x, const Candidate& y) { return x.dist < y.dist; });
    std::vector<double> tried;
    int used = 0;
    for (const auto& c : cands) {
        if (used >= kMaxAimCandidates) break;
        const double th0 = wrap(std::arg(c.target));
        bool dup = false;
        for (double t : tried)
            if (std::abs(t - th0) < 1e-12) dup = true;
        if (dup) continue;
        tried.push_back(th0);
        ++used;

        Cx target = c.target;
        double last_theta = -1.0;
        for (int it = 0; it < kMaxAimIterations; ++it) {
            const double th = wrap(std::arg(target));
            if (std::abs(th - last_theta) < 1e-15) break;
            last_theta = th;
            RayOutcome ray = fb.trace_one(th);
            const bool hit = !ray.capped() && ray.failure_radius <= std::abs(target) * (1.0 + 1e-6);
            const bool more = ray.has_obstruction();
            const Cx next = ray.obstruction;
            fb.add(std::move(ray));
            if (hit || !more) break;
            const double bound = std::min(fb.best(), cfg.t_cap);
            if (!(std::abs(next) < bound)) break;
            if (std::abs(next - target) <= 1e-15 * std::abs(target)) break;
            target = next;
        }
    }
}

// Golden-section search of the failure radius around discrete local
// minima of boundary exits (where the radius varies continuously).
void polish(FanBuilder& fb) {
    auto& fan = fb.fan();
    const std::size_t n = fan.size();
    if (n < 3) return;
    const double best = fb.best();
    if (!std::isfinite(best)) return;
    struct Bracket {
        double lo, hi, r;
    };
    std::vector<Bracket> brackets;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = fan[i];
        if (r.capped() || (r.kind != RayKind::ExitRegion && r.kind != RayKind::ExitAmbient)) continue;
        const auto& prev = fan[(i + n - 1) % n];
        const auto& next = fan[(i + 1) % n];
        if (prev.capped() || next.capped()) continue;
        if (r.failure_radius > prev.failure_radius || r.failure_radius > next.failure_radius) continue;
        if (r.failure_radius > 1.25 * best) continue;
        // Flat neighbourhood: nothing left to gain at this tolerance.
        const double rise = std::max(prev.failure_radius, next.failure_radius) - r.failure_radius;
        if (rise <= 0.1 * fb.cfg().bisect_tol * r.failure_radius) continue;
        const double lo = r.theta - gap_after(fan, (i + n - 1) % n);
        const double hi = r.theta + gap_after(fan, i);
        if (hi - lo < kPolishWidth) continue;
        brackets.push_back({lo, hi, r.failure_radius});
    }
    std::stable_sort(brackets.begin(), brackets.end(), [](const Bracket& x, const Bracket& y) { return x.r < y.r; });
    if (brackets.size() > kMaxPolishBrackets) brackets.resize(kMaxPolishBrackets);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (const auto& b : brackets) {
        double lo = b.lo, hi = b.hi;
        auto f = [&](double th) {
            RayOutcome ray = fb.trace_one(th);
            const double r = ray.failure_radius;
            fb.add(std::move(ray));
            return r;
        };
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        int evals = 2;
        while (hi - lo > kPolishWidth && evals < kMaxPolishEvaluations) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = f(x2);
            }
            ++evals;
        }
    }
}

}  // namespace

namespace detail {

RhoEstimate rho_estimate_planar(const ProblemSpec& spec, Cx a, const EngineConfig& cfg, bool parallel) {
    FanBuilder fb(spec, a, cfg, parallel);
    std::vector<double> thetas(static_cast<std::size_t>(cfg.n_rays_init));
    for (int i = 0; i < cfg.n_rays_init; ++i) thetas[i] = kTwoPi * i / cfg.n_rays_init;
    fb.add(fb.trace(thetas));

    RhoEstimate est;
    const bool converged = refine(fb, est.refinement_rounds);
    aim(fb);
    polish(fb);

    auto& fan = fb.fan();
    est.rays_used = static_cast<int>(fan.size());
    std::size_t arg = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i)
        if (!fan[i].capped() && (arg == fan.size() || fan[i].failure_radius < fan[arg].failure_radius)) arg = i;

    if (arg == fan.size()) {
        est.value = kInf;
        est.lower = cfg.t_cap;
        est.upper = kInf;
        est.kind = RayKind::Capped;
    } else {
        est.value = fan[arg].failure_radius;
        est.argmin_theta = fan[arg].theta;
        est.kind = fan[arg].kind;
        est.upper = est.value;
        est.lower = est.value * (1.0 - cfg.bisect_tol);
        if (!converged) {
            // Widen only if an unresolved jump sits near the minimum.
            const std::size_t n = fan.size();
            for (std::size_t i = 0; i < n && !est.widened; ++i) {
                const auto& r1 = fan[i];
                const auto& r2 = fan[(i + 1) % n];
                if (r1.capped() || r2.capped()) continue;
                if (rel_disagreement(r1.failure_radius, r2.failure_radius) <= cfg.refine_trigger) continue;
                if (std::min(r1.failure_radius, r2.failure_radius) <= est.value * (1.0 + cfg.refine_trigger))
                    est.widened = true;
            }
            if (est.widened) est.lower = est.value * (1.0 - cfg.refine_trigger);
        }
    }
    est.factor_values = {est.value};
    est.fan = std::move(fan);
    return est;
}

}  // namespace detail

RhoEstimate rho_estimate(const ProblemSpec& spec, std::span<const Cx> a, const EngineConfig& cfg) {
    validate_config(cfg);
    require_valid(spec);
    if (!contains(spec.region, a)) throw OutsideDomain("base point is outside the region");
    if (!spec.region.is_product()) return detail::rho_estimate_planar(spec, a[0], cfg, true);

    RhoEstimate out;
    out.value = kInf;
    out.lower = kInf;
    out.upper = kInf;
    out.factor_values.clear();
    bool any_finite = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const ProblemSpec f = factor_problem(spec, j);
        RhoEstimate e = detail::rho_estimate_planar(f, a[j], cfg, true);
        out.factor_values.push_back(e.value);
        out.rays_used += e.rays_used;
        out.refinement_rounds = std::max(out.refinement_rounds, e.refinement_rounds);
        out.widened = out.widened || e.widened;
        if (!e.unbounded()) {
            if (!any_finite || e.value < out.value) {
                out.value = e.value;
                out.argmin_theta = e.argmin_theta;
                out.argmin_factor = static_cast<int>(j);
                out.kind = e.kind;
            }
            any_finite = true;
            out.upper = std::min(out.upper, e.upper);
        }
        out.lower = std::min(out.lower, e.lower);
    }
    if (!any_finite) {
        out.value = kInf;
        out.upper = kInf;
        out.lower = cfg.t_cap;
        out.kind = RayKind::Capped;
    }
    return out;
}

RhoEstimate rho_estimate(const ProblemSpec& spec, Cx a, const EngineConfig& cfg) {
    return rho_estimate(spec, std::span<const Cx>(&a, 1), cfg);
}

}  // namespace hartogs
