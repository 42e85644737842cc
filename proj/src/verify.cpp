#include "hartogs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hartogs/kernels.hpp"

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_plane(const Domain& d) { return std::holds_alternative<Plane>(d.shape); }
bool is_cstar(const Domain& d) { return std::holds_alternative<PuncturedPlane>(d.shape); }

OracleValue finite(double v) {
    if (v == kInf) return {OracleValue::Kind::Unbounded, kInf};
    return {OracleValue::Kind::Finite, v};
}

OracleValue planar_oracle(const ProblemSpec& spec, Cx a) {
    const OracleValue none{};
    if (!contains(spec.region, a)) return none;
    return std::visit(
        overloaded{
            [&](const ConstOne&) { return finite(boundary_gap(spec.region, a)); },
            [&](const ExpFrame&) {
                if (is_plane(spec.ambient) && is_plane(spec.region)) return finite(std::exp(a.real()));
                return none;
            },
            [&](const Monomial& m) {
                if (!is_cstar(spec.ambient) || !is_cstar(spec.region)) return none;
                const double p = m.k + 1.0;
                return finite(std::pow(std::abs(a), p) / std::abs(p));
            },
            [&](const InvZ&) {
                if (is_cstar(spec.ambient) && is_cstar(spec.region)) return OracleValue{OracleValue::Kind::Unbounded, kInf};
                return none;
            },
            [&](const Scaled& s) {
                OracleValue inner = planar_oracle(ProblemSpec{spec.ambient, spec.region, *s.inner}, a);
                if (inner.kind == OracleValue::Kind::Finite) inner.value *= std::abs(s.c);
                return inner;
            },
            [&](const SplitProduct&) { return none; },
        },
        spec.frame.kind);
}

void rethrow_dims(const ProblemSpec& spec, std::size_t n) {
    if (spec.dimension() != n) throw DimensionMismatch("oracle_rho: point has the wrong number of coordinates");
}

}  // namespace

OracleValue oracle_rho(const ProblemSpec& spec, std::span<const Cx> a) {
    rethrow_dims(spec, a.size());
    if (!spec.region.is_product()) return planar_oracle(spec, a[0]);
    if (!spec.frame.is_product()) return {};
    OracleValue out{OracleValue::Kind::Unbounded, kInf};
    for (std::size_t j = 0; j < a.size(); ++j) {
        const OracleValue f = planar_oracle(factor_problem(spec, j), a[j]);
        if (!f.known()) return {};
        if (f.kind == OracleValue::Kind::Finite && (out.kind == OracleValue::Kind::Unbounded || f.value < out.value))
            out = f;
    }
    return out;
}

OracleValue oracle_rho(const ProblemSpec& spec, Cx a) { return oracle_rho(spec, std::span<const Cx>(&a, 1)); }

void PropertyReport::finish() { pass = worst_violation <= threshold; }

PropertyReport check_oracles(std::span<const OracleCase> cases, const EngineConfig& cfg, double rel_tol) {
    PropertyReport rep;
    rep.name = "oracles";
    rep.threshold = rel_tol;
    rep.worst_violation = -kInf;
    double max_rel = 0.0;
    for (const auto& c : cases) {
        for (const auto& p : c.points) {
            const OracleValue o = oracle_rho(c.spec, p);
            if (!o.known()) throw InvalidSpec("check_oracles: no closed form for case '" + c.label + "'");
        }
    }
    for (const auto& c : cases) {
        for (const auto& p : c.points) {
            const OracleValue o = oracle_rho(c.spec, p);
            const RhoEstimate e = rho_estimate(c.spec, p, cfg);
            double v;
            if (o.kind == OracleValue::Kind::Unbounded)
                v = e.unbounded() ? 0.0 : kInf;
            else if (e.unbounded())
                v = kInf;
            else
                v = std::abs(e.value - o.value) / o.value;
            if (v > rep.worst_violation) rep.worst_violation = v;
            if (v > rel_tol) rep.notes.push_back("mismatch in '" + c.label + "'");
            if (std::isfinite(v)) max_rel = std::max(max_rel, v);
            ++rep.samples;
        }
    }
    rep.metrics["max_rel_error"] = max_rel;
    rep.metrics["cases"] = static_cast<double>(cases.size());
    rep.finish();
    return rep;
}

PropertyReport check_lipschitz(const ProblemSpec& spec, std::span<const std::pair<Cx, Cx>> pairs,
                               const EngineConfig& cfg, double tol) {
    if (!std::holds_alternative<ConstOne>(spec.frame.kind))
        throw PreconditionError("check_lipschitz: only the constant frame dz is supported");
    std::vector<Cx> pts;
    pts.reserve(2 * pairs.size());
    for (const auto& [b, c] : pairs) {
        pts.push_back(b);
        pts.push_back(c);
    }
    const auto est = rho_at_points(spec, pts, cfg);
    PropertyReport rep;
    rep.name = "lipschitz";
    rep.threshold = tol;
    rep.worst_violation = -kInf;
    double max_width = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& eb = est[2 * i];
        const auto& ec = est[2 * i + 1];
        double v;
        if (eb.unbounded() && ec.unbounded())
            v = -std::abs(pairs[i].first - pairs[i].second);
        else if (eb.unbounded() || ec.unbounded())
            v = kInf;
        else {
            const double w = std::max(eb.bracket_width(), ec.bracket_width());
            max_width = std::max(max_width, w);
            v = std::abs(eb.value - ec.value) - std::abs(pairs[i].first - pairs[i].second) - 2.0 * w;
        }
        rep.worst_violation = std::max(rep.worst_violation, v);
        ++rep.samples;
    }
    rep.metrics["max_bracket_width"] = max_width;
    rep.finish();
    return rep;
}

PropertyReport check_submean(const ProblemSpec& spec, std::span<const Cx> centers, std::span<const double> radii,
                             int n_angles, const EngineConfig& cfg, double tol) {
    if (centers.size() != radii.size()) throw PreconditionError("check_submean: centers and radii differ in length");
    if (n_angles < 3) throw PreconditionError("check_submean: need at least 3 angles");
    if (spec.region.is_product()) throw DimensionMismatch("check_submean: planar problems only");
    const std::size_t m = static_cast<std::size_t>(n_angles);
    std::vector<Cx> pts;
    pts.reserve(centers.size() * (m + 1));
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const Cx c = centers[i];
        const double r = radii[i];
        if (!(r > 0)) throw PreconditionError("check_submean: radii must be positive");
        if (!contains(spec.region, c) || !(boundary_gap(spec.region, c) > r))
            throw OutsideDomain("check_submean: circle leaves the region");
        pts.push_back(c);
        for (std::size_t j = 0; j < m; ++j)
            pts.push_back(c + std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m)));
    }
    const auto est = rho_at_points(spec, pts, cfg);
    auto neg_log = [](const RhoEstimate& e) { return e.unbounded() ? -kInf : -std::log(e.value); };

    PropertyReport rep;
    rep.name = "submean";
    rep.threshold = tol;
    rep.worst_violation = -kInf;
    double worst_abs = 0.0;
    std::size_t vacuous = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const std::size_t base = i * (m + 1);
        const double uc = neg_log(est[base]);
        std::size_t unb = est[base].unbounded() ? 1 : 0;
        double sum = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            if (est[base + j].unbounded()) ++unb;
            sum += neg_log(est[base + j]);
        }
        ++rep.samples;
        if (unb == m + 1) {
            ++vacuous;
            continue;
        }
        double v;
        if (unb > 0)
            // -log rho is either psh or identically -inf; a mix is an
            // engine inconsistency.
            v = kInf;
        else {
            v = uc - sum / static_cast<double>(m);
            worst_abs = std::max(worst_abs, std::abs(v));
        }
        rep.worst_violation = std::max(rep.worst_violation, v);
    }
    if (vacuous > 0 && vacuous == centers.size()) rep.notes.push_back("identically -inf branch (rho unbounded)");
    rep.metrics["worst_abs_margin"] = worst_abs;
    rep.metrics["vacuous_circles"] = static_cast<double>(vacuous);
    rep.metrics["angles"] = static_cast<double>(m);
    rep.finish();
    return rep;
}

PropertyReport check_kobayashi_disk(std::span<const Cx> points, const EngineConfig& cfg, double tol) {
    const ProblemSpec spec{make_plane(), make_disk(0.0, 1.0), make_const_one()};
    const auto est = rho_at_points(spec, points, cfg);
    PropertyReport rep;
    rep.name = "kobayashi";
    rep.threshold = 0.0;
    rep.worst_violation = -kInf;
    std::size_t strict = 0;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double a2 = std::norm(points[i]);
        const double bound = 1.0 - a2;
        const double rho = est[i].value;
        rep.worst_violation = std::max(rep.worst_violation, rho - bound * (1.0 + tol));
        if (points[i] == Cx(0.0, 0.0)) {
            rep.metrics["rel_error_at_0"] = std::abs(rho - 1.0);
        } else {
            ++nonzero;
            if (rho < bound * (1.0 - 1e-9)) ++strict;
        }
        ++rep.samples;
    }
    rep.metrics["strict_points"] = static_cast<double>(strict);
    rep.metrics["nonzero_points"] = static_cast<double>(nonzero);
    rep.finish();
    return rep;
}

PropertyReport check_boundary_decay(const ProblemSpec& spec, Cx boundary_point, std::span<const Cx> sequence,
                                    const EngineConfig& cfg) {
    if (sequence.size() < 4) throw PreconditionError("check_boundary_decay: need at least 4 points");
    const auto est = rho_at_points(spec, sequence, cfg);
    const std::size_t n = sequence.size();
    const std::size_t head = n / 2;
    PropertyReport rep;
    rep.name = "decay";
    rep.threshold = 10.0 * cfg.bisect_tol;
    rep.worst_violation = -kInf;
    rep.samples = n;
    for (const auto& e : est) {
        if (e.unbounded()) {
            rep.worst_violation = kInf;
            rep.notes.push_back("unbounded value along the sequence");
            rep.finish();
            return rep;
        }
    }
    double c = 0.0;
    for (std::size_t k = 0; k < head; ++k) c = std::max(c, est[k].value / std::abs(sequence[k] - boundary_point));
    for (std::size_t k = head; k < n; ++k) {
        const double bound = c * std::abs(sequence[k] - boundary_point);
        rep.worst_violation = std::max(rep.worst_violation, (est[k].value - bound) / bound);
        if (k > 0)
            rep.worst_violation =
                std::max(rep.worst_violation, (est[k].value - est[k - 1].value) / est[k - 1].value);
    }
    const double first = est.front().value;
    const double last = est.back().value;
    rep.worst_violation = std::max(rep.worst_violation, (last - first / 10.0) / first);
    rep.metrics["ratio_bound"] = c;
    rep.metrics["first"] = first;
    rep.metrics["last"] = last;
    rep.finish();
    return rep;
}

namespace {

// Least-squares intercept of y against x.
double intercept(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (x.size() < 2 || den <= 0) return sy / n;
    return (sxx * sy - sx * sxy) / den;
}

}  // namespace

double convergence_radius(const ProblemSpec& spec, Cx a, const std::function<Cx(Cx)>& u, double r0, int n,
                          const EngineConfig& cfg) {
    if (n < 16) throw PreconditionError("convergence_radius: N must be at least 16");
    if (spec.region.is_product()) throw DimensionMismatch("convergence_radius: planar problems only");
    if (!(r0 > 0)) throw PreconditionError("convergence_radius: r0 must be positive");
    const RhoEstimate rho = rho_estimate(spec, a, cfg);
    if (!(r0 < rho.lower)) throw PreconditionError("convergence_radius: r0 is not below the radius lower bound");

    const std::size_t m = 4 * static_cast<std::size_t>(n);
    std::vector<Cx> zetas(m);
    for (std::size_t j = 0; j < m; ++j)
        zetas[j] = std::polar(r0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
    const auto z = phi_at_points(spec, a, zetas, cfg);
    std::vector<Cx> w(m);
    double wmax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        try {
            w[j] = u(z[j]);
        } catch (const std::exception& e) {
            throw EvaluationError(std::string("convergence_radius: u failed: ") + e.what());
        }
        if (!std::isfinite(w[j].real()) || !std::isfinite(w[j].imag()))
            throw EvaluationError("convergence_radius: u is not finite on the circle");
        wmax = std::max(wmax, std::abs(w[j]));
    }

    // |c_nu| r0^nu for nu = 0..n.
    std::vector<double> mag(static_cast<std::size_t>(n) + 1);
    for (std::size_t nu = 0; nu <= static_cast<std::size_t>(n); ++nu) {
        Cx s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += w[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * nu) % m) /
                                            static_cast<double>(m));
        mag[nu] = std::abs(s) / static_cast<double>(m);
    }
    const double floor = wmax * std::max(1e3 * std::numeric_limits<double>::epsilon(), 100.0 * cfg.rtol);
    std::vector<std::size_t> usable;
    for (std::size_t nu = 1; nu < mag.size(); ++nu)
        if (mag[nu] > floor) usable.push_back(nu);
    if (usable.size() < 4) return kInf;

    auto ratios = [&](std::size_t step) {
        std::vector<double> x, y;
        for (std::size_t nu : usable) {
            if (nu < step + 1 || !(mag[nu - step] > floor)) continue;
            x.push_back(1.0 / static_cast<double>(nu));
            y.push_back(std::pow(mag[nu] / mag[nu - step], 1.0 / static_cast<double>(step)) / r0);
        }
        return std::pair{x, y};
    };
    auto [x, y] = ratios(1);
    if (x.size() < 3) std::tie(x, y) = ratios(2);
    if (x.empty()) return kInf;
    // Top quartile of the resolved indices (x is ascending in nu).
    const std::size_t keep = std::min(x.size(), std::max<std::size_t>(3, x.size() / 4));
    std::vector<double> xt(x.end() - static_cast<std::ptrdiff_t>(keep), x.end());
    std::vector<double> yt(y.end() - static_cast<std::ptrdiff_t>(keep), y.end());
    const double inv_r = intercept(xt, yt);
    if (!(inv_r > 0)) return kInf;
    return 1.0 / inv_r;
}

ExhaustionField build_exhaustion(const GridField& field, const CellSet& psh_fail, std::span<const double> stage_radii) {
    if (stage_radii.empty()) throw PreconditionError("build_exhaustion: no stages");
    for (std::size_t i = 0; i < stage_radii.size(); ++i) {
        if (!(stage_radii[i] > 0)) throw PreconditionError("build_exhaustion: stage radii must be positive");
        if (i > 0 && !(stage_radii[i] > stage_radii[i - 1]))
            throw PreconditionError("build_exhaustion: stage radii must increase");
    }
    if (psh_fail.nx != field.nx || psh_fail.ny != field.ny || psh_fail.bits.size() != field.cells.size())
        throw DimensionMismatch("build_exhaustion: flag mask does not match the field");

    const std::size_t n = field.cells.size();
    const std::size_t stages = stage_radii.size();
    std::vector<double> u(n), d(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& c = field.cells[k];
        switch (c.status) {
            case CellStatus::Ok: u[k] = -std::log(c.value); break;
            case CellStatus::Unbounded: u[k] = -kInf; break;
            case CellStatus::OutsideDomain: u[k] = kInf; break;
        }
        d[k] = std::abs(field.center(static_cast<int>(k % field.nx), static_cast<int>(k / field.nx)));
        if (d[k] <= stage_radii.back() && u[k] == kInf)
            throw PreconditionError("build_exhaustion: -log rho is unbounded inside a stage");
    }

    // Flagged cells and their 8-neighbours.
    std::vector<std::uint8_t> near_flag(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (!psh_fail.bits[k]) continue;
        const int i = static_cast<int>(k % field.nx);
        const int j = static_cast<int>(k / field.nx);
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                const int a = i + di;
                const int b = j + dj;
                if (a < 0 || b < 0 || a >= field.nx || b >= field.ny) continue;
                near_flag[static_cast<std::size_t>(b) * field.nx + a] = 1;
            }
    }

    ExhaustionField out;
    out.lo = field.lo;
    out.hi = field.hi;
    out.nx = field.nx;
    out.ny = field.ny;
    out.stage_radii.assign(stage_radii.begin(), stage_radii.end());

    double c1 = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(d[k] <= stage_radii[0] || near_flag[k])) continue;
        if (!std::isfinite(u[k])) continue;
        if (u[k] > c1) {
            c1 = u[k];
            out.plateau_cell = k;
        }
    }
    if (c1 == -kInf) c1 = 0.0;
    c1 += 0.0;  // no negative zero
    out.constants.push_back(c1);

    std::vector<double> p(n, c1);
    std::vector<double> psi(n);
    for (std::size_t k = 0; k < n; ++k) psi[k] = std::max(u[k], p[k]);

    out.stage_consistent = true;
    for (std::size_t nu = 0; nu + 1 < stages; ++nu) {
        const double r = stage_radii[nu];
        const double r_mid = 0.5 * (r + stage_radii[nu + 1]);
        const double level = c1 + static_cast<double>(nu + 1);
        double c_next = out.constants.back();
        for (std::size_t k = 0; k < n; ++k) {
            if (d[k] < r_mid) continue;
            const double need = (level - p[k]) / (d[k] * d[k] - r * r);
            c_next = std::max(c_next, need);
        }
        if (!std::isfinite(c_next)) throw EvaluationError("build_exhaustion: stage constant is not finite");
        out.constants.push_back(c_next);
        std::vector<double> psi_next(n);
        for (std::size_t k = 0; k < n; ++k) {
            p[k] += c_next * std::max(0.0, d[k] * d[k] - r * r);
            psi_next[k] = std::max(u[k], p[k]);
            if (d[k] <= r) {
                const double gap = psi_next[k] == psi[k] ? 0.0 : std::abs(psi_next[k] - psi[k]);
                out.stage_mismatch = std::max(out.stage_mismatch, gap);
                if (gap != 0.0) out.stage_consistent = false;
            }
        }
        psi = std::move(psi_next);
    }

    out.dominates = true;
    for (std::size_t k = 0; k < n; ++k)
        if (!(psi[k] >= u[k])) out.dominates = false;
    out.sublevels_nested = true;
    for (std::size_t nu = 0; nu + 1 < stages; ++nu) {
        const double level = c1 + static_cast<double>(nu + 1);
        for (std::size_t k = 0; k < n; ++k)
            if (psi[k] < level && d[k] > stage_radii[nu + 1]) out.sublevels_nested = false;
    }
    out.psi = std::move(psi);
    return out;
}

}  // namespace hartogs
