#include "hartogs/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "hartogs/io.hpp"
#include "hartogs/kernels.hpp"

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Rng = std::mt19937_64;

// Uniform points of a bounded planar domain by rejection from its box.
std::vector<Cx> random_points(const Domain& d, std::size_t n, Rng& rng) {
    const auto [lo, hi] = bounding_box(d);
    std::uniform_real_distribution<double> ux(lo.real(), hi.real());
    std::uniform_real_distribution<double> uy(lo.imag(), hi.imag());
    std::vector<Cx> out;
    while (out.size() < n) {
        const Cx z{ux(rng), uy(rng)};
        if (contains(d, z)) out.push_back(z);
    }
    return out;
}

PropertyReport make_report(std::string name, double threshold) {
    PropertyReport r;
    r.name = std::move(name);
    r.threshold = threshold;
    r.worst_violation = -kInf;
    return r;
}

void note_violation(PropertyReport& r, double v) {
    r.worst_violation = std::max(r.worst_violation, v);
    ++r.samples;
}

Domain pentagon() {
    return make_polygon({{1.0, 0.0}, {0.4, 0.9}, {-0.8, 0.6}, {-0.7, -0.7}, {0.5, -0.8}});
}

OracleCase planar_case(std::string label, ProblemSpec spec, const std::vector<Cx>& pts) {
    OracleCase c{std::move(label), std::move(spec), {}};
    for (Cx p : pts) c.points.push_back({p});
    return c;
}

// ------------------------------------------------------------- oracles

SuiteResult suite_oracles(const EngineConfig& cfg, Rng& rng) {
    SuiteResult s{"oracles", {}};
    const ProblemSpec exp_plane{make_plane(), make_plane(), make_exp()};
    {
        std::vector<OracleCase> cases{planar_case("exp", exp_plane, {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {1, 1}})};
        auto r = check_oracles(cases, cfg, 0.02);
        r.name = "oracles.exp";
        s.reports.push_back(r);
    }
    {
        std::vector<OracleCase> cases;
        for (int k : {0, 1, 2, -2, -3})
            cases.push_back(planar_case("monomial k=" + std::to_string(k),
                                        {make_punctured_plane(), make_punctured_plane(), make_monomial(k)},
                                        {{0.5, 0}, {1, 0}, {2, 0}, {0, 1}}));
        auto r = check_oracles(cases, cfg, 0.01);
        r.name = "oracles.monomial";
        s.reports.push_back(r);
    }
    {
        std::vector<OracleCase> cases{
            planar_case("dz on C", {make_plane(), make_plane(), make_const_one()}, {{1, 0}, {0, -3}}),
            planar_case("dz/z on C*", {make_punctured_plane(), make_punctured_plane(), make_inv_z()}, {{1, 0}, {0.5, 2}}),
        };
        auto r = check_oracles(cases, cfg, 0.0);
        r.name = "oracles.unbounded";
        s.reports.push_back(r);
    }
    {
        std::vector<OracleCase> cases;
        for (auto& [label, dom] : std::vector<std::pair<std::string, Domain>>{
                 {"disk", make_disk(0.0, 1.0)}, {"annulus", make_annulus(0.0, 0.2, 2.0)}, {"pentagon", pentagon()}})
            cases.push_back(planar_case(label, {make_plane(), dom, make_const_one()}, random_points(dom, 50, rng)));
        auto r = check_oracles(cases, cfg, 0.01);
        r.name = "oracles.boundary_distance";
        s.reports.push_back(r);
    }
    return s;
}

// ----------------------------------------------------------- lipschitz

SuiteResult suite_lipschitz(const EngineConfig& cfg, Rng& rng) {
    SuiteResult s{"lipschitz", {}};
    struct Fixture {
        std::string label;
        Domain dom;
        std::size_t pairs;
    };
    for (auto& f : std::vector<Fixture>{{"annulus", make_annulus(0.0, 0.2, 2.0), 1000},
                                        {"disk", make_disk(0.0, 1.0), 200},
                                        {"punctured_disk", make_annulus(0.0, 1e-6, 1.0), 200}}) {
        const auto a = random_points(f.dom, f.pairs, rng);
        const auto b = random_points(f.dom, f.pairs, rng);
        std::vector<std::pair<Cx, Cx>> pairs;
        for (std::size_t i = 0; i < f.pairs; ++i) pairs.emplace_back(a[i], b[i]);
        auto r = check_lipschitz({make_plane(), f.dom, make_const_one()}, pairs, cfg, 1e-6);
        r.name = "lipschitz." + f.label;
        s.reports.push_back(r);
    }
    return s;
}

// -------------------------------------------------------------- submean

SuiteResult suite_submean(const EngineConfig& cfg, Rng& rng) {
    SuiteResult s{"submean", {}};
    std::uniform_real_distribution<double> frac(0.1, 0.8);
    {
        const Domain dom = make_annulus(0.0, 1e-6, 1.0);
        const auto centers = random_points(dom, 200, rng);
        std::vector<double> radii;
        for (Cx c : centers) radii.push_back(frac(rng) * boundary_gap(dom, c));
        auto r = check_submean({make_plane(), dom, make_const_one()}, centers, radii, 64, cfg, 1e-3);
        r.name = "submean.punctured_disk";
        s.reports.push_back(r);
    }
    {
        std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 6.283185307179586), rel(0.1, 0.6);
        std::vector<Cx> centers;
        std::vector<double> radii;
        for (int i = 0; i < 12; ++i) {
            centers.push_back(std::polar(mod(rng), arg(rng)));
            radii.push_back(rel(rng) * std::abs(centers.back()));
        }
        auto r = check_submean({make_punctured_plane(), make_punctured_plane(), make_monomial(1)}, centers, radii, 64,
                               cfg, 1e-3);
        r.name = "submean.monomial_harmonic";
        PropertyReport eq = make_report("submean.monomial_equality", 1e-3);
        eq.samples = r.samples;
        eq.worst_violation = r.metrics.at("worst_abs_margin");
        eq.finish();
        s.reports.push_back(r);
        s.reports.push_back(eq);
    }
    {
        const std::vector<Cx> centers{{0, 0}, {3, -1}, {-2, 5}};
        const std::vector<double> radii{1.0, 2.0, 0.5};
        auto r = check_submean({make_plane(), make_plane(), make_const_one()}, centers, radii, 16, cfg, 1e-3);
        r.name = "submean.constant_field";
        s.reports.push_back(r);
    }
    return s;
}

// ------------------------------------------------------------ kobayashi

SuiteResult suite_kobayashi(const EngineConfig& cfg, Rng& rng) {
    SuiteResult s{"kobayashi", {}};
    std::vector<Cx> pts{{0.0, 0.0}};
    for (Cx z : random_points(make_disk(0.0, 1.0), 99, rng)) pts.push_back(z);
    auto r = check_kobayashi_disk(pts, cfg, 1e-6);
    PropertyReport eq = make_report("kobayashi.equality_at_0", 0.01);
    eq.samples = 1;
    eq.worst_violation = r.metrics.at("rel_error_at_0");
    eq.finish();
    s.reports.push_back(r);
    s.reports.push_back(eq);
    return s;
}

// ---------------------------------------------------------------- decay

SuiteResult suite_decay(const EngineConfig& cfg) {
    SuiteResult s{"decay", {}};
    auto seq = [](auto gen) {
        std::vector<Cx> out;
        for (int k = 1; k <= 10; ++k) out.push_back(gen(k));
        return out;
    };
    {
        auto r = check_boundary_decay({make_plane(), make_disk(0.0, 1.0), make_const_one()}, 1.0,
                                      seq([](int k) { return Cx(1.0 - std::ldexp(1.0, -k), 0.0); }), cfg);
        r.name = "decay.disk";
        s.reports.push_back(r);
    }
    {
        auto r = check_boundary_decay({make_plane(), make_annulus(0.0, 0.2, 2.0), make_const_one()}, 0.2,
                                      seq([](int k) { return Cx(0.2 + std::ldexp(1.0, -k), 0.0); }), cfg);
        r.name = "decay.annulus";
        s.reports.push_back(r);
    }
    {
        auto r = check_boundary_decay({make_punctured_plane(), make_punctured_plane(), make_monomial(2)}, 0.0,
                                      seq([](int k) { return Cx(std::ldexp(1.0, -k), 0.0); }), cfg);
        r.name = "decay.monomial";
        s.reports.push_back(r);
    }
    return s;
}

// ------------------------------------------------------------------- ct

PropertyReport ct_report(std::string name, const CtReport& ct, bool hull_as_expected) {
    PropertyReport r = make_report(std::move(name), ct.tol);
    r.samples = ct.hull.hull_mask.count();
    if (!ct.precondition_ok) {
        r.worst_violation = kInf;
        r.notes.push_back("precondition |f| <= rho fails on K");
    } else {
        r.worst_violation = std::max(ct.max_excess, ct.equality_gap);
    }
    if (!hull_as_expected) {
        r.worst_violation = kInf;
        r.notes.push_back("hull differs from the expected cell set");
    }
    r.metrics["max_excess"] = ct.max_excess;
    r.metrics["equality_gap"] = ct.equality_gap;
    r.metrics["rho_k"] = ct.rho_k;
    r.metrics["rho_hull"] = ct.rho_hull;
    r.metrics["filled_components"] = ct.hull.filled_components;
    r.metrics["cell_size"] = ct.hull.cell_size;
    r.finish();
    return r;
}

SuiteResult suite_ct(const EngineConfig& cfg, const SuiteOptions& opt) {
    SuiteResult s{"ct", {}};
    {
        const ProblemSpec spec{make_plane(), make_disk(0.0, 2.0), make_const_one()};
        const Raster raster = make_raster(spec.region, {-2, -2}, {2, 2}, 256, 256);
        const CellSet k = cells_where(raster, [](Cx z) {
            const double r = std::abs(z);
            return r >= 0.9 && r <= 1.1;
        });
        const CellSet expected = cells_where(raster, [](Cx z) { return std::abs(z) <= 1.1; });
        const auto ct = check_ct(k, raster, spec, [](Cx) { return 0.9; }, cfg, 1e-2);
        const bool ok = ct.precondition_ok && ct.hull.hull_mask == expected && ct.hull.filled_components == 1;
        s.reports.push_back(ct_report("ct.annular_band", ct, ok));
        if (!opt.artifact_dir.empty() && ct.precondition_ok)
            write_pbm(opt.artifact_dir + "/ct_annular_band_hull.pbm", ct.hull.hull_mask);
    }
    const ProblemSpec unit{make_plane(), make_disk(0.0, 1.0), make_const_one()};
    const Raster raster = make_raster(unit.region, {-1.25, -1.25}, {1.25, 1.25}, 25, 25);
    {
        const CellSet k = cells_where(raster, [](Cx z) { return std::abs(z) < 1e-9; });
        const auto ct = check_ct(k, raster, unit, [](Cx) { return 1.0; }, cfg, 1e-2);
        s.reports.push_back(ct_report("ct.single_point", ct, ct.precondition_ok && ct.hull.hull_mask == k));
    }
    {
        const CellSet k = cells_where(raster, [](Cx z) { return std::abs(std::abs(z.real()) - 0.5) < 1e-9 && std::abs(z.imag()) < 1e-9; });
        const auto ct = check_ct(k, raster, unit, [](Cx) { return 0.5; }, cfg, 1e-2);
        s.reports.push_back(ct_report("ct.two_points", ct,
                                      ct.precondition_ok && ct.hull.hull_mask == k && ct.hull.filled_components == 0));
    }
    return s;
}

// ---------------------------------------------------------------- runge

std::vector<Cx> closed_disk(double r) {
    const Domain d = make_disk(0.0, r);
    std::vector<Cx> pts = interior_samples(d, 24);
    for (Cx b : boundary_samples(d, 0.02)) pts.push_back(b);
    return pts;
}

SuiteResult suite_runge(const EngineConfig& cfg) {
    SuiteResult s{"runge", {}};
    const ProblemSpec ambient{make_plane(), make_disk(0.0, 2.0), make_const_one()};
    struct Fixture {
        std::string label;
        double r_prime;
        double r_k;
        bool expected;
        double lhs;
        double rhs;
    };
    for (const auto& f : std::vector<Fixture>{{"inner", 1.2, 0.5, true, 0.2, 0.5},
                                              {"wide_shell", 1.6, 0.5, false, 0.6, 0.5},
                                              {"fat_compact", 1.2, 0.95, false, 0.2, 0.05}}) {
        const auto k = closed_disk(f.r_k);
        const auto rep = check_runge_condition(make_disk(0.0, 1.0), make_disk(0.0, f.r_prime), k, ambient, cfg);
        PropertyReport r = make_report("runge." + f.label, 0.01);
        r.samples = rep.boundary_points + k.size();
        double v = std::max(std::abs(rep.lhs - f.lhs) / f.lhs, std::abs(rep.rhs - f.rhs) / f.rhs);
        if (rep.holds != f.expected) {
            v = kInf;
            r.notes.push_back("condition evaluated to the wrong truth value");
        }
        r.worst_violation = v;
        r.metrics["holds"] = rep.holds ? 1.0 : 0.0;
        r.metrics["expected"] = f.expected ? 1.0 : 0.0;
        r.metrics["lhs"] = rep.lhs;
        r.metrics["rhs"] = rep.rhs;
        r.metrics["margin"] = rep.margin;
        r.finish();
        s.reports.push_back(r);
    }
    return s;
}

// -------------------------------------------------------------- scaling

SuiteResult suite_scaling(const EngineConfig& cfg) {
    SuiteResult s{"scaling", {}};
    {
        struct Fixture {
            ProblemSpec base;
            Cx c;
            Cx a;
        };
        const std::vector<Fixture> fx{
            {{make_plane(), make_plane(), make_exp()}, {0.0, 2.0}, {0.5, 0.0}},
            {{make_plane(), make_disk(0.0, 1.0), make_const_one()}, {0.5, 0.0}, {0.3, 0.1}},
            {{make_punctured_plane(), make_punctured_plane(), make_monomial(2)}, {3.0, -4.0}, {1.0, 0.0}},
            {{make_plane(), make_annulus(0.0, 0.2, 2.0), make_exp()}, {0.0, -0.25}, {1.0, 0.5}},
        };
        PropertyReport r = make_report("scaling.frame", 1e-6);
        for (const auto& f : fx) {
            const ProblemSpec scaled{f.base.ambient, f.base.region, make_scaled(f.c, f.base.frame)};
            const auto e0 = rho_estimate(f.base, f.a, cfg);
            const auto e1 = rho_estimate(scaled, f.a, cfg);
            note_violation(r, std::abs(e1.value / (std::abs(f.c) * e0.value) - 1.0));
        }
        r.finish();
        s.reports.push_back(r);
    }
    {
        struct Chain {
            Domain ambient;
            Frame frame;
            std::vector<Domain> nested;
            std::vector<Cx> points;
        };
        const std::vector<Chain> chains{
            {make_plane(), make_exp(), {make_disk(0.0, 0.5), make_disk(0.0, 1.0), make_plane()}, {{0, 0}, {0.2, 0}, {0, 0.3}}},
            {make_plane(), make_const_one(), {pentagon(), make_disk(0.0, 1.0), make_half_plane({-1.0, 0.0}, {1.0, 0.0})},
             {{0, 0}, {0.3, 0.2}, {-0.4, -0.3}}},
            {make_punctured_plane(), make_monomial(-2),
             {make_annulus(0.0, 0.5, 2.0), make_annulus(0.0, 0.2, 3.0), make_punctured_plane()},
             {{1, 0}, {0, 1}, {1.2, 0.4}}},
        };
        PropertyReport r = make_report("scaling.region_monotonicity", 0.0);
        for (const auto& ch : chains) {
            for (Cx a : ch.points) {
                std::vector<RhoEstimate> est;
                for (const auto& d : ch.nested) est.push_back(rho_estimate({ch.ambient, d, ch.frame}, a, cfg));
                for (std::size_t i = 0; i + 1 < est.size(); ++i) {
                    const auto& small = est[i];
                    const auto& big = est[i + 1];
                    if (big.unbounded()) {
                        note_violation(r, small.unbounded() ? 0.0 : -small.value);
                        continue;
                    }
                    if (small.unbounded()) {
                        note_violation(r, kInf);
                        continue;
                    }
                    note_violation(r, small.value - big.value - small.bracket_width() - big.bracket_width());
                }
            }
        }
        r.finish();
        s.reports.push_back(r);
    }
    return s;
}

// -------------------------------------------------------------- product

SuiteResult suite_product(const EngineConfig& cfg) {
    SuiteResult s{"product", {}};
    struct Fixture {
        ProblemSpec spec;
        std::vector<std::vector<Cx>> points;
    };
    const std::vector<Fixture> fx{
        {{make_product({make_plane(), make_punctured_plane()}), make_product({make_plane(), make_punctured_plane()}),
          make_split_product({make_exp(), make_monomial(1)})},
         {{{0.5, 0}, {1, 0}}, {{-1, 0}, {0, 0.5}}, {{2, 0}, {2, 0}}}},
        {{make_product({make_plane(), make_plane()}), make_product({make_disk(0.0, 1.0), make_plane()}),
          make_split_product({make_const_one(), make_exp()})},
         {{{0.25, 0}, {0, 0}}, {{0, 0.9}, {-3, 1}}}},
        {{make_product({make_plane(), make_punctured_plane(), make_plane()}),
          make_product({make_annulus(0.0, 0.2, 2.0), make_punctured_plane(), make_plane()}),
          make_split_product({make_const_one(), make_inv_z(), make_const_one()})},
         {{{1, 0}, {1, 0}, {0, 0}}}},
    };
    PropertyReport r = make_report("product.factor_minimum", 0.0);
    PropertyReport o = make_report("product.oracle", 0.01);
    for (const auto& f : fx) {
        for (const auto& a : f.points) {
            const auto e = rho_estimate(f.spec, a, cfg);
            double fmin = kInf;
            double width = e.bracket_width();
            for (std::size_t j = 0; j < a.size(); ++j) {
                const auto ej = rho_estimate(factor_problem(f.spec, j), a[j], cfg);
                fmin = std::min(fmin, ej.value);
                width = std::max(width, ej.bracket_width());
            }
            if (e.unbounded() || fmin == kInf)
                note_violation(r, e.value == fmin ? 0.0 : kInf);
            else
                note_violation(r, std::abs(e.value - fmin) - width);
            const OracleValue ov = oracle_rho(f.spec, a);
            if (ov.kind == OracleValue::Kind::Finite)
                note_violation(o, e.unbounded() ? kInf : std::abs(e.value - ov.value) / ov.value);
            else if (ov.kind == OracleValue::Kind::Unbounded)
                note_violation(o, e.unbounded() ? 0.0 : kInf);
        }
    }
    r.finish();
    o.finish();
    s.reports.push_back(r);
    s.reports.push_back(o);
    return s;
}

// --------------------------------------------------------------- cauchy

SuiteResult suite_cauchy(const EngineConfig& cfg) {
    SuiteResult s{"cauchy", {}};
    const ProblemSpec disk{make_plane(), make_disk(0.0, 1.0), make_const_one()};
    const ProblemSpec expo{make_plane(), make_plane(), make_exp()};
    struct Witness {
        std::string label;
        const ProblemSpec* spec;
        std::function<Cx(Cx)> u;
        double expected;  // 0 when only containment is checked
    };
    const std::vector<Witness> ws{
        {"disk 1/(z-1)", &disk, [](Cx z) { return 1.0 / (z - 1.0); }, 1.0},
        {"disk 1/(z-i)", &disk, [](Cx z) { return 1.0 / (z - Cx(0, 1)); }, 1.0},
        {"disk 1/(z+2)", &disk, [](Cx z) { return 1.0 / (z + 2.0); }, 0.0},
        {"disk 1", &disk, [](Cx) { return Cx(1.0); }, kInf},
        {"exp z", &expo, [](Cx z) { return z; }, 1.0},
        {"exp z^2", &expo, [](Cx z) { return z * z; }, 0.0},
        {"exp 1/(z-3)", &expo, [](Cx z) { return 1.0 / (z - 3.0); }, 0.0},
    };
    PropertyReport target = make_report("cauchy.targets", 0.02);
    PropertyReport contain = make_report("cauchy.containment", 0.02);
    for (const auto& w : ws) {
        const double lower = rho_estimate(*w.spec, 0.0, cfg).lower;
        const double r = convergence_radius(*w.spec, 0.0, w.u, 0.5, 64, cfg);
        target.metrics[w.label] = r;
        if (w.expected == kInf)
            note_violation(target, r == kInf ? 0.0 : kInf);
        else if (w.expected > 0)
            note_violation(target, std::abs(r - w.expected) / w.expected);
        note_violation(contain, (lower - r) / lower);
    }
    target.finish();
    contain.finish();
    s.reports.push_back(target);
    s.reports.push_back(contain);
    return s;
}

// ----------------------------------------------------------- exhaustion

PropertyReport exhaustion_report(std::string name, const ExhaustionField& ex) {
    PropertyReport r = make_report(std::move(name), 0.0);
    r.samples = ex.psi.size();
    r.worst_violation = ex.stage_mismatch;
    if (!ex.dominates) {
        r.worst_violation = kInf;
        r.notes.push_back("psi < -log rho somewhere");
    }
    if (!ex.sublevels_nested) {
        r.worst_violation = kInf;
        r.notes.push_back("sublevel set leaves its stage ball");
    }
    for (std::size_t i = 0; i < ex.constants.size(); ++i) r.metrics["C" + std::to_string(i + 1)] = ex.constants[i];
    r.finish();
    return r;
}

SuiteResult suite_exhaustion(const EngineConfig& cfg) {
    SuiteResult s{"exhaustion", {}};
    const std::vector<double> stages{0.3, 0.6, 0.9};
    const ProblemSpec punct{make_plane(), make_annulus(0.0, 1e-6, 1.0), make_const_one()};
    const GridField field = rho_field(punct, {-1, -1}, {1, 1}, 40, 40, cfg);
    CellSet none{field.nx, field.ny, std::vector<std::uint8_t>(field.cells.size(), 0)};
    s.reports.push_back(exhaustion_report("exhaustion.punctured_disk", build_exhaustion(field, none, stages)));

    GridField flat;
    flat.lo = {-1, -1};
    flat.hi = {1, 1};
    flat.nx = flat.ny = 32;
    flat.cells.assign(32 * 32, GridCell{1.0, 1.0, 1.0, CellStatus::Ok});
    CellSet flat_none{32, 32, std::vector<std::uint8_t>(32 * 32, 0)};
    s.reports.push_back(exhaustion_report("exhaustion.constant_field", build_exhaustion(flat, flat_none, stages)));

    // One flagged cell next to the puncture: C_1 has to cover its
    // neighbourhood.
    CellSet flagged = none;
    flagged.bits[static_cast<std::size_t>(20) * field.nx + 20] = 1;
    const auto ex = build_exhaustion(field, flagged, stages);
    auto r = exhaustion_report("exhaustion.flagged_cell", ex);
    double need = -kInf;
    for (int j = 19; j <= 21; ++j)
        for (int i = 19; i <= 21; ++i) {
            const auto& c = field.at(i, j);
            if (c.status == CellStatus::Ok) need = std::max(need, -std::log(c.value));
        }
    r.metrics["flag_neighbourhood_max"] = need;
    if (!(ex.constants[0] >= need)) {
        r.worst_violation = kInf;
        r.notes.push_back("C1 below the flagged neighbourhood maximum");
        r.finish();
    }
    s.reports.push_back(r);
    return s;
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracles", "lipschitz", "submean", "kobayashi", "decay", "ct",
                                                "runge",   "scaling",   "product", "cauchy",    "exhaustion"};
    return names;
}

std::vector<SuiteResult> run_suite(const std::string& name, const EngineConfig& cfg, const SuiteOptions& opt) {
    if (name == "all") {
        std::vector<SuiteResult> out;
        for (const auto& n : suite_names()) {
            auto r = run_suite(n, cfg, opt);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }
    // Each suite gets its own stream so results do not depend on which
    // other suites ran first.
    const auto& names = suite_names();
    const auto pos = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
    Rng rng(opt.seed + 0x9e3779b97f4a7c15ULL * (pos + 1));
    if (name == "oracles") return {suite_oracles(cfg, rng)};
    if (name == "lipschitz") return {suite_lipschitz(cfg, rng)};
    if (name == "submean") return {suite_submean(cfg, rng)};
    if (name == "kobayashi") return {suite_kobayashi(cfg, rng)};
    if (name == "decay") return {suite_decay(cfg)};
    if (name == "ct") return {suite_ct(cfg, opt)};
    if (name == "runge") return {suite_runge(cfg)};
    if (name == "scaling") return {suite_scaling(cfg)};
    if (name == "product") return {suite_product(cfg)};
    if (name == "cauchy") return {suite_cauchy(cfg)};
    if (name == "exhaustion") return {suite_exhaustion(cfg)};
    throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace hartogs
