// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hartogs/hulls.hpp"
#include "hartogs/io.hpp"
#include "hartogs/kernels.hpp"
#include "hartogs/suites.hpp"
#include "hartogs/verify.hpp"

#ifndef RHOTOOL_PATH
#define RHOTOOL_PATH "rhotool"
#endif
#ifndef HARTOGS_SPEC_DIR
#define HARTOGS_SPEC_DIR "specs"
#endif

using namespace hartogs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const EngineConfig kCfg{};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << o.detail.str() << std::endl;
}

bool suite_reports_pass(const std::string& suite, const std::string& prefix, Outcome& o) {
    bool all = true;
    for (const auto& s : run_suite(suite, kCfg)) {
        for (const auto& r : s.reports) {
            if (r.name.rfind(prefix, 0) != 0) continue;
            o.detail << ' ' << r.name << "=" << format_number(r.worst_violation);
            o.require(r.pass, r.name);
            all = all && r.pass;
        }
    }
    return all;
}

double seg_dist(Cx p, Cx a, Cx b) {
    const Cx d = b - a;
    const double t = std::clamp(std::real((p - a) * std::conj(d)) / std::norm(d), 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

bool inside_convex(Cx p, const std::vector<Cx>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Cx e = v[(i + 1) % v.size()] - v[i];
        if (std::imag(std::conj(e) * (p - v[i])) <= 0) return false;
    }
    return true;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
    report(1, "exp frame on C matches e^{Re a}", [](Outcome& o) {
        const ProblemSpec spec{make_plane(), make_plane(), make_exp()};
        for (Cx a : {Cx(0, 0), Cx(1, 0), Cx(-1, 0), Cx(0, 1), Cx(1, 1)}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto e = rho_estimate(spec, a, kCfg);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const double want = std::exp(a.real());
            const double rel = std::abs(e.value - want) / want;
            o.detail << " a=" << a << " rel=" << format_number(rel) << " t=" << secs << "s";
            o.require(rel <= 0.02, "relative error");
            o.require(secs < 10.0, "time per point");
        }
    });

    report(2, "monomial frames match |a^{k+1}|/|k+1|", [](Outcome& o) {
        double worst = 0.0;
        for (int k : {0, 1, 2, -2, -3}) {
            const ProblemSpec spec{make_punctured_plane(), make_punctured_plane(), make_monomial(k)};
            for (Cx a : {Cx(0.5, 0), Cx(1, 0), Cx(2, 0), Cx(0, 1)}) {
                const double want = std::pow(std::abs(a), k + 1) / std::abs(k + 1);
                const auto e = rho_estimate(spec, a, kCfg);
                worst = std::max(worst, e.unbounded() ? kInf : std::abs(e.value - want) / want);
            }
        }
        o.detail << " worst_rel=" << format_number(worst);
        o.require(worst <= 0.01, "relative error");
    });

    report(3, "constant frame equals boundary distance", [](Outcome& o) {
        std::mt19937_64 rng(20240501);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        std::vector<Cx> pent;
        for (int i = 0; i < 5; ++i) pent.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / 5 + 0.3));
        struct Case {
            std::string label;
            Domain region;
            std::function<bool(Cx)> inside;
            std::function<double(Cx)> gap;
        };
        const std::vector<Case> cases{
            {"disk", make_disk(0.0, 1.0), [](Cx z) { return std::abs(z) < 1; }, [](Cx z) { return 1 - std::abs(z); }},
            {"annulus", make_annulus(0.0, 0.2, 2.0), [](Cx z) { return std::abs(z) > 0.2 && std::abs(z) < 2; },
             [](Cx z) { return std::min(std::abs(z) - 0.2, 2 - std::abs(z)); }},
            {"pentagon", make_polygon(pent), [&](Cx z) { return inside_convex(z, pent); },
             [&](Cx z) {
                 double d = kInf;
                 for (std::size_t i = 0; i < 5; ++i) d = std::min(d, seg_dist(z, pent[i], pent[(i + 1) % 5]));
                 return d;
             }},
        };
        for (const auto& c : cases) {
            std::vector<Cx> pts;
            while (pts.size() < 50) {
                const Cx z(u(rng), u(rng));
                if (c.inside(z) && c.gap(z) > 1e-3) pts.push_back(z);
            }
            const auto est = rho_at_points({make_plane(), c.region, make_const_one()}, pts, kCfg);
            double worst = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double g = c.gap(pts[i]);
                worst = std::max(worst, est[i].unbounded() ? kInf : std::abs(est[i].value - g) / g);
            }
            o.detail << ' ' << c.label << "=" << format_number(worst);
            o.require(worst <= 0.01, c.label);
        }
    });

    report(4, "unbounded cases report Unbounded", [](Outcome& o) {
        const auto e1 = rho_estimate({make_plane(), make_plane(), make_const_one()}, Cx(0.3, -0.2), kCfg);
        const auto e2 = rho_estimate({make_punctured_plane(), make_punctured_plane(), make_inv_z()}, Cx(1, 0), kCfg);
        o.detail << " const_one lower=" << format_number(e1.lower) << " inv_z lower=" << format_number(e2.lower);
        o.require(e1.unbounded() && e1.lower >= kCfg.t_cap, "const_one on C");
        o.require(e2.unbounded() && e2.lower >= kCfg.t_cap, "inv_z on C*");
    });

    report(5, "Lipschitz battery on the annulus (1000 pairs)",
           [](Outcome& o) { suite_reports_pass("lipschitz", "lipschitz.annulus", o); });

    report(6, "Cartan-Thullen equality on the annular band", [](Outcome& o) {
        const ProblemSpec spec{make_plane(), make_disk(0.0, 2.0), make_const_one()};
        const Raster raster = make_raster(spec.region, {-2, -2}, {2, 2}, 256, 256);
        const CellSet k = cells_where(raster, [](Cx z) { return std::abs(z) >= 0.9 && std::abs(z) <= 1.1; });
        const CellSet filled = cells_where(raster, [](Cx z) { return std::abs(z) <= 1.1; });
        const auto ct = check_ct(k, raster, spec, [](Cx) { return 0.9; }, kCfg, 1e-2);
        o.detail << " gap=" << format_number(ct.equality_gap) << " components=" << ct.hull.filled_components;
        o.require(ct.precondition_ok, "precondition");
        o.require(ct.equality_gap <= 1e-2, "rho(K) vs rho(hull)");
        o.require(ct.hull.hull_mask == filled && ct.hull.filled_components == 1, "hull is the enclosed disk");
    });

    report(7, "sub-mean-value battery", [](Outcome& o) { suite_reports_pass("submean", "submean.", o); });

    report(8, "Kobayashi bound on the unit disk", [](Outcome& o) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> rad(0.0, 1.0), arg(0.0, 2 * std::numbers::pi);
        std::vector<Cx> pts{0.0};
        while (pts.size() < 100) pts.push_back(std::polar(std::sqrt(rad(rng)) * 0.999, arg(rng)));
        const auto est = rho_at_points({make_plane(), make_disk(0.0, 1.0), make_const_one()}, pts, kCfg);
        double worst = -kInf;
        for (std::size_t i = 0; i < pts.size(); ++i)
            worst = std::max(worst, est[i].value - (1 - std::norm(pts[i])) * (1 + 1e-6));
        const double at0 = std::abs(est[0].value - 1.0);
        o.detail << " worst=" << format_number(worst) << " rel_at_0=" << format_number(at0);
        o.require(worst <= 0.0, "upper bound");
        o.require(at0 <= 0.01, "equality at 0");
    });

    report(9, "scaling, region monotonicity and product invariants", [](Outcome& o) {
        suite_reports_pass("scaling", "scaling.", o);
        suite_reports_pass("product", "product.factor_minimum", o);
    });

    report(10, "Runge condition on nested disks", [](Outcome& o) {
        const ProblemSpec ambient{make_plane(), make_disk(0.0, 2.0), make_const_one()};
        const Domain kd = make_disk(0.0, 0.5);
        std::vector<Cx> k = interior_samples(kd, 24);
        for (Cx b : boundary_samples(kd, 0.02)) k.push_back(b);
        const auto yes = check_runge_condition(make_disk(0.0, 1.0), make_disk(0.0, 1.2), k, ambient, kCfg);
        const auto no = check_runge_condition(make_disk(0.0, 1.0), make_disk(0.0, 1.6), k, ambient, kCfg);
        // rho(b, D(0,r')) = r' - 1 on |b| = 1; rho(K, D(0,1)) = 1 - 0.5.
        const double err = std::max({std::abs(yes.lhs - 0.2) / 0.2, std::abs(no.lhs - 0.6) / 0.6,
                                     std::abs(yes.rhs - 0.5) / 0.5, std::abs(no.rhs - 0.5) / 0.5,
                                     std::abs(yes.margin - 0.3) / 0.3, std::abs(no.margin + 0.1) / 0.1});
        o.detail << " holds=" << yes.holds << "/" << no.holds << " margins=" << format_number(yes.margin) << "/"
                 << format_number(no.margin);
        o.require(yes.holds && !no.holds, "truth values");
        o.require(err <= 0.01, "margins");
    });

    report(11, "convergence-radius estimator", [](Outcome& o) {
        const ProblemSpec disk{make_plane(), make_disk(0.0, 1.0), make_const_one()};
        const ProblemSpec expo{make_plane(), make_plane(), make_exp()};
        const double r1 = convergence_radius(disk, 0.0, [](Cx z) { return 1.0 / (z - 1.0); }, 0.5, 64, kCfg);
        const double r2 = convergence_radius(expo, 0.0, [](Cx z) { return z; }, 0.5, 64, kCfg);
        o.detail << " disk=" << format_number(r1) << " exp=" << format_number(r2);
        o.require(std::abs(r1 - 1) <= 0.02, "1/(z-1) on the disk");
        o.require(std::abs(r2 - 1) <= 0.02, "z under exp");
        suite_reports_pass("cauchy", "cauchy.containment", o);
    });

    report(12, "exhaustion stage consistency and domination", [](Outcome& o) {
        suite_reports_pass("exhaustion", "exhaustion.", o);
        const ProblemSpec punct{make_plane(), make_annulus(0.0, 1e-6, 1.0), make_const_one()};
        const GridField f = rho_field(punct, {-1, -1}, {1, 1}, 40, 40, kCfg);
        const std::vector<double> stages{0.3, 0.5, 0.7, 0.9};
        const auto ex = build_exhaustion(f, CellSet{40, 40, std::vector<std::uint8_t>(1600, 0)}, stages);
        bool dom = true;
        for (std::size_t i = 0; i < f.cells.size(); ++i)
            if (f.cells[i].status == CellStatus::Ok && !(ex.psi[i] >= -std::log(f.cells[i].value))) dom = false;
        o.require(ex.stage_consistent && ex.stage_mismatch == 0.0, "stage identity");
        o.require(dom, "psi >= -log rho");
    });

    report(13, "field CSV is byte-identical across runs and thread counts", [](Outcome& o) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("hartogs_accept_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        std::vector<std::string> outputs;
        for (int threads : {1, 4}) {
            for (int run = 0; run < 3; ++run) {
                const fs::path csv = dir / ("t" + std::to_string(threads) + "_" + std::to_string(run) + ".csv");
                const std::string cmd = std::string("\"") + RHOTOOL_PATH + "\" field --spec \"" + HARTOGS_SPEC_DIR +
                                        "/const-on-unit-disk.json\" --bbox -1,-1,1,1 --nx 24 --ny 24 --threads " +
                                        std::to_string(threads) + " --csv \"" + csv.string() + "\"";
                const int rc = std::system(cmd.c_str());
                o.require(rc == 0, "rhotool exit status");
                outputs.push_back(slurp(csv));
            }
        }
        fs::remove_all(dir);
        bool same = !outputs.front().empty();
        for (const auto& s : outputs) same = same && s == outputs.front();
        o.detail << " runs=" << outputs.size() << " bytes=" << outputs.front().size();
        o.require(same, "identical bytes");
    });

    std::cout << (failures == 0 ? "ALL PASS" : "SOME FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
