// rhotool: evaluate rho at a point, sample it over a grid, or run the
// verification suites.
//
// Exit codes: 0 ok / all properties pass, 1 a property failed, 2 invalid
// spec or arguments, 3 invalid point, 4 I/O error.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hartogs/io.hpp"
#include "hartogs/suites.hpp"

#ifndef HARTOGS_VERSION
#define HARTOGS_VERSION "0.0.0"
#endif

using namespace hartogs;

namespace {

enum Exit { kOk = 0, kFail = 1, kBadSpec = 2, kBadPoint = 3, kIo = 4 };

struct Common {
    std::string config_path;
    int threads = -1;
    std::uint64_t seed = SuiteOptions{}.seed;
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

EngineConfig effective_config(const Common& c) {
    EngineConfig cfg;
    if (!c.config_path.empty()) cfg = load_config(c.config_path, cfg);
    if (c.threads >= 0) cfg.threads = c.threads;
    validate_config(cfg);
    return cfg;
}

RunManifest manifest(const std::string& command, const std::string& spec_path, const Common& c,
                     const EngineConfig& cfg, Json args) {
    RunManifest m;
    m.spec_path = spec_path;
    m.config_path = c.config_path;
    m.command = command;
    m.seed = c.seed;
    m.tool_version = HARTOGS_VERSION;
    m.timestamp = utc_now();
    Json settings = to_json(cfg);
    // The thread count never changes results, so it stays out of the hash.
    settings.erase("threads");
    m.settings = Json{{"engine", settings}, {"args", std::move(args)}};
    return m;
}

Json manifest_json(const RunManifest& m) {
    Json j = to_json(m);
    j["hash"] = manifest_hash(m);
    return j;
}

double parse_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used == 0 || used != s.size()) throw InvalidSpec(std::string("cannot parse ") + what + " '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

// "re,im" per coordinate, coordinates separated by ';'.
std::vector<Cx> parse_point(const std::string& s) {
    std::vector<Cx> out;
    for (const auto& part : split(s, ';')) {
        const auto xy = split(part, ',');
        if (xy.size() != 2) throw DimensionMismatch("point coordinates must be 're,im'");
        out.emplace_back(parse_double(xy[0], "point"), parse_double(xy[1], "point"));
    }
    if (out.empty()) throw DimensionMismatch("empty point");
    return out;
}

int cmd_eval(const std::string& spec_path, const std::string& point, const Common& c) {
    const ProblemSpec spec = load_spec(spec_path);
    const EngineConfig cfg = effective_config(c);
    std::vector<Cx> a;
    try {
        a = parse_point(point);
    } catch (const InvalidSpec& e) {
        throw DimensionMismatch(e.what());
    }
    const RhoEstimate e = rho_estimate(spec, a, cfg);
    const RunManifest m = manifest("eval", spec_path, c, cfg, Json{{"point", point}});
    Json out = to_json(e);
    out["summary"] = e.unbounded() ? "unbounded (>= " + format_number(e.lower) + ")" : format_number(e.value);
    out["manifest"] = manifest_json(m);
    std::cout << out.dump(2) << '\n';
    return kOk;
}

struct FieldArgs {
    std::string spec_path;
    std::string bbox;
    int nx = 64;
    int ny = 64;
    std::string csv_path = "-";
    std::string pgm_path;
};

int cmd_field(const FieldArgs& f, const Common& c) {
    const ProblemSpec spec = load_spec(f.spec_path);
    const EngineConfig cfg = effective_config(c);
    const auto parts = split(f.bbox, ',');
    if (parts.size() != 4) throw InvalidSpec("bbox must be 'x0,y0,x1,y1'");
    const Cx lo{parse_double(parts[0], "bbox"), parse_double(parts[1], "bbox")};
    const Cx hi{parse_double(parts[2], "bbox"), parse_double(parts[3], "bbox")};
    if (spec.region.is_product()) throw InvalidSpec("field needs a planar spec");
    if (f.nx < 1 || f.ny < 1 || !(hi.real() > lo.real()) || !(hi.imag() > lo.imag()))
        throw InvalidSpec("empty grid");

    const GridField field = rho_field(spec, lo, hi, f.nx, f.ny, cfg);
    const RunManifest m = manifest("field", f.spec_path, c, cfg,
                                   Json{{"bbox", f.bbox}, {"nx", f.nx}, {"ny", f.ny}});
    const std::string hash = manifest_hash(m);

    if (f.csv_path == "-") {
        write_csv(std::cout, field);
        std::cout.flush();
        if (!std::cout) throw IoError("write to stdout failed");
    } else {
        write_csv(f.csv_path, field);
        write_json(f.csv_path + ".json", Json{{"manifest", manifest_json(m)}, {"columns", "re,im,rho,status"}});
    }
    if (!f.pgm_path.empty()) {
        const PgmScale sc = write_pgm(f.pgm_path, field, hash);
        write_json(f.pgm_path + ".json",
                   Json{{"manifest", manifest_json(m)},
                        {"quantity", "-log rho"},
                        {"min_neg_log_rho", sc.min_neg_log},
                        {"max_neg_log_rho", sc.max_neg_log},
                        {"mapping", "pixel = round(255 * (1 - (q - min) / (max - min))); unbounded = 255; outside = 0"},
                        {"orientation", "top row = largest imaginary part"}});
    }
    return kOk;
}

int cmd_verify(const std::string& suite, const std::string& out_path, const std::string& artifacts,
               const Common& c) {
    const EngineConfig cfg = effective_config(c);
    SuiteOptions opt;
    opt.seed = c.seed;
    opt.artifact_dir = artifacts;
    const auto results = run_suite(suite, cfg, opt);
    bool pass = true;
    Json suites = Json::array();
    for (const auto& r : results) {
        Json reports = Json::array();
        for (const auto& p : r.reports) reports.push_back(to_json(p));
        suites.push_back(Json{{"suite", r.name}, {"pass", r.pass()}, {"reports", reports}});
        pass = pass && r.pass();
    }
    const RunManifest m = manifest("verify", "", c, cfg, Json{{"suite", suite}});
    const Json doc{{"pass", pass}, {"suites", suites}, {"manifest", manifest_json(m)}};
    if (out_path.empty() || out_path == "-")
        std::cout << doc.dump(2) << '\n';
    else
        write_json(out_path, doc);
    for (const auto& r : results)
        for (const auto& p : r.reports)
            std::cerr << (p.pass ? "PASS " : "FAIL ") << p.name << "  worst=" << format_number(p.worst_violation)
                      << " threshold=" << format_number(p.threshold) << '\n';
    return pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radius of analytic continuation of the inverse Abelian integral"};
    app.set_version_flag("--version", HARTOGS_VERSION);
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "engine config JSON");
        sub->add_option("--threads", common.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", common.seed, "seed for randomized fixtures");
    };

    std::string spec_path, point;
    auto* eval = app.add_subcommand("eval", "rho at one point");
    eval->add_option("--spec", spec_path, "problem spec JSON")->required();
    eval->add_option("--point", point, "point as re,im (';' between product coordinates)")->required();
    add_common(eval);

    FieldArgs fa;
    auto* field = app.add_subcommand("field", "rho over a grid of cell centers");
    field->add_option("--spec", fa.spec_path, "problem spec JSON")->required();
    field->add_option("--bbox", fa.bbox, "x0,y0,x1,y1")->required();
    field->add_option("--nx", fa.nx, "cells along re");
    field->add_option("--ny", fa.ny, "cells along im");
    field->add_option("--csv", fa.csv_path, "CSV output ('-' for stdout)");
    field->add_option("--pgm", fa.pgm_path, "PGM image of -log rho");
    add_common(field);

    std::string suite, out_path, artifacts;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(choices));
    verify->add_option("--out", out_path, "report JSON path (default stdout)");
    verify->add_option("--artifacts", artifacts, "directory for hull PBM masks");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadSpec;
    }

    try {
        if (*eval) return cmd_eval(spec_path, point, common);
        if (*field) return cmd_field(fa, common);
        if (*verify) return cmd_verify(suite, out_path, artifacts, common);
    } catch (const IoError& e) {
        std::cerr << "rhotool: " << e.what() << '\n';
        return kIo;
    } catch (const OutsideDomain& e) {
        std::cerr << "rhotool: " << e.what() << '\n';
        return kBadPoint;
    } catch (const DimensionMismatch& e) {
        std::cerr << "rhotool: " << e.what() << '\n';
        return kBadPoint;
    } catch (const InvalidSpec& e) {
        std::cerr << "rhotool: " << e.what() << '\n';
        return kBadSpec;
    } catch (const std::exception& e) {
        std::cerr << "rhotool: " << e.what() << '\n';
        return kFail;
    }
    return kBadSpec;
}
