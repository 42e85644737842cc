#include "hartogs/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& msg) { throw InvalidSpec(msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
    return j.at(key);
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

Cx complex_from(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad(std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to(Cx z) { return Json::array({z.real(), z.imag()}); }

std::string type_of(const Json& j) {
    const Json& t = field(j, "type");
    if (!t.is_string()) bad("'type' must be a string");
    return t.get<std::string>();
}

// Finite numbers as numbers; infinities as strings (JSON has no inf).
Json num(double v) {
    if (std::isnan(v)) throw EvaluationError("NaN in output");
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace

Domain domain_from_json(const Json& j) {
    const std::string t = type_of(j);
    if (t == "plane") return make_plane();
    if (t == "punctured_plane") return make_punctured_plane();
    if (t == "disk") return make_disk(complex_from(field(j, "center"), "center"), number(field(j, "radius"), "radius"));
    if (t == "annulus")
        return make_annulus(complex_from(field(j, "center"), "center"), number(field(j, "r_in"), "r_in"),
                            number(field(j, "r_out"), "r_out"));
    if (t == "half_plane")
        return make_half_plane(complex_from(field(j, "base"), "base"), complex_from(field(j, "direction"), "direction"));
    if (t == "polygon") {
        const Json& v = field(j, "vertices");
        if (!v.is_array()) bad("vertices must be an array");
        std::vector<Cx> pts;
        for (const auto& p : v) pts.push_back(complex_from(p, "vertex"));
        return make_polygon(std::move(pts));
    }
    if (t == "product") {
        const Json& f = field(j, "factors");
        if (!f.is_array()) bad("factors must be an array");
        std::vector<Domain> fs;
        for (const auto& x : f) fs.push_back(domain_from_json(x));
        return make_product(std::move(fs));
    }
    bad("unknown domain type '" + t + "'");
}

Frame frame_from_json(const Json& j) {
    const std::string t = type_of(j);
    if (t == "const_one") return make_const_one();
    if (t == "exp") return make_exp();
    if (t == "inv_z") return make_inv_z();
    if (t == "monomial") {
        const Json& k = field(j, "k");
        if (!k.is_number_integer()) bad("k must be an integer");
        return make_monomial(k.get<int>());
    }
    if (t == "scaled") return make_scaled(complex_from(field(j, "c"), "c"), frame_from_json(field(j, "inner")));
    if (t == "split_product" || t == "product") {
        const Json& f = field(j, "factors");
        if (!f.is_array()) bad("factors must be an array");
        std::vector<Frame> fs;
        for (const auto& x : f) fs.push_back(frame_from_json(x));
        return make_split_product(std::move(fs));
    }
    bad("unknown frame type '" + t + "'");
}

ProblemSpec spec_from_json(const Json& j) {
    if (!j.is_object()) bad("spec must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (k != "ambient" && k != "region" && k != "frame") bad("unknown spec key '" + k + "'");
    return ProblemSpec{domain_from_json(field(j, "ambient")), domain_from_json(field(j, "region")),
                       frame_from_json(field(j, "frame"))};
}

Json to_json(const Domain& d) {
    return std::visit(overloaded{
                          [](const Plane&) { return Json{{"type", "plane"}}; },
                          [](const PuncturedPlane&) { return Json{{"type", "punctured_plane"}}; },
                          [](const Disk& x) {
                              return Json{{"type", "disk"}, {"center", complex_to(x.center)}, {"radius", x.radius}};
                          },
                          [](const Annulus& x) {
                              return Json{{"type", "annulus"},
                                          {"center", complex_to(x.center)},
                                          {"r_in", x.r_in},
                                          {"r_out", x.r_out}};
                          },
                          [](const HalfPlane& x) {
                              return Json{{"type", "half_plane"},
                                          {"base", complex_to(x.base)},
                                          {"direction", complex_to(x.direction)}};
                          },
                          [](const Polygon& x) {
                              Json v = Json::array();
                              for (Cx p : x.vertices) v.push_back(complex_to(p));
                              return Json{{"type", "polygon"}, {"vertices", v}};
                          },
                          [](const ProductDomain& x) {
                              Json v = Json::array();
                              for (const auto& f : x.factors) v.push_back(to_json(f));
                              return Json{{"type", "product"}, {"factors", v}};
                          },
                      },
                      d.shape);
}

Json to_json(const Frame& f) {
    return std::visit(overloaded{
                          [](const ConstOne&) { return Json{{"type", "const_one"}}; },
                          [](const ExpFrame&) { return Json{{"type", "exp"}}; },
                          [](const Monomial& m) { return Json{{"type", "monomial"}, {"k", m.k}}; },
                          [](const InvZ&) { return Json{{"type", "inv_z"}}; },
                          [](const Scaled& s) {
                              return Json{{"type", "scaled"}, {"c", complex_to(s.c)}, {"inner", to_json(*s.inner)}};
                          },
                          [](const SplitProduct& p) {
                              Json v = Json::array();
                              for (const auto& x : p.factors) v.push_back(to_json(x));
                              return Json{{"type", "split_product"}, {"factors", v}};
                          },
                      },
                      f.kind);
}

Json to_json(const ProblemSpec& s) {
    return Json{{"ambient", to_json(s.ambient)}, {"region", to_json(s.region)}, {"frame", to_json(s.frame)}};
}

EngineConfig config_from_json(const Json& j, EngineConfig c) {
    if (!j.is_object()) bad("config must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        auto integer = [&]() -> long long {
            if (!v.is_number_integer()) bad("config '" + k + "' must be an integer");
            return v.get<long long>();
        };
        auto real = [&]() { return number(v, k.c_str()); };
        if (k == "n_rays_init") c.n_rays_init = static_cast<int>(integer());
        else if (k == "refine_depth") c.refine_depth = static_cast<int>(integer());
        else if (k == "refine_trigger") c.refine_trigger = real();
        else if (k == "rtol") c.rtol = real();
        else if (k == "atol") c.atol = real();
        else if (k == "h_min") c.h_min = real();
        else if (k == "t_cap") c.t_cap = real();
        else if (k == "eps_sing") c.eps_sing = real();
        else if (k == "z_max") c.z_max = real();
        else if (k == "bisect_tol") c.bisect_tol = real();
        else if (k == "threads") c.threads = static_cast<int>(integer());
        else if (k == "max_steps") c.max_steps = integer();
        else bad("unknown config key '" + k + "'");
    }
    validate_config(c);
    return c;
}

Json to_json(const EngineConfig& c) {
    return Json{{"n_rays_init", c.n_rays_init}, {"refine_depth", c.refine_depth}, {"refine_trigger", c.refine_trigger},
                {"rtol", c.rtol},               {"atol", c.atol},                 {"h_min", c.h_min},
                {"t_cap", c.t_cap},             {"eps_sing", c.eps_sing},         {"z_max", c.z_max},
                {"bisect_tol", c.bisect_tol},   {"threads", c.threads},           {"max_steps", c.max_steps}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        bad("'" + path + "' is not valid JSON: " + e.what());
    }
}

ProblemSpec load_spec(const std::string& path) {
    ProblemSpec s = spec_from_json(read_json_file(path));
    require_valid(s);
    return s;
}

EngineConfig load_config(const std::string& path, EngineConfig base) {
    return config_from_json(read_json_file(path), base);
}

Json to_json(const RunManifest& m) {
    return Json{{"spec_path", m.spec_path},       {"config_path", m.config_path}, {"command", m.command},
                {"seed", m.seed},                 {"tool_version", m.tool_version}, {"timestamp", m.timestamp},
                {"settings", m.settings}};
}

std::string manifest_hash(const RunManifest& m) {
    Json j = to_json(m);
    j.erase("timestamp");
    // nlohmann::json objects keep keys sorted, so dump() is canonical.
    const std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_number(double v) {
    if (std::isnan(v)) throw EvaluationError("NaN in output");
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

Json to_json(const RhoEstimate& e) {
    Json j{{"lower", num(e.lower)},
           {"upper", num(e.upper)},
           {"argmin_theta", num(e.argmin_theta)},
           {"rays_used", e.rays_used},
           {"refinement_rounds", e.refinement_rounds},
           {"widened", e.widened},
           {"kind", to_string(e.kind)}};
    if (e.unbounded())
        j["value"] = "unbounded";
    else
        j["value"] = e.value;
    if (!e.factor_values.empty()) {
        Json f = Json::array();
        for (double v : e.factor_values) f.push_back(num(v));
        j["factor_values"] = f;
        j["argmin_factor"] = e.argmin_factor;
    }
    return j;
}

Json to_json(const PropertyReport& r) {
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
    return Json{{"name", r.name},
                {"samples", r.samples},
                {"worst_violation", num(r.worst_violation)},
                {"threshold", num(r.threshold)},
                {"pass", r.pass},
                {"metrics", metrics},
                {"notes", r.notes}};
}

Json to_json(const CtReport& r) {
    return Json{{"precondition_ok", r.precondition_ok},
                {"precondition_excess", num(r.precondition_excess)},
                {"max_excess", num(r.max_excess)},
                {"rho_k", num(r.rho_k)},
                {"rho_hull", num(r.rho_hull)},
                {"equality_gap", num(r.equality_gap)},
                {"k_cells", r.hull.k_mask.count()},
                {"hull_cells", r.hull.hull_mask.count()},
                {"filled_components", r.hull.filled_components},
                {"cell_size", r.hull.cell_size},
                {"tol", r.tol},
                {"pass", r.pass}};
}

Json to_json(const RungeReport& r) {
    return Json{{"holds", r.holds},
                {"lhs", num(r.lhs)},
                {"rhs", num(r.rhs)},
                {"margin", num(r.margin)},
                {"boundary_points", r.boundary_points}};
}

void write_csv(std::ostream& os, const GridField& f) {
    os << "re,im,rho,status\n";
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            const Cx c = f.center(i, j);
            const GridCell& cell = f.at(i, j);
            double rho = 0.0;
            if (cell.status == CellStatus::Ok) rho = cell.value;
            if (cell.status == CellStatus::Unbounded) rho = kInf;
            os << format_number(c.real()) << ',' << format_number(c.imag()) << ',' << format_number(rho) << ','
               << to_string(cell.status) << '\n';
        }
    }
}

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void write_csv(const std::string& path, const GridField& f) {
    auto out = open_out(path);
    write_csv(out, f);
    finish(out, path);
}

PgmScale write_pgm(const std::string& path, const GridField& f, const std::string& hash) {
    PgmScale sc{kInf, -kInf};
    for (const auto& c : f.cells) {
        if (c.status != CellStatus::Ok) continue;
        const double v = -std::log(c.value);
        sc.min_neg_log = std::min(sc.min_neg_log, v);
        sc.max_neg_log = std::max(sc.max_neg_log, v);
    }
    if (sc.min_neg_log > sc.max_neg_log) sc = {0.0, 0.0};
    const double span = sc.max_neg_log - sc.min_neg_log;

    auto out = open_out(path, true);
    out << "P5\n# manifest " << hash << "\n" << f.nx << ' ' << f.ny << "\n255\n";
    std::string row(static_cast<std::size_t>(f.nx), '\0');
    for (int j = f.ny - 1; j >= 0; --j) {
        for (int i = 0; i < f.nx; ++i) {
            const GridCell& c = f.at(i, j);
            int px = 0;
            if (c.status == CellStatus::Unbounded) px = 255;
            if (c.status == CellStatus::Ok) {
                const double t = span > 0 ? (-std::log(c.value) - sc.min_neg_log) / span : 0.0;
                px = static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(t, 0.0, 1.0))));
            }
            row[static_cast<std::size_t>(i)] = static_cast<char>(static_cast<unsigned char>(px));
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    finish(out, path);
    return sc;
}

void write_pbm(std::ostream& os, const CellSet& s) {
    os << "P1\n" << s.nx << ' ' << s.ny << '\n';
    for (int j = s.ny - 1; j >= 0; --j) {
        for (int i = 0; i < s.nx; ++i) {
            if (i) os << ' ';
            os << (s.bits[static_cast<std::size_t>(j) * s.nx + i] ? '1' : '0');
        }
        os << '\n';
    }
}

void write_pbm(const std::string& path, const CellSet& s) {
    auto out = open_out(path);
    write_pbm(out, s);
    finish(out, path);
}

void write_json(const std::string& path, const Json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

}  // namespace hartogs
