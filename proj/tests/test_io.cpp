#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "hartogs/io.hpp"
#include "hartogs/kernels.hpp"
#include "hartogs/suites.hpp"

using namespace hartogs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hartogs_test_" + name);
}

}  // namespace

TEST_CASE("spec JSON round trip") {
    const Json j = Json::parse(R"({
        "ambient": {"type": "plane"},
        "region": {"type": "annulus", "center": [0.5, -1], "r_in": 0.25, "r_out": 2},
        "frame": {"type": "scaled", "c": [0, 2], "inner": {"type": "exp"}}
    })");
    const ProblemSpec s = spec_from_json(j);
    const ProblemSpec back = spec_from_json(to_json(s));
    CHECK(to_json(back) == to_json(s));
    CHECK(contains(back.region, Cx(0.5, 0)));
    CHECK_FALSE(contains(back.region, Cx(0.5, -1)));

    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"ambient": {"type": "plane"},
        "region": {"type": "blob"}, "frame": {"type": "exp"}})")),
                    InvalidSpec);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"ambient": {"type": "plane"},
        "region": {"type": "plane"}, "frame": {"type": "exp"}, "extra": 1})")),
                    InvalidSpec);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"ambient": {"type": "plane"},
        "region": {"type": "disk", "center": [0, 0], "radius": "one"}, "frame": {"type": "exp"}})")),
                    InvalidSpec);
}

TEST_CASE("config JSON") {
    const EngineConfig c = config_from_json(Json::parse(R"({"rtol": 1e-9})"));
    CHECK(c.rtol == 1e-9);
    CHECK(config_from_json(to_json(c)).rtol == 1e-9);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"rtoll": 1e-9})")), InvalidSpec);
    CHECK_THROWS(config_from_json(Json::parse(R"({"rtol": -1})")));
}

TEST_CASE("file loading errors") {
    CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), IoError);
    const auto p = scratch("broken.json");
    std::ofstream(p) << "{ not json";
    CHECK_THROWS_AS(load_spec(p.string()), InvalidSpec);
    std::filesystem::remove(p);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(kInf) == "inf");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK_THROWS_AS(format_number(std::nan("")), EvaluationError);
}

TEST_CASE("CSV layout") {
    GridField f;
    f.lo = {0, 0};
    f.hi = {2, 1};
    f.nx = 2;
    f.ny = 1;
    f.cells = {GridCell{0.5, 0.5, 0.5, CellStatus::Ok}, GridCell{kInf, 3, kInf, CellStatus::Unbounded}};
    std::ostringstream os;
    write_csv(os, f);
    CHECK(os.str() == "re,im,rho,status\n0.5,0.5,0.5,ok\n1.5,0.5,inf,unbounded\n");

    f.cells[1] = GridCell{};
    std::ostringstream os2;
    write_csv(os2, f);
    CHECK(os2.str() == "re,im,rho,status\n0.5,0.5,0.5,ok\n1.5,0.5,0,outside\n");
}

TEST_CASE("PGM and PBM output") {
    GridField f;
    f.lo = {0, 0};
    f.hi = {3, 1};
    f.nx = 3;
    f.ny = 1;
    f.cells = {GridCell{1, 1, 1, CellStatus::Ok}, GridCell{std::exp(-1.0), 0, 0, CellStatus::Ok},
               GridCell{kInf, 1, kInf, CellStatus::Unbounded}};
    const auto p = scratch("field.pgm");
    const PgmScale sc = write_pgm(p.string(), f, "0123456789abcdef");
    CHECK(sc.min_neg_log == doctest::Approx(0.0));
    CHECK(sc.max_neg_log == doctest::Approx(1.0));
    const std::string img = slurp(p);
    const std::string header = "P5\n# manifest 0123456789abcdef\n3 1\n255\n";
    REQUIRE(img.size() == header.size() + 3);
    CHECK(img.substr(0, header.size()) == header);
    CHECK(static_cast<unsigned char>(img[header.size()]) == 255);
    CHECK(static_cast<unsigned char>(img[header.size() + 1]) == 0);
    CHECK(static_cast<unsigned char>(img[header.size() + 2]) == 255);
    std::filesystem::remove(p);

    // Top row of the image is the largest imaginary part.
    const CellSet s{2, 2, {1, 0, 0, 1}};
    std::ostringstream os;
    write_pbm(os, s);
    CHECK(os.str() == "P1\n2 2\n0 1\n1 0\n");
    CHECK_THROWS_AS(write_pbm("/nonexistent/dir/x.pbm", s), IoError);
}

TEST_CASE("manifest hash") {
    RunManifest m;
    m.command = "field";
    m.spec_path = "a.json";
    m.seed = 7;
    m.timestamp = "2024-01-01T00:00:00Z";
    const std::string h = manifest_hash(m);
    CHECK(h.size() == 16);
    RunManifest later = m;
    later.timestamp = "2025-06-01T12:00:00Z";
    CHECK(manifest_hash(later) == h);
    RunManifest other = m;
    other.seed = 8;
    CHECK(manifest_hash(other) != h);
}

TEST_CASE("report JSON") {
    RhoEstimate e;
    e.value = kInf;
    e.lower = 5.0;
    e.upper = kInf;
    CHECK(to_json(e)["value"] == "unbounded");
    PropertyReport r;
    r.name = "x";
    r.worst_violation = -1.0;
    r.threshold = 0.0;
    r.finish();
    CHECK(to_json(r)["pass"] == true);
}

TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 11);
    CHECK_THROWS_AS(run_suite("nope", EngineConfig{}), PreconditionError);
    const auto res = run_suite("kobayashi", EngineConfig{});
    REQUIRE(res.size() == 1);
    CHECK(res[0].pass());
}
