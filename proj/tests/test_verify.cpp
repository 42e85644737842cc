#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "hartogs/kernels.hpp"
#include "hartogs/verify.hpp"

using namespace hartogs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const EngineConfig cfg{};

}  // namespace

TEST_CASE("closed-form radii") {
    const OracleValue e = oracle_rho({make_plane(), make_plane(), make_exp()}, Cx(1, 0));
    CHECK(e.kind == OracleValue::Kind::Finite);
    CHECK(e.value == doctest::Approx(2.718281828).epsilon(1e-9));
    CHECK(oracle_rho({make_punctured_plane(), make_punctured_plane(), make_monomial(-2)}, Cx(1, 0)).value ==
          doctest::Approx(1.0));
    CHECK(oracle_rho({make_plane(), make_disk(0, 1), make_const_one()}, Cx(0.25, 0)).value == doctest::Approx(0.75));
    CHECK(oracle_rho({make_punctured_plane(), make_punctured_plane(), make_inv_z()}, Cx(3, 0)).kind ==
          OracleValue::Kind::Unbounded);
    CHECK(oracle_rho({make_plane(), make_plane(), make_const_one()}, Cx(3, 0)).kind == OracleValue::Kind::Unbounded);
    CHECK(oracle_rho({make_plane(), make_plane(), make_scaled({3, 4}, make_exp())}, 0.0).value ==
          doctest::Approx(5.0));
    // No closed form for e^z dz restricted to a disk.
    CHECK_FALSE(oracle_rho({make_plane(), make_disk(0, 1), make_exp()}, 0.0).known());

    const ProblemSpec p{make_product({make_plane(), make_plane()}), make_product({make_disk(0, 1), make_plane()}),
                        make_split_product({make_const_one(), make_exp()})};
    const std::vector<Cx> a{{0.5, 0}, {-2, 0}};
    CHECK(oracle_rho(p, a).value == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("oracle battery") {
    std::vector<OracleCase> cases{{"exp", {make_plane(), make_plane(), make_exp()}, {{Cx(0, 0)}, {Cx(1, 1)}}}};
    const PropertyReport r = check_oracles(cases, cfg, 0.02);
    CHECK(r.pass);
    CHECK(r.samples == 2);
    CHECK(r.worst_violation < 1e-6);
    std::vector<OracleCase> none{{"exp on disk", {make_plane(), make_disk(0, 1), make_exp()}, {{Cx(0, 0)}}}};
    CHECK_THROWS_AS(check_oracles(none, cfg, 0.02), InvalidSpec);
}

TEST_CASE("Lipschitz battery") {
    const ProblemSpec disk{make_plane(), make_disk(0, 1), make_const_one()};
    const std::vector<std::pair<Cx, Cx>> pairs{{{0, 0}, {0.5, 0}}, {{0.1, 0.2}, {-0.3, 0.6}}, {{0.9, 0}, {0, 0.9}}};
    const PropertyReport r = check_lipschitz(disk, pairs, cfg, 1e-6);
    CHECK(r.pass);
    CHECK(r.worst_violation <= 0.0);
    CHECK_THROWS_AS(check_lipschitz({make_plane(), make_plane(), make_exp()}, pairs, cfg, 1e-6), PreconditionError);
}

TEST_CASE("sub-mean-value battery") {
    const ProblemSpec punct{make_plane(), make_annulus(0, 1e-6, 1), make_const_one()};
    const std::vector<Cx> c{{0.5, 0}, {0, 0.3}, {-0.2, -0.2}};
    const std::vector<double> r{0.2, 0.1, 0.15};
    const PropertyReport s = check_submean(punct, c, r, 32, cfg, 1e-3);
    CHECK(s.pass);
    // Circles off the ridge |a| = 1/2 see the harmonic -log|a|.
    CHECK(std::abs(s.worst_violation) < 1e-5);
    // Around the ridge the inequality is strict.
    const PropertyReport ridge = check_submean(punct, std::span(c.data(), 1), std::span(r.data(), 1), 32, cfg, 1e-3);
    CHECK(ridge.worst_violation < -0.1);

    const ProblemSpec m1{make_punctured_plane(), make_punctured_plane(), make_monomial(1)};
    const std::vector<Cx> c1{{1, 0}};
    const std::vector<double> r1{0.5};
    const PropertyReport h = check_submean(m1, c1, r1, 32, cfg, 1e-3);
    CHECK(h.pass);
    CHECK(h.metrics.at("worst_abs_margin") < 1e-6);

    const std::vector<double> too_big{0.6};
    const std::vector<Cx> c2{{0.5, 0}};
    CHECK_THROWS_AS(check_submean(punct, c2, too_big, 16, cfg, 1e-3), OutsideDomain);

    const PropertyReport v = check_submean({make_plane(), make_plane(), make_const_one()}, c1, r1, 8, cfg, 1e-3);
    CHECK(v.pass);
    CHECK(v.worst_violation == -kInf);
    REQUIRE(v.notes.size() == 1);
}

TEST_CASE("Kobayashi bound on the unit disk") {
    const std::vector<Cx> pts{{0, 0}, {0.5, 0}, {0.9, 0}};
    const PropertyReport r = check_kobayashi_disk(pts, cfg, 1e-6);
    CHECK(r.pass);
    CHECK(r.metrics.at("rel_error_at_0") < 1e-6);
    CHECK(r.metrics.at("strict_points") == 2);
}

TEST_CASE("boundary decay") {
    std::vector<Cx> seq;
    for (int k = 1; k <= 10; ++k) seq.emplace_back(1 - std::ldexp(1.0, -k), 0);
    const PropertyReport r = check_boundary_decay({make_plane(), make_disk(0, 1), make_const_one()}, 1.0, seq, cfg);
    CHECK(r.pass);
    CHECK(r.metrics.at("last") == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-6));

    // A sequence that does not approach the boundary fails the decay test.
    std::vector<Cx> flat;
    for (int k = 1; k <= 6; ++k) flat.emplace_back(0.1 * k / 6.0, 0);
    CHECK_FALSE(check_boundary_decay({make_plane(), make_disk(0, 1), make_const_one()}, 1.0, flat, cfg).pass);
    const std::vector<Cx> out{{0.5, 0}, {0.9, 0}, {0.99, 0}, {1.5, 0}};
    CHECK_THROWS_AS(check_boundary_decay({make_plane(), make_disk(0, 1), make_const_one()}, 1.0, out, cfg),
                    OutsideDomain);
}

TEST_CASE("convergence radius from Cauchy coefficients") {
    const ProblemSpec disk{make_plane(), make_disk(0, 1), make_const_one()};
    const double geo = convergence_radius(disk, 0.0, [](Cx z) { return 1.0 / (z - 1.0); }, 0.5, 32, cfg);
    CHECK(geo == doctest::Approx(1.0).epsilon(0.02));
    CHECK(convergence_radius(disk, 0.0, [](Cx) { return Cx(1.0); }, 0.5, 32, cfg) == kInf);
    const ProblemSpec expo{make_plane(), make_plane(), make_exp()};
    // u o phi_0 = log(1 + zeta).
    CHECK(convergence_radius(expo, 0.0, [](Cx z) { return z; }, 0.5, 64, cfg) == doctest::Approx(1.0).epsilon(0.02));
    CHECK_THROWS_AS(convergence_radius(disk, 0.0, [](Cx z) { return z; }, 1.0, 32, cfg), PreconditionError);
    CHECK_THROWS_AS(convergence_radius(disk, 0.0, [](Cx z) { return z; }, 0.5, 8, cfg), PreconditionError);
    CHECK_THROWS_AS(convergence_radius(disk, 0.0, [](Cx) -> Cx { throw std::runtime_error("boom"); }, 0.5, 16, cfg),
                    EvaluationError);
}

TEST_CASE("exhaustion builder") {
    GridField flat;
    flat.lo = {-1, -1};
    flat.hi = {1, 1};
    flat.nx = flat.ny = 20;
    flat.cells.assign(400, GridCell{1.0, 1.0, 1.0, CellStatus::Ok});
    const CellSet none{20, 20, std::vector<std::uint8_t>(400, 0)};
    const std::vector<double> stages{0.3, 0.6, 0.9};
    const ExhaustionField ex = build_exhaustion(flat, none, stages);
    CHECK(ex.stage_consistent);
    CHECK(ex.stage_mismatch == 0.0);
    CHECK(ex.dominates);
    CHECK(ex.sublevels_nested);
    CHECK(ex.constants.front() == 0.0);
    // With rho = 1 the field is the staircase p itself: radial and
    // nondecreasing.
    for (int j = 0; j < 20; ++j)
        for (int i = 0; i + 1 < 20; ++i) {
            const Cx a = flat.center(i, j);
            const Cx b = flat.center(i + 1, j);
            if (std::abs(b) > std::abs(a)) CHECK(ex.psi[j * 20 + i + 1] >= ex.psi[j * 20 + i]);
        }

    const ProblemSpec punct{make_plane(), make_annulus(0, 1e-6, 1), make_const_one()};
    const GridField f = rho_field(punct, {-1, -1}, {1, 1}, 16, 16, cfg);
    const CellSet none16{16, 16, std::vector<std::uint8_t>(256, 0)};
    const ExhaustionField e2 = build_exhaustion(f, none16, stages);
    CHECK(e2.stage_consistent);
    for (std::size_t k = 0; k < f.cells.size(); ++k)
        if (f.cells[k].status == CellStatus::Ok) CHECK(e2.psi[k] >= -std::log(f.cells[k].value));

    const std::vector<double> bad{0.5, 0.4};
    CHECK_THROWS_AS(build_exhaustion(flat, none, bad), PreconditionError);
    const std::vector<double> wide{0.5, 1.2};
    CHECK_THROWS_AS(build_exhaustion(f, none16, wide), PreconditionError);
}
