#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hartogs/continuation.hpp"

using namespace hartogs;

namespace {

const EngineConfig cfg{};

const ProblemSpec exp_plane{make_plane(), make_plane(), make_exp()};
const ProblemSpec unit_disk{make_plane(), make_disk(0, 1), make_const_one()};

// Exit distance of the ray a + t e^{i theta} from the unit disk.
double disk_exit(Cx a, double theta) {
    const Cx e = std::polar(1.0, theta);
    const double b = (a * std::conj(e)).real();
    return -b + std::sqrt(b * b - std::norm(a) + 1.0);
}

}  // namespace

TEST_CASE("rays of dz in the unit disk stop at the circle") {
    for (double th : {0.0, 1.0, 2.5, 4.0}) {
        const Cx a{0.3, -0.2};
        const RayOutcome r = trace_ray(unit_disk, a, th, cfg);
        CHECK(r.kind == RayKind::ExitRegion);
        CHECK(r.failure_radius == doctest::Approx(disk_exit(a, th)).epsilon(2e-6));
        CHECK(std::abs(r.witness) < 1.0);
    }
}

TEST_CASE("rays of e^z dz from 0") {
    // phi_0(zeta) = log(1 + zeta): the ray towards -1 hits the branch point.
    const RayOutcome hit = trace_ray(exp_plane, 0.0, std::numbers::pi, cfg);
    CHECK(hit.kind == RayKind::Singularity);
    CHECK(hit.failure_radius == doctest::Approx(1.0).epsilon(1e-6));
    // Towards +1 the path creeps off to infinity logarithmically.
    const RayOutcome cap = trace_ray(exp_plane, 0.0, 0.0, cfg);
    CHECK(cap.capped());
}

TEST_CASE("trace_ray preconditions") {
    CHECK_THROWS_AS(trace_ray(unit_disk, Cx(2, 0), 0.0, cfg), OutsideDomain);
    EngineConfig bad = cfg;
    bad.rtol = -1;
    CHECK_THROWS_AS(trace_ray(unit_disk, 0.0, 0.0, bad), InvalidSpec);
    CHECK_THROWS_AS(validate_config(bad), InvalidSpec);
    const ProblemSpec invalid{make_plane(), make_plane(), make_inv_z()};
    CHECK_THROWS_AS(trace_ray(invalid, Cx(1, 0), 0.0, cfg), InvalidSpec);
}

TEST_CASE("rho of e^z dz on C is e^{Re a}") {
    for (Cx a : {Cx(0, 0), Cx(1, 0), Cx(-1, 0), Cx(0, 1), Cx(1, 1)}) {
        const RhoEstimate e = rho_estimate(exp_plane, a, cfg);
        const double want = std::exp(a.real());
        CHECK(e.value == doctest::Approx(want).epsilon(1e-6));
        CHECK(e.lower <= want);
        CHECK(want <= e.upper * (1 + 1e-7));
        CHECK(e.kind == RayKind::Singularity);
        // The minimizing ray points at the branch point zeta = -e^a.
        const double th = std::arg(-std::exp(a));
        CHECK(std::abs(std::remainder(e.argmin_theta - th, 2 * std::numbers::pi)) < 1e-3);
    }
}

TEST_CASE("rho of z^k dz on C*") {
    for (int k : {0, 1, 2, -2, -3}) {
        const ProblemSpec s{make_punctured_plane(), make_punctured_plane(), make_monomial(k)};
        for (Cx a : {Cx(0.5, 0), Cx(1, 0), Cx(2, 0), Cx(0, 1)}) {
            const double want = std::pow(std::abs(a), k + 1.0) / std::abs(k + 1.0);
            CHECK(rho_estimate(s, a, cfg).value == doctest::Approx(want).epsilon(1e-6));
        }
    }
}

TEST_CASE("unbounded radii") {
    const RhoEstimate c = rho_estimate({make_plane(), make_plane(), make_const_one()}, Cx(1, 0), cfg);
    CHECK(c.unbounded());
    CHECK(c.lower == cfg.t_cap);
    const RhoEstimate z = rho_estimate({make_punctured_plane(), make_punctured_plane(), make_inv_z()}, Cx(1, 0), cfg);
    CHECK(z.unbounded());
    CHECK(z.bracket_width() == 0.0);
}

TEST_CASE("rho of dz is the boundary distance") {
    CHECK(rho_estimate(unit_disk, 0.25, cfg).value == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(rho_estimate(unit_disk, 0.0, cfg).value == doctest::Approx(1.0).epsilon(1e-6));
    const ProblemSpec ann{make_plane(), make_annulus(0, 0.2, 2), make_const_one()};
    const Cx a{1, 0.3};
    CHECK(rho_estimate(ann, a, cfg).value == doctest::Approx(std::abs(a) - 0.2).epsilon(1e-6));
    CHECK_THROWS_AS(rho_estimate(unit_disk, Cx(1, 0), cfg), OutsideDomain);
}

TEST_CASE("split products use the per-factor minimum") {
    const ProblemSpec p{make_product({make_plane(), make_punctured_plane()}),
                        make_product({make_plane(), make_punctured_plane()}),
                        make_split_product({make_exp(), make_monomial(1)})};
    const std::vector<Cx> a{{0.5, 0}, {1, 0}};
    const RhoEstimate e = rho_estimate(p, a, cfg);
    REQUIRE(e.factor_values.size() == 2);
    CHECK(e.factor_values[0] == doctest::Approx(std::exp(0.5)).epsilon(1e-6));
    CHECK(e.factor_values[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(e.argmin_factor == 1);
    CHECK(e.value == doctest::Approx(0.5).epsilon(1e-6));
    const std::vector<Cx> wrong{{0.5, 0}};
    CHECK_THROWS_AS(rho_estimate(p, wrong, cfg), DimensionMismatch);
}

TEST_CASE("phi inverts the Abelian integral") {
    for (Cx zeta : {Cx(0.5, 0), Cx(0.3, 0.4), Cx(-0.6, -0.2)}) {
        const Cx z = phi_eval(exp_plane, 0.0, zeta, cfg);
        CHECK(std::abs(z - std::log(1.0 + zeta)) < 1e-8);
    }
    // z dz at a = 1: alpha(z) = (z^2 - 1)/2, phi(zeta) = sqrt(1 + 2 zeta).
    const ProblemSpec m1{make_punctured_plane(), make_punctured_plane(), make_monomial(1)};
    const Cx zeta{0.2, -0.25};
    CHECK(std::abs(phi_eval(m1, 1.0, zeta, cfg) - std::sqrt(1.0 + 2.0 * zeta)) < 1e-8);

    const PhiTrace tr = phi_trace(exp_plane, Cx(0.2, 0.1), Cx(0.4, 0.7), cfg);
    CHECK(std::abs(abelian_integral(make_exp(), tr.path) - Cx(0.4, 0.7)) < 1e-8);
    CHECK_THROWS_AS(phi_eval(exp_plane, 0.0, Cx(-1.5, 0), cfg), EvaluationError);
}

TEST_CASE("Abelian integral along a polyline") {
    const std::vector<Cx> seg{{0, 0}, {1, 0}};
    CHECK(std::abs(abelian_integral(make_exp(), seg) - (std::exp(1.0) - 1.0)) < 1e-13);
    std::vector<Cx> loop;
    for (int k = 0; k <= 64; ++k) loop.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 64));
    // dz/z around the origin: 2 pi i, independent of the polygonal path.
    CHECK(std::abs(abelian_integral(make_inv_z(), loop) - Cx(0, 2 * std::numbers::pi)) < 1e-10);
}

TEST_CASE("rho_field flags cells") {
    const GridField f = rho_field(unit_disk, {-1.5, -1.5}, {1.5, 1.5}, 6, 6, cfg);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            const Cx c = f.center(i, j);
            const GridCell& g = f.at(i, j);
            if (std::abs(c) < 1) {
                CHECK(g.status == CellStatus::Ok);
                CHECK(g.value == doctest::Approx(1 - std::abs(c)).epsilon(1e-6));
            } else {
                CHECK(g.status == CellStatus::OutsideDomain);
            }
        }
    const GridField u = rho_field({make_plane(), make_plane(), make_const_one()}, {0, 0}, {1, 1}, 2, 2, cfg);
    for (const auto& g : u.cells) CHECK(g.status == CellStatus::Unbounded);
    CHECK_THROWS_AS(rho_field(unit_disk, {0, 0}, {0, 1}, 2, 2, cfg), PreconditionError);
}
