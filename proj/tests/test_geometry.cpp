#include <doctest.h>

#include <cmath>
#include <limits>

#include "hartogs/geometry.hpp"

using namespace hartogs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent distance from z to segment [a, b].
double seg_dist(Cx z, Cx a, Cx b) {
    const Cx d = b - a;
    double t = ((z - a) * std::conj(d)).real() / std::norm(d);
    t = std::fmax(0.0, std::fmin(1.0, t));
    return std::abs(z - (a + t * d));
}

Cx fd(const Frame& f, Cx z) {
    const double h = 1e-6;
    return (frame_eval(f, z + h) - frame_eval(f, z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("membership of the basic domains") {
    CHECK(contains(make_plane(), Cx(1e9, -3)));
    CHECK(contains(make_punctured_plane(), Cx(1e-300, 0)));
    CHECK_FALSE(contains(make_punctured_plane(), Cx(0, 0)));
    const Domain disk = make_disk({1, 1}, 2);
    CHECK(contains(disk, Cx(2.9, 1)));
    CHECK_FALSE(contains(disk, Cx(3, 1)));
    const Domain ann = make_annulus(0, 0.2, 2);
    CHECK_FALSE(contains(ann, Cx(0.1, 0)));
    CHECK(contains(ann, Cx(0, 1)));
    CHECK_FALSE(contains(ann, Cx(2, 0)));
    const Domain hp = make_half_plane({-1, 0}, {1, 0});
    CHECK(contains(hp, Cx(-0.5, 100)));
    CHECK_FALSE(contains(hp, Cx(-1.5, 0)));
}

TEST_CASE("boundary_gap matches closed-form distances") {
    const Cx z{0.3, -0.4};
    CHECK(boundary_gap(make_disk(0, 1), z) == doctest::Approx(1 - std::abs(z)).epsilon(1e-14));
    CHECK(boundary_gap(make_annulus(0, 0.2, 2), z) == doctest::Approx(std::abs(z) - 0.2).epsilon(1e-14));
    CHECK(boundary_gap(make_annulus(0, 0.2, 2), Cx(1.9, 0)) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(boundary_gap(make_half_plane({-1, 0}, {0, 1}), Cx(5, 3)) == doctest::Approx(3).epsilon(1e-14));
    CHECK_THROWS_AS(make_half_plane({-1, 0}, {0, 2}), InvalidSpec);
    CHECK(boundary_gap(make_punctured_plane(), z) == doctest::Approx(0.5));
    CHECK(boundary_gap(make_plane(), z) == kInf);

    const std::vector<Cx> v{{1.0, 0.0}, {0.4, 0.9}, {-0.8, 0.6}, {-0.7, -0.7}, {0.5, -0.8}};
    const Domain pent = make_polygon(v);
    for (Cx p : {Cx(0, 0), Cx(0.2, 0.3), Cx(-0.5, -0.4), Cx(0.7, -0.1)}) {
        REQUIRE(contains(pent, p));
        double d = kInf;
        for (std::size_t i = 0; i < v.size(); ++i) d = std::fmin(d, seg_dist(p, v[i], v[(i + 1) % v.size()]));
        CHECK(boundary_gap(pent, p) == doctest::Approx(d).epsilon(1e-12));
    }
    CHECK_THROWS_AS(boundary_gap(make_disk(0, 1), Cx(2, 0)), OutsideDomain);
}

TEST_CASE("nearest complement point lies on the boundary") {
    const auto w = nearest_complement_point(make_disk(0, 1), Cx(0.5, 0));
    REQUIRE(w.has_value());
    CHECK(std::abs(*w - Cx(1, 0)) < 1e-12);
    CHECK_FALSE(nearest_complement_point(make_plane(), Cx(0, 0)).has_value());
    const auto o = nearest_complement_point(make_punctured_plane(), Cx(0, 3));
    REQUIRE(o.has_value());
    CHECK(std::abs(*o) < 1e-15);
}

TEST_CASE("factories reject malformed domains and frames") {
    CHECK_THROWS_AS(make_disk(0, -1), InvalidSpec);
    CHECK_THROWS_AS(make_annulus(0, 1, 0.5), InvalidSpec);
    CHECK_THROWS_AS(make_half_plane(0, 0), InvalidSpec);
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidSpec);
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}}), InvalidSpec);
    CHECK_THROWS_AS(make_monomial(-1), InvalidSpec);
    CHECK_THROWS_AS(make_scaled(0.0, make_exp()), InvalidSpec);
    CHECK_THROWS_AS(make_split_product({}), InvalidSpec);
}

TEST_CASE("products flatten and take the factor minimum") {
    const Domain p = make_product({make_disk(0, 1), make_product({make_plane(), make_annulus(0, 0.2, 2)})});
    CHECK(p.dimension() == 3);
    const std::vector<Cx> z{{0.5, 0}, {100, 0}, {1.5, 0}};
    CHECK(contains(p, z));
    CHECK(boundary_gap(p, z) == doctest::Approx(0.5));
    const std::vector<Cx> bad{{1.5, 0}, {0, 0}, {1, 0}};
    CHECK_FALSE(contains(p, bad));
    const std::vector<Cx> short_pt{{0, 0}};
    CHECK_THROWS_AS(contains(p, short_pt), DimensionMismatch);
}

TEST_CASE("frame jets agree with finite differences") {
    for (const Frame& f : {make_exp(), make_monomial(3), make_monomial(-2), make_inv_z(),
                           make_scaled({0.5, -2}, make_exp()), make_const_one()}) {
        for (Cx z : {Cx(0.7, 0.2), Cx(-1.1, 0.9)}) {
            const FrameJet j = frame_jet(f, z);
            CHECK(std::abs(j.g - frame_eval(f, z)) < 1e-14 * (1 + std::abs(j.g)));
            CHECK(std::abs(j.dg - fd(f, z)) < 1e-6 * (1 + std::abs(j.dg)));
            const double h = 1e-4;
            const Cx d2 = (frame_eval(f, z + h) - 2.0 * frame_eval(f, z) + frame_eval(f, z - h)) / (h * h);
            CHECK(std::abs(j.d2g - d2) < 1e-4 * (1 + std::abs(j.d2g)));
        }
    }
    CHECK(frame_excludes(make_monomial(2), 0.0));
    CHECK(frame_excludes(make_inv_z(), 0.0));
    CHECK_FALSE(frame_excludes(make_exp(), 0.0));
    CHECK_THROWS_AS(frame_eval(make_inv_z(), 0.0), EvaluationError);
}

TEST_CASE("problem validation") {
    CHECK(validate_problem({make_plane(), make_disk(0, 1), make_const_one()}).valid());
    CHECK(validate_problem({make_punctured_plane(), make_punctured_plane(), make_monomial(-3)}).valid());
    // z^2 dz vanishes at 0, which the plane contains.
    CHECK_FALSE(validate_problem({make_plane(), make_disk(0, 1), make_monomial(2)}).valid());
    CHECK_FALSE(validate_problem({make_plane(), make_plane(), make_inv_z()}).valid());
    // Region must lie inside the ambient domain.
    CHECK_FALSE(validate_problem({make_disk(0, 1), make_disk(0, 3), make_const_one()}).valid());
    CHECK_FALSE(validate_problem({make_disk(0, 1), make_plane(), make_const_one()}).valid());
    // Arity must agree across the triple.
    CHECK_FALSE(validate_problem({make_product({make_plane(), make_plane()}), make_product({make_plane(), make_plane()}),
                                  make_split_product({make_exp()})})
                    .valid());
    CHECK_THROWS_AS(require_valid({make_plane(), make_plane(), make_inv_z()}), InvalidSpec);

    const ProblemSpec prod{make_product({make_plane(), make_punctured_plane()}),
                           make_product({make_disk(0, 1), make_punctured_plane()}),
                           make_split_product({make_const_one(), make_monomial(1)})};
    CHECK(validate_problem(prod).valid());
    const ProblemSpec f1 = factor_problem(prod, 1);
    CHECK(std::holds_alternative<PuncturedPlane>(f1.region.shape));
    CHECK_THROWS_AS(factor_problem(prod, 2), DimensionMismatch);
}

TEST_CASE("samplers stay inside / on the boundary") {
    const Domain ann = make_annulus({1, 1}, 0.5, 1.5);
    for (Cx z : interior_samples(ann, 30)) CHECK(contains(ann, z));
    const auto b = boundary_samples(ann, 0.05);
    for (Cx z : b) {
        const double r = std::abs(z - Cx(1, 1));
        CHECK((std::abs(r - 0.5) < 1e-12 || std::abs(r - 1.5) < 1e-12));
    }
    CHECK(b.size() >= static_cast<std::size_t>(2 * 3.14159 * 2.0 / 0.05));
    CHECK_THROWS_AS(boundary_samples(make_plane(), 0.1), PreconditionError);
}
