#pragma once

// Plane domains, nonvanishing holomorphic frames g(z)dz, and the problem
// triple (ambient X, region Omega, frame omega) the radius is computed for.

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hartogs/errors.hpp"

namespace hartogs {

using Cx = std::complex<double>;

// ---------------------------------------------------------------- domains

struct Plane {};
struct PuncturedPlane {};

struct Disk {
    Cx center;
    double radius;
};

struct Annulus {
    Cx center;
    double r_in;
    double r_out;
};

// Open half plane {z : Re((z - base) * conj(direction)) > 0}; `direction`
// is the inward unit normal.
struct HalfPlane {
    Cx base;
    Cx direction;
};

// Simple polygon, even-odd interior. Points within `collar_rel` times the
// bounding-box diameter of an edge count as boundary (not contained).
struct Polygon {
    std::vector<Cx> vertices;
    double collar_rel = 1e-12;
};

struct Domain;

struct ProductDomain {
    std::vector<Domain> factors;
};

struct Domain {
    std::variant<Plane, PuncturedPlane, Disk, Annulus, HalfPlane, Polygon, ProductDomain> shape;

    bool is_product() const { return std::holds_alternative<ProductDomain>(shape); }
    // 1 for planar domains, number of factors for products.
    std::size_t dimension() const;
    bool bounded() const;
};

// Construction helpers; they throw InvalidSpec on violated invariants.
Domain make_plane();
Domain make_punctured_plane();
Domain make_disk(Cx center, double radius);
Domain make_annulus(Cx center, double r_in, double r_out);
Domain make_half_plane(Cx base, Cx direction);
Domain make_polygon(std::vector<Cx> vertices);
// Nested products are flattened.
Domain make_product(std::vector<Domain> factors);

// Invariant violations of a domain description (empty when well formed).
std::vector<std::string> domain_issues(const Domain& d);

bool contains(const Domain& d, Cx z);
bool contains(const Domain& d, std::span<const Cx> z);

// Euclidean distance from z to the complement of d (+inf for the plane).
// Throws OutsideDomain when z is not in d.
double boundary_gap(const Domain& d, Cx z);
double boundary_gap(const Domain& d, std::span<const Cx> z);

// Closest point of the complement of d to z (for planar d). Empty for the
// plane. Used to aim rays at near misses.
std::optional<Cx> nearest_complement_point(const Domain& d, Cx z);

// Axis-aligned box (lo, hi) covering a bounded planar domain.
std::pair<Cx, Cx> bounding_box(const Domain& d);

// Deterministic sample of points inside a planar domain: an n x n lattice
// over the bounding box (or a window of half-width `window` for unbounded
// domains) filtered by membership.
std::vector<Cx> interior_samples(const Domain& d, int n, double window = 50.0);

// Points on the boundary of a bounded planar domain with spacing <= `spacing`.
std::vector<Cx> boundary_samples(const Domain& d, double spacing);

std::string describe(const Domain& d);

// ----------------------------------------------------------------- frames

struct ConstOne {};
struct ExpFrame {};
struct Monomial {
    int k;
};
struct InvZ {};

struct Frame;

struct Scaled {
    Cx c;
    std::shared_ptr<const Frame> inner;
};

struct SplitProduct {
    std::vector<Frame> factors;
};

struct Frame {
    std::variant<ConstOne, ExpFrame, Monomial, InvZ, Scaled, SplitProduct> kind;

    bool is_product() const { return std::holds_alternative<SplitProduct>(kind); }
    std::size_t dimension() const;
};

Frame make_const_one();
Frame make_exp();
Frame make_monomial(int k);
Frame make_inv_z();
Frame make_scaled(Cx c, Frame inner);
Frame make_split_product(std::vector<Frame> factors);

// g and its first two derivatives at z, for omega = g(z) dz.
struct FrameJet {
    Cx g;
    Cx dg;
    Cx d2g;
};

// True when g is not defined (or vanishes) at z for this frame.
bool frame_excludes(const Frame& f, Cx z);

// g(z); throws EvaluationError at excluded points.
Cx frame_eval(const Frame& f, Cx z);
FrameJet frame_jet(const Frame& f, Cx z);

// True when g has a zero or pole somewhere in the finite plane (i.e. the
// ambient domain has to avoid the origin).
bool frame_needs_puncture(const Frame& f);

std::string describe(const Frame& f);

// ---------------------------------------------------------------- problem

struct ProblemSpec {
    Domain ambient;
    Domain region;
    Frame frame;

    std::size_t dimension() const { return region.dimension(); }
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

ValidationReport validate_problem(const ProblemSpec& spec);

// Throws InvalidSpec with the joined violations if the spec is invalid.
void require_valid(const ProblemSpec& spec);

// The j-th planar factor of a product problem (the problem itself when
// planar and j == 0).
ProblemSpec factor_problem(const ProblemSpec& spec, std::size_t j);

}  // namespace hartogs
