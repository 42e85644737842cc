#pragma once

// Rasterized holomorphically convex hulls of compact sets in plane domains.
// For a plane domain the hull of K is K together with the components of
// Omega \ K that are relatively compact in Omega, which on a raster become
// the cells a flood fill from the boundary cannot reach.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hartogs/continuation.hpp"

namespace hartogs {

// Cell grid over the box [lo, hi] with the region membership of each cell
// center. Row-major with row j (imaginary part) outer, as in GridField.
struct Raster {
    Cx lo;
    Cx hi;
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> in_region;

    std::size_t size() const { return in_region.size(); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    Cx center(int i, int j) const;
    Cx center(std::size_t k) const { return center(static_cast<int>(k % nx), static_cast<int>(k / nx)); }
    double dx() const { return (hi.real() - lo.real()) / nx; }
    double dy() const { return (hi.imag() - lo.imag()) / ny; }
    double cell_size() const { return std::max(dx(), dy()); }
    bool on_frame(std::size_t k) const;
};

Raster make_raster(const Domain& region, Cx lo, Cx hi, int nx, int ny);

// A set of raster cells, one flag per cell.
struct CellSet {
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> bits;

    std::size_t count() const;
    bool empty() const { return count() == 0; }
    bool test(std::size_t k) const { return bits[k] != 0; }
    bool subset_of(const CellSet& other) const;
    bool operator==(const CellSet&) const = default;
};

CellSet empty_cells(const Raster& r);
// Cells whose centers satisfy pred.
CellSet cells_where(const Raster& r, const std::function<bool(Cx)>& pred);
std::vector<Cx> cell_centers(const Raster& r, const CellSet& s);

struct HullResult {
    CellSet k_mask;
    CellSet hull_mask;
    int filled_components = 0;
    double cell_size = 0.0;
};

// Pre: K inside the region cells. Throws PreconditionError when K touches
// the raster frame while the region is unbounded.
HullResult hull_compute(const CellSet& k, const Domain& region, const Raster& raster);

struct SetRho {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool unbounded = false;
    Cx argmin{};
};

// inf of rho over the cell centers of s (over the points for the span
// overload). Throws PreconditionError on an empty set.
SetRho rho_over_set(const CellSet& s, const Raster& raster, const ProblemSpec& spec, const EngineConfig& cfg);
SetRho rho_over_set(std::span<const Cx> points, const ProblemSpec& spec, const EngineConfig& cfg);

struct CtReport {
    bool precondition_ok = false;
    // max over K of |f| - rho (positive means the precondition failed).
    double precondition_excess = 0.0;
    HullResult hull;
    // (a) max over the hull of |f| - rho.
    double max_excess = 0.0;
    double rho_k = 0.0;
    double rho_hull = 0.0;
    // (b) |rho(K) - rho(hull)|.
    double equality_gap = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Checks |f| <= rho on the hull of K given it on K, and rho(K) = rho(hull).
// When the precondition fails on K the report says so and nothing else is
// computed.
CtReport check_ct(const CellSet& k, const Raster& raster, const ProblemSpec& spec,
                  const std::function<double(Cx)>& abs_f, const EngineConfig& cfg, double tol);

struct RungeReport {
    bool holds = false;
    // max over boundary samples b of rho(b, Omega').
    double lhs = 0.0;
    // rho(K, Omega).
    double rhs = 0.0;
    double margin = 0.0;
    std::size_t boundary_points = 0;
};

// Tests max_{b in dOmega} rho(b, Omega') < rho(K, Omega) with the frame and
// ambient of `ambient_spec`; Omega' must sit compactly in its region.
// Throws PreconditionError on containment violations.
RungeReport check_runge_condition(const Domain& omega, const Domain& omega_prime, std::span<const Cx> k,
                                  const ProblemSpec& ambient_spec, const EngineConfig& cfg,
                                  double spacing = 1e-2);
RungeReport check_runge_condition(const Domain& omega, const Domain& omega_prime, const CellSet& k,
                                  const Raster& raster, const ProblemSpec& ambient_spec, const EngineConfig& cfg,
                                  double spacing = 1e-2);

}  // namespace hartogs
