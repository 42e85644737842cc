#pragma once

// Continuation of the inverse phi_a of the Abelian integral along rays of
// the zeta-plane, and the radius rho(a, Omega) as the infimal failure radius
// over a refined fan of directions.
//
// Along the ray zeta = t e^{i theta} the inverse satisfies
//     dz/dt = e^{i theta} / g(z),   z(0) = a,
// which is integrated with an embedded Dormand-Prince 5(4) pair. The ray
// fails when z leaves the region or the ambient domain, or when phi runs
// into a branch point / pole of the inverse (a zero of g, or z -> infinity
// in finite time).

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hartogs/geometry.hpp"

namespace hartogs {

struct EngineConfig {
    int n_rays_init = 64;
    int refine_depth = 8;
    // Relative radius disagreement between adjacent rays that triggers a
    // bisecting ray.
    double refine_trigger = 0.05;
    double rtol = 1e-9;
    double atol = 1e-12;
    // Minimal step, relative to the current ray parameter.
    double h_min = 1e-13;
    double t_cap = 1e6;
    // Singularity threshold on the estimated zeta-distance to the nearest
    // branch point, relative to the ray parameter.
    double eps_sing = 1e-8;
    double z_max = 1e8;
    // Relative tolerance for localizing the failure radius.
    double bisect_tol = 1e-6;
    // Worker threads for the parallel kernels; 0 means the OpenMP default.
    int threads = 0;
    // Hard cap on accepted steps per ray.
    std::int64_t max_steps = 4'000'000;
};

// Throws InvalidSpec when a field is out of range.
void validate_config(const EngineConfig& cfg);

enum class RayKind { ExitRegion, ExitAmbient, Singularity, StepCollapse, Capped };

std::string to_string(RayKind k);

struct RayOutcome {
    double theta = 0.0;
    // Stopping parameter; equals t_cap when kind == Capped.
    double failure_radius = 0.0;
    RayKind kind = RayKind::Capped;
    // Last point known to be inside the region.
    Cx witness{};
    double min_abs_g = std::numeric_limits<double>::infinity();
    double t_at_min_abs_g = 0.0;
    // Smallest estimated zeta-distance from the path to an obstruction
    // (branch point or boundary), where it occurred, and the estimated
    // location of that obstruction in the zeta-plane (NaN when none).
    double start_proximity = std::numeric_limits<double>::infinity();
    double min_proximity = std::numeric_limits<double>::infinity();
    double t_at_min_proximity = 0.0;
    Cx obstruction{std::numeric_limits<double>::quiet_NaN(), 0.0};
    // Deepest interior local minimum of the proximity (relative to t): a
    // near miss of an obstruction the ray then moved away from.
    double graze_proximity = std::numeric_limits<double>::infinity();
    double t_at_graze = 0.0;
    Cx graze_obstruction{std::numeric_limits<double>::quiet_NaN(), 0.0};
    std::int64_t steps = 0;
    // Capped because the path closed up on itself (periodic orbit).
    bool periodic = false;
    // Capped because z escaped to 0 or infinity at a rate that needs
    // unbounded zeta-time.
    bool escaped = false;
    // Capped because the step budget ran out before t_cap.
    bool truncated = false;

    bool capped() const { return kind == RayKind::Capped; }
    bool has_obstruction() const;
};

struct RhoEstimate {
    // +inf when unbounded (every ray capped).
    double value = std::numeric_limits<double>::infinity();
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    double argmin_theta = 0.0;
    int rays_used = 0;
    int refinement_rounds = 0;
    // Refinement stopped at refine_depth with unresolved intervals near the
    // minimum; the bracket has been widened.
    bool widened = false;
    // For split products: the per-factor radii (Hartogs radii), and which
    // factor attains the minimum.
    std::vector<double> factor_values;
    int argmin_factor = 0;
    RayKind kind = RayKind::Capped;
    // Rays of the final fan, sorted by theta (planar problems only).
    std::vector<RayOutcome> fan;

    bool unbounded() const { return value == std::numeric_limits<double>::infinity(); }
    double bracket_width() const { return unbounded() ? 0.0 : upper - lower; }
};

// One ray of the continuation. Pre: spec valid and planar, a in region.
RayOutcome trace_ray(const ProblemSpec& spec, Cx a, double theta, const EngineConfig& cfg);

// Radius estimate at a (one coordinate per factor for products).
RhoEstimate rho_estimate(const ProblemSpec& spec, std::span<const Cx> a, const EngineConfig& cfg);
RhoEstimate rho_estimate(const ProblemSpec& spec, Cx a, const EngineConfig& cfg);

struct PathNode {
    double t;
    Cx z;
};

struct PhiTrace {
    Cx z;
    std::vector<PathNode> path;
};

// phi_a(zeta), integrating along the segment [0, zeta]. Throws
// EvaluationError if the continuation fails before reaching zeta.
Cx phi_eval(const ProblemSpec& spec, Cx a, Cx zeta, const EngineConfig& cfg);
std::vector<Cx> phi_eval(const ProblemSpec& spec, std::span<const Cx> a, std::span<const Cx> zeta,
                         const EngineConfig& cfg);
PhiTrace phi_trace(const ProblemSpec& spec, Cx a, Cx zeta, const EngineConfig& cfg);

// The Abelian integral of omega along a polyline (Gauss-Legendre on each
// chord). Independent of the ray integrator.
Cx abelian_integral(const Frame& frame, std::span<const PathNode> path);
Cx abelian_integral(const Frame& frame, std::span<const Cx> polyline);

enum class CellStatus : std::uint8_t { Ok, Unbounded, OutsideDomain };

std::string to_string(CellStatus s);

struct GridCell {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    CellStatus status = CellStatus::OutsideDomain;
};

struct GridField {
    Cx lo;
    Cx hi;
    int nx = 0;
    int ny = 0;
    // Row-major, row j (imaginary part) outer, column i inner.
    std::vector<GridCell> cells;

    Cx center(int i, int j) const;
    const GridCell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i]; }
    double dx() const { return (hi.real() - lo.real()) / nx; }
    double dy() const { return (hi.imag() - lo.imag()) / ny; }
};

// rho_estimate at every in-region cell center (OpenMP over cells).
GridField rho_field(const ProblemSpec& spec, Cx lo, Cx hi, int nx, int ny, const EngineConfig& cfg);

}  // namespace hartogs
