#pragma once

// Data-parallel kernels of the engine. Every kernel has an OpenMP version
// and a plain serial reference with identical results; the tests compare
// them and bench/ times them against each other.
//
// Results are written by index, so output never depends on the schedule or
// the thread count.

#include <span>
#include <vector>

#include "hartogs/continuation.hpp"

namespace hartogs {

// Rays from a at the given directions. Pre: planar, validated problem;
// a in region.
std::vector<RayOutcome> trace_fan(const ProblemSpec& spec, Cx a, std::span<const double> thetas,
                                  const EngineConfig& cfg);
std::vector<RayOutcome> trace_fan_serial(const ProblemSpec& spec, Cx a, std::span<const double> thetas,
                                         const EngineConfig& cfg);

// rho_estimate at each planar point (fans are dropped from the results).
// Validates the problem once; throws OutsideDomain for points not in the
// region.
std::vector<RhoEstimate> rho_at_points(const ProblemSpec& spec, std::span<const Cx> points,
                                       const EngineConfig& cfg);
std::vector<RhoEstimate> rho_at_points_serial(const ProblemSpec& spec, std::span<const Cx> points,
                                              const EngineConfig& cfg);

GridField rho_field_serial(const ProblemSpec& spec, Cx lo, Cx hi, int nx, int ny, const EngineConfig& cfg);

// phi_a at each zeta (planar problem).
std::vector<Cx> phi_at_points(const ProblemSpec& spec, Cx a, std::span<const Cx> zetas,
                              const EngineConfig& cfg);
std::vector<Cx> phi_at_points_serial(const ProblemSpec& spec, Cx a, std::span<const Cx> zetas,
                                     const EngineConfig& cfg);

namespace detail {

// rho_estimate without validation. `parallel` selects the OpenMP fan
// kernel (ignored inside an enclosing parallel region).
RhoEstimate rho_estimate_planar(const ProblemSpec& spec, Cx a, const EngineConfig& cfg, bool parallel);

}  // namespace detail

}  // namespace hartogs
