#pragma once

#include <vector>

#include "hartogs/continuation.hpp"

namespace hartogs::detail {

struct RayRun {
    RayOutcome outcome;
    // True when t_end was reached without an event.
    bool reached = false;
    Cx z_end{};
    std::vector<PathNode> path;
};

// Integrates the ray ODE from a up to t_end (or the first event). The
// problem must be planar and already validated; a must lie in the region.
RayRun integrate_ray(const ProblemSpec& spec, Cx a, double theta, double t_end, const EngineConfig& cfg,
                     bool record_path);

inline RayOutcome trace_ray_unchecked(const ProblemSpec& spec, Cx a, double theta, const EngineConfig& cfg) {
    return integrate_ray(spec, a, theta, cfg.t_cap, cfg, false).outcome;
}

}  // namespace hartogs::detail
