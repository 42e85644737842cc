#include <array>
#include <cmath>
#include <sstream>

#include "ray_internal.hpp"

namespace hartogs {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGLx = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGLw = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

Cx chord_integral(const Frame& frame, Cx p, Cx q) {
    const Cx mid = 0.5 * (p + q);
    const Cx half = 0.5 * (q - p);
    Cx sum{};
    for (std::size_t i = 0; i < kGLx.size(); ++i) sum += kGLw[i] * frame_eval(frame, mid + kGLx[i] * half);
    return sum * half;
}

}  // namespace

Cx abelian_integral(const Frame& frame, std::span<const Cx> polyline) {
    Cx total{};
    for (std::size_t k = 1; k < polyline.size(); ++k) total += chord_integral(frame, polyline[k - 1], polyline[k]);
    return total;
}

Cx abelian_integral(const Frame& frame, std::span<const PathNode> path) {
    Cx total{};
    for (std::size_t k = 1; k < path.size(); ++k) total += chord_integral(frame, path[k - 1].z, path[k].z);
    return total;
}

PhiTrace phi_trace(const ProblemSpec& spec, Cx a, Cx zeta, const EngineConfig& cfg) {
    validate_config(cfg);
    if (spec.region.is_product()) throw DimensionMismatch("phi_trace needs a planar problem");
    require_valid(spec);
    if (!contains(spec.region, a)) throw OutsideDomain("base point is outside the region");
    if (zeta == Cx{}) return PhiTrace{a, {{0.0, a}}};
    auto run = detail::integrate_ray(spec, a, std::arg(zeta), std::abs(zeta), cfg, true);
    if (!run.reached) {
        std::ostringstream os;
        os << "continuation stopped by " << to_string(run.outcome.kind) << " at t = " << run.outcome.failure_radius
           << " before reaching |zeta| = " << std::abs(zeta);
        throw EvaluationError(os.str());
    }
    return PhiTrace{run.z_end, std::move(run.path)};
}

Cx phi_eval(const ProblemSpec& spec, Cx a, Cx zeta, const EngineConfig& cfg) {
    return phi_trace(spec, a, zeta, cfg).z;
}

std::vector<Cx> phi_eval(const ProblemSpec& spec, std::span<const Cx> a, std::span<const Cx> zeta,
                         const EngineConfig& cfg) {
    if (a.size() != spec.dimension() || zeta.size() != spec.dimension())
        throw DimensionMismatch("phi_eval: coordinate count does not match the problem dimension");
    std::vector<Cx> out;
    for (std::size_t j = 0; j < a.size(); ++j) out.push_back(phi_eval(factor_problem(spec, j), a[j], zeta[j], cfg));
    return out;
}

}  // namespace hartogs
