#include <exception>

#include <omp.h>

#include "hartogs/kernels.hpp"
#include "ray_internal.hpp"

namespace hartogs {

namespace {

int thread_count(const EngineConfig& cfg) { return cfg.threads > 0 ? cfg.threads : omp_get_max_threads(); }

// Runs body(i) for i in [0, n) on an OpenMP team. Exceptions are captured
// per index and the one with the lowest index is rethrown, so failures are
// reported deterministically too.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (!omp_in_parallel() && n > 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void check_planar(const ProblemSpec& spec, const char* what) {
    if (spec.region.is_product()) throw DimensionMismatch(std::string(what) + " needs a planar problem");
}

std::vector<Cx> cell_centers(const GridField& f) {
    std::vector<Cx> out;
    out.reserve(static_cast<std::size_t>(f.nx) * f.ny);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) out.push_back(f.center(i, j));
    return out;
}

GridField make_grid(const ProblemSpec& spec, Cx lo, Cx hi, int nx, int ny, const EngineConfig& cfg) {
    validate_config(cfg);
    check_planar(spec, "rho_field");
    require_valid(spec);
    if (nx < 1 || ny < 1) throw PreconditionError("rho_field: nx and ny must be positive");
    if (!(hi.real() > lo.real()) || !(hi.imag() > lo.imag()))
        throw PreconditionError("rho_field: bounding box is empty");
    GridField f;
    f.lo = lo;
    f.hi = hi;
    f.nx = nx;
    f.ny = ny;
    f.cells.resize(static_cast<std::size_t>(nx) * ny);
    return f;
}

GridCell to_cell(const RhoEstimate& e) {
    GridCell c;
    c.value = e.value;
    c.lower = e.lower;
    c.upper = e.upper;
    c.status = e.unbounded() ? CellStatus::Unbounded : CellStatus::Ok;
    return c;
}

template <class Loop>
GridField field_impl(const ProblemSpec& spec, Cx lo, Cx hi, int nx, int ny, const EngineConfig& cfg, bool parallel,
                     Loop&& loop) {
    GridField f = make_grid(spec, lo, hi, nx, ny, cfg);
    const auto centers = cell_centers(f);
    loop(centers.size(), [&](std::size_t k) {
        if (!contains(spec.region, centers[k])) return;
        f.cells[k] = to_cell(detail::rho_estimate_planar(spec, centers[k], cfg, parallel));
    });
    return f;
}

}  // namespace

Cx GridField::center(int i, int j) const {
    return {lo.real() + (i + 0.5) * dx(), lo.imag() + (j + 0.5) * dy()};
}

std::string to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Ok: return "ok";
        case CellStatus::Unbounded: return "unbounded";
        case CellStatus::OutsideDomain: return "outside";
    }
    return "?";
}

std::vector<RayOutcome> trace_fan(const ProblemSpec& spec, Cx a, std::span<const double> thetas,
                                  const EngineConfig& cfg) {
    std::vector<RayOutcome> out(thetas.size());
    parallel_for(thetas.size(), thread_count(cfg),
                 [&](std::size_t i) { out[i] = detail::trace_ray_unchecked(spec, a, thetas[i], cfg); });
    return out;
}

std::vector<RayOutcome> trace_fan_serial(const ProblemSpec& spec, Cx a, std::span<const double> thetas,
                                         const EngineConfig& cfg) {
    std::vector<RayOutcome> out(thetas.size());
    serial_for(thetas.size(), [&](std::size_t i) { out[i] = detail::trace_ray_unchecked(spec, a, thetas[i], cfg); });
    return out;
}

namespace {

void check_points(const ProblemSpec& spec, std::span<const Cx> points, const EngineConfig& cfg) {
    validate_config(cfg);
    check_planar(spec, "rho_at_points");
    require_valid(spec);
    for (Cx p : points)
        if (!contains(spec.region, p)) throw OutsideDomain("rho_at_points: a sample point is outside the region");
}

RhoEstimate slim(RhoEstimate e) {
    e.fan.clear();
    e.fan.shrink_to_fit();
    return e;
}

}  // namespace

std::vector<RhoEstimate> rho_at_points(const ProblemSpec& spec, std::span<const Cx> points,
                                       const EngineConfig& cfg) {
    check_points(spec, points, cfg);
    std::vector<RhoEstimate> out(points.size());
    parallel_for(points.size(), thread_count(cfg), [&](std::size_t i) {
        out[i] = slim(detail::rho_estimate_planar(spec, points[i], cfg, true));
    });
    return out;
}

std::vector<RhoEstimate> rho_at_points_serial(const ProblemSpec& spec, std::span<const Cx> points,
                                              const EngineConfig& cfg) {
    check_points(spec, points, cfg);
    std::vector<RhoEstimate> out(points.size());
    serial_for(points.size(), [&](std::size_t i) {
        out[i] = slim(detail::rho_estimate_planar(spec, points[i], cfg, false));
    });
    return out;
}

GridField rho_field(const ProblemSpec& spec, Cx lo, Cx hi, int nx, int ny, const EngineConfig& cfg) {
    return field_impl(spec, lo, hi, nx, ny, cfg, true,
                      [&](std::size_t n, auto&& body) { parallel_for(n, thread_count(cfg), body); });
}

GridField rho_field_serial(const ProblemSpec& spec, Cx lo, Cx hi, int nx, int ny, const EngineConfig& cfg) {
    return field_impl(spec, lo, hi, nx, ny, cfg, false, [](std::size_t n, auto&& body) { serial_for(n, body); });
}

std::vector<Cx> phi_at_points(const ProblemSpec& spec, Cx a, std::span<const Cx> zetas, const EngineConfig& cfg) {
    validate_config(cfg);
    check_planar(spec, "phi_at_points");
    require_valid(spec);
    std::vector<Cx> out(zetas.size());
    parallel_for(zetas.size(), thread_count(cfg), [&](std::size_t i) {
        auto run = detail::integrate_ray(spec, a, std::arg(zetas[i]), std::abs(zetas[i]), cfg, false);
        if (!run.reached) throw EvaluationError("phi_at_points: continuation failed before reaching zeta");
        out[i] = run.z_end;
    });
    return out;
}

std::vector<Cx> phi_at_points_serial(const ProblemSpec& spec, Cx a, std::span<const Cx> zetas,
                                     const EngineConfig& cfg) {
    validate_config(cfg);
    check_planar(spec, "phi_at_points");
    require_valid(spec);
    std::vector<Cx> out(zetas.size());
    serial_for(zetas.size(), [&](std::size_t i) {
        auto run = detail::integrate_ray(spec, a, std::arg(zetas[i]), std::abs(zetas[i]), cfg, false);
        if (!run.reached) throw EvaluationError("phi_at_points: continuation failed before reaching zeta");
        out[i] = run.z_end;
    });
    return out;
}

}  // namespace hartogs
