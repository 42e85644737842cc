#include "hartogs/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hartogs/kernels.hpp"

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_shape(const CellSet& s, const Raster& r, const char* what) {
    if (s.nx != r.nx || s.ny != r.ny || s.bits.size() != r.size())
        throw DimensionMismatch(std::string(what) + ": cell set does not match the raster");
}

// 4-connected flood fill over `open` cells from the flagged seeds.
std::vector<std::uint8_t> flood(const Raster& r, const std::vector<std::uint8_t>& open, std::vector<std::size_t> stack,
                                std::vector<std::uint8_t> seen) {
    while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        const int i = static_cast<int>(k % r.nx);
        const int j = static_cast<int>(k / r.nx);
        auto push = [&](int a, int b) {
            if (a < 0 || b < 0 || a >= r.nx || b >= r.ny) return;
            const std::size_t q = r.index(a, b);
            if (!open[q] || seen[q]) return;
            seen[q] = 1;
            stack.push_back(q);
        };
        push(i - 1, j);
        push(i + 1, j);
        push(i, j - 1);
        push(i, j + 1);
    }
    return seen;
}

bool touches_outside(const Raster& r, std::size_t k) {
    const int i = static_cast<int>(k % r.nx);
    const int j = static_cast<int>(k / r.nx);
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int d = 0; d < 4; ++d) {
        const int a = i + di[d];
        const int b = j + dj[d];
        if (a < 0 || b < 0 || a >= r.nx || b >= r.ny) continue;
        if (!r.in_region[r.index(a, b)]) return true;
    }
    return false;
}

}  // namespace

Cx Raster::center(int i, int j) const { return {lo.real() + (i + 0.5) * dx(), lo.imag() + (j + 0.5) * dy()}; }

bool Raster::on_frame(std::size_t k) const {
    const int i = static_cast<int>(k % nx);
    const int j = static_cast<int>(k / nx);
    return i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
}

Raster make_raster(const Domain& region, Cx lo, Cx hi, int nx, int ny) {
    if (region.is_product()) throw DimensionMismatch("make_raster: hulls are planar only");
    if (nx < 1 || ny < 1) throw PreconditionError("make_raster: nx and ny must be positive");
    if (!(hi.real() > lo.real()) || !(hi.imag() > lo.imag()))
        throw PreconditionError("make_raster: bounding box is empty");
    Raster r;
    r.lo = lo;
    r.hi = hi;
    r.nx = nx;
    r.ny = ny;
    r.in_region.resize(static_cast<std::size_t>(nx) * ny);
    for (std::size_t k = 0; k < r.size(); ++k) r.in_region[k] = contains(region, r.center(k)) ? 1 : 0;
    return r;
}

std::size_t CellSet::count() const { return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1)); }

bool CellSet::subset_of(const CellSet& other) const {
    if (bits.size() != other.bits.size()) return false;
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k] && !other.bits[k]) return false;
    return true;
}

CellSet empty_cells(const Raster& r) { return CellSet{r.nx, r.ny, std::vector<std::uint8_t>(r.size(), 0)}; }

CellSet cells_where(const Raster& r, const std::function<bool(Cx)>& pred) {
    CellSet s = empty_cells(r);
    for (std::size_t k = 0; k < r.size(); ++k) s.bits[k] = pred(r.center(k)) ? 1 : 0;
    return s;
}

std::vector<Cx> cell_centers(const Raster& r, const CellSet& s) {
    check_shape(s, r, "cell_centers");
    std::vector<Cx> out;
    for (std::size_t k = 0; k < r.size(); ++k)
        if (s.bits[k]) out.push_back(r.center(k));
    return out;
}

HullResult hull_compute(const CellSet& k, const Domain& region, const Raster& raster) {
    check_shape(k, raster, "hull_compute");
    const std::size_t n = raster.size();
    bool frame_contact = false;
    for (std::size_t q = 0; q < n; ++q) {
        if (!k.bits[q]) continue;
        if (!raster.in_region[q]) throw PreconditionError("hull_compute: K has cells outside the region");
        if (raster.on_frame(q)) frame_contact = true;
    }
    if (frame_contact && !region.bounded())
        throw PreconditionError("hull_compute: K touches the raster frame of an unbounded region");

    std::vector<std::uint8_t> open(n, 0);
    for (std::size_t q = 0; q < n; ++q) open[q] = raster.in_region[q] && !k.bits[q];

    // Seeds: free cells next to the complement of the region or on the
    // frame (the region continues beyond the raster there).
    std::vector<std::size_t> stack;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
        if (!open[q]) continue;
        if (raster.on_frame(q) || touches_outside(raster, q)) {
            seen[q] = 1;
            stack.push_back(q);
        }
    }
    const auto reached = flood(raster, open, std::move(stack), std::move(seen));

    HullResult res;
    res.k_mask = k;
    res.hull_mask = k;
    res.cell_size = raster.cell_size();
    std::vector<std::uint8_t> holes(n, 0);
    for (std::size_t q = 0; q < n; ++q)
        if (open[q] && !reached[q]) holes[q] = 1;
    std::vector<std::uint8_t> labelled(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
        if (!holes[q] || labelled[q]) continue;
        ++res.filled_components;
        labelled[q] = 1;
        labelled = flood(raster, holes, {q}, std::move(labelled));
    }
    for (std::size_t q = 0; q < n; ++q)
        if (holes[q]) res.hull_mask.bits[q] = 1;
    return res;
}

namespace {

SetRho reduce(std::span<const Cx> pts, const std::vector<RhoEstimate>& est) {
    SetRho out;
    out.value = kInf;
    out.lower = kInf;
    out.upper = kInf;
    out.unbounded = true;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const auto& e = est[i];
        out.lower = std::min(out.lower, e.lower);
        if (e.unbounded()) continue;
        out.upper = std::min(out.upper, e.upper);
        if (out.unbounded || e.value < out.value) {
            out.value = e.value;
            out.argmin = pts[i];
        }
        out.unbounded = false;
    }
    return out;
}

}  // namespace

SetRho rho_over_set(std::span<const Cx> points, const ProblemSpec& spec, const EngineConfig& cfg) {
    if (points.empty()) throw PreconditionError("rho_over_set: empty set");
    const auto est = rho_at_points(spec, points, cfg);
    return reduce(points, est);
}

SetRho rho_over_set(const CellSet& s, const Raster& raster, const ProblemSpec& spec, const EngineConfig& cfg) {
    const auto pts = cell_centers(raster, s);
    return rho_over_set(pts, spec, cfg);
}

CtReport check_ct(const CellSet& k, const Raster& raster, const ProblemSpec& spec,
                  const std::function<double(Cx)>& abs_f, const EngineConfig& cfg, double tol) {
    check_shape(k, raster, "check_ct");
    if (k.empty()) throw PreconditionError("check_ct: K is empty");
    CtReport rep;
    rep.tol = tol;

    const auto k_pts = cell_centers(raster, k);
    const auto k_est = rho_at_points(spec, k_pts, cfg);
    double excess = -kInf;
    for (std::size_t i = 0; i < k_pts.size(); ++i) excess = std::max(excess, abs_f(k_pts[i]) - k_est[i].value);
    rep.precondition_excess = excess;
    rep.precondition_ok = excess <= tol;
    if (!rep.precondition_ok) return rep;

    rep.hull = hull_compute(k, spec.region, raster);
    CellSet extra = rep.hull.hull_mask;
    for (std::size_t q = 0; q < extra.bits.size(); ++q)
        if (k.bits[q]) extra.bits[q] = 0;
    const auto x_pts = cell_centers(raster, extra);
    const auto x_est = x_pts.empty() ? std::vector<RhoEstimate>{} : rho_at_points(spec, x_pts, cfg);

    double hull_excess = excess;
    for (std::size_t i = 0; i < x_pts.size(); ++i)
        hull_excess = std::max(hull_excess, abs_f(x_pts[i]) - x_est[i].value);
    rep.max_excess = hull_excess;

    const SetRho rk = reduce(k_pts, k_est);
    double rho_hull = rk.value;
    for (const auto& e : x_est) rho_hull = std::min(rho_hull, e.value);
    rep.rho_k = rk.value;
    rep.rho_hull = rho_hull;
    rep.equality_gap = (rk.value == kInf && rho_hull == kInf) ? 0.0 : std::abs(rk.value - rho_hull);
    rep.pass = rep.max_excess <= tol && rep.equality_gap <= tol;
    return rep;
}

namespace {

void require_inside(const Domain& outer, std::span<const Cx> pts, const char* what) {
    for (Cx p : pts)
        if (!contains(outer, p)) throw PreconditionError(std::string("check_runge_condition: ") + what);
}

}  // namespace

RungeReport check_runge_condition(const Domain& omega, const Domain& omega_prime, std::span<const Cx> k,
                                  const ProblemSpec& ambient_spec, const EngineConfig& cfg, double spacing) {
    if (omega.is_product() || omega_prime.is_product() || ambient_spec.region.is_product())
        throw DimensionMismatch("check_runge_condition: planar domains only");
    if (!omega.bounded() || !omega_prime.bounded())
        throw PreconditionError("check_runge_condition: Omega and Omega' must be bounded");
    if (!(spacing > 0)) throw PreconditionError("check_runge_condition: spacing must be positive");
    if (k.empty()) throw PreconditionError("check_runge_condition: K is empty");

    const auto b_omega = boundary_samples(omega, spacing);
    const auto b_prime = boundary_samples(omega_prime, spacing);
    const auto in_omega = interior_samples(omega, 48);
    const auto in_prime = interior_samples(omega_prime, 48);
    require_inside(omega_prime, b_omega, "Omega is not compactly inside Omega'");
    require_inside(omega_prime, in_omega, "Omega is not inside Omega'");
    require_inside(ambient_spec.region, b_prime, "Omega' is not compactly inside the ambient region");
    require_inside(ambient_spec.region, in_prime, "Omega' is not inside the ambient region");
    require_inside(omega, k, "K is not inside Omega");

    const ProblemSpec s_prime{ambient_spec.ambient, omega_prime, ambient_spec.frame};
    const ProblemSpec s_omega{ambient_spec.ambient, omega, ambient_spec.frame};

    const auto lhs_est = rho_at_points(s_prime, b_omega, cfg);
    double lhs = 0.0;
    for (const auto& e : lhs_est) lhs = std::max(lhs, e.value);
    const SetRho rhs = rho_over_set(k, s_omega, cfg);

    RungeReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs.value;
    rep.margin = rhs.value - lhs;
    rep.holds = lhs < rhs.value;
    rep.boundary_points = b_omega.size();
    return rep;
}

RungeReport check_runge_condition(const Domain& omega, const Domain& omega_prime, const CellSet& k,
                                  const Raster& raster, const ProblemSpec& ambient_spec, const EngineConfig& cfg,
                                  double spacing) {
    const auto pts = cell_centers(raster, k);
    return check_runge_condition(omega, omega_prime, pts, ambient_spec, cfg, spacing);
}

}  // namespace hartogs
