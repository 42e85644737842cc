#pragma once

// Closed-form radii and the property batteries run against the engine.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hartogs/continuation.hpp"
#include "hartogs/hulls.hpp"

namespace hartogs {

struct OracleValue {
    enum class Kind { Finite, Unbounded, NoOracle };
    Kind kind = Kind::NoOracle;
    double value = 0.0;

    bool known() const { return kind != Kind::NoOracle; }
};

// Exact rho where a closed form is known:
//   ConstOne on any planar region: distance to the boundary;
//   Exp on C = C: e^{Re a};
//   Monomial(k) on C* = C*: |a^{k+1}| / |k+1|  (k = 0 gives |a|);
//   InvZ on C*: unbounded;
//   Scaled(c, w): |c| times the inner value;
//   split products: the minimum over factors.
OracleValue oracle_rho(const ProblemSpec& spec, std::span<const Cx> a);
OracleValue oracle_rho(const ProblemSpec& spec, Cx a);

// pass <=> worst_violation <= threshold. With no samples the worst
// violation is -inf (vacuous pass).
struct PropertyReport {
    std::string name;
    std::size_t samples = 0;
    double worst_violation = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::map<std::string, double> metrics;
    std::vector<std::string> notes;

    void finish();
};

struct OracleCase {
    std::string label;
    ProblemSpec spec;
    // One entry per factor for products, otherwise a single coordinate.
    std::vector<std::vector<Cx>> points;
};

// Violation per sample: relative error (finite), 0 or +inf for
// unbounded agreement / disagreement. Throws InvalidSpec on specs without
// an oracle.
PropertyReport check_oracles(std::span<const OracleCase> cases, const EngineConfig& cfg, double rel_tol);

// |rho(b) - rho(c)| - |b - c| - 2 * bracket width against tol. ConstOne
// frames only (PreconditionError otherwise).
PropertyReport check_lipschitz(const ProblemSpec& spec, std::span<const std::pair<Cx, Cx>> pairs,
                               const EngineConfig& cfg, double tol);

// -log rho(c) <= mean_j -log rho(c + r e^{i theta_j}) + tol on n_angles
// uniform angles. Throws OutsideDomain when a circle leaves the region.
// metrics: worst_abs_margin (for harmonic cases).
PropertyReport check_submean(const ProblemSpec& spec, std::span<const Cx> centers, std::span<const double> radii,
                             int n_angles, const EngineConfig& cfg, double tol);

// rho(a) <= (1 - |a|^2)(1 + tol) on (C, unit disk, ConstOne).
PropertyReport check_kobayashi_disk(std::span<const Cx> points, const EngineConfig& cfg, double tol);

// rho along a sequence approaching boundary_point: the tail is
// nonincreasing and bounded by C * distance with C taken from the head,
// and the last value is below a tenth of the first.
PropertyReport check_boundary_decay(const ProblemSpec& spec, Cx boundary_point, std::span<const Cx> sequence,
                                    const EngineConfig& cfg);

// Radius of convergence of the Taylor series of u o phi_a at 0, from the
// discrete Cauchy integral on |zeta| = r0 with 4N nodes and a ratio fit
// over the top quartile of the resolved coefficients. +inf when fewer than
// four coefficients rise above the noise floor.
double convergence_radius(const ProblemSpec& spec, Cx a, const std::function<Cx(Cx)>& u, double r0, int n,
                          const EngineConfig& cfg);

struct ExhaustionField {
    Cx lo;
    Cx hi;
    int nx = 0;
    int ny = 0;
    std::vector<double> psi;
    std::vector<double> stage_radii;
    // C_1 ... C_m (C_1 is the plateau constant).
    std::vector<double> constants;
    std::size_t plateau_cell = 0;
    // max over stage-nu cells of |psi_{nu+1} - psi_nu| (0 when exact).
    double stage_mismatch = 0.0;
    bool stage_consistent = false;
    // psi >= -log rho on every cell.
    bool dominates = false;
    // {psi < C_1 + nu} sits inside the stage-(nu+1) ball for every nu < m.
    bool sublevels_nested = false;
};

// Grid analogue of the stagewise exhaustion: psi_1 = max(-log rho, C_1),
// p_{nu+1} = p_nu + C_{nu+1} (|a|^2 - r_nu^2)^+, psi_nu = max(-log rho, p_nu).
// Throws PreconditionError for non-increasing radii or cells inside the last
// stage where -log rho is +inf (outside the domain).
ExhaustionField build_exhaustion(const GridField& field, const CellSet& psh_fail, std::span<const double> stage_radii);

}  // namespace hartogs
