#include <numeric>

#include "hartogs/geometry.hpp"

namespace hartogs {

namespace {

void validate_planar(const Domain& ambient, const Domain& region, const Frame& frame,
                     const std::string& prefix, std::vector<std::string>& out) {
    auto add = [&](const std::string& s) { out.push_back(prefix + s); };

    if (frame.is_product()) {
        add("split product frame on a planar domain");
        return;
    }
    if (frame_needs_puncture(frame) && contains(ambient, Cx{})) {
        add("frame " + describe(frame) + " vanishes or has a pole at 0, which lies in the ambient domain");
    }

    if (std::holds_alternative<Plane>(ambient.shape)) return;
    if (std::holds_alternative<PuncturedPlane>(ambient.shape)) {
        if (contains(region, Cx{})) add("region contains 0, which is not in the punctured plane");
        return;
    }
    if (!region.bounded() && ambient.bounded()) {
        add("unbounded region cannot lie inside a bounded ambient domain");
        return;
    }
    for (Cx z : interior_samples(region, 96)) {
        if (!contains(ambient, z)) {
            add("region sample point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                ") lies outside the ambient domain");
            return;
        }
    }
}

}  // namespace

ValidationReport validate_problem(const ProblemSpec& spec) {
    ValidationReport report;
    auto& out = report.violations;
    for (auto& s : domain_issues(spec.ambient)) out.push_back("ambient: " + s);
    for (auto& s : domain_issues(spec.region)) out.push_back("region: " + s);
    if (!out.empty()) return report;

    const bool product = spec.ambient.is_product() || spec.region.is_product() || spec.frame.is_product();
    if (!product) {
        validate_planar(spec.ambient, spec.region, spec.frame, "", out);
        return report;
    }
    const std::size_t n = spec.region.dimension();
    if (!spec.ambient.is_product() || !spec.region.is_product() || !spec.frame.is_product() ||
        spec.ambient.dimension() != n || spec.frame.dimension() != n) {
        out.push_back("product arity mismatch: ambient " + std::to_string(spec.ambient.dimension()) +
                      ", region " + std::to_string(n) + ", frame " +
                      std::to_string(spec.frame.dimension()));
        return report;
    }
    const auto& amb = std::get<ProductDomain>(spec.ambient.shape).factors;
    const auto& reg = std::get<ProductDomain>(spec.region.shape).factors;
    const auto& frm = std::get<SplitProduct>(spec.frame.kind).factors;
    for (std::size_t j = 0; j < n; ++j)
        validate_planar(amb[j], reg[j], frm[j], "factor " + std::to_string(j) + ": ", out);
    return report;
}

void require_valid(const ProblemSpec& spec) {
    const auto report = validate_problem(spec);
    if (report.valid()) return;
    std::string msg = "invalid problem specification";
    for (const auto& v : report.violations) msg += "; " + v;
    throw InvalidSpec(msg);
}

ProblemSpec factor_problem(const ProblemSpec& spec, std::size_t j) {
    if (!spec.region.is_product()) {
        if (j != 0) throw DimensionMismatch("planar problem has a single factor");
        return spec;
    }
    const auto& amb = std::get<ProductDomain>(spec.ambient.shape).factors;
    const auto& reg = std::get<ProductDomain>(spec.region.shape).factors;
    const auto& frm = std::get<SplitProduct>(spec.frame.kind).factors;
    if (j >= reg.size() || j >= amb.size() || j >= frm.size())
        throw DimensionMismatch("factor index out of range");
    return ProblemSpec{amb[j], reg[j], frm[j]};
}

}  // namespace hartogs
