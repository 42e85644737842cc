#pragma once

// Named verification suites over fixed fixtures, as run by `rhotool verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "hartogs/verify.hpp"

namespace hartogs {

struct SuiteOptions {
    std::uint64_t seed = 20240501;
    // When non-empty, hull masks are written there as PBM files.
    std::string artifact_dir;
};

struct SuiteResult {
    std::string name;
    std::vector<PropertyReport> reports;

    bool pass() const;
};

// oracles, lipschitz, submean, kobayashi, decay, ct, runge, scaling,
// product, cauchy, exhaustion; "all" runs every one of them.
const std::vector<std::string>& suite_names();

// Throws PreconditionError for an unknown name.
std::vector<SuiteResult> run_suite(const std::string& name, const EngineConfig& cfg, const SuiteOptions& opt = {});

}  // namespace hartogs
