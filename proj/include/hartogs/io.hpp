#pragma once

// File formats: JSON problem specs and engine configs, CSV / PGM fields,
// PBM masks, JSON reports, and the run manifest embedded in outputs.

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hartogs/continuation.hpp"
#include "hartogs/hulls.hpp"
#include "hartogs/verify.hpp"

namespace hartogs {

using Json = nlohmann::json;

// Spec documents: {"ambient": D, "region": D, "frame": F} with tagged
// objects, e.g. {"type":"disk","center":[0,0],"radius":1},
// {"type":"monomial","k":-2}, {"type":"product","factors":[...]}.
// Complex numbers are [re, im]. Throws InvalidSpec on malformed input.
Domain domain_from_json(const Json& j);
Frame frame_from_json(const Json& j);
ProblemSpec spec_from_json(const Json& j);
Json to_json(const Domain& d);
Json to_json(const Frame& f);
Json to_json(const ProblemSpec& s);

// Config documents carry any subset of the EngineConfig fields by name;
// unknown keys are rejected.
EngineConfig config_from_json(const Json& j, EngineConfig base = {});
Json to_json(const EngineConfig& c);

// Throws IoError when the file cannot be read, InvalidSpec when it does not
// parse or validate.
Json read_json_file(const std::string& path);
ProblemSpec load_spec(const std::string& path);
EngineConfig load_config(const std::string& path, EngineConfig base = {});

struct RunManifest {
    std::string spec_path;
    std::string config_path;
    std::string command;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string timestamp;
    // Effective engine settings and command arguments.
    Json settings = Json::object();
};

Json to_json(const RunManifest& m);
// FNV-1a 64 over the canonical (sorted-key, compact) JSON dump of the
// manifest without its timestamp, as 16 hex digits.
std::string manifest_hash(const RunManifest& m);

// Numbers as printed in every text output: shortest round-trip form,
// `inf` for +infinity. NaN is rejected with EvaluationError.
std::string format_number(double v);

Json to_json(const RhoEstimate& e);
Json to_json(const PropertyReport& r);
Json to_json(const CtReport& r);
Json to_json(const RungeReport& r);

// CSV with header `re,im,rho,status`. Outside cells print rho as 0.
void write_csv(std::ostream& os, const GridField& f);
void write_csv(const std::string& path, const GridField& f);

struct PgmScale {
    // Range of -log rho over the ok cells (mapped to 255 and 0).
    double min_neg_log = 0.0;
    double max_neg_log = 0.0;
};

// Binary P5 image of clamped -log rho, top row = largest imaginary part.
// min -> 255, max -> 0; unbounded cells are 255, outside cells 0. The
// manifest hash goes into a header comment.
PgmScale write_pgm(const std::string& path, const GridField& f, const std::string& hash);

// Plain P1 bitmap (1 = in the set), top row = largest imaginary part.
void write_pbm(std::ostream& os, const CellSet& s);
void write_pbm(const std::string& path, const CellSet& s);

void write_json(const std::string& path, const Json& j);

}  // namespace hartogs
