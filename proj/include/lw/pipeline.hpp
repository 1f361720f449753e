#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lw/json_io.hpp"

namespace lw {

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string out;  // directory; empty means stdout
    int verbosity = 0;
    // Resource guard.
    int max_dim = 4;
    int max_vertices = 30;
    std::uint64_t seed = 0;
    std::vector<Rat> t_samples{Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
    std::optional<int> face;
};

// Unknown keys are rejected.
RunConfig config_from_json(const json& j);
json config_to_json(const RunConfig& c);
// "0,1/4,1/2,1"
std::vector<Rat> parse_samples(const std::string& s);

// Throws Precondition when p is beyond the configured limits.
void check_resources(const Polytope& p, const RunConfig& c);

struct PipelineStage {
    std::string stage;
    std::string polytope_id;
    int depth = 0;
    bool ok = false;
    json report;
};

struct PipelineReport {
    std::string polytope_id;
    std::vector<PipelineStage> stages;
    int mu = 0;
    int cutoff_steps = 0;
    bool direct_hrr = false;
    bool verdict = false;
    // verdict implies direct_hrr
    bool consistent() const { return !verdict || direct_hrr; }
};

// The induction: cut off the minimal normally stout face, verify the
// residual recursively, the germ through deformation, products and
// pyramids (recursing on the link), and reassemble by gluing.
PipelineReport verify_pipeline(const Polytope& p, const std::string& id, const RunConfig& c = {});

json stage_to_json(const PipelineStage& s);
json pipeline_summary(const PipelineReport& r);

}  // namespace lw
