#pragma once

#include <string>

#include "hgflow/flow.hpp"
#include "hgflow/shapes.hpp"

namespace hgflow {

struct OutputConfig {
    std::string trace_path = "trace.csv";
    int snapshot_every = 0; // 0 = off
    std::string snapshot_dir = "snapshots";
};

struct RunConfig {
    int n = 2;
    int m = 256;
    ShapeSpec shape = CosineShape{1.0, 0.2, 1};
    StepControl ctrl;
    OutputConfig outputs;
    long seed = 0; // reserved for randomized sweeps
};

/// Parses and validates a JSON run configuration, applying defaults.
/// Unknown keys and out-of-range values are rejected with a message naming
/// the key and the violated constraint.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

} // namespace hgflow
