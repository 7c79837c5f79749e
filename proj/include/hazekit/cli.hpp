#pragma once

#include <string>
#include <vector>

#include "hazekit/dcp.hpp"
#include "hazekit/dehaze.hpp"
#include "hazekit/metrics.hpp"

namespace hazekit::cli {

/// Everything a subcommand needs, merged from defaults, an optional JSON
/// config file, and command-line flags (flag beats file beats default).
struct JobConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    std::string out_dir = ".";
    std::string method = "kmap";  // kmap | dcp
    std::string format = "json";  // json | csv
    DehazeParams dehaze;
    DcpParams dcp;
    MetricParams metrics;
    // synth only
    double synth_t = 0.5;
    double synth_k = 0.9;
    std::string depth_path;
    double scatter = 1.0;
    bool dump_config = false;
};

/// One processed input in a batch report.
struct RunRecord {
    std::string input;
    std::string method;
    double wall_ms = 0.0;
    std::string dehazed_path;
    std::string transmission_path;
    std::string k_map_path;
    bool failed = false;
    std::string reason;
};

// Exit codes: 0 success, 1 partial failures, 2 invalid invocation.
int cmd_run(const JobConfig& config);
int cmd_assess(const JobConfig& config);
int cmd_synth(const JobConfig& config);
int cmd_validate(const JobConfig& config);

/// Parse arguments (argv[0] excluded) and dispatch to the subcommand.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace hazekit::cli
