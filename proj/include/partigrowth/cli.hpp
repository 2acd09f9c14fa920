#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "partigrowth/partition.hpp"

namespace partigrowth::cli {

enum class Command { Sample, Grow, Ppp, Verify, Shape, OddEven, FlowCheck };
enum class OutputFormat { Jsonl, Csv, Pretty };

/// Fully resolved options for one run; embedded in every output header.
struct RunConfig {
    Command command = Command::Sample;
    std::string verify_target = "identities";  ///< verify: recursions | identities
    std::string method = "pdc";                ///< sample: pdc | rejection
    std::string kind = "ordinary";             ///< flowcheck: ordinary | strict
    Weight n = 0;
    Weight nmax = 0;
    double smax = 0.0;
    std::int64_t replicas = 1;
    std::int64_t samples = 1;
    double x0 = 0.1;
    double tolerance = 0.05;
    Weight partition_cap = 1000;
    bool summary_only = false;
    std::uint64_t seed = 0;
    std::string precision = "double";
    OutputFormat out = OutputFormat::Jsonl;
    unsigned threads = 1;
    bool timestamp = true;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Parses argv (with CLI11), runs the command and writes to `out`.
/// Usage errors go to `err` and return 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a validated configuration. Throws std::invalid_argument on cap or
/// range violations.
int dispatch(const RunConfig& config, std::ostream& out);

std::string to_string(Command command);
std::string to_string(OutputFormat format);

}  // namespace partigrowth::cli
