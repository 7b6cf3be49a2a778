// Run configuration: a strict JSON schema (unknown keys are errors) parsed
// into the library's domain types.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "cubeavg/averaging.hpp"
#include "cubeavg/wiener_wintner.hpp"

namespace cubeavg {

// Configuration problems carry the JSON path of the offending field.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Command { Cubic, Dual, Ww, Verify, Uniform, Continuity };

Command command_from_name(const std::string& name);
std::string command_name(Command c);

struct GridSpec {
    int per_dim = 8;
    std::optional<std::uint64_t> jitter_seed;
};

struct RunConfig {
    Command command = Command::Cubic;
    SystemDescriptor system;
    std::optional<CubeSpec> cube;
    std::optional<Observable> f0;
    std::optional<WeightSpec> weight;
    std::vector<PhasePoint> points;          // resolved from grid or explicit list
    std::optional<GridSpec> grid;            // recorded when points came from a grid
    std::vector<std::size_t> schedule;       // strictly increasing
    std::vector<std::size_t> pairs;          // uniform command: the N of each (N, 2N)
    std::map<std::string, double> tolerances;
    std::string output_prefix = "cubeavg_run";
    int threads = 1;
    nlohmann::json echo;                     // canonical config echo for the report
};

// Parses and validates; throws ConfigError with a field path on any problem.
RunConfig parse_config(Command command, const nlohmann::json& j);
RunConfig parse_config_file(Command command, const std::string& path);

// Regular lattice (i / per_dim per coordinate, lexicographic order, last
// dimension fastest) with optional seeded jitter inside each cell.
std::vector<PhasePoint> generate_grid(const SystemDescriptor& system, const GridSpec& grid);

}  // namespace cubeavg
