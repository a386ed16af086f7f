// experiment.hpp: JSON experiment configs and the four CLI pipelines
// (schedule, evolve, zerotunnel, grover). Each pipeline writes a CSV table and a
// JSON summary into the output directory and returns the summary.

#pragma once

#include "adpath/grover.hpp"
#include "adpath/lindblad.hpp"
#include "adpath/paths.hpp"
#include "adpath/variational.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace adpath::cli {

using json = nlohmann::json;

// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides config "seed"
    std::size_t threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

json load_config(const std::filesystem::path& file);

// Fills defaults, applies the seed override and validates the schema for the
// given command. The result is what gets embedded in every output JSON.
json resolve_config(const std::string& command, const json& config, const RunOptions& opts);

json run_schedule(const json& config, const RunOptions& opts);
json run_evolve(const json& config, const RunOptions& opts);
json run_zerotunnel(const json& config, const RunOptions& opts);
json run_grover(const json& config, const RunOptions& opts);

// Dispatches by command name and maps failures to exit codes; messages go to
// `err`.
int run_command(const std::string& command, const std::filesystem::path& config_file, const RunOptions& opts,
                std::ostream& err);

// %.17g, the format used for every number in CSV output.
std::string format_number(double v);

} // namespace adpath::cli
