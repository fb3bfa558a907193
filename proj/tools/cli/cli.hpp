#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "topp/dynamics.hpp"
#include "topp/io.hpp"
#include "topp/model.hpp"

namespace topp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // usage, configuration or I/O error
  kInadmissible = 2,  // parameters violate the admissibility conditions
  kFailed = 3,        // verification or reproduction failure
};

/// Everything a subcommand may consume. Unset members take per-command
/// defaults; members a command does not use must stay unset.
struct RunConfig {
  std::optional<ModelParams> params;
  std::optional<State> initial;
  std::optional<std::size_t> steps;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> pmax;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> stride;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<GridSpec> grid;
  std::optional<double> kappa;
  std::optional<unsigned> threads;
  std::optional<bool> explore;
  std::optional<std::string> figure;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

/// Keys a command accepts in its config document, and those it requires.
std::vector<std::string> allowed_keys(const std::string& command);
std::vector<std::string> required_keys(const std::string& command);

/// Parses a config document for `command`. Throws FormatError on unknown
/// keys, keys foreign to the command, or malformed values.
RunConfig config_from_json(const std::string& command, const Json& j);
Json config_to_json(const RunConfig& c);

/// "xmin:xmax:n,ymin:ymax:n,zmin:zmax:n"
GridSpec parse_grid(const std::string& text);
/// "x,y,z"
State parse_state(const std::string& text);

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_repro(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command line (without argv[0]).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace topp::cli
