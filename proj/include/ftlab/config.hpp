#pragma once

#include <map>
#include <string>

#include "ftlab/noise.hpp"
#include "ftlab/solver.hpp"

namespace ftlab {

/// Flat "key = value" configuration, one entry per line, "#" comments.
/// Keys are the snake_case field names of SolverConfig / NoiseSpec / Grid.
/// Unknown keys are errors.  Environment variables FT_<UPPER_KEY> override
/// file values.
struct RunConfig {
  Grid grid;
  SolverConfig solver;
  NoiseSpec noise;

  /// Raw key/value view, for echoing into manifests.
  std::map<std::string, std::string> entries;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// The exact key set accepted by the parser.
const std::map<std::string, std::string>& config_key_docs();

}  // namespace ftlab
