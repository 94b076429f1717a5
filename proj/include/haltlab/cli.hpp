// Command-line front end. Subcommands:
//   eval, encode, decode            — interpreter and numbering
//   density, halting-density        — exact / lower-bound density reports
//   witness, r-check                — almost-decidability harness
//   compile-cu, probe-programmable  — linear-bound compiler machinery
//   enumerate-domain                — dovetailed halting-domain enumeration
//   experiment phi-reduction|square-embed
//
// Exit codes: 0 success; 1 refuted witness, failed check, or inconclusive
// search; 2 usage or input error.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "haltlab/encodings.hpp"

namespace haltlab {

enum class ReportFormat { csv, json };

struct ExperimentConfig {
  std::string universal = "base_v";  // UniversalSpec name; "mixed:<file>" allowed
  PosInt n = 1;
  std::uint64_t budget = 1;
  std::string output_path;  // empty = standard output
  ReportFormat format = ReportFormat::csv;
  std::optional<std::uint64_t> seed;  // sampling experiments only
};

int run_cli(int argc, const char* const* argv);

}  // namespace haltlab
