// Natural-density machinery: exact finite densities p_N(A) = #([1,N] ∩ A)/N
// for decidable predicates, and budgeted lower bounds for halting sets.
// Densities are exact rationals throughout — floats never enter a report.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "haltlab/encodings.hpp"
#include "haltlab/universal.hpp"

namespace haltlab {

using Predicate = std::function<bool(const PosInt&)>;

enum class DensityMode { exact, halting_lower_bound };

struct DensityReport {
  PosInt n;      // the N of the window [1, N]
  PosInt count;  // members found in the window
  Rational density;
  DensityMode mode;
  std::optional<std::uint64_t> budget;  // present iff halting_lower_bound
};

// Exact membership count of pred over [1, N]. pred must be total on the
// window and safe to call from concurrent workers. workers = 0 lets the
// sweep pick its own parallelism; the count is chunking-independent.
DensityReport density_exact(const Predicate& pred, const PosInt& n,
                            unsigned workers = 0);

// Count of x <= N on which u halts within budget. A certified lower bound
// on p_N(Halt(u)) — never an upper bound, which budgets cannot certify.
DensityReport halting_density_lower(const UniversalSpec& u, const PosInt& n,
                                    std::uint64_t budget, unsigned workers = 0);

// CSV emission with pinned columns; budget is blank in exact mode.
std::string density_csv_header();  // "N,count,density_num,density_den,mode,budget"
std::string density_csv_row(const DensityReport& report);

std::string_view density_mode_name(DensityMode mode);

}  // namespace haltlab
