// Named predicate registry for experiments, plus program-backed predicates:
// any counter-machine program computing 1 (member) / 2 (non-member) can act
// as a decidable set, with a mandatory totality budget enforced at call time.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "haltlab/density.hpp"

namespace haltlab {

// Built-in names: `squares`, `nonsquares`, `odds`, `evens`, `all`, `none`,
// `phi-fiber:<n>`. `program:<path.cm>` loads a counter-machine decider whose
// output must be 1 (yes) or 2 (no) within program_budget steps; overruns and
// other outputs raise std::runtime_error when the predicate is evaluated.
// Returns nullopt and fills `error` when the spec cannot be resolved.
std::optional<Predicate> make_predicate(const std::string& spec,
                                        std::uint64_t program_budget,
                                        std::string& error);

// The names accepted by make_predicate, for usage messages.
std::string predicate_registry_help();

}  // namespace haltlab
