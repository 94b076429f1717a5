// Almost-decidability witness harness. A witness is a claimed pair
// (decidable set R of high density, decision procedure d for R ∩ Halt(U)).
// The harness sweeps [1, N] under a step budget and looks for hard
// refutations: points where U provably halts yet d says "no". It never
// declares a witness valid — the honest verdicts are "refuted" and
// "unrefuted_at_budget".
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haltlab/density.hpp"
#include "haltlab/universal.hpp"

namespace haltlab {

struct Witness {
  Predicate r_pred;           // membership in R
  Predicate d_pred;           // claimed decider of R ∩ Halt(U); consulted only on R
  Rational claimed_density;   // claimed d(R), in (0, 1]
};

enum class ContradictionKind {
  halts_but_rejected,  // u halts on x within budget while d_pred(x) = false
};

struct Contradiction {
  PosInt x;
  ContradictionKind kind;
};

struct WitnessReport {
  PosInt range_n;  // checked window [1, range_n]
  std::uint64_t budget;
  std::vector<Contradiction> contradictions;
  PosInt confirmations;  // d said yes and u halted within budget
  PosInt inconclusive;   // d said yes, budget exhausted: logged, not refuting
  DensityReport density_of_r;

  bool refuted() const { return !contradictions.empty(); }
  std::string verdict() const;  // "refuted" | "unrefuted_at_budget"
};

// Sweeps x = 1..N restricted to R. Every contradiction is re-checked by a
// fresh evaluation before the report is returned (soundness gate).
WitnessReport validate_witness(const UniversalSpec& u, const Witness& w,
                               const PosInt& n, std::uint64_t budget,
                               unsigned workers = 0);

// validate_witness plus the r-decidability density test
// |p_N(R) − r| <= tol. r = 1 is the generic (almost-decidable) case.
struct RCheckReport {
  WitnessReport witness;
  Rational r;
  Rational tol;
  Rational density_gap;  // |p_N(R) − r|, exact
  bool density_ok;

  bool passed() const { return !witness.refuted() && density_ok; }
};

RCheckReport r_decidability_check(const UniversalSpec& u, const Witness& w,
                                  const Rational& r, const PosInt& n,
                                  std::uint64_t budget, const Rational& tol,
                                  unsigned workers = 0);

std::string contradiction_kind_name(ContradictionKind kind);

// JSON emitters (schemas used by the CLI and stable for tooling):
//   witness: {range, budget, contradictions:[{x,kind}], confirmations,
//             inconclusive, density:{num,den}, verdict}
std::string witness_report_json(const WitnessReport& report);
std::string r_check_report_json(const RCheckReport& report);

}  // namespace haltlab
