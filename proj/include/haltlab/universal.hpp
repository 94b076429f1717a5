// Universal-function constructions over the counter machine:
//
//   base_v        V(z) = gamma(e, x) where (e, x) = deinterleave(z);
//                 diverges when z is outside the interleave image.
//   square_embed  U(x) = V(sqrt(x)) on perfect squares, constant 1 elsewhere;
//                 halts on every non-square, so its halting set has density 1.
//   phi_pullback  U(x) = V(phi(x)); Halt(U) is the phi-preimage of Halt(V),
//                 a set of positive density that is not almost decidable.
//   mixed         U(x) = V(sqrt(x)) on squares, caller-supplied F elsewhere.
//
// Plus the machinery those constructions feed: the dovetailed enumeration of
// a halting domain, the linear-bound compiler search, and the theta
// reductions from V-indices into a target set.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haltlab/encodings.hpp"
#include "haltlab/machine.hpp"

namespace haltlab {

enum class UniversalKind { base_v, square_embed, phi_pullback, mixed };

struct UniversalSpec {
  UniversalKind kind = UniversalKind::base_v;
  std::optional<Program> aux_program;  // the F branch; required for mixed

  // Budgeted evaluation; deterministic in (kind, aux_program, x, budget).
  // Bookkeeping (square root, phi, deinterleave) costs zero budget; the
  // budget is handed intact to the one simulated machine run, if any.
  EvalOutcome eval(const PosInt& x, std::uint64_t budget) const;

  std::string_view name() const;
};

// kind_from_name accepts "base_v" | "square_embed" | "phi_pullback" | "mixed".
std::optional<UniversalKind> kind_from_name(std::string_view name);

// Free-function forms of the four evaluators.
EvalOutcome v_eval(const PosInt& z, std::uint64_t budget);
EvalOutcome u_sq_eval(const PosInt& x, std::uint64_t budget);
EvalOutcome u_phi_eval(const PosInt& x, std::uint64_t budget);
EvalOutcome u_mix_eval(const PosInt& x, const Program& f_spec, std::uint64_t budget);

// Constants attached to a program index g: interleave(g,x) <= c*x for all x,
// with c = 2^(2*bitlen(g)+1); the same constant serves as the linear
// programmability bound k.
struct CompilerConstants {
  PosInt g;
  PosInt c;
  PosInt k;
};
CompilerConstants compiler_constants_for(const PosInt& g);

// Dovetailed enumeration E of dom(u): rounds s = 1..round_cap; round s
// evaluates every x <= s with budget s in ascending order and emits x the
// first time it halts (a seen-set keeps E one-one). The order is fixed so
// enumeration-dependent results reproduce bit for bit.
struct DomainEnumeration {
  std::vector<PosInt> points;
  bool exhausted_rounds;  // round_cap ran out before `count` emissions
};
DomainEnumeration enumerate_domain(const UniversalSpec& u, std::size_t count,
                                   std::uint64_t round_cap);

// Compiler search over U = base_v. With (k, g) = cantor_unpair(z), computes
// the target t = v_eval(interleave(g, x)) under budget round_cap, then scans
// the dovetail enumeration of dom(base_v) for the first point p <= k*x whose
// value equals t. The candidate is re-verified by direct evaluation before
// being returned.
struct CompileResult {
  enum class Status {
    found,            // point holds a verified witness
    target_diverged,  // v_eval(interleave(g,x)) exhausted round_cap
    exhausted,        // no witness surfaced within round_cap (inconclusive)
  };
  Status status;
  PosInt point;  // meaningful only when status == found
};
CompileResult compile_cu(const PosInt& z, const PosInt& x, std::uint64_t round_cap);

// theta(n) = least k <= search_cap with s_pred(k) and phi(k) = n. Scans the
// phi-fiber of n (k = 2^(n-1)(2j+1), j ascending) so huge fibers cost only
// as many predicate calls as there are fiber points below the cap.
// nullopt = cap exceeded: raise the cap, it never means absence in the limit.
std::optional<PosInt> theta(const std::function<bool(const PosInt&)>& s_pred,
                            const PosInt& n, const PosInt& search_cap);

// A computably enumerable set presented by an enumerator program: member
// E(k) = eval(enumerator, k, step_budget).value. Emitted members must be
// pairwise distinct and every run must halt within step_budget.
struct CeSetSpec {
  Program enumerator;
  std::uint64_t step_budget = 100000;
  std::optional<Rational> claimed_density;
};

// Enumerated-set form of theta: E(k*) for the least k* <= enum_cap with
// phi(E(k*)) = n. Throws std::runtime_error if the enumerator overruns its
// step budget or repeats a member; nullopt = cap exceeded.
std::optional<PosInt> theta_enumerated(const CeSetSpec& ce, const PosInt& n,
                                       std::uint64_t enum_cap);

// Bounded check of the linear programmability property: for each x in xs
// where F = gamma(f_index, .) halts within budget, exhaustively search
// y in [1, k*x] for u(y) = F(x).
enum class ProbeStatus {
  witness_found,
  no_witness_within_budget,  // inconclusive, not a refutation
  f_diverged,                // F(x) itself exhausted the budget
};
struct ProbePoint {
  PosInt x;
  ProbeStatus status;
  PosInt witness;  // meaningful only when witness_found
  PosInt f_value;  // meaningful unless f_diverged
};
struct ProbeReport {
  std::vector<ProbePoint> points;
  std::size_t found_count() const;
};
ProbeReport probe_programmable(const UniversalSpec& u, const PosInt& f_index,
                               const PosInt& k, const std::vector<PosInt>& xs,
                               std::uint64_t budget);

}  // namespace haltlab
