// Two-instruction counter machine: text syntax, deterministic step-bounded
// interpreter, and a total Goedel numbering with a budgeted index evaluator.
//
// Instruction set:
//   INC r      add 1 to register r, advance.
//   DECJZ r t  if register r is zero jump to t, else subtract 1 and advance.
//
// Addresses are 1-based; address L+1 (one past the last instruction) halts.
// I/O convention: input x >= 1 enters as r0 = x - 1, all other registers 0;
// a halted machine's value is r0 + 1. This makes programs exactly the
// partial functions Z+ -> Z+.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "haltlab/encodings.hpp"

namespace haltlab {

inline constexpr std::uint32_t kRegisterCap = 64;     // register indices 0..63
inline constexpr std::uint64_t kLengthCap = 1u << 16; // max decodable length

enum class Op : std::uint8_t { inc, decjz };

struct Instruction {
  Op op;
  std::uint32_t reg;     // register index, 0-based
  std::uint32_t target;  // 1-based jump target; fixed to 1 for inc

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Program {
  std::vector<Instruction> code;

  std::size_t length() const { return code.size(); }
  friend bool operator==(const Program&, const Program&) = default;
};

struct ParseError {
  std::size_t line;  // 1-based line number in the source text
  std::string message;
};

struct ParseResult {
  Program program;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

// Line format: `INC <reg>` | `DECJZ <reg> <target>`; `#` comments and blank
// lines ignored; mnemonics case-insensitive; registers/targets decimal.
// Jump targets must land in [1, L+1] and registers below the cap.
ParseResult parse_program(std::string_view text);

// Canonical text form (uppercase mnemonics, one instruction per line).
std::string format_program(const Program& p);

struct EvalOutcome {
  bool halted;
  PosInt value;              // r0 + 1 when halted; 0 otherwise
  std::uint64_t steps_used;  // equals budget when not halted

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

// Resumable single run: owns its register state, can be advanced in
// installments (the dovetailer relies on this to avoid re-running prefixes).
class MachineRun {
 public:
  MachineRun(Program program, const PosInt& x);

  // Advance until halted or steps_used() == step_limit. Returns halted().
  bool run_until(std::uint64_t step_limit);

  bool halted() const { return halted_; }
  std::uint64_t steps_used() const { return steps_; }
  PosInt value() const;  // r0 + 1; meaningful only once halted

 private:
  Program program_;
  std::vector<PosInt> regs_;
  std::uint64_t pc_;  // 1-based; program_.length() + 1 means halted
  std::uint64_t steps_ = 0;
  bool halted_;
};

// Budgeted evaluation. A machine that reaches the halt address in exactly
// `budget` steps counts as halted; out_of_budget reports steps_used = budget.
EvalOutcome eval(const Program& p, const PosInt& x, std::uint64_t budget);

// Goedel numbering. encode nests the pairing bijection:
//   index = pair(L+1, pair(c(i1), pair(c(i2), ... c(iL)...)))
//   c(i)  = pair(opcode, pair(register+1, target)), opcode 1=INC, 2=DECJZ
// with the empty program at pair(1,1) = 1. Indices grow doubly-exponentially
// in L; encode throws std::overflow_error beyond ~2^24 bits.
PosInt encode_program(const Program& p);

// Total: every index >= 1 decodes. Malformed codes (bad opcode, register or
// length over cap, target outside [1, L+1], INC target != 1) yield the
// canonical diverging program [DECJZ 1 1].
Program decode_index(const PosInt& e);

// The canonical diverging fallback used by decode_index.
Program diverging_program();

// Budgeted enumeration-style evaluator: gamma(e,x,b) = eval(decode(e), x, b).
EvalOutcome gamma(const PosInt& e, const PosInt& x, std::uint64_t budget);

}  // namespace haltlab
