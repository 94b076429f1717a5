#include "haltlab/machine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>

namespace haltlab {
namespace {

using u64 = std::uint64_t;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool parse_u64(std::string_view s, u64& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

ParseResult parse_program(std::string_view text) {
  ParseResult result;
  std::vector<std::size_t> inst_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto tokens = split_tokens(line);
    const std::string mnemonic = upper(tokens[0]);
    if (mnemonic == "INC") {
      u64 reg = 0;
      if (tokens.size() != 2 || !parse_u64(tokens[1], reg)) {
        result.errors.push_back({line_no, "expected `INC <reg>`"});
        continue;
      }
      if (reg >= kRegisterCap) {
        result.errors.push_back({line_no, "register index over cap"});
        continue;
      }
      result.program.code.push_back({Op::inc, static_cast<std::uint32_t>(reg), 1});
      inst_lines.push_back(line_no);
    } else if (mnemonic == "DECJZ") {
      u64 reg = 0, target = 0;
      if (tokens.size() != 3 || !parse_u64(tokens[1], reg) || !parse_u64(tokens[2], target)) {
        result.errors.push_back({line_no, "expected `DECJZ <reg> <target>`"});
        continue;
      }
      if (reg >= kRegisterCap) {
        result.errors.push_back({line_no, "register index over cap"});
        continue;
      }
      result.program.code.push_back({Op::decjz, static_cast<std::uint32_t>(reg), static_cast<std::uint32_t>(target)});
      inst_lines.push_back(line_no);
    } else {
      result.errors.push_back({line_no, "unknown instruction `" + std::string(tokens[0]) + "`"});
    }
  }

  const std::size_t L = result.program.code.size();
  if (L > kLengthCap) {
    result.errors.push_back({inst_lines.empty() ? 0 : inst_lines.back(), "program length over cap"});
  }
  for (std::size_t i = 0; i < L; ++i) {
    const Instruction& ins = result.program.code[i];
    if (ins.op == Op::decjz && (ins.target < 1 || ins.target > L + 1)) {
      result.errors.push_back({inst_lines[i], "jump target outside [1, L+1]"});
    }
  }
  if (!result.errors.empty()) result.program.code.clear();
  return result;
}

std::string format_program(const Program& p) {
  std::string out;
  for (const Instruction& ins : p.code) {
    if (ins.op == Op::inc) {
      out += "INC " + std::to_string(ins.reg) + "\n";
    } else {
      out += "DECJZ " + std::to_string(ins.reg) + " " + std::to_string(ins.target) + "\n";
    }
  }
  return out;
}

MachineRun::MachineRun(Program program, const PosInt& x)
    : program_(std::move(program)), pc_(1) {
  std::uint32_t max_reg = 0;
  for (const Instruction& ins : program_.code) max_reg = std::max(max_reg, ins.reg);
  regs_.resize(max_reg + 1);
  regs_[0] = x - 1;
  halted_ = program_.code.empty();
}

bool MachineRun::run_until(std::uint64_t step_limit) {
  const std::size_t length = program_.code.size();
  while (!halted_ && steps_ < step_limit) {
    const Instruction& ins = program_.code[pc_ - 1];
    if (ins.op == Op::inc) {
      ++regs_[ins.reg];
      ++pc_;
    } else if (mpz_sgn(regs_[ins.reg].get_mpz_t()) == 0) {
      pc_ = ins.target;
    } else {
      --regs_[ins.reg];
      ++pc_;
    }
    ++steps_;
    if (pc_ == length + 1) halted_ = true;
  }
  return halted_;
}

PosInt MachineRun::value() const { return regs_[0] + 1; }

EvalOutcome eval(const Program& p, const PosInt& x, std::uint64_t budget) {
  MachineRun run(p, x);
  run.run_until(budget);
  if (run.halted()) return {true, run.value(), run.steps_used()};
  return {false, PosInt(0), budget};
}

PosInt encode_program(const Program& p) {
  constexpr std::size_t kBitGuard = std::size_t{1} << 24;
  if (p.code.size() > kLengthCap) throw std::overflow_error("program length over cap");
  PosInt body = 1;
  for (std::size_t i = p.code.size(); i-- > 0;) {
    const Instruction& ins = p.code[i];
    const PosInt code = cantor_pair(PosInt(ins.op == Op::inc ? 1 : 2),
                                    cantor_pair(PosInt(ins.reg + 1), PosInt(ins.target)));
    body = (i + 1 == p.code.size()) ? code : cantor_pair(code, body);
    if (bit_length(body) > kBitGuard) {
      throw std::overflow_error("program index exceeds the arbitrary-precision guard");
    }
  }
  return cantor_pair(PosInt(p.code.size() + 1), body);
}

Program diverging_program() { return Program{{{Op::decjz, 1, 1}}}; }

Program decode_index(const PosInt& e) {
  auto [length_plus_1, body] = cantor_unpair(e);
  if (length_plus_1 > kLengthCap + 1) return diverging_program();
  const u64 L = length_plus_1.get_ui() - 1;
  Program p;
  p.code.reserve(L);
  PosInt rest = std::move(body);
  for (u64 k = 1; k <= L; ++k) {
    PosInt code;
    if (k < L) {
      auto [head, tail] = cantor_unpair(rest);
      code = std::move(head);
      rest = std::move(tail);
    } else {
      code = std::move(rest);
    }
    auto [opcode, reg_target] = cantor_unpair(code);
    auto [reg_plus_1, target] = cantor_unpair(reg_target);
    if (opcode != 1 && opcode != 2) return diverging_program();
    if (reg_plus_1 > kRegisterCap) return diverging_program();
    if (target > L + 1) return diverging_program();
    if (opcode == 1 && target != 1) return diverging_program();
    p.code.push_back({opcode == 1 ? Op::inc : Op::decjz,
                      static_cast<std::uint32_t>(reg_plus_1.get_ui() - 1),
                      static_cast<std::uint32_t>(target.get_ui())});
  }
  return p;
}

EvalOutcome gamma(const PosInt& e, const PosInt& x, std::uint64_t budget) {
  return eval(decode_index(e), x, budget);
}

}  // namespace haltlab
