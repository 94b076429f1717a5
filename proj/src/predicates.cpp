#include "haltlab/predicates.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "haltlab/machine.hpp"

namespace haltlab {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Predicate program_predicate(Program program, std::uint64_t budget) {
  // shared_ptr keeps the many copies a chunked sweep makes cheap.
  auto shared = std::make_shared<Program>(std::move(program));
  return [shared, budget](const PosInt& x) {
    const EvalOutcome out = eval(*shared, x, budget);
    if (!out.halted) {
      throw std::runtime_error("predicate program exceeded its totality budget at x=" +
                               x.get_str());
    }
    if (out.value == 1) return true;
    if (out.value == 2) return false;
    throw std::runtime_error("predicate program must output 1 (yes) or 2 (no); got " +
                             out.value.get_str() + " at x=" + x.get_str());
  };
}

}  // namespace

std::optional<Predicate> make_predicate(const std::string& spec,
                                        std::uint64_t program_budget,
                                        std::string& error) {
  if (spec == "squares") {
    return Predicate([](const PosInt& x) { return perfect_square_root(x).has_value(); });
  }
  if (spec == "nonsquares") {
    return Predicate([](const PosInt& x) { return !perfect_square_root(x).has_value(); });
  }
  if (spec == "odds") {
    return Predicate([](const PosInt& x) { return mpz_odd_p(x.get_mpz_t()) != 0; });
  }
  if (spec == "evens") {
    return Predicate([](const PosInt& x) { return mpz_even_p(x.get_mpz_t()) != 0; });
  }
  if (spec == "all") {
    return Predicate([](const PosInt&) { return true; });
  }
  if (spec == "none") {
    return Predicate([](const PosInt&) { return false; });
  }
  if (spec.rfind("phi-fiber:", 0) == 0) {
    const std::string arg = spec.substr(10);
    PosInt n;
    if (arg.empty() || mpz_set_str(n.get_mpz_t(), arg.c_str(), 10) != 0 || n < 1) {
      error = "phi-fiber needs a positive integer, got `" + arg + "`";
      return std::nullopt;
    }
    return Predicate([n](const PosInt& x) { return phi(x) == n; });
  }
  if (spec.rfind("program:", 0) == 0) {
    const std::string path = spec.substr(8);
    const auto text = read_file(path);
    if (!text) {
      error = "cannot read predicate program `" + path + "`";
      return std::nullopt;
    }
    ParseResult parsed = parse_program(*text);
    if (!parsed.ok()) {
      error = "predicate program `" + path + "` line " +
              std::to_string(parsed.errors.front().line) + ": " +
              parsed.errors.front().message;
      return std::nullopt;
    }
    return program_predicate(std::move(parsed.program), program_budget);
  }
  error = "unknown predicate `" + spec + "`; " + predicate_registry_help();
  return std::nullopt;
}

std::string predicate_registry_help() {
  return "known predicates: squares, nonsquares, odds, evens, all, none, "
         "phi-fiber:<n>, program:<path.cm>";
}

}  // namespace haltlab
