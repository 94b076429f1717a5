#include "haltlab/universal.hpp"

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace haltlab {
namespace {

using u64 = std::uint64_t;

EvalOutcome diverged(u64 budget) { return {false, PosInt(0), budget}; }

// Resolution of one input into what its budgeted evaluation will do: halt
// with no machine steps, never halt at any budget, or run one machine.
struct Resolved {
  enum class Kind { immediate, divergent, running } kind;
  PosInt value;  // immediate only
  std::optional<MachineRun> run;
};

Resolved resolve_base_v(const PosInt& z) {
  const auto pair = deinterleave(z);
  if (!pair) return {Resolved::Kind::divergent, PosInt(0), std::nullopt};
  return {Resolved::Kind::running, PosInt(0),
          MachineRun(decode_index(pair->program_index), pair->argument)};
}

// Mirrors UniversalSpec::eval but exposes the underlying run so a dovetailer
// can advance it incrementally instead of re-running from scratch each round.
Resolved resolve(const UniversalSpec& u, const PosInt& x) {
  switch (u.kind) {
    case UniversalKind::base_v:
      return resolve_base_v(x);
    case UniversalKind::square_embed: {
      if (const auto root = perfect_square_root(x)) return resolve_base_v(*root);
      return {Resolved::Kind::immediate, PosInt(1), std::nullopt};
    }
    case UniversalKind::phi_pullback:
      return resolve_base_v(phi(x));
    case UniversalKind::mixed: {
      if (const auto root = perfect_square_root(x)) return resolve_base_v(*root);
      if (!u.aux_program) throw std::invalid_argument("mixed universal needs an aux program");
      return {Resolved::Kind::running, PosInt(0), MachineRun(*u.aux_program, x)};
    }
  }
  throw std::logic_error("unreachable universal kind");
}

struct PendingRun {
  u64 x;
  MachineRun run;
};

// Streams the dovetail enumeration of dom(u) in its fixed order: round s
// visits x = 1..s ascending with budget s and emits x the first time it
// halts. Calls sink(x, outcome) per emission; stops when sink returns false.
// Resolved runs persist across rounds, so total work is bounded by the sum
// of final step counts instead of re-simulated prefixes.
void dovetail(const UniversalSpec& u, u64 round_cap,
              const std::function<bool(const PosInt&, const EvalOutcome&)>& sink) {
  std::vector<PendingRun> pending;  // ascending x: the within-round scan order
  for (u64 s = 1; s <= round_cap; ++s) {
    std::size_t keep = 0;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i].run.run_until(s)) {
        const EvalOutcome out{true, pending[i].run.value(), pending[i].run.steps_used()};
        if (!sink(PosInt(static_cast<unsigned long>(pending[i].x)), out)) return;
      } else {
        if (keep != i) pending[keep] = std::move(pending[i]);
        ++keep;
      }
    }
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(keep), pending.end());
    // x = s enters play last in its debut round (it is the largest x <= s).
    Resolved r = resolve(u, PosInt(static_cast<unsigned long>(s)));
    if (r.kind == Resolved::Kind::immediate) {
      if (!sink(PosInt(static_cast<unsigned long>(s)), {true, r.value, 0})) return;
    } else if (r.kind == Resolved::Kind::running) {
      if (r.run->run_until(s)) {
        const EvalOutcome out{true, r.run->value(), r.run->steps_used()};
        if (!sink(PosInt(static_cast<unsigned long>(s)), out)) return;
      } else {
        pending.push_back({s, std::move(*r.run)});
      }
    }
  }
}

}  // namespace

EvalOutcome UniversalSpec::eval(const PosInt& x, std::uint64_t budget) const {
  switch (kind) {
    case UniversalKind::base_v:
      return v_eval(x, budget);
    case UniversalKind::square_embed:
      return u_sq_eval(x, budget);
    case UniversalKind::phi_pullback:
      return u_phi_eval(x, budget);
    case UniversalKind::mixed:
      if (!aux_program) throw std::invalid_argument("mixed universal needs an aux program");
      return u_mix_eval(x, *aux_program, budget);
  }
  throw std::logic_error("unreachable universal kind");
}

std::string_view UniversalSpec::name() const {
  switch (kind) {
    case UniversalKind::base_v: return "base_v";
    case UniversalKind::square_embed: return "square_embed";
    case UniversalKind::phi_pullback: return "phi_pullback";
    case UniversalKind::mixed: return "mixed";
  }
  return "?";
}

std::optional<UniversalKind> kind_from_name(std::string_view name) {
  if (name == "base_v") return UniversalKind::base_v;
  if (name == "square_embed") return UniversalKind::square_embed;
  if (name == "phi_pullback") return UniversalKind::phi_pullback;
  if (name == "mixed") return UniversalKind::mixed;
  return std::nullopt;
}

EvalOutcome v_eval(const PosInt& z, std::uint64_t budget) {
  const auto pair = deinterleave(z);
  if (!pair) return diverged(budget);  // off the interleave image V diverges
  return gamma(pair->program_index, pair->argument, budget);
}

EvalOutcome u_sq_eval(const PosInt& x, std::uint64_t budget) {
  if (const auto root = perfect_square_root(x)) return v_eval(*root, budget);
  return {true, PosInt(1), 0};  // constant branch: halt at once with 1
}

EvalOutcome u_phi_eval(const PosInt& x, std::uint64_t budget) {
  return v_eval(phi(x), budget);
}

EvalOutcome u_mix_eval(const PosInt& x, const Program& f_spec, std::uint64_t budget) {
  if (const auto root = perfect_square_root(x)) return v_eval(*root, budget);
  return eval(f_spec, x, budget);
}

CompilerConstants compiler_constants_for(const PosInt& g) {
  PosInt c;
  mpz_ui_pow_ui(c.get_mpz_t(), 2, static_cast<unsigned long>(2 * bit_length(g) + 1));
  return {g, c, c};
}

DomainEnumeration enumerate_domain(const UniversalSpec& u, std::size_t count,
                                   std::uint64_t round_cap) {
  DomainEnumeration out;
  out.points.reserve(count);
  dovetail(u, round_cap, [&](const PosInt& x, const EvalOutcome&) {
    out.points.push_back(x);
    return out.points.size() < count;
  });
  out.exhausted_rounds = out.points.size() < count;
  return out;
}

CompileResult compile_cu(const PosInt& z, const PosInt& x, std::uint64_t round_cap) {
  const auto [k, g] = cantor_unpair(z);
  const EvalOutcome target = v_eval(interleave(g, x), round_cap);
  if (!target.halted) return {CompileResult::Status::target_diverged, PosInt(0)};

  const PosInt bound = k * x;
  const UniversalSpec base{UniversalKind::base_v, std::nullopt};
  std::optional<PosInt> witness;
  dovetail(base, round_cap, [&](const PosInt& point, const EvalOutcome& out) {
    if (point <= bound && out.value == target.value) {
      // Re-verify with the full budget before trusting a dovetail emission.
      const EvalOutcome check = v_eval(point, round_cap);
      if (check.halted && check.value == target.value) {
        witness = point;
        return false;
      }
    }
    return true;
  });
  if (witness) return {CompileResult::Status::found, *witness};
  return {CompileResult::Status::exhausted, PosInt(0)};
}

std::optional<PosInt> theta(const std::function<bool(const PosInt&)>& s_pred,
                            const PosInt& n, const PosInt& search_cap) {
  if (n < 1) throw std::invalid_argument("theta needs n >= 1");
  if (!n.fits_ulong_p() || n.get_ui() > bit_length(search_cap)) {
    return std::nullopt;  // 2^(n-1) alone exceeds the cap
  }
  PosInt fiber_point;  // 2^(n-1), then advanced by 2^n: exactly phi^{-1}(n)
  mpz_ui_pow_ui(fiber_point.get_mpz_t(), 2, n.get_ui() - 1);
  const PosInt stride = fiber_point * 2;
  for (; fiber_point <= search_cap; fiber_point += stride) {
    if (s_pred(fiber_point)) return fiber_point;
  }
  return std::nullopt;
}

std::optional<PosInt> theta_enumerated(const CeSetSpec& ce, const PosInt& n,
                                       std::uint64_t enum_cap) {
  std::set<PosInt> seen;
  for (u64 k = 1; k <= enum_cap; ++k) {
    const EvalOutcome out = eval(ce.enumerator, PosInt(static_cast<unsigned long>(k)),
                                 ce.step_budget);
    if (!out.halted) {
      throw std::runtime_error("enumerator exceeded its step budget at k=" + std::to_string(k));
    }
    if (!seen.insert(out.value).second) {
      throw std::runtime_error("enumerator repeated member " + out.value.get_str() +
                               " at k=" + std::to_string(k));
    }
    if (phi(out.value) == n) return out.value;
  }
  return std::nullopt;
}

std::size_t ProbeReport::found_count() const {
  std::size_t n = 0;
  for (const auto& p : points) n += (p.status == ProbeStatus::witness_found);
  return n;
}

ProbeReport probe_programmable(const UniversalSpec& u, const PosInt& f_index,
                               const PosInt& k, const std::vector<PosInt>& xs,
                               std::uint64_t budget) {
  ProbeReport report;
  report.points.reserve(xs.size());
  for (const PosInt& x : xs) {
    const EvalOutcome fx = gamma(f_index, x, budget);
    if (!fx.halted) {
      report.points.push_back({x, ProbeStatus::f_diverged, PosInt(0), PosInt(0)});
      continue;
    }
    const PosInt bound = k * x;
    std::optional<PosInt> witness;
    for (PosInt y = 1; y <= bound; ++y) {
      const EvalOutcome uy = u.eval(y, budget);
      if (uy.halted && uy.value == fx.value) {
        witness = y;
        break;
      }
    }
    if (witness) {
      report.points.push_back({x, ProbeStatus::witness_found, *witness, fx.value});
    } else {
      report.points.push_back({x, ProbeStatus::no_witness_within_budget, PosInt(0), fx.value});
    }
  }
  return report;
}

}  // namespace haltlab
