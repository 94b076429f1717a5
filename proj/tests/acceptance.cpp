// Acceptance gate: one self-contained check per shipping criterion, printing
// exactly one PASS/FAIL line each and exiting 0 only if every criterion holds.
// Each check recomputes its own expectations from first principles (brute
// force, closed forms, or independent re-evaluation) rather than trusting the
// code paths under test.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <haltlab/density.hpp>
#include <haltlab/encodings.hpp>
#include <haltlab/machine.hpp>
#include <haltlab/parallel.hpp>
#include <haltlab/universal.hpp>
#include <haltlab/witness.hpp>

namespace {

using namespace haltlab;
using u64 = std::uint64_t;

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool fail(std::string& detail, const std::string& message) {
  detail = message;
  return false;
}

// --- fixture programs (independent copies; indices are irrelevant here) ------

Program fx_identity() { return {}; }
Program fx_successor() { return Program{{{Op::inc, 0, 1}}}; }
Program fx_add2() { return Program{{{Op::inc, 0, 1}, {Op::inc, 0, 1}}}; }
Program fx_const1() { return Program{{{Op::decjz, 0, 3}, {Op::decjz, 1, 1}}}; }

// --- criterion 1: encoding laws ----------------------------------------------

bool check_encoding_laws(std::string& detail) {
  for (unsigned long e = 1; e <= 1000; ++e) {
    const PosInt bound_factor = PosInt(1) << (2 * bit_length(e) + 1);
    for (unsigned long x = 1; x <= 1000; ++x) {
      const PosInt z = interleave(e, x);
      const auto back = deinterleave(z);
      if (!back || back->program_index != e || back->argument != x) {
        return fail(detail, "round trip broke at e=" + std::to_string(e) +
                                " x=" + std::to_string(x));
      }
      if (z > bound_factor * x) {
        return fail(detail, "linear bound broke at e=" + std::to_string(e) +
                                " x=" + std::to_string(x));
      }
    }
  }
  return true;
}

// --- criterion 2: marker-function exactness -----------------------------------

bool check_phi_exactness(std::string& detail) {
  const PosInt window = PosInt(1) << 20;
  for (unsigned long n = 1; n <= 20; ++n) {
    if (phi_preimage_count(n, window) != (PosInt(1) << (20 - n))) {
      return fail(detail, "closed form broke at n=" + std::to_string(n));
    }
  }
  // Brute force: walk x = 1..10^4 once, keeping running counts per fiber.
  std::vector<PosInt> counts(13, PosInt(0));
  for (unsigned long x = 1; x <= 10000; ++x) {
    const PosInt f = phi(x);
    if (f <= 12) ++counts[f.get_ui()];
    for (unsigned long n = 1; n <= 12; ++n) {
      if (phi_preimage_count(n, x) != counts[n]) {
        return fail(detail, "brute-force mismatch at n=" + std::to_string(n) +
                                " N=" + std::to_string(x));
      }
    }
  }
  return true;
}

// --- criterion 3: universality smoke ------------------------------------------

bool check_universality_smoke(std::string& detail) {
  struct Fixture {
    const char* name;
    Program program;
    std::function<PosInt(unsigned long)> f;
  };
  const std::vector<Fixture> fixtures = {
      {"identity", fx_identity(), [](unsigned long x) { return PosInt(x); }},
      {"successor", fx_successor(), [](unsigned long x) { return PosInt(x + 1); }},
      {"constant-1", fx_const1(), [](unsigned long) { return PosInt(1); }},
      {"add-2", fx_add2(), [](unsigned long x) { return PosInt(x + 2); }},
  };
  for (const Fixture& fixture : fixtures) {
    const PosInt g = encode_program(fixture.program);
    for (unsigned long x = 1; x <= 100; ++x) {
      const EvalOutcome out = v_eval(interleave(g, x), 100000);
      if (!out.halted || out.value != fixture.f(x)) {
        return fail(detail, std::string(fixture.name) + " mismatched at x=" +
                                std::to_string(x));
      }
    }
  }
  return true;
}

// --- criterion 4: square-embedding witness ------------------------------------

bool check_square_embed_witness(std::string& detail) {
  const UniversalSpec u{UniversalKind::square_embed, {}};
  const Witness w{[](const PosInt& x) { return !perfect_square_root(x).has_value(); },
                  [](const PosInt&) { return true; }, Rational(1)};
  const PosInt n = 100000;
  const WitnessReport report = validate_witness(u, w, n, 100);
  if (!report.contradictions.empty()) {
    return fail(detail, std::to_string(report.contradictions.size()) + " contradictions");
  }
  if (report.confirmations != n - 316) {
    return fail(detail, "confirmations=" + report.confirmations.get_str() +
                            ", expected " + PosInt(n - 316).get_str());
  }
  const DensityReport lower = halting_density_lower(u, n, 100);
  if (lower.density < Rational(n - 316, n)) {
    return fail(detail, "halting lower bound under (10^5-316)/10^5");
  }
  return true;
}

// --- criterion 5: reduction into the non-squares -------------------------------

bool check_phi_reduction(std::string& detail) {
  const auto nonsquare = [](const PosInt& v) { return !perfect_square_root(v).has_value(); };
  unsigned samples = 0;
  for (unsigned long n = 1; n <= 200 && samples < 50; ++n) {
    const EvalOutcome base = v_eval(n, 100000);
    if (!base.halted) continue;
    ++samples;
    PosInt cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 2, n + 2);
    const auto t = theta(nonsquare, n, cap);
    if (!t) return fail(detail, "theta missed at n=" + std::to_string(n));
    if (phi(*t) != n) return fail(detail, "phi round trip broke at n=" + std::to_string(n));
    if (!nonsquare(*t)) return fail(detail, "theta landed on a square at n=" + std::to_string(n));
    const EvalOutcome pulled = u_phi_eval(*t, 100000);
    if (!(pulled == base)) return fail(detail, "outcome mismatch at n=" + std::to_string(n));
  }
  if (samples != 50) {
    return fail(detail, "only " + std::to_string(samples) + " halting samples in [1,200]");
  }
  return true;
}

// --- criterion 6: halting-set identity under the pullback -----------------------

bool check_halting_set_identity(std::string& detail) {
  for (unsigned long x = 1; x <= 10000; ++x) {
    const EvalOutcome pulled = u_phi_eval(x, 1000);
    const EvalOutcome base = v_eval(phi(x), 1000);
    if (!(pulled == base)) {
      return fail(detail, "outcomes differ at x=" + std::to_string(x));
    }
  }
  return true;
}

// --- criterion 7: compiler search with the linear bound -------------------------

bool check_compiler_search(std::string& detail) {
  const PosInt g = encode_program(fx_successor());
  const CompilerConstants constants = compiler_constants_for(g);
  if (constants.k != 32) return fail(detail, "expected k=32 for the successor index");
  const PosInt z = cantor_pair(constants.k, g);
  for (unsigned long x = 1; x <= 50; ++x) {
    const CompileResult result = compile_cu(z, x, 2000);
    if (result.status != CompileResult::Status::found) {
      return fail(detail, "no witness at x=" + std::to_string(x));
    }
    if (result.point > constants.k * PosInt(x)) {
      return fail(detail, "witness exceeds k*x at x=" + std::to_string(x));
    }
    const EvalOutcome check = v_eval(result.point, 100000);
    if (!check.halted || check.value != x + 1) {
      return fail(detail, "witness does not re-evaluate to F(x) at x=" + std::to_string(x));
    }
  }
  return true;
}

// --- criterion 8: determinism and budget monotonicity ---------------------------

bool check_determinism(std::string& detail) {
  std::mt19937_64 rng(20260813);
  std::uniform_int_distribution<int> len_dist(0, 8);
  std::uniform_int_distribution<int> op_dist(0, 1);
  std::uniform_int_distribution<unsigned> reg_dist(0, 7);
  std::uniform_int_distribution<u64> input_dist(1, u64{1} << 30);

  std::vector<Program> programs;
  std::vector<PosInt> inputs;
  for (int i = 0; i < 1000; ++i) {
    const int len = len_dist(rng);
    Program p;
    for (int line = 0; line < len; ++line) {
      std::uniform_int_distribution<unsigned> target_dist(1, static_cast<unsigned>(len) + 1);
      if (op_dist(rng) == 0) {
        p.code.push_back({Op::inc, reg_dist(rng), 1});
      } else {
        p.code.push_back({Op::decjz, reg_dist(rng), target_dist(rng)});
      }
    }
    programs.push_back(std::move(p));
    inputs.emplace_back(static_cast<unsigned long>(input_dist(rng)));
  }

  constexpr u64 kBudget = 1000;
  const auto sweep = [&](unsigned workers) {
    const auto parts = run_chunked<std::vector<EvalOutcome>>(
        programs.size(), workers, [&](u64 lo, u64 hi) {
          std::vector<EvalOutcome> out;
          for (u64 i = lo; i <= hi; ++i) {
            out.push_back(eval(programs[i - 1], inputs[i - 1], kBudget));
          }
          return out;
        });
    std::vector<EvalOutcome> all;
    for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    return all;
  };

  const std::vector<EvalOutcome> sequential = sweep(1);
  const std::vector<EvalOutcome> parallel = sweep(4);
  if (sequential.size() != 1000 || parallel.size() != 1000) {
    return fail(detail, "sweep lost points");
  }
  for (std::size_t i = 0; i < sequential.size(); ++i) {
    if (!(sequential[i] == parallel[i])) {
      return fail(detail, "parallel sweep diverged at pair " + std::to_string(i));
    }
    const EvalOutcome again = eval(programs[i], inputs[i], kBudget);
    if (!(again == sequential[i])) {
      return fail(detail, "repeated run diverged at pair " + std::to_string(i));
    }
    const EvalOutcome doubled = eval(programs[i], inputs[i], 2 * kBudget);
    if (sequential[i].halted && !(doubled == sequential[i])) {
      return fail(detail, "halted outcome unstable under doubled budget at pair " +
                              std::to_string(i));
    }
  }

  // A sweep wide enough to span several chunks must also be worker-blind.
  const UniversalSpec u{UniversalKind::square_embed, {}};
  const DensityReport one = halting_density_lower(u, 20000, 10, 1);
  const DensityReport four = halting_density_lower(u, 20000, 10, 4);
  if (one.count != four.count) {
    return fail(detail, "worker count changed a density sweep");
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"encoding round trip and linear bound (e,x <= 1000)", check_encoding_laws},
      {"marker-function fiber counts are exact", check_phi_exactness},
      {"universality smoke over the fixture programs", check_universality_smoke},
      {"square-embedding witness sweep at N=10^5", check_square_embed_witness},
      {"50/50 reductions into the non-squares", check_phi_reduction},
      {"halting-set identity under the pullback (x <= 10^4)", check_halting_set_identity},
      {"compiler search finds bounded witnesses (x <= 50)", check_compiler_search},
      {"interpreter determinism and budget monotonicity", check_determinism},
  };

  bool all_ok = true;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " " << index << ": " << criterion.name;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << seconds << "s)";
    if (!ok && !detail.empty()) line << " -- " << detail;
    std::cout << line.str() << "\n";
    all_ok = all_ok && ok;
  }
  std::cout << (all_ok ? "ACCEPTANCE: all criteria hold" : "ACCEPTANCE: FAILED") << "\n";
  return all_ok ? 0 : 1;
}
