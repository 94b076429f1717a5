#include "haltlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "haltlab/density.hpp"
#include "haltlab/machine.hpp"
#include "haltlab/predicates.hpp"
#include "haltlab/universal.hpp"
#include "haltlab/witness.hpp"

namespace haltlab {
namespace {

using u64 = std::uint64_t;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

json json_int(const PosInt& v) {
  if (v.fits_ulong_p()) return json(static_cast<u64>(v.get_ui()));
  return json(v.get_str());
}

json json_rational(const Rational& q) {
  return json{{"num", json_int(PosInt(q.get_num()))}, {"den", json_int(PosInt(q.get_den()))}};
}

PosInt parse_posint(const std::string& text) {
  PosInt v;
  if (mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0 || v < 1) {
    throw CLI::ValidationError("expected a positive integer, got `" + text + "`");
  }
  return v;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) {
    throw CLI::ValidationError("expected a rational like 1/2 or 1, got `" + text + "`");
  }
  q.canonicalize();
  if (q < 0) throw CLI::ValidationError("expected a nonnegative rational, got `" + text + "`");
  return q;
}

std::string read_file_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Program load_program(const std::string& path) {
  ParseResult parsed = parse_program(read_file_or_throw(path));
  if (!parsed.ok()) {
    const ParseError& first = parsed.errors.front();
    throw CLI::ValidationError("`" + path + "` line " + std::to_string(first.line) +
                               ": " + first.message);
  }
  return std::move(parsed.program);
}

// Accepts base_v | square_embed | phi_pullback | mixed:<program-file>.
UniversalSpec parse_universal(const std::string& name) {
  if (name.rfind("mixed:", 0) == 0) {
    return {UniversalKind::mixed, load_program(name.substr(6))};
  }
  const auto kind = kind_from_name(name);
  if (!kind) {
    throw CLI::ValidationError("unknown universal `" + name +
                               "`; known: base_v, square_embed, phi_pullback, mixed:<file>");
  }
  if (*kind == UniversalKind::mixed) {
    throw CLI::ValidationError("mixed needs a program: use mixed:<file>");
  }
  return {*kind, std::nullopt};
}

Predicate parse_predicate(const std::string& spec, u64 pred_budget) {
  std::string error;
  auto pred = make_predicate(spec, pred_budget, error);
  if (!pred) throw CLI::ValidationError(error);
  return std::move(*pred);
}

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot write `" + output_path + "`");
  out << content;
  if (content.empty() || content.back() != '\n') out << '\n';
}

std::string outcome_line(const EvalOutcome& out) {
  if (out.halted) return "halted " + out.value.get_str() + " steps=" + std::to_string(out.steps_used);
  return "out_of_budget steps=" + std::to_string(out.steps_used);
}

std::string density_report_text(const DensityReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    return density_csv_header() + "\n" + density_csv_row(report) + "\n";
  }
  json doc{
      {"N", json_int(report.n)},
      {"count", json_int(report.count)},
      {"density", json_rational(report.density)},
      {"mode", std::string(density_mode_name(report.mode))},
  };
  // Convenience float only; the exact value is the num/den pair.
  doc["density_approx"] = report.density.get_d();
  if (report.budget) doc["budget"] = *report.budget;
  return doc.dump(2) + "\n";
}

// --- experiment phi-reduction ------------------------------------------------

struct PhiReductionRow {
  PosInt n;
  std::optional<PosInt> theta_n;
  bool match = false;
  std::string note;  // empty when the row checks out
};

struct PhiReductionOutcome {
  std::vector<PhiReductionRow> rows;
  std::size_t matched = 0;
};

// Samples budget-halting V-points n <= N (ascending, or shuffled under a
// seed), reduces each along theta into the non-squares, and checks the
// round trip: phi(theta(n)) = n, theta(n) not a square, and the pulled-back
// evaluation reproduces v_eval(n) outcome-for-outcome.
PhiReductionOutcome run_phi_reduction(const ExperimentConfig& config, u64 samples) {
  if (!config.n.fits_ulong_p()) throw CLI::ValidationError("--n too large to sweep");
  const u64 n_max = config.n.get_ui();

  std::vector<u64> order(n_max);
  std::iota(order.begin(), order.end(), u64{1});
  if (config.seed) {
    std::mt19937_64 rng(*config.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  const auto nonsquare = [](const PosInt& v) { return !perfect_square_root(v).has_value(); };

  PhiReductionOutcome out;
  for (const u64 raw : order) {
    if (out.rows.size() >= samples) break;
    const PosInt n(static_cast<unsigned long>(raw));
    const EvalOutcome base = v_eval(n, config.budget);
    if (!base.halted) continue;  // not a budget-halting sample

    PhiReductionRow row{n, std::nullopt, false, ""};
    PosInt cap;  // 2^(n+2): covers the first fiber points of phi^{-1}(n)
    mpz_ui_pow_ui(cap.get_mpz_t(), 2, static_cast<unsigned long>(raw) + 2);
    const auto t = theta(nonsquare, n, cap);
    if (!t) {
      row.note = "theta_cap_exceeded";
    } else {
      row.theta_n = *t;
      const EvalOutcome pulled = u_phi_eval(*t, config.budget);
      if (phi(*t) != n) {
        row.note = "phi_roundtrip_failed";
      } else if (!nonsquare(*t)) {
        row.note = "theta_point_is_square";
      } else if (!(pulled == base)) {
        row.note = "outcome_mismatch";
      } else {
        row.match = true;
        ++out.matched;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string phi_reduction_text(const PhiReductionOutcome& out, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string text = "n,theta_n,match,note\n";
    for (const PhiReductionRow& row : out.rows) {
      text += row.n.get_str() + ",";
      if (row.theta_n) text += row.theta_n->get_str();
      text += ",";
      text += row.match ? "1" : "0";
      text += "," + row.note + "\n";
    }
    text += "# matched=" + std::to_string(out.matched) +
            " samples=" + std::to_string(out.rows.size()) + "\n";
    return text;
  }
  json rows = json::array();
  for (const PhiReductionRow& row : out.rows) {
    json r{{"n", json_int(row.n)}, {"match", row.match}};
    r["theta_n"] = row.theta_n ? json_int(*row.theta_n) : json(nullptr);
    if (!row.note.empty()) r["note"] = row.note;
    rows.push_back(std::move(r));
  }
  const json doc{{"samples", rows},
                 {"matched", out.matched},
                 {"total", out.rows.size()}};
  return doc.dump(2) + "\n";
}

// --- experiment square-embed --------------------------------------------------

std::string square_embed_text(const DensityReport& exact, const DensityReport& lower,
                              const WitnessReport& witness, bool bound_ok) {
  json doc{
      {"nonsquare_density", json_rational(exact.density)},
      {"halting_lower_bound", json_rational(lower.density)},
      {"lower_bound_at_least_nonsquares", bound_ok},
      {"witness", json::parse(witness_report_json(witness))},
  };
  return doc.dump(2) + "\n";
}

int dispatch(CLI::App& app, int argc, const char* const* argv);

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"counter-machine computability laboratory"};
  app.require_subcommand(1);
  try {
    return dispatch(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);  // prints help
      return kExitOk;
    }
    app.exit(e);  // prints the error and usage hint
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

namespace {

int dispatch(CLI::App& app, int argc, const char* const* argv) {
  // Shared option storage; each subcommand binds the flags it uses.
  std::string program_path, index_text, input_text, set_spec, r_spec, d_spec;
  std::string universal_name = "base_v", out_path, format_name = "csv";
  std::string z_text, g_text, k_text, x_text, rho_text, tol_text = "0";
  std::string claimed_text;
  u64 budget = 100000, pred_budget = 100000, round_cap = 10000;
  u64 count = 10, samples = 50, x_max = 50, seed_value = 0;
  std::string n_text = "1000";
  unsigned workers = 0;

  auto add_n = [&](CLI::App* cmd, const char* help = "window bound N (sweeps [1,N])") {
    cmd->add_option("--n", n_text, help);
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the report here instead of stdout");
    cmd->add_option("--format", format_name, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto fmt = [&] { return format_name == "json" ? ReportFormat::json : ReportFormat::csv; };

  CLI::App* c_eval = app.add_subcommand("eval", "run a program on one input");
  c_eval->add_option("--program", program_path, "program file (.cm)")->required();
  c_eval->add_option("--input", input_text, "input x >= 1")->required();
  c_eval->add_option("--budget", budget, "step budget");

  CLI::App* c_encode = app.add_subcommand("encode", "print a program's index");
  c_encode->add_option("--program", program_path, "program file (.cm)")->required();

  CLI::App* c_decode = app.add_subcommand("decode", "print the program at an index");
  c_decode->add_option("--index", index_text, "index e >= 1")->required();

  CLI::App* c_density = app.add_subcommand("density", "exact density of a decidable set");
  c_density->add_option("--set", set_spec, predicate_registry_help())->required();
  add_n(c_density);
  c_density->add_option("--pred-budget", pred_budget, "totality budget for program predicates");
  c_density->add_option("--workers", workers, "worker threads (0 = auto)");
  add_out(c_density);

  CLI::App* c_hdensity = app.add_subcommand("halting-density",
                                            "budgeted lower bound on a halting set's density");
  c_hdensity->add_option("--universal", universal_name, "base_v|square_embed|phi_pullback|mixed:<file>");
  add_n(c_hdensity);
  c_hdensity->add_option("--budget", budget, "step budget per point");
  c_hdensity->add_option("--workers", workers, "worker threads (0 = auto)");
  add_out(c_hdensity);

  CLI::App* c_witness = app.add_subcommand("witness", "sweep an almost-decidability witness");
  c_witness->add_option("--universal", universal_name, "universal function under test");
  c_witness->add_option("--r", r_spec, "decidable set R")->required();
  c_witness->add_option("--d", d_spec, "claimed decider of R ∩ Halt(U)")->required();
  add_n(c_witness);
  c_witness->add_option("--budget", budget, "step budget per point");
  c_witness->add_option("--claimed-density", claimed_text, "claimed d(R), e.g. 1 or 9/10");
  c_witness->add_option("--pred-budget", pred_budget, "totality budget for program predicates");
  c_witness->add_option("--workers", workers, "worker threads (0 = auto)");
  add_out(c_witness);

  CLI::App* c_rcheck = app.add_subcommand("r-check", "witness sweep plus density-vs-r test");
  c_rcheck->add_option("--universal", universal_name, "universal function under test");
  c_rcheck->add_option("--r", r_spec, "decidable set R")->required();
  c_rcheck->add_option("--d", d_spec, "claimed decider of R ∩ Halt(U)")->required();
  c_rcheck->add_option("--rho", rho_text, "target density r in (0,1]")->required();
  c_rcheck->add_option("--tol", tol_text, "allowed |p_N(R) - r|");
  add_n(c_rcheck);
  c_rcheck->add_option("--budget", budget, "step budget per point");
  c_rcheck->add_option("--pred-budget", pred_budget, "totality budget for program predicates");
  c_rcheck->add_option("--workers", workers, "worker threads (0 = auto)");
  add_out(c_rcheck);

  CLI::App* c_compile = app.add_subcommand("compile-cu", "linear-bound compiler search");
  c_compile->add_option("--z", z_text, "packed constants: cantor_pair(k, g)");
  c_compile->add_option("--g", g_text, "program index g (k defaults to 2^(2*bitlen(g)+1))");
  c_compile->add_option("--k", k_text, "linear bound constant k (with --g)");
  c_compile->add_option("--x", x_text, "argument x >= 1")->required();
  c_compile->add_option("--round-cap", round_cap, "dovetail round cap");

  CLI::App* c_probe = app.add_subcommand("probe-programmable",
                                         "search y <= k*x with U(y) = F(x) per x");
  c_probe->add_option("--universal", universal_name, "universal function U");
  c_probe->add_option("--f-index", g_text, "index of F")->required();
  c_probe->add_option("--k", k_text, "bound constant (default 2^(2*bitlen(g)+1))");
  c_probe->add_option("--x-max", x_max, "probe x = 1..x_max");
  c_probe->add_option("--budget", budget, "step budget");

  CLI::App* c_enum = app.add_subcommand("enumerate-domain", "dovetailed halting-domain prefix");
  c_enum->add_option("--universal", universal_name, "universal function");
  c_enum->add_option("--count", count, "emissions requested");
  c_enum->add_option("--round-cap", round_cap, "dovetail round cap");
  c_enum->add_option("--out", out_path, "write points here instead of stdout");

  CLI::App* c_exp = app.add_subcommand("experiment", "end-to-end constructions");
  c_exp->require_subcommand(1);
  CLI::App* c_phired = c_exp->add_subcommand("phi-reduction",
                                             "reduce halting V-points into the non-squares and check the round trip");
  add_n(c_phired, "sample halting points among [1,N]");
  c_phired->add_option("--budget", budget, "step budget");
  c_phired->add_option("--samples", samples, "budget-halting samples to draw");
  CLI::Option* seed_opt = c_phired->add_option("--seed", seed_value,
                                               "shuffle sampling order with this seed");
  add_out(c_phired);

  CLI::App* c_sqemb = c_exp->add_subcommand("square-embed",
                                            "density-one halting set with a decidable core");
  add_n(c_sqemb);
  c_sqemb->add_option("--budget", budget, "step budget");
  c_sqemb->add_option("--workers", workers, "worker threads (0 = auto)");
  c_sqemb->add_option("--out", out_path, "write the report here instead of stdout");

  app.parse(argc, argv);

  if (c_eval->parsed()) {
    const Program p = load_program(program_path);
    const EvalOutcome out = eval(p, parse_posint(input_text), budget);
    std::cout << outcome_line(out) << "\n";
    return kExitOk;
  }

  if (c_encode->parsed()) {
    std::cout << encode_program(load_program(program_path)).get_str() << "\n";
    return kExitOk;
  }

  if (c_decode->parsed()) {
    std::cout << format_program(decode_index(parse_posint(index_text)));
    return kExitOk;
  }

  if (c_density->parsed()) {
    const Predicate pred = parse_predicate(set_spec, pred_budget);
    const DensityReport report = density_exact(pred, parse_posint(n_text), workers);
    emit(out_path, density_report_text(report, fmt()));
    return kExitOk;
  }

  if (c_hdensity->parsed()) {
    const UniversalSpec u = parse_universal(universal_name);
    const DensityReport report =
        halting_density_lower(u, parse_posint(n_text), budget, workers);
    emit(out_path, density_report_text(report, fmt()));
    return kExitOk;
  }

  if (c_witness->parsed() || c_rcheck->parsed()) {
    const UniversalSpec u = parse_universal(universal_name);
    Witness w{parse_predicate(r_spec, pred_budget), parse_predicate(d_spec, pred_budget),
              Rational(1)};
    if (!claimed_text.empty()) w.claimed_density = parse_rational(claimed_text);
    if (c_witness->parsed()) {
      const WitnessReport report = validate_witness(u, w, parse_posint(n_text), budget, workers);
      emit(out_path, witness_report_json(report) + "\n");
      return report.refuted() ? kExitRefuted : kExitOk;
    }
    const Rational rho = parse_rational(rho_text);
    if (rho == 0 || rho > 1) throw CLI::ValidationError("--rho must lie in (0,1]");
    w.claimed_density = rho;
    const RCheckReport report = r_decidability_check(u, w, rho, parse_posint(n_text),
                                                     budget, parse_rational(tol_text), workers);
    emit(out_path, r_check_report_json(report) + "\n");
    return report.passed() ? kExitOk : kExitRefuted;
  }

  if (c_compile->parsed()) {
    PosInt z;
    if (!z_text.empty()) {
      z = parse_posint(z_text);
    } else if (!g_text.empty()) {
      const PosInt g = parse_posint(g_text);
      const PosInt k = k_text.empty() ? compiler_constants_for(g).k : parse_posint(k_text);
      z = cantor_pair(k, g);
    } else {
      throw CLI::ValidationError("compile-cu needs --z or --g");
    }
    const CompileResult result = compile_cu(z, parse_posint(x_text), round_cap);
    switch (result.status) {
      case CompileResult::Status::found:
        std::cout << "status=found point=" << result.point.get_str() << "\n";
        return kExitOk;
      case CompileResult::Status::target_diverged:
        std::cout << "status=target_diverged\n";
        return kExitRefuted;
      case CompileResult::Status::exhausted:
        std::cout << "status=exhausted\n";
        return kExitRefuted;
    }
    return kExitUsage;
  }

  if (c_probe->parsed()) {
    const UniversalSpec u = parse_universal(universal_name);
    const PosInt g = parse_posint(g_text);
    const PosInt k = k_text.empty() ? compiler_constants_for(g).k : parse_posint(k_text);
    std::vector<PosInt> xs;
    for (u64 x = 1; x <= x_max; ++x) xs.emplace_back(static_cast<unsigned long>(x));
    const ProbeReport report = probe_programmable(u, g, k, xs, budget);
    for (const ProbePoint& p : report.points) {
      std::cout << "x=" << p.x.get_str();
      switch (p.status) {
        case ProbeStatus::witness_found:
          std::cout << " status=found witness=" << p.witness.get_str()
                    << " f=" << p.f_value.get_str();
          break;
        case ProbeStatus::no_witness_within_budget:
          std::cout << " status=no_witness_within_budget f=" << p.f_value.get_str();
          break;
        case ProbeStatus::f_diverged:
          std::cout << " status=f_diverged";
          break;
      }
      std::cout << "\n";
    }
    std::cout << "# found=" << report.found_count() << "/" << report.points.size() << "\n";
    return kExitOk;
  }

  if (c_enum->parsed()) {
    const UniversalSpec u = parse_universal(universal_name);
    const DomainEnumeration e = enumerate_domain(u, count, round_cap);
    std::string text;
    for (const PosInt& p : e.points) text += p.get_str() + "\n";
    emit(out_path, text);
    if (e.exhausted_rounds) {
      std::cerr << "note: round cap " << round_cap << " exhausted after "
                << e.points.size() << " emissions\n";
    }
    return kExitOk;
  }

  if (c_phired->parsed()) {
    std::optional<u64> seed;
    if (seed_opt->count() > 0) seed = seed_value;
    ExperimentConfig config{universal_name, parse_posint(n_text), budget, out_path, fmt(), seed};
    const PhiReductionOutcome out = run_phi_reduction(config, samples);
    emit(out_path, phi_reduction_text(out, fmt()));
    const bool ok = !out.rows.empty() && out.matched == out.rows.size();
    return ok ? kExitOk : kExitRefuted;
  }

  if (c_sqemb->parsed()) {
    const PosInt n = parse_posint(n_text);
    const UniversalSpec u{UniversalKind::square_embed, std::nullopt};
    std::string error;
    const Predicate nonsquares = *make_predicate("nonsquares", pred_budget, error);
    const DensityReport exact = density_exact(nonsquares, n, workers);
    const DensityReport lower = halting_density_lower(u, n, budget, workers);
    const Witness w{nonsquares, [](const PosInt&) { return true; }, Rational(1)};
    const WitnessReport report = validate_witness(u, w, n, budget, workers);
    const bool bound_ok = lower.density >= exact.density;
    emit(out_path, square_embed_text(exact, lower, report, bound_ok));
    return (!report.refuted() && bound_ok) ? kExitOk : kExitRefuted;
  }

  return kExitUsage;  // unreachable: require_subcommand enforces a choice
}

}  // namespace
}  // namespace haltlab
