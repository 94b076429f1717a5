#include "haltlab/witness.hpp"

#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "haltlab/parallel.hpp"

namespace haltlab {
namespace {

using u64 = std::uint64_t;
using nlohmann::json;

struct SweepPart {
  std::vector<Contradiction> contradictions;
  u64 confirmations = 0;
  u64 inconclusive = 0;
};

json json_int(const PosInt& v) {
  if (v.fits_ulong_p()) return json(static_cast<u64>(v.get_ui()));
  return json(v.get_str());  // decimal string once past 64 bits
}

json json_rational(const Rational& q) {
  return json{{"num", json_int(PosInt(q.get_num()))}, {"den", json_int(PosInt(q.get_den()))}};
}

}  // namespace

std::string WitnessReport::verdict() const {
  return refuted() ? "refuted" : "unrefuted_at_budget";
}

std::string contradiction_kind_name(ContradictionKind kind) {
  switch (kind) {
    case ContradictionKind::halts_but_rejected: return "halts_but_rejected";
  }
  return "?";
}

WitnessReport validate_witness(const UniversalSpec& u, const Witness& w,
                               const PosInt& n, std::uint64_t budget,
                               unsigned workers) {
  if (n < 1 || !n.fits_ulong_p()) throw std::invalid_argument("witness sweep needs N in [1, 2^64)");
  const u64 size = n.get_ui();

  const auto parts = run_chunked<SweepPart>(size, workers, [&](u64 lo, u64 hi) {
    SweepPart part;
    for (u64 raw = lo; raw <= hi; ++raw) {
      const PosInt x(static_cast<unsigned long>(raw));
      if (!w.r_pred(x)) continue;  // d decides only the R-part
      const bool halts = u.eval(x, budget).halted;
      const bool claimed = w.d_pred(x);
      if (halts && !claimed) {
        part.contradictions.push_back({x, ContradictionKind::halts_but_rejected});
      } else if (claimed && halts) {
        ++part.confirmations;
      } else if (claimed) {
        ++part.inconclusive;  // unresolved at this budget; never a refutation
      }
    }
    return part;
  });

  WitnessReport report{n, budget, {}, PosInt(0), PosInt(0),
                       density_exact(w.r_pred, n, workers)};
  for (const SweepPart& part : parts) {
    report.contradictions.insert(report.contradictions.end(),
                                 part.contradictions.begin(), part.contradictions.end());
    report.confirmations += static_cast<unsigned long>(part.confirmations);
    report.inconclusive += static_cast<unsigned long>(part.inconclusive);
  }

  // Soundness gate: every contradiction must reproduce on a fresh evaluation.
  for (const Contradiction& c : report.contradictions) {
    const bool halts = u.eval(c.x, budget).halted;
    const bool claimed = w.d_pred(c.x);
    if (!halts || claimed) {
      throw std::logic_error("contradiction at x=" + c.x.get_str() +
                             " failed its re-check; evaluation is not deterministic");
    }
  }
  return report;
}

RCheckReport r_decidability_check(const UniversalSpec& u, const Witness& w,
                                  const Rational& r, const PosInt& n,
                                  std::uint64_t budget, const Rational& tol,
                                  unsigned workers) {
  RCheckReport out{validate_witness(u, w, n, budget, workers), r, tol, Rational(0), false};
  Rational gap = out.witness.density_of_r.density - r;
  if (gap < 0) gap = -gap;
  out.density_gap = gap;
  out.density_ok = gap <= tol;
  return out;
}

std::string witness_report_json(const WitnessReport& report) {
  json contradictions = json::array();
  for (const Contradiction& c : report.contradictions) {
    contradictions.push_back({{"x", json_int(c.x)},
                              {"kind", contradiction_kind_name(c.kind)}});
  }
  const json doc{
      {"range", json_int(report.range_n)},
      {"budget", report.budget},
      {"contradictions", contradictions},
      {"confirmations", json_int(report.confirmations)},
      {"inconclusive", json_int(report.inconclusive)},
      {"density", json_rational(report.density_of_r.density)},
      {"verdict", report.verdict()},
  };
  return doc.dump(2);
}

std::string r_check_report_json(const RCheckReport& report) {
  const json doc{
      {"witness", json::parse(witness_report_json(report.witness))},
      {"r", json_rational(report.r)},
      {"tol", json_rational(report.tol)},
      {"density_gap", json_rational(report.density_gap)},
      {"density_ok", report.density_ok},
      {"passed", report.passed()},
  };
  return doc.dump(2);
}

}  // namespace haltlab
