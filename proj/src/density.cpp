#include "haltlab/density.hpp"

#include <stdexcept>

#include "haltlab/parallel.hpp"

namespace haltlab {
namespace {

using u64 = std::uint64_t;

u64 sweep_size(const PosInt& n) {
  if (n < 1) throw std::invalid_argument("density window needs N >= 1");
  if (!n.fits_ulong_p()) throw std::invalid_argument("density window too large to sweep");
  return n.get_ui();
}

Rational ratio(const PosInt& count, const PosInt& n) {
  Rational q(count, n);
  q.canonicalize();
  return q;
}

PosInt count_over(const Predicate& pred, u64 n, unsigned workers) {
  const auto parts = run_chunked<u64>(n, workers, [&](u64 lo, u64 hi) {
    u64 hits = 0;
    for (u64 x = lo; x <= hi; ++x) {
      if (pred(PosInt(static_cast<unsigned long>(x)))) ++hits;
    }
    return hits;
  });
  PosInt total = 0;
  for (const u64 part : parts) total += static_cast<unsigned long>(part);
  return total;
}

}  // namespace

DensityReport density_exact(const Predicate& pred, const PosInt& n, unsigned workers) {
  const u64 size = sweep_size(n);
  PosInt count = count_over(pred, size, workers);
  return {n, count, ratio(count, n), DensityMode::exact, std::nullopt};
}

DensityReport halting_density_lower(const UniversalSpec& u, const PosInt& n,
                                    std::uint64_t budget, unsigned workers) {
  const u64 size = sweep_size(n);
  PosInt count = count_over(
      [&](const PosInt& x) { return u.eval(x, budget).halted; }, size, workers);
  return {n, count, ratio(count, n), DensityMode::halting_lower_bound, budget};
}

std::string_view density_mode_name(DensityMode mode) {
  return mode == DensityMode::exact ? "exact" : "halting_lower_bound";
}

std::string density_csv_header() { return "N,count,density_num,density_den,mode,budget"; }

std::string density_csv_row(const DensityReport& report) {
  std::string row = report.n.get_str() + "," + report.count.get_str() + "," +
                    report.density.get_num().get_str() + "," +
                    report.density.get_den().get_str() + "," +
                    std::string(density_mode_name(report.mode)) + ",";
  if (report.budget) row += std::to_string(*report.budget);
  return row;
}

}  // namespace haltlab
