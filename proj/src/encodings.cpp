#include "haltlab/encodings.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace haltlab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

bool fits_u64(const PosInt& v) { return mpz_fits_ulong_p(v.get_mpz_t()) != 0; }

u64 to_u64(const PosInt& v) { return mpz_get_ui(v.get_mpz_t()); }

// Exact floor(sqrt(v)) for 64-bit values. The double seed can be off by one
// near 2^62, so the result is corrected with exact integer comparisons.
u64 isqrt_u64(u64 v) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && static_cast<u128>(r) * r > v) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

u64 interleave_u64(u64 e, u64 x) {
  const unsigned se = static_cast<unsigned>(std::bit_width(e));
  const unsigned sx = static_cast<unsigned>(std::bit_width(x));
  u64 z = x | (u64{1} << sx);  // marker bit that terminates e's bits
  for (unsigned b = 0; b < se; ++b) {
    if ((e >> b) & 1) z |= u64{1} << (sx + 1 + 2 * b);
  }
  return z;
}

std::optional<std::pair<u64, u64>> deinterleave_u64(u64 z) {
  const unsigned total = static_cast<unsigned>(std::bit_width(z));
  u64 e = 0;
  for (unsigned i = 0;; ++i) {
    if (2 * i + 2 > total) return std::nullopt;  // ran out of separator bits
    const unsigned data_pos = total - 1 - 2 * i;
    const unsigned sep_pos = total - 2 - 2 * i;
    e = (e << 1) | ((z >> data_pos) & 1);
    if ((z >> sep_pos) & 1) {
      const unsigned sx = sep_pos;  // bits below the marker belong to x
      if (sx == 0) return std::nullopt;
      const u64 x = z & ((u64{1} << sx) - 1);
      if (((x >> (sx - 1)) & 1) == 0) return std::nullopt;  // x must use all sx bits
      return std::make_pair(e, x);
    }
  }
}

}  // namespace

std::size_t bit_length(const PosInt& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

PosInt phi(const PosInt& n) {
  const mp_bitcnt_t low = mpz_scan1(n.get_mpz_t(), 0);
  return PosInt(static_cast<unsigned long>(low) + 1);
}

PosInt phi_preimage_count(const PosInt& n, const PosInt& limit) {
  if (!fits_u64(n) || to_u64(n) > bit_length(limit)) {
    return 0;  // 2^(n-1) already exceeds limit
  }
  const auto shift = static_cast<mp_bitcnt_t>(to_u64(n));
  PosInt lo, hi;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), limit.get_mpz_t(), shift - 1);
  mpz_tdiv_q_2exp(lo.get_mpz_t(), limit.get_mpz_t(), shift);
  return hi - lo;
}

PosInt interleave(const PosInt& e, const PosInt& x) {
  const std::size_t se = bit_length(e);
  const std::size_t sx = bit_length(x);
  if (2 * se + sx <= 63) {
    return PosInt(static_cast<unsigned long>(interleave_u64(to_u64(e), to_u64(x))));
  }
  PosInt z = x;
  mpz_setbit(z.get_mpz_t(), sx);
  for (mp_bitcnt_t b = mpz_scan1(e.get_mpz_t(), 0); b < se;
       b = mpz_scan1(e.get_mpz_t(), b + 1)) {
    mpz_setbit(z.get_mpz_t(), sx + 1 + 2 * b);
  }
  return z;
}

std::optional<InterleavePair> deinterleave(const PosInt& z) {
  const std::size_t total = bit_length(z);
  if (total <= 64) {
    auto small = deinterleave_u64(to_u64(z));
    if (!small) return std::nullopt;
    return InterleavePair{PosInt(static_cast<unsigned long>(small->first)),
                          PosInt(static_cast<unsigned long>(small->second))};
  }
  PosInt e = 0;
  for (std::size_t i = 0;; ++i) {
    if (2 * i + 2 > total) return std::nullopt;
    const auto data_pos = static_cast<mp_bitcnt_t>(total - 1 - 2 * i);
    const auto sep_pos = static_cast<mp_bitcnt_t>(total - 2 - 2 * i);
    e <<= 1;
    if (mpz_tstbit(z.get_mpz_t(), data_pos)) mpz_setbit(e.get_mpz_t(), 0);
    if (mpz_tstbit(z.get_mpz_t(), sep_pos)) {
      const mp_bitcnt_t sx = sep_pos;
      if (sx == 0 || !mpz_tstbit(z.get_mpz_t(), sx - 1)) return std::nullopt;
      PosInt x;
      mpz_tdiv_r_2exp(x.get_mpz_t(), z.get_mpz_t(), sx);
      return InterleavePair{std::move(e), std::move(x)};
    }
  }
}

PosInt cantor_pair(const PosInt& i, const PosInt& j) {
  if (fits_u64(i) && fits_u64(j)) {
    const u64 a = to_u64(i), b = to_u64(j);
    if (a + b >= a && a + b < (u64{1} << 31)) {  // diagonal product fits u64
      const u64 s = a + b;
      return PosInt(static_cast<unsigned long>((s - 2) * (s - 1) / 2 + a));
    }
  }
  const PosInt s = i + j;
  return (s - 2) * (s - 1) / 2 + i;
}

std::pair<PosInt, PosInt> cantor_unpair(const PosInt& z) {
  if (fits_u64(z) && to_u64(z) < (u64{1} << 60)) {
    const u64 v = to_u64(z);
    const u64 w = (isqrt_u64(8 * v - 7) - 1) / 2;  // largest w with w(w+1)/2 < v
    const u64 base = w * (w + 1) / 2;
    const u64 a = v - base;
    const u64 b = w + 2 - a;
    return {PosInt(static_cast<unsigned long>(a)), PosInt(static_cast<unsigned long>(b))};
  }
  PosInt root;
  {
    const PosInt arg = 8 * z - 7;
    mpz_sqrt(root.get_mpz_t(), arg.get_mpz_t());
  }
  PosInt w = (root - 1) / 2;
  PosInt base = w * (w + 1) / 2;
  while (base >= z) {
    --w;
    base = w * (w + 1) / 2;
  }
  while (base + w + 1 < z) {
    ++w;
    base = w * (w + 1) / 2;
  }
  PosInt a = z - base;
  PosInt b = w + 2 - a;
  return {std::move(a), std::move(b)};
}

std::optional<PosInt> perfect_square_root(const PosInt& x) {
  if (fits_u64(x)) {
    const u64 v = to_u64(x);
    const u64 r = isqrt_u64(v);
    if (r * r == v) return PosInt(static_cast<unsigned long>(r));
    return std::nullopt;
  }
  if (!mpz_perfect_square_p(x.get_mpz_t())) return std::nullopt;
  PosInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

}  // namespace haltlab
