// Number-theoretic encodings shared by every construction in this project:
// the two-adic level map phi, bit interleaving of (program index, argument)
// pairs with its partial inverse, the Cantor anti-diagonal pairing bijection,
// and exact perfect-square detection. Everything here is total, deterministic
// and exact; values are arbitrary-precision integers (GMP) so nested
// encodings never silently overflow.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <gmpxx.h>

namespace haltlab {

// Positive integer, >= 1 everywhere in this codebase unless stated otherwise.
using PosInt = mpz_class;

// Exact rational, used for densities and tolerances.
using Rational = mpq_class;

// Number of bits in the binary expansion of n (n >= 1). bit_length(1) == 1.
std::size_t bit_length(const PosInt& n);

// The pair recovered from an interleaved code: a program index and the
// argument it is applied to.
struct InterleavePair {
  PosInt program_index;
  PosInt argument;

  friend bool operator==(const InterleavePair&, const InterleavePair&) = default;
};

// phi(n) = (exponent of the largest power of 2 dividing n) + 1, i.e. the
// index of the lowest set bit plus one. Total on n >= 1; phi(odd) == 1 and
// phi(2^(m-1) * odd) == m.
PosInt phi(const PosInt& n);

// #{ k in [1, limit] : phi(k) == n }  ==  floor(limit / 2^(n-1)) - floor(limit / 2^n).
PosInt phi_preimage_count(const PosInt& n, const PosInt& limit);

// Interleaves the binary expansions of e and x into a single integer: each
// bit of e is followed by a 0, except the last which is followed by a 1, and
// the bits of x come after that marker. Injective, and bounded by
// 2^(2*bit_length(e) + 1) * x.
PosInt interleave(const PosInt& e, const PosInt& x);

// Inverse of interleave on its image; nullopt when z is not an interleaved
// code (the smallest code is interleave(1,1) == 7). Not-in-image is a normal
// outcome, not an error.
std::optional<InterleavePair> deinterleave(const PosInt& z);

// Cantor anti-diagonal bijection Z+ x Z+ -> Z+:
//   cantor_pair(i, j) = (i+j-2)(i+j-1)/2 + i,
// so (1,1) -> 1, (1,2) -> 2, (2,1) -> 3, ...
PosInt cantor_pair(const PosInt& i, const PosInt& j);

// Exact inverse of cantor_pair; total on z >= 1.
std::pair<PosInt, PosInt> cantor_unpair(const PosInt& z);

// Returns y with y*y == x when x is a perfect square, nullopt otherwise.
// Integer arithmetic only; exact for all magnitudes.
std::optional<PosInt> perfect_square_root(const PosInt& x);

}  // namespace haltlab
