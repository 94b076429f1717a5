#include <doctest.h>

#include <haltlab/encodings.hpp>

#include <map>
#include <string>
#include <utility>

using namespace haltlab;

namespace {

// Independent oracle for interleave: build the bit string
// e1 0 e2 0 ... en 1 x1 x2 ... xm by hand and parse it in base 2.
PosInt interleave_oracle(const PosInt& e, const PosInt& x) {
  const std::string e_bits = e.get_str(2);
  std::string s;
  for (std::size_t i = 0; i < e_bits.size(); ++i) {
    s += e_bits[i];
    s += (i + 1 == e_bits.size()) ? '1' : '0';
  }
  s += x.get_str(2);
  PosInt z;
  mpz_set_str(z.get_mpz_t(), s.c_str(), 2);
  return z;
}

// Independent oracle for phi: strip factors of two by division.
PosInt phi_oracle(PosInt n) {
  PosInt k = 1;
  while (mpz_even_p(n.get_mpz_t())) {
    n /= 2;
    ++k;
  }
  return k;
}

PosInt pow2(unsigned long exponent) {
  PosInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, exponent);
  return v;
}

}  // namespace

TEST_CASE("bit_length on small values") {
  CHECK(bit_length(PosInt(1)) == 1);
  CHECK(bit_length(PosInt(2)) == 2);
  CHECK(bit_length(PosInt(7)) == 3);
  CHECK(bit_length(PosInt(8)) == 4);
  CHECK(bit_length(pow2(100)) == 101);
}

TEST_CASE("phi: hand values and the closed form") {
  CHECK(phi(1) == 1);  // 2^0 divides 1, 2^1 does not
  CHECK(phi(12) == 3);
  CHECK(phi(2) == 2);
  CHECK(phi(8) == 4);

  SUBCASE("phi(2^(m-1) * (2k+1)) = m for sampled m, k") {
    for (unsigned long m = 1; m <= 10; ++m) {
      for (unsigned long k = 0; k <= 10; ++k) {
        const PosInt n = pow2(m - 1) * (2 * k + 1);
        CHECK(phi(n) == PosInt(m));
      }
    }
  }

  SUBCASE("agrees with the division oracle up to 4096") {
    for (unsigned long n = 1; n <= 4096; ++n) {
      CHECK(phi(n) == phi_oracle(PosInt(n)));
    }
  }
}

TEST_CASE("phi_preimage_count: closed form vs. brute force") {
  CHECK(phi_preimage_count(1, 8) == 4);  // {1,3,5,7}
  CHECK(phi_preimage_count(30, 8) == 0);

  SUBCASE("power-of-two windows give exact 2^(20-n)") {
    const PosInt window = pow2(20);
    for (unsigned long n = 1; n <= 20; ++n) {
      CHECK(phi_preimage_count(PosInt(n), window) == pow2(20 - n));
    }
  }

  SUBCASE("matches a counting loop for n <= 8, N <= 2000") {
    // running_count[n] tracks #{x <= N : phi(x) = n} incrementally.
    std::map<unsigned long, unsigned long> running_count;
    for (unsigned long N = 1; N <= 2000; ++N) {
      ++running_count[phi_oracle(PosInt(N)).get_ui()];
      if (N % 97 == 0 || N <= 16) {
        for (unsigned long n = 1; n <= 8; ++n) {
          CHECK(phi_preimage_count(PosInt(n), PosInt(N)) == PosInt(running_count[n]));
        }
      }
    }
  }

  SUBCASE("fibers partition a power-of-two window") {
    // The top point 2^20 lies alone in fiber 21; everything below it lands
    // in the fibers n = 1..20.
    const PosInt window = pow2(20);
    PosInt total = 0;
    for (unsigned long n = 1; n <= 20; ++n) total += phi_preimage_count(PosInt(n), window);
    CHECK(total == window - 1);
    CHECK(phi_preimage_count(PosInt(21), window) == 1);
    CHECK(phi_preimage_count(PosInt(22), window) == 0);
  }

  SUBCASE("phi is surjective with fat fibers") {
    // At least 100 preimages of m below 2^(m+7); the closed form gives 128.
    for (unsigned long m = 1; m <= 16; ++m) {
      CHECK(phi_preimage_count(PosInt(m), pow2(m + 7)) >= 100);
    }
  }
}

TEST_CASE("interleave: frozen hand encodings") {
  CHECK(interleave(1, 1) == 7);    // 1 1 | 1
  CHECK(interleave(2, 1) == 19);   // 1 0 0 1 | 1
  CHECK(interleave(1, 2) == 14);   // 1 1 | 1 0
  CHECK(interleave(3, 1) == 23);   // 1 0 1 1 | 1
}

TEST_CASE("interleave matches the bit-string oracle") {
  for (unsigned long e = 1; e <= 128; ++e) {
    for (unsigned long x = 1; x <= 128; ++x) {
      CHECK(interleave(e, x) == interleave_oracle(e, x));
    }
  }
  // Arbitrary-precision path: operands past 64 bits.
  const PosInt big_e = pow2(70) + 12345;
  const PosInt big_x = pow2(90) + 67890;
  CHECK(interleave(big_e, big_x) == interleave_oracle(big_e, big_x));
  CHECK(interleave(3, big_x) == interleave_oracle(3, big_x));
  CHECK(interleave(big_e, 1) == interleave_oracle(big_e, 1));
}

TEST_CASE("deinterleave inverts interleave and rejects non-image points") {
  SUBCASE("round trip") {
    for (unsigned long e = 1; e <= 200; ++e) {
      for (unsigned long x = 1; x <= 200; ++x) {
        const auto back = deinterleave(interleave(e, x));
        REQUIRE(back.has_value());
        CHECK(back->program_index == e);
        CHECK(back->argument == x);
      }
    }
    const PosInt big_e = pow2(80) + 7, big_x = pow2(65) + 3;
    const auto back = deinterleave(interleave(big_e, big_x));
    REQUIRE(back.has_value());
    CHECK(back->program_index == big_e);
    CHECK(back->argument == big_x);
  }

  SUBCASE("everything below the image minimum is rejected") {
    for (unsigned long z = 1; z <= 6; ++z) {
      CHECK_FALSE(deinterleave(z).has_value());
    }
    CHECK(deinterleave(7).has_value());  // the minimum image element
  }

  SUBCASE("partial-inverse soundness on a raw range") {
    // Whenever deinterleave answers, interleave must take it back to z.
    std::size_t image_points = 0;
    for (unsigned long z = 1; z <= 100000; ++z) {
      if (const auto p = deinterleave(z)) {
        ++image_points;
        CHECK(interleave(p->program_index, p->argument) == z);
      }
    }
    CHECK(image_points > 0);
  }
}

TEST_CASE("interleave is injective and linearly bounded") {
  std::map<PosInt, std::pair<unsigned long, unsigned long>> seen;
  for (unsigned long e = 1; e <= 200; ++e) {
    for (unsigned long x = 1; x <= 200; ++x) {
      const PosInt z = interleave(e, x);
      const auto [it, fresh] = seen.emplace(z, std::make_pair(e, x));
      if (!fresh) {
        CAPTURE(e);
        CAPTURE(x);
        CAPTURE(it->second.first);
        CAPTURE(it->second.second);
        FAIL("interleave collision");
      }
      // z <= 2^(2*bitlen(e)+1) * x, the engine behind the linear index bound.
      CHECK(z <= pow2(2 * static_cast<unsigned long>(bit_length(PosInt(e))) + 1) * x);
    }
  }
}

TEST_CASE("cantor pairing: first anti-diagonals and round trips") {
  CHECK(cantor_pair(1, 1) == 1);
  CHECK(cantor_pair(1, 2) == 2);
  CHECK(cantor_pair(2, 1) == 3);
  CHECK(cantor_pair(1, 3) == 4);
  CHECK(cantor_pair(2, 2) == 5);
  CHECK(cantor_pair(3, 1) == 6);

  SUBCASE("unpair(pair(i,j)) = (i,j) for i,j <= 1000") {
    for (unsigned long i = 1; i <= 1000; ++i) {
      for (unsigned long j = 1; j <= 1000; ++j) {
        const auto [a, b] = cantor_unpair(cantor_pair(i, j));
        CHECK(a == i);
        CHECK(b == j);
      }
    }
  }

  SUBCASE("pair(unpair(z)) = z on a raw range") {
    for (unsigned long z = 1; z <= 20000; ++z) {
      const auto [i, j] = cantor_unpair(z);
      CHECK(cantor_pair(i, j) == z);
      CHECK(i >= 1);
      CHECK(j >= 1);
    }
  }

  SUBCASE("arbitrary-precision operands round trip") {
    const PosInt i = pow2(100) + 17, j = pow2(99) + 4;
    const auto [a, b] = cantor_unpair(cantor_pair(i, j));
    CHECK(a == i);
    CHECK(b == j);
    const PosInt big_z = pow2(150) + 12345;
    const auto [p, q] = cantor_unpair(big_z);
    CHECK(cantor_pair(p, q) == big_z);
  }
}

TEST_CASE("perfect_square_root: exact detection, no floating point drift") {
  CHECK(perfect_square_root(9) == PosInt(3));
  CHECK_FALSE(perfect_square_root(10).has_value());
  CHECK(perfect_square_root(1) == PosInt(1));
  CHECK_FALSE(perfect_square_root(2).has_value());

  SUBCASE("x^2 -> x round trip") {
    for (unsigned long x = 1; x <= 100000; ++x) {
      CHECK(perfect_square_root(PosInt(x) * x) == PosInt(x));
    }
  }

  SUBCASE("near the 2^62 double-precision cliff") {
    const PosInt r = (PosInt(1) << 31) - 1;
    const PosInt square = r * r;
    CHECK(perfect_square_root(square) == r);
    CHECK_FALSE(perfect_square_root(square - 1).has_value());
    CHECK_FALSE(perfect_square_root(square + 1).has_value());
  }

  SUBCASE("arbitrary precision") {
    PosInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, 30);
    CHECK(perfect_square_root(r * r) == r);
    CHECK_FALSE(perfect_square_root(r * r + 1).has_value());
  }
}
