#include "doctest.h"
#include "inhomog/factor.hpp"

using namespace inhomog;

TEST_CASE("small factorizations") {
  FactorMap f = factorize(840);
  REQUIRE(f.size() == 4);
  CHECK(f[BigInt(2)] == 3);
  CHECK(f[BigInt(3)] == 1);
  CHECK(f[BigInt(5)] == 1);
  CHECK(f[BigInt(7)] == 1);
  CHECK(value_of(f) == 840);
  CHECK(radical(f) == 210);
  CHECK(totient(f) == 192);
  CHECK(totient_ratio(f) == rat(8, 35));

  CHECK(factorize(1).empty());
  CHECK(value_of(factorize(1)) == 1);
}

TEST_CASE("value round trips") {
  for (long n : {97L, 1024L, 999983L, 123456789L}) {
    CHECK(value_of(factorize(n)) == n);
  }
}

TEST_CASE("large prime and semiprime") {
  // Mersenne prime 2^61 - 1 exercises the primality certificate
  BigInt m61 = (BigInt(1) << 61) - 1;
  FactorMap f = factorize(m61);
  REQUIRE(f.size() == 1);
  CHECK(f.begin()->first == m61);
  CHECK(f.begin()->second == 1);

  // product of two seven-digit primes exercises the rho split
  BigInt semi = BigInt(1000003) * BigInt(1000033);
  FactorMap g = factorize(semi);
  REQUIRE(g.size() == 2);
  CHECK(g[BigInt(1000003)] == 1);
  CHECK(g[BigInt(1000033)] == 1);
  CHECK(totient(g) == BigInt(1000002) * BigInt(1000032));
}

TEST_CASE("merge and subtract are inverse") {
  FactorMap a = factorize(12), b = factorize(18);
  FactorMap ab = merge_factors(a, b);
  CHECK(value_of(ab) == 216);
  CHECK(subtract_factors(ab, a) == b);
  CHECK(subtract_factors(ab, b) == a);
  CHECK_THROWS_AS(subtract_factors(factorize(12), factorize(5)), std::invalid_argument);
  CHECK_THROWS_AS(subtract_factors(factorize(8), factorize(16)), std::invalid_argument);
}
