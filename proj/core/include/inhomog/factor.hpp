#pragma once

#include <map>

#include "inhomog/rational.hpp"

namespace inhomog {

using FactorMap = std::map<BigInt, unsigned long>;  // prime -> exponent

// Trial division up to a small bound, then Pollard rho with Miller-Rabin
// certification of the prime pieces. Deterministic.
FactorMap factorize(const BigInt& n);

BigInt value_of(const FactorMap& f);
BigInt radical(const FactorMap& f);
BigInt totient(const FactorMap& f);
// phi(n)/n = prod (1 - 1/p) over distinct primes
Rational totient_ratio(const FactorMap& f);

// a * b as multisets of primes
FactorMap merge_factors(const FactorMap& a, const FactorMap& b);
// a / b; throws std::invalid_argument when b does not divide a
FactorMap subtract_factors(const FactorMap& a, const FactorMap& b);

}  // namespace inhomog
