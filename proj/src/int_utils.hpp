#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace wacert {

// Thrown on violated preconditions (bad arguments, elements of mismatched
// fields, non-integral inputs where integrality is required, ...).
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic primality for |n| < 3.317e24 (fixed Miller-Rabin base set,
// a proven bound); larger inputs fall back to mpz_probab_prime_p(40).
bool is_certified_prime(const mpz_class& n);

// Full factorization |n| = prod p^e (trial division + Pollard rho).
// Requires n != 0; the sign is discarded.
std::map<mpz_class, unsigned> factorize(const mpz_class& n);

// True iff n is squarefree (n != 0; sign ignored; 1 counts as squarefree).
bool is_squarefree(const mpz_class& n);

// Legendre symbol (a/p) for odd prime p: +1, -1, or 0 when p | a.
int legendre_symbol(const mpz_class& a, const mpz_class& p);

// v_p(n) for nonzero integer n.
unsigned int_valuation(mpz_class n, const mpz_class& p);

// Floor division and canonical nonnegative remainder (r in [0, |m|)).
mpz_class floor_div(const mpz_class& a, const mpz_class& b);
mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m);

}  // namespace wacert
