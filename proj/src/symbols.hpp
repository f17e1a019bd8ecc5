#pragma once

#include <gmpxx.h>

#include "nf_core.hpp"

namespace wacert::sym {

using nf::FieldElement;
using nf::PrincipalPrime;

// Hilbert symbol (s,t)_v at an odd principal prime v of K. Inputs of any
// valuation shape are first normalized modulo squares (stripping pi^2
// factors, and (s,t) = (s,-st) when both valuations are odd); the result is
// -1 exactly when, after normalization, one argument has odd valuation and
// the other is a non-square in the residue field.
int hilbert_odd(const FieldElement& s, const FieldElement& t, const PrincipalPrime& v);

// A place of Q: a finite prime or the real place.
struct RationalPlace {
  bool infinite;
  mpz_class p;  // meaningful iff !infinite

  static RationalPlace infinity() { return {true, 0}; }
  static RationalPlace prime(const mpz_class& p) { return {false, p}; }
};

// Classical Hilbert symbol over Q_v for every place (closed forms; the
// v = 2 case via the (s,t) mod 8 formula). s, t != 0.
int hilbert_rational(const mpq_class& s, const mpq_class& t, const RationalPlace& v);

// For s, t generating distinct odd principal primes of K, with s = 1 mod
// 8 O_K or t = 1 mod 8 O_K, and s > 0 or t > 0 at each real place: whether
// "s is a square mod (t)" and "t is a square mod (s)" agree. Quadratic
// reciprocity says they always do; a false return means an internal
// inconsistency. Precondition violations throw individually.
bool reciprocity_check(const FieldElement& s, const FieldElement& t);

}  // namespace wacert::sym
