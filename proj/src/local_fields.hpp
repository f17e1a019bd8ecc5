#pragma once

#include <vector>

#include "nf_core.hpp"

namespace wacert::local {

using nf::FieldElement;
using nf::PrincipalPrime;
using nf::QuadraticField;
using nf::ResidueRing;

// v_P(alpha) for nonzero alpha in K (negative for proper denominators).
// Additive on products. Throws a distinct error on alpha = 0.
int valuation(const FieldElement& alpha, const PrincipalPrime& pi);

// Largest n with pi^n dividing beta (beta integral, nonzero).
unsigned integral_valuation(const FieldElement& beta, const FieldElement& pi);

// Residue class modulo pi^N with canonical representative and base-pi
// digit decomposition (each digit a canonical residue modulo pi).
class PadicApprox {
 public:
  PadicApprox(PrincipalPrime prime, unsigned precision, const FieldElement& value);

  const PrincipalPrime& prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  const FieldElement& value() const { return value_; }  // canonical rep
  const ResidueRing& ring() const { return ring_; }

  // d_0 + d_1 pi + ... + d_{N-1} pi^{N-1} = value mod pi^N, each d_i the
  // canonical representative of a residue mod pi, stored by coordinates.
  std::vector<std::array<mpz_class, 2>> digits() const;
  static PadicApprox from_digits(const PrincipalPrime& prime, unsigned precision,
                                 const std::vector<std::array<mpz_class, 2>>& digits);

 private:
  PrincipalPrime prime_;
  unsigned precision_;
  ResidueRing ring_;    // modulo pi^N
  FieldElement value_;  // reduced
};

inline constexpr unsigned kDefaultHenselPrecision = 8;

// Square root of a unit square t modulo pi^N: Tonelli-Shanks in the residue
// field followed by Newton lifting; the result is re-verified by squaring
// at full precision before being returned. pi odd, v_pi(t) = 0, t a square
// mod pi.
PadicApprox hensel_sqrt(const FieldElement& t, const PrincipalPrime& pi,
                        unsigned precision = kDefaultHenselPrecision);

// ---- places above 2 ----

enum class TwoAdicType {
  rational,  // K = Q
  inert,     // delta0 = 5 mod 8
  split,     // delta0 = 1 mod 8, two places
  ramified,  // delta0 = 2, 3 mod 4
};

struct TwoAdicPlace {
  QuadraticField field;
  TwoAdicType type;
  int split_index;  // 0 or 1 when split, else 0

  int ramification_index() const { return type == TwoAdicType::ramified ? 2 : 1; }
  std::string name() const;
};

// The places of K above 2, derived from delta0 mod 8, in a fixed order.
std::vector<TwoAdicPlace> places_above_2(const QuadraticField& field);

// Exact v(xi) at a place above 2 (normalized: uniformizer has value 1).
int two_adic_valuation(const FieldElement& xi, const TwoAdicPlace& place);

// True iff v(t-1) >= v(8): a sufficient Hensel criterion for t to be a
// square in K_v (v(t-1) > 2 v(2)). False means inconclusive, never "not a
// square". Requires t integral and a unit at the place.
bool two_adic_square_criterion(const FieldElement& t, const TwoAdicPlace& place);

// Membership t = 1 mod 8 O_K (equivalent to the criterion at every v | 2).
bool is_one_mod_8(const FieldElement& t);

// ---- the ramified quadratic extension L = K(sqrt(D)) at P | p ----

// u + v*sqrt(D) with u, v in K.
struct RelElement {
  FieldElement u, v;
};

// P: the unique (ramified) prime of L = K(sqrt(D)) above an odd prime p of
// K with v_p(D) odd; X^2 - D is Eisenstein at p after scaling, so e = 2 and
// O_L/P = O_K/p. Construction rejects even v_p(D).
class RamifiedPlace {
 public:
  RamifiedPlace(const PrincipalPrime& base, const FieldElement& D);

  const PrincipalPrime& base() const { return base_; }
  const FieldElement& D() const { return D_; }
  int base_valuation_of_D() const { return vD_; }

 private:
  PrincipalPrime base_;
  FieldElement D_;
  int vD_;
};

// v_P(xi) normalized so a uniformizer of L_P has value 1; computed through
// the norm: v_P(xi) = v_p(N_{L|K}(xi)) = v_p(u^2 - D v^2). Restriction to K
// doubles the base valuation.
int ramified_valuation(const RelElement& xi, const RamifiedPlace& P);

}  // namespace wacert::local
