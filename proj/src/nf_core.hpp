#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "int_utils.hpp"

namespace wacert::nf {

// Quadratic number field K = Q(sqrt(delta0)) for squarefree delta0, with
// delta0 = 1 meaning K = Q. The ring of integers is Z[w] where
//   w = (1 + sqrt(delta0))/2   if delta0 = 1 mod 4  (w^2 = w - (1-delta0)/4)
//   w = sqrt(delta0)           otherwise            (w^2 = delta0)
// Elements are stored as coordinates over the integral basis (1, w); for
// K = Q the second coordinate is identically zero.
class QuadraticField {
 public:
  static QuadraticField rationals() { return QuadraticField(1); }
  explicit QuadraticField(const mpz_class& delta0);

  const mpz_class& delta0() const { return delta0_; }
  bool is_rational() const { return delta0_ == 1; }
  // Minimal polynomial of w is x^2 - t*x + n.
  const mpz_class& omega_trace() const { return omega_trace_; }
  const mpz_class& omega_norm() const { return omega_norm_; }
  const mpz_class& discriminant() const { return disc_; }
  // 1 for Q, 2 for real quadratic, 0 for imaginary quadratic.
  int real_place_count() const;

  bool operator==(const QuadraticField& o) const { return delta0_ == o.delta0_; }
  bool operator!=(const QuadraticField& o) const { return !(*this == o); }

 private:
  mpz_class delta0_;
  mpz_class omega_trace_, omega_norm_;
  mpz_class disc_;
};

// Element q0 + q1*w of a quadratic field (exact rational coordinates).
class FieldElement {
 public:
  FieldElement(QuadraticField field, mpq_class c0, mpq_class c1);
  static FieldElement from_int(const QuadraticField& field, const mpz_class& n);
  static FieldElement zero(const QuadraticField& field);
  static FieldElement one(const QuadraticField& field);
  // Parses "q0", "q1*w", "q0 + q1*w", "q0 - q1*w" (rationals as p or p/q).
  static FieldElement parse(const QuadraticField& field, const std::string& s);

  const QuadraticField& field() const { return field_; }
  const mpq_class& c0() const { return c0_; }
  const mpq_class& c1() const { return c1_; }

  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  bool is_integral() const;
  bool is_rational_value() const { return c1_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;  // o != 0
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement conjugate() const;
  mpq_class norm() const;   // alpha * conj(alpha)
  mpq_class trace() const;  // alpha + conj(alpha)
  FieldElement inverse() const;

  // alpha = x + y*sqrt(delta0) with rational x, y (y = 0 over Q).
  void surd_form(mpq_class& x, mpq_class& y) const;

  // Integral alpha with |norm| = 1 (so a unit of O_K)?
  bool is_integral_unit() const;

  // Smallest positive integer m with m*alpha integral.
  mpz_class denominator() const;

  // Integer coordinates (requires is_integral()).
  std::array<mpz_class, 2> integer_coords() const;

  // Canonical form "q0 + q1*w" (omitting zero parts; "0" for zero).
  std::string to_string() const;

  // Lexicographic comparison by (c0, c1); a deterministic total order.
  static int cmp_lex(const FieldElement& a, const FieldElement& b);

 private:
  QuadraticField field_;
  mpq_class c0_, c1_;
};

// Exact sign of p + q*sqrt(d) for rational p, q and a nonsquare d >= 0
// (d is delta0; callers pass d = 1 only with q = 0).
int surd_sign(const mpq_class& p, const mpq_class& q, const mpz_class& d);

// Exact comparison |x + y*sqrt(d)| vs |x' + y'*sqrt(d)| (-1/0/+1).
int cmp_abs_surd(const mpq_class& x, const mpq_class& y, const mpq_class& x2,
                 const mpq_class& y2, const mpz_class& d);

// Every real embedding of alpha exceeds bound (vacuously true when K has no
// real places). Exact; no floating point anywhere.
bool totally_positive_and_large(const FieldElement& alpha, const mpq_class& bound);

// Signs of alpha at the real places, in a fixed order: for K = Q the single
// embedding; for real quadratic K the embeddings sqrt(delta0) -> +/-sqrt(delta0).
std::vector<int> real_embedding_signs(const FieldElement& alpha);

// Compares candidates by largest absolute value over all archimedean
// embeddings (for imaginary fields this is |alpha| via the norm); returns
// -1/0/+1. Used as the deterministic search order.
int cmp_max_abs_embedding(const FieldElement& a, const FieldElement& b);

// Column Hermite form of a rank-2 integer lattice in coordinates: basis
// vectors (h00, 0) and (h01, h11) with h00, h11 > 0 and 0 <= h01 < h00.
struct Hnf2 {
  mpz_class h00, h01, h11;
  mpz_class det() const { return h00 * h11; }
};

// HNF of the lattice spanned by the given coordinate columns (rank 2
// required), optionally with a transform expressing the basis and solving
// membership queries.
Hnf2 hnf_of_columns(const std::vector<std::array<mpz_class, 2>>& cols);

// Solves sum_j coeff_j * cols_j = target over Z, if the target lies in the
// lattice; empty optional otherwise.
std::optional<std::vector<mpz_class>> lattice_solve(
    const std::vector<std::array<mpz_class, 2>>& cols,
    const std::array<mpz_class, 2>& target);

// O_K / (mu) for a nonzero integral modulus mu, with canonical
// representatives in the HNF fundamental domain. Cardinality |N(mu)|.
class ResidueRing {
 public:
  ResidueRing(const QuadraticField& field, const FieldElement& mu);

  const FieldElement& modulus() const { return mu_; }
  const mpz_class& cardinality() const { return card_; }
  const QuadraticField& field() const { return field_; }
  // Fundamental domain: representatives a0 + a1*w, 0 <= a0 < h00, 0 <= a1 < h11.
  const Hnf2& hnf() const { return hnf_; }

  // Canonical representative of an integral element.
  FieldElement reduce(const FieldElement& alpha) const;
  bool is_zero(const FieldElement& alpha) const;
  bool congruent(const FieldElement& a, const FieldElement& b) const;

  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& a, const mpz_class& e) const;  // e >= 0

  // True iff (alpha) + (mu) = O_K.
  bool is_unit(const FieldElement& alpha) const;
  // Inverse of a unit (throws MathError otherwise).
  FieldElement inverse(const FieldElement& alpha) const;

 private:
  QuadraticField field_;
  FieldElement mu_;
  Hnf2 hnf_;
  mpz_class card_;
};

// A certified principal prime: generator pi of a prime ideal of O_K,
// certified either by |N(pi)| prime (degree 1) or by |N(pi)| = q^2 with
// pi an associate of an inert rational prime q (degree 2).
class PrincipalPrime {
 public:
  const FieldElement& generator() const { return pi_; }
  const mpz_class& residue_char() const { return q_; }
  unsigned degree() const { return degree_; }
  const mpz_class& residue_field_size() const { return card_; }
  bool is_odd() const { return q_ != 2; }
  const ResidueRing& ring() const { return ring_; }
  const QuadraticField& field() const { return ring_.field(); }

  // Same prime ideal (generators differ by an integral unit)?
  bool same_ideal(const PrincipalPrime& other) const;
  bool same_ideal_generator(const FieldElement& other) const;

  friend struct PrimeCertification;

 private:
  PrincipalPrime(FieldElement pi, mpz_class q, unsigned degree, ResidueRing ring)
      : pi_(std::move(pi)), q_(std::move(q)), degree_(degree),
        card_(degree_ == 1 ? q_ : q_ * q_), ring_(std::move(ring)) {}

  FieldElement pi_;
  mpz_class q_;
  unsigned degree_;
  mpz_class card_;
  ResidueRing ring_;
};

// Result of is_principal_prime: either the certified prime or the reason
// the candidate was rejected.
struct PrimeCertification {
  std::optional<PrincipalPrime> prime;
  std::string rejection;  // nonempty iff !prime

  static PrimeCertification certify(const FieldElement& pi);
  explicit operator bool() const { return prime.has_value(); }
};

inline PrimeCertification is_principal_prime(const FieldElement& pi) {
  return PrimeCertification::certify(pi);
}

// Requires an odd prime and v_P(s) = 0: Euler criterion in the residue
// field, s a square mod P iff s^((|F|-1)/2) = 1.
bool is_square_mod(const FieldElement& s, const PrincipalPrime& p);

// True iff 2 is inert in K (delta0 = 5 mod 8).
bool two_is_inert(const QuadraticField& field);

}  // namespace wacert::nf
