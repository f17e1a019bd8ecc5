#include "symbols.hpp"

#include "int_utils.hpp"
#include "local_fields.hpp"

namespace wacert::sym {

namespace {

// x / pi^v for integer v (negative v multiplies).
FieldElement shift_by_prime(const FieldElement& x, const FieldElement& pi, int v) {
  FieldElement r = x;
  for (int i = 0; i < v; ++i) r = r / pi;
  for (int i = 0; i > v; --i) r = r * pi;
  return r;
}

int eps_parity(const mpz_class& u) {  // (u-1)/2 mod 2 for odd u
  return mod_nonneg(u, 4) == 3 ? 1 : 0;
}

int omega_parity(const mpz_class& u) {  // (u^2-1)/8 mod 2 for odd u
  mpz_class r = mod_nonneg(u, 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_odd(const FieldElement& s, const FieldElement& t, const PrincipalPrime& v) {
  if (!v.is_odd()) throw MathError("hilbert_odd: odd place required");
  if (s.is_zero() || t.is_zero()) throw MathError("hilbert_odd: nonzero arguments required");
  if (s.field() != v.field() || t.field() != v.field())
    throw MathError("hilbert_odd: arguments from a different field");
  int vs = local::valuation(s, v);
  int vt = local::valuation(t, v);
  FieldElement su = shift_by_prime(s, v.generator(), vs);  // unit part
  FieldElement tu = shift_by_prime(t, v.generator(), vt);
  bool ps = mod_nonneg(mpz_class(vs), 2) == 1;
  bool pt = mod_nonneg(mpz_class(vt), 2) == 1;
  if (!ps && !pt) return 1;  // both units up to squares: unramified, trivial
  if (!ps && pt) return nf::is_square_mod(su, v) ? 1 : -1;
  if (ps && !pt) return nf::is_square_mod(tu, v) ? 1 : -1;
  // both odd: (pi u, pi w) = (pi u, -uw) modulo squares, second argument now
  // a unit, so the symbol is the residue character of -uw.
  return nf::is_square_mod(-(su * tu), v) ? 1 : -1;
}

int hilbert_rational(const mpq_class& s, const mpq_class& t, const RationalPlace& v) {
  if (s == 0 || t == 0) throw MathError("hilbert_rational: nonzero arguments required");
  if (v.infinite) return (s < 0 && t < 0) ? -1 : 1;
  if (v.p < 2 || !is_certified_prime(v.p))
    throw MathError("hilbert_rational: place must be prime or infinity");
  // replace s by the square-class representative num*den (an integer)
  mpz_class si = s.get_num() * s.get_den();
  mpz_class ti = t.get_num() * t.get_den();
  unsigned alpha = int_valuation(si, v.p);
  unsigned beta = int_valuation(ti, v.p);
  mpz_class u = si, w = ti, pk;
  mpz_pow_ui(pk.get_mpz_t(), v.p.get_mpz_t(), alpha);
  u /= pk;
  mpz_pow_ui(pk.get_mpz_t(), v.p.get_mpz_t(), beta);
  w /= pk;

  if (v.p == 2) {
    int e = eps_parity(u) * eps_parity(w) + static_cast<int>(alpha) * omega_parity(w) +
            static_cast<int>(beta) * omega_parity(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  int sign = 1;
  if ((alpha % 2) && (beta % 2) && eps_parity(v.p)) sign = -sign;
  if (beta % 2) sign *= legendre_symbol(u, v.p);
  if (alpha % 2) sign *= legendre_symbol(w, v.p);
  return sign;
}

bool reciprocity_check(const FieldElement& s, const FieldElement& t) {
  auto cs = nf::is_principal_prime(s);
  if (!cs) throw MathError("reciprocity_check: s is not a principal prime generator: " +
                           cs.rejection);
  auto ct = nf::is_principal_prime(t);
  if (!ct) throw MathError("reciprocity_check: t is not a principal prime generator: " +
                           ct.rejection);
  if (!cs.prime->is_odd() || !ct.prime->is_odd())
    throw MathError("reciprocity_check: odd primes required");
  if (cs.prime->same_ideal(*ct.prime))
    throw MathError("reciprocity_check: distinct primes required");
  if (!local::is_one_mod_8(s) && !local::is_one_mod_8(t))
    throw MathError("reciprocity_check: neither argument is 1 mod 8 O_K");
  auto ss = nf::real_embedding_signs(s);
  auto ts = nf::real_embedding_signs(t);
  for (size_t i = 0; i < ss.size(); ++i)
    if (ss[i] < 0 && ts[i] < 0)
      throw MathError("reciprocity_check: both arguments negative at a real place");
  bool s_mod_t = nf::is_square_mod(s, *ct.prime);
  bool t_mod_s = nf::is_square_mod(t, *cs.prime);
  return s_mod_t == t_mod_s;
}

}  // namespace wacert::sym
