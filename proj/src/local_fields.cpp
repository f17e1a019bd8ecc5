#include "local_fields.hpp"

#include <algorithm>

#include "int_utils.hpp"

namespace wacert::local {

namespace {

using nf::Hnf2;

int v2_of_mpz(const mpz_class& n) {
  // n != 0
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

int v2_of_mpq(const mpq_class& q) {
  return v2_of_mpz(mpz_class(q.get_num())) - v2_of_mpz(mpz_class(q.get_den()));
}

// pi^k as a field element.
FieldElement pi_power(const FieldElement& pi, unsigned k) {
  FieldElement r = FieldElement::one(pi.field());
  for (unsigned i = 0; i < k; ++i) r = r * pi;
  return r;
}

// Canonical representative of alpha mod pi^N for v_pi(alpha) >= 0; the
// denominator m of alpha satisfies v_pi(m) <= v_pi(m*alpha), so after
// dividing both by pi^{v_pi(m)} the denominator becomes a unit mod pi^N.
FieldElement canonical_residue(const FieldElement& alpha, const PrincipalPrime& pi,
                               const ResidueRing& ring_N) {
  if (alpha.is_zero()) return ring_N.reduce(FieldElement::zero(alpha.field()));
  if (alpha.is_integral()) return ring_N.reduce(alpha);
  mpz_class m = alpha.denominator();
  FieldElement den = FieldElement::from_int(alpha.field(), m);
  FieldElement num = alpha * den;
  unsigned vden = integral_valuation(den, pi.generator());
  if (vden > 0) {
    if (num.is_zero() || integral_valuation(num, pi.generator()) < vden)
      throw MathError("canonical_residue: element has negative valuation");
    FieldElement pk = pi_power(pi.generator(), vden);
    num = num / pk;
    den = den / pk;
  }
  return ring_N.reduce(ring_N.mul(ring_N.reduce(num), ring_N.inverse(ring_N.reduce(den))));
}

// Square root in the residue field O_K/(pi), odd cardinality Q: direct
// exponent for Q = 3 mod 4, Tonelli-Shanks otherwise. r a unit square.
FieldElement residue_field_sqrt(const FieldElement& r, const PrincipalPrime& pi) {
  const ResidueRing& F = pi.ring();
  const mpz_class Q = pi.residue_field_size();
  const FieldElement one = FieldElement::one(pi.field());
  if (mod_nonneg(Q, 4) == 3) return F.pow(r, (Q + 1) / 4);

  mpz_class q_odd = Q - 1;
  unsigned s = 0;
  while (mpz_even_p(q_odd.get_mpz_t())) {
    q_odd /= 2;
    ++s;
  }
  // Deterministic scan for a non-square: small rational integers first, then
  // elements involving w (needed when every unit of the prime field is a
  // square in F_{q^2}).
  FieldElement nonres = FieldElement::zero(pi.field());
  bool found = false;
  const long kmax = pi.field().is_rational() ? 0 : 128;
  for (long k = 0; k <= kmax && !found; ++k) {
    for (long j = (k == 0 ? 2 : 0); j <= 256 && !found; ++j) {
      FieldElement cand(pi.field(), mpq_class(j), mpq_class(k));
      if (!F.is_unit(cand)) continue;
      FieldElement e = F.pow(cand, (Q - 1) / 2);
      if (!F.congruent(e, one)) {
        nonres = cand;
        found = true;
      }
    }
  }
  if (!found) throw MathError("residue_field_sqrt: no non-square found in scan");

  // Tonelli-Shanks.
  unsigned M = s;
  FieldElement c = F.pow(nonres, q_odd);
  FieldElement y = F.pow(r, (q_odd + 1) / 2);
  FieldElement t = F.pow(r, q_odd);
  while (!F.congruent(t, one)) {
    unsigned i = 0;
    FieldElement t2 = t;
    while (!F.congruent(t2, one)) {
      t2 = F.mul(t2, t2);
      ++i;
      if (i >= M) throw MathError("residue_field_sqrt: input is not a square");
    }
    FieldElement b = c;
    for (unsigned j = 0; j + i + 1 < M; ++j) b = F.mul(b, b);
    M = i;
    c = F.mul(b, b);
    t = F.mul(t, c);
    y = F.mul(y, b);
  }
  return y;
}

// 2-adic square root of delta0 = 1 mod 8, the root u = 1 mod 4, correct
// mod 2^M (bit-by-bit lifting).
mpz_class two_adic_sqrt(const mpz_class& delta0, unsigned M) {
  mpz_class u = 1;
  mpz_class pow2 = 8;  // 2^k, invariant u^2 = delta0 mod 2^k
  for (unsigned k = 3; k < M; ++k) {
    mpz_class diff = u * u - delta0;
    if (mod_nonneg(diff, pow2 * 2) != 0) u += pow2 / 2;
    pow2 *= 2;
  }
  return mod_nonneg(u, pow2);
}

int split_valuation(const FieldElement& xi, const TwoAdicPlace& place) {
  mpq_class x, y;
  xi.surd_form(x, y);
  mpz_class m = 1;
  mpz_lcm(m.get_mpz_t(), x.get_den().get_mpz_t(), y.get_den().get_mpz_t());
  mpz_class X = mpz_class(x * m), Y = mpz_class(y * m);
  if (place.split_index == 1) Y = -Y;
  for (unsigned M = 16; M <= 1024; M *= 2) {
    mpz_class u = two_adic_sqrt(place.field.delta0(), M);
    mpz_class pow2 = 1;
    mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), M);
    mpz_class r = mod_nonneg(X + Y * u, pow2);
    if (r != 0) return v2_of_mpz(r) - v2_of_mpz(m);
  }
  throw MathError("two_adic_valuation: valuation exceeds precision cap");
}

}  // namespace

unsigned integral_valuation(const FieldElement& beta, const FieldElement& pi) {
  if (beta.is_zero() || !beta.is_integral())
    throw MathError("integral_valuation: nonzero integral element required");
  unsigned v = 0;
  FieldElement cur = beta;
  for (;;) {
    FieldElement next = cur / pi;
    if (!next.is_integral()) return v;
    cur = next;
    ++v;
  }
}

int valuation(const FieldElement& alpha, const PrincipalPrime& pi) {
  if (alpha.is_zero()) throw MathError("valuation: zero has no finite valuation");
  if (alpha.field() != pi.field())
    throw MathError("valuation: element and prime from different fields");
  mpz_class m = alpha.denominator();
  FieldElement num = alpha * FieldElement::from_int(alpha.field(), m);
  int v = static_cast<int>(integral_valuation(num, pi.generator()));
  if (m != 1)
    v -= static_cast<int>(
        integral_valuation(FieldElement::from_int(alpha.field(), m), pi.generator()));
  return v;
}

PadicApprox::PadicApprox(PrincipalPrime prime, unsigned precision, const FieldElement& value)
    : prime_(std::move(prime)),
      precision_(precision),
      ring_(prime_.field(), pi_power(prime_.generator(), precision)),
      value_(FieldElement::zero(prime_.field())) {
  if (precision_ == 0) throw MathError("PadicApprox: precision must be positive");
  value_ = canonical_residue(value, prime_, ring_);
}

std::vector<std::array<mpz_class, 2>> PadicApprox::digits() const {
  std::vector<std::array<mpz_class, 2>> out;
  out.reserve(precision_);
  FieldElement cur = value_;
  const ResidueRing& F = prime_.ring();
  for (unsigned i = 0; i < precision_; ++i) {
    FieldElement d = F.reduce(cur);
    out.push_back({mpz_class(d.c0().get_num()), mpz_class(d.c1().get_num())});
    cur = (cur - d) / prime_.generator();
  }
  return out;
}

PadicApprox PadicApprox::from_digits(const PrincipalPrime& prime, unsigned precision,
                                     const std::vector<std::array<mpz_class, 2>>& digits) {
  if (digits.size() != precision)
    throw MathError("PadicApprox: digit count does not match precision");
  FieldElement acc = FieldElement::zero(prime.field());
  FieldElement pk = FieldElement::one(prime.field());
  for (const auto& d : digits) {
    FieldElement dig(prime.field(), mpq_class(d[0]),
                     prime.field().is_rational() ? mpq_class(0) : mpq_class(d[1]));
    acc = acc + dig * pk;
    pk = pk * prime.generator();
  }
  return PadicApprox(prime, precision, acc);
}

PadicApprox hensel_sqrt(const FieldElement& t, const PrincipalPrime& pi, unsigned precision) {
  if (!pi.is_odd()) throw MathError("hensel_sqrt: odd residue characteristic required");
  if (t.is_zero() || valuation(t, pi) != 0)
    throw MathError("hensel_sqrt: input must be a unit at the prime");
  if (!nf::is_square_mod(t, pi))
    throw MathError("hensel_sqrt: input is not a square in the residue field");

  PadicApprox target(pi, precision, t);
  const FieldElement& r_full = target.value();

  FieldElement y = residue_field_sqrt(pi.ring().reduce(r_full), pi);
  unsigned have = 1;
  while (have < precision) {
    unsigned next = std::min(2 * have, precision);
    ResidueRing R(pi.field(), pi_power(pi.generator(), next));
    FieldElement r = R.reduce(r_full);
    FieldElement inv2 = R.inverse(FieldElement::from_int(pi.field(), 2));
    y = R.mul(R.add(y, R.mul(r, R.inverse(R.reduce(y)))), inv2);
    have = next;
  }

  const ResidueRing& RN = target.ring();
  if (!RN.congruent(RN.mul(y, y), r_full))
    throw MathError("hensel_sqrt: lifted root failed verification");
  FieldElement neg = RN.reduce(-y);
  if (FieldElement::cmp_lex(neg, y) < 0) y = neg;
  return PadicApprox(pi, precision, y);
}

std::string TwoAdicPlace::name() const {
  switch (type) {
    case TwoAdicType::rational: return "2";
    case TwoAdicType::inert: return "2-inert";
    case TwoAdicType::split: return split_index == 0 ? "2-split+" : "2-split-";
    case TwoAdicType::ramified: return "2-ramified";
  }
  return "?";
}

std::vector<TwoAdicPlace> places_above_2(const QuadraticField& field) {
  if (field.is_rational()) return {{field, TwoAdicType::rational, 0}};
  mpz_class r = mod_nonneg(field.delta0(), 8);
  if (r == 1) return {{field, TwoAdicType::split, 0}, {field, TwoAdicType::split, 1}};
  if (r == 5) return {{field, TwoAdicType::inert, 0}};
  return {{field, TwoAdicType::ramified, 0}};
}

int two_adic_valuation(const FieldElement& xi, const TwoAdicPlace& place) {
  if (xi.is_zero()) throw MathError("two_adic_valuation: zero has no finite valuation");
  if (xi.field() != place.field)
    throw MathError("two_adic_valuation: element from a different field");
  switch (place.type) {
    case TwoAdicType::rational:
      return v2_of_mpq(xi.c0());
    case TwoAdicType::inert: {
      auto cert = nf::is_principal_prime(FieldElement::from_int(place.field, 2));
      if (!cert) throw MathError("two_adic_valuation: 2 is not inert here");
      return valuation(xi, *cert.prime);
    }
    case TwoAdicType::ramified:
      return v2_of_mpq(xi.norm());
    case TwoAdicType::split:
      return split_valuation(xi, place);
  }
  throw MathError("two_adic_valuation: unknown place type");
}

bool two_adic_square_criterion(const FieldElement& t, const TwoAdicPlace& place) {
  if (!t.is_integral()) throw MathError("two_adic_square_criterion: integral input required");
  if (t.is_zero() || two_adic_valuation(t, place) != 0)
    throw MathError("two_adic_square_criterion: input must be a unit at the place");
  FieldElement tm1 = t - FieldElement::one(t.field());
  if (tm1.is_zero()) return true;
  return two_adic_valuation(tm1, place) >= 3 * place.ramification_index();
}

bool is_one_mod_8(const FieldElement& t) {
  if (!t.is_integral()) return false;
  ResidueRing R(t.field(), FieldElement::from_int(t.field(), 8));
  return R.congruent(t, FieldElement::one(t.field()));
}

RamifiedPlace::RamifiedPlace(const PrincipalPrime& base, const FieldElement& D)
    : base_(base), D_(D), vD_(0) {
  if (!base_.is_odd()) throw MathError("RamifiedPlace: odd base prime required");
  if (D_.is_zero()) throw MathError("RamifiedPlace: D must be nonzero");
  if (D_.field() != base_.field())
    throw MathError("RamifiedPlace: D and base prime from different fields");
  vD_ = valuation(D_, base_);
  if (vD_ % 2 == 0)
    throw MathError("RamifiedPlace: v_p(D) is even, extension is not ramified at p");
}

int ramified_valuation(const RelElement& xi, const RamifiedPlace& P) {
  // N_{L|K}(u + v sqrt(D)) = u^2 - D v^2; zero only for u = v = 0 because
  // v_p(D) odd makes D a non-square in K.
  FieldElement n = xi.u * xi.u - P.D() * xi.v * xi.v;
  if (n.is_zero()) throw MathError("ramified_valuation: zero has no finite valuation");
  return valuation(n, P.base());
}

}  // namespace wacert::local
