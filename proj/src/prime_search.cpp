#include "prime_search.hpp"

#include <algorithm>

#include "int_utils.hpp"

namespace wacert::search {

namespace {

using nf::hnf_of_columns;
using nf::lattice_solve;
using nf::ResidueRing;

Hnf2 ideal_lattice(const QuadraticField& F, const FieldElement& mu) {
  if (F.is_rational()) {
    mpz_class m = abs(mpz_class(mu.c0().get_num()));
    return Hnf2{m, 0, 1};
  }
  FieldElement w(F, 0, 1);
  auto coords = [](const FieldElement& x) {
    return std::array<mpz_class, 2>{mpz_class(x.c0().get_num()),
                                    mpz_class(x.c1().get_num())};
  };
  return hnf_of_columns({coords(mu), coords(mu * w)});
}

FieldElement reduce_mod_lattice(const FieldElement& x, const Hnf2& H) {
  auto c = x.integer_coords();
  mpz_class k = floor_div(c[1], H.h11);
  c[1] -= k * H.h11;
  c[0] -= k * H.h01;
  c[0] = mod_nonneg(c[0], H.h00);
  return FieldElement(x.field(), mpq_class(c[0]), mpq_class(c[1]));
}

// Intersection of two column-HNF lattices (quadratic fields; both rank 2).
Hnf2 intersect_lattices(const Hnf2& L1, const Hnf2& L2) {
  mpz_class a = L1.h00, b = L1.h01, c = L1.h11;
  mpz_class p = L2.h00, q = L2.h01, r = L2.h11;
  mpz_class X, Y0, g;
  mpz_lcm(X.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  mpz_lcm(Y0.get_mpz_t(), c.get_mpz_t(), r.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  // a vector (x, kY0) lies in both lattices iff
  //   x = k(Y0/c)b mod a   and   x = k(Y0/r)q mod p,
  // solvable iff k(A-B) = 0 mod gcd(a,p).
  mpz_class A = (Y0 / c) * b, B = (Y0 / r) * q;
  mpz_class diff = mod_nonneg(A - B, g);
  mpz_class dg;
  mpz_gcd(dg.get_mpz_t(), diff.get_mpz_t(), g.get_mpz_t());
  mpz_class k0 = g / dg;
  // CRT for x0: x0 = k0*A mod a, x0 = k0*B mod p (compatible by choice of k0)
  mpz_class s, t, gg;
  mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  mpz_class lhs = k0 * A, rhs = k0 * B;
  if (mod_nonneg(rhs - lhs, gg) != 0)
    throw MathError("internal: lattice intersection CRT mismatch");
  mpz_class x0 = lhs + a * ((rhs - lhs) / gg) * s;
  return Hnf2{X, mod_nonneg(x0, X), k0 * Y0};
}

struct Combined {
  FieldElement x0;
  Hnf2 lattice;
};

void validate_congruence(const QuadraticField& F, const Congruence& c) {
  if (c.modulus.field() != F || c.residue.field() != F)
    throw MathError("congruence belongs to a different field");
  if (c.modulus.is_zero() || !c.modulus.is_integral())
    throw MathError("congruence modulus must be integral and nonzero");
  if (!c.residue.is_integral())
    throw MathError("congruence residue must be integral");
  if (!ResidueRing(F, c.modulus).is_unit(c.residue))
    throw MathError("congruence residue is not a unit modulo the modulus");
}

Combined combine_all(const CongruenceSystem& sys) {
  const QuadraticField& F = sys.field;
  Combined acc{FieldElement::zero(F), Hnf2{1, 0, 1}};
  bool first = true;
  for (const Congruence& c : sys.congruences) {
    validate_congruence(F, c);
    Hnf2 L2 = ideal_lattice(F, c.modulus);
    if (first) {
      acc = Combined{reduce_mod_lattice(c.residue, L2), L2};
      first = false;
      continue;
    }
    FieldElement target = c.residue - acc.x0;
    if (F.is_rational()) {
      mpz_class m1 = acc.lattice.h00, m2 = L2.h00;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(),
                 m2.get_mpz_t());
      mpz_class d = target.integer_coords()[0];
      if (mod_nonneg(d, g) != 0)
        throw MathError("incompatible congruences (moduli " + m1.get_str() + ", " +
                        m2.get_str() + ")");
      mpz_class x = acc.x0.integer_coords()[0] + m1 * ((d / g) * s);
      mpz_class lcm;
      mpz_lcm(lcm.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
      acc = Combined{FieldElement(F, mpq_class(mod_nonneg(x, lcm)), 0),
                     Hnf2{lcm, 0, 1}};
    } else {
      FieldElement w(F, 0, 1);
      auto coords = [](const FieldElement& x) {
        return std::array<mpz_class, 2>{mpz_class(x.c0().get_num()),
                                        mpz_class(x.c1().get_num())};
      };
      std::vector<std::array<mpz_class, 2>> cols = {
          {acc.lattice.h00, mpz_class(0)},
          {acc.lattice.h01, acc.lattice.h11},
          coords(c.modulus),
          coords(c.modulus * w)};
      auto sol = lattice_solve(cols, coords(target));
      if (!sol)
        throw MathError("incompatible congruences (residue difference misses the "
                        "modulus span)");
      mpz_class a0 = (*sol)[0] * acc.lattice.h00 + (*sol)[1] * acc.lattice.h01;
      mpz_class a1 = (*sol)[1] * acc.lattice.h11;
      FieldElement x = acc.x0 + FieldElement(F, mpq_class(a0), mpq_class(a1));
      Hnf2 L = intersect_lattices(acc.lattice, L2);
      acc = Combined{reduce_mod_lattice(x, L), L};
    }
  }
  return acc;
}

}  // namespace

FieldElement crt_combine(const CongruenceSystem& sys) {
  return combine_all(sys).x0;
}

std::vector<FieldElement> candidate_stream(const CongruenceSystem& sys) {
  Combined c = combine_all(sys);
  const QuadraticField& F = sys.field;
  const long R = sys.radius;
  if (R < 0) throw MathError("negative search radius");
  std::vector<FieldElement> out;
  if (F.is_rational()) {
    out.reserve(2 * R + 1);
    for (long l = -R; l <= R; ++l)
      out.push_back(c.x0 + FieldElement(F, mpq_class(l * c.lattice.h00), 0));
  } else {
    out.reserve((2 * R + 1) * (2 * R + 1));
    for (long l0 = -R; l0 <= R; ++l0)
      for (long l1 = -R; l1 <= R; ++l1) {
        mpq_class a0(l0 * c.lattice.h00 + l1 * c.lattice.h01);
        mpq_class a1(l1 * c.lattice.h11);
        out.push_back(c.x0 + FieldElement(F, a0, a1));
      }
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) {
    int c0 = nf::cmp_max_abs_embedding(a, b);
    if (c0 != 0) return c0 < 0;
    return FieldElement::cmp_lex(a, b) < 0;
  });
  return out;
}

SearchCertificate find_principal_prime(const CongruenceSystem& sys,
                                       const std::vector<PrimeFilter>& filters) {
  Combined comb = combine_all(sys);
  auto stream = candidate_stream(sys);
  unsigned long scanned = 0;
  for (const FieldElement& cand : stream) {
    ++scanned;
    if (cand.is_zero()) continue;
    bool positive = !sys.positivity_bound.has_value() ||
                    nf::totally_positive_and_large(cand, *sys.positivity_bound);
    if (!positive) continue;
    auto cert = nf::PrimeCertification::certify(cand);
    if (!cert) continue;
    bool pass = true;
    for (const auto& f : filters)
      if (!f(*cert.prime)) {
        pass = false;
        break;
      }
    if (!pass) continue;
    // re-verify every congruence against the certified element
    std::vector<bool> checks;
    bool all = true;
    for (const Congruence& cg : sys.congruences) {
      bool ok = ResidueRing(sys.field, cg.modulus).congruent(cand, cg.residue);
      checks.push_back(ok);
      all = all && ok;
    }
    if (!all)
      throw MathError("internal: candidate from the congruence lattice fails "
                      "re-verification");
    return SearchCertificate{*cert.prime, comb.x0, std::move(checks), positive, scanned};
  }
  throw MathError("search radius exhausted; enlarge radius (no certified prime in " +
                  std::to_string(stream.size()) + " candidates)");
}

}  // namespace wacert::search
