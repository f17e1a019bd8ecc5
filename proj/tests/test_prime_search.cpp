#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "int_utils.hpp"
#include "nf_core.hpp"
#include "prime_search.hpp"

using namespace wacert;
using namespace wacert::nf;
using namespace wacert::search;

namespace {

FieldElement el(const QuadraticField& F, long a, long b, long den = 1) {
  return FieldElement(F, mpq_class(a, den), mpq_class(b, den));
}

Congruence cong(const QuadraticField& F, long m0, long m1, long r0, long r1) {
  return Congruence{el(F, m0, m1), el(F, r0, r1)};
}

CongruenceSystem rational_system(const std::vector<std::pair<long, long>>& mr,
                                 bool positive = true) {
  QuadraticField Q = QuadraticField::rationals();
  CongruenceSystem sys{Q, {}, std::nullopt, 32};
  for (auto [m, r] : mr) sys.congruences.push_back(cong(Q, m, 0, r, 0));
  if (positive) sys.positivity_bound = mpq_class(0);
  return sys;
}

// smallest prime > 1 in the arithmetic progression r + k*m, k >= 0
mpz_class progression_prime(long r, long m) {
  for (mpz_class t(r);; t += m)
    if (t > 1 && is_certified_prime(t)) return t;
}

template <class Fn>
bool throws_containing(Fn&& fn, const std::string& needle) {
  try {
    fn();
  } catch (const MathError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("crt over the rationals") {
  QuadraticField Q = QuadraticField::rationals();

  // moduli sharing the factor 2, compatible residues
  auto sys = rational_system({{8, 1}, {34, 1}}, false);
  FieldElement x = crt_combine(sys);
  CHECK(x == el(Q, 1, 0));

  // coprime pair, brute scan confirms the unique representative
  sys = rational_system({{8, 1}, {5, 3}}, false);
  x = crt_combine(sys);
  CHECK(x == el(Q, 33, 0));
  int hits = 0;
  for (long t = 0; t < 40; ++t)
    if (t % 8 == 1 && t % 5 == 3) {
      ++hits;
      CHECK(x == el(Q, t, 0));
    }
  CHECK(hits == 1);

  // a single congruence reduces to its canonical representative
  sys = rational_system({{10, 7}}, false);
  CHECK(crt_combine(sys) == el(Q, 7, 0));
  sys = rational_system({{10, -3}}, false);
  CHECK(crt_combine(sys) == el(Q, 7, 0));

  // no congruences at all: zero representative, full lattice
  CHECK(crt_combine(CongruenceSystem{Q, {}, std::nullopt, 4}) ==
        FieldElement::zero(Q));

  // incompatible residues at the shared factor
  sys = rational_system({{4, 1}, {8, 3}}, false);
  CHECK_THROWS_AS(crt_combine(sys), MathError);

  // residue not a unit modulo the modulus
  sys = rational_system({{8, 2}}, false);
  CHECK_THROWS_AS(crt_combine(sys), MathError);

  // zero modulus
  sys = rational_system({{0, 1}}, false);
  CHECK_THROWS_AS(crt_combine(sys), MathError);

  // non-integral data
  CongruenceSystem bad{Q, {Congruence{el(Q, 1, 0, 2), el(Q, 1, 0)}}, std::nullopt, 4};
  CHECK_THROWS_AS(crt_combine(bad), MathError);
  bad.congruences[0] = Congruence{el(Q, 8, 0), el(Q, 1, 0, 3)};
  CHECK_THROWS_AS(crt_combine(bad), MathError);
}

TEST_CASE("crt over quadratic fields against residue ring enumeration") {
  QuadraticField Fi(-1);
  QuadraticField F5(5);

  struct Case {
    const QuadraticField* F;
    Congruence c1, c2;
  };
  std::vector<Case> cases = {
      {&Fi, cong(Fi, 2, 1, 0, 1), cong(Fi, 3, 0, -1, 0)},
      {&Fi, cong(Fi, 1, 2, 1, 1), cong(Fi, 0, 3, 2, 0)},
      {&F5, cong(F5, 2, 0, 1, 0), cong(F5, -1, 2, 2, 0)},
      {&F5, cong(F5, 3, 0, 1, 1), cong(F5, 0, 2, 1, 0)},
  };
  for (const auto& cs : cases) {
    const QuadraticField& F = *cs.F;
    CongruenceSystem sys{F, {cs.c1, cs.c2}, std::nullopt, 8};
    FieldElement x = crt_combine(sys);
    ResidueRing R1(F, cs.c1.modulus), R2(F, cs.c2.modulus);
    CHECK(R1.congruent(x, cs.c1.residue));
    CHECK(R2.congruent(x, cs.c2.residue));

    // coprime moduli: the combined lattice is the product ideal, so the
    // solution is unique in the product's fundamental domain
    FieldElement prod = cs.c1.modulus * cs.c2.modulus;
    ResidueRing Rp(F, prod);
    CHECK(x == Rp.reduce(x));
    const Hnf2& H = Rp.hnf();
    int hits = 0;
    for (mpz_class a0 = 0; a0 < H.h00; ++a0)
      for (mpz_class a1 = 0; a1 < H.h11; ++a1) {
        FieldElement cand(F, mpq_class(a0), mpq_class(a1));
        if (R1.congruent(cand, cs.c1.residue) && R2.congruent(cand, cs.c2.residue)) {
          ++hits;
          CHECK(cand == x);
        }
      }
    CHECK(hits == 1);
  }
}

TEST_CASE("crt with non-coprime quadratic moduli") {
  QuadraticField Fi(-1);
  // (-2+2i) = (1+i)^3 and (2) = -i (1+i)^2 share the prime above 2
  Congruence c1 = cong(Fi, -2, 2, 1, 0);
  Congruence c2 = cong(Fi, 2, 0, 1, 0);
  CongruenceSystem sys{Fi, {c1, c2}, std::nullopt, 32};
  FieldElement x = crt_combine(sys);
  CHECK(ResidueRing(Fi, c1.modulus).congruent(x, c1.residue));
  CHECK(ResidueRing(Fi, c2.modulus).congruent(x, c2.residue));

  // the candidate stream equals the set of simultaneous solutions: compare
  // against a direct scan of a coefficient box well inside the stream hull
  auto stream = candidate_stream(sys);
  std::set<std::string> seen;
  for (const FieldElement& s : stream) seen.insert(s.to_string());
  ResidueRing R1(Fi, c1.modulus), R2(Fi, c2.modulus);
  int both = 0;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      FieldElement z = el(Fi, a, b);
      bool ok = R1.congruent(z, c1.residue) && R2.congruent(z, c2.residue);
      CHECK(ok == (seen.count(z.to_string()) == 1));
      if (ok) ++both;
    }
  CHECK(both > 0);

  // incompatible at the shared prime: x = 1 mod (1+i)^3 forces x = 1 mod 2
  Congruence c3 = cong(Fi, 2, 0, 0, 1);
  CongruenceSystem bad{Fi, {c1, c3}, std::nullopt, 8};
  CHECK_THROWS_AS(crt_combine(bad), MathError);

  // mismatched field
  QuadraticField Q = QuadraticField::rationals();
  CongruenceSystem wrong{Fi, {Congruence{el(Q, 3, 0), el(Q, 1, 0)}}, std::nullopt, 4};
  CHECK_THROWS_AS(crt_combine(wrong), MathError);
}

TEST_CASE("candidate stream is sorted and congruent") {
  QuadraticField F3(3);
  CongruenceSystem sys{F3, {cong(F3, 3, 1, 1, 0), cong(F3, 2, 0, 1, 0)}, std::nullopt,
                       4};
  auto stream = candidate_stream(sys);
  CHECK(stream.size() == 81);
  ResidueRing R1(F3, sys.congruences[0].modulus);
  ResidueRing R2(F3, sys.congruences[1].modulus);
  for (size_t i = 0; i < stream.size(); ++i) {
    CHECK(R1.congruent(stream[i], sys.congruences[0].residue));
    CHECK(R2.congruent(stream[i], sys.congruences[1].residue));
    if (i + 1 < stream.size()) {
      int c = cmp_max_abs_embedding(stream[i], stream[i + 1]);
      bool ordered = c < 0 || (c == 0 && FieldElement::cmp_lex(stream[i], stream[i + 1]) < 0);
      CHECK(ordered);
    }
  }
  // no duplicates
  std::set<std::string> uniq;
  for (const FieldElement& s : stream) uniq.insert(s.to_string());
  CHECK(uniq.size() == stream.size());

  CongruenceSystem neg{F3, {}, std::nullopt, -1};
  CHECK_THROWS_AS(candidate_stream(neg), MathError);
}

TEST_CASE("search finds the smallest admissible rational primes") {
  QuadraticField Q = QuadraticField::rationals();

  auto sys = rational_system({{8, 1}});
  SearchCertificate cert = find_principal_prime(sys);
  CHECK(cert.prime.generator() == el(Q, 17, 0));
  CHECK(cert.prime.degree() == 1);
  CHECK(cert.x0 == crt_combine(sys));
  CHECK(cert.positivity_ok);
  REQUIRE(cert.congruences_ok.size() == 1);
  CHECK(cert.congruences_ok[0]);

  sys = rational_system({{34, 1}});
  cert = find_principal_prime(sys);
  CHECK(cert.prime.generator() == el(Q, 103, 0));

  // same search, but reject 103: the stream moves on to 137
  std::vector<PrimeFilter> skip103 = {
      [](const PrincipalPrime& P) { return P.residue_char() != 103; }};
  cert = find_principal_prime(sys, skip103);
  CHECK(cert.prime.generator() == el(Q, 137, 0));

  // odd primes that are non-squares modulo 17
  PrincipalPrime p17 = *is_principal_prime(el(Q, 17, 0)).prime;
  PrimeFilter nonsquare_mod_17 = [&](const PrincipalPrime& P) {
    return !is_square_mod(P.generator(), p17);
  };
  sys = rational_system({{2, 1}});
  cert = find_principal_prime(sys, {nonsquare_mod_17});
  CHECK(cert.prime.generator() == el(Q, 3, 0));

  PrimeFilter not_3 = [](const PrincipalPrime& P) { return P.residue_char() != 3; };
  cert = find_principal_prime(sys, {nonsquare_mod_17, not_3});
  CHECK(cert.prime.generator() == el(Q, 5, 0));

  // no congruences: the first positive prime is 2
  CongruenceSystem open{Q, {}, mpq_class(0), 8};
  cert = find_principal_prime(open);
  CHECK(cert.prime.generator() == el(Q, 2, 0));
  CHECK(cert.congruences_ok.empty());
}

TEST_CASE("search agrees with a progression scan") {
  struct Row {
    long r, m;
  };
  for (Row row : {Row{1, 8}, Row{3, 10}, Row{7, 12}, Row{1, 30}, Row{11, 14}}) {
    auto sys = rational_system({{row.m, row.r}});
    SearchCertificate cert = find_principal_prime(sys);
    CHECK(cert.prime.generator().c0() == mpq_class(progression_prime(row.r, row.m)));
  }
}

TEST_CASE("search over an imaginary quadratic field") {
  QuadraticField Fi(-1);

  // 1 mod 8: the norm-ordered stream certifies -7 (inert 7, degree 2) first
  CongruenceSystem sys{Fi, {cong(Fi, 8, 0, 1, 0)}, std::nullopt, 32};
  SearchCertificate cert = find_principal_prime(sys);
  CHECK(cert.prime.generator() == el(Fi, -7, 0));
  CHECK(cert.prime.degree() == 2);
  CHECK(cert.prime.residue_char() == 7);

  // insisting on degree 1 moves to -7-8i (norm 113, lex-first of the tie)
  std::vector<PrimeFilter> deg1 = {
      [](const PrincipalPrime& P) { return P.degree() == 1; }};
  cert = find_principal_prime(sys, deg1);
  CHECK(cert.prime.generator() == el(Fi, -7, -8));
  CHECK(cert.prime.residue_char() == 113);

  // unconstrained: the first non-unit by norm, lex tie-break picks -1-i
  CongruenceSystem open{Fi, {}, std::nullopt, 4};
  cert = find_principal_prime(open);
  CHECK(cert.prime.generator() == el(Fi, -1, -1));
  CHECK(cert.prime.residue_char() == 2);

  // a positivity bound is vacuous without real places
  CongruenceSystem bounded{Fi, {cong(Fi, 8, 0, 1, 0)}, mpq_class(0), 32};
  cert = find_principal_prime(bounded);
  CHECK(cert.prime.generator() == el(Fi, -7, 0));
  CHECK(cert.positivity_ok);
}

TEST_CASE("search determinism and exhaustion") {
  QuadraticField Q = QuadraticField::rationals();
  auto sys = rational_system({{8, 1}});
  SearchCertificate a = find_principal_prime(sys);
  SearchCertificate b = find_principal_prime(sys);
  CHECK(a.prime.generator() == b.prime.generator());
  CHECK(a.candidates_scanned == b.candidates_scanned);

  std::vector<PrimeFilter> none = {[](const PrincipalPrime&) { return false; }};
  CHECK(throws_containing([&] { find_principal_prime(sys, none); }, "enlarge radius"));

  // radius too small to reach any prime in the class
  CongruenceSystem tight{Q, {cong(Q, 34, 0, 1, 0)}, mpq_class(0), 1};
  CHECK(throws_containing([&] { find_principal_prime(tight); }, "enlarge radius"));
}
