#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "fibration.hpp"
#include "int_utils.hpp"
#include "poly.hpp"

using namespace wacert;
using namespace wacert::fib;
using namespace wacert::poly;

namespace {

std::mt19937 rng(55331);

long rnd(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

QPoly q(std::vector<long> ascending) {
  std::vector<mpq_class> c(ascending.begin(), ascending.end());
  return QPoly::from_coeffs(std::move(c));
}

ZPoly z(std::vector<long> ascending) {
  std::vector<mpz_class> c(ascending.begin(), ascending.end());
  return ZPoly::from_coeffs(std::move(c));
}

const ZPoly kBranchGolden =
    ZPoly::from_coeffs({mpz_class(3356224), mpz_class(0), mpz_class(-4704896), mpz_class(0),
                        mpz_class(-492480), mpz_class(0), mpz_class(1563083), mpz_class(0),
                        mpz_class(77824), mpz_class(0), mpz_class(110592)});

}  // namespace

TEST_CASE("section construction guards its inputs") {
  CHECK_THROWS_AS(build_section(q({1, 0, 0, 1}), q({-155, 0, 0, 0, 1})), MathError);
  // (x^2 - 1)^2 is inseparable
  CHECK_THROWS_AS(build_section(q({1, 0, -2, 0, 1}), q({-155, 0, 0, 0, 1})), MathError);
  // x^4 - 1 and (x - 1)(x^3 + 2) share the root x = 1
  CHECK_THROWS_AS(build_section(q({-1, 0, 0, 0, 1}), q({-2, 2, 0, -1, 1})), MathError);
  MultiPoly s = build_section(q({-155, 0, 10, 0, 1}), q({-155, 0, 0, 0, 1}));
  CHECK(s.scaled(137) == canonical_section());
  CHECK(canonical_section().homogeneous_in({"u", "v"}, 2));
  CHECK(canonical_section().homogeneous_in({"w", "x"}, 4));
}

TEST_CASE("the reference degeneracy divisor is smooth") {
  SmoothnessReport rep = degenerate_locus_smooth(canonical_section());
  CHECK(rep.smooth);
  CHECK(rep.singular_charts.empty());
}

TEST_CASE("singular sections are flagged with their charts") {
  MultiPoly sq = MultiPoly::parse("u^2*x^4 + v^2*w^4");
  SmoothnessReport rep = degenerate_locus_smooth(sq);
  CHECK_FALSE(rep.smooth);
  // singular exactly at ((0:1),(0:1)) and ((1:0),(1:0))
  REQUIRE(rep.singular_charts.size() == 2);
  CHECK(rep.singular_charts[0] == "u=1,w=1");
  CHECK(rep.singular_charts[1] == "v=1,x=1");

  MultiPoly dbl = MultiPoly::parse("u*x - v*w") * MultiPoly::parse("u*x - v*w");
  SmoothnessReport rep2 = degenerate_locus_smooth(dbl);
  CHECK_FALSE(rep2.smooth);
  CHECK(rep2.singular_charts.size() == 4);

  CHECK_THROWS_AS(degenerate_locus_smooth(MultiPoly::parse("u*x - v")), MathError);
  CHECK_THROWS_AS(degenerate_locus_smooth(MultiPoly()), MathError);
}

TEST_CASE("branch locus of the reference section") {
  BranchReport rep = branch_locus(canonical_section());
  CHECK(rep.section_content == 137);
  CHECK(rep.disc.degree() == 12);
  CHECK(rep.disc_content == 992000);
  CHECK(rep.max_abs_coeff == mpz_class("20296320000"));

  // disc = -992000 (u^2 - v^2)^2 (36 u^4 - 62 u^2 v^2 + 31 v^4)^2
  BinaryForm a(2, {mpz_class(-1), mpz_class(0), mpz_class(1)});
  BinaryForm b(4, {mpz_class(31), mpz_class(0), mpz_class(-62), mpz_class(0), mpz_class(36)});
  CHECK(rep.disc == (a * a * b * b).scaled(mpz_class(-992000)));

  CHECK(rep.squarefree.degree() == 6);
  CHECK(rep.squarefree.affine() == z({-31, 0, 93, 0, -98, 0, 36}));
  CHECK(rep.distinct_roots == 6);
  CHECK_FALSE(rep.infinity_is_root);
  REQUIRE(rep.rational_roots.size() == 2);
  CHECK(rep.rational_roots[0] == mpq_class(-1));
  CHECK(rep.rational_roots[1] == mpq_class(1));
  CHECK(rep.quartic_orbit == z({31, 0, -62, 0, 36}));
  CHECK(rep.printed_radicals_match);
}

TEST_CASE("swapping the two quartics mirrors the branch form") {
  for (int it = 0; it < 6; ++it) {
    QPoly pa, pb;
    for (;;) {
      std::vector<mpq_class> ca, cb;
      for (int i = 0; i < 4; ++i) ca.emplace_back(rnd(-6, 6));
      for (int i = 0; i < 4; ++i) cb.emplace_back(rnd(-6, 6));
      ca.emplace_back(1);
      cb.emplace_back(1);
      pa = QPoly::from_coeffs(std::move(ca));
      pb = QPoly::from_coeffs(std::move(cb));
      try {
        build_section(pa, pb);
        break;
      } catch (const MathError&) {
      }
    }
    BranchReport r1 = branch_locus(build_section(pa, pb));
    BranchReport r2 = branch_locus(build_section(pb, pa));
    for (unsigned i = 0; i <= 12; ++i)
      CHECK(r1.disc.coeff_u(i) == r2.disc.coeff_u(12 - i));
  }
}

TEST_CASE("the fiber over infinity is the two-torsion") {
  EPointReport rep = verify_E_points();
  CHECK(rep.all_on_curve);
  CHECK(rep.fiber_is_two_torsion);
  CHECK(rep.all_map_to_infinity);
  CHECK(indeterminacy_disjoint());
}

TEST_CASE("ramification locus of the reference map") {
  ZPoly s = ramification_locus(canonical_map());
  CHECK(s == z({0, 12, -16, -5, 0, 0, 1}));
  CHECK(ZPoly::discriminant(s) == mpz_class(-105814289664));
}

TEST_CASE("fiber relation of the reference map") {
  PolyUV p1 = fiber_relation(canonical_map());
  CHECK(p1.deg_x() == 6);
  CHECK(p1.deg_t() == 2);
  ZPoly base = z({1, -4, 0, 1});  // x^3 - 4 x + 1
  CHECK(p1.specialize_t(0) == base * base);
  // the leading x-coefficient stays 1; the t-part only reaches x^5
  CHECK(p1.specialize_t(1).degree() == 6);
  CHECK(p1.x_coeff(6) == ZPoly(mpz_class(1)));
  CHECK(p1.x_coeff(5) == z({0, 0, -1}));
}

TEST_CASE("branch polynomial of the reference map") {
  ZPoly r = branch_poly(canonical_map());
  CHECK(r == kBranchGolden);
  CHECK(r.evaluate(1) == -89653);
  CHECK(r.evaluate(-1) == -89653);
}

TEST_CASE("the two branch loci are disjoint, with certificates") {
  EtaleCertificate cert = etale_over_branch();
  CHECK(cert.gcd_constant);
  CHECK(cert.g6_affine == z({-31, 0, 93, 0, -98, 0, 36}));
  CHECK(cert.map_branch == kBranchGolden);
  CHECK(cert.g12.v_multiplicity() == 2);
  CHECK(cert.g12.affine() == kBranchGolden);
  // the Bezout pair really certifies coprimality
  CHECK(cert.bezout_s * cert.g6_affine.to_qpoly() + cert.bezout_t * cert.map_branch.to_qpoly() ==
        QPoly(mpq_class(1)));
  CHECK_FALSE(cert.infinity_shared);
  CHECK(cert.fiber_res_plus1 == -89653);
  CHECK(cert.fiber_res_minus1 == -89653);
  CHECK(cert.unramified_plus1);
  CHECK(cert.unramified_minus1);
  CHECK(cert.etale);
}

TEST_CASE("a perturbed map fails the disjointness test") {
  MapData pert{MultiPoly::parse("2*yp^2 + 2"), MultiPoly::parse("xp")};
  ZPoly bp = branch_poly(pert);
  CHECK(bp.evaluate(1) == 0);
  EtaleCertificate cert = etale_over_branch(pert, branch_locus(canonical_section()).squarefree);
  CHECK_FALSE(cert.gcd_constant);
  CHECK(cert.fiber_res_plus1 == 0);
  CHECK_FALSE(cert.unramified_plus1);
  CHECK_FALSE(cert.etale);
}

TEST_CASE("chart check accepts the reference point") {
  std::map<std::string, mpq_class> vals = {{"xp", mpq_class(0)}, {"yp", mpq_class(0)},
                                           {"x", mpq_class(1)},  {"y", mpq_class(48)},
                                           {"z", mpq_class(36)}, {"t", mpq_class(1)}};
  ChartPointReport rep = verify_point_on_X("zp", "w", vals);
  CHECK(rep.curve_ok);
  CHECK(rep.surface_ok);
  CHECK(rep.lhs == -19728);
  CHECK(rep.rhs == -19728);

  vals["t"] = 2;
  ChartPointReport bad = verify_point_on_X("zp", "w", vals);
  CHECK(bad.curve_ok);
  CHECK_FALSE(bad.surface_ok);

  std::map<std::string, mpq_class> off = {{"yp", mpq_class(1)}, {"zp", mpq_class(1)},
                                          {"x", mpq_class(1)},  {"y", mpq_class(0)},
                                          {"z", mpq_class(0)},  {"t", mpq_class(1)}};
  ChartPointReport rep2 = verify_point_on_X("xp", "w", off);
  CHECK_FALSE(rep2.curve_ok);

  CHECK_THROWS_AS(verify_point_on_X("zp", "w", {{"xp", mpq_class(0)}}), MathError);
  CHECK_THROWS_AS(verify_point_on_X("ww", "w", vals), MathError);
}

TEST_CASE("chart transition preserves the surface equation") {
  for (int it = 0; it < 25; ++it) {
    mpq_class xp(rnd(-5, 5), rnd(1, 3)), yp(rnd(-5, 5), rnd(1, 3));
    mpq_class x0(rnd(1, 7), rnd(1, 3)), t(rnd(-4, 4), rnd(1, 2));
    xp.canonicalize();
    yp.canonicalize();
    x0.canonicalize();
    t.canonicalize();
    mpq_class y(rnd(-5, 5)), zz(rnd(-5, 5));
    std::map<std::string, mpq_class> in_w = {{"xp", xp}, {"yp", yp}, {"x", x0},
                                             {"y", y},   {"z", zz}, {"t", t}};
    std::map<std::string, mpq_class> in_x = {{"xp", xp},          {"yp", yp},
                                             {"w", 1 / x0},       {"y", y},
                                             {"z", zz},           {"t", t * x0 * x0}};
    ChartPointReport a = verify_point_on_X("zp", "w", in_w);
    ChartPointReport b = verify_point_on_X("zp", "x", in_x);
    CHECK(a.rhs == b.rhs);
    CHECK(a.lhs == b.lhs);
  }
}
