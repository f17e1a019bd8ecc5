#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "poly.hpp"

namespace wacert::fib {

// The conic-bundle side: a section of bidegree (2, 4) on P1 x P1 with
// coordinates ((u : v), (w : x)), built from two quartics on the second
// factor. Everything downstream is exact integer linear algebra on it.

// u^2 * P_inf(w, x) - v^2 * P_zero(w, x) with the quartics homogenized to
// degree 4 in (w, x); rejects inseparable or non-coprime quartics
poly::MultiPoly build_section(const poly::QPoly& p_inf, const poly::QPoly& p_zero);

// 137 * [u^2 (x^4 + 10 x^2 w^2 - 155 w^4) - v^2 (x^4 - 155 w^4)]
poly::MultiPoly canonical_section();

struct SmoothnessReport {
  bool smooth;                              // no chart system has a common zero
  std::vector<std::string> singular_charts;  // e.g. "u=1,w=1"
};
// smoothness of the divisor {s = 0} in P1 x P1 via the four product-affine
// charts; Euler relations reduce each chart to a two-variable system
SmoothnessReport degenerate_locus_smooth(const poly::MultiPoly& s);

struct BranchReport {
  mpz_class section_content;       // integer content stripped before the discriminant
  poly::BinaryForm disc;           // discriminant of the primitive section, degree 12
  mpz_class disc_content;
  mpz_class max_abs_coeff;         // coefficient census of disc
  poly::BinaryForm squarefree;     // radical of disc
  unsigned distinct_roots;         // geometric roots of disc in P1
  bool infinity_is_root;
  std::vector<mpq_class> rational_roots;  // affine u/v values, ascending
  poly::ZPoly quartic_orbit;       // primitive non-rational factor when it has degree 4
  bool printed_radicals_match;     // quartic orbit equals ((36 tau^2 - 31)^2 + 155)/36
};
// branch locus of the conic bundle over P1: the (w, x)-discriminant of the
// section as a binary form in (u, v)
BranchReport branch_locus(const poly::MultiPoly& s);

// The elliptic side: E : yp^2 = xp^3 - 4 xp carries the degree-6 map
// gamma = (yp^2 + zp^2 : xp yp) to the same P1.

struct MapData {
  poly::MultiPoly g0, g1;  // affine components in (xp, yp) on the chart zp = 1
};
MapData canonical_map();
poly::MultiPoly curve_affine();      // yp^2 - xp^3 + 4 xp
poly::MultiPoly curve_projective();  // yp^2 zp - xp^3 + 4 xp zp^2

struct EPointReport {
  bool all_on_curve;
  bool fiber_is_two_torsion;  // the four points are exactly E[2] and the origin
  bool all_map_to_infinity;
};
// the fiber of gamma over (1 : 0)
EPointReport verify_E_points();

// the base locus {g0 = g1 = 0} of gamma misses E; checked by enumerating the
// finitely many candidates over Q(i)
bool indeterminacy_disjoint();

// squarefree x-locus of the ramification of g0/g1 on the curve
poly::ZPoly ramification_locus(const MapData& map);
// Res_y(curve, g0 - t g1) as an integer polynomial in (x, t)
poly::PolyUV fiber_relation(const MapData& map);
// branch values of the map on the curve: Res_x(ramification locus, fiber
// relation), an integer polynomial in t
poly::ZPoly branch_poly(const MapData& map);

struct EtaleCertificate {
  poly::ZPoly g6_affine;       // radical branch form of the section, affine
  poly::ZPoly map_branch;      // branch polynomial of the map, affine
  poly::BinaryForm g12;        // map branch rehomogenized to degree 12
  poly::QPoly bezout_s, bezout_t;  // s g6 + t branch = 1 when coprime
  bool gcd_constant;
  bool infinity_shared;            // both vanish at (1 : 0); must be false
  mpz_class fiber_res_plus1, fiber_res_minus1;   // Res_x(ram locus, fiber at t = +-1)
  bool unramified_plus1, unramified_minus1;      // no ramification point on those fibers
  bool etale;
};
// decides whether the two branch loci are disjoint, with Bezout cofactors as
// the positive certificate and per-fiber checks at the rational branch roots
EtaleCertificate etale_over_branch(const MapData& map, const poly::BinaryForm& section_branch);
EtaleCertificate etale_over_branch();  // canonical map against the canonical section

struct ChartPointReport {
  bool curve_ok;    // the P2 coordinates satisfy the curve chart equation
  bool surface_ok;  // y^2 - 17 z^2 equals t^2 times the pulled-back section
  mpq_class lhs, rhs;
};
// chart check for the glued surface: p2_chart in {xp, yp, zp} and p1_chart in
// {w, x} name the coordinates set to 1; values supplies the remaining
// coordinates xp/yp/zp, w/x, and the fiber triple y, z, t
ChartPointReport verify_point_on_X(const std::string& p2_chart, const std::string& p1_chart,
                                   const std::map<std::string, mpq_class>& values);

}  // namespace wacert::fib
