#include "fibration.hpp"

#include <algorithm>

#include "algsys.hpp"
#include "int_utils.hpp"
#include "local_fields.hpp"

namespace wacert::fib {

using poly::BinaryForm;
using poly::MultiPoly;
using poly::PolyUV;
using poly::QBiPoly;
using poly::QPoly;
using poly::ZPoly;

namespace {

MultiPoly mono(const std::string& v) { return MultiPoly::var(v); }

// Sylvester resultant in one variable by cofactor expansion; the matrices
// here are at most 6 x 6
MultiPoly det_cofactor(std::vector<std::vector<MultiPoly>> m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  MultiPoly acc;
  int sign = 1;
  for (size_t i = 0; i < n; ++i) {
    if (!m[i][0].is_zero()) {
      std::vector<std::vector<MultiPoly>> sub;
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        sub.emplace_back(m[r].begin() + 1, m[r].end());
      }
      MultiPoly term = m[i][0] * det_cofactor(std::move(sub));
      acc = (sign > 0) ? acc + term : acc - term;
    }
    sign = -sign;
  }
  return acc;
}

MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
  int m = f.degree_in(var), n = g.degree_in(var);
  if (m < 0 || n < 0) throw MathError("resultant of the zero polynomial");
  if (m == 0 && n == 0) return MultiPoly(mpq_class(1));
  std::vector<MultiPoly> fc, gc;
  for (int i = 0; i <= m; ++i) fc.push_back(f.coefficient({{var, static_cast<unsigned>(i)}}));
  for (int i = 0; i <= n; ++i) gc.push_back(g.coefficient({{var, static_cast<unsigned>(i)}}));
  size_t size = static_cast<size_t>(m + n);
  std::vector<std::vector<MultiPoly>> mat(size, std::vector<MultiPoly>(size));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) mat[r][r + (m - i)] = fc[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) mat[n + r][r + (n - i)] = gc[i];
  return det_cofactor(std::move(mat));
}

ZPoly zpoly_of(const MultiPoly& p, const std::string& var) {
  mpz_class scale;
  ZPoly z = ZPoly::from_qpoly(p.to_qpoly(var), &scale);
  if (scale != 1) throw MathError("unexpected denominators in an integer elimination");
  return z;
}

PolyUV to_polyuv(const MultiPoly& p, const std::string& xvar, const std::string& tvar) {
  int dx = p.degree_in(xvar);
  std::vector<ZPoly> cs;
  for (int i = 0; i <= std::max(dx, 0); ++i)
    cs.push_back(zpoly_of(p.coefficient({{xvar, static_cast<unsigned>(i)}}), tvar));
  return PolyUV::from_x_coeffs(std::move(cs));
}

// bidegree of a bihomogeneous polynomial in ((u,v),(w,x)); throws otherwise
std::pair<unsigned, unsigned> infer_bidegree(const MultiPoly& s) {
  if (s.is_zero()) throw MathError("the zero section has no bidegree");
  auto pair_degree = [&](const std::string& va, const std::string& vb) {
    // pair degree of a term can exceed both single-variable degrees
    unsigned hi = static_cast<unsigned>(s.degree_in(va) + s.degree_in(vb));
    unsigned lo = static_cast<unsigned>(std::max(s.degree_in(va), s.degree_in(vb)));
    for (unsigned d = lo; d <= hi; ++d)
      if (s.homogeneous_in({va, vb}, d)) return d;
    throw MathError("section is not bihomogeneous");
  };
  return {pair_degree("u", "v"), pair_degree("w", "x")};
}

BinaryForm divide_form(const BinaryForm& f, const mpz_class& g) {
  std::vector<mpz_class> a;
  for (unsigned i = 0; i <= f.degree(); ++i) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), f.coeff_u(i).get_mpz_t(), g.get_mpz_t());
    if (r != 0) throw MathError("content division was not exact");
    a.push_back(q);
  }
  return BinaryForm(f.degree(), std::move(a));
}

std::vector<mpz_class> divisors_of(const mpz_class& n) {
  std::vector<mpz_class> divs = {1};
  for (const auto& [p, e] : factorize(n)) {
    size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned long k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

std::vector<mpq_class> rational_roots_of(const ZPoly& f) {
  std::vector<mpq_class> roots;
  if (f.is_zero()) throw MathError("rational roots of the zero polynomial");
  ZPoly g = f;
  // strip the root at zero
  unsigned low = 0;
  while (low <= static_cast<unsigned>(g.degree()) && g.coeff(low) == 0) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    std::vector<mpz_class> shifted(g.coeffs().begin() + low, g.coeffs().end());
    g = ZPoly::from_coeffs(std::move(shifted));
  }
  if (g.degree() < 1) {
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  QPoly q = g.to_qpoly();
  for (const auto& p : divisors_of(g.coeff(0)))
    for (const auto& d : divisors_of(g.lc())) {
      for (int sign = 1; sign >= -1; sign -= 2) {
        mpq_class cand(sign * p, d);
        cand.canonicalize();
        if (q.evaluate(cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

MultiPoly build_section(const QPoly& p_inf, const QPoly& p_zero) {
  for (const QPoly* p : {&p_inf, &p_zero}) {
    if (p->degree() != 4) throw MathError("section quartic does not have degree 4");
    if (QPoly::gcd(*p, p->derivative()).degree() != 0)
      throw MathError("section quartic is not separable");
  }
  if (poly::q_resultant(p_inf, p_zero) == 0)
    throw MathError("section quartics share a root");
  MultiPoly s;
  MultiPoly u2 = mono("u") * mono("u"), v2 = mono("v") * mono("v");
  for (int i = 0; i <= 4; ++i) {
    MultiPoly xw = MultiPoly(mpq_class(1));
    for (int k = 0; k < i; ++k) xw = xw * mono("x");
    for (int k = i; k < 4; ++k) xw = xw * mono("w");
    s = s + (u2.scaled(p_inf.coeff(i)) - v2.scaled(p_zero.coeff(i))) * xw;
  }
  return s;
}

MultiPoly canonical_section() {
  QPoly p_inf = QPoly::from_coeffs({mpq_class(-155), mpq_class(0), mpq_class(10), mpq_class(0), mpq_class(1)});
  QPoly p_zero = QPoly::from_coeffs({mpq_class(-155), mpq_class(0), mpq_class(0), mpq_class(0), mpq_class(1)});
  return build_section(p_inf, p_zero).scaled(137);
}

SmoothnessReport degenerate_locus_smooth(const MultiPoly& s) {
  infer_bidegree(s);  // validates bihomogeneity
  SmoothnessReport rep{true, {}};
  const std::pair<std::string, std::string> first[2] = {{"u", "v"}, {"v", "u"}};
  const std::pair<std::string, std::string> second[2] = {{"w", "x"}, {"x", "w"}};
  for (const auto& [fix1, free1] : first)
    for (const auto& [fix2, free2] : second) {
      MultiPoly f = s.substitute(fix1, mpq_class(1)).substitute(fix2, mpq_class(1));
      if (f.is_constant()) continue;  // the divisor misses this chart
      std::vector<MultiPoly> system = {f};
      for (const auto& v : {free1, free2}) {
        MultiPoly d = f.derivative(v);
        if (!d.is_zero()) system.push_back(d);
      }
      if (alg::affine_system_solvable(system, free1, free2)) {
        rep.smooth = false;
        rep.singular_charts.push_back(fix1 + "=1," + fix2 + "=1");
      }
    }
  return rep;
}

BranchReport branch_locus(const MultiPoly& s) {
  auto [d1, d2] = infer_bidegree(s);
  if (d2 != 4) throw MathError("branch locus needs a quartic family over the base");
  BinaryForm a[5];
  for (unsigned i = 0; i <= 4; ++i)
    a[i] = s.coefficient({{"x", i}, {"w", 4 - i}}).to_binary_form(d1);
  mpz_class content = 0;
  for (const auto& f : a) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), f.content().get_mpz_t());
  content = abs(content);
  BranchReport rep;
  rep.section_content = content;
  for (auto& f : a) f = divide_form(f, content);
  rep.disc = poly::quartic_discriminant<BinaryForm>(a[4], a[3], a[2], a[1], a[0]);
  if (rep.disc.is_zero())
    throw MathError("discriminant vanishes identically; the quartic family is degenerate");
  rep.disc_content = abs(rep.disc.content());
  rep.max_abs_coeff = rep.disc.max_abs_coeff();
  rep.squarefree = rep.disc.squarefree_part();
  rep.distinct_roots = rep.squarefree.degree();
  rep.infinity_is_root = rep.disc.v_multiplicity() > 0;
  ZPoly radical = rep.squarefree.affine();
  rep.rational_roots = rational_roots_of(radical);
  // peel the rational roots off the radical; a degree-4 remainder is the
  // closed orbit whose radicals the report compares against
  QPoly rest = radical.to_qpoly();
  for (const auto& r : rep.rational_roots) {
    QPoly q, rem;
    QPoly::divmod(rest, QPoly::from_coeffs({-r, mpq_class(1)}), q, rem);
    if (!rem.is_zero()) throw MathError("rational root deflation failed");
    rest = q;
  }
  rep.quartic_orbit = {};
  rep.printed_radicals_match = false;
  if (rest.degree() == 4) {
    ZPoly orbit = ZPoly::from_qpoly(rest).primitive_part();
    if (orbit.lc() < 0) orbit = -orbit;
    rep.quartic_orbit = orbit;
    // tau = +-sqrt((31 +- sqrt(-155)) / 36) satisfies (36 tau^2 - 31)^2 = -155
    ZPoly inner = ZPoly::from_coeffs({mpz_class(-31), mpz_class(0), mpz_class(36)});
    ZPoly identity = inner * inner + ZPoly(mpz_class(155));
    rep.printed_radicals_match = (orbit.scaled(36) == identity);
  }
  return rep;
}

MapData canonical_map() {
  return {MultiPoly::parse("yp^2 + 1"), MultiPoly::parse("xp*yp")};
}

MultiPoly curve_affine() { return MultiPoly::parse("yp^2 - xp^3 + 4*xp"); }

MultiPoly curve_projective() { return MultiPoly::parse("yp^2*zp - xp^3 + 4*xp*zp^2"); }

EPointReport verify_E_points() {
  MultiPoly curve = curve_projective();
  MultiPoly g0 = MultiPoly::parse("yp^2 + zp^2"), g1 = MultiPoly::parse("xp*yp");
  const std::vector<std::array<long, 3>> fiber = {
      {0, 1, 0}, {0, 0, 1}, {2, 0, 1}, {-2, 0, 1}};
  EPointReport rep{true, true, true};
  for (const auto& p : fiber) {
    std::map<std::string, mpq_class> at = {
        {"xp", mpq_class(p[0])}, {"yp", mpq_class(p[1])}, {"zp", mpq_class(p[2])}};
    if (curve.evaluate(at) != 0) rep.all_on_curve = false;
    if (g1.evaluate(at) != 0 || g0.evaluate(at) == 0) rep.all_map_to_infinity = false;
  }
  // the fiber must be exactly { xp yp = 0 } on E: the origin, plus the roots
  // of xp^3 - 4 xp with yp = 0, and nothing else
  ZPoly cubic = ZPoly::from_coeffs({mpz_class(0), mpz_class(-4), mpz_class(0), mpz_class(1)});
  ZPoly lin = ZPoly::from_coeffs({mpz_class(0), mpz_class(1)});
  ZPoly prod = lin;
  for (long r : {2L, -2L}) prod = prod * ZPoly::from_coeffs({mpz_class(-r), mpz_class(1)});
  if (prod != cubic) rep.fiber_is_two_torsion = false;
  for (const auto& p : fiber)
    if (p[2] == 1 && p[1] != 0) rep.fiber_is_two_torsion = false;
  return rep;
}

bool indeterminacy_disjoint() {
  // g0 = g1 = 0 forces either yp = zp = 0 or xp = 0, yp = +-i zp; none of the
  // finitely many candidates lies on the curve
  nf::QuadraticField K(-1);
  MultiPoly curve = curve_projective();
  nf::FieldElement i(K, 0, 1), one = nf::FieldElement::one(K), zero = nf::FieldElement::zero(K);
  std::vector<std::map<std::string, nf::FieldElement>> candidates = {
      {{"xp", one}, {"yp", zero}, {"zp", zero}},
      {{"xp", zero}, {"yp", i}, {"zp", one}},
      {{"xp", zero}, {"yp", -i}, {"zp", one}}};
  for (const auto& cand : candidates)
    if (curve.evaluate(cand, K).is_zero()) return false;
  return true;
}

namespace {

// cleared tangency condition of g0/g1 along the curve
MultiPoly ramification_polynomial(const MapData& map) {
  MultiPoly c = curve_affine();
  MultiPoly tx = map.g0.derivative("xp") * map.g1 - map.g0 * map.g1.derivative("xp");
  MultiPoly ty = map.g0.derivative("yp") * map.g1 - map.g0 * map.g1.derivative("yp");
  return tx * c.derivative("yp") - ty * c.derivative("xp");
}

}  // namespace

ZPoly ramification_locus(const MapData& map) {
  if (map.g0.is_zero() || map.g1.is_zero()) throw MathError("map component vanishes identically");
  MultiPoly w = ramification_polynomial(map);
  if (w.is_zero()) throw MathError("the map is constant along the curve");
  MultiPoly res = resultant_in(curve_affine(), w, "yp");
  if (res.is_zero()) throw MathError("ramification locus is the whole curve");
  return zpoly_of(res, "xp").squarefree_part();
}

PolyUV fiber_relation(const MapData& map) {
  MultiPoly fiber = map.g0 - MultiPoly::var("t") * map.g1;
  MultiPoly res = resultant_in(curve_affine(), fiber, "yp");
  if (res.is_zero()) throw MathError("fiber relation vanishes identically");
  return to_polyuv(res, "xp", "t");
}

ZPoly branch_poly(const MapData& map) {
  ZPoly s = ramification_locus(map);
  PolyUV s_uv = PolyUV::from_x_coeffs([&] {
    std::vector<ZPoly> cs;
    for (int i = 0; i <= s.degree(); ++i) cs.emplace_back(s.coeff(i));
    return cs;
  }());
  ZPoly r = PolyUV::resultant_x(s_uv, fiber_relation(map));
  if (r.is_zero()) throw MathError("branch polynomial vanishes identically");
  return r;
}

EtaleCertificate etale_over_branch(const MapData& map, const BinaryForm& section_branch) {
  EtaleCertificate cert;
  cert.g6_affine = section_branch.affine();
  cert.map_branch = branch_poly(map);
  cert.g12 = BinaryForm::from_affine(cert.map_branch, 12);
  ZPoly g = ZPoly::gcd(cert.g6_affine, cert.map_branch);
  cert.gcd_constant = (g.degree() == 0);
  if (cert.gcd_constant) {
    QPoly one = QPoly::ext_gcd(cert.g6_affine.to_qpoly(), cert.map_branch.to_qpoly(),
                               cert.bezout_s, cert.bezout_t);
    if (one != QPoly(mpq_class(1)) ||
        cert.bezout_s * cert.g6_affine.to_qpoly() + cert.bezout_t * cert.map_branch.to_qpoly() !=
            QPoly(mpq_class(1)))
      throw MathError("Bezout certificate failed to verify");
  }
  cert.infinity_shared =
      section_branch.v_multiplicity() > 0 && cert.g12.v_multiplicity() > 0;
  // the rational branch roots of the section get per-fiber witnesses
  MultiPoly c = curve_affine(), w = ramification_polynomial(map);
  PolyUV p1 = fiber_relation(map);
  ZPoly ram = ramification_locus(map);
  auto fiber_check = [&](long t0, mpz_class& res_out, bool& unram_out) {
    res_out = ZPoly::resultant(ram, p1.specialize_t(mpz_class(t0)));
    MultiPoly fiber = map.g0 - map.g1.scaled(mpq_class(t0));
    std::vector<MultiPoly> system = {c, w, fiber};
    unram_out = !alg::affine_system_solvable(system, "xp", "yp");
  };
  fiber_check(1, cert.fiber_res_plus1, cert.unramified_plus1);
  fiber_check(-1, cert.fiber_res_minus1, cert.unramified_minus1);
  cert.etale = cert.gcd_constant && !cert.infinity_shared && cert.fiber_res_plus1 != 0 &&
               cert.fiber_res_minus1 != 0 && cert.unramified_plus1 && cert.unramified_minus1;
  return cert;
}

EtaleCertificate etale_over_branch() {
  return etale_over_branch(canonical_map(), branch_locus(canonical_section()).squarefree);
}

ChartPointReport verify_point_on_X(const std::string& p2_chart, const std::string& p1_chart,
                                   const std::map<std::string, mpq_class>& values) {
  if (p2_chart != "xp" && p2_chart != "yp" && p2_chart != "zp")
    throw MathError("unknown curve chart: " + p2_chart);
  if (p1_chart != "w" && p1_chart != "x") throw MathError("unknown base chart: " + p1_chart);
  // gamma pulls the section back to the surface equation
  MultiPoly pulled = canonical_section()
                         .substitute("u", MultiPoly::parse("yp^2 + zp^2"))
                         .substitute("v", MultiPoly::parse("xp*yp"))
                         .substitute(p2_chart, mpq_class(1))
                         .substitute(p1_chart, mpq_class(1));
  MultiPoly curve = curve_projective().substitute(p2_chart, mpq_class(1));
  auto get = [&](const std::string& name) {
    auto it = values.find(name);
    if (it == values.end()) throw MathError("chart point misses coordinate " + name);
    return it->second;
  };
  std::map<std::string, mpq_class> point = values;
  point.erase(p2_chart);
  point.erase(p1_chart);
  for (const auto& v : {"y", "z", "t"}) point.erase(v);
  ChartPointReport rep;
  rep.curve_ok = (curve.evaluate(point) == 0);
  mpq_class t = get("t");
  rep.lhs = get("y") * get("y") - 17 * get("z") * get("z");
  rep.rhs = t * t * pulled.evaluate(point);
  rep.surface_ok = (rep.lhs == rep.rhs);
  return rep;
}

}  // namespace wacert::fib
