#include "algsys.hpp"

#include <algorithm>

namespace wacert::alg {

using poly::MultiPoly;
using poly::QBiPoly;
using poly::QPoly;

namespace {

// raised when an element of Q[x]/(m) turns out to be a zero divisor
struct Split {
  QPoly divisor;  // proper nonconstant factor of the branch modulus
};

QPoly reduce_mod(const QPoly& a, const QPoly& m) {
  QPoly q, r;
  QPoly::divmod(a, m, q, r);
  return r;
}

// coefficients reduced mod m, zero leading coefficients trimmed; a leading
// coefficient that is a zero divisor raises Split instead
QBiPoly normalize_mod(const QBiPoly& f, const QPoly& m) {
  std::vector<QPoly> cs;
  for (int i = 0; i <= std::max(f.deg_y(), 0); ++i) cs.push_back(reduce_mod(f.y_coeff(i), m));
  while (!cs.empty()) {
    const QPoly& top = cs.back();
    if (top.is_zero()) {
      cs.pop_back();
      continue;
    }
    QPoly d = QPoly::gcd(top, m);
    if (d.degree() > 0 && d.degree() < m.degree()) throw Split{d};
    if (d.degree() == m.degree()) {
      // top vanishes on the whole branch
      cs.pop_back();
      continue;
    }
    break;
  }
  return QBiPoly::from_y_coeffs(std::move(cs));
}

// inverse of a unit in Q[x]/(m); callers normalize first
QPoly invert_mod(const QPoly& a, const QPoly& m) {
  QPoly s, t;
  QPoly g = QPoly::ext_gcd(a, m, s, t);
  if (g.degree() != 0) throw MathError("inverting a zero divisor");
  return reduce_mod(s, m);
}

QBiPoly scale_mod(const QBiPoly& f, const QPoly& s, const QPoly& m) {
  std::vector<QPoly> cs;
  for (int i = 0; i <= std::max(f.deg_y(), 0); ++i)
    cs.push_back(reduce_mod(f.y_coeff(i) * s, m));
  return QBiPoly::from_y_coeffs(std::move(cs));
}

// remainder of a by monic-in-y b, coefficients in Q[x]/(m)
QBiPoly rem_mod(QBiPoly a, const QBiPoly& b, const QPoly& m) {
  a = normalize_mod(a, m);
  while (!a.is_zero() && a.deg_y() >= b.deg_y()) {
    unsigned k = static_cast<unsigned>(a.deg_y() - b.deg_y());
    QPoly top = a.y_coeff(a.deg_y());
    std::vector<QPoly> cs;
    for (int i = 0; i <= a.deg_y(); ++i) cs.push_back(a.y_coeff(i));
    for (int i = 0; i <= b.deg_y(); ++i)
      cs[k + i] = reduce_mod(cs[k + i] - top * b.y_coeff(i), m);
    a = normalize_mod(QBiPoly::from_y_coeffs(std::move(cs)), m);
  }
  return a;
}

// gcd of the residues of the system in (Q[x]/(m))[y] decides whether some
// root of m carries a common y-root; m is squarefree so Q[x]/(m) is a product
// of fields and Split refines the branch when a zero divisor appears
bool branch_solvable(const QPoly& m, const std::vector<QBiPoly>& system) {
  try {
    QBiPoly g;
    bool any = false;
    for (const auto& f : system) {
      QBiPoly r = normalize_mod(f, m);
      if (r.is_zero()) continue;  // vanishes identically on this branch
      if (!any) {
        g = std::move(r);
        any = true;
        continue;
      }
      // Euclid on (g, r) with monic divisors
      QBiPoly a = std::move(g), b = std::move(r);
      while (!b.is_zero()) {
        QPoly inv = invert_mod(b.y_coeff(b.deg_y()), m);
        QBiPoly bm = scale_mod(b, inv, m);
        QBiPoly rem = rem_mod(a, bm, m);
        a = std::move(bm);
        b = std::move(rem);
      }
      g = std::move(a);
      if (g.deg_y() == 0) return false;  // a unit: no common y-root anywhere on the branch
    }
    if (!any) return true;  // every member vanishes on the branch; any y works
    return g.deg_y() >= 1;
  } catch (const Split& s) {
    QPoly q, r;
    QPoly::divmod(m, s.divisor, q, r);
    if (!r.is_zero()) throw MathError("branch split was not exact");
    return branch_solvable(s.divisor, system) || branch_solvable(q, system);
  }
}

bool solvable_rec(std::vector<QBiPoly> system);

// zeros(pivot) and zeros(other) share the component zeros(h); the system has
// a common zero iff one of the two refined systems does
bool split_on_common_factor(const std::vector<QBiPoly>& system, size_t pivot, size_t other,
                            const QBiPoly& h) {
  std::vector<QBiPoly> with_h, without_h;
  for (size_t i = 0; i < system.size(); ++i) {
    if (i == pivot || i == other) continue;
    with_h.push_back(system[i]);
    without_h.push_back(system[i]);
  }
  with_h.push_back(h);
  without_h.push_back(QBiPoly::divide_exact(system[pivot], h));
  without_h.push_back(QBiPoly::divide_exact(system[other], h));
  return solvable_rec(with_h) || solvable_rec(without_h);
}

bool solvable_rec(std::vector<QBiPoly> system) {
  for (const auto& f : system)
    if (f.is_zero())
      throw MathError("degenerate elimination: a system member is the zero polynomial");
  for (const auto& f : system)
    if (f.is_constant()) return false;  // nonzero constant
  if (system.size() == 1) return true;  // a nonconstant polynomial has zeros over Qbar

  QBiPoly common = system[0];
  for (size_t i = 1; i < system.size(); ++i) common = QBiPoly::gcd(common, system[i]);
  if (!common.is_constant()) return true;  // a whole common component

  // finite candidate set for the x-coordinate
  size_t pivot = system.size();
  for (size_t i = 0; i < system.size(); ++i) {
    if (system[i].deg_y() == 0) continue;
    if (pivot == system.size() || system[i].deg_y() < system[pivot].deg_y()) pivot = i;
  }
  QPoly r;
  if (pivot == system.size()) {
    // every member is a polynomial in x alone
    for (const auto& f : system) r = QPoly::gcd(r, f.y_coeff(0));
    return r.degree() >= 1;  // common x-root, y unconstrained
  }
  for (size_t i = 0; i < system.size(); ++i) {
    if (i == pivot) continue;
    if (system[i].deg_y() == 0) {
      r = QPoly::gcd(r, system[i].y_coeff(0));
      continue;
    }
    QPoly res = QBiPoly::resultant_y(system[pivot], system[i]);
    if (res.is_zero())
      return split_on_common_factor(system, pivot, i,
                                    QBiPoly::gcd(system[pivot], system[i]));
    r = QPoly::gcd(r, res);
  }
  if (r.degree() <= 0) return false;  // projections admit no candidate
  return branch_solvable(r.squarefree_part(), system);
}

}  // namespace

bool affine_system_solvable(const std::vector<QBiPoly>& system) {
  if (system.empty()) throw MathError("empty polynomial system");
  return solvable_rec(system);
}

bool affine_system_solvable(const std::vector<MultiPoly>& system, const std::string& xvar,
                            const std::string& yvar) {
  std::vector<QBiPoly> fs;
  fs.reserve(system.size());
  for (const auto& p : system) fs.push_back(QBiPoly::from_multipoly(p, xvar, yvar));
  return affine_system_solvable(fs);
}

}  // namespace wacert::alg
