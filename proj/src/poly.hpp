#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "int_utils.hpp"
#include "nf_core.hpp"

namespace wacert::poly {

// Dense univariate polynomial over Q, coefficients ascending, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const mpq_class& constant);
  static QPoly from_coeffs(std::vector<mpq_class> ascending);
  static QPoly monomial(unsigned degree, const mpq_class& coeff);

  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpq_class& coeff(unsigned i) const;
  const mpq_class& lc() const;
  const std::vector<mpq_class>& coeffs() const { return c_; }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator-() const;
  QPoly scaled(const mpq_class& s) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return c_ != o.c_; }

  QPoly derivative() const;
  mpq_class evaluate(const mpq_class& x) const;
  QPoly monic() const;

  // a = q*b + r with deg r < deg b; throws on b = 0
  static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
  static QPoly gcd(QPoly a, QPoly b);  // monic, gcd(0,0) = 0
  // g*s + h*t = gcd (monic); for coprime inputs gives a Bezout certificate
  static QPoly ext_gcd(const QPoly& g, const QPoly& h, QPoly& s, QPoly& t);
  QPoly squarefree_part() const;  // monic radical

  std::string to_string(const std::string& var) const;

 private:
  std::vector<mpq_class> c_;
  void trim();
};

// Dense univariate polynomial over Z.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(const mpz_class& constant);
  static ZPoly from_coeffs(std::vector<mpz_class> ascending);
  // clears denominators; scale receives the lcm used
  static ZPoly from_qpoly(const QPoly& f, mpz_class* scale = nullptr);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& coeff(unsigned i) const;
  const mpz_class& lc() const;
  const std::vector<mpz_class>& coeffs() const { return c_; }

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly operator-() const;
  ZPoly scaled(const mpz_class& s) const;
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }
  bool operator!=(const ZPoly& o) const { return c_ != o.c_; }

  ZPoly derivative() const;
  mpz_class evaluate(const mpz_class& x) const;
  QPoly to_qpoly() const;

  mpz_class content() const;  // gcd of coefficients, sign of lc; content(0) = 0
  ZPoly primitive_part() const;

  // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r
  static ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b);
  static ZPoly gcd(ZPoly a, ZPoly b);  // primitive * gcd of contents, lc > 0
  // resultant via the subresultant PRS; matches the Sylvester determinant
  static mpz_class resultant(const ZPoly& a, const ZPoly& b);
  // (-1)^(n(n-1)/2) res(f, f') / lc(f); throws on deg < 2
  static mpz_class discriminant(const ZPoly& f);
  ZPoly squarefree_part() const;  // primitive radical, lc > 0

  std::string to_string(const std::string& var) const;

 private:
  std::vector<mpz_class> c_;
  void trim();
};

mpq_class q_resultant(const QPoly& a, const QPoly& b);

// disc(a x^4 + b x^3 + c x^2 + d x + e), the universal 16-term expansion;
// callers feed coefficient rings other than Z through T = ZPoly or MultiPoly
template <typename T>
T quartic_discriminant(const T& a, const T& b, const T& c, const T& d, const T& e) {
  auto n = [](long k, T v) {
    mpz_class m(k);
    return v.scaled(m);
  };
  T b2 = b * b, c2 = c * c, d2 = d * d, a2 = a * a, e2 = e * e;
  return n(256, a2 * a * e2 * e) + n(-192, a2 * b * d * e2) + n(-128, a2 * c2 * e2) +
         n(144, a2 * c * d2 * e) + n(-27, a2 * d2 * d2) + n(144, a * b2 * c * e2) +
         n(-6, a * b2 * d2 * e) + n(-80, a * b * c2 * d * e) + n(18, a * b * c * d2 * d) +
         n(16, a * c2 * c2 * e) + n(-4, a * c2 * c * d2) + n(-27, b2 * b2 * e2) +
         n(18, b2 * b * c * d * e) + n(-4, b2 * b * d2 * d) + n(-4, b2 * c2 * c * e) +
         n(1, b2 * c2 * d2);
}

// p(x, t) in Z[t][x]: c_[i] is the t-polynomial on x^i.
class PolyUV {
 public:
  PolyUV() = default;
  static PolyUV from_x_coeffs(std::vector<ZPoly> ascending);

  int deg_x() const { return static_cast<int>(c_.size()) - 1; }
  int deg_t() const;
  bool is_zero() const { return c_.empty(); }
  const ZPoly& x_coeff(unsigned i) const;

  ZPoly specialize_t(const mpz_class& t0) const;  // member of Z[x]

  // Res_x(f, g) in Z[t] by evaluation at integer points and interpolation;
  // points where either leading x-coefficient vanishes are skipped
  static ZPoly resultant_x(const PolyUV& f, const PolyUV& g);

 private:
  std::vector<ZPoly> c_;
  void trim();
};

// Homogeneous integer form in (u, v); a_[i] multiplies u^i v^(n-i).
class BinaryForm {
 public:
  BinaryForm() : n_(0), a_{mpz_class(0)} {}
  BinaryForm(unsigned degree, std::vector<mpz_class> ascending_u);
  // rehomogenize an affine polynomial in u to the stated degree
  static BinaryForm from_affine(const ZPoly& f, unsigned degree);

  unsigned degree() const { return n_; }
  bool is_zero() const;
  const mpz_class& coeff_u(unsigned i) const { return a_.at(i); }
  ZPoly affine() const;  // v = 1
  mpz_class evaluate(const mpz_class& u, const mpz_class& v) const;
  mpz_class max_abs_coeff() const;
  mpz_class content() const;
  BinaryForm primitive_part() const;
  BinaryForm squarefree_part() const;
  unsigned v_multiplicity() const;  // exponent of v dividing the form

  BinaryForm operator+(const BinaryForm& o) const;  // degrees must agree
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm scaled(const mpz_class& s) const;
  bool operator==(const BinaryForm& o) const { return n_ == o.n_ && a_ == o.a_; }

  std::string to_string(const std::string& u, const std::string& v) const;

 private:
  unsigned n_;
  std::vector<mpz_class> a_;
};

// Sparse polynomial over Q in the fixed variable universe below.
class MultiPoly {
 public:
  static const std::vector<std::string>& variables();  // u v w x xp yp zp y z t
  using Exp = std::array<unsigned char, 10>;

  MultiPoly() = default;
  explicit MultiPoly(const mpq_class& constant);
  static MultiPoly var(const std::string& name);
  static MultiPoly parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // throws unless constant

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const mpq_class& s) const;
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  MultiPoly derivative(const std::string& var) const;
  MultiPoly substitute(const std::string& var, const mpq_class& value) const;
  MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
  mpq_class evaluate(const std::map<std::string, mpq_class>& point) const;
  nf::FieldElement evaluate(const std::map<std::string, nf::FieldElement>& point,
                            const nf::QuadraticField& field) const;

  int degree_in(const std::string& var) const;  // -1 for the zero polynomial
  int total_degree() const;
  bool homogeneous_in(const std::vector<std::string>& vars, unsigned degree) const;

  // terms whose exponents match the pattern exactly, with those variables struck
  MultiPoly coefficient(const std::map<std::string, unsigned>& pattern) const;
  // the polynomial must involve no variables outside {u, v}; degree as given
  BinaryForm to_binary_form(unsigned degree) const;
  // univariate in var (others absent), integer coefficients after scaling by 1
  QPoly to_qpoly(const std::string& var) const;

  // graded lex, total degree descending; exact inverse of parse
  std::string to_string() const;

 private:
  struct ExpLess {
    bool operator()(const Exp& a, const Exp& b) const;
  };
  std::map<Exp, mpq_class, ExpLess> terms_;
  void prune();
  static int var_index(const std::string& name);
};

// Bivariate over Q as Q[x][y]: c_[i] multiplies y^i.
class QBiPoly {
 public:
  QBiPoly() = default;
  static QBiPoly from_y_coeffs(std::vector<QPoly> ascending);
  // reads off a MultiPoly supported on exactly the two named variables
  static QBiPoly from_multipoly(const MultiPoly& p, const std::string& xvar,
                                const std::string& yvar);

  int deg_y() const { return static_cast<int>(c_.size()) - 1; }
  int deg_x() const;
  bool is_zero() const { return c_.empty(); }
  const QPoly& y_coeff(unsigned i) const;

  QBiPoly operator+(const QBiPoly& o) const;
  QBiPoly operator*(const QBiPoly& o) const;

  QPoly specialize_y(const mpq_class& y0) const;
  bool is_constant() const;

  QPoly content() const;  // monic gcd of the y-coefficients
  QBiPoly primitive_part() const;
  // lc_y(b)^(deg_y a - deg_y b + 1) * a mod b, coefficients in Q[x]
  static QBiPoly pseudo_rem(const QBiPoly& a, const QBiPoly& b);
  static QBiPoly gcd(QBiPoly a, QBiPoly b);  // primitive PRS; content made monic
  // a / b when b divides a exactly in Q[x][y]; throws otherwise
  static QBiPoly divide_exact(const QBiPoly& a, const QBiPoly& b);

  // Res_y via fraction-free elimination on the Sylvester matrix over Q[x]
  static QPoly resultant_y(const QBiPoly& f, const QBiPoly& g);

 private:
  std::vector<QPoly> c_;
  void trim();
};

}  // namespace wacert::poly
