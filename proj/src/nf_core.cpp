#include "nf_core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wacert::nf {

namespace {

mpq_class mpq_from_string(const std::string& s) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw MathError("cannot parse rational: '" + s + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw MathError("cannot parse rational (zero denominator): '" + s + "'");
  q.canonicalize();
  return q;
}

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

QuadraticField::QuadraticField(const mpz_class& delta0) : delta0_(delta0) {
  if (delta0 == 0) throw MathError("delta0 must be a nonzero squarefree integer");
  if (!is_squarefree(delta0))
    throw MathError("delta0 must be squarefree: " + delta0.get_str());
  if (delta0 == 1) {
    omega_trace_ = 0;
    omega_norm_ = 0;
    disc_ = 1;
    return;
  }
  if (mod_nonneg(delta0, 4) == 1) {
    omega_trace_ = 1;
    omega_norm_ = (1 - delta0) / 4;
    disc_ = delta0;
  } else {
    omega_trace_ = 0;
    omega_norm_ = -delta0;
    disc_ = 4 * delta0;
  }
}

int QuadraticField::real_place_count() const {
  if (delta0_ == 1) return 1;
  return delta0_ > 0 ? 2 : 0;
}

FieldElement::FieldElement(QuadraticField field, mpq_class c0, mpq_class c1)
    : field_(std::move(field)), c0_(std::move(c0)), c1_(std::move(c1)) {
  // mpq_class(num, den) does not canonicalize on its own; every coordinate
  // must be in lowest terms for equality and hashing to be exact.
  if (mpz_sgn(mpq_denref(c0_.get_mpq_t())) == 0 ||
      mpz_sgn(mpq_denref(c1_.get_mpq_t())) == 0)
    throw MathError("zero denominator in field element coordinate");
  c0_.canonicalize();
  c1_.canonicalize();
  if (field_.is_rational() && c1_ != 0)
    throw MathError("elements of Q have no w component");
}

FieldElement FieldElement::from_int(const QuadraticField& field, const mpz_class& n) {
  return FieldElement(field, mpq_class(n), 0);
}
FieldElement FieldElement::zero(const QuadraticField& field) {
  return from_int(field, 0);
}
FieldElement FieldElement::one(const QuadraticField& field) {
  return from_int(field, 1);
}

bool FieldElement::is_integral() const {
  return c0_.get_den() == 1 && c1_.get_den() == 1;
}

static void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw MathError("elements of different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(*this, o);
  return FieldElement(field_, c0_ + o.c0_, c1_ + o.c1_);
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(*this, o);
  return FieldElement(field_, c0_ - o.c0_, c1_ - o.c1_);
}
FieldElement FieldElement::operator-() const {
  return FieldElement(field_, -c0_, -c1_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(*this, o);
  // w^2 = t*w - n
  const mpq_class t(field_.omega_trace()), n(field_.omega_norm());
  mpq_class r0 = c0_ * o.c0_ - n * c1_ * o.c1_;
  mpq_class r1 = c0_ * o.c1_ + c1_ * o.c0_ + t * c1_ * o.c1_;
  return FieldElement(field_, r0, r1);
}

FieldElement FieldElement::conjugate() const {
  if (field_.is_rational()) return *this;
  // conj(w) = t - w
  const mpq_class t(field_.omega_trace());
  return FieldElement(field_, c0_ + t * c1_, -c1_);
}

mpq_class FieldElement::norm() const {
  if (field_.is_rational()) return c0_;
  const mpq_class t(field_.omega_trace()), n(field_.omega_norm());
  return c0_ * c0_ + t * c0_ * c1_ + n * c1_ * c1_;
}

mpq_class FieldElement::trace() const {
  if (field_.is_rational()) return c0_;
  return 2 * c0_ + mpq_class(field_.omega_trace()) * c1_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw MathError("inverse of zero");
  if (field_.is_rational()) return FieldElement(field_, 1 / c0_, 0);
  mpq_class n = norm();
  FieldElement cj = conjugate();
  return FieldElement(field_, cj.c0_ / n, cj.c1_ / n);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && c0_ == o.c0_ && c1_ == o.c1_;
}

void FieldElement::surd_form(mpq_class& x, mpq_class& y) const {
  if (field_.is_rational()) {
    x = c0_;
    y = 0;
    return;
  }
  if (field_.omega_trace() == 0) {
    x = c0_;
    y = c1_;
  } else {  // w = (1 + sqrt(delta0))/2
    x = c0_ + c1_ / 2;
    y = c1_ / 2;
  }
}

bool FieldElement::is_integral_unit() const {
  if (!is_integral()) return false;
  return abs(norm()) == 1;
}

mpz_class FieldElement::denominator() const {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), c0_.get_den_mpz_t(), c1_.get_den_mpz_t());
  return l;
}

std::array<mpz_class, 2> FieldElement::integer_coords() const {
  if (!is_integral()) throw MathError("element is not integral");
  return {c0_.get_num(), c1_.get_num()};
}

std::string FieldElement::to_string() const {
  if (c1_ == 0) return mpq_str(c0_);
  auto wterm = [](const mpq_class& q) {  // q > 0
    return q == 1 ? std::string("w") : mpq_str(q) + "*w";
  };
  std::string out;
  if (c0_ != 0) {
    out = mpq_str(c0_);
    out += c1_ > 0 ? " + " + wterm(c1_) : " - " + wterm(-c1_);
  } else {
    out = c1_ > 0 ? wterm(c1_) : "-" + wterm(-c1_);
  }
  return out;
}

FieldElement FieldElement::parse(const QuadraticField& field, const std::string& input) {
  std::string s;
  for (char ch : input)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw MathError("empty element literal");
  // Split into signed terms at top-level '+'/'-' (not inside a rational's
  // leading sign or after '/').
  mpq_class c0 = 0, c1 = 0;
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw MathError("cannot parse element: '" + input + "'");
    bool has_w = !term.empty() && term.back() == 'w';
    if (has_w) {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      mpq_class coef = term.empty() ? mpq_class(1) : mpq_from_string(term);
      c1 += sign * coef;
    } else {
      c0 += sign * mpq_from_string(term);
    }
    i = j;
  }
  return FieldElement(field, c0, c1);
}

int FieldElement::cmp_lex(const FieldElement& a, const FieldElement& b) {
  int c = cmp(a.c0_, b.c0_);
  if (c != 0) return c < 0 ? -1 : 1;
  c = cmp(a.c1_, b.c1_);
  return c == 0 ? 0 : (c < 0 ? -1 : 1);
}

int surd_sign(const mpq_class& p, const mpq_class& q, const mpz_class& d) {
  if (q == 0 || d == 0) return sgn(p);
  if (d == 1) {
    mpq_class v = p + q;
    return sgn(v);
  }
  int sp = sgn(p), sq = sgn(q);
  if (sp == 0) return sq;
  if (sq == 0) return sp;
  if (sp == sq) return sp;
  // opposite signs: |p| vs |q|sqrt(d) decides
  mpq_class p2 = p * p, q2d = q * q * mpq_class(d);
  int c = cmp(p2, q2d);
  if (c == 0) return 0;
  return c > 0 ? sp : sq;
}

int cmp_abs_surd(const mpq_class& x, const mpq_class& y, const mpq_class& x2,
                 const mpq_class& y2, const mpz_class& d) {
  // compare squares: (x^2+y^2 d - x2^2 - y2^2 d) + (2xy - 2x2y2) sqrt(d)
  mpq_class p = x * x + y * y * mpq_class(d) - x2 * x2 - y2 * y2 * mpq_class(d);
  mpq_class q = 2 * (x * y - x2 * y2);
  return surd_sign(p, q, d);
}

bool totally_positive_and_large(const FieldElement& alpha, const mpq_class& bound) {
  const QuadraticField& K = alpha.field();
  if (K.real_place_count() == 0) return true;
  mpq_class x, y;
  alpha.surd_form(x, y);
  if (K.is_rational()) return x > bound;
  return surd_sign(x - bound, y, K.delta0()) > 0 &&
         surd_sign(x - bound, -y, K.delta0()) > 0;
}

std::vector<int> real_embedding_signs(const FieldElement& alpha) {
  const QuadraticField& K = alpha.field();
  if (K.real_place_count() == 0) return {};
  mpq_class x, y;
  alpha.surd_form(x, y);
  if (K.is_rational()) return {sgn(x)};
  return {surd_sign(x, y, K.delta0()), surd_sign(x, -y, K.delta0())};
}

int cmp_max_abs_embedding(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  const QuadraticField& K = a.field();
  if (K.is_rational()) {
    mpq_class pa = abs(a.c0()), pb = abs(b.c0());
    int c = cmp(pa, pb);
    return c == 0 ? 0 : (c < 0 ? -1 : 1);
  }
  if (K.delta0() < 0) {
    mpq_class na = a.norm(), nb = b.norm();  // = |emb|^2 >= 0
    int c = cmp(na, nb);
    return c == 0 ? 0 : (c < 0 ? -1 : 1);
  }
  mpq_class xa, ya, xb, yb;
  a.surd_form(xa, ya);
  b.surd_form(xb, yb);
  const mpz_class& d = K.delta0();
  // pick the embedding of larger absolute value for each element
  mpq_class ya_max = cmp_abs_surd(xa, ya, xa, -ya, d) >= 0 ? ya : mpq_class(-ya);
  mpq_class yb_max = cmp_abs_surd(xb, yb, xb, -yb, d) >= 0 ? yb : mpq_class(-yb);
  return cmp_abs_surd(xa, ya_max, xb, yb_max, d);
}

// ---- integer lattice machinery ----

namespace {

using Col = std::array<mpz_class, 2>;

struct EchelonState {
  std::vector<Col> A;
  std::vector<std::vector<mpz_class>> U;  // U[j] = column j of the transform
  bool track;

  void axpy(size_t dst, size_t src, const mpz_class& q) {  // col dst -= q*src
    A[dst][0] -= q * A[src][0];
    A[dst][1] -= q * A[src][1];
    if (track)
      for (size_t r = 0; r < U.size(); ++r) U[r][dst] -= q * U[r][src];
  }
  void negate(size_t j) {
    A[j][0] = -A[j][0];
    A[j][1] = -A[j][1];
    if (track)
      for (size_t r = 0; r < U.size(); ++r) U[r][j] = -U[r][j];
  }
};

// Reduces the columns so that exactly one has nonzero entry in `row`,
// returning its index (or npos when the row is identically zero).
size_t euclid_row(EchelonState& st, int row, const std::vector<size_t>& active) {
  const size_t npos = static_cast<size_t>(-1);
  while (true) {
    size_t piv = npos;
    for (size_t j : active) {
      if (st.A[j][row] == 0) continue;
      if (piv == npos || abs(st.A[j][row]) < abs(st.A[piv][row])) piv = j;
    }
    if (piv == npos) return npos;
    bool others = false;
    for (size_t j : active) {
      if (j == piv || st.A[j][row] == 0) continue;
      mpz_class q = floor_div(st.A[j][row], st.A[piv][row]);
      st.axpy(j, piv, q);
      if (st.A[j][row] != 0) others = true;
    }
    if (!others) {
      if (st.A[piv][row] < 0) st.negate(piv);
      return piv;
    }
  }
}

// Full column echelon; returns indices (j0, j1) of the columns holding
// (h00, 0) and (h01, h11); j0 == npos if the lattice has rank < 2 in row 0
// after clearing row 1.
struct EchelonResult {
  size_t j0, j1;
};

EchelonResult echelonize(EchelonState& st) {
  const size_t npos = static_cast<size_t>(-1);
  std::vector<size_t> all(st.A.size());
  for (size_t j = 0; j < all.size(); ++j) all[j] = j;
  size_t j1 = euclid_row(st, 1, all);
  std::vector<size_t> rest;
  for (size_t j : all)
    if (j != j1) rest.push_back(j);
  size_t j0 = euclid_row(st, 0, rest);
  if (j0 != npos && j1 != npos) {
    // normalize: 0 <= h01 < h00
    mpz_class q = floor_div(st.A[j1][0], st.A[j0][0]);
    st.axpy(j1, j0, q);
  }
  return {j0, j1};
}

}  // namespace

Hnf2 hnf_of_columns(const std::vector<Col>& cols) {
  EchelonState st{cols, {}, false};
  auto [j0, j1] = echelonize(st);
  if (j0 == static_cast<size_t>(-1) || j1 == static_cast<size_t>(-1))
    throw MathError("hnf_of_columns: lattice does not have rank 2");
  return Hnf2{st.A[j0][0], st.A[j1][0], st.A[j1][1]};
}

std::optional<std::vector<mpz_class>> lattice_solve(const std::vector<Col>& cols,
                                                    const Col& target) {
  const size_t n = cols.size();
  EchelonState st{cols, {}, true};
  st.U.assign(n, std::vector<mpz_class>(n, 0));
  for (size_t r = 0; r < n; ++r) st.U[r][r] = 1;
  auto [j0, j1] = echelonize(st);
  if (j0 == static_cast<size_t>(-1) || j1 == static_cast<size_t>(-1))
    throw MathError("lattice_solve: lattice does not have rank 2");
  const mpz_class &h00 = st.A[j0][0], &h01 = st.A[j1][0], &h11 = st.A[j1][1];
  if (target[1] % h11 != 0) return std::nullopt;
  mpz_class y1 = target[1] / h11;
  mpz_class rem = target[0] - y1 * h01;
  if (rem % h00 != 0) return std::nullopt;
  mpz_class y0 = rem / h00;
  std::vector<mpz_class> coeff(n, 0);
  for (size_t r = 0; r < n; ++r) coeff[r] = y0 * st.U[r][j0] + y1 * st.U[r][j1];
  return coeff;
}

// ---- residue rings ----

ResidueRing::ResidueRing(const QuadraticField& field, const FieldElement& mu)
    : field_(field), mu_(mu), hnf_{0, 0, 0} {
  if (mu.field() != field) throw MathError("modulus from wrong field");
  if (!mu.is_integral() || mu.is_zero())
    throw MathError("modulus must be a nonzero integral element");
  if (field.is_rational()) {
    hnf_ = Hnf2{abs(mu.c0().get_num()), 0, 1};
  } else {
    FieldElement w(field, 0, 1);
    FieldElement mw = mu * w;
    hnf_ = hnf_of_columns({mu.integer_coords(), mw.integer_coords()});
  }
  card_ = hnf_.det();
}

FieldElement ResidueRing::reduce(const FieldElement& alpha) const {
  if (alpha.field() != field_) throw MathError("element from wrong field");
  if (!alpha.is_integral()) throw MathError("reduce: element must be integral");
  auto [a0, a1] = alpha.integer_coords();
  mpz_class k = floor_div(a1, hnf_.h11);
  a1 -= k * hnf_.h11;
  a0 -= k * hnf_.h01;
  a0 = mod_nonneg(a0, hnf_.h00);
  return FieldElement(field_, mpq_class(a0), mpq_class(a1));
}

bool ResidueRing::is_zero(const FieldElement& alpha) const {
  return reduce(alpha).is_zero();
}

bool ResidueRing::congruent(const FieldElement& a, const FieldElement& b) const {
  return is_zero(a - b);
}

FieldElement ResidueRing::mul(const FieldElement& a, const FieldElement& b) const {
  return reduce(a * b);
}
FieldElement ResidueRing::add(const FieldElement& a, const FieldElement& b) const {
  return reduce(a + b);
}

FieldElement ResidueRing::pow(const FieldElement& a, const mpz_class& e) const {
  if (e < 0) throw MathError("pow: negative exponent");
  FieldElement acc = reduce(FieldElement::one(field_));
  FieldElement base = reduce(a);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (size_t i = bits; i-- > 0;) {
    acc = mul(acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, base);
  }
  return acc;
}

bool ResidueRing::is_unit(const FieldElement& alpha) const {
  if (!alpha.is_integral()) throw MathError("is_unit: element must be integral");
  if (field_.is_rational()) {
    mpz_class g;
    mpz_class a = alpha.c0().get_num();
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), hnf_.h00.get_mpz_t());
    return g == 1;
  }
  FieldElement w(field_, 0, 1);
  Hnf2 h = hnf_of_columns({alpha.integer_coords(), (alpha * w).integer_coords(),
                           mu_.integer_coords(), (mu_ * w).integer_coords()});
  return h.det() == 1;
}

FieldElement ResidueRing::inverse(const FieldElement& alpha) const {
  if (!alpha.is_integral()) throw MathError("inverse: element must be integral");
  if (field_.is_rational()) {
    mpz_class a = mod_nonneg(alpha.c0().get_num(), hnf_.h00);
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
               hnf_.h00.get_mpz_t());
    if (g != 1) throw MathError("inverse: element is not a unit in the quotient");
    return reduce(FieldElement(field_, mpq_class(s), 0));
  }
  FieldElement w(field_, 0, 1);
  auto sol = lattice_solve({alpha.integer_coords(), (alpha * w).integer_coords(),
                            mu_.integer_coords(), (mu_ * w).integer_coords()},
                           {mpz_class(1), mpz_class(0)});
  if (!sol) throw MathError("inverse: element is not a unit in the quotient");
  FieldElement inv(field_, mpq_class((*sol)[0]), mpq_class((*sol)[1]));
  return reduce(inv);
}

// ---- principal primes ----

namespace {

// v_P(beta) for nonzero integral beta: the largest n with beta / pi^n
// integral (pi generates a prime, so division only lowers the P-component).
unsigned integral_valuation(FieldElement beta, const FieldElement& pi) {
  unsigned v = 0;
  while (true) {
    FieldElement quot = beta / pi;
    if (!quot.is_integral()) return v;
    beta = quot;
    ++v;
  }
}

}  // namespace

bool two_is_inert(const QuadraticField& field) {
  if (field.is_rational()) return false;
  return mod_nonneg(field.delta0(), 8) == 5;
}

PrimeCertification PrimeCertification::certify(const FieldElement& pi) {
  const QuadraticField& K = pi.field();
  auto reject = [](std::string why) {
    return PrimeCertification{std::nullopt, std::move(why)};
  };
  if (!pi.is_integral()) return reject("generator is not integral");
  if (pi.is_zero()) return reject("generator is zero");
  mpq_class nq = pi.norm();
  mpz_class n = abs(nq.get_num());
  if (n == 1) return reject("generator is a unit");
  if (is_certified_prime(n)) {
    ResidueRing ring(K, pi);
    return PrimeCertification{PrincipalPrime(pi, n, 1, std::move(ring)), ""};
  }
  // degree-2 route: |N(pi)| = q^2 with pi an associate of an inert prime q
  if (!K.is_rational() && mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class q;
    mpz_sqrt(q.get_mpz_t(), n.get_mpz_t());
    if (is_certified_prime(q)) {
      FieldElement ratio = pi / FieldElement::from_int(K, q);
      if (!ratio.is_integral() || abs(ratio.norm()) != 1)
        return reject("norm is q^2 but generator is not an associate of q = " +
                      q.get_str());
      bool inert;
      if (q == 2) {
        inert = two_is_inert(K);
        if (!inert && mod_nonneg(K.delta0(), 8) != 1)
          return reject("q = 2 ramifies in K");
      } else if (K.delta0() % q == 0) {
        return reject("q = " + q.get_str() + " ramifies in K");
      } else {
        inert = legendre_symbol(K.delta0(), q) == -1;
      }
      if (!inert) return reject("q = " + q.get_str() + " is not inert in K");
      ResidueRing ring(K, pi);
      return PrimeCertification{PrincipalPrime(pi, q, 2, std::move(ring)), ""};
    }
  }
  return reject("norm " + n.get_str() + " is neither prime nor an inert prime squared");
}

bool PrincipalPrime::same_ideal_generator(const FieldElement& other) const {
  if (other.field() != field()) throw MathError("elements of different fields");
  if (!other.is_integral() || other.is_zero()) return false;
  FieldElement ratio = other / pi_;
  return ratio.is_integral() && abs(ratio.norm()) == 1;
}

bool PrincipalPrime::same_ideal(const PrincipalPrime& other) const {
  return same_ideal_generator(other.generator());
}

bool is_square_mod(const FieldElement& s, const PrincipalPrime& p) {
  if (!p.is_odd()) throw MathError("is_square_mod: place above 2 not supported");
  if (s.field() != p.field()) throw MathError("element from wrong field");
  if (s.is_zero()) throw MathError("is_square_mod: zero input");
  mpz_class den = s.denominator();
  FieldElement num = s * FieldElement::from_int(s.field(), den);
  FieldElement denom = FieldElement::from_int(s.field(), den);
  unsigned vn = integral_valuation(num, p.generator());
  unsigned vd = integral_valuation(denom, p.generator());
  if (vn != vd) throw MathError("is_square_mod: element has nonzero valuation");
  for (unsigned i = 0; i < vn; ++i) {
    num = num / p.generator();
    denom = denom / p.generator();
  }
  const ResidueRing& R = p.ring();
  FieldElement r = R.mul(R.reduce(num), R.inverse(R.reduce(denom)));
  mpz_class e = (p.residue_field_size() - 1) / 2;
  FieldElement x = R.pow(r, e);
  if (x == R.reduce(FieldElement::one(s.field()))) return true;
  if (R.is_zero(x + FieldElement::one(s.field()))) return false;
  throw MathError("is_square_mod: Euler criterion returned a non-unit (internal)");
}

}  // namespace wacert::nf
