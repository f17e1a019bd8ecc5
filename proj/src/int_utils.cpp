#include "int_utils.hpp"

namespace wacert {

namespace {

mpz_class powmod(mpz_class base, mpz_class exp, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// One Miller-Rabin round; n odd >= 3, n-1 = 2^s * d with d odd.
bool mr_witness(const mpz_class& n, const mpz_class& d, unsigned s,
                const mpz_class& base) {
  mpz_class a = base % n;
  if (a == 0) return false;  // base divisible by n proves nothing
  mpz_class x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witnessed
}

// Sorting-free deterministic base set; proven complete below 3.317e24
// (Sorenson-Webster).
const long kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

mpz_class pollard_rho(const mpz_class& n) {
  // Brent's cycle variant; n odd composite, not a prime power of interest.
  mpz_class c = 1;
  while (true) {
    mpz_class x = 2, y = 2, d = 1;
    mpz_class saved_x;
    unsigned long power = 1, lam = 0;
    auto step = [&](mpz_class v) { return (v * v + c) % n; };
    x = 2;
    y = step(x);
    while (d == 1) {
      if (power == lam) {
        saved_x = x;
        x = y;
        power *= 2;
        lam = 0;
      }
      y = step(y);
      ++lam;
      mpz_class diff = y > x ? y - x : x - y;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      (void)saved_x;
    }
    if (d != 1 && d != n) return d;
    c += 1;  // rare cycle failure: retry with another polynomial
  }
}

void factor_rec(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (is_certified_prime(n)) {
    out[n] += 1;
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_certified_prime(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m < 2) return false;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  static const mpz_class kDeterministicBound("3317044064679887385961981");
  mpz_class d = m - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  if (m < kDeterministicBound) {
    for (long b : kMrBases) {
      if (mr_witness(m, d, s, mpz_class(b))) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(m.get_mpz_t(), 40) > 0;
}

std::map<mpz_class, unsigned> factorize(const mpz_class& n) {
  if (n == 0) throw MathError("factorize: zero input");
  std::map<mpz_class, unsigned> out;
  mpz_class m = abs(n);
  for (long p = 2; p < 100000 && m > 1; p = (p == 2 ? 3 : p + 2)) {
    if (mpz_class(p) * p > m) break;
    while (m % p == 0) {
      out[mpz_class(p)] += 1;
      m /= p;
    }
  }
  if (m > 1) factor_rec(m, out);
  return out;
}

bool is_squarefree(const mpz_class& n) {
  if (n == 0) throw MathError("is_squarefree: zero input");
  for (const auto& [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

int legendre_symbol(const mpz_class& a, const mpz_class& p) {
  if (p <= 2 || !is_certified_prime(p))
    throw MathError("legendre_symbol: modulus must be an odd prime");
  int r = mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
  return r;
}

unsigned int_valuation(mpz_class n, const mpz_class& p) {
  if (n == 0) throw MathError("int_valuation: zero input");
  if (p < 2) throw MathError("int_valuation: bad prime");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
  if (m == 0) throw MathError("mod_nonneg: zero modulus");
  mpz_class mm = abs(m);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  return r;
}

}  // namespace wacert
