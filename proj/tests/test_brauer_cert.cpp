#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <random>
#include <string>

#include "brauer_cert.hpp"
#include "chatelet.hpp"
#include "doctest.h"
#include "json.hpp"
#include "local_fields.hpp"
#include "nf_core.hpp"
#include "symbols.hpp"

using namespace wacert;
using namespace wacert::brauer;
using chat::ChateletParams;
using local::RamifiedPlace;
using local::RelElement;
using nf::FieldElement;
using nf::QuadraticField;

namespace {

FieldElement el(const QuadraticField& K, long c0, long c1 = 0) {
  return FieldElement(K, mpq_class(c0), mpq_class(c1));
}

ChateletParams reference_params() {
  QuadraticField Q = QuadraticField::rationals();
  return chat::from_elements(Q, el(Q, 17), el(Q, 137), el(Q, 5), el(Q, -31));
}

bool throws_containing(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const MathError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

// (u1 + v1 sqrt(D))(u2 + v2 sqrt(D))
RelElement rel_mul(const RelElement& s, const RelElement& t, const FieldElement& D) {
  return {s.u * t.u + D * s.v * t.v, s.u * t.v + s.v * t.u};
}

}  // namespace

TEST_CASE("the two adelic points have distinct invariants") {
  WAFailureCertificate cert = certify_wa_failure(reference_params());
  CHECK(cert.place_over == "5");
  CHECK(cert.a_nonsquare_mod_P);
  CHECK(cert.archimedean_trivial);
  CHECK(cert.invariants_differ);

  QuadraticField Q = QuadraticField::rationals();
  CHECK(cert.point_even.x == el(Q, 1) / el(Q, 5));
  CHECK(cert.point_even.val_symbol_arg == -4);
  CHECK(cert.point_even.val_quartic == -8);
  CHECK(cert.point_even.invariant_num == 0);
  CHECK(cert.point_even.symbol == 1);

  CHECK(cert.point_odd.x == el(Q, 5));
  CHECK(cert.point_odd.val_symbol_arg == 1);
  CHECK(cert.point_odd.val_quartic == 2);
  CHECK(cert.point_odd.invariant_num == 1);
  CHECK(cert.point_odd.symbol == -1);
}

TEST_CASE("invariant at hand-checked points") {
  ChateletParams p = reference_params();
  QuadraticField Q = p.field;

  // norm of 5 + sqrt(180) is 25 - 180 = -155, odd valuation at 5
  PointEval at0 = quaternion_invariant(p, el(Q, 0));
  CHECK(at0.val_symbol_arg == 1);
  CHECK(at0.val_quartic == 2);
  CHECK(at0.invariant_num == 1);

  // norm of 30 + sqrt(180) is 900 - 180 = 720 = 16 * 9 * 5
  PointEval at5 = quaternion_invariant(p, el(Q, 5));
  CHECK(at5.val_symbol_arg == 1);
  CHECK(at5.symbol == -1);

  // x = 2: norm of 9 + sqrt(180) is 81 - 180 = -99, a unit at 5
  PointEval at2 = quaternion_invariant(p, el(Q, 2));
  CHECK(at2.val_symbol_arg == 0);
  CHECK(at2.invariant_num == 0);
}

TEST_CASE("the invariant only sees the square class of the argument") {
  ChateletParams p = reference_params();
  RamifiedPlace P(p.c, p.D);
  std::mt19937 rng(5501);
  auto rnd = [&] { return static_cast<long>(rng() % 41) - 20; };
  for (int trial = 0; trial < 100; ++trial) {
    long xn = rnd();
    FieldElement x = el(p.field, xn);
    RelElement xi{x * x + p.c.generator(), el(p.field, 1)};
    long u = rnd(), v = rnd();
    if (u == 0 && v == 0) continue;
    RelElement eta{el(p.field, u), el(p.field, v)};
    RelElement shifted = rel_mul(xi, rel_mul(eta, eta, p.D), p.D);
    int base = local::ramified_valuation(xi, P);
    int scale = local::ramified_valuation(eta, P);
    CHECK(local::ramified_valuation(shifted, P) == base + 2 * scale);
  }
}

TEST_CASE("nonsquare precondition is enforced") {
  QuadraticField Q = QuadraticField::rationals();
  // 13 = 1 mod 3 is a square mod 3, so the class degenerates
  ChateletParams p = chat::from_elements(Q, el(Q, 13), el(Q, 137), el(Q, 3), el(Q, -31));
  CHECK(throws_containing([&] { quaternion_invariant(p, el(Q, 0)); }, "nonsquare"));
}

TEST_CASE("tampered ramification data is rejected") {
  ChateletParams p = reference_params();
  p.D = el(p.field, 900);  // even valuation at 5: no ramified place
  CHECK_THROWS_AS(quaternion_invariant(p, el(p.field, 0)), MathError);
  CHECK(throws_containing([&] { certify_wa_failure(p); }, "parameter condition failed"));
}

TEST_CASE("archimedean triviality") {
  QuadraticField Q = QuadraticField::rationals();
  CHECK(archimedean_triviality(el(Q, 17), el(Q, 180)));
  CHECK_FALSE(archimedean_triviality(el(Q, -7), el(Q, 180)));
  // complex places above a negative D never contribute
  CHECK(archimedean_triviality(el(Q, -7), el(Q, -180)));

  QuadraticField K5{mpz_class(5)};
  // D = 2 + 16 w is positive at one real place, negative at the other
  FieldElement D5 = el(K5, 2, 16);
  CHECK(archimedean_triviality(el(K5, 17), D5));
  CHECK_FALSE(archimedean_triviality(el(K5, -17), D5));
  // 17 - 12 w is negative exactly where D is positive
  CHECK_FALSE(archimedean_triviality(el(K5, 17, -12), D5));
  // 12 w - 5 is negative only where D is negative too
  CHECK(archimedean_triviality(el(K5, -5, 12), D5));

  QuadraticField Ki{mpz_class(-1)};
  CHECK(archimedean_triviality(el(Ki, -7), el(Ki, -8, 4)));
}

TEST_CASE("full failure certificate over a real quadratic field") {
  QuadraticField K{mpz_class(5)};
  ChateletParams p = chat::choose_params(K);
  WAFailureCertificate cert = certify_wa_failure(p);
  CHECK(cert.a_nonsquare_mod_P);
  CHECK(cert.archimedean_trivial);
  CHECK(cert.invariants_differ);
  CHECK(cert.point_even.val_symbol_arg == -4);
  CHECK(cert.point_even.val_quartic == -8);
  CHECK(cert.point_odd.val_symbol_arg == 1);
  CHECK(cert.point_odd.val_quartic == 2);
  CHECK(cert.point_odd.x == p.c.generator());
}

TEST_CASE("failure certificate JSON") {
  WAFailureCertificate cert = certify_wa_failure(reference_params());
  std::string text = wa_failure_json(cert);
  std::string again = wa_failure_json(certify_wa_failure(reference_params()));
  CHECK(text == again);

  auto j = nlohmann::json::parse(text);
  CHECK(j["L"]["base"] == 1);
  CHECK(j["L"]["D"] == "180");
  CHECK(j["P_over"] == "5");
  REQUIRE(j["points"].size() == 2);
  CHECK(j["points"][0]["x"] == "1/5");
  CHECK(j["points"][0]["invariant"] == "0");
  CHECK(j["points"][0]["val_symbol_arg"] == -4);
  CHECK(j["points"][0]["val_quartic"] == -8);
  CHECK(j["points"][0]["symbol"] == 1);
  CHECK(j["points"][1]["x"] == "5");
  CHECK(j["points"][1]["invariant"] == "1/2");
  CHECK(j["points"][1]["val_symbol_arg"] == 1);
  CHECK(j["points"][1]["symbol"] == -1);
  CHECK(j["archimedean_trivial"] == true);
}

TEST_CASE("companion surface obstruction over the rationals") {
  QuadraticField Q = QuadraticField::rationals();
  auto a = nf::is_principal_prime(el(Q, 5));
  auto b = nf::is_principal_prime(el(Q, 3));
  REQUIRE(static_cast<bool>(a));
  REQUIRE(static_cast<bool>(b));
  VariantCertificate cert = variant_wa_failure(*a.prime, *b.prime);
  CHECK(cert.invariants_differ);
  CHECK(cert.point_odd.x == el(Q, 3));
  CHECK(cert.point_odd.val_symbol_arg == 1);  // v_3(12)
  CHECK(cert.point_odd.val_quartic == 2);     // v_3(9 - 81)
  CHECK(cert.point_odd.invariant_num == 1);
  CHECK(cert.point_even.val_symbol_arg == -2);
  CHECK(cert.point_even.val_quartic == -4);
  CHECK(cert.point_even.invariant_num == 0);

  // the parity rule must agree with the classical Hilbert symbol
  sym::RationalPlace at3 = sym::RationalPlace::prime(3);
  mpq_class av(5);
  CHECK(cert.point_odd.symbol == sym::hilbert_rational(av, mpq_class(12), at3));
  CHECK(cert.point_even.symbol == sym::hilbert_rational(av, mpq_class(28, 9), at3));
}

TEST_CASE("companion surface preconditions") {
  QuadraticField Q = QuadraticField::rationals();
  auto prime_of = [&](long n) {
    auto c = nf::is_principal_prime(el(Q, n));
    REQUIRE(static_cast<bool>(c));
    return *c.prime;
  };
  // 7 = 1 mod 3 is a square mod 3
  CHECK(throws_containing([&] { variant_wa_failure(prime_of(7), prime_of(3)); }, "nonsquare"));
  CHECK(throws_containing([&] { variant_wa_failure(prime_of(5), prime_of(2)); }, "odd"));
  CHECK(throws_containing([&] { variant_wa_failure(prime_of(3), prime_of(3)); }, "distinct"));

  QuadraticField Ki{mpz_class(-1)};
  auto bi = nf::is_principal_prime(el(Ki, 3));
  REQUIRE(static_cast<bool>(bi));
  CHECK(throws_containing([&] { variant_wa_failure(prime_of(5), *bi.prime); }, "different fields"));
}
