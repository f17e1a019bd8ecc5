#include "pipeline.hpp"

#include <map>
#include <utility>

#include "fibration.hpp"
#include "int_utils.hpp"
#include "json.hpp"

namespace wacert::pipe {

using chat::ChateletParams;
using chat::ConditionReport;
using nf::FieldElement;
using nf::QuadraticField;

namespace {

FieldElement el(const QuadraticField& K, long c0, long c1 = 0) {
  return FieldElement(K, mpq_class(c0), mpq_class(c1));
}

// a rational prime is inert exactly when it stays a prime element
bool inert_in(const QuadraticField& K, const mpz_class& p) {
  auto cert = nf::PrimeCertification::certify(FieldElement(K, mpq_class(p), 0));
  return static_cast<bool>(cert) && cert.prime->degree() == 2;
}

bool element_is_prime(const QuadraticField& K, const FieldElement& x) {
  return static_cast<bool>(nf::PrimeCertification::certify(x));
}

}  // namespace

std::vector<StrategyRow> strategy_rows() {
  QuadraticField K3{mpz_class(3)}, Km3{mpz_class(-3)}, Km19{mpz_class(-19)}, Km5{mpz_class(-5)},
      Ki{mpz_class(-1)};
  std::vector<StrategyRow> rows;
  rows.push_back({K3, 11, el(K3, -11), el(K3, 5), 4});
  rows.push_back({Km3, -11, el(Km3, 11), el(Km3, 47), 6});
  rows.push_back({Km19, -3, el(Km19, 3), el(Km19, 67), 8});
  rows.push_back({Km5, 13, el(Km5, -13), el(Km5, 131), 12});
  rows.push_back({Ki, 5, el(Ki, 2, 1), el(Ki, -6, 5), 2});
  return rows;
}

RowReport verify_table_row(const StrategyRow& row) {
  const QuadraticField& K = row.field;
  ConditionReport rep;
  auto add = [&](const std::string& label, bool ok) { rep.checks.emplace_back(label, ok); };

  add("delta squarefree", is_squarefree(row.delta));

  FieldElement q = el(K, 0) - FieldElement(K, mpq_class(row.delta), 0) / row.c;
  FieldElement n = FieldElement(K, mpq_class(row.n), 0);
  add("e = f(n)", row.e == q * n * n + row.c);
  add("delta n^2 = c (c - e)",
      FieldElement(K, mpq_class(row.delta), 0) * n * n == row.c * (row.c - row.e));

  // the stated values are rational primes for the rational rows and prime
  // elements for the imaginary quadratic row
  auto stated_prime = [&](const FieldElement& x) {
    if (x.is_rational_value() && x.c0().get_den() == 1)
      return is_certified_prime(abs(x.c0().get_num()));
    return element_is_prime(K, x);
  };
  add("c prime", stated_prime(row.c));
  add("e prime", stated_prime(row.e));

  auto cc = nf::PrimeCertification::certify(row.c);
  auto ee = nf::PrimeCertification::certify(row.e);
  bool distinct = static_cast<bool>(cc) && static_cast<bool>(ee) && !cc.prime->same_ideal(*ee.prime);
  add("c and e generate distinct prime ideals of O_K", distinct);

  bool inert = false;
  for (const auto& [p, mult] : factorize(row.delta)) inert = inert || inert_in(K, p);
  add("delta has an inert prime factor", inert);

  return {rep, rep.all()};
}

ScanReport bunyakovsky_scan(const QuadraticField& K, const mpz_class& delta, const mpz_class& c,
                            long n_max) {
  if (K.is_rational()) throw MathError("the scan measures inertness in a quadratic field");
  if (c == 0 || delta % c != 0) throw MathError("the scan needs -delta/c to be an integer");
  mpz_class q = -delta / c;
  if (q <= 0) throw MathError("the scan needs -delta/c to be positive");

  if (c % 2 == 0 && (q + c) % 2 == 0) throw MathError("the polynomial has a fixed prime divisor");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), c.get_mpz_t());
  if (g != 1) throw MathError("the polynomial has nontrivial content");
  // content 1 with prime constant term makes q n^2 + c Eisenstein at |c|
  mpz_class ac = abs(c);
  if (!is_certified_prime(ac)) throw MathError("no Eisenstein prime: the constant term is not prime");

  ScanReport out{q, {}};
  for (long n = 1; n <= n_max; ++n) {
    mpz_class e = q * n * n + c;
    if (abs(e) <= ac || !is_certified_prime(abs(e))) continue;
    out.hits.push_back({n, e, inert_in(K, abs(e))});
  }
  return out;
}

std::vector<Assumption> construction_assumptions(const QuadraticField& field) {
  std::vector<Assumption> out;
  out.push_back(
      {"rational points of a smooth projective curve over a number field are dense in the "
       "Brauer set of its adelic points (Stoll's conjecture)",
       "assumed"});
  if (field.is_rational()) {
    out.push_back(
        {"a CM elliptic curve over Q with nonvanishing L-value at s = 1 has finite Mordell-Weil "
         "group (Coates-Wiles)",
         "cited"});
    out.push_back(
        {"a CM elliptic curve over Q with nonvanishing L-value at s = 1 has finite "
         "Tate-Shafarevich group (Rubin)",
         "cited"});
  } else {
    out.push_back(
        {"the elliptic curves attached to the construction have finite Mordell-Weil and "
         "Tate-Shafarevich groups over the ground field",
         "assumed"});
  }
  return out;
}

Construction assemble_construction(const ChateletParams& p) {
  return {p, chat::verify_params(p), chat::certify_local_solvability(p),
          brauer::certify_wa_failure(p), construction_assumptions(p.field)};
}

std::string construction_json(const Construction& c) {
  nlohmann::json j;
  j["schema"] = "wa-cert/1";
  j["field"] = c.params.field.delta0().get_si();
  j["params"]["a"] = c.params.a.generator().to_string();
  j["params"]["b"] = c.params.b.generator().to_string();
  j["params"]["c"] = c.params.c.generator().to_string();
  j["params"]["e"] = c.params.e.generator().to_string();
  j["params"]["d"] = c.params.d.to_string();
  j["params"]["D"] = c.params.D.to_string();
  j["params"]["conditions"] = nlohmann::json::array();
  for (const auto& [label, ok] : c.conditions.checks)
    j["params"]["conditions"].push_back({{"condition", label}, {"ok", ok}});
  j["solvability"]["places"] = nlohmann::json::array();
  for (const auto& pl : c.solvability.places)
    j["solvability"]["places"].push_back(
        {{"place", pl.place}, {"kind", pl.kind}, {"evidence", pl.evidence}});
  j["wa_failure"] = nlohmann::json::parse(brauer::wa_failure_json(c.wa));
  j["assumptions"] = nlohmann::json::array();
  for (const auto& a : c.assumptions)
    j["assumptions"].push_back({{"statement", a.statement}, {"status", a.status}});
  return j.dump(2);
}

bool reverify_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MathError(std::string("unparseable certificate: ") + e.what());
  }
  try {
    if (j.at("schema") != "wa-cert/1") throw MathError("unknown certificate schema");
    QuadraticField K{mpz_class(j.at("field").get<long>())};
    const auto& P = j.at("params");
    ChateletParams p = chat::from_elements(K, FieldElement::parse(K, P.at("a").get<std::string>()),
                                           FieldElement::parse(K, P.at("b").get<std::string>()),
                                           FieldElement::parse(K, P.at("c").get<std::string>()),
                                           FieldElement::parse(K, P.at("e").get<std::string>()));
    return construction_json(assemble_construction(p)) == text;
  } catch (const nlohmann::json::exception& e) {
    throw MathError(std::string("malformed certificate: ") + e.what());
  }
}

std::string example_json() {
  QuadraticField Q = QuadraticField::rationals();
  ChateletParams p = chat::from_elements(Q, el(Q, 17), el(Q, 137), el(Q, 5), el(Q, -31));
  nlohmann::json j = nlohmann::json::parse(construction_json(assemble_construction(p)));

  fib::BranchReport br = fib::branch_locus(fib::canonical_section());
  fib::EtaleCertificate et = fib::etale_over_branch();
  std::map<std::string, mpq_class> pt{{"xp", 0}, {"yp", 0}, {"x", 1},
                                      {"y", 48}, {"z", 36}, {"t", 1}};
  fib::ChartPointReport cp = fib::verify_point_on_X("zp", "w", pt);

  nlohmann::json f;
  f["branch"]["section_content"] = br.section_content.get_str();
  f["branch"]["disc_content"] = br.disc_content.get_str();
  f["branch"]["max_abs_coeff"] = br.max_abs_coeff.get_str();
  f["branch"]["distinct_roots"] = br.distinct_roots;
  f["branch"]["infinity_is_root"] = br.infinity_is_root;
  f["branch"]["rational_roots"] = nlohmann::json::array();
  for (const auto& r : br.rational_roots) f["branch"]["rational_roots"].push_back(r.get_str());
  f["branch"]["orbit_identity"] = br.printed_radicals_match;
  f["etale"]["gcd_constant"] = et.gcd_constant;
  f["etale"]["infinity_shared"] = et.infinity_shared;
  f["etale"]["fiber_res_plus1"] = et.fiber_res_plus1.get_str();
  f["etale"]["fiber_res_minus1"] = et.fiber_res_minus1.get_str();
  f["etale"]["unramified_at_roots"] = et.unramified_plus1 && et.unramified_minus1;
  f["etale"]["etale"] = et.etale;
  f["surface_point"]["chart"] = "zp=1, w=1";
  f["surface_point"]["lhs"] = cp.lhs.get_str();
  f["surface_point"]["rhs"] = cp.rhs.get_str();
  f["surface_point"]["surface_ok"] = cp.surface_ok;
  f["surface_point"]["curve_ok"] = cp.curve_ok;
  j["fibration"] = f;
  return j.dump(2);
}

}  // namespace wacert::pipe
