#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <string>
#include <vector>

#include "chatelet.hpp"
#include "doctest.h"
#include "json.hpp"
#include "nf_core.hpp"
#include "pipeline.hpp"

using namespace wacert;
using namespace wacert::pipe;
using nf::FieldElement;
using nf::QuadraticField;

namespace {

FieldElement el(const QuadraticField& K, long c0, long c1 = 0) {
  return FieldElement(K, mpq_class(c0), mpq_class(c1));
}

bool throws_containing(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const MathError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

std::vector<std::string> failed_labels(const RowReport& rep) {
  std::vector<std::string> out;
  for (const auto& [label, ok] : rep.checks.checks)
    if (!ok) out.push_back(label);
  return out;
}

}  // namespace

TEST_CASE("the five strategy rows verify as stated") {
  std::vector<StrategyRow> rows = strategy_rows();
  REQUIRE(rows.size() == 5);

  std::vector<RowReport> reps;
  for (const auto& row : rows) reps.push_back(verify_table_row(row));

  // identities and primality hold on every row
  for (const auto& rep : reps) {
    CHECK(rep.checks.value("delta squarefree"));
    CHECK(rep.checks.value("e = f(n)"));
    CHECK(rep.checks.value("delta n^2 = c (c - e)"));
    CHECK(rep.checks.value("c prime"));
    CHECK(rep.checks.value("e prime"));
  }

  CHECK_FALSE(reps[0].all_pass);
  CHECK(failed_labels(reps[0]) ==
        std::vector<std::string>{"c and e generate distinct prime ideals of O_K",
                                 "delta has an inert prime factor"});
  CHECK(reps[1].all_pass);
  CHECK(reps[2].all_pass);
  CHECK(reps[3].all_pass);
  CHECK_FALSE(reps[4].all_pass);
  CHECK(failed_labels(reps[4]) == std::vector<std::string>{"delta has an inert prime factor"});
}

TEST_CASE("row identities recomputed by hand") {
  std::vector<StrategyRow> rows = strategy_rows();

  // fourth row: f(x) = x^2 - 13 over Q(sqrt(-5))
  const StrategyRow& r4 = rows[3];
  CHECK(r4.delta == 13);
  CHECK(r4.c == el(r4.field, -13));
  CHECK(r4.e == el(r4.field, 131));
  CHECK(r4.n == 12);
  CHECK(mpz_class(13) * 144 == mpz_class(-13) * (-13 - 131));
  CHECK(mpz_class(12 * 12 - 13) == 131);

  // fifth row: f(x) = (-2 + i) x^2 + (2 + i) over the Gaussian field
  const StrategyRow& r5 = rows[4];
  const QuadraticField& Ki = r5.field;
  CHECK(Ki.delta0() == -1);
  FieldElement q = el(Ki, 0) - el(Ki, 5) / el(Ki, 2, 1);
  CHECK(q == el(Ki, -2, 1));
  CHECK(q * el(Ki, 4) + el(Ki, 2, 1) == el(Ki, -6, 5));
  CHECK(el(Ki, 5) * el(Ki, 4) == el(Ki, 2, 1) * (el(Ki, 2, 1) - el(Ki, -6, 5)));
}

TEST_CASE("prime value scan with splitting data") {
  QuadraticField K{mpz_class(-5)};
  ScanReport rep = bunyakovsky_scan(K, 13, -13, 12);
  CHECK(rep.q == 1);
  REQUIRE(rep.hits.size() == 2);
  CHECK(rep.hits[0].n == 6);
  CHECK(rep.hits[0].e == 23);
  CHECK_FALSE(rep.hits[0].inert_in_k);  // 18 = 8^2 mod 23, so -5 is a square
  CHECK(rep.hits[1].n == 12);
  CHECK(rep.hits[1].e == 131);
  CHECK(rep.hits[1].inert_in_k);

  CHECK(bunyakovsky_scan(K, 13, -13, 5).hits.empty());
}

TEST_CASE("scan premises are enforced") {
  QuadraticField K{mpz_class(-5)};
  QuadraticField Q = QuadraticField::rationals();
  CHECK(throws_containing([&] { bunyakovsky_scan(Q, 13, -13, 5); }, "quadratic field"));
  CHECK(throws_containing([&] { bunyakovsky_scan(K, 14, -13, 5); }, "integer"));
  CHECK(throws_containing([&] { bunyakovsky_scan(K, -13, -13, 5); }, "positive"));
  // f = 6 n^2 - 2 always takes even values
  CHECK(throws_containing([&] { bunyakovsky_scan(K, 12, -2, 5); }, "fixed prime divisor"));
  // f = 3 n^2 - 9 has content 3
  CHECK(throws_containing([&] { bunyakovsky_scan(K, 27, -9, 5); }, "content"));
  // f = n^2 - 12 is Eisenstein nowhere
  CHECK(throws_containing([&] { bunyakovsky_scan(K, 12, -12, 5); }, "not prime"));
}

TEST_CASE("assumption ledger is never empty and grades its items") {
  QuadraticField Q = QuadraticField::rationals();
  std::vector<Assumption> over_q = construction_assumptions(Q);
  REQUIRE(over_q.size() == 3);
  CHECK(over_q[0].status == "assumed");
  CHECK(over_q[1].status == "cited");
  CHECK(over_q[2].status == "cited");

  QuadraticField K{mpz_class(5)};
  std::vector<Assumption> over_k = construction_assumptions(K);
  REQUIRE(over_k.size() == 2);
  for (const auto& a : over_k) CHECK(a.status == "assumed");
}

TEST_CASE("assembled certificate is deterministic and self-reproducing") {
  QuadraticField Q = QuadraticField::rationals();
  chat::ChateletParams p =
      chat::from_elements(Q, el(Q, 17), el(Q, 137), el(Q, 5), el(Q, -31));
  std::string text = construction_json(assemble_construction(p));
  CHECK(text == construction_json(assemble_construction(p)));
  CHECK(reverify_certificate(text));

  auto j = nlohmann::json::parse(text);
  CHECK(j["schema"] == "wa-cert/1");
  CHECK(j["field"] == 1);
  CHECK(j["params"]["a"] == "17");
  CHECK(j["params"]["D"] == "180");
  CHECK(j["params"]["conditions"].size() == 17);
  for (const auto& c : j["params"]["conditions"]) CHECK(c["ok"] == true);
  CHECK(j["solvability"]["places"].size() == 5);
  CHECK(j["wa_failure"]["P_over"] == "5");
  CHECK(j["assumptions"].size() == 3);
  // parse and re-dump is the identity, so nothing non-canonical sneaks in
  CHECK(nlohmann::json::parse(text).dump(2) == text);
}

TEST_CASE("certificate verification notices tampering") {
  QuadraticField K{mpz_class(-1)};
  chat::ChateletParams p = chat::choose_params(K);
  std::string text = construction_json(assemble_construction(p));
  CHECK(reverify_certificate(text));

  // cosmetic change: parses fine, bytes cannot be reproduced
  CHECK_FALSE(reverify_certificate(text + "\n"));

  // substantive change: the stated parameters no longer verify
  std::string tampered = text;
  size_t pos = tampered.find("\"a\": \"-7\"");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 9, "\"a\": \"-3\"");
  CHECK_THROWS_AS(reverify_certificate(tampered), MathError);

  CHECK(throws_containing([] { reverify_certificate("{"); }, "unparseable"));
  CHECK(throws_containing([] { reverify_certificate("{}"); }, "malformed"));
  CHECK(throws_containing([] { reverify_certificate("{\"schema\":\"x\"}"); }, "schema"));
}

TEST_CASE("reference example JSON carries the fibration data") {
  std::string text = example_json();
  CHECK(text == example_json());

  auto j = nlohmann::json::parse(text);
  CHECK(j["schema"] == "wa-cert/1");
  CHECK(j["params"]["b"] == "137");
  const auto& f = j["fibration"];
  CHECK(f["branch"]["section_content"] == "137");
  CHECK(f["branch"]["disc_content"] == "992000");
  CHECK(f["branch"]["max_abs_coeff"] == "20296320000");
  CHECK(f["branch"]["distinct_roots"] == 6);
  CHECK(f["branch"]["infinity_is_root"] == false);
  CHECK(f["branch"]["rational_roots"] == nlohmann::json::array({"-1", "1"}));
  CHECK(f["branch"]["orbit_identity"] == true);
  CHECK(f["etale"]["gcd_constant"] == true);
  CHECK(f["etale"]["fiber_res_plus1"] == "-89653");
  CHECK(f["etale"]["fiber_res_minus1"] == "-89653");
  CHECK(f["etale"]["unramified_at_roots"] == true);
  CHECK(f["etale"]["etale"] == true);
  CHECK(f["surface_point"]["lhs"] == "-19728");
  CHECK(f["surface_point"]["rhs"] == "-19728");
  CHECK(f["surface_point"]["surface_ok"] == true);
  CHECK(f["surface_point"]["curve_ok"] == true);
}
