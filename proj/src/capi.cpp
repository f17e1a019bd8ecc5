#include "wacert.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "brauer_cert.hpp"
#include "chatelet.hpp"
#include "fibration.hpp"
#include "int_utils.hpp"
#include "json.hpp"
#include "nf_core.hpp"
#include "pipeline.hpp"
#include "symbols.hpp"

using namespace wacert;
using nf::FieldElement;
using nf::QuadraticField;

struct wacert_session {
  std::string last_error;
};

namespace {

// distinguishes caller mistakes from mathematical rejections
struct UsageError {
  std::string message;
};

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename F>
int guarded(wacert_session* s, F&& body) {
  if (!s) return WACERT_USAGE;
  try {
    s->last_error.clear();
    body();
    return WACERT_OK;
  } catch (const UsageError& e) {
    s->last_error = e.message;
    return WACERT_USAGE;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return WACERT_MATH;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError{what};
}

chat::ChateletParams params_from(const QuadraticField& K, const char* params, long radius) {
  if (!params) {
    chat::SearchBounds bounds;
    if (radius > 0) bounds.radius = radius;
    return chat::choose_params(K, bounds);
  }
  std::vector<std::string> parts;
  std::string csv(params), item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw UsageError{"params must be four comma-separated field elements"};
  return chat::from_elements(K, FieldElement::parse(K, parts[0]), FieldElement::parse(K, parts[1]),
                             FieldElement::parse(K, parts[2]), FieldElement::parse(K, parts[3]));
}

nf::PrincipalPrime certified_prime(const QuadraticField& K, const std::string& literal) {
  auto cert = nf::PrimeCertification::certify(FieldElement::parse(K, literal));
  if (!cert) throw MathError("v does not generate a prime ideal: " + cert.rejection);
  return *cert.prime;
}

}  // namespace

extern "C" {

wacert_session* wacert_session_new(void) { return new wacert_session{}; }

void wacert_session_free(wacert_session* s) { delete s; }

const char* wacert_last_error(const wacert_session* s) { return s ? s->last_error.c_str() : ""; }

void wacert_string_free(char* s) { std::free(s); }

int wacert_construct(wacert_session* s, long delta0, const char* params, long radius,
                     char** out_json) {
  return guarded(s, [&] {
    require(out_json != nullptr, "out_json must not be null");
    QuadraticField K{mpz_class(delta0)};
    chat::ChateletParams p = params_from(K, params, radius);
    *out_json = copy_out(pipe::construction_json(pipe::assemble_construction(p)));
  });
}

int wacert_example_json(wacert_session* s, char** out_json) {
  return guarded(s, [&] {
    require(out_json != nullptr, "out_json must not be null");
    *out_json = copy_out(pipe::example_json());
  });
}

int wacert_reverify(wacert_session* s, const char* json_text, int* out_ok) {
  return guarded(s, [&] {
    require(json_text != nullptr, "json_text must not be null");
    require(out_ok != nullptr, "out_ok must not be null");
    *out_ok = pipe::reverify_certificate(json_text) ? 1 : 0;
  });
}

int wacert_verify_table(wacert_session* s, int row, char** out_report, int* out_all_pass) {
  return guarded(s, [&] {
    require(out_report != nullptr, "out_report must not be null");
    require(out_all_pass != nullptr, "out_all_pass must not be null");
    std::vector<pipe::StrategyRow> rows = pipe::strategy_rows();
    require(row >= 0 && row <= static_cast<int>(rows.size()), "row must be 0..5");

    std::string text;
    bool all = true;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (row != 0 && static_cast<size_t>(row) != i + 1) continue;
      pipe::RowReport rep = pipe::verify_table_row(rows[i]);
      text += "row " + std::to_string(i + 1) + ": " + (rep.all_pass ? "OK" : "FAIL") + "\n";
      for (const auto& [label, ok] : rep.checks.checks)
        text += "  " + label + ": " + (ok ? "ok" : "FAIL") + "\n";
      all = all && rep.all_pass;
    }
    *out_all_pass = all ? 1 : 0;
    *out_report = copy_out(text);
  });
}

int wacert_hilbert(wacert_session* s, long delta0, const char* s_elem, const char* t_elem,
                   const char* v, int* out_symbol) {
  return guarded(s, [&] {
    require(s_elem && t_elem && v, "s, t and v must not be null");
    require(out_symbol != nullptr, "out_symbol must not be null");
    QuadraticField K{mpz_class(delta0)};
    FieldElement se = FieldElement::parse(K, s_elem);
    FieldElement te = FieldElement::parse(K, t_elem);
    std::string place(v);

    if (K.is_rational()) {
      sym::RationalPlace at = sym::RationalPlace::infinity();
      if (place != "inf") {
        FieldElement ve = FieldElement::parse(K, place);
        if (!ve.is_rational_value() || ve.c0().get_den() != 1 ||
            !is_certified_prime(ve.c0().get_num()))
          throw MathError("v must be a rational prime or inf");
        at = sym::RationalPlace::prime(ve.c0().get_num());
      }
      *out_symbol = sym::hilbert_rational(se.c0(), te.c0(), at);
      return;
    }
    if (place == "inf") throw MathError("the real place shorthand only applies over Q");
    *out_symbol = sym::hilbert_odd(se, te, certified_prime(K, place));
  });
}

int wacert_solvable(wacert_session* s, long delta0, const char* params, char** out_json) {
  return guarded(s, [&] {
    require(out_json != nullptr, "out_json must not be null");
    QuadraticField K{mpz_class(delta0)};
    chat::ChateletParams p = params_from(K, params, 0);
    *out_json = copy_out(chat::solvability_json(p, chat::certify_local_solvability(p)));
  });
}

int wacert_brauer_eval(wacert_session* s, long delta0, const char* params, const char* x,
                       char** out_json) {
  return guarded(s, [&] {
    require(params != nullptr, "params must not be null");
    require(x != nullptr, "x must not be null");
    require(out_json != nullptr, "out_json must not be null");
    QuadraticField K{mpz_class(delta0)};
    chat::ChateletParams p = params_from(K, params, 0);
    brauer::PointEval ev = brauer::quaternion_invariant(p, FieldElement::parse(K, x));
    nlohmann::json j;
    j["x"] = ev.x.to_string();
    j["val_quartic"] = ev.val_quartic;
    j["val_symbol_arg"] = ev.val_symbol_arg;
    j["invariant"] = ev.invariant_num == 0 ? "0" : "1/2";
    j["symbol"] = ev.symbol;
    *out_json = copy_out(j.dump(2));
  });
}

int wacert_etale_check(wacert_session* s, char** out_summary, int* out_etale) {
  return guarded(s, [&] {
    require(out_summary != nullptr, "out_summary must not be null");
    require(out_etale != nullptr, "out_etale must not be null");
    fib::EtaleCertificate cert = fib::etale_over_branch();
    std::string text = "gcd constant: " + std::string(cert.gcd_constant ? "yes" : "no") +
                       "; shared root at infinity: " + (cert.infinity_shared ? "yes" : "no") +
                       "; fiber resultants at +-1: " + cert.fiber_res_plus1.get_str() + " " +
                       cert.fiber_res_minus1.get_str() +
                       "; etale: " + (cert.etale ? "yes" : "no");
    *out_summary = copy_out(text);
    *out_etale = cert.etale ? 1 : 0;
  });
}

int wacert_scan(wacert_session* s, long delta0, long delta, long c, long n_max, char** out_json) {
  return guarded(s, [&] {
    require(out_json != nullptr, "out_json must not be null");
    QuadraticField K{mpz_class(delta0)};
    pipe::ScanReport rep = pipe::bunyakovsky_scan(K, delta, c, n_max);
    nlohmann::json j;
    j["q"] = rep.q.get_str();
    j["hits"] = nlohmann::json::array();
    for (const auto& h : rep.hits)
      j["hits"].push_back({{"n", h.n}, {"e", h.e.get_str()}, {"inert", h.inert_in_k}});
    *out_json = copy_out(j.dump(2));
  });
}

}  // extern "C"
