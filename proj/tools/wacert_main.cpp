#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wacert.h"

namespace {

// owns one API string and frees it on scope exit
struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { wacert_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int report(wacert_session* session, int status) {
  const char* msg = wacert_last_error(session);
  if (status != WACERT_OK && msg[0] != '\0') std::cerr << "error: " << msg << "\n";
  return status;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

// write-then-rename so readers never observe a half-written certificate
bool write_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak approximation certificates for Chatelet-type surfaces"};
  app.require_subcommand(1);

  long field = 1;
  std::string params, out_path, golden = "data/golden/verify_example.json", x_literal;
  long radius = 0, delta = 0, cval = 0, nmax = 0;
  int row = 0;
  bool update_golden = false;
  std::string hs, ht, hv;

  CLI::App* construct = app.add_subcommand("construct", "build and write a full certificate");
  construct->add_option("--field", field, "delta0 of the ground field")->required();
  construct->add_option("--params", params, "a,b,c,e to skip the search");
  construct->add_option("--radius", radius, "search radius override");
  construct->add_option("--out", out_path, "output path")->required();

  CLI::App* verify_example =
      app.add_subcommand("verify-example", "recompute the reference certificate and compare");
  verify_example->add_option("--golden", golden, "golden file path");
  verify_example->add_flag("--update", update_golden, "rewrite the golden file instead");

  CLI::App* verify_table = app.add_subcommand("verify-table", "check the extension-strategy table");
  verify_table->add_option("--row", row, "single row 1..5; 0 checks all")->check(CLI::Range(0, 5));

  CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (s, t) at a place v");
  hilbert->add_option("--field", field, "delta0 of the ground field")->required();
  hilbert->add_option("s", hs, "first entry")->required();
  hilbert->add_option("t", ht, "second entry")->required();
  hilbert->add_option("v", hv, "prime element, or inf over Q")->required();

  CLI::App* solvable = app.add_subcommand("solvable", "everywhere-local solvability certificate");
  solvable->add_option("--field", field, "delta0 of the ground field")->required();
  solvable->add_option("--params", params, "a,b,c,e to skip the search");

  CLI::App* brauer = app.add_subcommand("brauer-eval", "quaternion invariant at one point");
  brauer->add_option("--field", field, "delta0 of the ground field")->required();
  brauer->add_option("--params", params, "a,b,c,e")->required();
  brauer->add_option("--x", x_literal, "affine coordinate of the point")->required();

  app.add_subcommand("etale-check", "disjointness of the reference branch loci");

  CLI::App* scan = app.add_subcommand("scan", "prime values of (-delta/c) n^2 + c with splitting");
  scan->add_option("--field", field, "delta0 of the quadratic field")->required();
  scan->add_option("--delta", delta, "delta")->required();
  scan->add_option("--c", cval, "constant term, a prime")->required();
  scan->add_option("--nmax", nmax, "scan bound")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  wacert_session* session = wacert_session_new();
  int status = WACERT_OK;

  if (construct->parsed()) {
    ApiString json;
    status = wacert_construct(session, field, params.empty() ? nullptr : params.c_str(), radius,
                              &json.ptr);
    if (status == WACERT_OK && !write_atomic(out_path, json.str() + "\n")) {
      std::cerr << "error: cannot write " << out_path << "\n";
      status = WACERT_USAGE;
    }
    if (status == WACERT_OK) std::cout << "wrote " << out_path << "\n";
  } else if (verify_example->parsed()) {
    ApiString json;
    status = wacert_example_json(session, &json.ptr);
    if (status == WACERT_OK) {
      std::string want = json.str() + "\n";
      if (update_golden) {
        if (!write_atomic(golden, want)) {
          std::cerr << "error: cannot write " << golden << "\n";
          status = WACERT_USAGE;
        } else {
          std::cout << "wrote " << golden << "\n";
        }
      } else {
        std::string have;
        if (!read_file(golden, have)) {
          std::cerr << "error: cannot read " << golden << "\n";
          status = WACERT_MATH;
        } else if (have != want) {
          std::cerr << "golden mismatch: recomputed certificate differs from " << golden << "\n";
          status = WACERT_MATH;
        } else {
          std::cout << "golden certificate matches (" << want.size() << " bytes)\n";
        }
      }
    }
  } else if (verify_table->parsed()) {
    ApiString text;
    int all_pass = 0;
    status = wacert_verify_table(session, row, &text.ptr, &all_pass);
    if (status == WACERT_OK) {
      std::cout << text.str();
      if (!all_pass) status = WACERT_MATH;
    }
  } else if (hilbert->parsed()) {
    int symbol = 0;
    status = wacert_hilbert(session, field, hs.c_str(), ht.c_str(), hv.c_str(), &symbol);
    if (status == WACERT_OK) std::cout << symbol << "\n";
  } else if (solvable->parsed()) {
    ApiString json;
    status = wacert_solvable(session, field, params.empty() ? nullptr : params.c_str(), &json.ptr);
    if (status == WACERT_OK) std::cout << json.str() << "\n";
  } else if (brauer->parsed()) {
    ApiString json;
    status = wacert_brauer_eval(session, field, params.c_str(), x_literal.c_str(), &json.ptr);
    if (status == WACERT_OK) std::cout << json.str() << "\n";
  } else if (app.get_subcommand("etale-check")->parsed()) {
    ApiString summary;
    int etale = 0;
    status = wacert_etale_check(session, &summary.ptr, &etale);
    if (status == WACERT_OK) {
      std::cout << summary.str() << "\n";
      if (!etale) status = WACERT_MATH;
    }
  } else if (scan->parsed()) {
    ApiString json;
    status = wacert_scan(session, field, delta, cval, nmax, &json.ptr);
    if (status == WACERT_OK) std::cout << json.str() << "\n";
  }

  status = report(session, status);
  wacert_session_free(session);
  return status;
}
