#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "brauer_cert.hpp"
#include "chatelet.hpp"
#include "nf_core.hpp"

namespace wacert::pipe {

// One row of the extension-strategy table: over K = Q(sqrt(delta0)), the
// polynomial f(x) = (-delta/c) x^2 + c takes the prime value e at x = n,
// forcing delta n^2 = c (c - e). The rows stand as stated; verification
// reports honest failures where a row's arithmetic does not cooperate.
struct StrategyRow {
  nf::QuadraticField field;
  mpz_class delta;
  nf::FieldElement c, e;
  mpz_class n;
};

// The five reference rows, in order.
std::vector<StrategyRow> strategy_rows();

struct RowReport {
  chat::ConditionReport checks;
  bool all_pass;
};

// Re-derives every identity, primality and splitting claim of a row.
RowReport verify_table_row(const StrategyRow& row);

// One prime value of f(n) = q n^2 + c found below the scan bound.
struct ScanHit {
  long n;
  mpz_class e;
  bool inert_in_k;
};

struct ScanReport {
  mpz_class q;  // -delta/c
  std::vector<ScanHit> hits;
};

// Scans f(n) = q n^2 + c for rational prime values and reports how each
// one splits in K. The premises that make prime values plausible at all
// are enforced first: q a positive integer, content 1, no fixed divisor
// at 2, and f Eisenstein at the prime c. K must be quadratic.
ScanReport bunyakovsky_scan(const nf::QuadraticField& K, const mpz_class& delta,
                            const mpz_class& c, long n_max);

// Conditional ingredients the construction consumes without proof. Items
// that are theorems over the ground field are "cited"; genuinely open
// statements are "assumed". Never empty.
struct Assumption {
  std::string statement;
  std::string status;
};
std::vector<Assumption> construction_assumptions(const nf::QuadraticField& field);

// The full certificate: verified parameters, everywhere-local solvability,
// the Brauer obstruction to weak approximation, and the assumption ledger.
struct Construction {
  chat::ChateletParams params;
  chat::ConditionReport conditions;
  chat::SolvabilityCertificate solvability;
  brauer::WAFailureCertificate wa;
  std::vector<Assumption> assumptions;
};
Construction assemble_construction(const chat::ChateletParams& p);

// Canonical JSON, byte-stable across runs; no floating point anywhere.
std::string construction_json(const Construction& c);

// Parses a certificate, rebuilds it from its stated parameters alone, and
// reserializes: true exactly when the bytes come back unchanged.
bool reverify_certificate(const std::string& text);

// The reference construction over Q extended with the fibration data.
std::string example_json();

}  // namespace wacert::pipe
