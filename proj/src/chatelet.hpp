#pragma once

#include <string>
#include <utility>
#include <vector>

#include "local_fields.hpp"
#include "nf_core.hpp"
#include "prime_search.hpp"

namespace wacert::chat {

// Parameter quadruple (a, b, c, e) of certified principal primes of O_K for
// the surface y^2 - a z^2 = b (x^2 - c)(x^2 - e), together with the derived
// quantities d = c e and D = c^2 - d = c (c - e).
struct ChateletParams {
  nf::QuadraticField field;
  nf::PrincipalPrime a, b, c, e;
  nf::FieldElement d, D;
};

// Certifies the four generators and fills in d and D; throws with the
// rejection reason if any generator fails certification.
ChateletParams from_elements(const nf::QuadraticField& field, const nf::FieldElement& a,
                             const nf::FieldElement& b, const nf::FieldElement& c,
                             const nf::FieldElement& e);

// Labelled verdicts, in a fixed order; all() is the conjunction.
struct ConditionReport {
  std::vector<std::pair<std::string, bool>> checks;
  bool all() const;
  bool value(const std::string& label) const;  // throws on unknown label
};

// Every arithmetic condition the quadruple must satisfy, each re-derived
// from scratch (nothing is trusted from construction time).
ConditionReport check_params(const ChateletParams& p);
// Same checks; throws naming the first failed condition.
ConditionReport verify_params(const ChateletParams& p);

struct SearchBounds {
  mpq_class positivity_bound = 0;  // exceed at every real place
  long radius = 32;
};

// Deterministic parameter search: each of a, b, c, e is the first candidate
// in the canonical enumeration satisfying its stage conditions. The cross
// conditions between stages then hold by quadratic reciprocity and are
// re-verified before returning. Exhaustion names the failing stage.
ChateletParams choose_params(const nf::QuadraticField& field, const SearchBounds& bounds = {});

// Premises for X^2 - D being Eisenstein at p_c after the standard scaling:
// v_c(2c) >= 1, v_c(d) = 1, v_c(b) = 0.
ConditionReport eisenstein_premises(const nf::FieldElement& b, const nf::PrincipalPrime& c,
                                    const nf::FieldElement& d);
ConditionReport eisenstein_check(const ChateletParams& p);

// One local place together with why the surface has points there.
struct PlaceReport {
  std::string place;
  std::string kind;  // "real", "dyadic", "finite", "generic"
  std::string evidence;
};

struct SolvabilityCertificate {
  std::vector<PlaceReport> places;
};

// Everywhere-local solvability of y^2 - a z^2 = b (x^2 - c)(x^2 - e): real
// places, places above 2, p_a (Hensel witness at x = z = 0), p_b (split
// quadric), and the generic tag covering all remaining places. Requires
// valid params; throws otherwise.
SolvabilityCertificate certify_local_solvability(const ChateletParams& p);

// Canonical JSON for the certificate; byte-stable across runs.
std::string solvability_json(const ChateletParams& p, const SolvabilityCertificate& cert);

// The companion surface y^2 - a z^2 = -(x^2 + b)(x^2 - b) with its obvious
// rational point (x, y, z) = (0, b, 0), substituted exactly.
struct VariantSurfaceReport {
  nf::FieldElement x, y, z;
  bool on_surface;
};
VariantSurfaceReport variant_surface(const nf::PrincipalPrime& a, const nf::PrincipalPrime& b);

}  // namespace wacert::chat
