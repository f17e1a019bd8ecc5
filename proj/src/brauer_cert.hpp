#pragma once

#include <string>

#include "chatelet.hpp"
#include "local_fields.hpp"
#include "nf_core.hpp"

namespace wacert::brauer {

// Evaluation data of the quaternion class (a, x^2 + c + sqrt(D)) at a point
// of the surface with coordinate x, at one nonarchimedean place P.
struct PointEval {
  nf::FieldElement x;
  long val_quartic;     // v_P of b (x^2 - c)(x^2 - e)
  long val_symbol_arg;  // v_P of the second symbol entry
  int invariant_num;    // numerator of the invariant in (1/2) Z / Z: 0 or 1
  int symbol;           // (-1)^invariant_num
};

// Local invariant at the ramified place P of L = K(sqrt(D)) above p_c. The
// first symbol entry a is a nonsquare unit there, so L_P(sqrt(a)) is the
// unramified quadratic extension and the invariant is v_P(xi) mod 2.
// Requires a to be a nonsquare unit mod p_c; throws otherwise, and on the
// degenerate points where either symbol entry vanishes.
PointEval quaternion_invariant(const chat::ChateletParams& p, const nf::FieldElement& x);

// The class is trivial at every archimedean place of L: places where D < 0
// are complex, and wherever D > 0 the entry a must be positive too.
bool archimedean_triviality(const nf::FieldElement& a, const nf::FieldElement& D);
bool archimedean_triviality(const chat::ChateletParams& p);

// Two adelic points of the surface over L whose Brauer pairing with the
// quaternion class disagrees at P; no point of X(L) can approximate both.
struct WAFailureCertificate {
  chat::ChateletParams params;
  std::string place_over;  // generator of p_c, the prime P ramifies over
  bool a_nonsquare_mod_P;
  PointEval point_even;  // x = 1/c
  PointEval point_odd;   // x = c
  bool archimedean_trivial;
  bool invariants_differ;
};

// Requires valid params (re-verified here). Throws "ramification premise"
// if v_c(D) fails to be odd, which verified params rule out.
WAFailureCertificate certify_wa_failure(const chat::ChateletParams& p);

// Canonical JSON for the certificate; byte-stable across runs.
std::string wa_failure_json(const WAFailureCertificate& cert);

// The same obstruction on the companion surface y^2 - a z^2 = b^2 - x^4
// with the class (a, x^2 + b), read at the base place p_b itself: a is a
// nonsquare unit mod p_b, so the invariant is v_b(x^2 + b) mod 2. The two
// points x = b and x = 1/b disagree.
struct VariantCertificate {
  nf::PrincipalPrime a, b;
  PointEval point_odd;   // x = b
  PointEval point_even;  // x = 1/b
  bool invariants_differ;
};

// Requires b odd and a a nonsquare unit mod p_b; throws otherwise.
VariantCertificate variant_wa_failure(const nf::PrincipalPrime& a, const nf::PrincipalPrime& b);

}  // namespace wacert::brauer
