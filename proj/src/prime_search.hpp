#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nf_core.hpp"

namespace wacert::search {

using nf::FieldElement;
using nf::Hnf2;
using nf::PrincipalPrime;
using nf::QuadraticField;

// One congruence x = residue mod (modulus).
struct Congruence {
  FieldElement modulus;  // integral, nonzero, non-unit allowed but pointless
  FieldElement residue;  // must be a unit in O_K/(modulus)
};

// A search problem: simultaneous congruences, a lower bound to exceed at
// every real place (disabled when absent), and the enumeration radius.
struct CongruenceSystem {
  QuadraticField field;
  std::vector<Congruence> congruences;
  std::optional<mpq_class> positivity_bound;  // exceed at all real places
  long radius = 32;
};

// Simultaneous solution with canonical representative modulo the
// intersection of the modulus ideals (for pairwise coprime moduli: their
// product). Compatible congruences over non-coprime moduli are combined
// modulo the lattice intersection; incompatible systems throw.
FieldElement crt_combine(const CongruenceSystem& sys);

// The deterministic candidate enumeration: x0 + (intersection lattice),
// all coordinates within [-radius, radius] of the lattice basis, ordered by
// increasing maximal absolute embedding value with lexicographic
// tie-breaks on coordinates. This ordering, not any schedule, decides
// which witness a search returns.
std::vector<FieldElement> candidate_stream(const CongruenceSystem& sys);

// Post-primality filter (residue-class side conditions, distinctness, ...).
using PrimeFilter = std::function<bool(const PrincipalPrime&)>;

// A found prime together with its re-verification record.
struct SearchCertificate {
  PrincipalPrime prime;
  FieldElement x0;                  // combined residue the prime must match
  std::vector<bool> congruences_ok; // one entry per input congruence
  bool positivity_ok;
  unsigned long candidates_scanned;
};

// First element of the candidate stream that certifies as a principal
// prime, exceeds the positivity bound at all real places, satisfies every
// congruence (re-verified), and passes all filters. Exhaustion of the
// radius is a soft failure ("enlarge radius"), not a nonexistence proof.
SearchCertificate find_principal_prime(const CongruenceSystem& sys,
                                       const std::vector<PrimeFilter>& filters = {});

}  // namespace wacert::search
