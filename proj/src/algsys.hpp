#pragma once

#include <string>
#include <vector>

#include "poly.hpp"

namespace wacert::alg {

// Decides whether a system of bivariate polynomials over Q has a common zero
// in the algebraic closure. Splitting on non-invertible leading coefficients
// keeps every computation exact; no factorization into irreducibles is done.
// Throws on an empty system or a zero member (a dimension drop, not a verdict).
bool affine_system_solvable(const std::vector<poly::QBiPoly>& system);

// Same decision for MultiPoly members supported on exactly the two named
// variables.
bool affine_system_solvable(const std::vector<poly::MultiPoly>& system,
                            const std::string& xvar, const std::string& yvar);

}  // namespace wacert::alg
