#ifndef CRL_ENCLOSURE_HPP
#define CRL_ENCLOSURE_HPP

#include <vector>

#include "crl/combinatorics.hpp"
#include "crl/linalg.hpp"
#include "crl/vectorfield.hpp"

namespace crl {

/// First order a priori bound: a box E with x + [0, h] f(E) inside the
/// interior of E, so every solution starting in x stays in E for times
/// in [0, h]. Returns false when no such box is found after the inflation
/// attempts (caller should shorten the step).
bool rough_enclosure(const VectorField& f, const IVector& x, const IVector& par, double h,
                     IVector& out, int maxTries = 20);

/// A priori bounds for the variations over one step: result[b] encloses
/// the step-local V_b(t) for t in [0, h], built from the logarithmic norm
/// of Df over e0 and sup bounds of the nonlinear part, block by block in
/// increasing order, then tightened with one pass of
/// V_b(0) + [0, h] F_b(e0, E).
std::vector<IVector> derivative_enclosures(const VectorField& f, const IVector& e0,
                                           const IVector& par,
                                           const std::vector<Multipointer>& blocks,
                                           const std::vector<IVector>& seeds, double h,
                                           LogNorm norm);

}  // namespace crl

#endif
