#ifndef CRL_VARIATIONAL_HPP
#define CRL_VARIATIONAL_HPP

#include <vector>

#include "crl/combinatorics.hpp"
#include "crl/linalg.hpp"
#include "crl/vectorfield.hpp"

namespace crl {

/// Values of every right-hand side of the equations for variations at a
/// single point in (x, V) space: result[b] encloses
///   sum over partitions of the block: D^beta f (x) * products of V factors,
/// which is the time derivative of V_b along the flow. `blocks` must be
/// sorted and closed under sub-multipointers.
std::vector<IVector> variational_rhs(const VectorField& f, const IVector& x, const IVector& par,
                                     const std::vector<Multipointer>& blocks,
                                     const std::vector<IVector>& values);

/// Same sums without the linear term Df(x) V_b, i.e. only contributions
/// from partitions into two or more factors. Zero for first order blocks.
std::vector<IVector> variational_nonlinear(const VectorField& f, const IVector& x,
                                           const IVector& par,
                                           const std::vector<Multipointer>& blocks,
                                           const std::vector<IVector>& values);

}  // namespace crl

#endif
