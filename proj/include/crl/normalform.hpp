#ifndef CRL_NORMALFORM_HPP
#define CRL_NORMALFORM_HPP

#include <vector>

#include "crl/combinatorics.hpp"
#include "crl/linalg.hpp"

namespace crl {

/// Third order jet of a planar map at a fixed point: derivative blocks
/// over the two coordinate directions up to order three, aligned with
/// `blocks`. The map is expected to preserve area, so the Jacobian
/// determinant enclosure must contain 1.
struct PlanarMapJet {
    std::vector<Multipointer> blocks;
    std::vector<IVector> derivatives;
};

struct NormalFormResult {
    CInterval lambda;  // eigenvalue in the upper half plane
    Interval gamma0;   // rotation angle of the linear part
    Interval gamma1;   // first twist coefficient
};

/// True when every matrix in the enclosure has complex eigenvalues.
bool is_elliptic(const IMatrix& J);

/// Interval-certified third order normal form around an elliptic fixed
/// point of an area-preserving planar map: in suitable coordinates the
/// map rotates by gamma0 + gamma1 (r^2 + s^2) up to fourth order terms.
/// Throws when ellipticity fails, a resonance lambda^k = 1 (k <= 4)
/// cannot be excluded, or the jet is inconsistent with a real
/// area-preserving map.
NormalFormResult normal_form(const PlanarMapJet& jet);

}  // namespace crl

#endif
