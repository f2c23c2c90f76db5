#ifndef CRL_POINCARE_HPP
#define CRL_POINCARE_HPP

#include <vector>

#include "crl/lohner.hpp"

namespace crl {

/// Hyperplane {x : <normal, x> = offset}.
struct AffineSection {
    IVector normal;
    Interval offset{0.0};

    Interval eval(const IVector& x) const { return dot(normal, x) - offset; }
};

struct PoincareResult {
    Interval returnTime;
    IVector image;  // enclosure of the return map, tightened onto the section
    std::vector<Multipointer> blocks;
    std::vector<IVector> derivatives;       // derivative blocks of the return map
    std::vector<Interval> timeDerivatives;  // derivative blocks of the return time
};

/// First-return map to an affine section together with its partial
/// derivatives with respect to the initial parametrization, up to the
/// order of the supplied blocks. The initial set may sit on the section
/// itself; the flow then has to leave it transversely first.
class PoincareMap {
public:
    PoincareMap(VectorField& f, IVector par, LohnerOptions opts, AffineSection section);

    PoincareResult compute(const IVector& x0, const std::vector<Multipointer>& blocks,
                           const std::vector<IVector>& seeds, double h0) const;

    double maxTime = 200.0;  // give up on the return past this flow time
    int bracketGrid = 24;    // grid points per return-time refinement round
    int bracketRounds = 10;

private:
    VectorField* f_;
    IVector par_;
    LohnerOptions opts_;
    AffineSection sec_;
};

/// Image and derivative blocks of the time-T map. T may be a nontrivial
/// interval; the bounds then cover every duration inside it.
struct FlowDerivatives {
    IVector image;
    std::vector<IVector> derivatives;
};

FlowDerivatives flow_derivatives(VectorField& f, const IVector& par, const LohnerOptions& opts,
                                 const IVector& x0, const std::vector<Multipointer>& blocks,
                                 const std::vector<IVector>& seeds, const Interval& T, int steps);

}  // namespace crl

#endif
