#include "crl/enclosure.hpp"

#include <cmath>
#include <stdexcept>

#include "crl/variational.hpp"

namespace crl {

bool rough_enclosure(const VectorField& f, const IVector& x, const IVector& par, double h,
                     IVector& out, int maxTries) {
    const std::size_t n = x.size();
    const Interval span(0.0, h);
    IVector e = x + span * f.eval(x, par);
    for (int attempt = 0; attempt < maxTries; ++attempt) {
        IVector y = x + span * f.eval(e, par);
        if (e.containsInInterior(y)) {
            out = y;  // solutions stay inside e, hence inside y as well
            return true;
        }
        IVector grown = hull(e, y);
        IVector inflated(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(grown[i].lo()) || !std::isfinite(grown[i].hi())) return false;
            double c = grown[i].mid();
            double rad = 0.75 * grown[i].diam() + 1e-15 * (1.0 + std::fabs(c));
            if (!std::isfinite(rad)) return false;
            inflated[i] = Interval(c - rad, c + rad);
        }
        e = inflated;
    }
    return false;
}

std::vector<IVector> derivative_enclosures(const VectorField& f, const IVector& e0,
                                           const IVector& par,
                                           const std::vector<Multipointer>& blocks,
                                           const std::vector<IVector>& seeds, double h,
                                           LogNorm norm) {
    const std::size_t n = e0.size();
    IMatrix a = f.jacobian(e0, par);
    const double l = log_norm(a, norm);
    const Interval lh = Interval(l) * Interval(h);
    const double growth = std::max(1.0, exp(lh).hi());
    // sup over [0, h] of (e^{l t} - 1) / l, which is increasing in t
    double shape;
    if (std::fabs(l) < 1e-12) {
        shape = (Interval(h) * exp(abs(lh))).hi();
    } else {
        shape = ((exp(lh) - Interval(1.0)) / Interval(l)).hi();
    }
    if (shape < 0.0) shape = 0.0;

    int r = 0;
    for (const auto& b : blocks) r = std::max(r, static_cast<int>(b.size()));

    std::vector<IVector> enc(blocks.size(), IVector(n));
    for (auto& v : enc)
        for (std::size_t i = 0; i < n; ++i) v[i] = Interval(0.0);
    for (int p = 1; p <= r; ++p) {
        // nonlinear parts of order-p blocks only use strictly lower orders,
        // already final in enc
        auto nl = variational_nonlinear(f, e0, par, blocks, enc);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (static_cast<int>(blocks[b].size()) != p) continue;
            const double delta = maxNorm(nl[b]);
            const double bound =
                (Interval(maxNorm(seeds[b])) * Interval(growth) + Interval(delta) * Interval(shape))
                    .hi();
            for (std::size_t i = 0; i < n; ++i) enc[b][i] = Interval(-bound, bound);
        }
    }
    // one tightening pass through the integral form of the equations
    auto rhs = variational_rhs(f, e0, par, blocks, enc);
    const Interval span(0.0, h);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        enc[b] = intersection(seeds[b] + span * rhs[b], enc[b]);
    return enc;
}

}  // namespace crl
