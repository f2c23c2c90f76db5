#include "crl/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace crl {

namespace {

int sideOf(const Interval& a) {
    if (a.lo() > 0.0) return 1;
    if (a.hi() < 0.0) return -1;
    return 0;
}

// Intersect a box with the hyperplane <normal, y> = rhs by solving the
// constraint for the component with the largest normal entry.
IVector tightenAffine(const IVector& y, const IVector& normal, const Interval& rhs) {
    const std::size_t n = y.size();
    std::size_t piv = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = std::fabs(normal[i].mid());
        if (m > best && !normal[i].contains(0.0)) {
            best = m;
            piv = i;
        }
    }
    if (best == 0.0) return y;
    Interval rest = rhs;
    for (std::size_t j = 0; j < n; ++j)
        if (j != piv) rest -= normal[j] * y[j];
    Interval cut = intersection(y[piv], rest / normal[piv]);
    if (cut.isEmpty())
        throw std::runtime_error("section constraint is inconsistent with the enclosure");
    IVector out = y;
    out[piv] = cut;
    return out;
}

}  // namespace

PoincareMap::PoincareMap(VectorField& f, IVector par, LohnerOptions opts, AffineSection section)
    : f_(&f), par_(std::move(par)), opts_(std::move(opts)), sec_(std::move(section)) {}

PoincareResult PoincareMap::compute(const IVector& x0, const std::vector<Multipointer>& blocks,
                                    const std::vector<IVector>& seeds, double h0) const {
    CnLohner solver(*f_, par_, opts_);
    solver.init(x0, blocks, seeds);
    int r = 0;
    for (const auto& a : blocks) r = std::max(r, static_cast<int>(a.size()));

    // which side of the section the flow departs to
    int side = sideOf(sec_.eval(solver.state().hull()));
    bool leaving = (side == 0);
    if (leaving) {
        side = sideOf(dot(sec_.normal, f_->eval(solver.state().hull(), par_)));
        if (side == 0)
            throw std::runtime_error("flow is not transverse to the section at the initial set");
    }

    double h = h0;
    CnLohner::StepData sd;
    bool haveCrossing = false;
    while (!haveCrossing) {
        if (solver.time().hi() > maxTime)
            throw std::runtime_error("no section return before the time limit");
        if (h < opts_.hMin)
            throw std::runtime_error("step size underflow near the section");
        bool ok = false;
        try {
            ok = solver.prepare(Interval(h), sd);
        } catch (const interval_error&) {
            ok = false;
        }
        if (!ok) {
            h *= 0.5;
            continue;
        }
        Interval deriv = dot(sec_.normal, f_->eval(sd.e0, par_));
        if (leaving) {
            // still touching the section: the step is safe only while the
            // flow keeps moving away from it
            if (sideOf(deriv) != side) {
                h *= 0.5;
                continue;
            }
            solver.commit(sd);
            if (sideOf(sec_.eval(solver.state().hull())) == side) leaving = false;
            continue;
        }
        int endSide = sideOf(sec_.eval(solver.value(sd, sd.h)));
        if (endSide == side) {
            solver.commit(sd);
            h = std::min(h * 1.5, h0);
            continue;
        }
        if (endSide == -side && sideOf(deriv) == -side) {
            haveCrossing = true;
            break;
        }
        if (endSide == 0) {
            // the step ends astride the section: try to lengthen it so the
            // whole crossing happens inside a single monotone step
            double hg = h;
            for (int g = 0; g < 8; ++g) {
                hg *= 1.5;
                CnLohner::StepData sg;
                bool okg = false;
                try {
                    okg = solver.prepare(Interval(hg), sg);
                } catch (const interval_error&) {
                    okg = false;
                }
                if (!okg) break;
                if (sideOf(dot(sec_.normal, f_->eval(sg.e0, par_))) != -side) break;
                if (sideOf(sec_.eval(solver.value(sg, sg.h))) == -side) {
                    sd = sg;
                    haveCrossing = true;
                    break;
                }
            }
            if (haveCrossing) break;
        }
        h *= 0.5;
    }

    // The step enclosure has <normal, f> of one sign, so the section value
    // is strictly monotone along every trajectory and the crossing time is
    // unique; shrink its bracket on a grid of intermediate times.
    double lo = 0.0, hi = sd.h.hi();
    for (int round = 0; round < bracketRounds; ++round) {
        double base = lo;
        double step = (hi - base) / bracketGrid;
        if (!(step > 0.0)) break;
        for (int k = 1; k < bracketGrid; ++k) {
            double tau = base + k * step;
            if (tau >= hi) break;
            int s = sideOf(sec_.eval(solver.value(sd, Interval(tau))));
            if (s == side) {
                lo = tau;
            } else if (s == -side) {
                hi = tau;
                break;
            }
            // an undecided point sits in the band where trajectories are mid
            // crossing; later grid points may still be strictly on the far
            // side, so keep scanning
        }
    }
    Interval window(lo, hi);
    CnLohner::StepValues wv = solver.values(sd, window);

    PoincareResult out;
    out.returnTime = solver.time() + window;
    out.image = tightenAffine(wv.x, sec_.normal, sec_.offset);
    out.blocks = blocks;
    out.derivatives.resize(blocks.size());
    out.timeDerivatives.resize(blocks.size());
    if (blocks.empty()) return out;

    // Time derivatives of the flow and of the derivative blocks at the
    // crossing are Taylor coefficients of a fresh expansion seeded with the
    // crossing-window enclosures.
    VariationalJet tj = variational_jet(*f_, out.image, par_, blocks, wv.blocks,
                                        std::max(1, r));
    Interval denom = dot(sec_.normal, tj.x[1]);
    if (denom.contains(0.0))
        throw std::runtime_error("flow is not transverse to the section at the image");

    std::vector<double> fact(static_cast<std::size_t>(r) + 1, 1.0);
    for (int k = 1; k <= r; ++k)
        fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k) - 1] * k;
    std::map<Multipointer, int> idx;
    for (std::size_t b = 0; b < blocks.size(); ++b) idx[blocks[b]] = static_cast<int>(b);

    // Return-map derivatives split as acc + f(P) * (return-time derivative),
    // where acc collects the chain-rule terms built from lower-order data;
    // the time derivative is fixed by <normal, derivative> = 0.
    for (int p = 1; p <= r; ++p) {
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const Multipointer& a = blocks[b];
            if (static_cast<int>(a.size()) != p) continue;
            IVector acc = wv.blocks[b];
            for (int k = 2; k <= p; ++k) {
                for (const PartitionTuple& delta : partitions(p, k)) {
                    std::vector<Interval> parts(static_cast<std::size_t>(k));
                    Interval prodAll(1.0);
                    for (int j = 0; j < k; ++j) {
                        int bj = idx.at(submultipointer(a, delta[static_cast<std::size_t>(j)]));
                        parts[static_cast<std::size_t>(j)] =
                            out.timeDerivatives[static_cast<std::size_t>(bj)];
                        prodAll = prodAll * parts[static_cast<std::size_t>(j)];
                    }
                    acc += (Interval(fact[static_cast<std::size_t>(k)]) * prodAll) *
                           tj.x[static_cast<std::size_t>(k)];
                    for (int s = 0; s < k; ++s) {
                        Interval prod(1.0);
                        for (int j = 0; j < k; ++j)
                            if (j != s) prod = prod * parts[static_cast<std::size_t>(j)];
                        int bs = idx.at(submultipointer(a, delta[static_cast<std::size_t>(s)]));
                        acc += (Interval(fact[static_cast<std::size_t>(k) - 1]) * prod) *
                               tj.v[static_cast<std::size_t>(bs)][static_cast<std::size_t>(k) - 1];
                    }
                }
            }
            Interval dt = -dot(sec_.normal, acc) / denom;
            out.timeDerivatives[b] = dt;
            out.derivatives[b] = tightenAffine(acc + dt * tj.x[1], sec_.normal, Interval(0.0));
        }
    }
    return out;
}

FlowDerivatives flow_derivatives(VectorField& f, const IVector& par, const LohnerOptions& opts,
                                 const IVector& x0, const std::vector<Multipointer>& blocks,
                                 const std::vector<IVector>& seeds, const Interval& T,
                                 int steps) {
    CnLohner solver(f, par, opts);
    solver.init(x0, blocks, seeds);
    Interval H = T / Interval(static_cast<double>(steps));
    for (int i = 0; i < steps; ++i) solver.flow(H);
    FlowDerivatives out;
    out.image = solver.state().hull();
    out.derivatives.resize(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        out.derivatives[b] = solver.state().blockHull(b);
    return out;
}

}  // namespace crl
