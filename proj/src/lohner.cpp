#include "crl/lohner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "crl/enclosure.hpp"

namespace crl {

std::vector<int> default_orders(int flowOrder, int r) {
    std::vector<int> o(static_cast<std::size_t>(r) + 1, flowOrder);
    for (int d = 1; d <= r; ++d)
        o[static_cast<std::size_t>(d)] = std::max(4, flowOrder - d);
    return o;
}

IVector CnState::hull() const {
    if (naive) return nbase;
    return base.v + C * base.q + B * base.r;
}

IVector CnState::blockHull(std::size_t b) const {
    if (naive) return nvb[b];
    return vb[b].v + C * vb[b].q + B * vb[b].r;
}

CnLohner::CnLohner(VectorField& f, IVector par, LohnerOptions opts)
    : f_(&f), par_(std::move(par)), opts_(std::move(opts)) {}

int CnLohner::stepBlockIndex(const Multipointer& b) const {
    auto it = std::lower_bound(stepBlocks_.begin(), stepBlocks_.end(), b,
                               [](const Multipointer& x, const Multipointer& y) {
                                   return compare(x, y) < 0;
                               });
    if (it == stepBlocks_.end() || compare(*it, b) != 0)
        throw std::logic_error("unknown step block");
    return static_cast<int>(it - stepBlocks_.begin());
}

void CnLohner::init(const IVector& x0, const std::vector<Multipointer>& blocks,
                    const std::vector<IVector>& seeds) {
    const std::size_t n = x0.size();
    r_ = 0;
    for (const auto& a : blocks) r_ = std::max(r_, static_cast<int>(a.size()));
    // level 1 is always carried for the doubleton frames, even when no
    // derivative blocks were requested
    const int rr = std::max(1, r_);
    if (opts_.orders.empty()) opts_.orders = default_orders(12, rr);
    if (static_cast<int>(opts_.orders.size()) < r_ + 1)
        throw std::invalid_argument("need a Taylor order for every derivative level");
    while (static_cast<int>(opts_.orders.size()) < rr + 1)
        opts_.orders.push_back(std::max(4, opts_.orders[0] - 1));
    maxOrder_ = *std::max_element(opts_.orders.begin(), opts_.orders.end());
    f_->prepare(std::max(1, r_));

    stepBlocks_ = all_multipointers(static_cast<int>(n), std::max(1, r_));
    stepSeeds_.clear();
    for (const auto& b : stepBlocks_) {
        IVector s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = Interval(0.0);
        if (b.size() == 1) s[static_cast<std::size_t>(b[0] - 1)] = Interval(1.0);
        stepSeeds_.push_back(s);
    }

    st_ = CnState{};
    st_.mps = blocks;
    st_.naive = opts_.naive;
    t_ = Interval(0.0);
    if (st_.naive) {
        st_.nbase = x0;
        st_.nvb = seeds;
        return;
    }
    st_.C = IMatrix::identity(n);
    st_.B = IMatrix::identity(n);
    st_.base.v = midVector(x0);
    st_.base.q = x0 - st_.base.v;
    st_.base.r = IVector(n);
    for (std::size_t i = 0; i < n; ++i) st_.base.r[i] = Interval(0.0);
    st_.vb.clear();
    for (const auto& s : seeds) {
        DoubletonSet d;
        d.v = s;
        d.q = st_.base.r;  // zero vector
        d.r = st_.base.r;
        st_.vb.push_back(d);
    }
}

bool CnLohner::prepare(const Interval& h, StepData& sd) const {
    sd.h = h;
    IVector x = st_.hull();
    if (!rough_enclosure(*f_, x, par_, h.hi(), sd.e0, opts_.maxEnclosureTries)) return false;
    sd.eblocks = derivative_enclosures(*f_, sd.e0, par_, stepBlocks_, stepSeeds_, h.hi(),
                                       opts_.norm);
    sd.point = ode_jet(*f_, st_.naive ? midVector(x) : st_.base.v, par_, opts_.orders[0]);
    sd.hullRun = variational_jet(*f_, x, par_, stepBlocks_, stepSeeds_, maxOrder_);
    sd.enclRun = variational_jet(*f_, sd.e0, par_, stepBlocks_, sd.eblocks, maxOrder_ + 1);
    return true;
}

namespace {

IVector polyEval(const std::vector<IVector>& coeff, const IVector& rem, int order,
                 const Interval& tau) {
    const std::size_t n = coeff[0].size();
    // Horner form with the remainder folded in as coefficient order + 1
    IVector acc = rem;
    for (int k = order; k >= 0; --k) acc = coeff[static_cast<std::size_t>(k)] + tau * acc;
    return acc;
}

}  // namespace

CnLohner::StepJets CnLohner::evalJets(const StepData& sd, const Interval& tau) const {
    StepJets js;
    const std::size_t n = sd.e0.size();
    const int o1 = opts_.orders[0];
    js.T = polyEval(sd.point, sd.enclRun.x[static_cast<std::size_t>(o1) + 1], o1, tau);
    js.Thull = polyEval(sd.hullRun.x, sd.enclRun.x[static_cast<std::size_t>(o1) + 1], o1, tau);
    js.F.resize(stepBlocks_.size());
    for (std::size_t b = 0; b < stepBlocks_.size(); ++b) {
        const int ob = opts_.orders[stepBlocks_[b].size()];
        js.F[b] = polyEval(sd.hullRun.v[b], sd.enclRun.v[b][static_cast<std::size_t>(ob) + 1], ob,
                           tau);
    }
    js.J = IMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const IVector& col = js.F[static_cast<std::size_t>(
            stepBlockIndex(Multipointer{static_cast<int>(j) + 1}))];
        for (std::size_t i = 0; i < n; ++i) js.J(i, j) = col[i];
    }
    return js;
}

namespace {

// composition part of the propagation: contributions of partitions into
// two or more factors, evaluated from the step-map jets F and the hulls
// of the previous derivative blocks
IVector compositionSum(const Multipointer& a, const std::vector<IVector>& F,
                       const std::function<int(const Multipointer&)>& stepIdx,
                       const std::vector<IVector>& oldHulls,
                       const std::map<Multipointer, int>& ownIdx, std::size_t n) {
    IVector acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i] = Interval(0.0);
    const int p = static_cast<int>(a.size());
    for (int m = 2; m <= p; ++m) {
        for (const PartitionTuple& delta : partitions(p, m)) {
            std::vector<int> tuple(static_cast<std::size_t>(m), 0);
            while (true) {
                Multipointer b;
                Interval prod(1.0);
                for (int j = 0; j < m; ++j) {
                    int comp = tuple[static_cast<std::size_t>(j)];
                    b.push_back(comp + 1);
                    int fb = ownIdx.at(submultipointer(a, delta[static_cast<std::size_t>(j)]));
                    prod = prod * oldHulls[static_cast<std::size_t>(fb)][static_cast<std::size_t>(comp)];
                }
                std::sort(b.begin(), b.end());
                const IVector& fb = F[static_cast<std::size_t>(stepIdx(b))];
                for (std::size_t i = 0; i < n; ++i) acc[i] += fb[i] * prod;
                int j = m - 1;
                while (j >= 0 && tuple[static_cast<std::size_t>(j)] == static_cast<int>(n) - 1) --j;
                if (j < 0) break;
                ++tuple[static_cast<std::size_t>(j)];
                for (int l = j + 1; l < m; ++l) tuple[static_cast<std::size_t>(l)] = 0;
            }
        }
    }
    return acc;
}

}  // namespace

IVector CnLohner::value(const StepData& sd, const Interval& tau) const {
    StepJets js = evalJets(sd, tau);
    return st_.naive ? js.Thull
                     : js.T + js.J * (st_.C * st_.base.q + st_.B * st_.base.r);
}

CnLohner::StepValues CnLohner::values(const StepData& sd, const Interval& tau) const {
    StepJets js = evalJets(sd, tau);
    const std::size_t n = sd.e0.size();
    std::map<Multipointer, int> ownIdx;
    for (std::size_t b = 0; b < st_.mps.size(); ++b) ownIdx[st_.mps[b]] = static_cast<int>(b);
    auto stepIdx = [this](const Multipointer& b) { return stepBlockIndex(b); };
    std::vector<IVector> oldHulls(st_.mps.size());
    for (std::size_t b = 0; b < st_.mps.size(); ++b) oldHulls[b] = st_.blockHull(b);

    StepValues out;
    out.x = st_.naive ? js.Thull
                      : js.T + js.J * (st_.C * st_.base.q + st_.B * st_.base.r);
    out.blocks.resize(st_.mps.size());
    for (std::size_t b = 0; b < st_.mps.size(); ++b) {
        IVector alpha = compositionSum(st_.mps[b], js.F, stepIdx, oldHulls, ownIdx, n);
        out.blocks[b] = alpha + js.J * oldHulls[b];
    }
    return out;
}

void CnLohner::commit(const StepData& sd) {
    StepJets js = evalJets(sd, sd.h);
    const std::size_t n = sd.e0.size();
    std::map<Multipointer, int> ownIdx;
    for (std::size_t b = 0; b < st_.mps.size(); ++b) ownIdx[st_.mps[b]] = static_cast<int>(b);
    auto stepIdx = [this](const Multipointer& b) { return stepBlockIndex(b); };

    std::vector<IVector> oldHulls(st_.mps.size());
    for (std::size_t b = 0; b < st_.mps.size(); ++b) oldHulls[b] = st_.blockHull(b);

    if (st_.naive) {
        st_.nbase = js.Thull;
        std::vector<IVector> next(st_.mps.size());
        for (std::size_t b = 0; b < st_.mps.size(); ++b) {
            IVector alpha = compositionSum(st_.mps[b], js.F, stepIdx, oldHulls, ownIdx, n);
            next[b] = alpha + js.J * oldHulls[b];
        }
        st_.nvb = std::move(next);
        t_ += sd.h;
        return;
    }

    IMatrix mJ = midMatrix(js.J);
    IMatrix dJ = js.J - mJ;
    IMatrix Q(n, n);
    if (!orthogonal_enclosure(mJ * midMatrix(st_.B), Q)) Q = IMatrix::identity(n);
    IMatrix Qt = transpose(Q);
    IMatrix G = Qt * (mJ * st_.B);
    IMatrix Z = mJ * st_.C;
    IMatrix Cnew = midMatrix(Z);
    IMatrix dZ = Z - Cnew;

    auto update = [&](DoubletonSet& set, const IVector& sVec) {
        IVector vnew = midVector(sVec);
        IVector ds = sVec - vnew;
        IVector rnew = Qt * (ds + dZ * set.q) + G * set.r;
        set.v = vnew;
        set.r = rnew;
    };

    IVector sBase = js.T + dJ * (st_.C * st_.base.q + st_.B * st_.base.r);
    update(st_.base, sBase);
    for (std::size_t b = 0; b < st_.mps.size(); ++b) {
        IVector alpha = compositionSum(st_.mps[b], js.F, stepIdx, oldHulls, ownIdx, n);
        IVector sA = alpha + js.J * st_.vb[b].v +
                     dJ * (st_.C * st_.vb[b].q + st_.B * st_.vb[b].r);
        update(st_.vb[b], sA);
    }
    st_.C = Cnew;
    st_.B = Q;
    resetIfNeeded();
    t_ += sd.h;
}

void CnLohner::resetIfNeeded() {
    bool need = false;
    auto check = [&](const DoubletonSet& s) {
        double dq = s.q.maxDiam(), dr = s.r.maxDiam();
        if (dr > opts_.resetRatio * dq && dr > 0.0) need = true;
    };
    check(st_.base);
    for (const auto& s : st_.vb) check(s);
    if (!need) return;
    const std::size_t n = st_.base.v.size();
    IMatrix T1 = transpose(st_.B) * st_.C;
    IMatrix Cnew = midMatrix(st_.B);
    IMatrix dB = st_.B - Cnew;
    auto apply = [&](DoubletonSet& s) {
        IVector qnew = s.r + T1 * s.q;
        s.r = dB * qnew;
        s.q = qnew;
    };
    apply(st_.base);
    for (auto& s : st_.vb) apply(s);
    st_.C = Cnew;
    st_.B = IMatrix::identity(n);
}

void CnLohner::flow(const Interval& h, int maxDepth) {
    if (h.hi() <= 0.0) return;
    StepData sd;
    bool ok = false;
    if (h.hi() >= opts_.hMin) {
        try {
            ok = prepare(h, sd);
        } catch (const interval_error&) {
            ok = false;  // overflow or an empty intersection: retry shorter
        }
    }
    if (ok) {
        commit(sd);
        return;
    }
    if (maxDepth <= 0 || h.hi() * 0.5 < opts_.hMin)
        throw std::runtime_error("step size underflow while validating enclosures");
    Interval half = Interval(0.5) * h;
    flow(half, maxDepth - 1);
    flow(half, maxDepth - 1);
}

}  // namespace crl
