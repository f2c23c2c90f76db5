#ifndef CRL_LOHNER_HPP
#define CRL_LOHNER_HPP

#include <vector>

#include "crl/combinatorics.hpp"
#include "crl/linalg.hpp"
#include "crl/vectorfield.hpp"

namespace crl {

struct LohnerOptions {
    std::vector<int> orders;  // Taylor order per derivative level, orders[0] = flow
    double hMin = 1e-8;
    LogNorm norm = LogNorm::LInf;
    bool naive = false;  // plain hull propagation, kept for comparison
    double resetRatio = 10.0;
    int maxEnclosureTries = 20;
};

std::vector<int> default_orders(int flowOrder, int r);

/// One component of the set representation v + C [q] + [B] [r]: v is a
/// point, C a point matrix, [B] encloses an orthogonal matrix; C and [B]
/// are shared between the base set and every derivative block.
struct DoubletonSet {
    IVector v, q, r;
};

struct CnState {
    std::vector<Multipointer> mps;  // derivative blocks, over initial directions
    bool naive = false;

    DoubletonSet base;
    std::vector<DoubletonSet> vb;
    IMatrix C, B;

    IVector nbase;              // naive mode storage
    std::vector<IVector> nvb;

    IVector hull() const;
    IVector blockHull(std::size_t b) const;
};

/// Set-valued integrator for the flow and its derivatives with respect
/// to initial conditions up to a fixed order, stepping with the Taylor
/// method and doubleton bookkeeping against the wrapping effect.
class CnLohner {
public:
    CnLohner(VectorField& f, IVector par, LohnerOptions opts);

    /// Start from the box x0. The derivative blocks are multipointers
    /// over initial directions 1..d with ambient seed vectors, closed
    /// under sub-multipointers and sorted.
    void init(const IVector& x0, const std::vector<Multipointer>& blocks,
              const std::vector<IVector>& seeds);

    struct StepData {
        Interval h;
        IVector e0;
        std::vector<IVector> eblocks;
        std::vector<IVector> point;  // solution series at the base point
        VariationalJet hullRun;      // series at the current hull
        VariationalJet enclRun;      // series at the a priori enclosures
    };
    struct StepJets {
        IVector T;               // image of the base point at time tau
        IVector Thull;           // image of the whole hull at time tau
        std::vector<IVector> F;  // derivative blocks of the time-tau map
        IMatrix J;
    };

    /// Validate a priori enclosures and expand the step series for step
    /// size exactly h; false when validation fails (try a shorter step).
    bool prepare(const Interval& h, StepData& sd) const;
    /// Taylor evaluation of the step jets at any tau inside [0, h].
    StepJets evalJets(const StepData& sd, const Interval& tau) const;
    void commit(const StepData& sd);

    struct StepValues {
        IVector x;                   // flow of the current set at time tau
        std::vector<IVector> blocks; // derivative blocks at time tau
    };
    /// Enclosures at an intermediate time of a prepared step, using the
    /// doubleton decomposition of the current set (tighter than the raw
    /// hull-run polynomials).
    IVector value(const StepData& sd, const Interval& tau) const;
    StepValues values(const StepData& sd, const Interval& tau) const;

    /// Advance total time exactly h, splitting into halves on enclosure
    /// failures.
    void flow(const Interval& h, int maxDepth = 24);

    const CnState& state() const { return st_; }
    const Interval& time() const { return t_; }
    VectorField& field() const { return *f_; }
    const IVector& params() const { return par_; }
    const LohnerOptions& options() const { return opts_; }
    const std::vector<Multipointer>& stepBlocks() const { return stepBlocks_; }
    int stepBlockIndex(const Multipointer& b) const;

private:
    void resetIfNeeded();

    VectorField* f_;
    IVector par_;
    LohnerOptions opts_;
    CnState st_;
    Interval t_{0.0};
    int r_ = 0;
    int maxOrder_ = 0;
    std::vector<Multipointer> stepBlocks_;  // over ambient coordinates
    std::vector<IVector> stepSeeds_;
};

}  // namespace crl

#endif
