#include "crl/variational.hpp"

#include <map>
#include <stdexcept>

namespace crl {

namespace {

std::vector<IVector> rhs_impl(const VectorField& f, const IVector& x, const IVector& par,
                              const std::vector<Multipointer>& blocks,
                              const std::vector<IVector>& values, int minFactors) {
    const int n = f.dim();
    int r = 0;
    std::map<Multipointer, int> blockIdx;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        blockIdx[blocks[b]] = static_cast<int>(b);
        r = std::max(r, static_cast<int>(blocks[b].size()));
    }
    auto partials = f.evalPartials(r, x, par);
    std::vector<IVector> out(blocks.size(), IVector(static_cast<std::size_t>(n)));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Multipointer& a = blocks[b];
        const int p = static_cast<int>(a.size());
        IVector acc(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) acc[i] = Interval(0.0);
        for (int m = minFactors; m <= p; ++m) {
            for (const PartitionTuple& delta : partitions(p, m)) {
                std::vector<int> tuple(static_cast<std::size_t>(m), 0);
                while (true) {
                    Multiindex beta(static_cast<std::size_t>(n), 0);
                    Interval prod(1.0);
                    for (int j = 0; j < m; ++j) {
                        int comp = tuple[static_cast<std::size_t>(j)];
                        ++beta[static_cast<std::size_t>(comp)];
                        int fb = blockIdx.at(submultipointer(a, delta[static_cast<std::size_t>(j)]));
                        prod = prod * values[static_cast<std::size_t>(fb)][static_cast<std::size_t>(comp)];
                    }
                    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
                        acc[i] += partials[i].at(beta) * prod;
                    int j = m - 1;
                    while (j >= 0 && tuple[static_cast<std::size_t>(j)] == n - 1) --j;
                    if (j < 0) break;
                    ++tuple[static_cast<std::size_t>(j)];
                    for (int l = j + 1; l < m; ++l) tuple[static_cast<std::size_t>(l)] = 0;
                }
            }
        }
        out[b] = acc;
    }
    return out;
}

}  // namespace

std::vector<IVector> variational_rhs(const VectorField& f, const IVector& x, const IVector& par,
                                     const std::vector<Multipointer>& blocks,
                                     const std::vector<IVector>& values) {
    return rhs_impl(f, x, par, blocks, values, 1);
}

std::vector<IVector> variational_nonlinear(const VectorField& f, const IVector& x,
                                           const IVector& par,
                                           const std::vector<Multipointer>& blocks,
                                           const std::vector<IVector>& values) {
    return rhs_impl(f, x, par, blocks, values, 2);
}

}  // namespace crl
