#ifndef CRL_COMBINATORICS_HPP
#define CRL_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

namespace crl {

/// Nondecreasing sequence of variable indices in [1,n]; names the operator
/// d^p / dx_{a_1} ... dx_{a_p}.
using Multipointer = std::vector<int>;

/// Vector of per-variable differentiation counts (length n).
using Multiindex = std::vector<int>;

/// Ordered tuple of blocks partitioning (1,...,p); labels one term of the
/// higher-order chain rule.
using PartitionTuple = std::vector<Multipointer>;

// Lambda bijection between multipointers over [1,n] and multiindices of
// the same total order.
Multiindex lambda(const Multipointer& a, int n);
Multipointer lambda_inverse(const Multiindex& alpha);

/// Total order on multipointers: first differing entry decides, prefixes
/// precede extensions.
int compare(const Multipointer& a, const Multipointer& b);  // <0, 0, >0

/// a_delta: entries of a selected by the index block delta (1-based).
Multipointer submultipointer(const Multipointer& a, const Multipointer& delta);

/// Merge of two multipointers as sorted multisets.
Multipointer mp_add(const Multipointer& a, const Multipointer& b);

/// All tuples (delta_1 <= ... <= delta_k) of blocks covering (1,...,p)
/// exactly, in the deterministic recursion order; cached per (p,k).
const std::vector<PartitionTuple>& partitions(int p, int k);

/// All multipointers over [1,n] of orders 1..r in the linear order,
/// i.e. the index set of derivative blocks the integrator carries.
std::vector<Multipointer> all_multipointers(int n, int r);

std::int64_t stirling2(int p, int k);  // |N^p(k)|
double multiindex_factorial(const Multiindex& alpha);
int multiindex_order(const Multiindex& alpha);

}  // namespace crl

#endif
