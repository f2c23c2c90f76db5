#include "crl/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace crl {

Multiindex lambda(const Multipointer& a, int n) {
  Multiindex alpha(static_cast<std::size_t>(n), 0);
  for (int idx : a) {
    if (idx < 1 || idx > n) throw std::invalid_argument("multipointer entry out of range");
    ++alpha[static_cast<std::size_t>(idx - 1)];
  }
  return alpha;
}

Multipointer lambda_inverse(const Multiindex& alpha) {
  Multipointer a;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0) throw std::invalid_argument("negative multiindex entry");
    for (int c = 0; c < alpha[i]; ++c) a.push_back(static_cast<int>(i) + 1);
  }
  return a;
}

int compare(const Multipointer& a, const Multipointer& b) {
  const std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

Multipointer submultipointer(const Multipointer& a, const Multipointer& delta) {
  Multipointer out;
  out.reserve(delta.size());
  for (int pos : delta) {
    if (pos < 1 || pos > static_cast<int>(a.size()))
      throw std::invalid_argument("block position out of range");
    out.push_back(a[static_cast<std::size_t>(pos - 1)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Multipointer mp_add(const Multipointer& a, const Multipointer& b) {
  Multipointer out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

// Set partitions of (1,...,p) into k blocks via the Stirling recursion:
// extend each k-block partition of p-1 by placing p into one of its blocks,
// and each (k-1)-block partition of p-1 by the singleton block (p).
std::vector<PartitionTuple> build_partitions(int p, int k) {
  if (k < 1 || k > p) return {};
  if (p == 1) return {{{1}}};
  std::vector<PartitionTuple> out;
  for (const PartitionTuple& t : partitions(p - 1, k)) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      PartitionTuple s = t;
      s[j].push_back(p);
      out.push_back(std::move(s));
    }
  }
  for (const PartitionTuple& t : partitions(p - 1, k - 1)) {
    PartitionTuple s = t;
    s.push_back({p});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

const std::vector<PartitionTuple>& partitions(int p, int k) {
  static std::map<std::pair<int, int>, std::vector<PartitionTuple>> cache;
  static std::recursive_mutex mtx;
  std::lock_guard<std::recursive_mutex> lock(mtx);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_partitions(p, k)).first;
  return it->second;
}

std::vector<Multipointer> all_multipointers(int n, int r) {
  std::vector<Multipointer> out;
  std::vector<Multipointer> level;
  for (int i = 1; i <= n; ++i) level.push_back({i});
  out.insert(out.end(), level.begin(), level.end());
  for (int d = 2; d <= r; ++d) {
    std::vector<Multipointer> next;
    for (const Multipointer& a : level) {
      for (int i = a.back(); i <= n; ++i) {
        Multipointer b = a;
        b.push_back(i);
        next.push_back(std::move(b));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(),
            [](const Multipointer& a, const Multipointer& b) { return compare(a, b) < 0; });
  return out;
}

std::int64_t stirling2(int p, int k) {
  if (k < 0 || k > p) return 0;
  if (p == 0) return k == 0 ? 1 : 0;
  if (k == 0) return 0;
  return static_cast<std::int64_t>(k) * stirling2(p - 1, k) + stirling2(p - 1, k - 1);
}

double multiindex_factorial(const Multiindex& alpha) {
  double f = 1.0;
  for (int c : alpha)
    for (int j = 2; j <= c; ++j) f *= j;
  return f;
}

int multiindex_order(const Multiindex& alpha) {
  int s = 0;
  for (int c : alpha) s += c;
  return s;
}

}  // namespace crl
