#include "conga/generators.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace conga {

namespace {

class Builder {
 public:
  Builder(int n, const GenOptions& o) : n_(n), rng_(o.seed), max_cap_(o.max_cap) {}

  double cap() {
    return static_cast<double>(std::uniform_int_distribution<int>(1, max_cap_)(rng_));
  }
  bool add(int u, int v, double c) {
    if (u == v) return false;
    auto key = std::minmax(u, v);
    if (!seen_.insert(key).second) return false;
    edges_.push_back({u, v, c});
    return true;
  }
  bool add(int u, int v) { return add(u, v, cap()); }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }
  Graph build(double W) { return Graph(n_, std::move(edges_), W); }
  int size() const { return static_cast<int>(edges_.size()); }

 private:
  int n_;
  std::mt19937_64 rng_;
  int max_cap_;
  std::set<std::pair<int, int>> seen_;
  std::vector<Edge> edges_;
};

}  // namespace

const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> families = {"gnm", "grid", "two-cliques",
                                                    "path", "star", "power-law"};
  return families;
}

Graph generate(const std::string& family, int n, const GenOptions& o) {
  if (n < 1) throw InputError("n must be at least 1");
  if (o.max_cap < 1) throw InputError("max capacity must be at least 1");
  Builder b(n, o);
  double W = o.max_cap;
  if (family == "gnm") {
    // Random recursive tree plus extra uniform pairs, so the result is connected.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), b.rng());
    for (int i = 1; i < n; ++i) b.add(perm[i], perm[b.uniform(0, i - 1)]);
    const long max_edges = static_cast<long>(n) * (n - 1) / 2;
    const long target = std::min<long>(max_edges, (n - 1) + (o.extra_edges < 0 ? n : o.extra_edges));
    for (long tries = 0; b.size() < target && tries < 64 * target; ++tries)
      b.add(b.uniform(0, n - 1), b.uniform(0, n - 1));
  } else if (family == "grid") {
    int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    int cols = (n + rows - 1) / rows;
    for (int v = 0; v < n; ++v) {
      int r = v / cols, c = v % cols;
      if (c + 1 < cols && v + 1 < n) b.add(v, v + 1);
      if (r + 1 < rows && v + cols < n) b.add(v, v + cols);
    }
  } else if (family == "two-cliques") {
    if (n < 2) throw InputError("two-cliques needs n >= 2");
    if (!(o.bridge_cap >= 1.0)) throw InputError("bridge capacity must be at least 1");
    int half = n / 2;
    for (int u = 0; u < half; ++u)
      for (int v = u + 1; v < half; ++v) b.add(u, v);
    for (int u = half; u < n; ++u)
      for (int v = u + 1; v < n; ++v) b.add(u, v);
    b.add(0, half, o.bridge_cap);
    W = std::max(W, o.bridge_cap);
  } else if (family == "path") {
    for (int v = 0; v + 1 < n; ++v) b.add(v, v + 1);
  } else if (family == "star") {
    for (int v = 1; v < n; ++v) b.add(0, v);
  } else if (family == "power-law") {
    // Preferential attachment with two links per new vertex.
    std::vector<int> ends;
    for (int v = 1; v < n; ++v) {
      int links = std::min(v, 2);
      for (int k = 0; k < links; ++k) {
        int target = ends.empty() ? 0 : ends[b.uniform(0, static_cast<int>(ends.size()) - 1)];
        if (!b.add(v, target)) continue;
        ends.push_back(v);
        ends.push_back(target);
      }
    }
  } else {
    throw InputError("unknown graph family '" + family + "'");
  }
  return b.build(W);
}

}  // namespace conga
