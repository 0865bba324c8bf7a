#include "conga/approximator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <string>

#include "conga/parallel.h"
#include "conga/partitioner.h"

namespace conga {

VertexSet LaminarApproximator::members(int node) const {
  const ForestNode& nd = nodes[node];
  return VertexSet(std::vector<Vertex>(order.begin() + nd.lo, order.begin() + nd.hi));
}

namespace {

void check_levels(const std::vector<Partition>& levels) {
  if (levels.empty()) throw InputError("no partitions given");
  for (const Partition& p : levels)
    if (p.n() != levels.front().n()) throw InputError("partitions over different vertex counts");
}

// Intersects two partitions given as label vectors; ids in first-seen order.
std::vector<int> meet(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, int> ids;
  std::vector<int> out(a.size());
  for (size_t v = 0; v < a.size(); ++v) {
    auto [it, fresh] = ids.try_emplace({a[v], b[v]}, static_cast<int>(ids.size()));
    out[v] = it->second;
  }
  return out;
}

std::vector<int> relabel(const std::vector<int>& labels) {
  std::vector<int> single(labels.size(), 0);
  return meet(labels, single);
}

}  // namespace

std::vector<Partition> refinements(const std::vector<Partition>& levels) {
  check_levels(levels);
  const int L = static_cast<int>(levels.size());
  std::vector<Partition> out(L);
  std::vector<int> cur = relabel(levels[L - 1].labels());
  out[L - 1] = Partition::from_labels(cur);
  for (int i = L - 2; i >= 0; --i) {
    cur = meet(levels[i].labels(), cur);
    out[i] = Partition::from_labels(cur);
  }
  return out;
}

Partition common_refinement(const std::vector<Partition>& levels) {
  return refinements(levels).front();
}

LaminarApproximator assemble(const Graph& g, const std::vector<Partition>& levels, double alpha,
                             double beta) {
  check_levels(levels);
  const int n = g.n();
  if (levels.front().n() != n) throw InputError("hierarchy and graph disagree on n");
  const int L = static_cast<int>(levels.size());
  std::vector<Partition> r = refinements(levels);
  for (const VertexSet& c : levels.front().clusters())
    if (c.size() != 1) throw InternalError("first level is not the singleton partition");

  // Top-down forest construction; node_of[v] tracks the deepest node so far.
  std::vector<int> parent, level, depth, node_size;
  std::vector<int> node_of(n, -1);
  for (int i = L - 1; i >= 0; --i) {
    std::vector<int> next(n, -1);
    for (const VertexSet& c : r[i].clusters()) {
      int up = node_of[c[0]];
      for (Vertex v : c)
        if (node_of[v] != up) throw InternalError("refinement chain is broken");
      int id;
      bool same_as_parent = false;
      // c lies inside its parent, so equal sizes mean equal sets.
      if (up >= 0) same_as_parent = node_size[up] == c.size();
      if (same_as_parent) {
        id = up;
      } else {
        id = static_cast<int>(parent.size());
        parent.push_back(up);
        level.push_back(i + 1);
        depth.push_back(up >= 0 ? depth[up] + 1 : 0);
        node_size.push_back(c.size());
      }
      for (Vertex v : c) next[v] = id;
    }
    node_of = std::move(next);
  }
  const int k = static_cast<int>(parent.size());

  std::vector<std::vector<int>> children(k);
  std::vector<std::vector<Vertex>> own(k);
  for (int x = 0; x < k; ++x)
    if (parent[x] >= 0) children[parent[x]].push_back(x);
  for (Vertex v = 0; v < n; ++v) own[node_of[v]].push_back(v);

  // Preorder numbering; each node lists its own vertices before its children.
  LaminarApproximator out;
  out.n = n;
  out.L = L;
  out.nodes.resize(k);
  out.order.reserve(n);
  std::vector<int> new_id(k, -1);
  int counter = 0;
  std::vector<std::pair<int, size_t>> stack;
  for (int root = 0; root < k; ++root) {
    if (parent[root] >= 0) continue;
    stack.push_back({root, 0});
    new_id[root] = counter++;
    out.nodes[new_id[root]].lo = static_cast<int>(out.order.size());
    for (Vertex v : own[root]) out.order.push_back(v);
    while (!stack.empty()) {
      auto& [x, next_child] = stack.back();
      if (next_child < children[x].size()) {
        int c = children[x][next_child++];
        new_id[c] = counter++;
        out.nodes[new_id[c]].lo = static_cast<int>(out.order.size());
        for (Vertex v : own[c]) out.order.push_back(v);
        stack.push_back({c, 0});
      } else {
        out.nodes[new_id[x]].hi = static_cast<int>(out.order.size());
        stack.pop_back();
      }
    }
  }
  for (int x = 0; x < k; ++x) {
    ForestNode& nd = out.nodes[new_id[x]];
    nd.level = level[x];
    nd.parent = parent[x] >= 0 ? new_id[parent[x]] : -1;
  }

  // δC: each edge contributes to every node strictly below the meeting point.
  for (const Edge& e : g.edges()) {
    int a = node_of[e.u], b = node_of[e.v];
    while (a != b) {
      if (b == -1 || (a != -1 && depth[a] >= depth[b])) {
        out.nodes[new_id[a]].delta += e.cap;
        a = parent[a];
      } else {
        out.nodes[new_id[b]].delta += e.cap;
        b = parent[b];
      }
    }
  }

  out.K = 0;
  for (const ForestNode& nd : out.nodes) out.K += nd.hi - nd.lo;
  out.graph_checksum = graph_checksum(g);
  out.alpha = alpha;
  out.beta = beta;
  out.quality_bound = 5.0 * L * L * alpha * beta;
  return out;
}

LaminarApproximator assemble(const Graph& g, const Hierarchy& h) {
  return assemble(g, h.levels, h.alpha(), h.beta());
}

double estimate_congestion(const LaminarApproximator& approx, const Demand& b, double tol,
                           int64_t* visits) {
  if (static_cast<int>(b.size()) != approx.n) throw InputError("demand has the wrong length");
  std::vector<double> prefix(approx.n + 1, 0.0);
  for (int i = 0; i < approx.n; ++i) prefix[i + 1] = prefix[i] + b[approx.order[i]];
  double best = 0.0;
  for (const ForestNode& nd : approx.nodes) {
    double net = std::abs(prefix[nd.hi] - prefix[nd.lo]);
    if (nd.delta > 0.0) {
      best = std::max(best, net / nd.delta);
    } else if (net > tol) {
      best = kInfinity;
    }
  }
  if (visits) *visits = approx.n + static_cast<int64_t>(approx.nodes.size());
  return best;
}

std::vector<double> estimate_congestion_batch_serial(const LaminarApproximator& approx,
                                                     const std::vector<Demand>& demands,
                                                     double tol) {
  std::vector<double> out(demands.size());
  for (size_t i = 0; i < demands.size(); ++i) out[i] = estimate_congestion(approx, demands[i], tol);
  return out;
}

std::vector<double> estimate_congestion_batch(const LaminarApproximator& approx,
                                              const std::vector<Demand>& demands, double tol) {
  for (const Demand& b : demands)
    if (static_cast<int>(b.size()) != approx.n) throw InputError("demand has the wrong length");
  std::vector<double> out(demands.size());
  const int64_t count = static_cast<int64_t>(demands.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t i = 0; i < count; ++i) out[i] = estimate_congestion(approx, demands[i], tol);
  return out;
}

RestrictedCollection restrict_to(const LaminarApproximator& approx, const VertexSet& a) {
  const int n = approx.n;
  for (Vertex v : a)
    if (v < 0 || v >= n) throw InputError("restriction set is not a subset of V");
  std::vector<char> in_a = a.mask(n);
  RestrictedCollection out;
  for (int x = 0; x < static_cast<int>(approx.nodes.size()); ++x) {
    std::vector<Vertex> kept;
    for (int i = approx.nodes[x].lo; i < approx.nodes[x].hi; ++i)
      if (in_a[approx.order[i]]) kept.push_back(approx.order[i]);
    if (!kept.empty()) out.sets.emplace_back(std::move(kept));
  }
  std::sort(out.sets.begin(), out.sets.end());
  out.sets.erase(std::unique(out.sets.begin(), out.sets.end()), out.sets.end());
  out.x_marker = n;
  out.s_marker = n + 1;
  out.t_marker = n + 2;
  for (Vertex m : {out.x_marker, out.s_marker, out.t_marker})
    out.sets.push_back(VertexSet({m}));
  return out;
}

bool is_laminar(const std::vector<VertexSet>& sets) {
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      int common = set_intersection(sets[i], sets[j]).size();
      if (common != 0 && common != sets[i].size() && common != sets[j].size()) return false;
    }
  }
  return true;
}

namespace {

constexpr char kMagic[8] = {'C', 'O', 'N', 'G', 'A', 'A', 'P', 'X'};
constexpr uint32_t kVersion = 1;
constexpr size_t kHeaderBytes = 64;
constexpr size_t kNodeBytes = 24;

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

uint64_t fnv1a(const char* data, size_t len) {
  uint64_t h = 1469598103934665603ULL;
  for (size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

template <class T>
void put(std::string& out, T x) {
  char buf[sizeof(T)];
  std::memcpy(buf, &x, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  template <class T>
  T get(const char* what) {
    if (pos_ + sizeof(T) > s_.size()) throw ParseError(std::string("truncated ") + what, pos_);
    T x;
    std::memcpy(&x, s_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return x;
  }
  size_t pos() const { return pos_; }

 private:
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

std::string serialize(const LaminarApproximator& approx) {
  std::string out;
  out.reserve(kHeaderBytes + 4 * approx.order.size() + kNodeBytes * approx.nodes.size() + 8);
  out.append(kMagic, 8);
  put<uint32_t>(out, kVersion);
  put<uint32_t>(out, static_cast<uint32_t>(approx.n));
  put<uint32_t>(out, static_cast<uint32_t>(approx.L));
  put<uint32_t>(out, static_cast<uint32_t>(approx.nodes.size()));
  put<uint64_t>(out, approx.graph_checksum);
  put<double>(out, approx.alpha);
  put<double>(out, approx.beta);
  put<double>(out, approx.quality_bound);
  put<uint64_t>(out, static_cast<uint64_t>(approx.K));
  for (Vertex v : approx.order) put<uint32_t>(out, static_cast<uint32_t>(v));
  for (const ForestNode& nd : approx.nodes) {
    put<uint32_t>(out, static_cast<uint32_t>(nd.lo));
    put<uint32_t>(out, static_cast<uint32_t>(nd.hi));
    put<uint32_t>(out, static_cast<uint32_t>(nd.level));
    put<int32_t>(out, nd.parent);
    put<double>(out, nd.delta);
  }
  put<uint64_t>(out, fnv1a(out.data(), out.size()));
  return out;
}

LaminarApproximator deserialize(const std::string& bytes) {
  Reader in(bytes);
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw ParseError("bad magic", 0);
  in.get<uint64_t>("magic");
  size_t at = in.pos();
  if (in.get<uint32_t>("version") != kVersion) throw ParseError("unsupported version", at);
  LaminarApproximator a;
  a.n = static_cast<int>(in.get<uint32_t>("n"));
  at = in.pos();
  a.L = static_cast<int>(in.get<uint32_t>("level count"));
  if (a.L < 1) throw ParseError("level count must be positive", at);
  at = in.pos();
  uint32_t count = in.get<uint32_t>("node count");
  a.graph_checksum = in.get<uint64_t>("checksum");
  a.alpha = in.get<double>("alpha");
  a.beta = in.get<double>("beta");
  a.quality_bound = in.get<double>("quality bound");
  a.K = static_cast<int64_t>(in.get<uint64_t>("K"));

  const size_t expected = kHeaderBytes + 4ull * a.n + kNodeBytes * count + 8;
  if (bytes.size() < expected) throw ParseError("truncated stream", bytes.size());
  if (bytes.size() > expected) throw ParseError("trailing bytes", expected);

  std::vector<char> seen(a.n, 0);
  a.order.resize(a.n);
  for (int i = 0; i < a.n; ++i) {
    at = in.pos();
    uint32_t v = in.get<uint32_t>("vertex order");
    if (v >= static_cast<uint32_t>(a.n) || seen[v]) throw ParseError("order is not a permutation", at);
    seen[v] = 1;
    a.order[i] = static_cast<Vertex>(v);
  }
  a.nodes.resize(count);
  int64_t k_sum = 0;
  for (uint32_t x = 0; x < count; ++x) {
    at = in.pos();
    ForestNode& nd = a.nodes[x];
    nd.lo = static_cast<int>(in.get<uint32_t>("node lo"));
    nd.hi = static_cast<int>(in.get<uint32_t>("node hi"));
    nd.level = static_cast<int>(in.get<uint32_t>("node level"));
    nd.parent = in.get<int32_t>("node parent");
    nd.delta = in.get<double>("node delta");
    if (nd.lo < 0 || nd.lo >= nd.hi || nd.hi > a.n) throw ParseError("bad node range", at);
    if (nd.level < 1 || nd.level > a.L) throw ParseError("bad node level", at);
    if (nd.parent >= static_cast<int32_t>(x) || nd.parent < -1)
      throw ParseError("parent must precede child", at);
    if (nd.parent >= 0) {
      const ForestNode& p = a.nodes[nd.parent];
      if (nd.lo < p.lo || nd.hi > p.hi || nd.level >= p.level)
        throw ParseError("child not nested in parent", at);
    }
    if (!(nd.delta >= 0.0)) throw ParseError("negative boundary capacity", at);
    k_sum += nd.hi - nd.lo;
  }
  if (k_sum != a.K) throw ParseError("K does not match the node ranges", 56);
  at = in.pos();
  uint64_t trailer = in.get<uint64_t>("trailer");
  if (trailer != fnv1a(bytes.data(), at)) throw ParseError("checksum mismatch", at);
  return a;
}

}  // namespace conga
