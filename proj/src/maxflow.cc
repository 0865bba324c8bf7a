#include "conga/maxflow.h"

#include <algorithm>
#include <deque>

namespace conga {

int FlowNetwork::add_arc(int u, int v, double cap, double reverse_cap) {
  int a = static_cast<int>(to_.size());
  to_.push_back(v);
  cap_.push_back(cap);
  flow_.push_back(0.0);
  next_.push_back(head_[u]);
  head_[u] = a;
  to_.push_back(u);
  cap_.push_back(reverse_cap);
  flow_.push_back(0.0);
  next_.push_back(head_[v]);
  head_[v] = a + 1;
  return a;
}

bool FlowNetwork::bfs(int s, int t, double eps) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> q{s};
  level_[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int a = head_[v]; a != -1; a = next_[a]) {
      if (level_[to_[a]] < 0 && cap_[a] - flow_[a] > eps) {
        level_[to_[a]] = level_[v] + 1;
        q.push_back(to_[a]);
      }
    }
  }
  return level_[t] >= 0;
}

double FlowNetwork::dfs(int v, int t, double pushed, double eps) {
  if (v == t) return pushed;
  for (int& a = iter_[v]; a != -1; a = next_[a]) {
    int w = to_[a];
    double r = cap_[a] - flow_[a];
    if (level_[w] != level_[v] + 1 || r <= eps) continue;
    double got = dfs(w, t, std::min(pushed, r), eps);
    if (got > 0.0) {
      flow_[a] += got;
      flow_[a ^ 1] -= got;
      return got;
    }
  }
  return 0.0;
}

double FlowNetwork::max_flow(int s, int t, double eps) {
  if (s == t) throw InputError("max flow with s == t");
  double total = 0.0;
  while (bfs(s, t, eps)) {
    std::copy(head_.begin(), head_.end(), iter_.begin());
    while (double got = dfs(s, t, kInfinity, eps)) total += got;
  }
  return total;
}

std::vector<char> FlowNetwork::source_side(int s, double eps) const {
  std::vector<char> seen(n(), 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a = head_[v]; a != -1; a = next_[a]) {
      if (!seen[to_[a]] && cap_[a] - flow_[a] > eps) {
        seen[to_[a]] = 1;
        stack.push_back(to_[a]);
      }
    }
  }
  return seen;
}

MaxFlowResult exact_max_flow(const Graph& g, Vertex s, Vertex t) {
  if (s < 0 || t < 0 || s >= g.n() || t >= g.n()) throw InputError("terminal out of range");
  if (s == t) throw InputError("max flow with s == t");
  FlowNetwork net(g.n());
  std::vector<int> arc(g.m());
  for (EdgeId e = 0; e < g.m(); ++e)
    arc[e] = net.add_undirected(g.edge(e).u, g.edge(e).v, g.edge(e).cap);
  const double eps = 1e-13 * (1.0 + g.total_capacity());
  MaxFlowResult r;
  r.value = net.max_flow(s, t, eps);
  r.flow = EdgeFlow(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) r.flow.value[e] = net.flow(arc[e]);
  std::vector<char> side = net.source_side(s, eps);
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.n(); ++v)
    if (side[v]) members.push_back(v);
  r.cut = VertexSet(std::move(members));
  return r;
}

}  // namespace conga
