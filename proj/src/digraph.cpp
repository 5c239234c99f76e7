#include "darwin/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace darwin {

std::string to_string(DigraphTag tag) {
  switch (tag) {
    case DigraphTag::Koenig: return "Koenig";
    case DigraphTag::EnvStronglyConnected: return "EnvStronglyConnected";
    case DigraphTag::Other: return "Other";
  }
  return "Other";
}

void InteractionDigraph::validate() const {
  layout.validate();
  const int nq = layout.qubits();
  if (edges.empty()) throw ValidationError("digraph has no edges");
  if (probabilities.size() != edges.size())
    throw ValidationError("digraph probabilities must have one entry per edge");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    std::ostringstream id;
    id << "(" << e.control << "," << e.target << ")";
    if (e.control < 0 || e.control >= nq || e.target < 0 || e.target >= nq)
      throw ValidationError("edge " + id.str() + " is out of range");
    if (e.control == e.target) throw ValidationError("edge " + id.str() + " is a self-loop");
    if (e.target < layout.k) throw ValidationError("edge " + id.str() + " targets a system qubit");
    if (!seen.insert({e.control, e.target}).second)
      throw ValidationError("edge " + id.str() + " is duplicated");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("edge probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("edge probabilities must sum to 1");
}

InteractionDigraph make_digraph(RegisterLayout layout, std::vector<Edge> edges,
                                std::vector<double> probabilities) {
  if (probabilities.empty() && !edges.empty())
    probabilities.assign(edges.size(), 1.0 / static_cast<double>(edges.size()));
  InteractionDigraph g{layout, std::move(edges), std::move(probabilities)};
  g.validate();
  return g;
}

InteractionDigraph koenig(int k, int n) {
  if (k < 1 || n < 1) throw ValidationError("koenig requires k >= 1 and n >= 1");
  std::vector<Edge> edges;
  for (int s = 0; s < k; ++s)
    for (int j = 0; j < n; ++j) edges.push_back({s, k + j});
  return make_digraph({k, n}, std::move(edges));
}

InteractionDigraph with_env_bindings(const InteractionDigraph& g, const std::vector<Edge>& extra,
                                     std::optional<std::vector<double>> probabilities) {
  std::vector<Edge> edges = g.edges;
  for (const Edge& e : extra) {
    if (e.control < g.layout.k || e.target < g.layout.k)
      throw ValidationError("environment bindings must connect two E qubits");
    edges.push_back(e);
  }
  return make_digraph(g.layout, std::move(edges), probabilities.value_or(std::vector<double>{}));
}

InteractionDigraph complete_env(int k, int n) {
  std::vector<Edge> extra;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) extra.push_back({k + a, k + b});
  return with_env_bindings(koenig(k, n), extra);
}

InteractionDigraph env_cycle(int k, int n) {
  if (n < 2) throw ValidationError("an environment cycle needs n >= 2");
  std::vector<Edge> extra;
  for (int a = 0; a < n; ++a) extra.push_back({k + a, k + (a + 1) % n});
  return with_env_bindings(koenig(k, n), extra);
}

namespace {

std::vector<char> reach(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace

DigraphClass classify(const InteractionDigraph& g) {
  const int k = g.layout.k;
  const int n = g.layout.n;
  std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n)), bwd(static_cast<std::size_t>(n));
  DigraphClass out;
  for (const Edge& e : g.edges) {
    if (e.control >= k) {
      ++out.e_binding_count;
      fwd[static_cast<std::size_t>(e.control - k)].push_back(e.target - k);
      bwd[static_cast<std::size_t>(e.target - k)].push_back(e.control - k);
    }
  }
  if (out.e_binding_count == 0) {
    out.tag = DigraphTag::Koenig;
    return out;
  }
  auto all = [](const std::vector<char>& v) { return std::all_of(v.begin(), v.end(), [](char c) { return c != 0; }); };
  bool strong = n >= 2 && all(reach(fwd, 0)) && all(reach(bwd, 0));
  out.tag = strong ? DigraphTag::EnvStronglyConnected : DigraphTag::Other;
  return out;
}

bool is_full_koenig(const InteractionDigraph& g) {
  if (g.edges.size() != static_cast<std::size_t>(g.layout.k * g.layout.n)) return false;
  if (classify(g).tag != DigraphTag::Koenig) return false;
  std::set<std::pair<int, int>> have;
  for (const Edge& e : g.edges) have.insert({e.control, e.target});
  return static_cast<int>(have.size()) == g.layout.k * g.layout.n;
}

bool is_minimal_regime(const InteractionDigraph& g) {
  if (classify(g).tag != DigraphTag::EnvStronglyConnected) return false;
  std::vector<char> drives(static_cast<std::size_t>(g.layout.k), 0);
  for (const Edge& e : g.edges)
    if (e.control < g.layout.k) drives[static_cast<std::size_t>(e.control)] = 1;
  return std::all_of(drives.begin(), drives.end(), [](char c) { return c != 0; });
}

}  // namespace darwin
