#include "regspec/sampler.hpp"

#include <algorithm>

namespace regspec {

std::int64_t SamplerConfig::effective_burn_in() const {
  if (burn_in_steps > 0) return burn_in_steps;
  return std::max<std::int64_t>(10000, 20LL * n_vertices * degree);
}

std::int64_t SamplerConfig::effective_thinning() const {
  if (thinning > 0) return thinning;
  return 2LL * n_vertices * degree;
}

RegularGraph circulant_seed(int n, int d) {
  if (d < 0 || d > n - 1) throw std::invalid_argument("circulant_seed: bad degree");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("circulant_seed: N*d odd is infeasible");
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int off = 1; off <= d / 2; ++off) {
      adj[i].push_back((i + off) % n);
      adj[i].push_back(((i - off) % n + n) % n);
    }
    if (d % 2 == 1) adj[i].push_back((i + n / 2) % n);
  }
  return RegularGraph(n, d, std::move(adj));
}

SwitchChain::SwitchChain(const RegularGraph& start)
    : n_(start.n()), d_(start.degree()) {
  words_ = (static_cast<std::size_t>(n_) + 63) / 64;
  bits_ = start.packed_bits();
  edge_list_ = start.edges();
}

bool SwitchChain::step(Rng& rng) {
  ++attempts_;
  const std::uint64_t m = edge_list_.size();
  if (m < 2) return false;
  const std::uint64_t a = rng.next_below(2 * m);
  const std::uint64_t b = rng.next_below(2 * m);
  auto [i, k] = edge_list_[a >> 1];
  if (a & 1) std::swap(i, k);
  auto [j, l] = edge_list_[b >> 1];
  if (b & 1) std::swap(j, l);
  // need edges ik, jl present (by construction), ij and kl absent, indices
  // distinct; then switch to ij, kl
  if (i == j || i == l || k == j || k == l) return false;
  if (bit(i, j) || bit(k, l)) return false;
  flip(i, k); flip(k, i);
  flip(j, l); flip(l, j);
  flip(i, j); flip(j, i);
  flip(k, l); flip(l, k);
  edge_list_[a >> 1] = {std::min(i, j), std::max(i, j)};
  edge_list_[b >> 1] = {std::min(k, l), std::max(k, l)};
  ++accepted_;
  return true;
}

void SwitchChain::advance(std::int64_t steps, Rng& rng) {
  for (std::int64_t s = 0; s < steps; ++s) step(rng);
}

RegularGraph SwitchChain::materialize() const {
  std::vector<std::vector<int>> adj(n_);
  for (auto& v : adj) v.reserve(d_);
  for (const auto& [x, y] : edge_list_) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  return RegularGraph(n_, d_, std::move(adj));
}

RegularGraph switch_chain_step(const RegularGraph& g, Rng& rng) {
  SwitchChain chain(g);
  chain.step(rng);
  return chain.materialize();
}

UniformSampler::UniformSampler(const SamplerConfig& cfg)
    : cfg_(cfg), chain_(circulant_seed(cfg.n_vertices, cfg.degree)), rng_(cfg.rng_seed) {}

RegularGraph UniformSampler::next() {
  if (!burned_in_) {
    chain_.advance(cfg_.effective_burn_in(), rng_);
    burned_in_ = true;
  } else {
    chain_.advance(cfg_.effective_thinning(), rng_);
  }
  return chain_.materialize();
}

RegularGraph sample_uniform(const SamplerConfig& cfg) {
  UniformSampler s(cfg);
  return s.next();
}

namespace {

void enumerate_rec(int n, int d, std::vector<std::vector<int>>& adj,
                   std::vector<int>& deg, int v,
                   std::vector<RegularGraph>& out) {
  while (v < n && deg[v] == d) ++v;
  if (v == n) {
    out.push_back(RegularGraph(n, d, adj));
    if (out.size() > 1000000)
      throw resource_guard_exceeded("enumerate_all: more than 10^6 graphs");
    return;
  }
  const int need = d - deg[v];
  // pick `need` neighbors of v among deficient vertices > v, increasing
  std::vector<int> cands;
  for (int u = v + 1; u < n; ++u)
    if (deg[u] < d) cands.push_back(u);
  if (static_cast<int>(cands.size()) < need) return;
  std::vector<int> pick(need);
  auto choose = [&](auto&& self, int idx, int from) -> void {
    if (idx == need) {
      for (int u : pick) {
        adj[v].push_back(u);
        adj[u].push_back(v);
        ++deg[v]; ++deg[u];
      }
      enumerate_rec(n, d, adj, deg, v + 1, out);
      for (int u : pick) {
        adj[v].pop_back();
        adj[u].pop_back();
        --deg[v]; --deg[u];
      }
      return;
    }
    for (int t = from; t <= static_cast<int>(cands.size()) - (need - idx); ++t) {
      pick[idx] = cands[t];
      self(self, idx + 1, t + 1);
    }
  };
  choose(choose, 0, 0);
}

}  // namespace

std::vector<RegularGraph> enumerate_all(int n, int d) {
  if (d < 0 || d > n - 1 || (static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("enumerate_all: infeasible (n,d)");
  std::vector<RegularGraph> out;
  std::vector<std::vector<int>> adj(n);
  std::vector<int> deg(n, 0);
  enumerate_rec(n, d, adj, deg, 0, out);
  return out;
}

}  // namespace regspec
