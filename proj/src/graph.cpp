#include "regspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace regspec {

SwitchMove::SwitchMove(int i_, int j_, int k_, int l_) : i(i_), j(j_), k(k_), l(l_) {
  if (i == j || i == k || i == l || j == k || j == l || k == l)
    throw std::invalid_argument("SwitchMove: indices must be pairwise distinct");
  if (i < 0 || j < 0 || k < 0 || l < 0)
    throw std::invalid_argument("SwitchMove: negative vertex index");
}

int SignedPerturbation::row_sum(int x) const {
  int s = 0;
  for (const auto& e : entries)
    if (e.x == x) s += e.value;
  return s;
}

RegularGraph::RegularGraph(int n_vertices, int degree,
                           std::vector<std::vector<int>> neighbor_lists)
    : n_(n_vertices), d_(degree), adj_(std::move(neighbor_lists)) {
  if (n_ <= 0 || d_ < 0 || d_ > n_ - 1)
    throw std::invalid_argument("RegularGraph: need 0 <= d <= N-1, N > 0");
  if ((static_cast<long long>(n_) * d_) % 2 != 0)
    throw std::invalid_argument("RegularGraph: N*d must be even");
  if (static_cast<int>(adj_.size()) != n_)
    throw std::invalid_argument("RegularGraph: neighbor list count != N");

  words_ = (static_cast<std::size_t>(n_) + 63) / 64;
  bits_.assign(words_ * n_, 0);
  for (int x = 0; x < n_; ++x) {
    auto& nb = adj_[x];
    if (static_cast<int>(nb.size()) != d_)
      throw std::invalid_argument("RegularGraph: vertex degree != d");
    std::sort(nb.begin(), nb.end());
    for (std::size_t t = 0; t < nb.size(); ++t) {
      int y = nb[t];
      if (y < 0 || y >= n_ || y == x)
        throw std::invalid_argument("RegularGraph: bad neighbor index");
      if (t > 0 && nb[t - 1] == y)
        throw std::invalid_argument("RegularGraph: duplicate edge");
      bits_[static_cast<std::size_t>(x) * words_ + (static_cast<unsigned>(y) >> 6)] |=
          std::uint64_t{1} << (y & 63);
    }
  }
  // symmetry
  for (int x = 0; x < n_; ++x)
    for (int y : adj_[x])
      if (!has_edge(y, x))
        throw std::invalid_argument("RegularGraph: adjacency not symmetric");
}

std::vector<std::pair<int, int>> RegularGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(n_) * d_ / 2);
  for (int x = 0; x < n_; ++x)
    for (int y : adj_[x])
      if (x < y) out.emplace_back(x, y);
  return out;
}

SignedPerturbation delta_matrix(int i, int j) {
  if (i == j) throw std::invalid_argument("delta_matrix: i == j");
  return SignedPerturbation{{{i, j, 1}, {j, i, 1}}};
}

SignedPerturbation xi(const SwitchMove& m) {
  SignedPerturbation p;
  auto add = [&p](int x, int y, int v) {
    p.entries.push_back({x, y, v});
    p.entries.push_back({y, x, v});
  };
  add(m.i, m.j, +1);
  add(m.k, m.l, +1);
  add(m.i, m.k, -1);
  add(m.j, m.l, -1);
  return p;
}

int chi(const RegularGraph& g, const SwitchMove& m) {
  return g.has_edge(m.i, m.j) && !g.has_edge(m.i, m.k) && g.has_edge(m.k, m.l) &&
                 !g.has_edge(m.j, m.l)
             ? 1
             : 0;
}

RegularGraph apply_switch(const RegularGraph& g, const SwitchMove& m) {
  if (!(g.has_edge(m.i, m.k) && g.has_edge(m.j, m.l) && !g.has_edge(m.i, m.j) &&
        !g.has_edge(m.k, m.l)))
    throw switch_infeasible("apply_switch: chi_ik^jl(g) != 1");

  std::vector<std::vector<int>> adj(g.n());
  for (int x = 0; x < g.n(); ++x) adj[x] = g.neighbors(x);
  auto drop = [&adj](int x, int y) {
    auto& v = adj[x];
    v.erase(std::find(v.begin(), v.end(), y));
  };
  auto put = [&adj](int x, int y) { adj[x].push_back(y); };
  drop(m.i, m.k); drop(m.k, m.i);
  drop(m.j, m.l); drop(m.l, m.j);
  put(m.i, m.j); put(m.j, m.i);
  put(m.k, m.l); put(m.l, m.k);
  return RegularGraph(g.n(), g.degree(), std::move(adj));
}

double discrete_derivative(const GraphFunctional& f, const RegularGraph& g,
                           const SwitchMove& m) {
  return f(apply_switch(g, m)) - f(g);
}

std::vector<std::int64_t> power_row(const RegularGraph& g, int r, int i) {
  if (r < 1 || r > 8) throw std::invalid_argument("power_row: need 1 <= r <= 8");
  if (i < 0 || i >= g.n()) throw std::invalid_argument("power_row: bad vertex");
  std::vector<std::int64_t> row(g.n(), 0), next(g.n(), 0);
  row[i] = 1;
  for (int step = 0; step < r; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (int x = 0; x < g.n(); ++x) {
      std::int64_t v = row[x];
      if (v == 0) continue;
      for (int y : g.neighbors(x)) {
        if (__builtin_add_overflow(next[y], v, &next[y]))
          throw arithmetic_overflow("power_row: 64-bit overflow");
      }
    }
    row.swap(next);
  }
  return row;
}

std::int64_t power_entry(const RegularGraph& g, int r, int i, int j) {
  return power_row(g, r, i).at(j);
}

PowerRowDeviation power_row_deviation(const RegularGraph& g, int r, int i) {
  auto row = power_row(g, r, i);
  const double mean = std::pow(static_cast<double>(g.degree()), r) / g.n();
  double dev = 0.0;
  for (auto v : row) dev += std::abs(static_cast<double>(v) - mean);
  auto row2 = power_row(g, 2 * r, i);
  const double mean2 = std::pow(static_cast<double>(g.degree()), 2 * r) / g.n();
  return {dev, static_cast<double>(row2[i]) - mean2};
}

RegularGraph complement(const RegularGraph& g) {
  std::vector<std::vector<int>> adj(g.n());
  for (int x = 0; x < g.n(); ++x) {
    adj[x].reserve(g.n() - 1 - g.degree());
    for (int y = 0; y < g.n(); ++y)
      if (y != x && !g.has_edge(x, y)) adj[x].push_back(y);
  }
  return RegularGraph(g.n(), g.n() - 1 - g.degree(), std::move(adj));
}

void write_graph(std::ostream& os, const RegularGraph& g) {
  os << g.n() << ' ' << g.degree() << '\n';
  for (int x = 0; x < g.n(); ++x) {
    const auto& nb = g.neighbors(x);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      if (t) os << ' ';
      os << nb[t];
    }
    os << '\n';
  }
}

RegularGraph read_graph(std::istream& is) {
  int n, d;
  if (!(is >> n >> d)) throw std::runtime_error("read_graph: bad header");
  std::vector<std::vector<int>> adj(n);
  for (int x = 0; x < n; ++x) {
    adj[x].resize(d);
    for (int t = 0; t < d; ++t)
      if (!(is >> adj[x][t]))
        throw std::runtime_error("read_graph: truncated neighbor list");
  }
  return RegularGraph(n, d, std::move(adj));
}

void write_graph_file(const std::string& path, const RegularGraph& g) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_graph_file: cannot open " + path);
  write_graph(os, g);
}

RegularGraph read_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_graph_file: cannot open " + path);
  return read_graph(is);
}

}  // namespace regspec
