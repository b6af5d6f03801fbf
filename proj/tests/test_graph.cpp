#include <doctest.h>

#include <sstream>

#include "regspec/graph.hpp"
#include "regspec/sampler.hpp"

using namespace regspec;

namespace {

RegularGraph k4() { return circulant_seed(4, 3); }

}  // namespace

TEST_CASE("switch move requires pairwise distinct indices") {
  CHECK_NOTHROW(SwitchMove(0, 1, 2, 3));
  CHECK_THROWS_AS(SwitchMove(0, 0, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(SwitchMove(0, 1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(SwitchMove(0, 1, 0, 3), std::invalid_argument);
}

TEST_CASE("xi has zero row sums and +-1 entries") {
  auto p = xi(SwitchMove(0, 1, 2, 3));
  for (int x = 0; x < 4; ++x) CHECK(p.row_sum(x) == 0);
  for (const auto& e : p.entries) CHECK(std::abs(e.value) == 1);
  // delta_01 + delta_23 - delta_02 - delta_13: 8 directed entries
  CHECK(p.entries.size() == 8);
}

TEST_CASE("chi and apply_switch on a 6-cycle") {
  auto g = circulant_seed(6, 2);  // edges i ~ i+-1 mod 6
  // feasible: remove 0-1 and 3-4, insert 0-3... chi_ij^kl wants edges ij, kl
  // chi(g, m) = A_ij (1-A_ik) A_kl (1-A_jl); apply adds ij, kl, removes ik, jl
  SwitchMove m(0, 2, 4, 3);
  // A_02 = 0, so chi = 0; switch needs A_04=1? build the feasible direction
  CHECK(chi(g, m) == 0);
  SwitchMove feas(0, 1, 3, 4);  // edges 01, 34 present, 03, 14 absent
  CHECK(chi(g, feas) == 1);
  // apply_switch goes the other way: requires ik, jl present, ij, kl absent
  SwitchMove rev(0, 3, 1, 4);  // wants edges 01, 34 -> inserts 03, 14
  auto h = apply_switch(g, rev);
  CHECK(h.has_edge(0, 3));
  CHECK(h.has_edge(1, 4));
  CHECK(!h.has_edge(0, 1));
  CHECK(!h.has_edge(3, 4));
  CHECK(h.degree() == 2);
  CHECK_THROWS_AS(apply_switch(g, feas), switch_infeasible);
}

TEST_CASE("discrete derivative of the edge count is zero") {
  auto g = circulant_seed(8, 3);
  GraphFunctional edge_count = [](const RegularGraph& gr) {
    return static_cast<double>(gr.edges().size());
  };
  // adds 0-2 and 1-3 (non-edges), removes 0-1 and 2-3 (edges): feasible
  CHECK(discrete_derivative(edge_count, g, SwitchMove(0, 2, 1, 3)) == 0.0);
  // removing the non-edge 0-2 would leave {0,1}
  CHECK_THROWS_AS(discrete_derivative(edge_count, g, SwitchMove(0, 1, 3, 2)),
                  switch_infeasible);
}

TEST_CASE("adjacency power rows sum to d^r") {
  for (auto [n, d] : {std::pair{10, 3}, {12, 5}, {9, 4}}) {
    auto g = circulant_seed(n, d);
    for (int r = 1; r <= 8; ++r) {
      std::int64_t want = 1;
      for (int s = 0; s < r; ++s) want *= d;
      for (int i = 0; i < n; i += 3) {
        auto row = power_row(g, r, i);
        std::int64_t sum = 0;
        for (auto v : row) sum += v;
        CHECK(sum == want);
      }
    }
  }
}

TEST_CASE("power row deviation diagonal statistic is nonnegative") {
  auto g = circulant_seed(10, 4);
  for (int r = 1; r <= 3; ++r)
    for (int i = 0; i < 10; ++i)
      CHECK(power_row_deviation(g, r, i).diagonal_stat >= 0.0);
}

TEST_CASE("power_row rejects out-of-range exponents") {
  auto g = k4();
  CHECK_THROWS_AS(power_row(g, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_row(g, 9, 0), std::invalid_argument);
}

TEST_CASE("complement is (N-1-d)-regular and involutive") {
  auto g = circulant_seed(10, 3);
  auto c = complement(g);
  CHECK(c.degree() == 6);
  for (int x = 0; x < 10; ++x)
    for (int y = 0; y < 10; ++y)
      if (x != y) CHECK(c.has_edge(x, y) == !g.has_edge(x, y));
  CHECK(complement(c) == g);
}

TEST_CASE("graph text format round-trips") {
  auto g = circulant_seed(12, 5);
  std::stringstream ss;
  write_graph(ss, g);
  auto h = read_graph(ss);
  CHECK(g == h);
  // byte-identical re-serialization
  std::stringstream ss2;
  write_graph(ss2, h);
  CHECK(ss.str() == ss2.str());
}

TEST_CASE("constructor validates symmetry and degree") {
  // missing reciprocal edge
  CHECK_THROWS_AS(RegularGraph(4, 1, {{1}, {0}, {3}, {1}}), std::invalid_argument);
  // wrong degree
  CHECK_THROWS_AS(RegularGraph(4, 2, {{1}, {0}, {3}, {2}}), std::invalid_argument);
  // self loop
  CHECK_THROWS_AS(RegularGraph(4, 1, {{0}, {3}, {3}, {1}}), std::invalid_argument);
  // N*d odd
  CHECK_THROWS_AS(RegularGraph(5, 3, {{1, 2, 3}, {0, 2, 3}, {0, 1, 4}, {0, 1, 4}, {2, 3, 2}}),
                  std::invalid_argument);
}

TEST_CASE("malformed text input is rejected") {
  std::stringstream ss("4 2\n1 3\n0 2\n1 3\n0 1\n");  // vertex 3 asymmetric
  CHECK_THROWS(read_graph(ss));
}
