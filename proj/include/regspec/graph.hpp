#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace regspec {

struct switch_infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct arithmetic_overflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A switching quadruple (i,j,k,l). Construction enforces pairwise-distinct
// indices; the non-distinct remainder cases never reach this type.
struct SwitchMove {
  int i, j, k, l;
  SwitchMove(int i_, int j_, int k_, int l_);
};

// Sparse symmetric signed perturbation with small integer entries.
struct SignedPerturbation {
  struct Entry {
    int x, y;
    int value;
  };
  std::vector<Entry> entries;  // both (x,y) and (y,x) listed for x != y

  // sum of the row `x` over all stored entries
  int row_sum(int x) const;
};

// Simple d-regular graph on N vertices. Dual storage: sorted neighbor lists
// for O(d) iteration and a packed bit matrix for O(1) membership queries.
// Immutable after construction; freely shareable across threads.
class RegularGraph {
 public:
  RegularGraph(int n_vertices, int degree,
               std::vector<std::vector<int>> neighbor_lists);

  int n() const { return n_; }
  int degree() const { return d_; }

  bool has_edge(int x, int y) const {
    return (bits_[static_cast<std::size_t>(x) * words_ +
                  (static_cast<unsigned>(y) >> 6)] >>
            (y & 63)) &
           1u;
  }
  const std::vector<int>& neighbors(int x) const { return adj_[x]; }

  // all edges as pairs (x,y) with x < y, lexicographic
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const RegularGraph& other) const {
    return n_ == other.n_ && d_ == other.d_ && bits_ == other.bits_;
  }

  // packed row-major adjacency bits; key for hashing/canonical ordering
  const std::vector<std::uint64_t>& packed_bits() const { return bits_; }

 private:
  int n_, d_;
  std::size_t words_;  // 64-bit words per row
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> bits_;
};

// single symmetric edge perturbation: +1 at (i,j) and (j,i)
SignedPerturbation delta_matrix(int i, int j);

// xi = Delta_ij + Delta_kl - Delta_ik - Delta_jl
SignedPerturbation xi(const SwitchMove& move);

// switchability indicator A_ij (1-A_ik) A_kl (1-A_jl)
int chi(const RegularGraph& g, const SwitchMove& move);

// Applies the switch g -> g + xi(move): adds edges ij, kl and removes ik, jl.
// Requires edges ik, jl present and ij, kl absent (chi_ik^jl(g) = 1); throws
// switch_infeasible otherwise.
RegularGraph apply_switch(const RegularGraph& g, const SwitchMove& move);

using GraphFunctional = std::function<double(const RegularGraph&)>;

// D_ij^kl f = f(g + xi) - f(g); throws switch_infeasible when g + xi leaves
// {0,1}.
double discrete_derivative(const GraphFunctional& f, const RegularGraph& g,
                           const SwitchMove& move);

// row i of A^r in 64-bit integers, overflow-checked; 1 <= r <= 8
std::vector<std::int64_t> power_row(const RegularGraph& g, int r, int i);

// (A^r)_{ij}
std::int64_t power_entry(const RegularGraph& g, int r, int i, int j);

struct PowerRowDeviation {
  double l1_deviation;    // sum_j |(A^r)_{ij} - d^r/N|
  double diagonal_stat;   // (A^{2r})_{ii} - d^{2r}/N, nonnegative
};
PowerRowDeviation power_row_deviation(const RegularGraph& g, int r, int i);

RegularGraph complement(const RegularGraph& g);

// Line-based text format: header "N d", then one sorted neighbor line per
// vertex. Round-trips bit-exactly.
void write_graph(std::ostream& os, const RegularGraph& g);
RegularGraph read_graph(std::istream& is);
void write_graph_file(const std::string& path, const RegularGraph& g);
RegularGraph read_graph_file(const std::string& path);

}  // namespace regspec
