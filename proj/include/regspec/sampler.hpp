#pragma once

#include <cstdint>
#include <vector>

#include "regspec/graph.hpp"
#include "regspec/rng.hpp"

namespace regspec {

struct resource_guard_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SamplerConfig {
  int n_vertices = 0;
  int degree = 0;
  std::uint64_t rng_seed = 0;
  // lazy chain steps before the first sample / between samples; zero means
  // the defaults max(1e4, 20*N*d) and 2*N*d
  std::int64_t burn_in_steps = 0;
  std::int64_t thinning = 0;

  std::int64_t effective_burn_in() const;
  std::int64_t effective_thinning() const;
};

// deterministic chain start: vertex i adjacent to i +- 1..floor(d/2) mod N,
// plus the antipode i + N/2 for odd d (needs N even)
RegularGraph circulant_seed(int n, int d);

// One lazy step of the switch chain: two uniformly random ordered edges
// (i,k),(j,l); the switch is applied when feasible, otherwise g is returned
// unchanged. Convenience wrapper over the incremental chain below.
RegularGraph switch_chain_step(const RegularGraph& g, Rng& rng);

// Switch Markov chain with incremental O(1)-per-step state (bit matrix plus
// an edge array whose drawn slots are overwritten in place on acceptance).
class SwitchChain {
 public:
  explicit SwitchChain(const RegularGraph& start);

  // advances by `steps` lazy steps (attempts, not accepted switches: counting
  // accepted moves would sample the jump chain, whose stationary law weights
  // each graph by its acceptance rate and is measurably non-uniform)
  void advance(std::int64_t steps, Rng& rng);
  // a single lazy step; returns true when a switch was applied
  bool step(Rng& rng);

  std::int64_t accepted_count() const { return accepted_; }
  std::int64_t attempt_count() const { return attempts_; }

  RegularGraph materialize() const;

 private:
  int n_, d_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::pair<int, int>> edge_list_;
  std::int64_t accepted_ = 0, attempts_ = 0;

  bool bit(int x, int y) const {
    return (bits_[static_cast<std::size_t>(x) * words_ + (static_cast<unsigned>(y) >> 6)] >>
            (y & 63)) &
           1u;
  }
  void flip(int x, int y) {
    bits_[static_cast<std::size_t>(x) * words_ + (static_cast<unsigned>(y) >> 6)] ^=
        std::uint64_t{1} << (y & 63);
  }
};

// Approximate-uniform sampler: burn-in from the circulant seed, then one
// sample per `thinning` lazy steps. Deterministic in the config.
class UniformSampler {
 public:
  explicit UniformSampler(const SamplerConfig& cfg);
  RegularGraph next();

 private:
  SamplerConfig cfg_;
  SwitchChain chain_;
  Rng rng_;
  bool burned_in_ = false;
};

// one-shot convenience: the first sample of UniformSampler(cfg)
RegularGraph sample_uniform(const SamplerConfig& cfg);

// All labeled simple d-regular graphs on n vertices, canonical (lexicographic
// edge-set) order. Guarded at 10^6 graphs.
std::vector<RegularGraph> enumerate_all(int n, int d);

}  // namespace regspec
