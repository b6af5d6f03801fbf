#include <doctest.h>

#include <cmath>

#include "regspec/ensembles.hpp"
#include "regspec/sampler.hpp"
#include "regspec/spectral.hpp"
#include "regspec/stats.hpp"
#include "regspec/tw1_oracle.hpp"

using namespace regspec;

TEST_CASE("airy function matches reference values") {
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-12));
  CHECK(airy_ai(1.0) == doctest::Approx(0.1352924163128814).epsilon(1e-12));
  CHECK(airy_ai(2.0) == doctest::Approx(0.03492413042327438).epsilon(1e-11));
  CHECK(airy_ai(5.0) == doctest::Approx(1.0834442813607441e-4).epsilon(1e-10));
  CHECK(airy_ai(10.0) == doctest::Approx(1.1047532552898685e-10).epsilon(1e-9));
}

TEST_CASE("tracy-widom cdf evaluator is a distribution function") {
  double prev = 0.0;
  for (double s = -8.0; s <= 6.0; s += 0.5) {
    double f = tw1_oracle_cdf(s);
    CHECK(f >= prev - 1e-12);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
  CHECK(tw1_oracle_cdf(-10.0) < 1e-12);
  CHECK(tw1_oracle_cdf(8.0) > 1.0 - 1e-7);
}

TEST_CASE("committed table reproduces the distribution constants") {
  auto tw = Tw1Table::load_default();
  // first and second moment / median of the beta=1 Tracy-Widom law
  CHECK(tw.mean() == doctest::Approx(-1.2065335746).epsilon(5e-6));
  CHECK(tw.median() == doctest::Approx(-1.2681).epsilon(5e-4));
  CHECK(tw.cdf(-10.5) == 0.0);
  CHECK(tw.cdf(8.5) == 1.0);
  // interpolation agrees with the direct evaluator off the grid nodes
  for (double s : {-3.137, -1.001, 0.777, 2.503})
    CHECK(std::abs(tw.cdf(s) - tw1_oracle_cdf(s)) < 1e-6);
  // monotone interpolation
  double prev = -1.0;
  for (double s = -9.0; s <= 7.0; s += 0.013) {
    CHECK(tw.cdf(s) >= prev);
    prev = tw.cdf(s);
  }
}

TEST_CASE("tridiagonal model reproduces the dense GOE spectrum statistics") {
  const int n = 30, trials = 400;
  std::vector<double> tri_top, dense_top;
  for (int t = 0; t < trials; ++t) {
    Rng r1(derive_seed(2024, t, "tri"));
    Rng r2(derive_seed(2024, t, "dense"));
    tri_top.push_back(goe_tridiagonal_spectrum(n, r1).front());
    dense_top.push_back(goe_dense_spectrum(n, r2).front());
  }
  CHECK(ks_statistic(tri_top, dense_top) < 0.1);
}

TEST_CASE("goe edge samples are ordered and reproducible") {
  Rng r1(77), r2(77);
  auto a = goe_edge_sample(100, 3, r1);
  auto b = goe_edge_sample(100, 3, r2);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.top[i] == b.top[i]);
    CHECK(a.bottom[i] == b.bottom[i]);
  }
  CHECK(a.top[0] >= a.top[1]);
  CHECK(a.top[1] >= a.top[2]);
  CHECK(a.bottom[0] >= a.bottom[1]);
  CHECK(a.top[0] < 3.0);  // edge near 2
  CHECK(a.top[0] > 1.0);
}

TEST_CASE("constrained ensemble annihilates the constant vector") {
  Rng rng(5);
  auto w = constrained_goe(40, rng);
  CHECK((w - w.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(40);
  CHECK((w * ones).cwiseAbs().maxCoeff() < 1e-12);
  // entry scale ~ 1/sqrt(N)
  CHECK(w.cwiseAbs().maxCoeff() < 2.0);
  CHECK(w.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("interpolation path validates its time grid") {
  SamplerConfig sc;
  sc.n_vertices = 30;
  sc.degree = 8;
  sc.rng_seed = 1;
  auto g = sample_uniform(sc);
  DbmOptions opts;
  Rng rng(3);
  CHECK_THROWS(dbm_path(g, {0.1, 0.2}, opts, rng));  // must start at 0
  CHECK_THROWS(dbm_path(g, {0.0, 0.2, 0.1}, opts, rng));  // must increase
  CHECK_THROWS(dbm_path(g, {0.0, 2.0}, opts, rng));  // capped at 1
}

TEST_CASE("zero-noise path at t=0 reproduces the rescaled graph edge") {
  SamplerConfig sc;
  sc.n_vertices = 60;
  sc.degree = 16;
  sc.rng_seed = 8;
  auto g = sample_uniform(sc);
  DbmOptions opts;
  opts.zero_noise = true;
  Rng rng(4);
  auto path = dbm_path(g, {0.0, 0.01}, opts, rng);
  const double q = q_param(60, 16);
  auto ee = extreme_eigs(g, 2);
  CHECK(path.xi2[0] == doctest::Approx(ee.top[0] / q).epsilon(1e-9));
  // with W = 0 the matrix only shrinks: xi2(t) = e^{-t/2} xi2(0)
  CHECK(path.xi2[1] ==
        doctest::Approx(std::exp(-0.005) * path.xi2[0]).epsilon(1e-9));
  // X_t is the imaginary part of the reported complex integral
  CHECK(path.x_t[0] == doctest::Approx(path.integral[0].imag()));
}

TEST_CASE("path integral is deterministic in the noise seed") {
  SamplerConfig sc;
  sc.n_vertices = 40;
  sc.degree = 10;
  sc.rng_seed = 2;
  auto g = sample_uniform(sc);
  DbmOptions opts;
  Rng r1(11), r2(11);
  auto p1 = dbm_path(g, {0.0, 0.05}, opts, r1);
  auto p2 = dbm_path(g, {0.0, 0.05}, opts, r2);
  CHECK(p1.xi2[1] == p2.xi2[1]);
  CHECK(p1.integral[1] == p2.integral[1]);
}
