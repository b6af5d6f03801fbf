#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "regspec/sampler.hpp"
#include "regspec/spectral.hpp"

using namespace regspec;

namespace {

std::vector<double> cycle_spectrum(int n) {
  std::vector<double> s;
  for (int k = 0; k < n; ++k) s.push_back(2.0 * std::cos(2.0 * M_PI * k / n));
  std::sort(s.rbegin(), s.rend());
  return s;
}

RegularGraph petersen() {
  // outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
  std::vector<std::vector<int>> adj(10);
  auto add = [&adj](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int i = 0; i < 5; ++i) {
    add(i, (i + 1) % 5);
    add(5 + i, 5 + (i + 2) % 5);
    add(i, 5 + i);
  }
  return RegularGraph(10, 3, adj);
}

}  // namespace

TEST_CASE("full spectrum matches closed forms") {
  auto k4 = full_spectrum(circulant_seed(4, 3));
  CHECK(k4[0] == doctest::Approx(3.0).epsilon(1e-10));
  for (int i = 1; i < 4; ++i) CHECK(k4[i] == doctest::Approx(-1.0).epsilon(1e-10));

  for (int n : {6, 12, 100}) {
    auto got = full_spectrum(circulant_seed(n, 2));
    auto want = cycle_spectrum(n);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(got[i] - want[i]) < 1e-8);
  }

  auto pet = full_spectrum(petersen());
  CHECK(pet[0] == doctest::Approx(3.0).epsilon(1e-10));
  for (int i = 1; i <= 5; ++i) CHECK(std::abs(pet[i] - 1.0) < 1e-8);
  for (int i = 6; i <= 9; ++i) CHECK(std::abs(pet[i] + 2.0) < 1e-8);
}

TEST_CASE("extreme eigenvalues agree with the dense solver") {
  SamplerConfig sc;
  sc.n_vertices = 200;
  sc.degree = 40;
  sc.rng_seed = 11;
  auto g = sample_uniform(sc);
  auto spec = full_spectrum(g);
  auto ee = extreme_eigs(g, 4);
  REQUIRE(ee.top.size() == 4);
  REQUIRE(ee.bottom.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(ee.top[i] - spec[i + 1]) < 1e-7 * sc.degree);
    CHECK(std::abs(ee.bottom[i] - spec[200 - 4 + i]) < 1e-7 * sc.degree);
  }
}

TEST_CASE("semicircle transform solves its quadratic with Im > 0") {
  for (Complex z : {Complex(0.0, 1.0), Complex(1.5, 0.01), Complex(-2.3, 1e-4),
                    Complex(2.0001, 1e-6), Complex(5.0, 0.5)}) {
    Complex m = semicircle_m(z);
    CHECK(std::abs(1.0 + z * m + m * m) < 1e-10);
    CHECK(m.imag() > 0.0);
  }
  // on the real bulk: density sqrt(4 - E^2) / (2 pi) as eta -> 0
  Complex m0 = semicircle_m(Complex(0.0, 1e-9));
  CHECK(m0.imag() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("green evaluator identities at moderate size") {
  SamplerConfig sc;
  sc.n_vertices = 60;
  sc.degree = 12;
  sc.rng_seed = 3;
  auto g = sample_uniform(sc);
  GreenEvaluator ge(g);
  CHECK(ge.spectrum()[0] == doctest::Approx(12.0).epsilon(1e-10));

  SpectralPoint p(0.7, 0.05);
  auto G = ge.matrix(p.z());

  // symmetry and trace consistency
  Complex tr = 0;
  for (int i = 0; i < 60; ++i) tr += G(i, i);
  CHECK(std::abs(tr / 60.0 - ge.gbar(p.z())) < 1e-10);
  CHECK(std::abs(G(3, 7) - G(7, 3)) < 1e-12);

  // rows sum to zero (range orthogonal to e)
  for (int i = 0; i < 60; ++i) CHECK(std::abs(G.row(i).sum()) < 1e-9);

  // Ward identity per column
  for (int j : {0, 17, 59}) CHECK(ward_residual(ge, p, j) < 1e-9);

  // column extraction matches the full matrix
  auto col = ge.column(17, p.z());
  for (int i = 0; i < 60; ++i) CHECK(std::abs(col(i) - G(i, 17)) < 1e-12);
}

TEST_CASE("green function commutes with the adjacency action") {
  // G A = q (z G + I - ee*) restricted through Pperp
  SamplerConfig sc;
  sc.n_vertices = 50;
  sc.degree = 10;
  sc.rng_seed = 21;
  auto g = sample_uniform(sc);
  GreenEvaluator ge(g);
  const double q = ge.q();
  SpectralPoint p(1.1, 0.2);
  auto G = ge.matrix(p.z());

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(50, 50);
  for (int x = 0; x < 50; ++x)
    for (int y : g.neighbors(x)) A(x, y) = 1.0;

  Eigen::MatrixXcd lhs = G * A;
  Eigen::MatrixXcd rhs =
      q * (p.z() * G + Eigen::MatrixXcd::Identity(50, 50) -
           Eigen::MatrixXcd::Constant(50, 50, 1.0 / 50.0));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("spectral domain grid respects its bounds") {
  auto dom = SpectralDomain::make(1000, 0.1, 6, 5);
  CHECK(dom.grid.size() == 30);
  for (const auto& p : dom.grid) {
    CHECK(std::abs(p.E) <= 10.0 + 1e-12);
    CHECK(p.eta >= std::pow(1000.0, -0.9) - 1e-15);
    CHECK(p.eta <= 10.0 + 1e-12);
  }
}

TEST_CASE("edge sample rescales against q") {
  SamplerConfig sc;
  sc.n_vertices = 80;
  sc.degree = 20;
  sc.rng_seed = 2;
  auto g = sample_uniform(sc);
  auto spec = full_spectrum(g);
  auto es = make_edge_sample(spec, 80, 20, 3, 42);
  const double q = q_param(80, 20);
  const double n23 = std::pow(80.0, 2.0 / 3.0);
  CHECK(es.lambda_1 == doctest::Approx(20.0));
  CHECK(es.lambda_2 == doctest::Approx(spec[1]));
  CHECK(es.rescaled_top == doctest::Approx(n23 * (spec[1] / q - 2.0)));
  CHECK(es.rescaled_bottom == doctest::Approx(n23 * (spec[79] / q + 2.0)));
  CHECK(es.seed == 42);
}

TEST_CASE("window count sees the trivial gap") {
  SamplerConfig sc;
  sc.n_vertices = 100;
  sc.degree = 30;
  sc.rng_seed = 9;
  auto g = sample_uniform(sc);
  GreenEvaluator ge(g);
  // everything nontrivial lies well below q^{-1} lambda_1
  CHECK(window_count(ge, -3.0, 3.0) == 99);
  CHECK(window_count(ge, 50.0, 100.0) == 0);
}
