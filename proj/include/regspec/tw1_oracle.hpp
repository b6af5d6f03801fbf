#pragma once

#include <vector>

namespace regspec {

// Airy function Ai on the real line, accurate to ~1e-10 absolute for
// x >= -6 (power series below 5, asymptotic expansion above).
double airy_ai(double x);

// Tracy-Widom GOE CDF via the Fredholm determinant
// F1(s) = det(I - V_s) on L^2(0, inf), V_s(x, y) = Ai(x + y + s),
// discretized with Gauss-Legendre quadrature. Absolute accuracy ~1e-8.
// This is the table-generation oracle; the hot path uses the committed
// interpolation table instead.
double tw1_oracle_cdf(double s, int quad_points = 120);

// (s, F1(s)) pairs on a uniform grid
std::vector<std::pair<double, double>> tw1_generate(double s_min, double s_max,
                                                    double step);

}  // namespace regspec
