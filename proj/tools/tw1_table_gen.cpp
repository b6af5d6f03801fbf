// Regenerates data/tw1_cdf.csv from the Fredholm-determinant evaluator.
// The committed table is a frozen artifact; this tool exists so the freeze is
// reproducible: `tw1_table_gen > data/tw1_cdf.csv`.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "regspec/report.hpp"
#include "regspec/tw1_oracle.hpp"

int main(int argc, char** argv) {
  double s_min = -10.0, s_max = 8.0, step = 0.02;
  if (argc == 4) {
    s_min = std::atof(argv[1]);
    s_max = std::atof(argv[2]);
    step = std::atof(argv[3]);
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: tw1_table_gen [s_min s_max step]\n");
    return 2;
  }
  auto grid = regspec::tw1_generate(s_min, s_max, step);
  std::printf("s,F1\n");
  for (const auto& [s, f] : grid)
    std::printf("%s,%s\n", regspec::format_double(s).c_str(),
                regspec::format_double(f).c_str());
  return 0;
}
