// Solves the shifted Laplacian pair at m = 32 with every method and prints
// the iteration counts.

#include <cstdio>

#include "scalesplit/problems/examples.hpp"
#include "scalesplit/solvers/run.hpp"

int main() {
  using namespace scalesplit;
  const Problem p = build_example1(32);
  const double alphas[] = {0.46, 0.65, 0.78, 1.36, 0.495};
  for (std::size_t k = 0; k < kAllMethods.size(); ++k) {
    SolverConfig cfg;
    cfg.method = kAllMethods[k];
    cfg.alpha = alphas[k];
    const SolveReport r = run(p, cfg);
    std::printf("%-6s alpha=%-6g iterations=%-4zu relres=%.2e\n", display_name(r.method).c_str(), r.alpha,
                r.iterations, r.final_relative_residual);
  }
}
