// Computes the optimal TSCSP parameter of a tridiagonal pair from its
// generalized spectrum and checks it against a run.

#include <cstdio>

#include "scalesplit/problems/examples.hpp"
#include "scalesplit/solvers/run.hpp"
#include "scalesplit/spectral/dense_oracles.hpp"

int main() {
  using namespace scalesplit;
  const Problem p = build_example4(256);
  const spectral::SpectralInfo info = spectral::spectral_info(p.w, p.t);
  std::printf("mu in [%g, %g], case %s\n", info.mus.front(), info.mus.back(),
              spectral::to_string(info.spectrum_case));
  std::printf("alpha_opt = %g or %g, rho_opt = %g\n", info.alpha_opt_minus, info.alpha_opt_plus, info.rho_opt);
  SolverConfig cfg;
  cfg.alpha = info.alpha_opt_minus;
  const SolveReport r = run(p, cfg);
  std::printf("TSCSP at alpha_opt-: %zu iterations\n", r.iterations);
}
