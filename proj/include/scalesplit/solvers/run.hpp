#pragma once

#include "scalesplit/solvers/config.hpp"
#include "scalesplit/solvers/gsor.hpp"
#include "scalesplit/solvers/hss_family.hpp"
#include "scalesplit/solvers/scale_splitting.hpp"

namespace scalesplit {

/// Runs cfg.method from the zero initial guess.
inline SolveReport run(const Problem& p, const SolverConfig& cfg) {
  switch (cfg.method) {
    case MethodKind::tscsp: return tscsp_solve(p, cfg);
    case MethodKind::scsp: return scsp_solve(p, cfg);
    case MethodKind::mhss: return mhss_solve(p, cfg);
    case MethodKind::pmhss: return pmhss_solve(p, cfg);
    case MethodKind::gsor: return gsor_solve(p, cfg);
  }
  throw InvalidArgument("unknown method");
}

}  // namespace scalesplit
