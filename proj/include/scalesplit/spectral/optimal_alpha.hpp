#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scalesplit/core/error.hpp"

namespace scalesplit::spectral {

/// lambda_mu(alpha) = (mu - alpha)(1 - alpha mu) / ((mu + alpha)(1 + alpha mu)),
/// the TSCSP amplification of an eigencomponent with generalized eigenvalue mu.
inline double scalar_amplification(double mu, double alpha) {
  return ((mu - alpha) * (1.0 - alpha * mu)) / ((mu + alpha) * (1.0 + alpha * mu));
}

/// rho(G_alpha) = max_j |lambda_{mu_j}(alpha)|.
inline double tscsp_spectral_radius(std::span<const double> mus, double alpha) {
  if (mus.empty()) throw InvalidArgument("empty spectrum");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  double r = 0.0;
  for (double mu : mus) r = std::max(r, std::abs(scalar_amplification(mu, alpha)));
  return r;
}

enum class SpectrumCase { all_below_one, all_above_one, straddling };

inline const char* to_string(SpectrumCase c) {
  switch (c) {
    case SpectrumCase::all_below_one: return "all-below-one";
    case SpectrumCase::all_above_one: return "all-above-one";
    case SpectrumCase::straddling: return "straddling";
  }
  return "?";
}

/// Intermediate quantities of the optimal-parameter computation.
struct OptimalAlphaWork {
  std::vector<double> beta;  // mu + 1/mu per sorted eigenvalue, each >= 2
  SpectrumCase spectrum_case = SpectrumCase::all_below_one;
  /// Number of eigenvalues assigned to the lower block (mu <= 1). In the
  /// straddling case mu_k <= 1 <= mu_{k+1} in 1-based terms.
  std::size_t k = 0;
};

struct SpectralInfo {
  std::vector<double> mus;  // ascending
  SpectrumCase spectrum_case = SpectrumCase::all_below_one;
  std::size_t k = 0;
  double gamma = 0.0;
  double delta = 0.0;
  double eta = 2.0;
  double alpha_opt_minus = 1.0;
  double alpha_opt_plus = 1.0;
  double rho_opt = 0.0;
};

/// Eigenvalues within this distance of one count as the lower block.
inline constexpr double kUnitTolerance = 1e-12;

inline OptimalAlphaWork optimal_alpha_work(std::span<const double> sorted_mus) {
  OptimalAlphaWork w;
  w.beta.reserve(sorted_mus.size());
  for (double mu : sorted_mus) w.beta.push_back(mu + 1.0 / mu);
  w.k = static_cast<std::size_t>(std::count_if(sorted_mus.begin(), sorted_mus.end(),
                                               [](double mu) { return mu <= 1.0 + kUnitTolerance; }));
  if (w.k == sorted_mus.size()) {
    w.spectrum_case = SpectrumCase::all_below_one;
  } else if (sorted_mus.front() >= 1.0 - kUnitTolerance) {
    w.spectrum_case = SpectrumCase::all_above_one;
  } else {
    w.spectrum_case = SpectrumCase::straddling;
  }
  return w;
}

/// Optimal TSCSP parameters from the generalized eigenvalues.
///
/// lambda_mu depends on mu only through beta = mu + 1/mu, so rho(G_alpha) is
/// governed by the eigenvalues with the largest and the smallest beta. Those
/// are (mu_1, mu_n) when the spectrum lies on one side of 1. When it
/// straddles 1, the largest beta sits at mu_1 or mu_n (mu_n when
/// mu_1 mu_n >= 1) and the smallest at whichever of mu_k, mu_{k+1} is closer
/// to 1 in the beta sense; both are taken as (gamma, delta). Then
///   eta = sqrt((1 + gamma^2)(1 + delta^2) / (gamma delta)),
///   alpha_opt^{+-} = (eta +- sqrt(eta^2 - 4)) / 2,
///   rho_opt = |(delta^2 - eta delta + 1) / (delta^2 + eta delta + 1)|.
inline SpectralInfo optimal_alpha(std::vector<double> mus) {
  if (mus.empty()) throw InvalidArgument("empty spectrum");
  std::sort(mus.begin(), mus.end());
  if (!(mus.front() > 0.0))
    throw InvalidArgument("optimal alpha requires positive eigenvalues (smallest is " +
                          std::to_string(mus.front()) + ")");
  const OptimalAlphaWork work = optimal_alpha_work(mus);

  SpectralInfo info;
  info.spectrum_case = work.spectrum_case;
  info.k = work.k;
  const std::size_t n = mus.size();
  if (work.spectrum_case == SpectrumCase::straddling) {
    const bool far_is_top = mus.front() * mus.back() >= 1.0;
    const double far = far_is_top ? mus.back() : mus.front();
    const std::size_t lo = work.k - 1;  // mu_k, 0-based
    const double near = work.beta[lo] <= work.beta[lo + 1] ? mus[lo] : mus[lo + 1];
    info.gamma = std::min(far, near);
    info.delta = std::max(far, near);
  } else {
    info.gamma = mus.front();
    info.delta = mus[n - 1];
  }
  const double g = info.gamma;
  const double d = info.delta;
  info.eta = std::sqrt((1.0 + g * g) * (1.0 + d * d) / (g * d));
  const double disc = std::max(0.0, info.eta * info.eta - 4.0);
  info.alpha_opt_plus = 0.5 * (info.eta + std::sqrt(disc));
  // Vieta: the roots of a^2 - eta a + 1 multiply to one. Dividing avoids the
  // cancellation in (eta - sqrt(eta^2 - 4)) / 2.
  info.alpha_opt_minus = 1.0 / info.alpha_opt_plus;
  info.rho_opt = std::abs((d * d - info.eta * d + 1.0) / (d * d + info.eta * d + 1.0));
  info.mus = std::move(mus);
  return info;
}

}  // namespace scalesplit::spectral
