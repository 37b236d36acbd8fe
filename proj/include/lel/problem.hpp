#pragma once

#include <optional>

#include "lel/rational.hpp"

namespace lel {

/// The problem instance: dimension N and nonlinearity exponent p of
/// Delta u + u^p = 0 on R^N. Valid by construction (N >= 2, p > 1).
struct ProblemParams {
  int dim;
  Rational p;

  ProblemParams(int dim_, Rational p_);
};

/// Where p sits relative to the certifiable window.
///   Admissible   : N = 2 with p > 1, or N >= 3 with N/(N-2) < p < p_S
///   SimpleRange  : N >= 3 with 1 < p <= N/(N-2)   (refused: outside the
///                  two-step estimate chain, which assumes the harder range)
///   Critical     : p = p_S
///   Supercritical: p > p_S
enum class Admissibility { Admissible, SimpleRange, Critical, Supercritical };

const char* to_string(Admissibility a);

Admissibility admissible(const ProblemParams& params);

/// Exponents every later step is phrased in.
struct DerivedExponents {
  std::optional<Rational> p_sobolev;  ///< (N+2)/(N-2); empty means +infinity (N = 2)
  Rational tau;                       ///< 2/(p-1), so 2 + tau = p*tau
  Rational k;                         ///< (p+1)/p
  double omega;                       ///< |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
};

DerivedExponents derive_exponents(const ProblemParams& params);

/// Surface measure of the unit sphere in R^dim.
double sphere_surface_measure(int dim);

}  // namespace lel
