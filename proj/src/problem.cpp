#include "lel/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lel {

ProblemParams::ProblemParams(int dim_, Rational p_) : dim(dim_), p(std::move(p_)) {
  if (dim < 2) throw std::domain_error("dimension must be >= 2, got " + std::to_string(dim));
  if (p <= Rational(1)) throw std::domain_error("exponent p must be > 1, got " + p.str());
}

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "Admissible";
    case Admissibility::SimpleRange: return "SimpleRange";
    case Admissibility::Critical: return "Critical";
    case Admissibility::Supercritical: return "Supercritical";
  }
  return "?";
}

Admissibility admissible(const ProblemParams& params) {
  if (params.dim == 2) return Admissibility::Admissible;
  const Rational lower(params.dim, params.dim - 2);
  const Rational p_s(params.dim + 2, params.dim - 2);
  if (params.p <= lower) return Admissibility::SimpleRange;
  if (params.p == p_s) return Admissibility::Critical;
  if (params.p > p_s) return Admissibility::Supercritical;
  return Admissibility::Admissible;
}

double sphere_surface_measure(int dim) {
  if (dim < 1) throw std::domain_error("sphere_surface_measure needs dim >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

DerivedExponents derive_exponents(const ProblemParams& params) {
  DerivedExponents d;
  if (params.dim >= 3) d.p_sobolev = Rational(params.dim + 2, params.dim - 2);
  d.tau = Rational(2) / (params.p - Rational(1));
  d.k = (params.p + Rational(1)) / params.p;
  d.omega = sphere_surface_measure(params.dim);
  return d;
}

}  // namespace lel
