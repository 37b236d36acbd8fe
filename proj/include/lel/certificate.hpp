#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lel/errors.hpp"
#include "lel/problem.hpp"
#include "lel/rational.hpp"

#include "json.hpp"

namespace lel {

/// Integrability window data: gamma in (N-1, N], q0 = gamma(p-1)/2,
/// eps0 = q0 - p, and the working pair q = ell*p with
/// (N-1)(p-1)/2 < q < q0 < p+1 and 1 < ell < k.
struct QSelection {
  Rational gamma;
  Rational q0;
  Rational eps0;
  Rational q;
  Rational ell;
};

QSelection select_q(const ProblemParams& params);

enum class Step1Case { Case1, Case2 };

const char* to_string(Step1Case c);

/// Decay exponents for the surface energy term R^N * ||u(R)||_{p+1}^{p+1}:
/// a bound of the shape  C R^{-a1(eps)} F(2R)^{1-b1}.
///
/// Case1 (1/ell < 2/(N-1) + 1/(1+p)): the second-order sphere embedding
/// reaches L^{p+1} directly; no F factor appears, so b1 = 1 and lambda,
/// mu, theta are absent.
/// Case2: interpolation between the L^lambda and L^mu embeddings at
/// weight theta, giving b1 = 1 - p(1-theta).
struct Step1Certificate {
  Step1Case case_tag = Step1Case::Case1;
  std::optional<Rational> lambda;
  std::optional<Rational> mu;
  std::optional<Rational> theta;
  Rational b1;
  Rational a1_at_0;
  Rational eps;
  Rational a1_at_eps;
};

/// Decay exponents for the surface term with the gradient and zeroth-order
/// pieces: C R^{-a2(eps)} F(2R)^{1-b2}, built from the Hoelder split at
/// conjugate exponents (z, z') and the three first-order sphere embeddings
/// lambda1, lambda2, mu at interpolation weights theta1, theta2.
struct Step2Certificate {
  Rational z;
  Rational z_conj;
  Rational lambda1;
  Rational lambda2;
  Rational mu;
  Rational theta1;
  Rational theta2;
  Rational b2;
  Rational a2_at_0;
  Rational eps;
  Rational a2_at_eps;
};

Step1Certificate step1_certify(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel);
Step2Certificate step2_certify(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel);

/// The full non-existence certificate: iterating
/// F(R) <= C R^{-a} F(2R)^{1-b} with a > 0, 0 < b <= 1 forces F == 0,
/// so no positive entire solution exists for this (N, p).
struct NonexistenceCertificate {
  ProblemParams params;
  DerivedExponents derived;
  QSelection qsel;
  Step1Certificate step1;
  Step2Certificate step2;
  Rational a;  ///< min(a1_at_eps, a2_at_eps)
  Rational b;  ///< min(b1, b2)
};

/// Derives the whole certificate for admissible (N, p) with N >= 4.
/// Refusals (refusal_error):
///   SimpleRange / Critical / Supercritical : p outside the window;
///   DimensionTooLow : N in {2,3}, where the step-2 z-window is provably
///   empty (it needs ell <= (N-1)/2 but ell > 1 always).
NonexistenceCertificate certify(const ProblemParams& params);

/// One broken invariant, as a stable clause id plus human detail.
struct Violation {
  std::string clause;
  std::string detail;
};

struct VerifyResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Re-derives every identity and inequality of the certificate from its
/// raw fields by exact arithmetic. Construction-path independent: accepts
/// hand-built certificates, and checks invariants only (not the selection
/// heuristics used by certify).
VerifyResult verify_certificate(const NonexistenceCertificate& cert);

/// The paper-facing epsilon dependence of the two decay exponents,
/// evaluated exactly. Exposed for monotonicity tests and re-verification.
Rational step1_decay_at(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel,
                        const Step1Certificate& step1, const Rational& eps);
Rational step2_decay_at(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel,
                        const Step2Certificate& step2, const Rational& eps);

/// Shared epsilon cap: min(eps0, (q0-q)/p)/2. The dyadic selection walks
/// cap, cap/2, cap/4, ... until a_i(eps) >= a_i(0)/2.
Rational eps_cap(const QSelection& qsel, const ProblemParams& params);

nlohmann::ordered_json to_json(const Rational& x);
nlohmann::ordered_json to_json(const NonexistenceCertificate& cert);

}  // namespace lel
