#include "lel/certificate.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace lel {

namespace {

const Rational kOne(1);
const Rational kTwo(2);

void require_internal(bool ok, const std::string& what) {
  if (!ok) throw internal_error("certificate chain broke: " + what);
}

/// Largest eps in {cap, cap/2, cap/4, ...} with decay(eps) >= floor.
/// decay is nonincreasing in eps and tends to a limit > floor at 0+.
std::pair<Rational, Rational> pick_eps(const Rational& cap, const Rational& floor_value,
                                       const std::function<Rational(const Rational&)>& decay) {
  require_internal(cap.sign() > 0, "eps cap must be positive");
  Rational eps = cap;
  for (int iter = 0; iter < 512; ++iter) {
    Rational value = decay(eps);
    if (value >= floor_value) return {eps, value};
    eps /= kTwo;
  }
  throw internal_error("eps bisection did not terminate");
}

}  // namespace

const char* to_string(Step1Case c) { return c == Step1Case::Case1 ? "Case1" : "Case2"; }

QSelection select_q(const ProblemParams& params) {
  const Admissibility cls = admissible(params);
  if (cls != Admissibility::Admissible) {
    throw refusal_error(to_string(cls), std::string("q-selection refused: (N=") + std::to_string(params.dim) +
                                            ", p=" + params.p.str() + ") is " + to_string(cls));
  }
  const int n = params.dim;
  const Rational& p = params.p;

  QSelection sel;
  if (n >= 3) {
    sel.gamma = Rational(n);
    sel.q0 = sel.gamma * (p - kOne) / kTwo;
    const Rational lower = max(p, Rational(n - 1) * (p - kOne) / kTwo);
    require_internal(lower < sel.q0, "q-window (lower, q0) is empty");
    sel.q = (lower + sel.q0) / kTwo;
  } else {
    // N = 2: gamma*(p-1)/2 cannot exceed p, but the lower constraint
    // (p-1)/2 < q is automatic, so the window form q0 = p + eps0 is used
    // directly with eps0 = 1/2.
    sel.gamma = Rational(2);
    sel.q0 = p + Rational(1, 2);
    sel.q = p + Rational(1, 4);
  }
  sel.eps0 = sel.q0 - p;
  sel.ell = sel.q / p;

  require_internal(sel.eps0.sign() > 0, "eps0 <= 0");
  require_internal(sel.q > p && sel.q < sel.q0, "q outside (p, q0)");
  require_internal(sel.q0 < p + kOne, "q0 >= p+1");
  require_internal(Rational(n - 1) * (p - kOne) / kTwo < sel.q, "q below (N-1)(p-1)/2");
  require_internal(kOne < sel.ell && sel.ell < (p + kOne) / p, "ell outside (1, k)");
  return sel;
}

Rational eps_cap(const QSelection& qsel, const ProblemParams& params) {
  return min(qsel.eps0, (qsel.q0 - qsel.q) / params.p) / kTwo;
}

Rational step1_decay_at(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel,
                        const Step1Certificate& step1, const Rational& eps) {
  const Rational n(params.dim);
  const Rational& p = params.p;
  const Rational p1 = p + kOne;
  if (step1.case_tag == Step1Case::Case1) {
    // a1(eps) = (p+1) (tau - N/(p+1) - eps*p*tau/(ell+eps))
    return p1 * (derived.tau - n / p1 - eps * p * derived.tau / (qsel.ell + eps));
  }
  // a1(eps) = [theta (q tau/(ell+eps) - 2) - N/(1+p) - (2 - N/k)(1-theta)] (1+p)
  const Rational& theta = step1.theta.value();
  return (theta * (qsel.q * derived.tau / (qsel.ell + eps) - kTwo) - n / p1 - (kTwo - n / derived.k) * (kOne - theta)) * p1;
}

Step1Certificate step1_certify(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel) {
  const int n = params.dim;
  const Rational& p = params.p;
  const Rational p1 = p + kOne;
  const Rational inv_ell = qsel.ell.reciprocal();
  const Rational two_over_sphere = Rational(2, n - 1);

  Step1Certificate cert;
  if (inv_ell < two_over_sphere + p1.reciprocal()) {
    cert.case_tag = Step1Case::Case1;
    cert.b1 = kOne;
    cert.a1_at_0 = p1 * derived.tau - Rational(n);
  } else {
    cert.case_tag = Step1Case::Case2;
    const Rational inv_lambda = inv_ell - two_over_sphere;
    const Rational inv_mu = derived.k.reciprocal() - two_over_sphere;
    require_internal(inv_mu.sign() > 0, "step 1 embedding target mu not finite");
    // 1/(1+p) = theta/lambda + (1-theta)/mu
    const Rational theta = (p1.reciprocal() - inv_mu) / (inv_lambda - inv_mu);
    require_internal(theta >= Rational(0) && theta <= kOne, "step 1 interpolation weight outside [0,1]");
    cert.lambda = inv_lambda.reciprocal();
    cert.mu = inv_mu.reciprocal();
    cert.theta = theta;
    cert.b1 = kOne - p * (kOne - theta);
    cert.a1_at_0 = kTwo * (derived.tau - Rational(n - 2, 2)) * cert.b1;
    // Same exponent through the displayed eps-form; the two routes must
    // agree exactly.
    require_internal(step1_decay_at(params, derived, qsel, cert, Rational(0)) == cert.a1_at_0,
                     "step 1 exponent routes disagree at eps = 0");
  }
  require_internal(cert.b1.sign() > 0, "b1 <= 0");
  require_internal(cert.a1_at_0.sign() > 0, "a1(0) <= 0");

  auto decay = [&](const Rational& e) { return step1_decay_at(params, derived, qsel, cert, e); };
  std::tie(cert.eps, cert.a1_at_eps) = pick_eps(eps_cap(qsel, params), cert.a1_at_0 / kTwo, decay);
  require_internal(cert.a1_at_eps.sign() > 0, "a1(eps) <= 0");
  return cert;
}

Rational step2_decay_at(const ProblemParams& params, const DerivedExponents& derived, const QSelection& /*qsel*/,
                        const Step2Certificate& step2, const Rational& eps) {
  // a2(eps) = (p tau/(1+eps))(theta1+theta2) + (N/k)(2-theta1-theta2) - (N+2)
  const Rational n(params.dim);
  const Rational theta_sum = step2.theta1 + step2.theta2;
  return params.p * derived.tau / (kOne + eps) * theta_sum + n / derived.k * (kTwo - theta_sum) - (n + kTwo);
}

Step2Certificate step2_certify(const ProblemParams& params, const DerivedExponents& derived, const QSelection& qsel) {
  const int n = params.dim;
  const Rational& p = params.p;
  const Rational p1 = p + kOne;
  const Rational over_sphere = Rational(1, n - 1);

  const Rational inv_lambda1 = qsel.ell.reciprocal() - over_sphere;
  const Rational inv_mu = derived.k.reciprocal() - over_sphere;
  const Rational inv_lambda2 = kOne - over_sphere;

  const Rational window_lo = max(inv_mu, over_sphere);
  const Rational window_hi = min(inv_lambda1, p1.reciprocal() + over_sphere);
  if (window_lo > window_hi) {
    throw internal_error("certificate chain broke: z-window is empty (needs ell <= (N-1)/2; dim " +
                         std::to_string(n) + " with ell = " + qsel.ell.str() + ")");
  }
  require_internal(inv_lambda1.sign() > 0 && inv_mu.sign() > 0, "first-order embedding exponent not finite");

  Step2Certificate cert;
  const Rational inv_z = window_hi;
  const Rational inv_zc = kOne - inv_z;
  cert.z = inv_z.reciprocal();
  cert.z_conj = inv_zc.reciprocal();
  cert.lambda1 = inv_lambda1.reciprocal();
  cert.lambda2 = inv_lambda2.reciprocal();
  cert.mu = inv_mu.reciprocal();

  // 1/z = theta1/lambda1 + (1-theta1)/mu ; 1/z' = theta2/lambda2 + (1-theta2)/mu.
  cert.theta1 = (inv_z - inv_mu) / (inv_lambda1 - inv_mu);
  cert.theta2 = (inv_zc - inv_mu) / (inv_lambda2 - inv_mu);
  require_internal(cert.theta1 >= Rational(0) && cert.theta1 <= kOne, "theta1 outside [0,1]");
  require_internal(cert.theta2 >= Rational(0) && cert.theta2 <= kOne, "theta2 outside [0,1]");

  cert.b2 = cert.theta1 / qsel.ell + cert.theta2 - kTwo * over_sphere;
  const Rational b2_alt = kOne - (kTwo - cert.theta1 - cert.theta2) / derived.k;
  require_internal(cert.b2 == b2_alt, "b2 closed forms disagree");
  require_internal(cert.b2.sign() > 0, "b2 <= 0");

  cert.a2_at_0 = p1 * (derived.tau - Rational(n) / p1) * cert.b2;
  require_internal(step2_decay_at(params, derived, qsel, cert, Rational(0)) == cert.a2_at_0,
                   "step 2 exponent routes disagree at eps = 0");
  require_internal(cert.a2_at_0.sign() > 0, "a2(0) <= 0");

  auto decay = [&](const Rational& e) { return step2_decay_at(params, derived, qsel, cert, e); };
  std::tie(cert.eps, cert.a2_at_eps) = pick_eps(eps_cap(qsel, params), cert.a2_at_0 / kTwo, decay);
  require_internal(cert.a2_at_eps.sign() > 0, "a2(eps) <= 0");
  return cert;
}

NonexistenceCertificate certify(const ProblemParams& params) {
  const Admissibility cls = admissible(params);
  if (cls != Admissibility::Admissible) {
    throw refusal_error(to_string(cls), std::string("certification refused: (N=") + std::to_string(params.dim) +
                                            ", p=" + params.p.str() + ") is " + to_string(cls));
  }
  if (params.dim < 4) {
    throw refusal_error("DimensionTooLow",
                        "certification refused: the z-window of the surface-gradient step needs "
                        "ell <= (N-1)/2, which is impossible for dim <= 3 (got dim = " +
                            std::to_string(params.dim) + ")");
  }

  const DerivedExponents derived = derive_exponents(params);
  const QSelection qsel = select_q(params);
  NonexistenceCertificate cert{params, derived, qsel, step1_certify(params, derived, qsel),
                               step2_certify(params, derived, qsel), Rational(0), Rational(0)};
  cert.a = min(cert.step1.a1_at_eps, cert.step2.a2_at_eps);
  cert.b = min(cert.step1.b1, cert.step2.b2);

  const VerifyResult check = verify_certificate(cert);
  if (!check.ok()) {
    std::string what = "freshly built certificate failed verification:";
    for (const Violation& v : check.violations) what += " [" + v.clause + "] " + v.detail + ";";
    throw internal_error(what);
  }
  return cert;
}

namespace {

class Verifier {
 public:
  explicit Verifier(const NonexistenceCertificate& cert) : c_(cert) {}

  VerifyResult run() {
    check_params();
    check_derived();
    check_qsel();
    check_step1();
    check_step2();
    check_combination();
    return std::move(result_);
  }

 private:
  void fail(const std::string& clause, const std::string& detail) { result_.violations.push_back({clause, detail}); }

  void expect(bool ok, const std::string& clause, const std::string& detail) {
    if (!ok) fail(clause, detail);
  }

  void check_params() {
    expect(c_.params.dim >= 2, "params.dim_range", "dim must be >= 2");
    expect(c_.params.p > kOne, "params.p_range", "p must be > 1");
    expect(admissible(c_.params) == Admissibility::Admissible, "params.admissible",
           std::string("classification is ") + to_string(admissible(c_.params)));
  }

  void check_derived() {
    const int n = c_.params.dim;
    const Rational& p = c_.params.p;
    if (n == 2) {
      expect(!c_.derived.p_sobolev.has_value(), "derived.p_sobolev", "p_S must be infinite for dim 2");
    } else {
      expect(c_.derived.p_sobolev.has_value() && *c_.derived.p_sobolev == Rational(n + 2, n - 2), "derived.p_sobolev",
             "p_S != (N+2)/(N-2)");
    }
    expect(kTwo + c_.derived.tau == p * c_.derived.tau, "derived.tau_identity", "2 + tau != p*tau");
    expect(c_.derived.k == (p + kOne) / p, "derived.k_value", "k != (p+1)/p");
    expect(kOne < c_.derived.k && c_.derived.k < kTwo, "derived.k_range", "k outside (1,2)");
    expect(c_.derived.tau > Rational(n - 2, 2), "derived.subcritical_margin", "tau <= (N-2)/2 (not subcritical)");
    const double omega = sphere_surface_measure(n);
    expect(std::abs(c_.derived.omega - omega) <= 1e-12 * omega, "derived.omega", "sphere surface measure mismatch");
  }

  void check_qsel() {
    const int n = c_.params.dim;
    const Rational& p = c_.params.p;
    const QSelection& s = c_.qsel;
    expect(Rational(n - 1) < s.gamma && s.gamma <= Rational(n), "qsel.gamma_window", "gamma outside (N-1, N]");
    if (n >= 3) expect(s.q0 == s.gamma * (p - kOne) / kTwo, "qsel.q0_form", "q0 != gamma(p-1)/2");
    expect(s.eps0 == s.q0 - p, "qsel.eps0_def", "eps0 != q0 - p");
    expect(s.eps0.sign() > 0, "qsel.eps0_positive", "eps0 <= 0");
    expect(Rational(n - 1) * (p - kOne) / kTwo < s.q && p < s.q && s.q < s.q0 && s.q0 < p + kOne, "qsel.q_window",
           "need (N-1)(p-1)/2 < q, p < q < q0 < p+1");
    expect(s.q == s.ell * p, "qsel.ell_def", "q != ell*p");
    expect(kOne < s.ell && s.ell < c_.derived.k, "qsel.ell_range", "ell outside (1, k)");
  }

  void check_step1() {
    const int n = c_.params.dim;
    const Rational& p = c_.params.p;
    const Rational p1 = p + kOne;
    const Step1Certificate& s = c_.step1;
    const Rational inv_ell = c_.qsel.ell.reciprocal();
    const Rational two_over_sphere = Rational(2, n - 1);

    const bool is_case1 = inv_ell < two_over_sphere + p1.reciprocal();
    expect((s.case_tag == Step1Case::Case1) == is_case1, "step1.case_tag",
           std::string("ell dichotomy selects ") + (is_case1 ? "Case1" : "Case2"));

    if (s.case_tag == Step1Case::Case2) {
      if (!s.lambda || !s.mu || !s.theta) {
        fail("step1.fields_missing", "Case2 needs lambda, mu, theta");
        return;
      }
      expect(s.lambda->reciprocal() == inv_ell - two_over_sphere, "step1.lambda_def", "1/lambda != 1/ell - 2/(N-1)");
      expect(s.mu->reciprocal() == c_.derived.k.reciprocal() - two_over_sphere, "step1.mu_def",
             "1/mu != 1/k - 2/(N-1)");
      expect(p1.reciprocal() == *s.theta / *s.lambda + (kOne - *s.theta) / *s.mu, "step1.interpolation_identity",
             "1/(1+p) != theta/lambda + (1-theta)/mu");
      expect(Rational(0) <= *s.theta && *s.theta <= kOne, "step1.theta_range", "theta outside [0,1]");
      expect(s.b1 == kOne - p * (kOne - *s.theta), "step1.b1_def", "b1 != 1 - p(1-theta)");
      expect(s.a1_at_0 == kTwo * (c_.derived.tau - Rational(n - 2, 2)) * s.b1, "step1.a1_identity",
             "a1(0) != 2(tau - (N-2)/2) b1");
    } else {
      expect(!s.lambda && !s.mu && !s.theta, "step1.case1_fields", "Case1 carries no lambda/mu/theta");
      expect(s.b1 == kOne, "step1.b1_def", "Case1 has b1 = 1");
      expect(s.a1_at_0 == p1 * c_.derived.tau - Rational(n), "step1.a1_identity", "a1(0) != (p+1)(tau - N/(p+1))");
    }
    expect(s.b1.sign() > 0 && s.b1 <= kOne, "step1.b1_positive", "b1 outside (0,1]");
    expect(s.a1_at_0.sign() > 0, "step1.a1_positive", "a1(0) <= 0");
    expect(Rational(0) < s.eps && s.eps < c_.qsel.eps0, "step1.eps_range", "eps outside (0, eps0)");
    if (s.case_tag == Step1Case::Case1 || (s.lambda && s.mu && s.theta)) {
      expect(s.a1_at_eps == step1_decay_at(c_.params, c_.derived, c_.qsel, s, s.eps), "step1.a1_eps_def",
             "a1_at_eps != a1(eps)");
    }
    expect(s.a1_at_eps.sign() > 0, "step1.a1_eps_positive", "a1(eps) <= 0");
  }

  void check_step2() {
    const int n = c_.params.dim;
    const Rational& p = c_.params.p;
    const Rational p1 = p + kOne;
    const Step2Certificate& s = c_.step2;
    const Rational over_sphere = Rational(1, n - 1);
    const Rational inv_ell = c_.qsel.ell.reciprocal();
    const Rational inv_k = c_.derived.k.reciprocal();

    if (s.z.is_zero() || s.z_conj.is_zero() || s.lambda1.is_zero() || s.lambda2.is_zero() || s.mu.is_zero()) {
      fail("step2.fields_missing", "z, z', lambda1, lambda2, mu must be nonzero");
      return;
    }
    const Rational inv_z = s.z.reciprocal();
    const Rational inv_zc = s.z_conj.reciprocal();
    expect(inv_z + inv_zc == kOne, "step2.conjugacy", "1/z + 1/z' != 1");
    expect(s.z > kOne && s.z_conj > kOne, "step2.z_range", "z, z' must exceed 1");

    const Rational lo = max(inv_k - over_sphere, over_sphere);
    const Rational hi = min(inv_ell - over_sphere, p1.reciprocal() + over_sphere);
    expect(lo <= hi, "step2.z_window_nonempty", "z-window is empty");
    expect(lo <= inv_z && inv_z <= hi, "step2.z_window", "1/z outside the z-window");

    expect(s.lambda1.reciprocal() == inv_ell - over_sphere, "step2.lambda1_def", "1/lambda1 != 1/ell - 1/(N-1)");
    expect(s.mu.reciprocal() == inv_k - over_sphere, "step2.mu_def", "1/mu != 1/k - 1/(N-1)");
    expect(s.lambda2.reciprocal() == kOne - over_sphere, "step2.lambda2_def", "1/lambda2 != 1 - 1/(N-1)");

    expect(inv_z == s.theta1 / s.lambda1 + (kOne - s.theta1) / s.mu, "step2.theta1_identity",
           "1/z != theta1/lambda1 + (1-theta1)/mu");
    expect(inv_zc == s.theta2 / s.lambda2 + (kOne - s.theta2) / s.mu, "step2.theta2_identity",
           "1/z' != theta2/lambda2 + (1-theta2)/mu");
    expect(Rational(0) <= s.theta1 && s.theta1 <= kOne, "step2.theta1_range", "theta1 outside [0,1]");
    expect(Rational(0) <= s.theta2 && s.theta2 <= kOne, "step2.theta2_range", "theta2 outside [0,1]");

    const Rational b2_surface = s.theta1 / c_.qsel.ell + s.theta2 - kTwo * over_sphere;
    const Rational b2_energy = kOne - (kTwo - s.theta1 - s.theta2) / c_.derived.k;
    expect(s.b2 == b2_surface && s.b2 == b2_energy, "step2.b2_closed_forms",
           "b2 closed forms disagree (theta1/ell + theta2 - 2/(N-1) vs 1 - (2-theta1-theta2)/k)");
    expect(s.b2.sign() > 0 && s.b2 <= kOne, "step2.b2_positive", "b2 outside (0,1]");

    expect(s.a2_at_0 == p1 * (c_.derived.tau - Rational(n) / p1) * s.b2, "step2.a2_identity",
           "a2(0) != (p+1)(tau - N/(p+1)) b2");
    expect(s.a2_at_0 == step2_decay_at(c_.params, c_.derived, c_.qsel, s, Rational(0)), "step2.a2_two_routes",
           "a2(0) disagrees with the displayed eps-form at eps = 0");
    expect(s.a2_at_0.sign() > 0, "step2.a2_positive", "a2(0) <= 0");
    expect(Rational(0) < s.eps && s.eps < c_.qsel.eps0, "step2.eps_range", "eps outside (0, eps0)");
    expect(s.a2_at_eps == step2_decay_at(c_.params, c_.derived, c_.qsel, s, s.eps), "step2.a2_eps_def",
           "a2_at_eps != a2(eps)");
    expect(s.a2_at_eps.sign() > 0, "step2.a2_eps_positive", "a2(eps) <= 0");
  }

  void check_combination() {
    expect(c_.a == min(c_.step1.a1_at_eps, c_.step2.a2_at_eps), "cert.a_min", "a != min(a1_at_eps, a2_at_eps)");
    expect(c_.b == min(c_.step1.b1, c_.step2.b2), "cert.b_min", "b != min(b1, b2)");
    expect(c_.a.sign() > 0, "cert.a_positive", "a <= 0");
    expect(c_.b.sign() > 0 && c_.b <= kOne, "cert.b_range", "b outside (0,1]");
  }

  const NonexistenceCertificate& c_;
  VerifyResult result_;
};

}  // namespace

VerifyResult verify_certificate(const NonexistenceCertificate& cert) { return Verifier(cert).run(); }

nlohmann::ordered_json to_json(const Rational& x) {
  return nlohmann::ordered_json{{"num", x.num_str()}, {"den", x.den_str()}};
}

nlohmann::ordered_json to_json(const NonexistenceCertificate& cert) {
  using json = nlohmann::ordered_json;
  json j;
  j["params"] = {{"dim", cert.params.dim}, {"p", to_json(cert.params.p)}};
  json derived;
  derived["p_S"] = cert.derived.p_sobolev ? to_json(*cert.derived.p_sobolev) : json(nullptr);
  derived["tau"] = to_json(cert.derived.tau);
  derived["k"] = to_json(cert.derived.k);
  derived["omega"] = cert.derived.omega;
  j["derived"] = std::move(derived);
  j["qsel"] = {{"gamma", to_json(cert.qsel.gamma)},
               {"q0", to_json(cert.qsel.q0)},
               {"eps0", to_json(cert.qsel.eps0)},
               {"q", to_json(cert.qsel.q)},
               {"ell", to_json(cert.qsel.ell)}};
  json s1;
  s1["case"] = to_string(cert.step1.case_tag);
  if (cert.step1.lambda) s1["lambda"] = to_json(*cert.step1.lambda);
  if (cert.step1.mu) s1["mu"] = to_json(*cert.step1.mu);
  if (cert.step1.theta) s1["theta"] = to_json(*cert.step1.theta);
  s1["b1"] = to_json(cert.step1.b1);
  s1["a1_at_0"] = to_json(cert.step1.a1_at_0);
  s1["eps"] = to_json(cert.step1.eps);
  s1["a1_at_eps"] = to_json(cert.step1.a1_at_eps);
  j["step1"] = std::move(s1);
  j["step2"] = {{"z", to_json(cert.step2.z)},
                {"z_conj", to_json(cert.step2.z_conj)},
                {"lambda1", to_json(cert.step2.lambda1)},
                {"lambda2", to_json(cert.step2.lambda2)},
                {"mu", to_json(cert.step2.mu)},
                {"theta1", to_json(cert.step2.theta1)},
                {"theta2", to_json(cert.step2.theta2)},
                {"b2", to_json(cert.step2.b2)},
                {"a2_at_0", to_json(cert.step2.a2_at_0)},
                {"eps", to_json(cert.step2.eps)},
                {"a2_at_eps", to_json(cert.step2.a2_at_eps)}};
  j["a"] = to_json(cert.a);
  j["b"] = to_json(cert.b);
  return j;
}

}  // namespace lel
