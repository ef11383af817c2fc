#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pts/kappa.hpp"

using namespace pts;
using kappa::K1Family;
using kappa::K1Function;
using kappa::KInfFunction;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  double llo = std::log(lo);
  double lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
  return g;
}

// The class axioms: zero at zero, strictly increasing until the value
// saturates one ulp below one, bounded by one, positive slope, and an
// inverse that round-trips in both directions.
void check_k1_axioms(const K1Function& k) {
  INFO("family: ", k.describe());
  CHECK(k.evaluate(0.0) == 0.0);

  double prev = 0.0;
  for (double r : log_grid(1e-6, 1e6, 100)) {
    double v = k.evaluate(r);
    CHECK(v < 1.0);
    CHECK(v >= prev);
    if (v == prev) CHECK(v > 0.99999);  // ties only at the saturated top
    prev = v;
  }

  for (double r : log_grid(1e-6, 1e2, 30)) {
    CHECK(k.derivative(r) > 0.0);
  }

  for (double y : {1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999}) {
    double r = k.inverse(y);
    CHECK(r >= 0.0);
    CHECK(k.evaluate(r) == doctest::Approx(y).epsilon(1e-9));
  }
  CHECK(k.inverse(0.0) == 0.0);

  for (double r : log_grid(1e-3, 1e2, 15)) {
    double y = k.evaluate(r);
    if (y > 0.999) continue;  // inverse ill-conditioned near saturation
    CHECK(k.inverse(y) == doctest::Approx(r).epsilon(1e-7));
  }
}

void check_derivative_against_differences(const K1Function& k) {
  INFO("family: ", k.describe());
  for (double r : log_grid(1e-3, 1e3, 20)) {
    double h = r * 1e-5;
    double hi = k.evaluate(r + h);
    if (hi > 0.99999) continue;  // saturated plateau has no usable slope
    double fd = (hi - k.evaluate(r - h)) / (2.0 * h);
    double d = k.derivative(r);
    CHECK(std::fabs(fd - d) <= 1e-5 * d + 1e-12);
  }
}

std::vector<K1Function> default_families() {
  return {K1Function::exp_neg(),
          K1Function::arctan(),
          K1Function::rational(),
          K1Function::reg_gamma(),
          K1Function::reg_beta_rational(),
          K1Function::gamma_form(),
          K1Function::exp_pow(),
          K1Function::beta_form()};
}

}  // namespace

TEST_CASE("every default family satisfies the class axioms") {
  for (const auto& k : default_families()) check_k1_axioms(k);
}

TEST_CASE("every default family approaches one: above 0.99 at r = 1e6") {
  for (const auto& k : default_families()) {
    INFO("family: ", k.describe());
    CHECK(k.evaluate(1e6) > 0.99);
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  for (const auto& k : default_families()) check_derivative_against_differences(k);
  check_derivative_against_differences(K1Function::rational(3.0));
  check_derivative_against_differences(K1Function::reg_gamma(2.5));
  check_derivative_against_differences(K1Function::reg_beta_rational(2.0, 1.5));
  check_derivative_against_differences(K1Function::gamma_form(2.0, 0.5, 0.7, 1.2));
  check_derivative_against_differences(K1Function::exp_pow(1.0));
  check_derivative_against_differences(K1Function::beta_form(1.0, 1.0, 0.9, 1.1, 1.0));
  check_derivative_against_differences(K1Function::beta_form(2.0, 3.0, 0.3, 1.5, 1.4));
}

TEST_CASE("frozen values of the elementary families") {
  auto en = K1Function::exp_neg();
  CHECK(en.evaluate(1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
  CHECK(en.derivative(1.0) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-14));
  CHECK(en.inverse(0.5) == doctest::Approx(M_LN2).epsilon(1e-14));
  CHECK(en.derivative(0.0) == 1.0);

  auto at = K1Function::arctan();
  CHECK(at.evaluate(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(at.derivative(0.0) ==
        doctest::Approx(0.6366197723675814).epsilon(1e-14));
  CHECK(at.inverse(0.5) == doctest::Approx(1.0).epsilon(1e-14));

  auto ra = K1Function::rational(2.0);
  CHECK(ra.evaluate(2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ra.derivative(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ra.inverse(0.5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("frozen values of the special-function families") {
  // P(1, r) = 1 - e^-r.
  CHECK(K1Function::reg_gamma(1.0).evaluate(2.0) ==
        doctest::Approx(0.8646647167633873).epsilon(1e-12));
  // P(1/2, 1) = erf(1).
  CHECK(K1Function::reg_gamma(0.5).evaluate(1.0) ==
        doctest::Approx(0.8427007929497149).epsilon(1e-12));
  // I(1/2, 1/2, x) = (2/pi) asin(sqrt(x)); x(1) = 1/2 and x(3) = 3/4.
  auto rb = K1Function::reg_beta_rational();
  CHECK(rb.evaluate(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rb.evaluate(3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("half-shape arcsine closed form holds on a grid") {
  auto rb = K1Function::reg_beta_rational(0.5, 0.5);
  for (double r : log_grid(1e-5, 1e5, 40)) {
    double x = r / (r + 1.0);
    double want = (2.0 / M_PI) * std::asin(std::sqrt(x));
    CHECK(rb.evaluate(r) == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("gamma composite with unit shape reduces to a stretched exponential") {
  // With alpha = beta = 1, s = q = 1/2 the gamma shape parameter is 1, so
  // kappa(r) = 1 - exp(-sqrt(r)) exactly; exp_pow(1/2) is the same function.
  auto gf = K1Function::gamma_form();
  auto ep = K1Function::exp_pow();
  CHECK(gf.evaluate(1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-12));
  CHECK(gf.evaluate(4.0) == doctest::Approx(0.8646647167633873).epsilon(1e-12));
  CHECK(gf.derivative(1.0) ==
        doctest::Approx(0.18393972058572117).epsilon(1e-11));
  for (double r : log_grid(1e-4, 1e4, 30)) {
    CHECK(gf.evaluate(r) == doctest::Approx(ep.evaluate(r)).epsilon(1e-11));
  }
  CHECK(gf.inverse(0.8646647167633873) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("beta composite matches the quadrature oracle through its rational map") {
  auto bf = K1Function::beta_form();  // ms = 1/3, mq = 2/3, w = r^1.5
  for (double r : log_grid(1e-3, 1e3, 25)) {
    double w = std::pow(r, 1.5);
    double want = oracles::reg_inc_beta(1.0 / 3.0, 2.0 / 3.0, w / (w + 1.0));
    CHECK(std::fabs(bf.evaluate(r) - want) <= 1e-9);
  }
  CHECK(bf.evaluate(1e6) ==
        doctest::Approx(0.9999995865033361).epsilon(1e-12));
}

TEST_CASE("gentle-slope beta composite frozen values") {
  auto bf = K1Function::beta_form(1.0, 1.0, 0.9, 1.1, 1.0);
  CHECK(bf.evaluate(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bf.evaluate(0.01) ==
        doctest::Approx(0.35833530638659394).epsilon(1e-12));
  check_k1_axioms(bf);
}

TEST_CASE("slope conventions at the origin") {
  CHECK(K1Function::reg_gamma(0.5).derivative(0.0) == kInf);
  CHECK(K1Function::reg_gamma(1.0).derivative(0.0) == 1.0);
  CHECK(K1Function::reg_gamma(2.0).derivative(0.0) == 0.0);
  CHECK(K1Function::reg_beta_rational(0.5, 0.5).derivative(0.0) == kInf);
  CHECK(K1Function::reg_beta_rational(1.0, 2.0).derivative(0.0) == 2.0);
  CHECK(K1Function::reg_beta_rational(1.5, 1.0).derivative(0.0) == 0.0);
  CHECK(K1Function::gamma_form().derivative(0.0) == kInf);
  CHECK(K1Function::exp_pow(1.0).derivative(0.0) == 1.0);
  CHECK(K1Function::exp_pow(0.5).derivative(0.0) == kInf);
  CHECK(K1Function::beta_form().derivative(0.0) == kInf);
}

TEST_CASE("composition with unbounded increasing maps stays in the class") {
  auto squared = kappa::compose_k1_kinf(K1Function::rational(1.0),
                                        KInfFunction::power(2.0));
  CHECK(squared.evaluate(2.0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(squared.derivative(2.0) == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(squared.inverse(0.8) == doctest::Approx(2.0).epsilon(1e-12));
  check_k1_axioms(squared);
  check_derivative_against_differences(squared);

  auto stretched = kappa::compose_k1_kinf(K1Function::exp_neg(),
                                          KInfFunction::scale(3.0));
  CHECK(stretched.evaluate(1.0) ==
        doctest::Approx(-std::expm1(-3.0)).epsilon(1e-14));
  check_k1_axioms(stretched);

  auto same = kappa::compose_k1_kinf(K1Function::beta_form(),
                                     KInfFunction::identity());
  for (double r : log_grid(1e-3, 1e3, 10)) {
    CHECK(same.evaluate(r) ==
          doctest::Approx(K1Function::beta_form().evaluate(r)).epsilon(1e-14));
  }
  check_k1_axioms(same);
}

TEST_CASE("inverse of one shape composed with another is unbounded increasing") {
  auto chain =
      kappa::compose_inv_k1(K1Function::rational(1.0), K1Function::exp_neg());
  // rational inverse of (1 - e^-r) is e^r - 1.
  CHECK(chain.value(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(chain.value(0.0) == 0.0);
  double prev = 0.0;
  for (double r : log_grid(1e-3, 10.0, 20)) {
    double v = chain.value(r);
    CHECK(v > prev);
    prev = v;
    CHECK(chain.inverse(v) == doctest::Approx(r).epsilon(1e-9));
  }
  // Derivative of e^r - 1 is e^r.
  CHECK(chain.derivative(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

  auto self = kappa::compose_inv_k1(K1Function::beta_form(),
                                    K1Function::beta_form());
  for (double r : log_grid(1e-2, 1e2, 10)) {
    CHECK(self.value(r) == doctest::Approx(r).epsilon(1e-8));
  }
}

TEST_CASE("family names parse both ways") {
  const K1Family families[] = {
      K1Family::ExpNeg,          K1Family::Arctan,
      K1Family::Rational,        K1Family::RegGamma,
      K1Family::RegBetaRational, K1Family::GammaForm,
      K1Family::ExpPowForm,      K1Family::BetaForm};
  for (K1Family f : families) {
    CHECK(kappa::parse_family(kappa::family_name(f)) == f);
    CHECK(kappa::make_k1(f).family() == f);
  }
  CHECK_THROWS_AS(kappa::parse_family("parabola"), std::invalid_argument);
}

TEST_CASE("positional parameters fill in with defaults") {
  auto full = kappa::make_k1(K1Family::BetaForm, {1.0, 1.0, 0.9, 1.1, 1.0});
  CHECK(full.evaluate(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  auto partial = kappa::make_k1(K1Family::Rational, {2.0});
  CHECK(partial.evaluate(2.0) == doctest::Approx(0.5).epsilon(1e-14));
  auto empty = kappa::make_k1(K1Family::GammaForm);
  CHECK(empty.evaluate(1.0) ==
        doctest::Approx(K1Function::gamma_form().evaluate(1.0)).epsilon(1e-14));

  CHECK_THROWS_AS(kappa::make_k1(K1Family::ExpNeg, {1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(kappa::make_k1(K1Family::Rational, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(kappa::make_k1(K1Family::BetaForm, {1, 1, 1, 1, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("parameter constraints are enforced") {
  CHECK_THROWS_AS(K1Function::rational(0.0), std::invalid_argument);
  CHECK_THROWS_AS(K1Function::rational(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(K1Function::reg_gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(K1Function::reg_beta_rational(1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(K1Function::gamma_form(1.0, 2.0, 0.5, 0.5),
                  std::invalid_argument);  // beta q = 1
  CHECK_THROWS_AS(K1Function::gamma_form(1.0, 1.0, 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(K1Function::exp_pow(0.0), std::invalid_argument);
  CHECK_THROWS_AS(K1Function::exp_pow(1.2), std::invalid_argument);
  CHECK_THROWS_AS(K1Function::beta_form(1.0, 1.0, 0.5, 2.0, 2.1),
                  std::invalid_argument);  // k s > 1
  CHECK_THROWS_AS(K1Function::beta_form(1.0, 1.0, 0.4, 0.9, 1.0),
                  std::invalid_argument);  // k q < 1
  CHECK_THROWS_AS(KInfFunction::scale(0.0), std::invalid_argument);
  CHECK_THROWS_AS(KInfFunction::power(-2.0), std::invalid_argument);
}

TEST_CASE("evaluation domains are enforced") {
  auto k = K1Function::exp_neg();
  CHECK_THROWS_AS(k.evaluate(-1.0), std::domain_error);
  CHECK_THROWS_AS(k.evaluate(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(k.evaluate(kInf), std::domain_error);
  CHECK_THROWS_AS(k.derivative(-0.5), std::domain_error);
  CHECK_THROWS_AS(k.inverse(1.0), std::domain_error);
  CHECK_THROWS_AS(k.inverse(-0.1), std::domain_error);
  CHECK_THROWS_AS(k.inverse(2.0), std::domain_error);
}

TEST_CASE("descriptions name the family") {
  for (const auto& k : default_families()) {
    CHECK(k.describe().find(kappa::family_name(k.family())) == 0);
  }
  CHECK(K1Function::rational(2.0).describe() == "rational(alpha=2)");
}

TEST_CASE("copies share the implementation and evaluate identically") {
  auto a = K1Function::beta_form();
  auto b = a;
  CHECK(b.evaluate(3.0) == a.evaluate(3.0));
  CHECK(b.describe() == a.describe());
}
