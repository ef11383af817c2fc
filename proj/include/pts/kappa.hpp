#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

// Bounded gain shapes: continuous strictly increasing maps kappa with
// kappa(0) = 0 and kappa(r) -> 1 as r -> infinity, each carrying an analytic
// derivative and an inverse.  Eight concrete families are provided, plus
// composition with unbounded increasing maps, which preserves the class.

namespace pts::kappa {

enum class K1Family {
  ExpNeg,            // 1 - exp(-r)
  Arctan,            // (2/pi) atan(r)
  Rational,          // r / (r + alpha)
  RegGamma,          // P(alpha, r)
  RegBetaRational,   // I(alpha, beta, r/(r+1))
  GammaForm,         // P((1 - beta q)/s, alpha r^s)
  ExpPowForm,        // 1 - exp(-r^s)
  BetaForm           // I(m_s, m_q, beta r^(q-s) / (beta r^(q-s) + alpha))
};

// Lookup between the enum and the lower-snake names used by scenario files.
std::string family_name(K1Family family);
K1Family parse_family(const std::string& name);

// Unbounded strictly increasing map with alpha(0) = 0, used for composition.
struct KInfFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> inverse;
  std::string name;

  static KInfFunction identity();
  static KInfFunction scale(double c);   // c r, c > 0
  static KInfFunction power(double p);   // r^p, p > 0
};

// Immutable bounded gain shape.  Copies share the underlying implementation
// and every method is pure, so instances may be used concurrently.
class K1Function {
 public:
  double evaluate(double r) const;    // in [0, 1); throws for r < 0
  double derivative(double r) const;  // > 0; +infinity where the slope diverges
  double inverse(double y) const;     // r with evaluate(r) = y; y in [0, 1)

  K1Family family() const;
  const std::string& describe() const;

  // Factories validate their parameters and throw std::invalid_argument
  // naming the violated constraint.
  static K1Function exp_neg();
  static K1Function arctan();
  static K1Function rational(double alpha = 1.0);
  static K1Function reg_gamma(double alpha = 1.0);
  static K1Function reg_beta_rational(double alpha = 0.5, double beta = 0.5);
  static K1Function gamma_form(double alpha = 1.0, double beta = 1.0,
                               double s = 0.5, double q = 0.5);
  static K1Function exp_pow(double s = 0.5);
  static K1Function beta_form(double alpha = 1.0, double beta = 1.0,
                              double s = 0.5, double q = 2.0, double k = 1.0);

  struct Impl;
  explicit K1Function(std::shared_ptr<const Impl> impl);

 private:
  std::shared_ptr<const Impl> impl_;
};

// Dispatch by family; params are positional in the factory argument order and
// may be shorter than the full list, in which case defaults fill the rest.
K1Function make_k1(K1Family family, const std::vector<double>& params = {});

// kappa composed with an unbounded increasing map is again a bounded gain
// shape; the result passes the same invariants as the direct families.
K1Function compose_k1_kinf(const K1Function& k, const KInfFunction& a);

// inverse of k1 composed with k2 is an unbounded increasing map with value 0
// at 0; exposed for the closure property tests.
KInfFunction compose_inv_k1(const K1Function& k1, const K1Function& k2);

}  // namespace pts::kappa
