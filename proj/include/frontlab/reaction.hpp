#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace frontlab {

enum class ReactionClass { monostable, ignition, bistable };

std::string to_string(ReactionClass c);

namespace detail {
struct ReactionModel;
}

/// Immutable nonlinearity f on [lower, 1], extended by zero outside.
///
/// The lower state is 0 for every ordinary family. The epsilon-modified
/// reactions used by the strip constructions live on [-eps, 1] instead.
class Reaction {
 public:
  static Reaction cubic_bistable(double theta);
  /// Same cubic without the (B3) guard; for validation and negative tests.
  static Reaction cubic_formula(double theta);
  static Reaction kpp();
  static Reaction ignition(double theta);
  /// Monotone-cubic (PCHIP) interpolant of samples covering [0, 1].
  /// The class and threshold are inferred from the sign pattern.
  static Reaction table(const std::vector<double>& s, const std::vector<double>& f);
  static Reaction table_csv(const std::string& path);
  /// Arbitrary callable. The slopes are one-sided derivatives supplied by
  /// the caller, since they cannot be estimated reliably across a kink.
  static Reaction custom(ReactionClass cls, double theta, std::function<double(double)> f,
                         double left_slope, double right_slope, std::string name = "custom");
  /// Lift onto [-eps, 1]. Ignition keeps f; bistable subtracts a bump of
  /// height eps^2 / 2 supported in [-eps, eps] so that the result stays
  /// below f and vanishes at -eps.
  static Reaction epsilon_modified(const Reaction& base, double eps);

  double operator()(double s) const;
  /// One-sided (right) derivative at kinks.
  double derivative(double s) const;
  /// F(s) = int_0^s f, with s clamped to [-2, 2].
  double antiderivative(double s) const;
  /// int_a^b f, accurate on short intervals where F(b) - F(a) cancels.
  double integral(double a, double b) const;

  ReactionClass kind() const { return kind_; }
  double theta() const { return theta_; }
  double left_slope() const { return left_slope_; }
  double right_slope() const { return right_slope_; }
  double lower_state() const { return lower_; }
  double epsilon() const { return -lower_; }
  /// Sup of f' on [lower, 1]; sets the speed bracket for wave searches.
  double max_slope() const;
  /// Points where f is only piecewise smooth (theta for ignition, table knots).
  const std::vector<double>& kinks() const { return kinks_; }
  const std::string& name() const { return name_; }

 private:
  Reaction() = default;
  std::shared_ptr<const detail::ReactionModel> model_;
  ReactionClass kind_ = ReactionClass::monostable;
  double theta_ = 0.0;
  double left_slope_ = 0.0;
  double right_slope_ = 0.0;
  double lower_ = 0.0;
  std::vector<double> kinks_;
  std::string name_;
};

/// sup |f'| on [lower, 1], sampled; used for explicit step bounds.
double lipschitz_bound(const Reaction& r);

/// sup{s in [lower, 1] : int_lower^s f <= 0}.
double vartheta(const Reaction& r);

struct SlopeBounds {
  double mu = 0.0;
  double rho = 0.0;
};

/// mu = sup f(s)/s on (0, 1).
double mu_bound(const Reaction& r);
/// rho = inf f(s)/s on (0, 1/2]; monostable only.
double rho_bound(const Reaction& r);
/// rho is NaN unless the reaction is monostable.
SlopeBounds slope_bounds(const Reaction& r);

struct HypothesisCheck {
  std::string name;
  bool passed = true;
  double offending_s = 0.0;
  std::string detail;
};

struct ClassReport {
  ReactionClass kind;
  std::vector<HypothesisCheck> checks;
  bool ok() const;
  std::string summary() const;
};

ClassReport validate(const Reaction& r, int samples = 10000);

/// Throws configuration-class errors on failure.
void require_valid(const Reaction& r);

}  // namespace frontlab
