#include "frontlab/reaction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frontlab/error.hpp"

namespace frontlab {

namespace detail {

// Models are evaluated on their support [lower, 1] only; Reaction applies
// the zero extension.
struct ReactionModel {
  virtual ~ReactionModel() = default;
  virtual double value(double s) const = 0;
  virtual double slope(double s) const = 0;
  virtual double prim(double s) const = 0;
  std::vector<double> breaks;
};

}  // namespace detail

namespace {

using detail::ReactionModel;

constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                 0.4786286704993665, 0.2369268850561891};

template <class F>
double gauss5(const F& f, double a, double b) {
  double m = 0.5 * (a + b), r = 0.5 * (b - a), acc = 0.0;
  for (int k = 0; k < 5; ++k) acc += kGaussWeights[k] * f(m + r * kGaussNodes[k]);
  return r * acc;
}

struct Cubic : ReactionModel {
  double th;
  explicit Cubic(double t) : th(t) {}
  double value(double s) const override { return s * (1.0 - s) * (s - th); }
  double slope(double s) const override { return -3.0 * s * s + 2.0 * (1.0 + th) * s - th; }
  double prim(double s) const override {
    double s2 = s * s;
    return -0.25 * s2 * s2 + (1.0 + th) * s2 * s / 3.0 - 0.5 * th * s2;
  }
};

struct Kpp : ReactionModel {
  double value(double s) const override { return s * (1.0 - s); }
  double slope(double s) const override { return 1.0 - 2.0 * s; }
  double prim(double s) const override { return 0.5 * s * s - s * s * s / 3.0; }
};

struct Ignition : ReactionModel {
  double th;
  explicit Ignition(double t) : th(t) { breaks = {t}; }
  double value(double s) const override { return s <= th ? 0.0 : (s - th) * (1.0 - s); }
  double slope(double s) const override { return s < th ? 0.0 : 1.0 + th - 2.0 * s; }
  double prim(double s) const override {
    if (s <= th) return 0.0;
    double t = s - th;
    return 0.5 * (1.0 - th) * t * t - t * t * t / 3.0;
  }
};

// Fritsch-Carlson slopes with the three-point shape-preserving end rule.
struct Pchip : ReactionModel {
  std::vector<double> x, y, m, cum;
  double offset = 0.0;

  Pchip(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
    std::size_t n = x.size();
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x[k + 1] - x[k];
      d[k] = (y[k + 1] - y[k]) / h[k];
    }
    m.assign(n, 0.0);
    if (n == 2) {
      m[0] = m[1] = d[0];
    } else {
      for (std::size_t k = 1; k + 1 < n; ++k) {
        if (d[k - 1] * d[k] <= 0.0) continue;
        double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
        m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
      }
      auto edge = [](double h0, double h1, double d0, double d1) {
        double e = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (e * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(e) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return e;
      };
      m[0] = edge(h[0], h[1], d[0], d[1]);
      m[n - 1] = edge(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    }
    cum.assign(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) cum[k + 1] = cum[k] + piece_integral(k, 1.0);
    offset = raw_prim(0.0);
    for (double v : x)
      if (v > 0.0 && v < 1.0) breaks.push_back(v);
  }

  std::size_t segment(double s) const {
    auto it = std::upper_bound(x.begin(), x.end(), s);
    std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(k, x.size() - 2);
  }

  double piece_integral(std::size_t k, double tau) const {
    double h = x[k + 1] - x[k];
    double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau;
    return h * (y[k] * (tau - t3 + 0.5 * t4) + h * m[k] * (0.5 * t2 - 2.0 * t3 / 3.0 + 0.25 * t4) +
                y[k + 1] * (t3 - 0.5 * t4) + h * m[k + 1] * (0.25 * t4 - t3 / 3.0));
  }

  double raw_prim(double s) const {
    std::size_t k = segment(s);
    return cum[k] + piece_integral(k, (s - x[k]) / (x[k + 1] - x[k]));
  }

  double value(double s) const override {
    std::size_t k = segment(s);
    double h = x[k + 1] - x[k], t = (s - x[k]) / h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[k] + (t3 - 2 * t2 + t) * h * m[k] + (-2 * t3 + 3 * t2) * y[k + 1] +
           (t3 - t2) * h * m[k + 1];
  }
  double slope(double s) const override {
    std::size_t k = segment(s);
    double h = x[k + 1] - x[k], t = (s - x[k]) / h;
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * y[k] + (3 * t2 - 4 * t + 1) * h * m[k] + (-6 * t2 + 6 * t) * y[k + 1] +
            (3 * t2 - 2 * t) * h * m[k + 1]) /
           h;
  }
  double prim(double s) const override { return raw_prim(s) - offset; }
};

struct Callable : ReactionModel {
  std::function<double(double)> fn;
  explicit Callable(std::function<double(double)> f, std::vector<double> kinks) : fn(std::move(f)) {
    breaks = std::move(kinks);
  }
  double value(double s) const override { return fn(s); }
  double slope(double s) const override {
    double h = 1e-6;
    auto nearest_kink_above = std::find_if(breaks.begin(), breaks.end(), [&](double b) { return b > s; });
    if ((nearest_kink_above != breaks.end() && *nearest_kink_above - s < 2 * h) || s + 2 * h > 1.0) {
      if (s - 2 * h < 0.0) return (fn(s + h) - fn(s)) / h;
      return (3 * fn(s) - 4 * fn(s - h) + fn(s - 2 * h)) / (2 * h);
    }
    bool kink_below = std::any_of(breaks.begin(), breaks.end(), [&](double b) { return b <= s && s - b < 2 * h; });
    if (kink_below || s - 2 * h < 0.0) return (-3 * fn(s) + 4 * fn(s + h) - fn(s + 2 * h)) / (2 * h);
    return (fn(s + h) - fn(s - h)) / (2 * h);
  }
  double quad(double a, double b) const {
    using boost::math::quadrature::gauss_kronrod;
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) std::swap(a, b), sign = -1.0;
    std::vector<double> cuts{a};
    for (double k : breaks)
      if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      acc += gauss_kronrod<double, 31>::integrate(fn, cuts[i], cuts[i + 1], 15, 1e-14);
    return sign * acc;
  }
  double prim(double s) const override { return quad(0.0, s); }
};

struct EpsLift : ReactionModel {
  std::shared_ptr<const ReactionModel> base;
  double eps;
  double c;  // bump scale; zero for ignition

  EpsLift(std::shared_ptr<const ReactionModel> b, double e, bool bump)
      : base(std::move(b)), eps(e), c(bump ? 27.0 * 0.5 / (32.0 * e) : 0.0) {
    breaks = base->breaks;
    breaks.push_back(0.0);
    if (bump) breaks.push_back(e);
    std::sort(breaks.begin(), breaks.end());
  }
  double bump(double s) const {
    if (s <= -eps || s >= eps) return 0.0;
    return c * (s + eps) * (eps - s) * (eps - s);
  }
  double bump_slope(double s) const {
    if (s < -eps || s >= eps) return 0.0;
    return c * (eps - s) * (-eps - 3.0 * s);
  }
  double bump_prim(double s) const {
    double t = std::clamp(s + eps, 0.0, 2.0 * eps);
    double t2 = t * t;
    return c * (2.0 * eps * eps * t2 - 4.0 / 3.0 * eps * t2 * t + 0.25 * t2 * t2);
  }
  double value(double s) const override { return (s > 0.0 ? base->value(s) : 0.0) - bump(s); }
  double slope(double s) const override { return (s >= 0.0 ? base->slope(s) : 0.0) - bump_slope(s); }
  double prim(double s) const override {
    return (s > 0.0 ? base->prim(s) : 0.0) - (bump_prim(s) - bump_prim(0.0));
  }
};

void check_theta(double theta, const char* family) {
  require(std::isfinite(theta) && theta > 0.0 && theta < 1.0, "theta in (0,1)",
          std::string(family) + " needs 0 < theta < 1");
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double glo = g(lo);
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    if (mid == lo && mid == hi) break;
  }
  return 0.5 * (lo + hi);
}

template <class G>
double golden_max(const G& g, double a, double b, int iters = 80) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + r * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - r * (b - a);
      g1 = g(x1);
    }
  }
  return std::max(g1, g2);
}

}  // namespace

std::string to_string(ReactionClass c) {
  switch (c) {
    case ReactionClass::monostable: return "monostable";
    case ReactionClass::ignition: return "ignition";
    case ReactionClass::bistable: return "bistable";
  }
  return "unknown";
}

Reaction Reaction::cubic_formula(double theta) {
  check_theta(theta, "cubic bistable");
  Reaction r;
  r.model_ = std::make_shared<Cubic>(theta);
  r.kind_ = ReactionClass::bistable;
  r.theta_ = theta;
  r.left_slope_ = -theta;
  r.right_slope_ = -(1.0 - theta);
  std::ostringstream os;
  os << "cubic_bistable(theta=" << theta << ")";
  r.name_ = os.str();
  return r;
}

Reaction Reaction::cubic_bistable(double theta) {
  check_theta(theta, "cubic bistable");
  if (theta >= 0.5) {
    std::ostringstream os;
    os << "theta=" << theta << " gives int_0^1 f = " << (1.0 - 2.0 * theta) / 12.0 << " <= 0";
    fail(ErrorKind::invalid_argument, "violates (B3)", os.str());
  }
  return cubic_formula(theta);
}

Reaction Reaction::kpp() {
  Reaction r;
  r.model_ = std::make_shared<Kpp>();
  r.kind_ = ReactionClass::monostable;
  r.left_slope_ = 1.0;
  r.right_slope_ = -1.0;
  r.name_ = "kpp()";
  return r;
}

Reaction Reaction::ignition(double theta) {
  check_theta(theta, "ignition");
  Reaction r;
  r.model_ = std::make_shared<Ignition>(theta);
  r.kind_ = ReactionClass::ignition;
  r.theta_ = theta;
  r.left_slope_ = 1.0 - theta;
  r.right_slope_ = -(1.0 - theta);
  r.kinks_ = {theta};
  std::ostringstream os;
  os << "ignition(theta=" << theta << ")";
  r.name_ = os.str();
  return r;
}

Reaction Reaction::table(const std::vector<double>& s, const std::vector<double>& f) {
  if (s.size() != f.size() || s.size() < 3)
    fail(ErrorKind::configuration, "table shape", "table reaction needs at least 3 (s, f) rows of equal length");
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    if (!(s[k + 1] > s[k]))
      fail(ErrorKind::configuration, "table ordering", "table abscissae must be strictly increasing");
  if (s.front() > 0.0 || s.back() < 1.0)
    fail(ErrorKind::configuration, "table coverage", "table must cover [0, 1]");
  auto model = std::make_shared<Pchip>(s, f);

  Reaction r;
  r.model_ = model;
  r.kinks_ = model->breaks;
  r.name_ = "table";

  // Classify from the knot values: a leading run of exact zeros is an
  // ignition plateau, a leading negative run is the bistable well.
  std::size_t first = 0;
  while (first < s.size() && s[first] <= 0.0) ++first;
  std::size_t k = first;
  while (k < s.size() && s[k] < 1.0 && f[k] == 0.0) ++k;
  if (k < s.size() && s[k] < 1.0 && k > first && f[k] > 0.0) {
    r.kind_ = ReactionClass::ignition;
    r.theta_ = s[k - 1];
  } else if (first < s.size() && f[first] < 0.0) {
    r.kind_ = ReactionClass::bistable;
    std::size_t j = first;
    while (j < s.size() && s[j] < 1.0 && f[j] < 0.0) ++j;
    if (j >= s.size() || s[j] >= 1.0)
      fail(ErrorKind::configuration, "table class", "table reaction is negative on (0,1)");
    r.theta_ = bisect([&](double v) { return model->value(v); }, s[j - 1], s[j], 1e-14);
  } else {
    r.kind_ = ReactionClass::monostable;
  }
  double left_at = r.kind_ == ReactionClass::ignition ? r.theta_ : 0.0;
  r.left_slope_ = model->slope(left_at);
  r.right_slope_ = model->slope(std::nextafter(1.0, 0.0));
  return r;
}

Reaction Reaction::table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::configuration, "table file", "cannot open reaction table '" + path + "'");
  std::vector<double> s, f;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      fail(ErrorKind::configuration, "table file", "expected 's,f' rows in '" + path + "'");
    try {
      std::size_t used = 0;
      double a = std::stod(line.substr(0, comma), &used);
      double b = std::stod(line.substr(comma + 1));
      s.push_back(a);
      f.push_back(b);
    } catch (const std::exception&) {
      if (s.empty()) continue;  // header
      fail(ErrorKind::configuration, "table file", "unparsable row '" + line + "' in '" + path + "'");
    }
  }
  Reaction r = table(s, f);
  r.name_ = "table(path=" + path + ")";
  return r;
}

Reaction Reaction::custom(ReactionClass cls, double theta, std::function<double(double)> f, double left_slope,
                          double right_slope, std::string name) {
  if (cls != ReactionClass::monostable) check_theta(theta, "custom reaction");
  Reaction r;
  std::vector<double> kinks;
  if (cls == ReactionClass::ignition) kinks.push_back(theta);
  r.model_ = std::make_shared<Callable>(std::move(f), kinks);
  r.kind_ = cls;
  r.theta_ = cls == ReactionClass::monostable ? 0.0 : theta;
  r.left_slope_ = left_slope;
  r.right_slope_ = right_slope;
  r.kinks_ = kinks;
  r.name_ = std::move(name);
  return r;
}

Reaction Reaction::epsilon_modified(const Reaction& base, double eps) {
  require(base.lower_ == 0.0, "single lift", "reaction is already epsilon-modified");
  require(base.kind_ != ReactionClass::monostable, "ignition or bistable",
          "the epsilon modification applies to ignition and bistable reactions");
  require(eps > 0.0 && eps < base.theta_, "0 < eps < theta", "epsilon must lie in (0, theta)");
  bool bump = base.kind_ == ReactionClass::bistable;
  auto lifted = std::make_shared<EpsLift>(base.model_, eps, bump);
  Reaction r = base;
  r.model_ = lifted;
  r.lower_ = -eps;
  r.kinks_ = lifted->breaks;
  if (bump) r.left_slope_ = -27.0 * 0.5 * eps / 8.0;
  std::ostringstream os;
  os << base.name_ << "+eps(" << eps << ")";
  r.name_ = os.str();
  if (bump && r.integral(-eps, 1.0) <= 0.0)
    fail(ErrorKind::invalid_argument, "violates (B3)", "epsilon too large: modified reaction has nonpositive mass");
  return r;
}

double Reaction::operator()(double s) const {
  if (!(s >= lower_ && s <= 1.0)) return 0.0;
  return model_->value(s);
}

double Reaction::derivative(double s) const {
  if (!(s >= lower_ && s < 1.0)) return 0.0;
  return model_->slope(s);
}

double Reaction::antiderivative(double s) const {
  s = std::clamp(s, -2.0, 2.0);
  return model_->prim(std::clamp(s, lower_, 1.0));
}

double Reaction::integral(double a, double b) const {
  if (a > b) return -integral(b, a);
  a = std::clamp(a, lower_, 1.0);
  b = std::clamp(b, lower_, 1.0);
  if (b - a > 0.1) return model_->prim(b) - model_->prim(a);
  std::vector<double> cuts{a};
  for (double k : model_->breaks)
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    acc += gauss5([this](double v) { return model_->value(v); }, cuts[i], cuts[i + 1]);
  return acc;
}

double Reaction::max_slope() const {
  double m = std::max(left_slope_, 0.0);
  const int n = 2000;
  for (int k = 0; k <= n; ++k) m = std::max(m, derivative(lower_ + (1.0 - lower_) * k / n));
  for (double k : kinks_) m = std::max(m, derivative(k));
  return m;
}

double lipschitz_bound(const Reaction& r) {
  double lo = r.lower_state(), m = 0.0;
  const int n = 2000;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(r.derivative(lo + (1.0 - lo) * k / n)));
  for (double k : r.kinks()) m = std::max(m, std::abs(r.derivative(k)));
  return std::max({m, std::abs(r.left_slope()), std::abs(r.right_slope())});
}

double vartheta(const Reaction& r) {
  if (r.kind() == ReactionClass::monostable) return r.lower_state();
  if (r.kind() == ReactionClass::ignition) return r.theta();
  double lo = r.lower_state();
  auto g = [&](double s) { return r.integral(lo, s); };
  return bisect(g, r.theta(), 1.0, 1e-14);
}

double mu_bound(const Reaction& r) {
  const int n = 10000;
  auto q = [&](double s) { return r(s) / s; };
  double best = -std::numeric_limits<double>::infinity();
  int at = 1;
  for (int k = 1; k < n; ++k) {
    double v = q(static_cast<double>(k) / n);
    if (v > best) best = v, at = k;
  }
  double refined = golden_max(q, static_cast<double>(at - 1) / n + 1e-12, static_cast<double>(at + 1) / n);
  best = std::max(best, refined);
  if (r.kind() == ReactionClass::monostable) best = std::max(best, r.left_slope());
  return best;
}

double rho_bound(const Reaction& r) {
  require(r.kind() == ReactionClass::monostable, "monostable only", "rho is defined for monostable reactions");
  const int n = 5000;
  auto neg = [&](double s) { return -r(s) / s; };
  double worst = -std::numeric_limits<double>::infinity();
  int at = n;
  for (int k = 1; k <= n; ++k) {
    double v = neg(0.5 * k / n);
    if (v > worst) worst = v, at = k;
  }
  double hi = std::min(0.5, 0.5 * (at + 1) / n);
  double refined = golden_max(neg, 0.5 * (at - 1) / n + 1e-12, hi);
  return std::min(-std::max(worst, refined), r.left_slope());
}

SlopeBounds slope_bounds(const Reaction& r) {
  SlopeBounds b;
  b.mu = mu_bound(r);
  b.rho = r.kind() == ReactionClass::monostable ? rho_bound(r) : std::numeric_limits<double>::quiet_NaN();
  return b;
}

bool ClassReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.passed; });
}

std::string ClassReport::summary() const {
  std::ostringstream os;
  os << to_string(kind) << ":";
  for (const auto& c : checks) {
    os << " " << c.name << (c.passed ? "=pass" : "=FAIL");
    if (!c.passed) os << "(s=" << c.offending_s << (c.detail.empty() ? "" : ", " + c.detail) << ")";
  }
  return os.str();
}

ClassReport validate(const Reaction& r, int samples) {
  ClassReport rep{r.kind(), {}};
  double lo = r.lower_state(), th = r.theta();
  auto sample = [&](int k) { return lo + (1.0 - lo) * (k + 0.5) / samples; };

  auto endpoint_check = [&](HypothesisCheck& c) {
    if (r(lo) != 0.0) c.passed = false, c.offending_s = lo, c.detail = "f(lower) != 0";
    else if (r(1.0) != 0.0) c.passed = false, c.offending_s = 1.0, c.detail = "f(1) != 0";
  };
  auto sign_check = [&](HypothesisCheck& c, auto ok_at) {
    for (int k = 0; k < samples && c.passed; ++k) {
      double s = sample(k);
      if (!ok_at(s, r(s))) {
        c.passed = false;
        c.offending_s = s;
        std::ostringstream os;
        os << "f=" << r(s);
        c.detail = os.str();
      }
    }
  };
  auto slope_check = [&](const std::string& name, bool left_ok, double left_at, const char* left_msg) {
    HypothesisCheck c{name, true, 0.0, ""};
    if (!left_ok) c.passed = false, c.offending_s = left_at, c.detail = left_msg;
    else if (!(r.right_slope() < 0.0)) c.passed = false, c.offending_s = 1.0, c.detail = "f'(1-) >= 0";
    rep.checks.push_back(c);
  };

  switch (r.kind()) {
    case ReactionClass::monostable: {
      HypothesisCheck c{"(M1)", true, 0.0, ""};
      endpoint_check(c);
      sign_check(c, [](double, double v) { return v > 0.0; });
      rep.checks.push_back(c);
      slope_check("(M2)", r.left_slope() > 0.0, lo, "f'(0+) <= 0");
      break;
    }
    case ReactionClass::ignition: {
      HypothesisCheck c{"(I1)", true, 0.0, ""};
      endpoint_check(c);
      sign_check(c, [&](double s, double v) { return s <= th ? v == 0.0 : v > 0.0; });
      rep.checks.push_back(c);
      slope_check("(I2)", r.left_slope() > 0.0, th, "f'(theta+) <= 0");
      break;
    }
    case ReactionClass::bistable: {
      HypothesisCheck c{"(B1)", true, 0.0, ""};
      endpoint_check(c);
      sign_check(c, [&](double s, double v) {
        if (std::abs(s - th) < 1e-12) return true;
        return s < th ? v < 0.0 : v > 0.0;
      });
      rep.checks.push_back(c);
      slope_check("(B2)", r.left_slope() < 0.0, lo, "f'(0+) >= 0");
      HypothesisCheck b3{"(B3)", true, 0.0, ""};
      double mass = r.integral(lo, 1.0);
      std::ostringstream os;
      os << "integral=" << mass;
      if (!(mass > 0.0)) b3.passed = false, b3.offending_s = 1.0, b3.detail = os.str();
      rep.checks.push_back(b3);
      break;
    }
  }
  return rep;
}

void require_valid(const Reaction& r) {
  ClassReport rep = validate(r);
  for (const auto& c : rep.checks)
    if (!c.passed) fail(ErrorKind::configuration, "violates " + c.name, r.name() + ": " + rep.summary());
}

}  // namespace frontlab
