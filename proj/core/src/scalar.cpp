#include "lcmi/scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lcmi {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

}  // namespace

double binary_entropy(double p) {
  require_unit(p, "p");
  if (p == 0.0 || p == 1.0) return 0.0;
  // Natural-log internally, one base change at the end.
  return -(p * std::log(p) + (1.0 - p) * std::log1p(-p)) / kLn2;
}

double binary_entropy_inv(double y) {
  require_unit(y, "y");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100 && lo < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double star(double a, double b) {
  require_unit(a, "a");
  require_unit(b, "b");
  return a * (1.0 - b) + b * (1.0 - a);
}

double sdpi_eta_bsc(double t) {
  require_unit(t, "t");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  const double d = 1.0 - 2.0 * binary_entropy_inv(1.0 - t);
  return d * d;
}

double alpha(double t) {
  require_unit(t, "t");
  if (t == 0.0) return kAlphaAtZero;
  return t / sdpi_eta_bsc(t);
}

double mgl_phi(double t, double x) {
  require_unit(t, "t");
  require_unit(x, "x");
  return binary_entropy(star(binary_entropy_inv(1.0 - t), binary_entropy_inv(x)));
}

double psi(double t, double x) {
  return mgl_phi(t, x) - (1.0 - t);
}

double tstar(double rate) {
  if (!(rate > 0.0 && rate < 1.0))
    throw std::domain_error("tstar: rate must lie in (0,1), got " + std::to_string(rate));
  const double t = 1.0 - binary_entropy(0.5 * (1.0 - std::sqrt(rate)));
  if (std::fabs(sdpi_eta_bsc(t) - rate) > 1e-9)
    throw std::logic_error("tstar: eta_{t*} failed to round-trip to the rate");
  return t;
}

double iid_bsc_mi_per_symbol(double t, double p) {
  require_unit(t, "t");
  require_unit(p, "p");
  if (t == 0.0) return 0.0;
  return binary_entropy(star(p, binary_entropy_inv(1.0 - t))) - (1.0 - t);
}

}  // namespace lcmi
