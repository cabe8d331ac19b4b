#include "sigwaste/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigw {

namespace {

// shape-preserving three-point slope for the boundary knots
double endpoint_slope(double h0, double h1, double del0, double del1) {
  double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
  if (d * del0 <= 0.0) return 0.0;
  if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0)) return 3.0 * del0;
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("MonotoneCubic: need at least two knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("MonotoneCubic: x not strictly increasing");

  d_.resize(n);
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  if (n == 2) {
    d_[0] = d_[1] = del[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  d_[0] = endpoint_slope(h[0], h[1], del[0], del[1]);
  d_[n - 1] = endpoint_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

std::size_t MonotoneCubic::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::ptrdiff_t i = (it - x_.begin()) - 1;
  if (i < 0) i = 0;
  if (i > static_cast<std::ptrdiff_t>(x_.size()) - 2)
    i = static_cast<std::ptrdiff_t>(x_.size()) - 2;
  return static_cast<std::size_t>(i);
}

double MonotoneCubic::clamp_to_range(double x) const {
  const double slack = 1e-12 * (std::abs(x) + (x_back() - x_front()));
  if (x < x_front() - slack || x > x_back() + slack)
    throw std::domain_error("MonotoneCubic: argument outside knot range");
  return std::min(std::max(x, x_front()), x_back());
}

double MonotoneCubic::operator()(double x) const {
  x = clamp_to_range(x);
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y_[i] * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d_[i] * (t3 - 2.0 * t2 + t) +
         y_[i + 1] * (-2.0 * t3 + 3.0 * t2) + h * d_[i + 1] * (t3 - t2);
}

double MonotoneCubic::derivative(double x) const {
  x = clamp_to_range(x);
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  return y_[i] * (6.0 * t2 - 6.0 * t) / h + d_[i] * (3.0 * t2 - 4.0 * t + 1.0) +
         y_[i + 1] * (-6.0 * t2 + 6.0 * t) / h + d_[i + 1] * (3.0 * t2 - 2.0 * t);
}

LogLogInterp::LogLogInterp(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("LogLogInterp: need at least two knots");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("LogLogInterp: data must be strictly positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  ll_ = MonotoneCubic(std::move(lx), std::move(ly));
  x_front_ = x.front();
  x_back_ = x.back();
  y_front_ = y.front();
  y_back_ = y.back();
  slope_lo_ = ll_.derivative(ll_.x_front());
  slope_hi_ = ll_.derivative(ll_.x_back());
}

double LogLogInterp::value(double x) const {
  if (x < 0.0) throw std::domain_error("LogLogInterp: negative argument");
  if (x == 0.0) {
    if (slope_lo_ > 0.0) return 0.0;
    if (slope_lo_ < 0.0) return std::numeric_limits<double>::infinity();
    return y_front_;
  }
  if (x < x_front_) return y_front_ * std::pow(x / x_front_, slope_lo_);
  if (x > x_back_) return y_back_ * std::pow(x / x_back_, slope_hi_);
  return std::exp(ll_(std::log(x)));
}

double LogLogInterp::derivative(double x) const {
  if (!(x > 0.0)) throw std::domain_error("LogLogInterp: derivative needs x > 0");
  if (x < x_front_) return slope_lo_ * value(x) / x;
  if (x > x_back_) return slope_hi_ * value(x) / x;
  return ll_.derivative(std::log(x)) * value(x) / x;
}

}  // namespace sigw
