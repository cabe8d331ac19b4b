#pragma once

#include <cstddef>
#include <vector>

namespace sigw {

// Fritsch-Carlson monotone piecewise-cubic interpolation. Reproduces the
// knots exactly and never overshoots between them, so monotone data stays
// monotone.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  std::size_t size() const { return x_.size(); }

 private:
  std::size_t interval(double x) const;
  double clamp_to_range(double x) const;

  std::vector<double> x_, y_, d_;
};

// Positive data interpolated as a monotone cubic in log-log space, with
// power-law extension beyond the end knots. Exact on pure power laws, which
// is what the solved curves look like near the lower boundary.
class LogLogInterp {
 public:
  LogLogInterp() = default;
  LogLogInterp(const std::vector<double>& x, const std::vector<double>& y);

  // defined for x >= 0; at 0 returns the power-law limit (0, finite, or +inf)
  double value(double x) const;
  // defined for x > 0
  double derivative(double x) const;

  double x_front() const { return x_front_; }
  double x_back() const { return x_back_; }

 private:
  MonotoneCubic ll_;
  double x_front_ = 0, x_back_ = 0;
  double y_front_ = 0, y_back_ = 0;
  double slope_lo_ = 1, slope_hi_ = 1;
};

}  // namespace sigw
