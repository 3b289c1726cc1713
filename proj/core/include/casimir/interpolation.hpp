#pragma once

#include <memory>
#include <vector>

namespace casimir {

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes). Falls
// back to linear interpolation for fewer than four knots. Evaluation outside the
// knot range clamps to the end values; callers decide extrapolation policy.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  struct Spline;
  std::shared_ptr<const Spline> spline_;
};

}  // namespace casimir
