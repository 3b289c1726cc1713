#include "casimir/interpolation.hpp"

#include <algorithm>
#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "casimir/errors.hpp"

namespace casimir {

struct MonotoneCubic::Spline {
  boost::math::interpolators::pchip<std::vector<double>> p;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.empty()) throw ValidationError("interpolant needs matching, nonempty knots");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw ValidationError("interpolant knots must be strictly increasing");
  }
  if (x_.size() >= 4) {
    auto xs = x_;
    auto ys = y_;
    spline_ = std::make_shared<const Spline>(Spline{{std::move(xs), std::move(ys)}});
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  if (spline_) return spline_->p(x);
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin());
  const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return y_[i - 1] + t * (y_[i] - y_[i - 1]);
}

}  // namespace casimir
