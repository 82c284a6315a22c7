#include "spinorflow/lapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spinorflow/errors.hpp"

namespace spinorflow {

LapseProfile LapseProfile::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument("lapse value must be positive and finite");
  LapseProfile p;
  p.kind_ = Kind::Constant;
  p.value_ = value;
  return p;
}

LapseProfile LapseProfile::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw std::invalid_argument("tabulated lapse needs matching times/values of length >= 2");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
      throw std::invalid_argument("tabulated lapse entries must be finite");
    if (!(values[i] > 0.0)) throw std::invalid_argument("lapse values must be positive");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("lapse times must increase strictly");
  }
  if (times.front() > 0.0 || times.back() < 0.0)
    throw std::invalid_argument("lapse table must contain t = 0");

  LapseProfile p;
  p.kind_ = Kind::Tabulated;
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  p.cum_.assign(p.times_.size(), 0.0);
  for (std::size_t i = 1; i < p.times_.size(); ++i)
    p.cum_[i] = p.cum_[i - 1] +
                0.5 * (p.values_[i] + p.values_[i - 1]) * (p.times_[i] - p.times_[i - 1]);
  p.cum_at_zero_ = p.cumulative(0.0);
  return p;
}

std::pair<double, double> LapseProfile::domain() const {
  if (kind_ == Kind::Constant) {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
  }
  return {times_.front(), times_.back()};
}

double LapseProfile::beta(double t) const {
  if (kind_ == Kind::Constant) return value_;
  if (t < times_.front() || t > times_.back())
    throw OutOfDomain("t=" + std::to_string(t) + " outside the lapse table");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = it == times_.end() ? times_.size() - 1 : static_cast<std::size_t>(it - times_.begin());
  if (i == 0) return values_.front();
  const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

double LapseProfile::cumulative(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = it == times_.end() ? times_.size() - 1 : static_cast<std::size_t>(it - times_.begin());
  if (i == 0) return 0.0;
  const double t0 = times_[i - 1];
  const double b0 = values_[i - 1];
  const double slope = (values_[i] - b0) / (times_[i] - t0);
  const double dt = t - t0;
  return cum_[i - 1] + dt * (b0 + 0.5 * slope * dt);
}

double LapseProfile::integral(double t) const {
  if (kind_ == Kind::Constant) return value_ * t;
  if (t < times_.front() || t > times_.back())
    throw OutOfDomain("t=" + std::to_string(t) + " outside the lapse table");
  return cumulative(t) - cum_at_zero_;
}

std::optional<double> LapseProfile::time_at_integral(double target) const {
  if (target == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 0.0;
  if (kind_ == Kind::Constant) {
    // Expand a bracket away from 0 in the direction of the target.
    double step = target > 0.0 ? 1.0 : -1.0;
    while ((integral(step) - target) * (target > 0.0 ? 1.0 : -1.0) < 0.0) {
      step *= 2.0;
      if (!std::isfinite(step)) return std::nullopt;
    }
    lo = target > 0.0 ? 0.0 : step;
    hi = target > 0.0 ? step : 0.0;
  } else {
    const auto [a, b] = domain();
    if (target > integral(b) || target < integral(a)) return std::nullopt;
    lo = target > 0.0 ? 0.0 : a;
    hi = target > 0.0 ? b : 0.0;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (integral(mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double b_integral(const LapseProfile& profile, double t) { return profile.integral(t); }

}  // namespace spinorflow
