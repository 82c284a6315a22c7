#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace spinorflow {

/// Spatially constant lapse t -> beta_t and its integral B_t = int_0^t beta.
class LapseProfile {
 public:
  enum class Kind { Constant, Tabulated };

  static LapseProfile constant(double value);
  /// Piecewise-linear lapse through (times[i], values[i]). The table must
  /// cover t = 0, times must increase strictly and values must be positive.
  static LapseProfile tabulated(std::vector<double> times, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// (-inf, inf) for constant profiles.
  std::pair<double, double> domain() const;

  /// Throws OutOfDomain outside the table.
  double beta(double t) const;
  double integral(double t) const;

  /// Time at which B_t = target, by bisection on the increasing map t -> B_t.
  /// nullopt when the table never reaches the target.
  std::optional<double> time_at_integral(double target) const;

 private:
  LapseProfile() = default;
  double cumulative(double t) const;  // int_{times[0]}^t beta

  Kind kind_ = Kind::Constant;
  double value_ = 1.0;
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> cum_;
  double cum_at_zero_ = 0.0;
};

double b_integral(const LapseProfile& profile, double t);

}  // namespace spinorflow
