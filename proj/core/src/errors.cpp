#include "spinorflow/errors.hpp"

#include <utility>

namespace spinorflow {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string msg = "invalid Cauchy pair";
  for (std::size_t i = 0; i < v.size(); ++i) msg += (i == 0 ? ": " : "; ") + v[i];
  return msg;
}

}  // namespace

InvalidPair::InvalidPair(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

SingularTime::SingularTime(double t, const std::string& detail)
    : Error("singular time t=" + std::to_string(t) + ": " + detail), t_(t) {}

}  // namespace spinorflow
