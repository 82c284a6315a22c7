#include "spinorflow/lorentz4d.hpp"

#include <cmath>

#include "spinorflow/flow_exact.hpp"
#include "spinorflow/flow_numeric.hpp"

namespace spinorflow {

namespace {

// theta with the time index 0 padded by zeros
double theta4(const Sym3& th, std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0.0;
  return th(a - 1, b - 1);
}

double null_part(std::size_t i) { return i <= 1 ? 1.0 : 0.0; }  // E0 + E1

}  // namespace

StructureConstants4 structure_constants4(const Sym3& th) {
  StructureConstants4 c;
  for (std::size_t a = 1; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t k = 0; k < 4; ++k)
        c(a, b, k) = -theta4(th, a, b) * null_part(k) + theta4(th, a, k) * null_part(b);
  return c;
}

Coframe4 coframe4_from_theta(double t, const Sym3& theta_t, double beta) {
  Coframe4 f;
  f.t = t;
  f.beta = beta;
  f.structure = structure_constants4(theta_t);
  f.structure_rate = structure_constants4(ode_rhs(theta_t, Mat3::identity(), beta).theta);
  return f;
}

Coframe4 coframe4_at(const CauchyPair& pair, const LapseProfile& profile, double t) {
  return coframe4_from_theta(t, ExactFlow(pair, profile).theta(t), profile.beta(t));
}

Ricci4 ricci4(const Coframe4& frame) {
  const auto w = levi_civita<4>(frame.structure, kLorentzSignature);
  // Only the E0 direction (beta^-1 d/dt) differentiates the coefficients.
  std::array<ConnectionCoefficients<4>, 4> dw{};
  const auto w_rate = levi_civita<4>(frame.structure_rate, kLorentzSignature);
  for (std::size_t i = 0; i < w_rate.v.size(); ++i) dw[0].v[i] = w_rate.v[i] / frame.beta;
  Ricci4 ric = ricci_tensor<4>(frame.structure, w, kLorentzSignature, &dw);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) ric[i][j] = ric[j][i] = 0.5 * (ric[i][j] + ric[j][i]);
  return ric;
}

double verify_ricci_identity(const CauchyPair& pair, const LapseProfile& profile, double t) {
  const ExactFlow flow(pair, profile);
  const Sym3 th = flow.theta(t);
  const Mat3 u = flow.frame(t);
  const double h = hamiltonian_function(pushforward(structure_constants(pair.theta), u), th);
  const Ricci4 ric = ricci4(coframe4_from_theta(t, th, profile.beta(t)));
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      r = std::max(r, std::abs(ric[i][j] - 0.5 * h * null_part(i) * null_part(j)));
  return r;
}

DiracCurrentFrame dirac_current_frame(const CauchyPair& pair, const LapseProfile& profile, double t) {
  const ExactFlow flow(pair, profile);
  const Sym3 th = flow.theta(t);
  DiracCurrentFrame d;
  d.log_scale_differential = {-th.uu(), -th.ul(), -th.un()};
  for (std::size_t i = 0; i < 4; ++i)
    d.null_norm += kLorentzSignature[i] * d.base_oneform[i] * d.base_oneform[i];
  const auto c_t = pushforward(structure_constants(pair.theta), flow.frame(t));
  d.closedness = max_abs(exterior_derivative(c_t, d.log_scale_differential));
  return d;
}

}  // namespace spinorflow
