#pragma once

// Four-dimensional development g = -beta_t^2 dt^2 + h_t in the orthonormal
// coframe (E0, E1, E2, E3) = (beta_t dt, e^t_u, e^t_l, e^t_n), signature (-,+,+,+).

#include <array>

#include "spinorflow/cauchy_pair.hpp"
#include "spinorflow/lapse.hpp"
#include "spinorflow/tensor_algebra.hpp"

namespace spinorflow {

using StructureConstants4 = StructureConstants<4>;
using Ricci4 = SquareMatrix<4>;

inline constexpr std::array<double, 4> kLorentzSignature{-1.0, 1.0, 1.0, 1.0};

struct Coframe4 {
  double t = 0.0;
  double beta = 1.0;
  StructureConstants4 structure;       ///< dE^a = -1/2 C^a_BC E^B ^ E^C
  StructureConstants4 structure_rate;  ///< d/dt of `structure`
};

/// Structure functions from the evolved shape operator: dE0 = 0,
/// dE_a = theta_t(E_a) ^ (E0 + E1).
StructureConstants4 structure_constants4(const Sym3& theta_t);

Coframe4 coframe4_from_theta(double t, const Sym3& theta_t, double beta);

/// Throws SingularTime.
Coframe4 coframe4_at(const CauchyPair& pair, const LapseProfile& profile, double t);

Ricci4 ricci4(const Coframe4& frame);

/// max |Ric^4 - (H_t/2)(E0+E1)(x)(E0+E1)| with H_t recomputed from the
/// curvature of (h_t, theta_t).
double verify_ricci_identity(const CauchyPair& pair, const LapseProfile& profile, double t);

struct DiracCurrentFrame {
  Vec4 base_oneform{1.0, 1.0, 0.0, 0.0};  ///< beta dt + e^t_u
  Vec3 log_scale_differential{};          ///< -theta_t(e^t_u), evolved-frame components
  Vec4 l_class_representative{0.0, 0.0, 1.0, 0.0};
  double null_norm = 0.0;    ///< g^{-1}(base, base)
  double closedness = 0.0;   ///< max-norm of d(log_scale_differential)
};

DiracCurrentFrame dirac_current_frame(const CauchyPair& pair, const LapseProfile& profile, double t);

}  // namespace spinorflow
