#pragma once

// Closed-form left-invariant parallel spinor flow.
//
// Frame transforms act on coframes: e^t_a = sum_b U_ab(t) e_b, so the induced
// metric in the reference basis is h_t = U^T U.

#include <optional>

#include "spinorflow/cauchy_pair.hpp"
#include "spinorflow/lapse.hpp"
#include "spinorflow/types.hpp"

namespace spinorflow {

enum class FlowBranch {
  QuasiDiagonal,       ///< lambda = 0, theta_uu != 0
  QuasiDiagonalLimit,  ///< lambda = 0, theta_uu = 0
  OffDiagonalN,        ///< theta_ul = 0, theta_un != 0
  OffDiagonalL,        ///< theta_un = 0, theta_ul != 0 (l <-> n mirror)
  OffDiagonalBoth,     ///< theta_ul theta_un != 0
};

struct NonQDCoefficients {
  double y0 = 0.0;
  double c_ll = 0.0;
  double c_nn = 0.0;
  double c_ln = 0.0;
};

/// Maximal interval of the flow. A bound holds +-inf when infinite and is
/// empty when a tabulated lapse ends before the boundary is reached.
struct Lifespan {
  std::optional<double> t_minus;
  std::optional<double> t_plus;
  bool immortal = false;
  /// One-sided test int_0^inf beta < |1/theta_uu| (lambda = 0), or the
  /// two-sided verdict when lambda != 0. Empty when it cannot be decided.
  std::optional<bool> forward_criterion_immortal;
};

class ExactFlow {
 public:
  /// Throws InvalidPair.
  ExactFlow(const CauchyPair& pair, LapseProfile profile, double tol = kDefaultTolerance);

  const CauchyPair& pair() const noexcept { return pair_; }
  const LapseProfile& profile() const noexcept { return profile_; }
  const ThetaInvariants& invariants() const noexcept { return inv_; }
  FlowBranch branch() const noexcept { return branch_; }
  const Lifespan& lifespan() const noexcept { return lifespan_; }
  /// Throws NotApplicable when lambda = 0.
  NonQDCoefficients nonqd_coefficients() const;

  double b(double t) const { return profile_.integral(t); }

  Sym3 theta(double t) const;
  Mat3 frame(double t) const;
  /// U^T U
  Sym3 metric(double t) const;
  /// Branch-specific closed-form expression of the metric family.
  Sym3 metric_family(double t) const;
  double hamiltonian(double t, double h0) const;
  /// Reference-coframe components of eta_t. Throws NotApplicable when lambda = 0.
  Vec3 eta(double t) const;
  /// Components of eta_t in the evolved frame (e^t_u, e^t_l, e^t_n).
  Vec3 eta_frame() const;

 private:
  struct Phase {
    double B;
    double s;   // 1 - theta_uu B
    double y;   // lambda != 0 only
    double tn;  // tan y
    double sc2; // sec^2 y
  };
  Phase phase(double t) const;

  Mat3 frame_off_n(const Sym3& th, const Phase& p) const;
  Sym3 metric_off_n(const Sym3& th, const Phase& p) const;

  CauchyPair pair_;
  LapseProfile profile_;
  ThetaInvariants inv_;
  FlowBranch branch_;
  Lifespan lifespan_;
  NonQDCoefficients nqd_;
  EigenData2 eig_;  // of theta2 / theta_uu, or theta2 in the limit branch
};

std::string to_string(FlowBranch b);

NonQDCoefficients nonqd_coefficients(const CauchyPair& pair);
Sym3 theta_exact(const CauchyPair& pair, const LapseProfile& profile, double t);
Mat3 frame_exact(const CauchyPair& pair, const LapseProfile& profile, double t);
Sym3 metric_exact(const CauchyPair& pair, const LapseProfile& profile, double t);
double hamiltonian_exact(const CauchyPair& pair, double h0, const LapseProfile& profile, double t);
Lifespan lifespan(const CauchyPair& pair, const LapseProfile& profile);
Vec3 eta_oneform(const CauchyPair& pair, const LapseProfile& profile, double t);

}  // namespace spinorflow
