#pragma once

// Runge-Kutta integration of the integrability equations for the shape
// operator together with the coframe evolution dU/dt = -beta theta U.

#include <cstddef>
#include <vector>

#include "spinorflow/cauchy_pair.hpp"
#include "spinorflow/lapse.hpp"
#include "spinorflow/types.hpp"

namespace spinorflow {

struct FlowState {
  double t = 0.0;
  Sym3 theta;
  Mat3 frame = Mat3::identity();
  Sym3 metric{1.0, 0.0, 0.0, 1.0, 0.0, 1.0};
  double hamiltonian = 0.0;
};

struct FlowRates {
  Sym3 theta;
  Mat3 frame;
};

FlowRates ode_rhs(const Sym3& theta, const Mat3& frame, double beta);
inline FlowRates ode_rhs(const FlowState& s, double beta) { return ode_rhs(s.theta, s.frame, beta); }

/// Fill metric = U^T U and the Hamiltonian recomputed from the curvature of
/// the evolved frame, whose brackets are those of `c0` pushed forward by U.
void complete_state(FlowState& s, const StructureConstants3& c0);

enum class StepMode { Fixed, Adaptive };

struct StepOptions {
  StepMode mode = StepMode::Fixed;
  double step = 0.0;  ///< 0 selects lifespan width / 1e4, or |t_end| / 1e4
  double tolerance = 1e-10;
  double overflow_guard = 1e12;
  std::size_t record_stride = 1;
  std::size_t max_steps = 100'000'000;
};

struct Trajectory {
  std::vector<FlowState> states;  ///< increasing t
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_residual = 0.0;
  bool truncated = false;
};

/// Integrates from t = 0 to t_end (either sign). Throws InvalidPair, StepFailure.
Trajectory integrate(const CauchyPair& pair, const LapseProfile& profile, double t_end,
                     const StepOptions& opts = {});

/// States at the requested times; the integrator steps exactly onto each one.
Trajectory sample(const CauchyPair& pair, const LapseProfile& profile, std::vector<double> times,
                  const StepOptions& opts = {});

struct ResidualReport {
  double frame_evolution = 0.0;  ///< |dU/dt + beta theta U|
  double structure = 0.0;        ///< d e^t = theta_t(e^t) ^ e^t_u
  double transport = 0.0;        ///< d/dt theta_t(e^t_u)
  double closedness = 0.0;       ///< d theta_t(e^t_u)

  double max() const;
};

/// `frame_rate` overrides the dU/dt taken from ode_rhs.
ResidualReport flow_residuals(const FlowState& state, const CauchyPair& pair, double beta,
                              const Mat3* frame_rate = nullptr);

}  // namespace spinorflow
