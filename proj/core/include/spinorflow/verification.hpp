#pragma once

// Residuals of the identities satisfied by exact flows, grouped in suites.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinorflow/cauchy_pair.hpp"
#include "spinorflow/flow_exact.hpp"
#include "spinorflow/lapse.hpp"

namespace spinorflow {

enum class Suite { All, Constraints, Ricci4, RicciFlow, Cosymplectic, Oracle };

std::optional<Suite> parse_suite(const std::string& name);
std::string to_string(Suite s);

struct Assertion {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool applicable = true;

  bool passed() const { return !applicable || max_residual <= tolerance; }
};

struct SuiteResult {
  Suite suite = Suite::All;
  std::vector<Assertion> assertions;

  bool passed() const;
};

struct VerifyOptions {
  std::size_t samples = 50;
  double tol = kDefaultTolerance;  ///< pair validation and branch tests
  double rk4_step = 1e-4;
  /// Overrides the default window derived from the lifespan.
  std::optional<std::pair<double, double>> window;
};

/// Middle 90% of a finite lifespan. A half-infinite lifespan (-inf, t+)
/// uses [-0.9 t+, 0.9 t+] (mirrored for (t-, inf)); an immortal flow uses
/// [-2, 2]. Unknown bounds fall back to the tabulated lapse domain.
std::pair<double, double> sample_window(const Lifespan& ls, const LapseProfile& profile);

/// n equally spaced points including both ends.
std::vector<double> sample_times(std::pair<double, double> window, std::size_t n);

std::vector<SuiteResult> run_suite(const CauchyPair& pair, const LapseProfile& profile, Suite suite,
                                   const VerifyOptions& opts = {});

// Pointwise identity residuals on an exact flow.

struct CurvatureSnapshot {
  StructureConstants3 c;  ///< brackets of the evolved frame
  Sym3 theta;             ///< evolved frame components
  Sym3 ricci;             ///< evolved frame components
  double scalar = 0.0;
  double hamiltonian = 0.0;  ///< recomputed
  Vec3 momentum{};           ///< div theta_t - d tr theta_t, evolved frame
};

CurvatureSnapshot curvature_at(const ExactFlow& flow, double t);

/// |H_t recomputed - closed form|
double hamiltonian_evolution_residual(const ExactFlow& flow, double h0, double t);
/// |momentum + (H_t/2) e_u|, the spatial part of the four-dimensional identity.
double momentum_codazzi_residual(const ExactFlow& flow, double t);
/// Quasi-diagonal branch: |Ric - (-T^t theta_t + (H_t/2) e_u (x) e_u)|
double quasi_diagonal_ricci_residual(const ExactFlow& flow, double t);
/// lambda != 0: |Ric - (H_t/4)(h - eta (x) eta)|, frame components.
double eta_einstein_residual(const ExactFlow& flow, double t);
/// lambda != 0: max |nabla eta_t|.
double eta_parallel_residual(const ExactFlow& flow, double t);
/// |Ric_ref - (T^t / 2 beta) dh/dt| in the reference basis, central differences.
double ricci_flow_residual(const ExactFlow& flow, double t, double fd_step = 1e-5);
/// |U^T theta_t U + (1/2 beta) dh/dt| / max(1, |U^T theta_t U|), central differences.
double shape_operator_fd_residual(const ExactFlow& flow, double t, double fd_step = 1e-5);
/// |U^T U - closed-form metric family|
double metric_family_residual(const ExactFlow& flow, double t);

}  // namespace spinorflow
