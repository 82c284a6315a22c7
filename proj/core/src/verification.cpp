#include "spinorflow/verification.hpp"

#include <algorithm>
#include <cmath>

#include "spinorflow/flow_numeric.hpp"
#include "spinorflow/lorentz4d.hpp"

namespace spinorflow {

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "all") return Suite::All;
  if (name == "constraints") return Suite::Constraints;
  if (name == "ricci4") return Suite::Ricci4;
  if (name == "ricciflow") return Suite::RicciFlow;
  if (name == "cosymplectic") return Suite::Cosymplectic;
  if (name == "oracle") return Suite::Oracle;
  return std::nullopt;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::All: return "all";
    case Suite::Constraints: return "constraints";
    case Suite::Ricci4: return "ricci4";
    case Suite::RicciFlow: return "ricciflow";
    case Suite::Cosymplectic: return "cosymplectic";
    case Suite::Oracle: return "oracle";
  }
  return "?";
}

bool SuiteResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed(); });
}

std::pair<double, double> sample_window(const Lifespan& ls, const LapseProfile& profile) {
  const auto [da, db] = profile.domain();
  // Unknown bounds fall back to the lapse table.
  double lo = ls.t_minus ? *ls.t_minus : da;
  double hi = ls.t_plus ? *ls.t_plus : db;
  const bool flo = std::isfinite(lo);
  const bool fhi = std::isfinite(hi);
  std::pair<double, double> w{-2.0, 2.0};
  if (flo && fhi) {
    const double m = 0.05 * (hi - lo);
    w = {lo + m, hi - m};
  } else if (fhi) {
    w = {-0.9 * hi, 0.9 * hi};
  } else if (flo) {
    w = {0.9 * lo, -0.9 * lo};
  }
  if (profile.kind() == LapseProfile::Kind::Tabulated) {
    w.first = std::max(w.first, da);
    w.second = std::min(w.second, db);
  }
  return w;
}

std::vector<double> sample_times(std::pair<double, double> w, std::size_t n) {
  std::vector<double> t;
  if (n == 0) return t;
  if (n == 1) return {0.5 * (w.first + w.second)};
  for (std::size_t i = 0; i < n; ++i)
    t.push_back(w.first + (w.second - w.first) * static_cast<double>(i) / static_cast<double>(n - 1));
  return t;
}

CurvatureSnapshot curvature_at(const ExactFlow& flow, double t) {
  CurvatureSnapshot s;
  s.c = pushforward(structure_constants(flow.pair().theta), flow.frame(t));
  s.theta = flow.theta(t);
  const RicciResult r = ricci3(s.c);
  s.ricci = r.ricci;
  s.scalar = r.scalar;
  const double tr = s.theta.trace();
  s.hamiltonian = s.scalar - s.theta.norm_squared() + tr * tr;
  s.momentum = momentum_residual(s.c, s.theta);
  return s;
}

double hamiltonian_evolution_residual(const ExactFlow& flow, double h0, double t) {
  return std::abs(curvature_at(flow, t).hamiltonian - flow.hamiltonian(t, h0));
}

double momentum_codazzi_residual(const ExactFlow& flow, double t) {
  const CurvatureSnapshot s = curvature_at(flow, t);
  return std::max({std::abs(s.momentum[kU] + 0.5 * s.hamiltonian), std::abs(s.momentum[kL]),
                   std::abs(s.momentum[kN])});
}

double quasi_diagonal_ricci_residual(const ExactFlow& flow, double t) {
  const CurvatureSnapshot s = curvature_at(flow, t);
  const double T = s.theta.ll() + s.theta.nn();
  Sym3 expected = (-T) * s.theta;
  expected.set(kU, kU, expected.uu() + 0.5 * s.hamiltonian);
  return (s.ricci - expected).max_abs();
}

double eta_einstein_residual(const ExactFlow& flow, double t) {
  const CurvatureSnapshot s = curvature_at(flow, t);
  const Vec3 eta = flow.eta_frame();
  double r = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const double expected = 0.25 * s.hamiltonian * ((a == b ? 1.0 : 0.0) - eta[a] * eta[b]);
      r = std::max(r, std::abs(s.ricci(a, b) - expected));
    }
  return r;
}

double eta_parallel_residual(const ExactFlow& flow, double t) {
  const CurvatureSnapshot s = curvature_at(flow, t);
  return max_abs(covariant_derivative(levi_civita(s.c), flow.eta_frame()));
}

namespace {

Sym3 metric_rate(const ExactFlow& flow, double t, double h) {
  return (0.5 / h) * (flow.metric(t + h) - flow.metric(t - h));
}

}  // namespace

double ricci_flow_residual(const ExactFlow& flow, double t, double fd_step) {
  const CurvatureSnapshot s = curvature_at(flow, t);
  const Mat3 u = flow.frame(t);
  const Sym3 ric_ref = Sym3::from_matrix(transpose(u) * s.ricci.to_matrix() * u);
  const double T = s.theta.ll() + s.theta.nn();
  const double beta = flow.profile().beta(t);
  return (ric_ref - (T / (2.0 * beta)) * metric_rate(flow, t, fd_step)).max_abs();
}

double shape_operator_fd_residual(const ExactFlow& flow, double t, double fd_step) {
  const Mat3 u = flow.frame(t);
  const Sym3 th_ref = Sym3::from_matrix(transpose(u) * flow.theta(t).to_matrix() * u);
  const double beta = flow.profile().beta(t);
  return (th_ref + (0.5 / beta) * metric_rate(flow, t, fd_step)).max_abs() / std::max(1.0, th_ref.max_abs());
}

double metric_family_residual(const ExactFlow& flow, double t) {
  return (flow.metric(t) - flow.metric_family(t)).max_abs();
}

namespace {

template <typename F>
Assertion over_times(const std::string& name, double tol, const std::vector<double>& ts, F&& f) {
  Assertion a{name, 0.0, tol, true};
  for (double t : ts) a.max_residual = std::max(a.max_residual, f(t));
  return a;
}

Assertion skipped(const std::string& name, double tol) { return Assertion{name, 0.0, tol, false}; }

bool is_quasi_diagonal(const ExactFlow& f) {
  return f.branch() == FlowBranch::QuasiDiagonal || f.branch() == FlowBranch::QuasiDiagonalLimit;
}

SuiteResult constraints_suite(const ExactFlow& flow, const ConstraintReport& c0,
                              const std::vector<double>& ts) {
  SuiteResult r{Suite::Constraints, {}};
  const double h0 = c0.hamiltonian;
  r.assertions.push_back(over_times("hamiltonian_closed_form", 1e-8, ts, [&](double t) {
    return hamiltonian_evolution_residual(flow, h0, t);
  }));
  r.assertions.push_back(over_times("momentum_codazzi", 1e-8, ts, [&](double t) {
    return momentum_codazzi_residual(flow, t);
  }));
  if (c0.is_vacuum_admissible) {
    r.assertions.push_back(over_times("hamiltonian_preserved", 1e-9, ts, [&](double t) {
      return std::abs(curvature_at(flow, t).hamiltonian);
    }));
    r.assertions.push_back(over_times("momentum_preserved", 1e-9, ts, [&](double t) {
      return max_abs(curvature_at(flow, t).momentum);
    }));
  } else {
    r.assertions.push_back(skipped("hamiltonian_preserved", 1e-9));
    r.assertions.push_back(skipped("momentum_preserved", 1e-9));
  }
  return r;
}

SuiteResult ricci4_suite(const ExactFlow& flow, const ConstraintReport& c0,
                         const std::vector<double>& ts) {
  SuiteResult r{Suite::Ricci4, {}};
  const CauchyPair& p = flow.pair();
  const LapseProfile& lp = flow.profile();
  r.assertions.push_back(over_times("ricci4_identity", 1e-6, ts, [&](double t) {
    return verify_ricci_identity(p, lp, t);
  }));
  if (c0.is_vacuum_admissible) {
    r.assertions.push_back(over_times("ricci4_flat", 1e-8, ts, [&](double t) {
      const Ricci4 ric = ricci4(coframe4_from_theta(t, flow.theta(t), lp.beta(t)));
      double m = 0.0;
      for (const auto& row : ric)
        for (double x : row) m = std::max(m, std::abs(x));
      return m;
    }));
  } else {
    r.assertions.push_back(skipped("ricci4_flat", 1e-8));
  }
  r.assertions.push_back(over_times("dirac_current_null", 0.0, ts, [&](double t) {
    return std::abs(dirac_current_frame(p, lp, t).null_norm);
  }));
  r.assertions.push_back(over_times("log_scale_closed", 1e-12, ts, [&](double t) {
    const double s = flow.theta(t).max_abs();
    return dirac_current_frame(p, lp, t).closedness / std::max(1.0, s * s);
  }));
  return r;
}

SuiteResult ricciflow_suite(const ExactFlow& flow, const ConstraintReport& c0,
                            const std::vector<double>& ts) {
  SuiteResult r{Suite::RicciFlow, {}};
  if (!is_quasi_diagonal(flow)) {
    r.assertions.push_back(skipped("quasi_diagonal_ricci", 1e-8));
    r.assertions.push_back(skipped("ricci_flow_property", 1e-6));
    return r;
  }
  r.assertions.push_back(over_times("quasi_diagonal_ricci", 1e-8, ts, [&](double t) {
    return quasi_diagonal_ricci_residual(flow, t);
  }));
  if (c0.is_vacuum_admissible) {
    r.assertions.push_back(over_times("ricci_flow_property", 1e-6, ts, [&](double t) {
      return ricci_flow_residual(flow, t);
    }));
  } else {
    r.assertions.push_back(skipped("ricci_flow_property", 1e-6));
  }
  return r;
}

SuiteResult cosymplectic_suite(const ExactFlow& flow, const std::vector<double>& ts) {
  SuiteResult r{Suite::Cosymplectic, {}};
  if (is_quasi_diagonal(flow)) {
    r.assertions.push_back(skipped("eta_unit", 1e-12));
    r.assertions.push_back(skipped("eta_parallel", 1e-10));
    r.assertions.push_back(skipped("eta_einstein", 1e-8));
    return r;
  }
  r.assertions.push_back(over_times("eta_unit", 1e-12, ts, [&](double t) {
    // |eta|_h with h^-1 = U^-1 U^-T
    const Vec3 e = flow.eta(t);
    const Mat3 v = inverse(flow.frame(t));
    const Vec3 w = transpose(v) * e;
    return std::abs(std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) - 1.0);
  }));
  r.assertions.push_back(over_times("eta_parallel", 1e-10, ts, [&](double t) {
    return eta_parallel_residual(flow, t);
  }));
  r.assertions.push_back(over_times("eta_einstein", 1e-8, ts, [&](double t) {
    return eta_einstein_residual(flow, t);
  }));
  return r;
}

SuiteResult oracle_suite(const ExactFlow& flow, const std::vector<double>& ts,
                         std::pair<double, double> window, const VerifyOptions& opts) {
  SuiteResult r{Suite::Oracle, {}};
  const CauchyPair& p = flow.pair();
  StepOptions so;
  so.step = opts.rk4_step;
  Assertion th{"theta_rk4", 0.0, 1e-8, true};
  Assertion fr{"frame_rk4", 0.0, 1e-8, true};
  Assertion motion{"integrals_of_motion", 0.0, 1e-12, true};
  Assertion alg{"algebraic_relations", 0.0, 1e-8, true};
  Assertion det{"frame_determinant_positive", 0.0, 0.0, true};
  Assertion res{"flow_residuals", 0.0, 1e-8, true};
  for (double end : {window.first, window.second}) {
    if (end == 0.0) continue;
    const Trajectory traj = integrate(p, flow.profile(), end, so);
    if (traj.truncated) th.max_residual = std::max(th.max_residual, 1.0);
    res.max_residual = std::max(res.max_residual, traj.max_residual);
    for (const FlowState& s : traj.states) {
      th.max_residual = std::max(th.max_residual, (s.theta - flow.theta(s.t)).max_abs());
      fr.max_residual = std::max(fr.max_residual, max_abs(s.frame - flow.frame(s.t)));
      motion.max_residual = std::max({motion.max_residual, std::abs(s.theta.ul() - p.theta.ul()),
                                      std::abs(s.theta.un() - p.theta.un())});
      for (double x : algebraic_residuals(s.theta)) alg.max_residual = std::max(alg.max_residual, std::abs(x));
      if (!(determinant(s.frame) > 0.0)) det.max_residual = 1.0;
    }
  }
  r.assertions.push_back(th);
  r.assertions.push_back(fr);
  r.assertions.push_back(over_times("metric_family", 1e-10, ts, [&](double t) {
    return metric_family_residual(flow, t);
  }));
  r.assertions.push_back(over_times("shape_operator_fd", 1e-6, ts, [&](double t) {
    return shape_operator_fd_residual(flow, t);
  }));
  r.assertions.push_back(motion);
  r.assertions.push_back(alg);
  r.assertions.push_back(det);
  r.assertions.push_back(res);
  return r;
}

}  // namespace

std::vector<SuiteResult> run_suite(const CauchyPair& pair, const LapseProfile& profile, Suite suite,
                                   const VerifyOptions& opts) {
  const ExactFlow flow(pair, profile, opts.tol);
  const ConstraintReport c0 = constraints(pair, opts.tol);
  const auto window = opts.window ? *opts.window : sample_window(flow.lifespan(), profile);
  const auto ts = sample_times(window, opts.samples);

  std::vector<SuiteResult> out;
  auto want = [&](Suite s) { return suite == Suite::All || suite == s; };
  if (want(Suite::Constraints)) out.push_back(constraints_suite(flow, c0, ts));
  if (want(Suite::Ricci4)) out.push_back(ricci4_suite(flow, c0, ts));
  if (want(Suite::RicciFlow)) out.push_back(ricciflow_suite(flow, c0, ts));
  if (want(Suite::Cosymplectic)) out.push_back(cosymplectic_suite(flow, ts));
  if (want(Suite::Oracle)) out.push_back(oracle_suite(flow, ts, window, opts));
  return out;
}

}  // namespace spinorflow
