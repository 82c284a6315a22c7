#include "spinorflow/flow_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinorflow/flow_exact.hpp"

namespace spinorflow {

FlowRates ode_rhs(const Sym3& th, const Mat3& frame, double beta) {
  FlowRates r;
  r.theta = beta * Sym3(th.uu() * th.uu() + th.ul() * th.ul() + th.un() * th.un(), 0.0, 0.0,
                        th.ll() * th.uu() - th.ul() * th.ul(),
                        th.ln() * th.uu() - th.ul() * th.un(),
                        th.nn() * th.uu() - th.un() * th.un());
  r.frame = (-beta) * (th.to_matrix() * frame);
  return r;
}

void complete_state(FlowState& s, const StructureConstants3& c0) {
  s.metric = Sym3::from_matrix(transpose(s.frame) * s.frame);
  s.hamiltonian = hamiltonian_function(pushforward(c0, s.frame), s.theta);
}

double ResidualReport::max() const {
  return std::max({frame_evolution, structure, transport, closedness});
}

ResidualReport flow_residuals(const FlowState& state, const CauchyPair& pair, double beta,
                              const Mat3* frame_rate) {
  ResidualReport r;
  const FlowRates rates = ode_rhs(state, beta);
  const Mat3 th = state.theta.to_matrix();
  const Mat3& u = state.frame;

  const Mat3 udot = frame_rate != nullptr ? *frame_rate : rates.frame;
  r.frame_evolution = max_abs(udot + beta * (th * u));

  // d e^t_a on the reference coframe, as coefficients of e_c ^ e_d.
  const Mat3 th0 = pair.theta.to_matrix();
  const Mat3 lhs = u * th0;  // U_ab theta_bc, paired with e_c ^ e_u
  const Mat3 tu = th * u;    // theta^t_ab U_bc
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t d = c + 1; d < 3; ++d) {
        const double ref = lhs(a, c) * (d == kU ? 1.0 : 0.0) - lhs(a, d) * (c == kU ? 1.0 : 0.0);
        const double evolved = tu(a, c) * u(kU, d) - tu(a, d) * u(kU, c);
        r.structure = std::max(r.structure, std::abs(ref - evolved));
      }

  // d/dt (theta^t_ua U_ab) = thetadot_ua U_ab - beta (theta theta U)_ub
  const Mat3 ttu = th * tu;
  const Mat3 tdot_u = rates.theta.to_matrix() * u;
  for (std::size_t b = 0; b < 3; ++b)
    r.transport = std::max(r.transport, std::abs(tdot_u(kU, b) - beta * ttu(kU, b)));

  const Mat3 th2 = th * th;
  r.closedness = std::max(std::abs(th2(kU, kL)), std::abs(th2(kU, kN)));
  return r;
}

namespace {

struct Y {
  Sym3 th;
  Mat3 u;
};

Y axpy(const Y& y, double h, const FlowRates& k) { return {y.th + h * k.theta, y.u + h * k.frame}; }

Y rk4(const Y& y, double t, double h, const LapseProfile& profile) {
  const double b0 = profile.beta(t);
  const double bm = profile.beta(t + 0.5 * h);
  const double b1 = profile.beta(t + h);
  const FlowRates k1 = ode_rhs(y.th, y.u, b0);
  const FlowRates k2 = ode_rhs(y.th + (0.5 * h) * k1.theta, y.u + (0.5 * h) * k1.frame, bm);
  const FlowRates k3 = ode_rhs(y.th + (0.5 * h) * k2.theta, y.u + (0.5 * h) * k2.frame, bm);
  const FlowRates k4 = ode_rhs(y.th + h * k3.theta, y.u + h * k3.frame, b1);
  FlowRates sum;
  sum.theta = k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta;
  sum.frame = k1.frame + 2.0 * k2.frame + 2.0 * k3.frame + k4.frame;
  return axpy(y, h / 6.0, sum);
}

double diff(const Y& a, const Y& b) {
  return std::max((a.th - b.th).max_abs(), max_abs(a.u - b.u));
}

double size(const Y& y) { return std::max(y.th.max_abs(), max_abs(y.u)); }

bool overflowed(const Y& y, double guard) {
  for (double x : y.th.components())
    if (!std::isfinite(x) || std::abs(x) > guard) return true;
  for (double x : y.u.m)
    if (!std::isfinite(x) || std::abs(x) > guard) return true;
  return false;
}

class Driver {
 public:
  Driver(const CauchyPair& pair, const LapseProfile& profile, const StepOptions& opts, double h)
      : pair_(pair), profile_(profile), opts_(opts), h_(h), c0_(structure_constants(pair.theta)) {}

  // Advances y from t to target, calling rec(t, y, is_target) after accepted steps.
  // Returns false on overflow.
  template <typename Rec>
  bool advance(Y& y, double& t, double target, Rec&& rec) {
    const double span = target - t;
    if (span == 0.0) return true;
    const double dir = span > 0.0 ? 1.0 : -1.0;
    if (opts_.mode == StepMode::Fixed) {
      const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(span) / h_ - 1e-9)));
      const double t0 = t;
      const double hh = span / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        Y next = rk4(y, t, hh, profile_);
        if (overflowed(next, opts_.overflow_guard)) return false;
        y = next;
        t = (i + 1 == n) ? target : t0 + static_cast<double>(i + 1) * hh;
        if (++traj.accepted > opts_.max_steps) throw StepFailure("step budget exhausted");
        rec(t, y, i + 1 == n);
      }
      return true;
    }
    double h = dir * std::min(std::abs(h_adapt_ == 0.0 ? h_ : h_adapt_), std::abs(span));
    while (dir * (target - t) > 0.0) {
      const bool last = std::abs(h) >= std::abs(target - t);
      if (last) h = target - t;
      const Y big = rk4(y, t, h, profile_);
      const Y half = rk4(y, t, 0.5 * h, profile_);
      const Y two = rk4(half, t + 0.5 * h, 0.5 * h, profile_);
      const double err = diff(big, two) / 15.0;
      const double scale = opts_.tolerance * std::max(1.0, size(two));
      if (!std::isfinite(err) || overflowed(two, opts_.overflow_guard)) {
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) return false;
        h *= 0.25;
        ++traj.rejected;
        continue;
      }
      if (err <= scale) {
        y = two;
        t = last ? target : t + h;
        if (++traj.accepted > opts_.max_steps) throw StepFailure("step budget exhausted");
        rec(t, y, last);
        const double grow = err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(scale / err, 0.2), 0.2, 4.0);
        if (!last) h *= grow;
        h_adapt_ = h;
      } else {
        ++traj.rejected;
        h *= std::clamp(0.9 * std::pow(scale / err, 0.2), 0.1, 0.9);
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
          throw StepFailure("adaptive step underflow near t=" + std::to_string(t));
      }
    }
    return true;
  }

  void record(double t, const Y& y) {
    FlowState s;
    s.t = t;
    s.theta = y.th;
    s.frame = y.u;
    complete_state(s, c0_);
    traj.max_residual = std::max(traj.max_residual, flow_residuals(s, pair_, profile_.beta(t)).max());
    traj.states.push_back(s);
  }

  Trajectory traj;

 private:
  const CauchyPair& pair_;
  const LapseProfile& profile_;
  StepOptions opts_;
  double h_;
  double h_adapt_ = 0.0;
  StructureConstants3 c0_;
};

double default_step(const CauchyPair& pair, const LapseProfile& profile, double t_end) {
  const Lifespan ls = ExactFlow(pair, profile).lifespan();
  if (ls.t_minus && ls.t_plus && std::isfinite(*ls.t_minus) && std::isfinite(*ls.t_plus))
    return (*ls.t_plus - *ls.t_minus) / 1e4;
  return std::max(std::abs(t_end), 1e-300) / 1e4;
}

}  // namespace

Trajectory integrate(const CauchyPair& pair, const LapseProfile& profile, double t_end,
                     const StepOptions& opts) {
  validate(pair);
  const double h = opts.step > 0.0 ? opts.step : default_step(pair, profile, t_end);
  Driver drv(pair, profile, opts, h);
  Y y{pair.theta, Mat3::identity()};
  double t = 0.0;
  drv.record(0.0, y);
  std::size_t count = 0;
  const std::size_t stride = std::max<std::size_t>(1, opts.record_stride);
  const bool ok = drv.advance(y, t, t_end, [&](double tt, const Y& yy, bool last) {
    if (++count % stride == 0 || last) drv.record(tt, yy);
  });
  if (!ok) {
    drv.traj.truncated = true;
    if (drv.traj.states.back().t != t) drv.record(t, y);
  }
  if (t_end < 0.0) std::reverse(drv.traj.states.begin(), drv.traj.states.end());
  return std::move(drv.traj);
}

Trajectory sample(const CauchyPair& pair, const LapseProfile& profile, std::vector<double> times,
                  const StepOptions& opts) {
  validate(pair);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  Trajectory out;
  if (times.empty()) return out;
  const double reach = std::max(std::abs(times.front()), std::abs(times.back()));
  const double h = opts.step > 0.0 ? opts.step : default_step(pair, profile, reach);

  std::vector<FlowState> backward;
  std::vector<FlowState> forward;
  for (int dir : {-1, 1}) {
    Driver drv(pair, profile, opts, h);
    Y y{pair.theta, Mat3::identity()};
    double t = 0.0;
    std::vector<double> targets;
    for (double x : times)
      if ((dir < 0 && x < 0.0) || (dir > 0 && x >= 0.0)) targets.push_back(x);
    if (dir < 0) std::reverse(targets.begin(), targets.end());
    for (double target : targets) {
      if (target == 0.0) {
        drv.record(0.0, y);
        continue;
      }
      if (!drv.advance(y, t, target, [](double, const Y&, bool) {})) {
        out.truncated = true;
        break;
      }
      drv.record(target, y);
    }
    out.accepted += drv.traj.accepted;
    out.rejected += drv.traj.rejected;
    out.max_residual = std::max(out.max_residual, drv.traj.max_residual);
    (dir < 0 ? backward : forward) = std::move(drv.traj.states);
  }
  std::reverse(backward.begin(), backward.end());
  out.states = std::move(backward);
  out.states.insert(out.states.end(), forward.begin(), forward.end());
  return out;
}

}  // namespace spinorflow
