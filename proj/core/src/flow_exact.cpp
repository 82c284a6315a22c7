#include "spinorflow/flow_exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace spinorflow {

namespace {

constexpr double kGuard = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

Sym3 swap_ln(const Sym3& s) { return Sym3(s.uu(), s.un(), s.ul(), s.nn(), s.ln(), s.ll()); }

Mat3 swap_ln(const Mat3& m) {
  constexpr std::size_t p[3] = {kU, kN, kL};
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(p[i], p[j]);
  return r;
}

Sym3 with_lower_block(double uu, const Sym2& lower) { return Sym3(uu, 0.0, 0.0, lower.xx, lower.xy, lower.yy); }

}  // namespace

ExactFlow::ExactFlow(const CauchyPair& pair, LapseProfile profile, double tol)
    : pair_(pair), profile_(std::move(profile)) {
  validate(pair_, tol);
  inv_ = spinorflow::invariants(pair_);
  const Sym3& th = pair_.theta;
  const double eps = tol * th.max_abs();

  if (inv_.lambda <= eps) {
    if (std::abs(th.uu()) <= eps) {
      branch_ = FlowBranch::QuasiDiagonalLimit;
      eig_ = eigen2x2(inv_.theta2);
    } else {
      branch_ = FlowBranch::QuasiDiagonal;
      const double k = 1.0 / th.uu();
      eig_ = eigen2x2(Sym2{inv_.theta2.xx * k, inv_.theta2.xy * k, inv_.theta2.yy * k});
    }
  } else {
    if (std::abs(th.ul()) <= eps) branch_ = FlowBranch::OffDiagonalN;
    else if (std::abs(th.un()) <= eps) branch_ = FlowBranch::OffDiagonalL;
    else branch_ = FlowBranch::OffDiagonalBoth;

    const double lam = inv_.lambda;
    const double r = std::hypot(lam, th.uu());
    nqd_.y0 = std::atan(th.uu() / lam);
    nqd_.c_ll = (th.ll() * lam * lam + th.ul() * th.ul() * th.uu()) / (lam * r);
    nqd_.c_nn = (th.nn() * lam * lam + th.un() * th.un() * th.uu()) / (lam * r);
    nqd_.c_ln = (th.ln() * lam * lam + th.ul() * th.un() * th.uu()) / (lam * r);
  }

  // Lifespan
  auto bound = [&](double target) -> std::optional<double> {
    return profile_.time_at_integral(target);
  };
  const bool constant = profile_.kind() == LapseProfile::Kind::Constant;
  switch (branch_) {
    case FlowBranch::QuasiDiagonalLimit:
      lifespan_ = {-kInf, kInf, true, true};
      break;
    case FlowBranch::QuasiDiagonal: {
      const double target = 1.0 / th.uu();
      if (th.uu() > 0.0) lifespan_ = {-kInf, bound(target), false, std::nullopt};
      else lifespan_ = {bound(target), kInf, false, std::nullopt};
      if (constant || profile_.integral(profile_.domain().second) >= std::abs(target))
        lifespan_.forward_criterion_immortal = false;
      break;
    }
    default: {
      const double lam = inv_.lambda;
      const double half_pi = 0.5 * std::numbers::pi;
      lifespan_.t_plus = bound((half_pi - nqd_.y0) / lam);
      lifespan_.t_minus = bound((-half_pi - nqd_.y0) / lam);
      lifespan_.immortal = false;
      if (lifespan_.t_plus || lifespan_.t_minus) lifespan_.forward_criterion_immortal = false;
      break;
    }
  }
}

NonQDCoefficients ExactFlow::nonqd_coefficients() const {
  if (inv_.lambda == 0.0 || branch_ == FlowBranch::QuasiDiagonal ||
      branch_ == FlowBranch::QuasiDiagonalLimit)
    throw NotApplicable("non-quasi-diagonal coefficients need lambda != 0");
  return nqd_;
}

ExactFlow::Phase ExactFlow::phase(double t) const {
  Phase p{};
  p.B = profile_.integral(t);
  const Sym3& th = pair_.theta;
  switch (branch_) {
    case FlowBranch::QuasiDiagonalLimit:
      p.s = 1.0;
      break;
    case FlowBranch::QuasiDiagonal:
      p.s = 1.0 - th.uu() * p.B;
      if (p.s < kGuard) throw SingularTime(t, "1 - theta_uu B_t vanishes");
      break;
    default:
      p.s = 1.0 - th.uu() * p.B;
      p.y = inv_.lambda * p.B + nqd_.y0;
      if (0.5 * std::numbers::pi - std::abs(p.y) < kGuard) throw SingularTime(t, "|y_t| reaches pi/2");
      p.tn = std::tan(p.y);
      p.sc2 = 1.0 + p.tn * p.tn;
      break;
  }
  return p;
}

Sym3 ExactFlow::theta(double t) const {
  const Phase p = phase(t);
  const Sym3& th = pair_.theta;
  if (branch_ == FlowBranch::QuasiDiagonal || branch_ == FlowBranch::QuasiDiagonalLimit)
    return (1.0 / p.s) * th;
  const double lam = inv_.lambda;
  const double sec = std::sqrt(p.sc2);
  return Sym3(lam * p.tn, th.ul(), th.un(),
              nqd_.c_ll * sec - th.ul() * th.ul() / lam * p.tn,
              nqd_.c_ln * sec - th.ul() * th.un() / lam * p.tn,
              nqd_.c_nn * sec - th.un() * th.un() / lam * p.tn);
}

Mat3 ExactFlow::frame_off_n(const Sym3& th, const Phase& p) const {
  const double lam = inv_.lambda;
  Mat3 u;
  u(kU, kU) = p.s;
  u(kU, kN) = -th.un() * p.B;
  u(kL, kL) = 1.0;
  u(kN, kU) = th.uu() / th.un() - lam / th.un() * p.s * p.tn;
  u(kN, kN) = 1.0 + lam * p.B * p.tn;
  return u;
}

Mat3 ExactFlow::frame(double t) const {
  const Phase p = phase(t);
  const Sym3& th = pair_.theta;
  switch (branch_) {
    case FlowBranch::QuasiDiagonal: {
      const double L = std::log1p(-th.uu() * p.B);
      const Sym2 lower = spectral_apply(eig_, std::exp(eig_.rho_plus * L), std::exp(eig_.rho_minus * L));
      return with_lower_block(p.s, lower).to_matrix();
    }
    case FlowBranch::QuasiDiagonalLimit: {
      const Sym2 lower =
          spectral_apply(eig_, std::exp(-p.B * eig_.rho_plus), std::exp(-p.B * eig_.rho_minus));
      return with_lower_block(1.0, lower).to_matrix();
    }
    case FlowBranch::OffDiagonalN:
      return frame_off_n(th, p);
    case FlowBranch::OffDiagonalL:
      return swap_ln(frame_off_n(swap_ln(th), p));
    case FlowBranch::OffDiagonalBoth: {
      const double lam = inv_.lambda;
      const double k = (th.uu() / lam - p.s * p.tn) / lam;
      const double q = p.B * p.tn / lam;
      Mat3 u;
      u(kU, kU) = p.s;
      u(kU, kL) = -th.ul() * p.B;
      u(kU, kN) = -th.un() * p.B;
      u(kL, kU) = th.ul() * k;
      u(kL, kL) = 1.0 + th.ul() * th.ul() * q;
      u(kL, kN) = th.ul() * th.un() * q;
      u(kN, kU) = th.un() * k;
      u(kN, kL) = th.ul() * th.un() * q;
      u(kN, kN) = 1.0 + th.un() * th.un() * q;
      return u;
    }
  }
  return Mat3::identity();
}

Sym3 ExactFlow::metric(double t) const {
  const Mat3 u = frame(t);
  return Sym3::from_matrix(transpose(u) * u);
}

Sym3 ExactFlow::metric_off_n(const Sym3& th, const Phase& p) const {
  const double lam = inv_.lambda;
  const double uu = th.uu();
  const double un = th.un();
  const double h_uu = p.s * p.s * p.sc2 + uu * uu / (lam * lam) - 2.0 * uu / lam * p.s * p.tn;
  const double h_un = uu / un - un * p.B * p.sc2 * p.s - lam / un * p.tn * (1.0 - 2.0 * uu * p.B);
  const double h_nn = 1.0 + lam * lam * p.B * p.B * p.sc2 + 2.0 * p.B * lam * p.tn;
  return Sym3(h_uu, 0.0, h_un, 1.0, 0.0, h_nn);
}

Sym3 ExactFlow::metric_family(double t) const {
  const Phase p = phase(t);
  const Sym3& th = pair_.theta;
  switch (branch_) {
    case FlowBranch::QuasiDiagonal: {
      const double L = std::log1p(-th.uu() * p.B);
      const Sym2 lower =
          spectral_apply(eig_, std::exp(2.0 * eig_.rho_plus * L), std::exp(2.0 * eig_.rho_minus * L));
      return with_lower_block(p.s * p.s, lower);
    }
    case FlowBranch::QuasiDiagonalLimit: {
      const Sym2 lower = spectral_apply(eig_, std::exp(-2.0 * p.B * eig_.rho_plus),
                                        std::exp(-2.0 * p.B * eig_.rho_minus));
      return with_lower_block(1.0, lower);
    }
    case FlowBranch::OffDiagonalN:
      return metric_off_n(th, p);
    case FlowBranch::OffDiagonalL:
      return swap_ln(metric_off_n(swap_ln(th), p));
    case FlowBranch::OffDiagonalBoth: {
      const double lam = inv_.lambda;
      const double T = inv_.trace;
      const double B = p.B;
      const double one_tb = 1.0 + T * B;
      const double a = p.tn * one_tb + T / lam;
      const double h_uu = one_tb * one_tb + a * a;
      const double k = -(T / (lam * lam) + p.tn / lam * (1.0 + 2.0 * T * B) + B * one_tb * p.sc2);
      const double h_ll = 1.0 + th.ul() * th.ul() * B * (B * p.sc2 + 2.0 * p.tn / lam);
      const double h_nn = 1.0 + th.un() * th.un() * B * (B * p.sc2 + 2.0 * p.tn / lam);
      const double h_ln = th.ul() * th.un() * B * p.sc2 * (B + std::sin(2.0 * p.y) / lam);
      return Sym3(h_uu, k * th.ul(), k * th.un(), h_ll, h_ln, h_nn);
    }
  }
  return Sym3(1, 0, 0, 1, 0, 1);
}

double ExactFlow::hamiltonian(double t, double h0) const {
  const Phase p = phase(t);
  const Sym3& th = pair_.theta;
  switch (branch_) {
    case FlowBranch::QuasiDiagonal:
    case FlowBranch::QuasiDiagonalLimit:
      return h0 / (p.s * p.s);
    case FlowBranch::OffDiagonalN:
      return th.un() * th.un() * h0 / (th.uu() * th.uu() + th.un() * th.un()) * p.sc2;
    case FlowBranch::OffDiagonalL:
      return th.ul() * th.ul() * h0 / (th.uu() * th.uu() + th.ul() * th.ul()) * p.sc2;
    case FlowBranch::OffDiagonalBoth: {
      const double l2 = inv_.lambda * inv_.lambda;
      return l2 * h0 / (l2 + th.uu() * th.uu()) * p.sc2;
    }
  }
  return h0;
}

Vec3 ExactFlow::eta_frame() const {
  if (branch_ == FlowBranch::QuasiDiagonal || branch_ == FlowBranch::QuasiDiagonalLimit)
    throw NotApplicable("eta needs lambda != 0");
  const double lam = inv_.lambda;
  return {0.0, pair_.theta.un() / lam, -pair_.theta.ul() / lam};
}

Vec3 ExactFlow::eta(double t) const {
  const Vec3 ef = eta_frame();
  const Mat3 u = frame(t);
  Vec3 r{};
  for (std::size_t b = 0; b < 3; ++b) r[b] = ef[kL] * u(kL, b) + ef[kN] * u(kN, b);
  return r;
}

std::string to_string(FlowBranch b) {
  switch (b) {
    case FlowBranch::QuasiDiagonal: return "quasi_diagonal";
    case FlowBranch::QuasiDiagonalLimit: return "quasi_diagonal_limit";
    case FlowBranch::OffDiagonalN: return "off_diagonal_n";
    case FlowBranch::OffDiagonalL: return "off_diagonal_l";
    case FlowBranch::OffDiagonalBoth: return "off_diagonal_both";
  }
  return "?";
}

NonQDCoefficients nonqd_coefficients(const CauchyPair& pair) {
  return ExactFlow(pair, LapseProfile::constant(1.0)).nonqd_coefficients();
}

Sym3 theta_exact(const CauchyPair& pair, const LapseProfile& profile, double t) {
  return ExactFlow(pair, profile).theta(t);
}

Mat3 frame_exact(const CauchyPair& pair, const LapseProfile& profile, double t) {
  return ExactFlow(pair, profile).frame(t);
}

Sym3 metric_exact(const CauchyPair& pair, const LapseProfile& profile, double t) {
  return ExactFlow(pair, profile).metric(t);
}

double hamiltonian_exact(const CauchyPair& pair, double h0, const LapseProfile& profile, double t) {
  return ExactFlow(pair, profile).hamiltonian(t, h0);
}

Lifespan lifespan(const CauchyPair& pair, const LapseProfile& profile) {
  return ExactFlow(pair, profile).lifespan();
}

Vec3 eta_oneform(const CauchyPair& pair, const LapseProfile& profile, double t) {
  return ExactFlow(pair, profile).eta(t);
}

}  // namespace spinorflow
