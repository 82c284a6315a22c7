#include "spinorflow/cauchy_pair.hpp"

#include <cmath>

namespace spinorflow {

namespace {

// Relative zero tests. Linear quantities scale like |theta|, products like |theta|^2.
struct ZeroTest {
  double lin;
  double quad;

  ZeroTest(const Sym3& theta, double tol) {
    const double s = theta.max_abs();
    lin = tol * s;
    quad = tol * s * s;
  }
  bool zero(double x) const { return std::abs(x) <= lin; }
  bool zero2(double x) const { return std::abs(x) <= quad; }
};

const char* kRelationNames[4] = {
    "ln*ul = ll*un",
    "nn*ul = ln*un",
    "ln*un + ul*(ll + uu) = 0",
    "ln*ul + un*(nn + uu) = 0",
};

std::optional<TableRow> match_row(const Sym3& th, const ZeroTest& z) {
  const double T = th.ll() + th.nn();
  const double delta = th.ll() * th.nn() - th.ln() * th.ln();
  const bool ul0 = z.zero(th.ul());
  const bool un0 = z.zero(th.un());
  const bool ll0 = z.zero(th.ll());
  const bool ln0 = z.zero(th.ln());
  const bool nn0 = z.zero(th.nn());
  const bool lambda0 = ul0 && un0;
  const bool theta2_0 = ll0 && ln0 && nn0;

  if (lambda0 && theta2_0) return TableRow::R3;
  if (lambda0 && z.zero(T)) return TableRow::E11;
  if (!lambda0 && theta2_0 && z.zero(th.uu())) return TableRow::Tau2OffDiagonal;
  if (lambda0 && z.zero2(delta)) return TableRow::Tau2QuasiDiagonal;
  if (!ul0 && !ll0 && un0 && ln0 && nn0 && z.zero(th.uu() + th.ll())) return TableRow::Tau2UlLl;
  if (!un0 && !nn0 && ul0 && ln0 && ll0 && z.zero(th.uu() + th.nn())) return TableRow::Tau2UnNn;
  if (!ln0 && !ul0 && !un0 && z.zero2(th.nn() * th.ul() - th.un() * th.ln()) &&
      z.zero2(th.ll() * th.un() - th.ul() * th.ln()) && z.zero(th.uu() + T)) {
    return TableRow::Tau2Mixed;
  }
  if (lambda0) return TableRow::Tau3Mu;
  return std::nullopt;
}

}  // namespace

ThetaInvariants invariants(const CauchyPair& pair) {
  const Sym3& th = pair.theta;
  ThetaInvariants inv;
  inv.lambda = std::hypot(th.ul(), th.un());
  inv.theta2 = Sym2{th.ll(), th.ln(), th.nn()};
  inv.trace = inv.theta2.trace();
  inv.delta = inv.theta2.determinant();
  return inv;
}

std::array<double, 4> algebraic_residuals(const Sym3& th) {
  return {
      th.ln() * th.ul() - th.ll() * th.un(),
      th.nn() * th.ul() - th.ln() * th.un(),
      th.ln() * th.un() + th.ul() * (th.ll() + th.uu()),
      th.ln() * th.ul() + th.un() * (th.nn() + th.uu()),
  };
}

ValidationReport check(const CauchyPair& pair, double tol) {
  ValidationReport rep;
  const Sym3& th = pair.theta;
  for (double x : th.components()) {
    if (!std::isfinite(x)) {
      rep.violated.emplace_back("components must be finite");
      return rep;
    }
  }
  const ZeroTest z(th, tol);
  const auto res = algebraic_residuals(th);
  for (std::size_t i = 0; i < res.size(); ++i)
    if (!z.zero2(res[i])) rep.violated.emplace_back(kRelationNames[i]);

  const ThetaInvariants inv = invariants(pair);
  if (!z.zero(inv.lambda) && !z.zero2(inv.delta))
    rep.violated.emplace_back("lambda != 0 requires Delta = 0");

  if (rep.violated.empty()) {
    rep.row = match_row(th, z);
    if (!rep.row) rep.violated.emplace_back("no admissible component pattern");
  }
  rep.valid = rep.violated.empty();
  return rep;
}

ValidationReport validate(const CauchyPair& pair, double tol) {
  ValidationReport rep = check(pair, tol);
  if (!rep.valid) throw InvalidPair(rep.violated);
  return rep;
}

GroupType classify(const CauchyPair& pair, double tol) {
  validate(pair, tol);
  const ThetaInvariants inv = invariants(pair);
  const ZeroTest z(pair.theta, tol);
  const bool T0 = z.zero(inv.trace);
  const bool D0 = z.zero2(inv.delta);
  const bool L0 = z.zero(inv.lambda);

  if (!L0 && !D0) throw InvalidPair({"lambda != 0 requires Delta = 0"});
  if (T0 && D0 && L0) return {GroupTag::R3, std::nullopt};
  if (T0 && L0) return {GroupTag::E11, std::nullopt};
  if (D0) return {GroupTag::Tau2PlusR, std::nullopt};

  const Sym2& t2 = inv.theta2;
  double mu;
  if (!z.zero(t2.xy)) {
    const double sg = inv.trace > 0.0 ? 1.0 : -1.0;
    const double root = std::sqrt(std::max(0.0, inv.trace * inv.trace - 4.0 * inv.delta));
    mu = (inv.trace - sg * root) / (inv.trace + sg * root);
  } else if (std::abs(t2.xx) >= std::abs(t2.yy)) {
    mu = t2.yy / t2.xx;
  } else {
    mu = t2.xx / t2.yy;
  }
  if (!(mu != 0.0 && std::abs(mu) <= 1.0 + tol)) throw InvalidPair({"mu outside [-1, 1] \\ {0}"});
  return {GroupTag::Tau3Mu, std::min(1.0, std::max(-1.0, mu))};
}

StructureConstants3 structure_constants(const CauchyPair& pair) {
  return structure_constants(pair.theta);
}

double hamiltonian_function(const StructureConstants3& c, const Sym3& theta) {
  const double tr = theta.trace();
  return ricci3(c).scalar - theta.norm_squared() + tr * tr;
}

Vec3 momentum_residual(const StructureConstants3& c, const Sym3& theta) {
  return divergence_sym(c, theta);
}

ConstraintReport constraints(const CauchyPair& pair, double tol) {
  validate(pair, tol);
  const auto c = structure_constants(pair.theta);
  ConstraintReport rep;
  rep.scalar_curvature = ricci3(c).scalar;
  const double tr = pair.theta.trace();
  rep.hamiltonian = rep.scalar_curvature - pair.theta.norm_squared() + tr * tr;
  rep.momentum_residual = momentum_residual(c, pair.theta);

  const double s = pair.theta.max_abs();
  const double bound = tol * std::max(1.0, s * s);
  rep.is_vacuum_admissible =
      std::abs(rep.hamiltonian) <= bound && max_abs(rep.momentum_residual) <= bound;
  return rep;
}

bool is_constrained_ricci_flat(const CauchyPair& pair, double tol) {
  return constraints(pair, tol).is_vacuum_admissible;
}

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::R3: return "R3";
    case GroupTag::E11: return "E11";
    case GroupTag::Tau2PlusR: return "Tau2PlusR";
    case GroupTag::Tau3Mu: return "Tau3Mu";
  }
  return "?";
}

std::string to_string(TableRow row) {
  switch (row) {
    case TableRow::R3: return "R3";
    case TableRow::E11: return "E11";
    case TableRow::Tau2OffDiagonal: return "Tau2PlusR/off_diagonal";
    case TableRow::Tau2QuasiDiagonal: return "Tau2PlusR/quasi_diagonal";
    case TableRow::Tau2UlLl: return "Tau2PlusR/ul_ll";
    case TableRow::Tau2UnNn: return "Tau2PlusR/un_nn";
    case TableRow::Tau2Mixed: return "Tau2PlusR/mixed";
    case TableRow::Tau3Mu: return "Tau3Mu";
  }
  return "?";
}

}  // namespace spinorflow
