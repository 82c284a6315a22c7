#pragma once

// Left-invariant parallel Cauchy pairs: a shape operator written in a fixed
// orthonormal coframe (e_u, e_l, e_n) of a three-dimensional Lie algebra.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spinorflow/errors.hpp"
#include "spinorflow/tensor_algebra.hpp"
#include "spinorflow/types.hpp"

namespace spinorflow {

inline constexpr double kDefaultTolerance = 1e-9;

struct CauchyPair {
  Sym3 theta;
};

struct ThetaInvariants {
  double lambda = 0.0;  ///< sqrt(theta_ul^2 + theta_un^2)
  Sym2 theta2;          ///< lower block (ll, ln; ln, nn)
  double trace = 0.0;   ///< T = tr theta2
  double delta = 0.0;   ///< det theta2
};

enum class GroupTag { R3, E11, Tau2PlusR, Tau3Mu };

struct GroupType {
  GroupTag tag = GroupTag::R3;
  std::optional<double> mu;  ///< only for Tau3Mu, 0 < |mu| <= 1
};

/// Component patterns of admissible shape operators, in matching order.
enum class TableRow {
  R3,                 ///< theta_uu only
  E11,                ///< lambda = 0, T = 0, theta2 != 0
  Tau2OffDiagonal,    ///< only ul, un nonzero
  Tau2QuasiDiagonal,  ///< lambda = 0, T != 0, Delta = 0
  Tau2UlLl,           ///< uu = -ll, ul and ll nonzero
  Tau2UnNn,           ///< uu = -nn, un and nn nonzero
  Tau2Mixed,          ///< ln ul un != 0, uu = -T
  Tau3Mu,             ///< lambda = 0, T != 0, Delta != 0
};

struct ValidationReport {
  bool valid = false;
  std::vector<std::string> violated;
  std::optional<TableRow> row;
};

struct ConstraintReport {
  double hamiltonian = 0.0;
  Vec3 momentum_residual{};
  double scalar_curvature = 0.0;
  bool is_vacuum_admissible = false;
};

ThetaInvariants invariants(const CauchyPair& pair);

/// Left-hand sides of the four algebraic relations, each written as lhs - rhs.
std::array<double, 4> algebraic_residuals(const Sym3& theta);

/// Non-throwing validation.
ValidationReport check(const CauchyPair& pair, double tol = kDefaultTolerance);

/// Throws InvalidPair listing the violated relations.
ValidationReport validate(const CauchyPair& pair, double tol = kDefaultTolerance);

GroupType classify(const CauchyPair& pair, double tol = kDefaultTolerance);

StructureConstants3 structure_constants(const CauchyPair& pair);

/// R - |theta|^2 + (tr theta)^2 for a shape operator with constant
/// components in the orthonormal frame whose brackets are c.
double hamiltonian_function(const StructureConstants3& c, const Sym3& theta);

/// div theta - d tr theta; the second term vanishes for constant components.
Vec3 momentum_residual(const StructureConstants3& c, const Sym3& theta);

ConstraintReport constraints(const CauchyPair& pair, double tol = kDefaultTolerance);

bool is_constrained_ricci_flat(const CauchyPair& pair, double tol = kDefaultTolerance);

std::string to_string(GroupTag tag);
std::string to_string(TableRow row);

}  // namespace spinorflow
