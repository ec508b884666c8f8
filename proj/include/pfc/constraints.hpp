#pragma once

#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "pfc/mesh.hpp"

namespace pfc {

/// Algebraic elimination of hanging-node and Dirichlet constraints.
/// Full-size vectors relate to the reduced (master) ones by u = P u_m + g.
struct ConstraintSet {
  int n_full = 0;
  Eigen::SparseMatrix<double> P;  // n_full x n_master
  Eigen::VectorXd g;              // inhomogeneous part (Dirichlet values)
  std::vector<int> master_of;     // -1 for constrained dofs
  std::vector<char> is_dirichlet;

  int n_master() const { return static_cast<int>(P.cols()); }

  Eigen::VectorXd expand(const Eigen::VectorXd& um) const { return P * um + g; }
  Eigen::VectorXd reduce(const Eigen::VectorXd& full) const { return P.transpose() * full; }

  Eigen::SparseMatrix<double> reduce_matrix(const Eigen::SparseMatrix<double>& a) const {
    return P.transpose() * a * P;
  }
  /// Right-hand side for A (P um + g) = b projected to master space.
  Eigen::VectorXd reduce_rhs(const Eigen::SparseMatrix<double>& a,
                             const Eigen::VectorXd& b) const {
    return P.transpose() * (b - a * g);
  }
};

/// components = dofs per node (1 for scalar fields, 2 for displacements).
/// dirichlet maps full dof index -> prescribed value.
ConstraintSet make_constraints(int n_nodes, int components,
                               const std::vector<HangingConstraint>& hanging,
                               const std::map<int, double>& dirichlet);

}  // namespace pfc
