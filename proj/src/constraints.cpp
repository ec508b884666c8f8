#include "pfc/constraints.hpp"

#include <stdexcept>

namespace pfc {

ConstraintSet make_constraints(int n_nodes, int components,
                               const std::vector<HangingConstraint>& hanging,
                               const std::map<int, double>& dirichlet) {
  ConstraintSet cs;
  cs.n_full = n_nodes * components;
  cs.master_of.assign(cs.n_full, 0);
  cs.is_dirichlet.assign(cs.n_full, 0);
  cs.g = Eigen::VectorXd::Zero(cs.n_full);

  std::vector<char> is_hanging(cs.n_full, 0);
  for (const auto& hc : hanging) {
    for (int c = 0; c < components; ++c) is_hanging[hc.node * components + c] = 1;
  }
  for (const auto& [dof, value] : dirichlet) {
    if (is_hanging[dof]) throw std::runtime_error("Dirichlet constraint on a hanging node");
    cs.is_dirichlet[dof] = 1;
    cs.g[dof] = value;
  }

  int n_master = 0;
  for (int i = 0; i < cs.n_full; ++i) {
    cs.master_of[i] = (is_hanging[i] || cs.is_dirichlet[i]) ? -1 : n_master++;
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(cs.n_full + hanging.size() * 2 * components);
  for (int i = 0; i < cs.n_full; ++i) {
    if (cs.master_of[i] >= 0) trips.emplace_back(i, cs.master_of[i], 1.0);
  }
  for (const auto& hc : hanging) {
    for (int c = 0; c < components; ++c) {
      const int dof = hc.node * components + c;
      for (int p = 0; p < 2; ++p) {
        const int pdof = hc.parents[p] * components + c;
        if (cs.is_dirichlet[pdof]) {
          cs.g[dof] += hc.weights[p] * cs.g[pdof];
        } else {
          if (cs.master_of[pdof] < 0) {
            throw std::runtime_error("chained hanging-node constraint");
          }
          trips.emplace_back(dof, cs.master_of[pdof], hc.weights[p]);
        }
      }
    }
  }
  cs.P.resize(cs.n_full, n_master);
  cs.P.setFromTriplets(trips.begin(), trips.end());
  return cs;
}

}  // namespace pfc
