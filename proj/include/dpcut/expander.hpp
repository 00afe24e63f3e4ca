#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpcut/graph.hpp"
#include "dpcut/privacy.hpp"

namespace dpcut {

// Bicriteria constants of the sparse-cut oracle. Exact enumeration (n <= 20)
// achieves (1, 1); the spectral-sweep heuristic is assigned configured
// constants validated against the exact oracle on small graphs.
struct OracleConstants {
  double d_exp = 1.0;
  double d_size = 1.0;
};

OracleConstants oracle_constants(int n);

struct SparseCutResult {
  std::vector<int> subset;  // |S| <= n/2, sorted; empty when no cut qualifies
  double psi = 0.0;
  bool certified = false;  // true when produced by the exact oracle
};

struct SparseCutOptions {
  int restarts = 8;
  uint64_t seed = 0;
};

// Largest S with |S| <= |V\S| and w(S) <= psi |S|. Exact enumeration for
// n <= 20 (ties to the smallest bitmask); spectral sweep over second
// eigenvector orderings above that. Disconnected graphs always admit a
// zero-weight cut; the heuristic returns the largest balanced union of
// whole components in that case.
SparseCutResult most_balanced_sparse_cut(const WeightedGraph& g, double psi, const SparseCutOptions& opt = {});

// Psi(n) = 10 * dense_error_bound(n, 1, budget, lambda) * d_exp; the
// smallest threshold at which the DP wrapper's contract is claimed.
double psi_floor(int n, PrivacyBudget budget, double lambda, double d_exp, double bound_constant = 4.0);

struct DpSparseCutOptions {
  PrivacyBudget budget;
  double lambda = 1e-10;
  uint64_t seed = 0;
  bool noiseless = false;
  double bound_constant = 4.0;
  int restarts = 8;
  bool enforce_floor = true;
};

// Thm-4.2-style wrapper: synthesize densely, drop weights below psi/(10n),
// cap at psi*n, then run the non-private oracle at 0.8*psi. Refuses psi
// below psi_floor unless enforcement is disabled.
SparseCutResult dp_most_balanced_sparse_cut(const WeightedGraph& g, double psi, const DpSparseCutOptions& opt);

struct ScheduleParams {
  int levels = 0;                  // L
  double sigma_exp = 0.0;          // sigma
  std::vector<double> s_bar;       // s_bar[0..L-1], s_bar[0] = n/2 + 1
  std::vector<double> psi_levels;  // psi_i = psi * c_exp^(L-i+1)
  double c_exp = 0.0;
  double c_size = 0.0;
  double denominator = 0.0;  // L * c_size * n^sigma * ln n; depth cap and budget divisor
  PrivacyBudget per_call;    // (eps, delta) / denominator
  double lambda = 0.0;       // 1/n^10

  double s_bar_at(int level) const;  // 1-based; defined past L by the same recurrence
};

// c_exp = 0 / c_size = 0 pick the defaults 2*d_exp(n) and d_size(n).
ScheduleParams build_schedule(int n, double psi, PrivacyBudget budget, double c_exp = 0.0, double c_size = 0.0);

// The floor the recursion actually needs: psi_floor at the per-call budget.
double decomposition_psi_floor(int n, PrivacyBudget budget, double bound_constant = 4.0, double c_exp = 0.0,
                               double c_size = 0.0);

struct DecomposeOptions {
  PrivacyBudget budget;
  uint64_t seed = 0;
  bool noiseless = false;
  double bound_constant = 4.0;
  int restarts = 8;
  std::optional<double> c_exp_override;
  std::optional<double> c_size_override;
  bool enforce_floor = true;
};

struct Decomposition {
  std::vector<std::vector<int>> parts;  // disjoint cover of V, each sorted
  double inter_weight = 0.0;
  double psi = 0.0;
  BudgetLedger ledger;  // the single mechanism-level charge
  ScheduleParams schedule;

  // Diagnostics: the privacy proof charges one root-to-leaf path; the whole
  // tree total is kept for comparison.
  int calls = 0;
  int max_depth = 0;
  PrivacyBudget worst_path_total;
  PrivacyBudget whole_tree_total;
};

Decomposition expander_decompose(const WeightedGraph& g, double psi, const DecomposeOptions& opt);

std::string decomposition_to_json(const Decomposition& d);

}  // namespace dpcut
