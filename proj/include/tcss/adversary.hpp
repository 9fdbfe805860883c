#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tcss/netsim.hpp"

namespace tcss::adversary {

/// Channels an eavesdropper must crack to harvest t neighboring shares
/// through the k cheapest traversals: sum over rounds of
/// min(t + min(d_i, t), m). For m = 6 with k = 2 the count is taken on the
/// fixed traversals directly.
std::uint64_t l_spc(int t, int m, int k);

/// Same count evaluated structurally on explicit traversals: the cheapest
/// set of channels touching t consecutive positions in every round.
std::uint64_t share_route_cost(const std::vector<std::vector<int>>& paths, int t, int m);

/// Minimum edge cover of the complete graph: ceil(m/2) channels reveal
/// every participant's component.
int min_rc_route(int m);

struct KChoice {
  bool reachable;       // some k pushes the share route to ceil(m/2)
  int k;                // chosen round count (max k when unreachable)
  std::uint64_t bound;  // l_spc at that k
};

/// Least k with l_spc(t,m,k) >= ceil(m/2), or the best the maximum round
/// count achieves.
KChoice choose_k(int t, int m);

struct Closure {
  bool secret_determined;
  std::optional<FieldElement> secret;
  std::vector<FieldElement> determined_share_ids;
};

/// Exact information oracle: everything a passive adversary can derive from
/// the messages on a cracked channel set is decided by Gaussian elimination
/// over F_p. Unknowns are the dealer coefficients, every per-round pick
/// w_j^i, and the closing value v0; the zero-sum protocol constraint is
/// public knowledge.
class KnowledgeSystem {
 public:
  KnowledgeSystem(const SessionParams& params, const Transcript& transcript);

  struct Workspace {
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<int> pivot_cols;
    std::vector<std::uint64_t> scratch;
  };

  int unknowns() const { return n_; }
  std::vector<std::uint64_t> secret_form() const;
  std::vector<std::uint64_t> share_form(int position) const;
  std::vector<std::uint64_t> w_form(int round, int position) const;

  void eliminate(std::span<const Edge> edges, Workspace& ws) const;
  /// Value the solution space forces on `form`, when it is determined.
  std::optional<std::uint64_t> value_of(std::span<const std::uint64_t> form, const Workspace& ws) const;

  bool determines_secret(std::span<const Edge> edges, Workspace& ws) const;
  Closure closure(const CrackSet& cracked) const;

 private:
  void add_row(std::span<const std::uint64_t> row, Workspace& ws) const;

  std::uint64_t p_;
  int t_, m_, k_, n_;
  std::vector<std::uint64_t> lagrange_;             // per position
  std::vector<std::vector<std::uint64_t>> pool_;    // distinct observation rows
  std::vector<std::vector<int>> edge_rows_;         // edge id -> pool indices
  std::vector<std::uint64_t> zero_sum_row_;
  std::vector<FieldElement> ids_;
};

Closure knowledge_closure(const SessionParams& params, const Transcript& transcript,
                          const CrackSet& cracked);

struct AttackReport {
  int t, m, k;
  std::uint64_t analytic_share_route;  // l_spc
  int analytic_rc_route;               // ceil(m/2)
  std::uint64_t overall_bound;         // min of the two routes
  std::optional<int> oracle_minimum;
  std::vector<Edge> witness;
  bool exact;  // false when the subset budget ran out first
};

inline constexpr std::uint64_t kDefaultSearchBudget = 5'000'000;

/// Exact minimum crack set by increasing-size subset enumeration; the
/// witness is the first success in lexicographic order.
AttackReport min_crack_set(const SessionParams& params, const Transcript& transcript,
                           std::uint64_t subset_budget = kDefaultSearchBudget);

std::string report_to_json(const AttackReport& report);

}  // namespace tcss::adversary
