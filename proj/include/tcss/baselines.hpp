#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "tcss/session.hpp"

namespace tcss::baselines {

/// Pairwise shuffling: every unordered pair shares one factor
/// (m(m-1)/2 messages); outputs sum to the group's Lagrange total.
std::vector<FieldElement> complete_shuffle(const ShareTable& table, const Group& group,
                                           Transcript& transcript, Rng& rng);

/// Loop shuffling: each participant passes one factor to its successor
/// (m messages, m >= 3).
std::vector<FieldElement> partial_shuffle(const ShareTable& table, const Group& group,
                                          Transcript& transcript, Rng& rng);

/// Crack bound of the loop construction: min(ceil(m/2), t+1).
int partial_shuffle_bound(int t, int m);

struct ComparisonRow {
  int t;
  int m;
  std::uint64_t msgs_complete;  // m(m-1)/2
  std::uint64_t msgs_partial;   // m
  int k;                        // chosen round count (max k when unreachable)
  std::uint64_t msgs_rns;       // k*m
  std::uint64_t bound_complete;
  std::uint64_t bound_partial;
  std::uint64_t bound_rns;
};

std::vector<ComparisonRow> comparison_table(std::span<const int> t_values, int m_lo, int m_hi);

inline constexpr const char* kCsvHeader =
    "t,m,msgs_complete,msgs_partial,k,msgs_rns,bound_complete,bound_partial,bound_rns";

void write_csv(std::ostream& os, std::span<const ComparisonRow> rows);

}  // namespace tcss::baselines
