#pragma once

#include <vector>

#include "tcss/netsim.hpp"

namespace tcss::rns {

std::uint64_t euler_phi(std::uint64_t m);

/// D_m: the increasing list of intervals coprime to m and below m/2.
/// |D_m| = phi(m)/2 for every m >= 3.
std::vector<int> interval_set(int m);

/// [0, d, 2d, ...] mod m - a permutation of the positions; the traversal
/// closes the loop back to 0.
std::vector<int> round_path(int m, int d);

/// The k traversals a run uses: the k smallest intervals of D_m, the two
/// fixed paths for m = 6 with k = 2, and the single ring for m in {2,3,4}.
std::vector<std::vector<int>> round_paths(int m, int k);

struct RnsResult {
  std::vector<FieldElement> r;                 // per position, sums to 0 mod p
  int k;
  std::vector<std::vector<FieldElement>> w;    // w[i][j]: round i+1, position j
  FieldElement v0;
  // False for m in {2,3,4}: a single ring exists but the km-distinct-channel
  // guarantee does not.
  bool edge_guarantee;
};

/// Runs the k-round selection over the group's channels, recording every
/// partial sum in the transcript.
RnsResult run_rns(const Group& group, int k, Transcript& transcript, Rng& rng);

}  // namespace tcss::rns
