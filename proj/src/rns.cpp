#include "tcss/rns.hpp"

#include <numeric>

namespace tcss::rns {

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      result -= result / q;
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<int> interval_set(int m) {
  if (m < 3) fail(Errc::GroupTooSmall, "interval set needs m >= 3");
  std::vector<int> d;
  for (int i = 1; 2 * i < m; ++i)
    if (std::gcd(i, m) == 1) d.push_back(i);
  return d;
}

std::vector<int> round_path(int m, int d) {
  if (std::gcd(d, m) != 1)
    fail(Errc::NotCoprime, "interval " + std::to_string(d) + " shares a factor with m = " + std::to_string(m));
  std::vector<int> path;
  path.reserve(m);
  for (int h = 0; h < m; ++h) path.push_back(static_cast<int>((static_cast<long long>(h) * d) % m));
  return path;
}

std::vector<std::vector<int>> round_paths(int m, int k) {
  if (m < 2) fail(Errc::GroupTooSmall, "need at least two participants");
  if (k < 1) fail(Errc::RoundCountTooLarge, "round count must be positive");

  if (m == 2) {
    if (k > 1) fail(Errc::GroupTooSmall, "m = 2 admits a single ring only");
    return {{0, 1}};
  }
  if (m == 6) {
    // Two channel-disjoint traversals exist even though D_6 = {1}.
    if (k > 2) fail(Errc::RoundCountTooLarge, "m = 6 supports at most two rounds");
    std::vector<std::vector<int>> paths = {{0, 1, 2, 3, 4, 5}};
    if (k == 2) paths.push_back({0, 2, 4, 1, 5, 3});
    return paths;
  }

  auto d = interval_set(m);
  if (k > static_cast<int>(d.size())) {
    if (m < 5) fail(Errc::GroupTooSmall, "m in {3,4} admits a single ring only");
    fail(Errc::RoundCountTooLarge,
         "k = " + std::to_string(k) + " exceeds phi(m)/2 = " + std::to_string(d.size()));
  }
  std::vector<std::vector<int>> paths;
  paths.reserve(k);
  for (int i = 0; i < k; ++i) paths.push_back(round_path(m, d[i]));
  return paths;
}

RnsResult run_rns(const Group& group, int k, Transcript& transcript, Rng& rng) {
  const int m = group.m();
  const PrimeModulus& p = group.modulus();
  auto paths = round_paths(m, k);

  std::vector<std::vector<FieldElement>> w;
  std::vector<FieldElement> closing_sums;  // W^i_{m-1}, one per round
  for (int i = 0; i < k; ++i) {
    const auto& path = paths[i];
    std::vector<FieldElement> wi(m, FieldElement(0, p));
    FieldElement running(0, p);
    for (int h = 0; h < m; ++h) {
      int at = path[h];
      int next = path[(h + 1) % m];
      wi[at] = sample_uniform(rng, p);
      running += wi[at];
      transcript.send(Phase::RnsRound, i + 1, at, next, running);
    }
    closing_sums.push_back(running);
    w.push_back(std::move(wi));
  }

  // Position 0 closes the books: v0 cancels the k closing sums so the
  // private numbers sum to zero.
  FieldElement v0(0, p);
  for (const auto& s : closing_sums) v0 -= s;

  std::vector<FieldElement> r(m, FieldElement(0, p));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < k; ++i) r[j] += w[i][j];
  r[0] += v0;

  return RnsResult{std::move(r), k, std::move(w), v0, m >= 5};
}

}  // namespace tcss::rns
