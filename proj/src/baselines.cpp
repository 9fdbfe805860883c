#include "tcss/baselines.hpp"

#include <ostream>

#include "tcss/adversary.hpp"

namespace tcss::baselines {

namespace {

std::vector<FieldElement> lagrange_parts(const ShareTable& table, const Group& group) {
  std::vector<FieldElement> g;
  g.reserve(group.m());
  for (const auto& id : group.ids())
    g.push_back(table.share_of(id) * lagrange_coeff_at_zero(id, group.ids()));
  return g;
}

}  // namespace

std::vector<FieldElement> complete_shuffle(const ShareTable& table, const Group& group,
                                           Transcript& transcript, Rng& rng) {
  const int m = group.m();
  const PrimeModulus& p = group.modulus();
  auto out = lagrange_parts(table, group);

  // The lower endpoint of each pair picks the factor; the one message per
  // pair makes it common knowledge. Opposite signs cancel in the total.
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      FieldElement x = sample_uniform(rng, p);
      transcript.send(Phase::Shuffle, 0, a, b, x);
      out[a] += x;
      out[b] -= x;
    }
  }
  return out;
}

std::vector<FieldElement> partial_shuffle(const ShareTable& table, const Group& group,
                                          Transcript& transcript, Rng& rng) {
  const int m = group.m();
  if (m < 3) fail(Errc::GroupTooSmall, "loop shuffling needs at least three participants");
  const PrimeModulus& p = group.modulus();
  auto out = lagrange_parts(table, group);

  std::vector<FieldElement> factors;
  factors.reserve(m);
  for (int j = 0; j < m; ++j) {
    FieldElement x = sample_uniform(rng, p);
    transcript.send(Phase::Shuffle, 0, j, (j + 1) % m, x);
    factors.push_back(x);
  }
  for (int j = 0; j < m; ++j) out[j] += factors[j] - factors[(j + m - 1) % m];
  return out;
}

int partial_shuffle_bound(int t, int m) {
  return std::min(adversary::min_rc_route(m), t + 1);
}

std::vector<ComparisonRow> comparison_table(std::span<const int> t_values, int m_lo, int m_hi) {
  if (m_lo < 5) fail(Errc::GroupTooSmall, "comparison range starts at m = 5");
  if (m_hi < m_lo) fail(Errc::Format, "empty participant range");
  std::vector<ComparisonRow> rows;
  rows.reserve(t_values.size() * (m_hi - m_lo + 1));
  for (int t : t_values) {
    // A session needs m >= t participants, so smaller m have no row.
    for (int m = std::max(m_lo, t); m <= m_hi; ++m) {
      auto choice = adversary::choose_k(t, m);
      std::uint64_t half = adversary::min_rc_route(m);
      rows.push_back(ComparisonRow{
          t,
          m,
          static_cast<std::uint64_t>(m) * (m - 1) / 2,
          static_cast<std::uint64_t>(m),
          choice.k,
          static_cast<std::uint64_t>(choice.k) * m,
          half,
          static_cast<std::uint64_t>(partial_shuffle_bound(t, m)),
          std::min(choice.bound, half),
      });
    }
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const ComparisonRow> rows) {
  os << kCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.t << "," << r.m << "," << r.msgs_complete << "," << r.msgs_partial << "," << r.k << ","
       << r.msgs_rns << "," << r.bound_complete << "," << r.bound_partial << "," << r.bound_rns << "\n";
  }
}

}  // namespace tcss::baselines
