#include "tcss/adversary.hpp"

#include <algorithm>
#include <bit>

#include "json.hpp"
#include "tcss/rns.hpp"
#include "tcss/shamir.hpp"

namespace tcss::adversary {

std::uint64_t share_route_cost(const std::vector<std::vector<int>>& paths, int t, int m) {
  if (t < 1 || t > m) fail(Errc::BadThreshold, "window size must lie in 1..m");
  std::uint64_t best = ~0ull;
  for (int start = 0; start < m; ++start) {
    std::vector<char> in_window(m, 0);
    for (int i = 0; i < t; ++i) in_window[(start + i) % m] = 1;
    std::uint64_t cost = 0;
    for (const auto& path : paths) {
      int touched = 0;
      for (int h = 0; h < m; ++h) {
        int u = path[h], v = path[(h + 1) % m];
        if (in_window[u] || in_window[v]) ++touched;
      }
      cost += touched;
    }
    best = std::min(best, cost);
  }
  return best;
}

std::uint64_t l_spc(int t, int m, int k) {
  if (t < 1 || t > m) fail(Errc::BadThreshold, "threshold must lie in 1..m");
  if (m == 2) return 1;  // the lone channel carries the whole session
  if (m == 6 && k == 2) return share_route_cost(rns::round_paths(6, 2), t, 6);
  auto d = rns::interval_set(m);
  if (k < 1 || k > static_cast<int>(d.size()))
    fail(Errc::RoundCountTooLarge, "k = " + std::to_string(k) + " outside 1..phi(m)/2");
  std::uint64_t total = 0;
  for (int i = 0; i < k; ++i)
    total += static_cast<std::uint64_t>(std::min(t + std::min(d[i], t), m));
  return total;
}

int min_rc_route(int m) {
  if (m < 2) fail(Errc::GroupTooSmall, "no channels exist below two participants");
  return (m + 1) / 2;
}

KChoice choose_k(int t, int m) {
  int max_k = m == 6 ? 2 : static_cast<int>(rns::interval_set(m).size());
  std::uint64_t target = static_cast<std::uint64_t>(min_rc_route(m));
  for (int k = 1; k <= max_k; ++k) {
    std::uint64_t bound = l_spc(t, m, k);
    if (bound >= target) return {true, k, bound};
  }
  return {false, max_k, l_spc(t, m, max_k)};
}

namespace {

constexpr std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

}  // namespace

KnowledgeSystem::KnowledgeSystem(const SessionParams& params, const Transcript& transcript)
    : p_(params.p.value()),
      t_(params.t),
      m_(params.m()),
      k_(params.k),
      n_(params.t + params.k * params.m() + 1),
      ids_(params.ids) {
  if (params.scheme != "shamir-additive")
    fail(Errc::Format, "the eavesdropping oracle covers the shamir-additive scheme only");

  auto paths = rns::round_paths(m_, k_);
  std::vector<std::vector<int>> pos_in_path(k_, std::vector<int>(m_));
  for (int i = 0; i < k_; ++i)
    for (int h = 0; h < m_; ++h) pos_in_path[i][paths[i][h]] = h;

  lagrange_.reserve(m_);
  for (int j = 0; j < m_; ++j)
    lagrange_.push_back(lagrange_coeff_at_zero(ids_[j], ids_).value());

  const auto w_col = [this](int round, int pos) { return t_ + (round - 1) * m_ + pos; };
  const int v0_col = t_ + k_ * m_;

  // One row per distinct observable payload; deliveries of the same
  // component over several channels share a pool row.
  edge_rows_.assign(static_cast<std::size_t>(m_) * m_, {});
  std::vector<int> rc_row(m_, -1);
  const auto edge_id = [this](Edge e) { return e.a * m_ + e.b; };

  for (const auto& msg : transcript.messages()) {
    if (msg.phase == Phase::RnsRound) {
      int i = msg.round;
      if (i < 1 || i > k_) fail(Errc::Format, "transcript round outside 1..k");
      int h = pos_in_path[i - 1][msg.from];
      if (paths[i - 1][(h + 1) % m_] != msg.to)
        fail(Errc::Format, "transcript does not follow the round-" + std::to_string(i) + " traversal");
      std::vector<std::uint64_t> row(n_ + 1, 0);
      for (int g = 0; g <= h; ++g) row[w_col(i, paths[i - 1][g])] = 1;
      row[n_] = msg.payload.value();
      pool_.push_back(std::move(row));
      edge_rows_[edge_id(msg.edge())].push_back(static_cast<int>(pool_.size()) - 1);
    } else if (msg.phase == Phase::RcBroadcast) {
      int s = msg.from;
      if (rc_row[s] < 0) {
        std::vector<std::uint64_t> row(n_ + 1, 0);
        std::uint64_t u = ids_[s].value() % p_;
        std::uint64_t power = 1 % p_;
        for (int i = 0; i < t_; ++i) {
          row[i] = mul_mod(lagrange_[s], power, p_);
          power = mul_mod(power, u, p_);
        }
        for (int i = 1; i <= k_; ++i) row[w_col(i, s)] = 1;
        if (s == 0) row[v0_col] = 1;
        row[n_] = msg.payload.value();
        pool_.push_back(std::move(row));
        rc_row[s] = static_cast<int>(pool_.size()) - 1;
      }
      edge_rows_[edge_id(msg.edge())].push_back(rc_row[s]);
    } else {
      fail(Errc::Format, "shuffle traffic does not belong to a coupled session transcript");
    }
  }

  zero_sum_row_.assign(n_ + 1, 0);
  for (int i = 1; i <= k_; ++i)
    for (int j = 0; j < m_; ++j) zero_sum_row_[w_col(i, j)] = 1;
  zero_sum_row_[v0_col] = 1;
}

std::vector<std::uint64_t> KnowledgeSystem::secret_form() const {
  std::vector<std::uint64_t> f(n_, 0);
  f[0] = 1;
  return f;
}

std::vector<std::uint64_t> KnowledgeSystem::share_form(int position) const {
  std::vector<std::uint64_t> f(n_, 0);
  std::uint64_t u = ids_.at(position).value() % p_;
  std::uint64_t power = 1 % p_;
  for (int i = 0; i < t_; ++i) {
    f[i] = power;
    power = mul_mod(power, u, p_);
  }
  return f;
}

std::vector<std::uint64_t> KnowledgeSystem::w_form(int round, int position) const {
  std::vector<std::uint64_t> f(n_, 0);
  f.at(t_ + (round - 1) * m_ + position) = 1;
  return f;
}

void KnowledgeSystem::add_row(std::span<const std::uint64_t> row, Workspace& ws) const {
  auto& work = ws.scratch;
  work.assign(row.begin(), row.end());

  // Forward-reduce against existing pivots.
  for (std::size_t r = 0; r < ws.rows.size(); ++r) {
    std::uint64_t c = work[ws.pivot_cols[r]];
    if (c == 0) continue;
    const auto& pivot = ws.rows[r];
    for (int j = 0; j <= n_; ++j)
      if (pivot[j]) work[j] = sub_mod(work[j], mul_mod(c, pivot[j], p_), p_);
  }

  int lead = -1;
  for (int j = 0; j < n_; ++j)
    if (work[j]) {
      lead = j;
      break;
    }
  if (lead < 0) {
    if (work[n_] != 0)
      fail(Errc::Format, "transcript payloads contradict the protocol equations");
    return;
  }

  // Normalize and back-substitute so stored rows stay mutually reduced.
  std::uint64_t inv = inv_mod(work[lead], p_);
  for (int j = 0; j <= n_; ++j) work[j] = mul_mod(work[j], inv, p_);
  for (std::size_t r = 0; r < ws.rows.size(); ++r) {
    std::uint64_t c = ws.rows[r][lead];
    if (c == 0) continue;
    auto& target = ws.rows[r];
    for (int j = 0; j <= n_; ++j)
      if (work[j]) target[j] = sub_mod(target[j], mul_mod(c, work[j], p_), p_);
  }
  ws.rows.push_back(work);
  ws.pivot_cols.push_back(lead);
}

void KnowledgeSystem::eliminate(std::span<const Edge> edges, Workspace& ws) const {
  ws.rows.clear();
  ws.pivot_cols.clear();
  for (const auto& e : edges)
    for (int idx : edge_rows_[static_cast<std::size_t>(e.a) * m_ + e.b]) add_row(pool_[idx], ws);
  add_row(zero_sum_row_, ws);
}

std::optional<std::uint64_t> KnowledgeSystem::value_of(std::span<const std::uint64_t> form,
                                                       const Workspace& ws) const {
  std::vector<std::uint64_t> f(form.begin(), form.end());
  std::uint64_t value = 0;
  for (std::size_t r = 0; r < ws.rows.size(); ++r) {
    std::uint64_t c = f[ws.pivot_cols[r]];
    if (c == 0) continue;
    const auto& row = ws.rows[r];
    for (int j = 0; j < n_; ++j)
      if (row[j]) f[j] = sub_mod(f[j], mul_mod(c, row[j], p_), p_);
    value = (value + static_cast<unsigned __int128>(c) * row[n_] % p_) % p_;
  }
  for (int j = 0; j < n_; ++j)
    if (f[j]) return std::nullopt;
  return value;
}

bool KnowledgeSystem::determines_secret(std::span<const Edge> edges, Workspace& ws) const {
  eliminate(edges, ws);
  return value_of(secret_form(), ws).has_value();
}

Closure KnowledgeSystem::closure(const CrackSet& cracked) const {
  cracked.check_within(m_);
  Workspace ws;
  std::vector<Edge> edges(cracked.edges().begin(), cracked.edges().end());
  eliminate(edges, ws);

  Closure result{false, std::nullopt, {}};
  PrimeModulus p(p_);
  if (auto v = value_of(secret_form(), ws)) {
    result.secret_determined = true;
    result.secret = FieldElement(*v, p);
  }
  for (int j = 0; j < m_; ++j)
    if (value_of(share_form(j), ws)) result.determined_share_ids.push_back(ids_[j]);
  return result;
}

Closure knowledge_closure(const SessionParams& params, const Transcript& transcript,
                          const CrackSet& cracked) {
  return KnowledgeSystem(params, transcript).closure(cracked);
}

AttackReport min_crack_set(const SessionParams& params, const Transcript& transcript,
                           std::uint64_t subset_budget) {
  KnowledgeSystem sys(params, transcript);
  const int m = params.m();
  const int t = params.t;

  AttackReport report{t, m, params.k,
                      l_spc(t, m, params.k), min_rc_route(m), 0,
                      std::nullopt, {}, true};
  report.overall_bound = std::min<std::uint64_t>(report.analytic_share_route,
                                                 static_cast<std::uint64_t>(report.analytic_rc_route));

  std::vector<Edge> all_edges;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) all_edges.push_back(Edge{a, b});
  const int e = static_cast<int>(all_edges.size());

  std::vector<std::uint64_t> endpoint_mask(all_edges.size());
  for (std::size_t i = 0; i < all_edges.size(); ++i)
    endpoint_mask[i] = (1ull << all_edges[i].a) | (1ull << all_edges[i].b);

  KnowledgeSystem::Workspace ws;
  std::vector<Edge> combo;
  // A cover of ceil(m/2) channels always determines the secret, so the
  // search never has to look past that size.
  for (int len = 1; len <= min_rc_route(m); ++len) {
    std::vector<int> idx(len);
    for (int i = 0; i < len; ++i) idx[i] = i;
    while (true) {
      if (subset_budget == 0) {
        report.exact = false;
        return report;
      }
      --subset_budget;

      std::uint64_t mask = 0;
      for (int i : idx) mask |= endpoint_mask[i];
      if (std::popcount(mask) >= t) {
        combo.clear();
        for (int i : idx) combo.push_back(all_edges[i]);
        if (sys.determines_secret(combo, ws)) {
          report.oracle_minimum = len;
          report.witness = combo;
          return report;
        }
      }

      int i = len - 1;
      while (i >= 0 && idx[i] == e - len + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < len; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  // Unreachable: the cover size above always succeeds.
  fail(Errc::SearchBudgetExceeded, "edge-cover route unexpectedly failed");
}

std::string report_to_json(const AttackReport& report) {
  nlohmann::json j;
  j["t"] = report.t;
  j["m"] = report.m;
  j["k"] = report.k;
  j["analytic_share_route"] = report.analytic_share_route;
  j["analytic_rc_route"] = report.analytic_rc_route;
  j["overall_bound"] = report.overall_bound;
  j["exact"] = report.exact;
  if (report.oracle_minimum) j["oracle_minimum"] = *report.oracle_minimum;
  else j["oracle_minimum"] = nullptr;
  auto edges = nlohmann::json::array();
  for (const auto& e : report.witness) edges.push_back(std::to_string(e.a) + "-" + std::to_string(e.b));
  j["witness"] = edges;
  return j.dump(2);
}

}  // namespace tcss::adversary
