#include "tcss/netsim.hpp"

#include <array>
#include <sstream>
#include <unordered_set>

namespace tcss {

Group::Group(PrimeModulus p, std::vector<FieldElement> ids) : p_(p), ids_(std::move(ids)) {
  if (ids_.size() < 2) fail(Errc::GroupTooSmall, "a group needs at least two participants");
  std::unordered_set<std::uint64_t> seen;
  for (const auto& id : ids_) {
    if (id.modulus() != p_.value()) fail(Errc::ModulusMismatch, "group id outside the session field");
    if (id.is_zero()) fail(Errc::ZeroId, "id 0 cannot join a group");
    if (!seen.insert(id.value()).second) fail(Errc::DuplicateId, "duplicate id " + id.hex() + " in group");
  }
}

int Group::position_of(const FieldElement& id) const {
  for (int j = 0; j < m(); ++j)
    if (ids_[j] == id) return j;
  fail(Errc::IdNotInGroup, "id " + id.hex() + " not in group");
}

Edge Edge::between(int x, int y) {
  if (x == y) fail(Errc::SelfSend, "an edge needs two distinct endpoints");
  return x < y ? Edge{x, y} : Edge{y, x};
}

void Transcript::send(Phase phase, int round, int from, int to, const FieldElement& payload) {
  if (from == to) fail(Errc::SelfSend, "participant " + std::to_string(from) + " cannot message itself");
  msgs_.push_back(Message{phase, round, from, to, payload});
}

std::size_t Transcript::count(Phase phase) const {
  std::size_t n = 0;
  for (const auto& msg : msgs_)
    if (msg.phase == phase) ++n;
  return n;
}

CrackSet::CrackSet(std::span<const Edge> edges) {
  for (const auto& e : edges) edges_.insert(Edge::between(e.a, e.b));
}

void CrackSet::check_within(int m) const {
  for (const auto& e : edges_)
    if (e.a < 0 || e.b >= m)
      fail(Errc::IdNotInGroup, "cracked edge endpoint outside group of size " + std::to_string(m));
}

std::vector<Message> eavesdrop(const Transcript& transcript, const CrackSet& cracked) {
  std::vector<Message> seen;
  for (const auto& msg : transcript.messages())
    if (cracked.contains(msg.edge())) seen.push_back(msg);
  return seen;
}

namespace {

const char* phase_token(Phase phase) {
  switch (phase) {
    case Phase::RnsRound: return "rns";
    case Phase::RcBroadcast: return "rc";
    case Phase::Shuffle: return "shuffle";
  }
  return "?";
}

}  // namespace

std::string transcript_to_string(const SessionParams& params, const Transcript& transcript) {
  std::ostringstream os;
  save_transcript(os, params, transcript);
  return os.str();
}

void save_transcript(std::ostream& os, const SessionParams& params, const Transcript& transcript) {
  os << "tcss-transcript v1\n";
  os << "scheme " << params.scheme << "\n";
  os << "p " << to_hex(params.p.value()) << "\n";
  os << "t " << params.t << "\n";
  os << "k " << params.k << "\n";
  os << "ids";
  for (const auto& id : params.ids) os << " " << id.hex();
  os << "\n";
  for (const auto& msg : transcript.messages()) {
    os << "msg " << phase_token(msg.phase);
    if (msg.phase == Phase::RnsRound) os << " " << msg.round;
    os << " " << msg.from << " " << msg.to << " " << msg.payload.hex() << "\n";
  }
}

std::pair<SessionParams, Transcript> load_transcript(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "tcss-transcript v1")
    fail(Errc::Format, "not a tcss transcript (bad magic line)");

  std::string scheme;
  std::uint64_t p_value = 0;
  int t = -1, k = -1;
  std::vector<std::string> id_hex;
  std::vector<std::array<std::string, 5>> raw_msgs;

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "scheme") {
      ls >> scheme;
    } else if (tag == "p") {
      std::string hex;
      ls >> hex;
      p_value = parse_hex(hex);
    } else if (tag == "t") {
      ls >> t;
    } else if (tag == "k") {
      ls >> k;
    } else if (tag == "ids") {
      std::string hex;
      while (ls >> hex) id_hex.push_back(hex);
    } else if (tag == "msg") {
      std::array<std::string, 5> parts{};
      ls >> parts[0];
      if (parts[0] == "rns") {
        ls >> parts[1] >> parts[2] >> parts[3] >> parts[4];
      } else {
        parts[1] = "0";
        ls >> parts[2] >> parts[3] >> parts[4];
      }
      if (ls.fail()) fail(Errc::Format, "malformed transcript message: " + line);
      raw_msgs.push_back(parts);
    } else {
      fail(Errc::Format, "unknown transcript line: " + line);
    }
  }
  if (p_value == 0 || t < 2 || k < 1 || id_hex.empty())
    fail(Errc::Format, "transcript header incomplete");

  PrimeModulus p(p_value);
  SessionParams params{p, t, k, {}, scheme};
  for (const auto& hex : id_hex) params.ids.push_back(FieldElement::from_hex(hex, p));

  Transcript transcript;
  int m = params.m();
  for (const auto& parts : raw_msgs) {
    Phase phase;
    if (parts[0] == "rns") phase = Phase::RnsRound;
    else if (parts[0] == "rc") phase = Phase::RcBroadcast;
    else if (parts[0] == "shuffle") phase = Phase::Shuffle;
    else fail(Errc::Format, "unknown message phase '" + parts[0] + "'");
    int round = std::stoi(parts[1]);
    int from = std::stoi(parts[2]);
    int to = std::stoi(parts[3]);
    if (from < 0 || from >= m || to < 0 || to >= m)
      fail(Errc::Format, "message endpoint outside group");
    if (phase == Phase::RnsRound && (round < 1 || round > k))
      fail(Errc::Format, "message round outside 1..k");
    transcript.send(phase, round, from, to, FieldElement::from_hex(parts[4], p));
  }
  return {params, std::move(transcript)};
}

}  // namespace tcss
