#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tcss/field.hpp"

namespace tcss {

/// Ordered set of participant ids; the index is the ring position.
class Group {
 public:
  Group(PrimeModulus p, std::vector<FieldElement> ids);

  int m() const { return static_cast<int>(ids_.size()); }
  const PrimeModulus& modulus() const { return p_; }
  const std::vector<FieldElement>& ids() const { return ids_; }
  const FieldElement& id(int position) const { return ids_.at(position); }
  int position_of(const FieldElement& id) const;  // IdNotInGroup if absent

 private:
  PrimeModulus p_;
  std::vector<FieldElement> ids_;
};

/// Undirected channel between two ring positions, stored as a < b.
struct Edge {
  int a;
  int b;

  static Edge between(int x, int y);
  auto operator<=>(const Edge&) const = default;
};

enum class Phase : std::uint8_t { RnsRound, RcBroadcast, Shuffle };

struct Message {
  Phase phase;
  int round;  // 1-based RNS round; 0 otherwise
  int from;
  int to;
  FieldElement payload;

  Edge edge() const { return Edge::between(from, to); }
};

/// Append-only record of everything sent over the simulated channels.
/// Delivery is reliable, ordered and instantaneous.
class Transcript {
 public:
  void send(Phase phase, int round, int from, int to, const FieldElement& payload);

  const std::vector<Message>& messages() const { return msgs_; }
  std::size_t size() const { return msgs_.size(); }
  std::size_t count(Phase phase) const;

 private:
  std::vector<Message> msgs_;
};

class CrackSet {
 public:
  CrackSet() = default;
  explicit CrackSet(std::span<const Edge> edges);

  void insert(Edge e) { edges_.insert(e); }
  bool contains(Edge e) const { return edges_.count(e) != 0; }
  std::size_t size() const { return edges_.size(); }
  const std::set<Edge>& edges() const { return edges_; }

  void check_within(int m) const;  // every endpoint must be a valid position

 private:
  std::set<Edge> edges_;
};

/// Messages traversing cracked channels, in transmission order.
std::vector<Message> eavesdrop(const Transcript& transcript, const CrackSet& cracked);

/// Public context an analysis needs alongside a transcript.
struct SessionParams {
  PrimeModulus p;
  int t;
  int k;
  std::vector<FieldElement> ids;  // position order
  std::string scheme;

  int m() const { return static_cast<int>(ids.size()); }
};

// Line-oriented transcript container (header + one line per message).
std::string transcript_to_string(const SessionParams& params, const Transcript& transcript);
void save_transcript(std::ostream& os, const SessionParams& params, const Transcript& transcript);
std::pair<SessionParams, Transcript> load_transcript(std::istream& is);

}  // namespace tcss
