// tcss: deal shares, run coupled reconstruction sessions, analyze channel
// cracking, and emit the shuffling-comparison table.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcss/adversary.hpp"
#include "tcss/baselines.hpp"
#include "tcss/generic.hpp"
#include "tcss/session.hpp"
#include "tcss/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tcss;

namespace {

constexpr int kIoError = 36;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NotPrime: return 20;
    case Errc::ModulusTooLarge: return 21;
    case Errc::ModulusMismatch: return 22;
    case Errc::ZeroInverse: return 23;
    case Errc::BadThreshold: return 24;
    case Errc::DuplicateId: return 25;
    case Errc::ZeroId: return 26;
    case Errc::IdNotInGroup: return 27;
    case Errc::SelfSend: return 28;
    case Errc::NotCoprime: return 29;
    case Errc::GroupTooSmall: return 30;
    case Errc::RoundCountTooLarge: return 31;
    case Errc::IncompleteRcSet: return 32;
    case Errc::SearchBudgetExceeded: return 33;
    case Errc::InterfaceViolation: return 34;
    case Errc::Format: return 35;
  }
  return 1;
}

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success; 20 NotPrime; 21 ModulusTooLarge; 22 ModulusMismatch;\n"
    "23 ZeroInverse; 24 BadThreshold; 25 DuplicateId; 26 ZeroId; 27 IdNotInGroup;\n"
    "28 SelfSend; 29 NotCoprime; 30 GroupTooSmall; 31 RoundCountTooLarge;\n"
    "32 IncompleteRcSet; 33 SearchBudgetExceeded; 34 InterfaceViolation;\n"
    "35 Format; 36 file I/O. Usage errors use CLI parser codes.\n"
    "The default seed comes from TCSS_SEED when set; --seed overrides.";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TCSS_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      std::cerr << "warning: ignoring unparsable TCSS_SEED\n";
    }
  }
  return 1;
}

json fe_json(const FieldElement& v) {
  return json{{"p", to_hex(v.modulus())}, {"v", v.hex()}};
}

std::vector<FieldElement> parse_id_list(const std::string& text, const PrimeModulus& p) {
  std::vector<FieldElement> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ids.push_back(FieldElement::from_hex(item, p));
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Line-oriented manifest / share containers.

struct Manifest {
  std::string scheme;
  PrimeModulus p;
  int t;
  std::vector<FieldElement> ids;
};

void write_manifest(const fs::path& path, const Manifest& man) {
  std::ofstream os(path);
  if (!os) throw std::system_error(errno, std::generic_category(), path.string());
  os << "tcss-manifest v1\n";
  os << "scheme " << man.scheme << "\n";
  os << "p " << to_hex(man.p.value()) << "\n";
  os << "t " << man.t << "\n";
  os << "n " << man.ids.size() << "\n";
  for (const auto& id : man.ids) os << "id " << id.hex() << "\n";
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::system_error(errno, std::generic_category(), path.string());
  std::string line;
  if (!std::getline(is, line) || line != "tcss-manifest v1")
    fail(Errc::Format, path.string() + " is not a tcss manifest");
  std::string scheme;
  std::uint64_t pv = 0;
  int t = -1;
  std::size_t n = 0;
  std::vector<std::string> id_hex;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "scheme") ls >> scheme;
    else if (tag == "p") { std::string h; ls >> h; pv = parse_hex(h); }
    else if (tag == "t") ls >> t;
    else if (tag == "n") ls >> n;
    else if (tag == "id") { std::string h; ls >> h; id_hex.push_back(h); }
    else fail(Errc::Format, "unknown manifest line: " + line);
  }
  if (pv == 0 || t < 2 || id_hex.size() != n || n == 0)
    fail(Errc::Format, "manifest " + path.string() + " is incomplete");
  PrimeModulus p(pv);
  Manifest man{scheme, p, t, {}};
  for (const auto& h : id_hex) man.ids.push_back(FieldElement::from_hex(h, p));
  return man;
}

struct ShareRecord {
  std::string scheme;
  PrimeModulus p;
  int t;
  FieldElement id;
  FieldElement share;
};

void write_share(const fs::path& path, const ShareRecord& rec) {
  std::ofstream os(path);
  if (!os) throw std::system_error(errno, std::generic_category(), path.string());
  os << "tcss-share v1\n";
  os << "scheme " << rec.scheme << "\n";
  os << "p " << to_hex(rec.p.value()) << "\n";
  os << "t " << rec.t << "\n";
  os << "id " << rec.id.hex() << "\n";
  os << "share " << rec.share.hex() << "\n";
}

ShareRecord read_share(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::system_error(errno, std::generic_category(), path.string());
  std::string line;
  if (!std::getline(is, line) || line != "tcss-share v1")
    fail(Errc::Format, path.string() + " is not a tcss share file");
  std::string scheme, id_hex, share_hex;
  std::uint64_t pv = 0;
  int t = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "scheme") ls >> scheme;
    else if (tag == "p") { std::string h; ls >> h; pv = parse_hex(h); }
    else if (tag == "t") ls >> t;
    else if (tag == "id") ls >> id_hex;
    else if (tag == "share") ls >> share_hex;
    else fail(Errc::Format, "unknown share-file line: " + line);
  }
  if (pv == 0 || t < 2 || id_hex.empty() || share_hex.empty())
    fail(Errc::Format, "share file " + path.string() + " is incomplete");
  PrimeModulus p(pv);
  return ShareRecord{scheme, p, t, FieldElement::from_hex(id_hex, p), FieldElement::from_hex(share_hex, p)};
}

// ---------------------------------------------------------------------------
// share

struct ShareArgs {
  std::string p_hex;
  int t = 0;
  int n = 0;
  std::string ids_csv;
  std::string secret_hex;
  std::string secret_file;
  std::string scheme = "shamir-additive";
  std::string out_dir;
  std::uint64_t seed = default_seed();
};

int cmd_share(const ShareArgs& args) {
  PrimeModulus p(parse_hex(args.p_hex));

  std::vector<FieldElement> ids;
  if (!args.ids_csv.empty()) {
    ids = parse_id_list(args.ids_csv, p);
    if (args.n != 0 && args.n != static_cast<int>(ids.size()))
      fail(Errc::Format, "--n disagrees with the --ids list");
  } else {
    if (args.n <= 0) fail(Errc::Format, "give --n or an explicit --ids list");
    for (int i = 1; i <= args.n; ++i) ids.push_back(FieldElement(i, p));
  }

  std::string secret_hex = args.secret_hex;
  if (secret_hex.empty() && !args.secret_file.empty()) {
    std::ifstream is(args.secret_file);
    if (!is) throw std::system_error(errno, std::generic_category(), args.secret_file);
    is >> secret_hex;
  }
  if (secret_hex.empty()) {
    std::cin >> secret_hex;
    if (secret_hex.empty()) fail(Errc::Format, "no secret on stdin");
  }
  FieldElement secret = FieldElement::from_hex(secret_hex, p);

  auto scheme = generic::make_scheme(args.scheme, p);
  Rng rng(args.seed);
  auto table = scheme->share_generate(secret, ids, args.t, rng);

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  write_manifest(dir / "manifest.txt", Manifest{args.scheme, p, args.t, ids});
  for (const auto& e : table.entries())
    write_share(dir / ("share_" + e.id.hex() + ".txt"),
                ShareRecord{args.scheme, p, args.t, e.id, e.share});

  std::cout << "wrote manifest and " << table.n() << " share files to " << dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// reconstruct

struct ReconstructArgs {
  std::string manifest_path;
  std::vector<std::string> share_paths;
  std::string k_spec = "auto";
  std::string transcript_out;
  std::uint64_t seed = default_seed();
};

int resolve_k(const std::string& spec, int t, int m) {
  if (spec != "auto") {
    int k = std::stoi(spec);
    if (k < 1) fail(Errc::RoundCountTooLarge, "k must be positive");
    return k;
  }
  if (m == 2) return 1;
  auto choice = adversary::choose_k(t, m);
  if (!choice.reachable)
    std::cerr << "warning: no round count reaches ceil(m/2) = " << adversary::min_rc_route(m)
              << "; best share-route bound is " << choice.bound << " at k = " << choice.k << "\n";
  return choice.k;
}

int cmd_reconstruct(const ReconstructArgs& args) {
  Manifest man = read_manifest(args.manifest_path);

  std::vector<FieldElement> group_ids;
  std::vector<ShareEntry> entries;
  for (const auto& path : args.share_paths) {
    ShareRecord rec = read_share(path);
    if (rec.p != man.p || rec.t != man.t || rec.scheme != man.scheme)
      fail(Errc::ModulusMismatch, path + " does not belong to this manifest");
    bool known = false;
    for (const auto& id : man.ids) known = known || id == rec.id;
    if (!known) fail(Errc::IdNotInGroup, path + " names an id outside the manifest");
    group_ids.push_back(rec.id);
    entries.push_back({rec.id, rec.share});
  }
  int m = static_cast<int>(group_ids.size());
  if (m < man.t)
    fail(Errc::GroupTooSmall, "got " + std::to_string(m) + " shares for threshold " + std::to_string(man.t));

  int k = resolve_k(args.k_spec, man.t, m);
  ShareTable table(man.p, man.t, entries);
  Group group(man.p, group_ids);
  Rng rng(args.seed);

  FieldElement secret(0, man.p);
  SessionParams params{man.p, man.t, k, group_ids, man.scheme};
  Transcript transcript;
  if (man.scheme == "shamir-additive") {
    auto session = run_session(table, group, k, rng);
    secret = session.secret;
    params = session.params;
    transcript = std::move(session.transcript);
  } else {
    auto scheme = generic::make_scheme(man.scheme, man.p);
    auto session = generic::run_generic_session(*scheme, table, group, k, rng);
    secret = session.secret;
    params = session.params;
    transcript = std::move(session.transcript);
  }

  if (!args.transcript_out.empty()) {
    std::ofstream os(args.transcript_out);
    if (!os) throw std::system_error(errno, std::generic_category(), args.transcript_out);
    save_transcript(os, params, transcript);
  }
  std::cout << secret.hex() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// attack

struct AttackArgs {
  std::string transcript_path;
  std::string edges_csv;
  bool search_min = false;
  bool edges_given = false;
  std::uint64_t budget = adversary::kDefaultSearchBudget;
};

CrackSet parse_edges(const std::string& text, int m) {
  CrackSet set;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-');
    if (dash == std::string::npos) fail(Errc::Format, "edge '" + item + "' is not of the form a-b");
    int a = std::stoi(item.substr(0, dash));
    int b = std::stoi(item.substr(dash + 1));
    set.insert(Edge::between(a, b));
  }
  set.check_within(m);
  return set;
}

int cmd_attack(const AttackArgs& args) {
  std::ifstream is(args.transcript_path);
  if (!is) throw std::system_error(errno, std::generic_category(), args.transcript_path);
  auto [params, transcript] = load_transcript(is);

  if (args.search_min) {
    auto report = adversary::min_crack_set(params, transcript, args.budget);
    if (!report.exact)
      std::cerr << "warning: subset budget exhausted; analytic bounds reported without an oracle minimum\n";
    std::cout << adversary::report_to_json(report) << "\n";
    return 0;
  }

  CrackSet cracked = parse_edges(args.edges_csv, params.m());
  auto closure = adversary::knowledge_closure(params, transcript, cracked);
  json out;
  out["secret_determined"] = closure.secret_determined;
  out["secret"] = closure.secret ? fe_json(*closure.secret) : json(nullptr);
  auto shares = json::array();
  for (const auto& id : closure.determined_share_ids) shares.push_back(id.hex());
  out["determined_share_ids"] = shares;
  auto edges = json::array();
  for (const auto& e : cracked.edges()) edges.push_back(std::to_string(e.a) + "-" + std::to_string(e.b));
  out["cracked_edges"] = edges;
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string t_csv = "2,20,75";
  std::string m_range = "10..500";
  std::string out_path;
};

int cmd_compare(const CompareArgs& args) {
  std::vector<int> ts;
  {
    std::stringstream ss(args.t_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) ts.push_back(std::stoi(item));
  }
  auto dots = args.m_range.find("..");
  if (dots == std::string::npos) fail(Errc::Format, "-m wants a range like 10..500");
  int m_lo = std::stoi(args.m_range.substr(0, dots));
  int m_hi = std::stoi(args.m_range.substr(dots + 2));

  auto rows = baselines::comparison_table(ts, m_lo, m_hi);
  if (args.out_path.empty()) {
    baselines::write_csv(std::cout, rows);
  } else {
    std::ofstream os(args.out_path);
    if (!os) throw std::system_error(errno, std::generic_category(), args.out_path);
    baselines::write_csv(os, rows);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string mode;
  std::string p_hex = "101";  // 257
  int t = 2;
  int n = 5;
  int m = 5;
  int k = 1;
  std::uint64_t trials = 10000;
  std::uint64_t seed = default_seed();
};

int cmd_simulate(const SimulateArgs& args) {
  PrimeModulus p(parse_hex(args.p_hex));
  json out;
  out["mode"] = args.mode;
  out["p"] = to_hex(p.value());
  out["trials"] = args.trials;
  out["seed"] = args.seed;

  std::vector<FieldElement> ids;
  for (int i = 1; i <= args.n; ++i) ids.push_back(FieldElement(i, p));

  if (args.mode == "ip-attack") {
    Rng rng(args.seed);
    auto table = share_generate(sample_uniform(rng, p), ids, args.t, rng);
    if (args.m < args.t + 1 || args.m > args.n + 1)
      fail(Errc::GroupTooSmall, "ip-attack wants t+1 <= m <= n+1 (outsider takes one seat)");
    std::vector<FieldElement> honest(ids.begin(), ids.begin() + (args.m - 1));
    FieldElement outsider(static_cast<std::uint64_t>(args.n) + 1, p);
    auto summary = simulate_ip_attack(table, honest, outsider, args.k, args.trials, args.seed);
    out["hits"] = summary.hits;
    out["hit_rate"] = summary.hit_rate;
    out["expected_rate"] = summary.expected_rate;
    out["sigma"] = summary.sigma;
    double expected = summary.expected_rate * static_cast<double>(summary.trials);
    out["within_3_sigma"] = std::abs(static_cast<double>(summary.hits) - expected) <= 3.0 * summary.sigma;
  } else if (args.mode == "rc-uniformity") {
    Rng deal_rng(args.seed);
    auto table = share_generate(sample_uniform(deal_rng, p), ids, args.t, deal_rng);
    std::vector<FieldElement> group_ids(ids.begin(), ids.begin() + args.m);
    Group group(p, group_ids);
    std::vector<std::uint64_t> counts(p.value(), 0);
    for (std::uint64_t trial = 0; trial < args.trials; ++trial) {
      Rng rng(derive_seed(args.seed, trial));
      auto session = run_session(table, group, args.k, rng);
      ++counts[session.rcs[0].value()];
    }
    auto check = check_uniform(counts);
    out["statistic"] = check.statistic;
    out["critical_99"] = check.critical;
    out["pass"] = check.pass;
  } else if (args.mode == "rns-uniformity") {
    std::vector<FieldElement> group_ids(ids.begin(), ids.begin() + args.m);
    Group group(p, group_ids);
    std::vector<std::vector<std::uint64_t>> counts(args.m, std::vector<std::uint64_t>(p.value(), 0));
    for (std::uint64_t trial = 0; trial < args.trials; ++trial) {
      Rng rng(derive_seed(args.seed, trial));
      Transcript tr;
      auto result = rns::run_rns(group, args.k, tr, rng);
      for (int j = 0; j < args.m; ++j) ++counts[j][result.r[j].value()];
    }
    bool all_pass = true;
    double worst = 0.0, critical = 0.0;
    for (int j = 0; j < args.m; ++j) {
      auto check = check_uniform(counts[j]);
      all_pass = all_pass && check.pass;
      worst = std::max(worst, check.statistic);
      critical = check.critical;
    }
    out["worst_statistic"] = worst;
    out["critical_99"] = critical;
    out["pass"] = all_pass;
  } else {
    fail(Errc::Format, "unknown mode '" + args.mode + "'");
  }

  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tcss: tightly coupled threshold secret sharing over simulated private channels"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  ShareArgs share_args;
  auto* share = app.add_subcommand("share", "deal shares to files");
  share->add_option("--p", share_args.p_hex, "prime modulus (hex)")->required();
  share->add_option("--t", share_args.t, "threshold")->required();
  share->add_option("--n", share_args.n, "number of shareholders");
  share->add_option("--ids", share_args.ids_csv, "comma-separated shareholder ids (hex); default 1..n");
  share->add_option("--secret", share_args.secret_hex, "secret (hex); otherwise --secret-file or stdin");
  share->add_option("--secret-file", share_args.secret_file, "file holding the secret (hex)");
  share->add_option("--scheme", share_args.scheme, "shamir-additive | shamir-multiplicative")
      ->check(CLI::IsMember(generic::scheme_names()));
  share->add_option("--out", share_args.out_dir, "output directory")->required();
  share->add_option("--seed", share_args.seed, "rng seed");

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "run a coupled reconstruction session");
  rec->add_option("--manifest", rec_args.manifest_path, "manifest file")->required();
  rec->add_option("shares", rec_args.share_paths, "share files of the session group")->required();
  rec->add_option("--k", rec_args.k_spec, "round count or 'auto'");
  rec->add_option("--transcript", rec_args.transcript_out, "write the session transcript here");
  rec->add_option("--seed", rec_args.seed, "rng seed");

  AttackArgs atk_args;
  auto* atk = app.add_subcommand("attack", "analyze a transcript against cracked channels");
  atk->add_option("--transcript", atk_args.transcript_path, "transcript file")->required();
  auto* edges_opt = atk->add_option("--edges", atk_args.edges_csv, "cracked edges, e.g. 0-1,1-2 (may be empty)");
  atk->add_flag("--search-min", atk_args.search_min, "search the exact minimum crack set");
  atk->add_option("--budget", atk_args.budget, "subset-search budget");

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "emit the shuffling-comparison CSV");
  cmp->add_option("-t,--t", cmp_args.t_csv, "thresholds, comma separated");
  cmp->add_option("-m,--m", cmp_args.m_range, "participant range lo..hi");
  cmp->add_option("-o,--out", cmp_args.out_path, "output file (default stdout)");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo attack and uniformity suites");
  sim->add_option("--mode", sim_args.mode, "ip-attack | rc-uniformity | rns-uniformity")->required();
  sim->add_option("--p", sim_args.p_hex, "prime modulus (hex)");
  sim->add_option("--t", sim_args.t, "threshold");
  sim->add_option("--n", sim_args.n, "shareholders");
  sim->add_option("--m", sim_args.m, "participants");
  sim->add_option("--k", sim_args.k, "rounds");
  sim->add_option("--trials", sim_args.trials, "trial count");
  sim->add_option("--seed", sim_args.seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  atk_args.edges_given = edges_opt->count() > 0;

  try {
    if (share->parsed()) return cmd_share(share_args);
    if (rec->parsed()) return cmd_reconstruct(rec_args);
    if (atk->parsed()) {
      if (atk_args.search_min == atk_args.edges_given)
        fail(Errc::Format, "give exactly one of --edges or --search-min");
      return cmd_attack(atk_args);
    }
    if (cmp->parsed()) return cmd_compare(cmp_args);
    if (sim->parsed()) return cmd_simulate(sim_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
