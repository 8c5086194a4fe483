#include "prodchain/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

#include "prodchain/error.hpp"
#include "prodchain/metrics.hpp"
#include "prodchain/seeded.hpp"

namespace prodchain::netsim {

std::string_view to_string(FailureClass c) {
  switch (c) {
    case FailureClass::kConsensus: return "consensus";
    case FailureClass::kSyntax: return "syntax";
    case FailureClass::kVersion: return "version";
  }
  return "unknown";
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::kSubmit: return "submit";
    case EventKind::kEndorse: return "endorse";
    case EventKind::kCommit: return "commit";
    case EventKind::kReadRequest: return "read-request";
    case EventKind::kReadResponse: return "read-response";
  }
  return "unknown";
}

namespace {
bool probability(double p) { return p >= 0.0 && p <= 1.0; }
}  // namespace

void Scenario::validate() const {
  if (node_count < 2) throw FieldError("node_count", "must be >= 2");
  if (endorser_count < 1 || endorser_count > node_count - 1)
    throw FieldError("endorser_count", "must be in [1, node_count - 1]");
  if (block_count < 1 || block_count > 1'000'000) throw FieldError("block_count", "must be in [1, 1000000]");
  if (tx_per_block < 1 || tx_per_block > 1000) throw FieldError("tx_per_block", "must be in [1, 1000]");
  if (commit_delays.size() != node_count) throw FieldError("commit_delays", "length must equal node_count");
  for (double d : commit_delays)
    if (!(d >= 0.0) || !std::isfinite(d)) throw FieldError("commit_delays", "delays must be finite and >= 0");
  if (!(network_threshold > 0.0 && network_threshold <= 1.0))
    throw FieldError("network_threshold", "must be in (0, 1]");
  if (!probability(error_rates.consensus) || !probability(error_rates.syntax) || !probability(error_rates.version) ||
      error_rates.total() > 1.0)
    throw FieldError("error_rates", "probabilities must be in [0, 1] and sum to at most 1");
  if (!(link_rate > 0.0)) throw FieldError("link_rate", "must be > 0 (inf disables serialization)");
}

namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

double parse_double(const std::string& field, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw FieldError(field, "not a number: '" + v + "'");
  }
}

std::uint64_t parse_count(const std::string& field, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw FieldError(field, "not a non-negative integer: '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw FieldError(field, "out of range: '" + v + "'");
  }
}

std::string format_double(double d) {
  if (std::isinf(d)) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << d;
  return out.str();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::set<std::string> seen;
  bool delays_given = false;
  for (const auto& [key, value] : identity::parse_key_values(text)) {
    if (!seen.insert(key).second) throw FieldError(key, "given more than once");
    if (key == "node_count") {
      s.node_count = parse_count(key, value);
    } else if (key == "endorser_count") {
      s.endorser_count = parse_count(key, value);
    } else if (key == "tx_per_block") {
      s.tx_per_block = parse_count(key, value);
    } else if (key == "block_count") {
      s.block_count = parse_count(key, value);
    } else if (key == "commit_delays") {
      s.commit_delays.clear();
      for (const auto& item : split_list(value)) s.commit_delays.push_back(parse_double(key, item));
      delays_given = true;
    } else if (key == "network_threshold") {
      s.network_threshold = parse_double(key, value);
    } else if (key == "error_rates") {
      auto items = split_list(value);
      if (items.size() != 3) throw FieldError(key, "expected consensus,syntax,version");
      s.error_rates = {parse_double(key, items[0]), parse_double(key, items[1]), parse_double(key, items[2])};
    } else if (key == "rng_seed") {
      s.rng_seed = parse_count(key, value);
    } else if (key == "link_rate") {
      s.link_rate = parse_double(key, value);
    } else {
      throw FieldError(key, "unknown scenario field");
    }
  }
  if (!delays_given && s.node_count != s.commit_delays.size())
    throw FieldError("commit_delays", "required when node_count differs from the reference deployment");
  s.validate();
  return s;
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "node_count = " << s.node_count << "\n"
      << "endorser_count = " << s.endorser_count << "\n"
      << "tx_per_block = " << s.tx_per_block << "\n"
      << "block_count = " << s.block_count << "\n"
      << "commit_delays = ";
  for (std::size_t i = 0; i < s.commit_delays.size(); ++i) out << (i ? ", " : "") << format_double(s.commit_delays[i]);
  out << "\n"
      << "network_threshold = " << format_double(s.network_threshold) << "\n"
      << "error_rates = " << format_double(s.error_rates.consensus) << ", " << format_double(s.error_rates.syntax)
      << ", " << format_double(s.error_rates.version) << "\n"
      << "rng_seed = " << s.rng_seed << "\n"
      << "link_rate = " << format_double(s.link_rate) << "\n";
  return out.str();
}

NetworkModel NetworkModel::zero_cost() {
  NetworkModel m;
  m.endorse_base_s = 0;
  m.endorse_contention_s = 0;
  m.per_tx_processing_s = 0;
  m.congestion_per_tx_s = 0;
  m.read_lookup_s = 0;
  return m;
}

double NetworkModel::load_weight(std::size_t block_position) const {
  if (load_weights.empty() || load_segment_blocks == 0) return 1.0;
  const std::size_t segment = block_position == 0 ? 0 : (block_position - 1) / load_segment_blocks;
  return load_weights[std::min(segment, load_weights.size() - 1)];
}

std::size_t SimResult::committed_blocks() const {
  return static_cast<std::size_t>(std::count_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.committed; }));
}

std::size_t SimResult::committed_transactions() const {
  std::size_t n = 0;
  for (const auto& b : blocks)
    if (b.committed) n += b.tx_count;
  return n;
}

std::string SimResult::to_json() const {
  using nlohmann::json;
  json j;
  j["scenario"] = format_scenario(scenario);
  json blocks_json = json::array();
  for (const auto& b : blocks) {
    json jb{{"index", b.index},         {"initiator_node", b.initiator_node}, {"tx_count", b.tx_count},
            {"bytes", b.bytes},         {"submit", b.submit},                 {"endorse", b.endorse},
            {"committed", b.committed}, {"commit_times", b.commit_times}};
    jb["failure"] = b.failure ? json(std::string(to_string(*b.failure))) : json(nullptr);
    jb["reject_reason"] = b.reject_reason ? json(std::string(poa::to_string(*b.reject_reason))) : json(nullptr);
    jb["confirmation"] = b.confirmation ? json(*b.confirmation) : json(nullptr);
    blocks_json.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks_json);
  json reads_json = json::array();
  for (const auto& r : reads)
    reads_json.push_back({{"block", r.block}, {"node", r.node}, {"request", r.request}, {"response", r.response}});
  j["reads"] = std::move(reads_json);
  json events_json = json::array();
  for (const auto& e : events)
    events_json.push_back({e.time, std::string(to_string(e.kind)), e.node, e.subject});
  j["events"] = std::move(events_json);
  j["chain"] = {{"length", chain.size()}, {"tip", chain.tip().block_hash.hex()}};
  return j.dump();
}

namespace {

struct EventOrder {
  // priority_queue pops the largest; invert for earliest-first.
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    return std::tie(a.time, a.kind, a.node, a.subject) > std::tie(b.time, b.kind, b.node, b.subject);
  }
};

Bytes block_seed(std::uint64_t seed, std::string_view purpose, std::size_t index) {
  Bytes s;
  put_u64_be(s, seed);
  append(s, to_bytes(purpose));
  put_u64_be(s, index);
  return s;
}

identity::ProofMetrics node_credentials(std::size_t node) {
  static constexpr identity::Role kRoles[] = {identity::Role::kSupplier,    identity::Role::kManufacturer,
                                              identity::Role::kDistributor, identity::Role::kRetailer,
                                              identity::Role::kCustomer,    identity::Role::kLogistics};
  return {identity::DocumentType::kNationalId, to_bytes("PRODCHAIN simulated node " + std::to_string(node + 1)),
          kRoles[node % std::size(kRoles)]};
}

class Simulation {
 public:
  Simulation(const Scenario& s, const NetworkModel& m) : s_(s), m_(m) {
    result_.scenario = s;
    result_.chain = ledger::Chain::genesis();
    for (std::size_t i = 0; i < s.node_count; ++i) {
      wallets_.push_back(result_.chain.registry().register_stakeholder(node_credentials(i)));
      pubs_.push_back(wallets_.back().keys.public_key);
    }
    ratings_.resize(s.node_count);
    node_chain_length_.assign(s.node_count, ledger::kGenesisBlocks);
    node_read_free_.assign(s.node_count, 0.0);
    result_.blocks.resize(s.block_count);
    commit_counts_.assign(s.block_count, 0);
    required_commits_ = static_cast<std::size_t>(std::ceil(s.network_threshold * static_cast<double>(s.node_count) - 1e-9));
    required_commits_ = std::clamp<std::size_t>(required_commits_, 1, s.node_count);
  }

  SimResult run() {
    for (std::size_t k = 0; k < s_.block_count; ++k) {
      auto& b = result_.blocks[k];
      b.index = k;
      b.initiator_node = k % s_.node_count;
      b.tx_count = s_.tx_per_block;
      b.submit = 0.0;
      push({0.0, EventKind::kSubmit, b.initiator_node, k});
    }
    while (!queue_.empty()) {
      SimEvent e = queue_.top();
      queue_.pop();
      result_.events.push_back(e);
      switch (e.kind) {
        case EventKind::kSubmit: on_submit(e); break;
        case EventKind::kEndorse: on_endorse(e); break;
        case EventKind::kCommit: on_commit(e); break;
        case EventKind::kReadRequest: on_read_request(e); break;
        case EventKind::kReadResponse: result_.reads[e.subject].response = e.time; break;
      }
    }
    return std::move(result_);
  }

 private:
  void push(SimEvent e) { queue_.push(e); }

  double endorse_time() const {
    return m_.endorse_base_s + m_.endorse_contention_s * static_cast<double>(s_.endorser_count - 1);
  }

  void start(std::size_t k, double now) {
    orderer_busy_ = true;
    push({now + endorse_time(), EventKind::kEndorse, result_.blocks[k].initiator_node, k});
  }

  void on_submit(const SimEvent& e) {
    pending_.push_back(e.subject);
    if (!orderer_busy_) {
      const std::size_t k = pending_.front();
      pending_.pop_front();
      start(k, std::max(e.time, orderer_free_at_));
    }
  }

  Bytes product_data(std::size_t k) const {
    auto engine = seeded_engine(block_seed(s_.rng_seed, "records", k));
    const auto record = static_cast<std::size_t>(m_.tx_bytes);
    Bytes d;
    d.reserve(s_.tx_per_block * record);
    for (std::size_t t = 0; t < s_.tx_per_block; ++t) {
      put_u32_be(d, static_cast<std::uint32_t>(k));
      put_u32_be(d, static_cast<std::uint32_t>(t));
      while (d.size() < (t + 1) * record) d.push_back(static_cast<std::uint8_t>(engine()));
    }
    return d;
  }

  std::optional<FailureClass> draw_failure(std::size_t k) const {
    auto engine = seeded_engine(block_seed(s_.rng_seed, "failure", k));
    const double u = uniform_unit(engine);
    const double w = m_.load_weight(k + 1);
    const auto& r = s_.error_rates;
    if (u < r.consensus * w) return FailureClass::kConsensus;
    if (u < (r.consensus + r.syntax) * w) return FailureClass::kSyntax;
    if (u < r.total() * w) return FailureClass::kVersion;
    return std::nullopt;
  }

  void on_endorse(const SimEvent& e) {
    const std::size_t k = e.subject;
    auto& b = result_.blocks[k];
    b.endorse = e.time;
    const std::size_t initiator = b.initiator_node;
    const auto& wallet = wallets_[initiator];
    const auto injected = draw_failure(k);

    std::vector<algebra::GroupElement> receivers;
    for (std::size_t i = 0; i < s_.node_count; ++i)
      if (i != initiator) receivers.push_back(pubs_[i]);
    signcryption::Plaintext m{product_data(k), wallet.pseudo_id, wallet.keys.public_key};
    auto c = signcryption::signcrypt(wallet.keys, receivers, m, block_seed(s_.rng_seed, "signcrypt", k));
    if (injected == FailureClass::kSyntax) {
      // A corrupted signature field.
      const auto& g = algebra::TransparentGroup::standard();
      c.w = g.add(c.w, g.generator());
    }

    // Endorsers run the same pure check on the same proposal, so it is evaluated once.
    const bool signature_ok = signcryption::verify_only(wallet.keys.public_key, receivers, c);
    const auto access = poa::access_decision(ratings_[initiator]);
    std::vector<poa::EndorserView> views(s_.endorser_count, {signature_ok, access});
    if (injected == FailureClass::kConsensus) {
      // Endorsement policy not satisfied: a majority of endorsers fail to respond.
      const std::size_t silent = s_.endorser_count / 2 + 1;
      for (std::size_t i = 0; i < silent; ++i) views[i].signature_valid = false;
    }
    const auto verdict = poa::endorse_proposal(views);

    double free_at = e.time;
    std::optional<FailureClass> failure;
    if (!verdict.accepted) {
      b.reject_reason = verdict.reason;
      failure = injected.value_or(verdict.reason == poa::RejectReason::kSignature ? FailureClass::kSyntax
                                                                                  : FailureClass::kConsensus);
    } else {
      auto block = ledger::build_block(result_.chain, wallet, std::move(c), e.time);
      if (injected == FailureClass::kVersion) {
        // Proposal built against a stale view of the ledger.
        block.prev_hash = result_.chain.tip().prev_hash;
        block.block_hash = block.compute_hash();
      }
      b.bytes = block.encode().size();
      try {
        result_.chain.append(std::move(block));
      } catch (const FieldError&) {
        failure = FailureClass::kVersion;
      }
    }

    if (failure) {
      b.failure = failure;
    } else {
      b.committed = true;
      const double tx = static_cast<double>(s_.tx_per_block);
      const double serialization = std::isinf(s_.link_rate) ? 0.0 : static_cast<double>(b.bytes) * 8.0 / s_.link_rate;
      const double congestion = m_.congestion_per_tx_s * std::max(0.0, tx - m_.congestion_knee_tx);
      free_at = e.time + serialization + tx * (m_.per_tx_processing_s + congestion);
      b.commit_times.assign(s_.node_count, 0.0);
      auto jitter = seeded_engine(block_seed(s_.rng_seed, "jitter", k));
      for (std::size_t node = 0; node < s_.node_count; ++node) {
        double delay = s_.commit_delays[node];
        if (m_.commit_jitter) delay *= 0.9 + 0.2 * uniform_unit(jitter);
        push({free_at + delay, EventKind::kCommit, node, k});
      }
    }

    orderer_free_at_ = free_at;
    orderer_busy_ = false;
    if (!pending_.empty()) {
      const std::size_t next = pending_.front();
      pending_.pop_front();
      start(next, free_at);
    }
  }

  void on_commit(const SimEvent& e) {
    auto& b = result_.blocks[e.subject];
    b.commit_times[e.node] = e.time;
    ++node_chain_length_[e.node];
    if (++commit_counts_[e.subject] == required_commits_) {
      b.confirmation = e.time;
      auto engine = seeded_engine(block_seed(s_.rng_seed, "read", e.subject));
      const std::size_t reader = uniform_below(engine, s_.node_count);
      result_.reads.push_back({e.subject, reader, e.time, e.time});
      push({e.time, EventKind::kReadRequest, reader, result_.reads.size() - 1});
    }
  }

  void on_read_request(const SimEvent& e) {
    auto& r = result_.reads[e.subject];
    const auto& b = result_.blocks[r.block];
    const double lookup = m_.read_lookup_s * std::log2(static_cast<double>(node_chain_length_[e.node]));
    const double transfer = std::isinf(s_.link_rate) ? 0.0 : static_cast<double>(b.bytes) * 8.0 / s_.link_rate;
    const double begin = std::max(e.time, node_read_free_[e.node]);
    node_read_free_[e.node] = begin + lookup + transfer;
    push({node_read_free_[e.node], EventKind::kReadResponse, e.node, e.subject});
  }

  const Scenario& s_;
  const NetworkModel& m_;
  SimResult result_;
  std::vector<identity::StakeholderWallet> wallets_;
  std::vector<algebra::GroupElement> pubs_;
  std::vector<poa::RatingState> ratings_;
  std::vector<std::size_t> node_chain_length_;
  std::vector<double> node_read_free_;
  std::vector<std::size_t> commit_counts_;
  std::size_t required_commits_ = 1;
  std::priority_queue<SimEvent, std::vector<SimEvent>, EventOrder> queue_;
  std::deque<std::size_t> pending_;
  bool orderer_busy_ = false;
  double orderer_free_at_ = 0.0;
};

}  // namespace

SimResult run_scenario(const Scenario& s, const NetworkModel& model) {
  s.validate();
  return Simulation(s, model).run();
}

std::vector<ThroughputPoint> sweep_blocksize(const Scenario& base, const std::vector<std::size_t>& tx_counts,
                                             const NetworkModel& model) {
  if (tx_counts.empty()) throw InvalidInput("sweep_blocksize: no block sizes");
  for (auto n : tx_counts)
    if (n < 1 || n > 1000) throw FieldError("tx_per_block", "sweep values must be in [1, 1000]");
  std::vector<ThroughputPoint> curve;
  for (auto n : tx_counts) {
    Scenario s = base;
    s.tx_per_block = n;
    curve.push_back({static_cast<double>(n), metrics::transaction_throughput(run_scenario(s, model))});
  }
  return curve;
}

std::vector<ThroughputPoint> sweep_endorsers(const Scenario& base, const std::vector<std::size_t>& endorser_counts,
                                             const NetworkModel& model) {
  if (endorser_counts.empty()) throw InvalidInput("sweep_endorsers: no endorser counts");
  for (auto n : endorser_counts)
    if (n < 1 || n + 1 > base.node_count) throw FieldError("endorser_count", "sweep values must be in [1, node_count - 1]");
  std::vector<ThroughputPoint> curve;
  for (auto n : endorser_counts) {
    Scenario s = base;
    s.endorser_count = n;
    curve.push_back({static_cast<double>(n), metrics::transaction_throughput(run_scenario(s, model))});
  }
  return curve;
}

}  // namespace prodchain::netsim
