#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prodchain/ledger.hpp"
#include "prodchain/poa.hpp"

namespace prodchain::netsim {

/// Per-node commit times of the 20-node reference deployment, seconds.
inline const std::vector<double>& reference_commit_delays() {
  static const std::vector<double> delays{6.43, 7.33, 4.66, 4.00, 6.00, 5.33, 3.67, 5.33, 9.88, 11.01,
                                          6.67, 7.01, 6.50, 7.00, 10.33, 10.33, 9.80, 7.66, 5.33, 5.00};
  return delays;
}

enum class FailureClass : std::uint8_t { kConsensus, kSyntax, kVersion };
std::string_view to_string(FailureClass c);

struct ErrorRates {
  // Mean per-block probabilities over a 100-block run; see NetworkModel::load_weights.
  double consensus = 0.0052 / 3;
  double syntax = 0.0052 / 3;
  double version = 0.0052 / 3;
  double total() const { return consensus + syntax + version; }
  friend bool operator==(const ErrorRates&, const ErrorRates&) = default;
};

struct Scenario {
  std::size_t node_count = 20;
  std::size_t endorser_count = 19;
  std::size_t tx_per_block = 10;
  std::size_t block_count = 100;
  std::vector<double> commit_delays = reference_commit_delays();
  double network_threshold = 1.0;
  ErrorRates error_rates;
  std::uint64_t rng_seed = 0;
  double link_rate = 120'000.0;  // bits per second; infinity disables serialization cost

  /// Throws FieldError naming the offending field.
  void validate() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Flat `key = value` document; keys are the Scenario field names. Lists are comma
/// separated (error_rates is consensus,syntax,version). Missing keys keep their defaults;
/// unknown or repeated keys are rejected.
Scenario parse_scenario(std::string_view text);
std::string format_scenario(const Scenario& s);

/// Timing and failure model behind the scenario. Not part of the scenario file.
struct NetworkModel {
  double tx_bytes = 48;                  // size of one synthetic transaction record
  double endorse_base_s = 0.05;          // endorsement work per block
  double endorse_contention_s = 0.00037; // extra per endorser beyond the first (shared hosts)
  double per_tx_processing_s = 0.0003;
  double congestion_knee_tx = 600;
  double congestion_per_tx_s = 2.5e-6;   // per tx, per tx beyond the knee
  double read_lookup_s = 0.5;            // times log2(local chain length)
  bool commit_jitter = false;            // seeded uniform +-10% on commit delays
  /// Relative failure hazard for blocks 1-10, 11-20, ... of a run (mean 1 over 100 blocks);
  /// the last weight applies past the end. Derived from success rates measured at
  /// 10..100 blocks: 100, 100, 100, 100, 100, 99.9, 99.87, 99.6, 99.5, 99.48 percent.
  std::vector<double> load_weights{0, 0, 0, 0, 0, 0.006 / 0.0052, 0.0031 / 0.0052, 0.0229 / 0.0052,
                                   0.013 / 0.0052, 0.007 / 0.0052};
  std::size_t load_segment_blocks = 10;

  /// No endorsement, processing, congestion or lookup cost.
  static NetworkModel zero_cost();
  double load_weight(std::size_t block_position) const;
};

enum class EventKind : std::uint8_t { kSubmit = 0, kEndorse = 1, kCommit = 2, kReadRequest = 3, kReadResponse = 4 };
std::string_view to_string(EventKind k);

struct SimEvent {
  double time = 0;
  EventKind kind = EventKind::kSubmit;
  std::size_t node = 0;
  std::size_t subject = 0;  // block index or read id
  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct BlockOutcome {
  std::size_t index = 0;
  std::size_t initiator_node = 0;
  std::size_t tx_count = 0;
  std::size_t bytes = 0;
  double submit = 0;
  double endorse = 0;
  bool committed = false;
  std::optional<FailureClass> failure;
  std::optional<poa::RejectReason> reject_reason;
  std::vector<double> commit_times;  // by node; empty when not committed
  std::optional<double> confirmation;  // at the scenario's network threshold
};

struct ReadOutcome {
  std::size_t block = 0;
  std::size_t node = 0;
  double request = 0;
  double response = 0;
};

struct SimResult {
  Scenario scenario;
  std::vector<BlockOutcome> blocks;
  std::vector<ReadOutcome> reads;
  std::vector<SimEvent> events;
  ledger::Chain chain;

  std::size_t committed_blocks() const;
  std::size_t committed_transactions() const;
  /// Canonical JSON text; identical scenarios give identical strings.
  std::string to_json() const;
};

/// Runs the scenario to completion. Throws FieldError for an invalid scenario.
SimResult run_scenario(const Scenario& s, const NetworkModel& model = {});

struct ThroughputPoint {
  double x = 0;
  double tps = 0;
};

/// Transactions per second per block size. Counts must lie in [1, 1000].
std::vector<ThroughputPoint> sweep_blocksize(const Scenario& base, const std::vector<std::size_t>& tx_counts,
                                             const NetworkModel& model = {});
/// Transactions per second per endorser count. Counts must lie in [1, node_count - 1].
std::vector<ThroughputPoint> sweep_endorsers(const Scenario& base, const std::vector<std::size_t>& endorser_counts,
                                             const NetworkModel& model = {});

}  // namespace prodchain::netsim
