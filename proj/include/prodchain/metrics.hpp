#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prodchain/netsim.hpp"

namespace prodchain::metrics {

/// Mean of (response - request) over completed reads; nullopt with no reads.
std::optional<double> read_latency(const netsim::SimResult& result);
/// Reads / (last response - first request). 0 with no reads; throws InvalidInput on a zero span.
double read_throughput(const netsim::SimResult& result);

/// Per block, the time at which ceil(threshold * node_count) nodes had committed.
std::optional<double> confirmation_time(const netsim::BlockOutcome& block, double threshold);

struct LatencySummary {
  std::optional<double> mean;
  std::optional<double> median;
  std::size_t unconfirmed = 0;  // committed blocks that never reached the threshold
};

/// Mean of (confirmation @ threshold - submit) over committed blocks.
LatencySummary transaction_latency(const netsim::SimResult& result, double threshold);
/// Uses the scenario's network_threshold.
LatencySummary transaction_latency(const netsim::SimResult& result);

/// Seconds from the first submission to the last confirmation at the scenario threshold.
double transaction_span(const netsim::SimResult& result);
/// Committed transactions / span, network wide. 0 when nothing committed.
double transaction_throughput(const netsim::SimResult& result);
/// Committed blocks / span.
double block_throughput(const netsim::SimResult& result);
/// count / span_seconds; throws InvalidInput when span_seconds <= 0 and count > 0.
double rate(std::size_t count, double span_seconds);

double success_rate(const netsim::SimResult& result);
/// committed / attempted * 100; 0 when attempted is 0.
double success_rate(std::size_t attempted, std::size_t committed);

struct MetricReport {
  std::string group_key;  // block_count | tx_per_block | endorsers
  double group_value = 0;
  std::optional<double> read_latency_s;
  std::optional<double> read_latency_median_s;
  double read_throughput_rps = 0;
  std::optional<double> tx_latency_s;
  std::optional<double> tx_latency_median_s;
  double tx_throughput_tps = 0;
  double block_throughput_bps = 0;  // blocks per second
  double success_rate_pct = 0;
  std::optional<double> r2_log_fit;
  std::optional<double> r2_nlog_fit;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

MetricReport summarize(const netsim::SimResult& result, std::string group_key, double group_value);
/// Field-wise mean of reports for the same group (repeated seeds); absent values stay
/// absent unless present in every report.
MetricReport average(const std::vector<MetricReport>& reports);

/// R^2 of the least-squares fit y = a + b*f(x).
std::optional<double> r_squared(const std::vector<double>& x, const std::vector<double>& y, double (*f)(double));
double log_model(double n);
double nlog_model(double n);
/// Fills r2_log_fit (read latency vs log n) and r2_nlog_fit (tx latency vs n log n) on every row.
void attach_fits(std::vector<MetricReport>& reports);

/// One averaged row per block count (10, 20, ..., 100 by default), each over seeds
/// first_seed .. first_seed + reps - 1. Rows are grouped by block_count.
std::vector<MetricReport> bench_block_counts(const netsim::Scenario& base, std::uint64_t first_seed, std::size_t reps,
                                             const netsim::NetworkModel& model = {},
                                             const std::vector<std::size_t>& block_counts = {10, 20, 30, 40, 50, 60,
                                                                                             70, 80, 90, 100});

enum class Format { kCsv, kJsonLines };

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"group_key",         "group_value",      "read_latency_s",
                                             "read_throughput_rps", "tx_latency_s",    "tx_throughput_tps",
                                             "success_rate_pct",  "r2_log_fit",       "r2_nlog_fit"};
  return cols;
}

/// CSV: the documented columns, numbers fixed to 2 decimals, absent values empty.
/// JSON lines: every MetricReport field, full precision, absent values null.
std::string render(const std::vector<MetricReport>& reports, Format format);
std::vector<MetricReport> parse_json_lines(const std::string& text);
/// Writes render(reports, format); throws IoError when the destination is not writable.
void export_reports(const std::vector<MetricReport>& reports, Format format, const std::string& path);

}  // namespace prodchain::metrics
