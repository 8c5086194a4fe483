#include "prodchain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "prodchain/error.hpp"

namespace prodchain::metrics {

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::size_t required_commits(double threshold, std::size_t nodes) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidInput("threshold must be in (0, 1]");
  auto k = static_cast<std::size_t>(std::ceil(threshold * static_cast<double>(nodes) - 1e-9));
  return std::clamp<std::size_t>(k, 1, nodes);
}

}  // namespace

std::optional<double> read_latency(const netsim::SimResult& result) {
  if (result.reads.empty()) return std::nullopt;
  std::vector<double> v;
  for (const auto& r : result.reads) v.push_back(r.response - r.request);
  return mean(v);
}

double rate(std::size_t count, double span_seconds) {
  if (count == 0) return 0.0;
  if (!(span_seconds > 0.0)) throw InvalidInput("throughput over a zero time span");
  return static_cast<double>(count) / span_seconds;
}

double read_throughput(const netsim::SimResult& result) {
  if (result.reads.empty()) return 0.0;
  double first = std::numeric_limits<double>::infinity(), last = -first;
  for (const auto& r : result.reads) {
    first = std::min(first, r.request);
    last = std::max(last, r.response);
  }
  return rate(result.reads.size(), last - first);
}

std::optional<double> confirmation_time(const netsim::BlockOutcome& block, double threshold) {
  if (!block.committed || block.commit_times.empty()) return std::nullopt;
  auto times = block.commit_times;
  const auto k = required_commits(threshold, times.size());
  std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(k - 1), times.end());
  return times[k - 1];
}

LatencySummary transaction_latency(const netsim::SimResult& result, double threshold) {
  LatencySummary out;
  std::vector<double> v;
  for (const auto& b : result.blocks) {
    if (!b.committed) continue;
    if (auto c = confirmation_time(b, threshold))
      v.push_back(*c - b.submit);
    else
      ++out.unconfirmed;
  }
  if (!v.empty()) {
    out.mean = mean(v);
    out.median = median(v);
  }
  return out;
}

LatencySummary transaction_latency(const netsim::SimResult& result) {
  return transaction_latency(result, result.scenario.network_threshold);
}

double transaction_span(const netsim::SimResult& result) {
  double first = std::numeric_limits<double>::infinity(), last = -first;
  for (const auto& b : result.blocks) {
    first = std::min(first, b.submit);
    if (auto c = confirmation_time(b, result.scenario.network_threshold)) last = std::max(last, *c);
  }
  return last > first ? last - first : 0.0;
}

double transaction_throughput(const netsim::SimResult& result) {
  return rate(result.committed_transactions(), transaction_span(result));
}

double block_throughput(const netsim::SimResult& result) {
  return rate(result.committed_blocks(), transaction_span(result));
}

double success_rate(std::size_t attempted, std::size_t committed) {
  if (committed > attempted) throw InvalidInput("more blocks committed than attempted");
  if (attempted == 0) return 0.0;
  return 100.0 * static_cast<double>(committed) / static_cast<double>(attempted);
}

double success_rate(const netsim::SimResult& result) {
  return success_rate(result.blocks.size(), result.committed_blocks());
}

MetricReport summarize(const netsim::SimResult& result, std::string group_key, double group_value) {
  MetricReport r;
  r.group_key = std::move(group_key);
  r.group_value = group_value;
  r.read_latency_s = read_latency(result);
  if (!result.reads.empty()) {
    std::vector<double> v;
    for (const auto& rd : result.reads) v.push_back(rd.response - rd.request);
    r.read_latency_median_s = median(v);
  }
  r.read_throughput_rps = read_throughput(result);
  auto lat = transaction_latency(result);
  r.tx_latency_s = lat.mean;
  r.tx_latency_median_s = lat.median;
  r.tx_throughput_tps = transaction_throughput(result);
  r.block_throughput_bps = block_throughput(result);
  r.success_rate_pct = success_rate(result);
  return r;
}

MetricReport average(const std::vector<MetricReport>& reports) {
  if (reports.empty()) throw InvalidInput("average of no reports");
  MetricReport out = reports.front();
  const double n = static_cast<double>(reports.size());
  auto avg = [&](auto member) {
    double s = 0;
    for (const auto& r : reports) s += r.*member;
    return s / n;
  };
  auto avg_opt = [&](auto member) -> std::optional<double> {
    double s = 0;
    for (const auto& r : reports) {
      if (!(r.*member)) return std::nullopt;
      s += *(r.*member);
    }
    return s / n;
  };
  out.read_latency_s = avg_opt(&MetricReport::read_latency_s);
  out.read_latency_median_s = avg_opt(&MetricReport::read_latency_median_s);
  out.read_throughput_rps = avg(&MetricReport::read_throughput_rps);
  out.tx_latency_s = avg_opt(&MetricReport::tx_latency_s);
  out.tx_latency_median_s = avg_opt(&MetricReport::tx_latency_median_s);
  out.tx_throughput_tps = avg(&MetricReport::tx_throughput_tps);
  out.block_throughput_bps = avg(&MetricReport::block_throughput_bps);
  out.success_rate_pct = avg(&MetricReport::success_rate_pct);
  out.r2_log_fit = avg_opt(&MetricReport::r2_log_fit);
  out.r2_nlog_fit = avg_opt(&MetricReport::r2_nlog_fit);
  return out;
}

double log_model(double n) { return std::log(n); }
double nlog_model(double n) { return n * std::log(n); }

std::optional<double> r_squared(const std::vector<double>& x, const std::vector<double>& y, double (*f)(double)) {
  if (x.size() != y.size() || x.size() < 3) return std::nullopt;
  std::vector<double> fx;
  for (double v : x) fx.push_back(f(v));
  const double mx = mean(fx), my = mean(y);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    sxx += (fx[i] - mx) * (fx[i] - mx);
    sxy += (fx[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy * sxy / (sxx * syy);
}

void attach_fits(std::vector<MetricReport>& reports) {
  std::vector<double> x, read, tx;
  for (const auto& r : reports) {
    if (!r.read_latency_s || !r.tx_latency_s) return;
    x.push_back(r.group_value);
    read.push_back(*r.read_latency_s);
    tx.push_back(*r.tx_latency_s);
  }
  const auto log_fit = r_squared(x, read, log_model);
  const auto nlog_fit = r_squared(x, tx, nlog_model);
  for (auto& r : reports) {
    r.r2_log_fit = log_fit;
    r.r2_nlog_fit = nlog_fit;
  }
}

std::vector<MetricReport> bench_block_counts(const netsim::Scenario& base, std::uint64_t first_seed, std::size_t reps,
                                             const netsim::NetworkModel& model,
                                             const std::vector<std::size_t>& block_counts) {
  if (reps == 0) throw InvalidInput("bench: reps must be positive");
  if (block_counts.empty()) throw InvalidInput("bench: no block counts");
  std::vector<MetricReport> rows;
  for (auto count : block_counts) {
    std::vector<MetricReport> runs;
    for (std::size_t i = 0; i < reps; ++i) {
      netsim::Scenario s = base;
      s.block_count = count;
      s.rng_seed = first_seed + i;
      runs.push_back(summarize(netsim::run_scenario(s, model), "block_count", static_cast<double>(count)));
    }
    rows.push_back(average(runs));
  }
  return rows;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fixed2(const std::optional<double>& v) { return v ? fixed2(*v) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string format_group_value(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  return fixed2(v);
}

}  // namespace

std::string render(const std::vector<MetricReport>& reports, Format format) {
  if (reports.empty()) throw InvalidInput("nothing to export");
  std::ostringstream out;
  if (format == Format::kCsv) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : reports) {
      out << r.group_key << ',' << format_group_value(r.group_value) << ',' << fixed2(r.read_latency_s) << ','
          << fixed2(r.read_throughput_rps) << ',' << fixed2(r.tx_latency_s) << ',' << fixed2(r.tx_throughput_tps)
          << ',' << fixed2(r.success_rate_pct) << ',' << fixed2(r.r2_log_fit) << ',' << fixed2(r.r2_nlog_fit) << "\n";
    }
  } else {
    for (const auto& r : reports) {
      nlohmann::ordered_json j;
      j["group_key"] = r.group_key;
      j["group_value"] = r.group_value;
      j["read_latency_s"] = opt_json(r.read_latency_s);
      j["read_latency_median_s"] = opt_json(r.read_latency_median_s);
      j["read_throughput_rps"] = r.read_throughput_rps;
      j["tx_latency_s"] = opt_json(r.tx_latency_s);
      j["tx_latency_median_s"] = opt_json(r.tx_latency_median_s);
      j["tx_throughput_tps"] = r.tx_throughput_tps;
      j["block_throughput_bps"] = r.block_throughput_bps;
      j["success_rate_pct"] = r.success_rate_pct;
      j["r2_log_fit"] = opt_json(r.r2_log_fit);
      j["r2_nlog_fit"] = opt_json(r.r2_nlog_fit);
      out << j.dump() << "\n";
    }
  }
  return out.str();
}

std::vector<MetricReport> parse_json_lines(const std::string& text) {
  std::vector<MetricReport> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    MetricReport r;
    r.group_key = j.at("group_key").get<std::string>();
    r.group_value = j.at("group_value").get<double>();
    r.read_latency_s = opt_from(j, "read_latency_s");
    r.read_latency_median_s = opt_from(j, "read_latency_median_s");
    r.read_throughput_rps = j.at("read_throughput_rps").get<double>();
    r.tx_latency_s = opt_from(j, "tx_latency_s");
    r.tx_latency_median_s = opt_from(j, "tx_latency_median_s");
    r.tx_throughput_tps = j.at("tx_throughput_tps").get<double>();
    r.block_throughput_bps = j.at("block_throughput_bps").get<double>();
    r.success_rate_pct = j.at("success_rate_pct").get<double>();
    r.r2_log_fit = opt_from(j, "r2_log_fit");
    r.r2_nlog_fit = opt_from(j, "r2_nlog_fit");
    out.push_back(std::move(r));
  }
  return out;
}

void export_reports(const std::vector<MetricReport>& reports, Format format, const std::string& path) {
  const std::string text = render(reports, format);
  write_file(path, ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace prodchain::metrics
