#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "prodchain/error.hpp"
#include "prodchain/metrics.hpp"
#include "prodchain/netsim.hpp"

using namespace prodchain;
using namespace prodchain::netsim;

namespace {

Scenario quiet(std::size_t blocks = 10) {
  Scenario s;
  s.block_count = blocks;
  s.error_rates = {0, 0, 0};
  return s;
}

std::string field_of(auto&& fn) {
  try {
    fn();
  } catch (const FieldError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("reference delays") {
  const auto& d = reference_commit_delays();
  REQUIRE(d.size() == 20);
  CHECK(*std::max_element(d.begin(), d.end()) == 11.01);
  CHECK(*std::min_element(d.begin(), d.end()) == 3.67);
  CHECK(d[9] == 11.01);
  CHECK(d[6] == 3.67);
}

TEST_CASE("scenario validation") {
  CHECK_NOTHROW(Scenario{}.validate());
  auto s = Scenario{};
  s.endorser_count = 20;
  CHECK(field_of([&] { s.validate(); }) == "endorser_count");
  s = {};
  s.commit_delays.pop_back();
  CHECK(field_of([&] { s.validate(); }) == "commit_delays");
  s = {};
  s.network_threshold = 0;
  CHECK(field_of([&] { s.validate(); }) == "network_threshold");
  s = {};
  s.error_rates = {0.6, 0.6, 0};
  CHECK(field_of([&] { s.validate(); }) == "error_rates");
  s = {};
  s.tx_per_block = 1001;
  CHECK(field_of([&] { s.validate(); }) == "tx_per_block");
  s = {};
  s.block_count = 0;
  CHECK(field_of([&] { s.validate(); }) == "block_count");
  s = {};
  s.link_rate = 0;
  CHECK(field_of([&] { s.validate(); }) == "link_rate");
}

TEST_CASE("scenario files") {
  Scenario s;
  s.block_count = 30;
  s.link_rate = std::numeric_limits<double>::infinity();
  s.error_rates = {0.01, 0.02, 0.005};
  s.rng_seed = 99;
  CHECK(parse_scenario(format_scenario(s)) == s);
  CHECK(parse_scenario("") == Scenario{});
  CHECK(parse_scenario("block_count = 5\n# note\n").block_count == 5);
  CHECK(field_of([] { parse_scenario("colour = red\n"); }) == "colour");
  CHECK(field_of([] { parse_scenario("block_count = 5\nblock_count = 6\n"); }) == "block_count");
  CHECK(field_of([] { parse_scenario("node_count = 4\n"); }) == "commit_delays");
  CHECK(field_of([] { parse_scenario("block_count = -3\n"); }) == "block_count");
  CHECK(field_of([] { parse_scenario("link_rate = fast\n"); }) == "link_rate");
  const auto small = parse_scenario("node_count = 3\nendorser_count = 2\ncommit_delays = 1, 2, 3\n");
  CHECK(small.commit_delays == std::vector<double>{1, 2, 3});
}

TEST_CASE("load weights average to one over 100 blocks") {
  const NetworkModel m;
  double sum = 0;
  for (std::size_t k = 1; k <= 100; ++k) sum += m.load_weight(k);
  CHECK(sum / 100 == doctest::Approx(1.0));
  CHECK(m.load_weight(1) == 0);
  CHECK(m.load_weight(50) == 0);
  CHECK(m.load_weight(51) > 0);
  CHECK(m.load_weight(500) == m.load_weight(100));
}

TEST_CASE("single block replay latency") {
  Scenario s = quiet(1);
  s.link_rate = std::numeric_limits<double>::infinity();
  const auto r = run_scenario(s, NetworkModel::zero_cost());
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].committed);
  CHECK(r.blocks[0].confirmation.value() == doctest::Approx(11.01).epsilon(1e-12));
  CHECK(*metrics::transaction_latency(r, 1.0).mean == doctest::Approx(11.01));
  CHECK(*metrics::transaction_latency(r, 0.05).mean == doctest::Approx(3.67));
}

TEST_CASE("no failures means full success") {
  const auto r = run_scenario(quiet(40));
  CHECK(metrics::success_rate(r) == 100.0);
  CHECK(r.chain.size() == 42);
  CHECK_FALSE(ledger::validate_chain(r.chain).has_value());
}

TEST_CASE("determinism") {
  Scenario s;
  s.block_count = 60;
  s.rng_seed = 17;
  CHECK(run_scenario(s).to_json() == run_scenario(s).to_json());
  auto t = s;
  t.rng_seed = 18;
  CHECK(run_scenario(s).to_json() != run_scenario(t).to_json());
}

TEST_CASE("each failure class is realized through the real checks") {
  for (auto cls : {FailureClass::kConsensus, FailureClass::kSyntax, FailureClass::kVersion}) {
    Scenario s = quiet(20);
    (cls == FailureClass::kConsensus ? s.error_rates.consensus
     : cls == FailureClass::kSyntax  ? s.error_rates.syntax
                                     : s.error_rates.version) = 1.0;
    NetworkModel flat;
    flat.load_weights = {1.0};
    const auto r = run_scenario(s, flat);
    CHECK(r.committed_blocks() == 0);
    for (const auto& b : r.blocks) {
      REQUIRE(b.failure == cls);
      if (cls == FailureClass::kSyntax) CHECK(b.reject_reason == poa::RejectReason::kSignature);
      if (cls == FailureClass::kConsensus) CHECK(b.reject_reason == poa::RejectReason::kQuorum);
      if (cls == FailureClass::kVersion) CHECK_FALSE(b.reject_reason.has_value());
    }
    CHECK(r.chain.size() == 2);
  }
}

TEST_CASE("event log ordering and reads") {
  const auto r = run_scenario(quiet(15));
  for (std::size_t i = 1; i < r.events.size(); ++i) REQUIRE(r.events[i - 1].time <= r.events[i].time);
  CHECK(r.reads.size() == r.committed_blocks());
  for (const auto& rd : r.reads) {
    CHECK(rd.response >= rd.request);
    CHECK(rd.request == *r.blocks[rd.block].confirmation);
  }
  for (const auto& b : r.blocks) CHECK(b.initiator_node == b.index % 20);
}

TEST_CASE("blocksize sweep shape") {
  const std::vector<std::size_t> sizes{1, 10, 100, 250, 600, 800, 1000};
  const auto curve = sweep_blocksize(quiet(100), sizes);
  REQUIRE(curve.size() == sizes.size());
  const auto peak = std::max_element(curve.begin(), curve.end(), [](auto& a, auto& b) { return a.tps < b.tps; });
  CHECK(peak->x <= 600);
  for (auto it = curve.begin(); it != peak; ++it) CHECK(it->tps < std::next(it)->tps);
  for (auto it = peak; std::next(it) != curve.end(); ++it) CHECK(it->tps > std::next(it)->tps);
  CHECK(curve.back().tps <= 0.9 * peak->tps);
  const NetworkModel m;
  const double capacity = Scenario{}.link_rate / (8.0 * m.tx_bytes);
  for (const auto& p : curve) CHECK(p.tps <= capacity);

  CHECK(sweep_blocksize(quiet(10), {50}).size() == 1);
  CHECK(field_of([] { sweep_blocksize(Scenario{}, {0}); }) == "tx_per_block");
  CHECK(field_of([] { sweep_blocksize(Scenario{}, {1001}); }) == "tx_per_block");
}

TEST_CASE("endorser sweep") {
  std::vector<std::size_t> counts;
  for (std::size_t e = 1; e <= 19; ++e) counts.push_back(e);
  const auto curve = sweep_endorsers(quiet(100), counts);
  CHECK(curve.front().tps == std::max_element(curve.begin(), curve.end(), [](auto& a, auto& b) { return a.tps < b.tps; })->tps);
  const double decline = 1.0 - curve.back().tps / curve.front().tps;
  CHECK(decline > 0);
  CHECK(decline <= 0.03);

  NetworkModel flat;
  flat.endorse_contention_s = 0;
  const auto level = sweep_endorsers(quiet(20), {1, 5, 19}, flat);
  CHECK(level[0].tps == level[1].tps);
  CHECK(level[1].tps == level[2].tps);
  CHECK(field_of([] { sweep_endorsers(Scenario{}, {20}); }) == "endorser_count");
}
