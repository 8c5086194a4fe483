#include <algorithm>

#include "doctest.h"
#include "prodchain/error.hpp"
#include "prodchain/poa.hpp"

using namespace prodchain;
using namespace prodchain::poa;

namespace {
ServiceRecord late(double days, ServiceType t = ServiceType::kDelivery) { return {t, 10.0, 10.0 + days}; }

std::vector<EndorserView> views(int valid, int bad_sig, int bad_rating) {
  std::vector<EndorserView> v;
  for (int i = 0; i < valid; ++i) v.push_back({true, Access::kAllow});
  for (int i = 0; i < bad_sig; ++i) v.push_back({false, Access::kAllow});
  for (int i = 0; i < bad_rating; ++i) v.push_back({true, Access::kSeverityConcern});
  return v;
}
}  // namespace

TEST_CASE("evaluate_service") {
  CHECK(evaluate_service(late(0)) == 5);
  CHECK(evaluate_service(late(-3)) == 5);
  CHECK(evaluate_service(late(2)) == 3);
  CHECK(evaluate_service(late(9)) == 0);
  CHECK(evaluate_service(late(0.2)) == 4);  // a started day counts
  for (int d = 0; d <= 10; ++d) CHECK(evaluate_service(late(d)) == std::max(0, 5 - d));

  PoAConfig grace;
  grace.upper_threshold_days = 2;
  CHECK(evaluate_service(late(2), grace) == 5);
  CHECK(evaluate_service(late(3), grace) == 4);

  PoAConfig steep;
  steep.delta_r = -2;
  CHECK(evaluate_service(late(2), steep) == 1);

  CHECK_THROWS_AS(evaluate_service({ServiceType::kShipment, -1, 0}), InvalidInput);
  PoAConfig bad;
  bad.delta_r = 1;
  CHECK_THROWS_AS(evaluate_service(late(1), bad), InvalidInput);
  bad = {};
  bad.max_rating = 10;
  CHECK_THROWS_AS(evaluate_service(late(1), bad), InvalidInput);
}

TEST_CASE("access_decision") {
  RatingState s;
  CHECK(access_decision(s) == Access::kAllow);
  s.rating = 1;
  CHECK(access_decision(s) == Access::kAllow);
  s.rating = 0;
  CHECK(access_decision(s) == Access::kSeverityConcern);
}

TEST_CASE("update_rating") {
  RatingState s = update_rating({}, late(0));
  CHECK(s.rating == 5);
  CHECK(s.history.size() == 1);

  s = update_rating(s, late(3));
  CHECK(s.rating == 2);
  s = update_rating(s, late(0));
  CHECK(s.rating == 5);
  CHECK(s.history.size() == 3);

  s = update_rating(s, late(7));
  CHECK(s.rating == 0);
  CHECK(s.severity_concern);
  s = update_rating(s, late(1));
  CHECK(s.rating == 4);
  CHECK(access_decision(s) == Access::kSeverityConcern);  // flag persists until an on-time service
  s = update_rating(s, late(0));
  CHECK(access_decision(s) == Access::kAllow);
  CHECK(s.history.size() == 6);

  PoAConfig strict;
  strict.on_time_to_clear = 2;
  RatingState t = update_rating({}, late(6), strict);
  t = update_rating(t, late(0), strict);
  CHECK(access_decision(t) == Access::kSeverityConcern);
  t = update_rating(t, late(0), strict);
  CHECK(access_decision(t) == Access::kAllow);
}

TEST_CASE("service type names") {
  for (int i = 0; i < 5; ++i) CHECK(parse_service_type(to_string(static_cast<ServiceType>(i))) == static_cast<ServiceType>(i));
  CHECK_THROWS_AS(parse_service_type("teleport"), FieldError);
}

TEST_CASE("endorse_proposal") {
  CHECK(endorse_proposal(views(19, 0, 0)).accepted);
  auto out = endorse_proposal(views(0, 19, 0));
  CHECK_FALSE(out.accepted);
  CHECK(out.reason == RejectReason::kSignature);
  out = endorse_proposal(views(0, 4, 15));
  CHECK(out.reason == RejectReason::kRating);
  out = endorse_proposal(views(0, 5, 5));
  CHECK(out.reason == RejectReason::kSignature);
  out = endorse_proposal(views(9, 10, 0));
  CHECK_FALSE(out.accepted);
  CHECK(out.reason == RejectReason::kQuorum);
  CHECK(endorse_proposal(views(10, 9, 0)).accepted);
  CHECK(endorse_proposal(views(1, 1, 0)).accepted);  // exactly half

  PoAConfig unanimous;
  unanimous.endorsement_quorum = 1.0;
  CHECK_FALSE(endorse_proposal(views(18, 1, 0), unanimous).accepted);
  CHECK_THROWS_AS(endorse_proposal(std::vector<EndorserView>{}), InvalidInput);
  PoAConfig zero;
  zero.endorsement_quorum = 0;
  CHECK_THROWS_AS(endorse_proposal(views(1, 0, 0), zero), InvalidInput);
  CHECK(to_string(RejectReason::kQuorum) == "quorum");
}
