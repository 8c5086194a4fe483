#include "prodchain/poa.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "prodchain/error.hpp"

namespace prodchain::poa {

namespace {
constexpr std::array<std::string_view, 5> kServiceNames{"production", "warehouse", "shipment", "transport", "delivery"};
}

void PoAConfig::validate() const {
  if (max_rating != 5) throw InvalidInput("max_rating must be 5");
  if (delta_r >= 0) throw InvalidInput("delta_r must be negative");
  if (!(endorsement_quorum > 0.0 && endorsement_quorum <= 1.0)) throw InvalidInput("endorsement_quorum must be in (0, 1]");
  if (!(upper_threshold_days >= 0.0)) throw InvalidInput("upper_threshold must be >= 0");
  if (on_time_to_clear < 1) throw InvalidInput("on_time_to_clear must be >= 1");
}

std::string_view to_string(ServiceType t) { return kServiceNames.at(static_cast<std::size_t>(t)); }

ServiceType parse_service_type(std::string_view s) {
  for (std::size_t i = 0; i < kServiceNames.size(); ++i)
    if (kServiceNames[i] == s) return static_cast<ServiceType>(i);
  throw FieldError("service_type", "unknown service type '" + std::string(s) + "'");
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kSignature: return "signature";
    case RejectReason::kRating: return "rating";
    case RejectReason::kQuorum: return "quorum";
  }
  return "unknown";
}

int evaluate_service(const ServiceRecord& record, const PoAConfig& cfg) {
  cfg.validate();
  if (!(record.actual_days >= 0.0) || !(record.scheduled_days >= 0.0))
    throw InvalidInput("service times must be non-negative");
  const double excess = record.actual_days - record.scheduled_days - cfg.upper_threshold_days;
  if (excess <= 0.0) return cfg.max_rating;
  const double late_days = std::ceil(excess);
  return static_cast<int>(std::max(0.0, cfg.max_rating + cfg.delta_r * late_days));
}

Access access_decision(const RatingState& state) {
  return state.rating > 0 && !state.severity_concern ? Access::kAllow : Access::kSeverityConcern;
}

RatingState update_rating(const RatingState& state, const ServiceRecord& record, const PoAConfig& cfg) {
  RatingState next = state;
  next.rating = evaluate_service(record, cfg);
  if (next.rating == cfg.max_rating)
    ++next.on_time_streak;
  else
    next.on_time_streak = 0;
  if (next.rating == 0) next.severity_concern = true;
  if (next.severity_concern && next.on_time_streak >= cfg.on_time_to_clear) next.severity_concern = false;
  next.history.emplace_back(record, next.rating);
  return next;
}

EndorsementOutcome endorse_proposal(std::span<const EndorserView> views, const PoAConfig& cfg) {
  cfg.validate();
  if (views.empty()) throw InvalidInput("endorse_proposal: no endorser views");
  std::size_t valid = 0, bad_signature = 0, bad_rating = 0;
  for (const auto& v : views) {
    if (!v.signature_valid)
      ++bad_signature;
    else if (v.access != Access::kAllow)
      ++bad_rating;
    else
      ++valid;
  }
  const double share = static_cast<double>(valid) / static_cast<double>(views.size());
  if (share >= cfg.endorsement_quorum) return {true, RejectReason::kQuorum};
  if (valid == 0) return {false, bad_signature >= bad_rating ? RejectReason::kSignature : RejectReason::kRating};
  return {false, RejectReason::kQuorum};
}

}  // namespace prodchain::poa
