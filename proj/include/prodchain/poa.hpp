#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace prodchain::poa {

struct PoAConfig {
  double upper_threshold_days = 0.0;
  int delta_r = -1;
  int max_rating = 5;
  double endorsement_quorum = 0.5;
  /// Consecutive on-time services needed to lift a severity-concern flag.
  int on_time_to_clear = 1;

  /// Throws InvalidInput when max_rating != 5, delta_r >= 0 or the quorum is outside (0, 1].
  void validate() const;
};

enum class ServiceType : std::uint8_t { kProduction, kWarehouse, kShipment, kTransport, kDelivery };

std::string_view to_string(ServiceType t);
ServiceType parse_service_type(std::string_view s);

struct ServiceRecord {
  ServiceType service_type = ServiceType::kProduction;
  double scheduled_days = 0.0;
  double actual_days = 0.0;
};

struct RatingState {
  int rating = 5;
  /// Publishing blocked until enough consecutive on-time services clear it.
  bool severity_concern = false;
  int on_time_streak = 0;
  std::vector<std::pair<ServiceRecord, int>> history;
};

/// 5 when actual - scheduled <= threshold, otherwise max(0, 5 + delta_r * late_days) with
/// late_days = ceil(actual - scheduled - threshold).
int evaluate_service(const ServiceRecord& record, const PoAConfig& cfg = {});

enum class Access { kAllow, kSeverityConcern };

Access access_decision(const RatingState& state);

RatingState update_rating(const RatingState& state, const ServiceRecord& record, const PoAConfig& cfg = {});

struct EndorserView {
  bool signature_valid = false;
  Access access = Access::kAllow;
};

enum class RejectReason { kSignature, kRating, kQuorum };

struct EndorsementOutcome {
  bool accepted = false;
  RejectReason reason = RejectReason::kQuorum;  // meaningful only when rejected
};

std::string_view to_string(RejectReason r);

/// Accepts when the share of views with a valid signature and allowed access reaches the
/// quorum. A rejection with no valid view reports whichever of signature / rating failed
/// more often (ties go to signature); otherwise it reports quorum.
/// Throws InvalidInput for an empty view list.
EndorsementOutcome endorse_proposal(std::span<const EndorserView> views, const PoAConfig& cfg = {});

}  // namespace prodchain::poa
