#pragma once

#include <concepts>
#include <cstdint>

#include "prodchain/bytes.hpp"

namespace prodchain::algebra {

struct GroupScalar {
  std::uint64_t value = 0;
  friend bool operator==(const GroupScalar&, const GroupScalar&) = default;
};

/// a*P in an additively written cyclic group of prime order `order`.
struct GroupElement {
  std::uint64_t value = 0;
  std::uint64_t order = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Element of the multiplicative target group of the pairing.
struct PairingOutput {
  std::uint64_t value = 1;
  friend bool operator==(const PairingOutput&, const PairingOutput&) = default;
};

/// Symmetric bilinear group realized "transparently": aP is stored as the scalar a and
/// e(aP, bP) = g^(ab) mod p, with g generating the order-q subgroup of Z_p^*.
/// Bilinear and non-degenerate, and trivially breakable: discrete logs are the stored
/// values. For verification and simulation only.
class TransparentGroup {
 public:
  /// Throws InvalidInput unless q and p are prime, q | p - 1 and g has order q.
  TransparentGroup(std::uint64_t order, std::uint64_t target_modulus, std::uint64_t target_generator);

  /// q = 9223372036854775073, p = 2q + 1, g = 4.
  static const TransparentGroup& standard();

  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t target_modulus() const noexcept { return modulus_; }

  GroupElement generator() const noexcept { return {1, order_}; }
  GroupElement identity() const noexcept { return {0, order_}; }
  GroupElement element(std::uint64_t discrete_log) const { return {discrete_log % order_, order_}; }
  GroupScalar scalar(std::uint64_t v) const { return {v % order_}; }
  bool contains(const GroupElement& e) const noexcept { return e.order == order_ && e.value < order_; }

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement mul(const GroupScalar& k, const GroupElement& e) const;
  GroupScalar scalar_mul(const GroupScalar& a, const GroupScalar& b) const;

  /// Throws InvalidInput if either element is not in this group.
  PairingOutput pairing(const GroupElement& a, const GroupElement& b) const;
  PairingOutput pow(const PairingOutput& x, const GroupScalar& k) const;
  PairingOutput target_identity() const noexcept { return {1}; }

  /// 8-byte little-endian discrete log.
  Bytes encode(const GroupElement& e) const;
  /// Throws DecodeError on short input or a value >= order.
  GroupElement decode(ByteView bytes) const;

 private:
  std::uint64_t order_;
  std::uint64_t modulus_;
  std::uint64_t generator_;
};

/// Operations signcryption relies on; alternative realizations plug in here.
template <typename G>
concept BilinearGroup = requires(const G& g, GroupElement e, GroupScalar s, PairingOutput t, ByteView b) {
  { g.order() } -> std::convertible_to<std::uint64_t>;
  { g.generator() } -> std::same_as<GroupElement>;
  { g.add(e, e) } -> std::same_as<GroupElement>;
  { g.mul(s, e) } -> std::same_as<GroupElement>;
  { g.pairing(e, e) } -> std::same_as<PairingOutput>;
  { g.pow(t, s) } -> std::same_as<PairingOutput>;
  { g.encode(e) } -> std::same_as<Bytes>;
  { g.decode(b) } -> std::same_as<GroupElement>;
};

static_assert(BilinearGroup<TransparentGroup>);

/// Free-function form used by higher layers.
inline PairingOutput pairing_eval(const GroupElement& a, const GroupElement& b,
                                  const TransparentGroup& group = TransparentGroup::standard()) {
  return group.pairing(a, b);
}

inline constexpr std::size_t kGroupElementBytes = 8;

}  // namespace prodchain::algebra
