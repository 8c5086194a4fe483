#include "prodchain/algebra/group.hpp"

#include "prodchain/algebra/ring.hpp"
#include "prodchain/error.hpp"

namespace prodchain::algebra {

namespace {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  for (; exp; exp >>= 1, base = mulmod(base, base, m))
    if (exp & 1) r = mulmod(r, base, m);
  return r;
}
}  // namespace

TransparentGroup::TransparentGroup(std::uint64_t order, std::uint64_t target_modulus, std::uint64_t target_generator)
    : order_(order), modulus_(target_modulus), generator_(target_generator) {
  if (!is_prime(order_)) throw InvalidInput("group order must be prime");
  if (!is_prime(modulus_)) throw InvalidInput("target modulus must be prime");
  if ((modulus_ - 1) % order_ != 0) throw InvalidInput("group order must divide target modulus - 1");
  if (generator_ <= 1 || generator_ >= modulus_ || powmod(generator_, order_, modulus_) != 1)
    throw InvalidInput("target generator must have order q");
}

const TransparentGroup& TransparentGroup::standard() {
  static const TransparentGroup group(9223372036854775073ull, 18446744073709550147ull, 4);
  return group;
}

namespace {
void require_member(const TransparentGroup& g, const GroupElement& e) {
  if (!g.contains(e)) throw InvalidInput("group element not in this group (order mismatch)");
}
}  // namespace

GroupElement TransparentGroup::add(const GroupElement& a, const GroupElement& b) const {
  require_member(*this, a);
  require_member(*this, b);
  std::uint64_t s = a.value + b.value;  // both < 2^63, no overflow
  return {s >= order_ ? s - order_ : s, order_};
}

GroupElement TransparentGroup::mul(const GroupScalar& k, const GroupElement& e) const {
  require_member(*this, e);
  return {mulmod(k.value % order_, e.value, order_), order_};
}

GroupScalar TransparentGroup::scalar_mul(const GroupScalar& a, const GroupScalar& b) const {
  return {mulmod(a.value % order_, b.value % order_, order_)};
}

PairingOutput TransparentGroup::pairing(const GroupElement& a, const GroupElement& b) const {
  require_member(*this, a);
  require_member(*this, b);
  return {powmod(generator_, mulmod(a.value, b.value, order_), modulus_)};
}

PairingOutput TransparentGroup::pow(const PairingOutput& x, const GroupScalar& k) const {
  return {powmod(x.value, k.value % order_, modulus_)};
}

Bytes TransparentGroup::encode(const GroupElement& e) const {
  require_member(*this, e);
  Bytes out;
  put_u64_le(out, e.value);
  return out;
}

GroupElement TransparentGroup::decode(ByteView bytes) const {
  ByteReader in(bytes);
  std::uint64_t v = in.u64_le();
  in.expect_end();
  if (v >= order_) throw DecodeError("group element out of range");
  return {v, order_};
}

}  // namespace prodchain::algebra
