#include "prodchain/signcryption.hpp"

#include "prodchain/error.hpp"
#include "prodchain/seeded.hpp"

namespace prodchain::signcryption {

namespace {
constexpr std::size_t kDigestBytes = 32;

void xor_into(Bytes& dst, ByteView src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}
}  // namespace

Bytes Plaintext::encode(const TransparentGroup& group) const {
  if (iden_p.size() != kDigestBytes) throw InvalidInput("pseudo-identity must be 32 bytes");
  Bytes out;
  put_u32_be(out, static_cast<std::uint32_t>(d.size()));
  append(out, d);
  append(out, iden_p);
  append(out, group.encode(initiator_pub));
  return out;
}

Plaintext Plaintext::decode(ByteView bytes, const TransparentGroup& group) {
  ByteReader in(bytes);
  Plaintext m;
  const auto len = in.u32_be();
  auto d = in.take(len);
  m.d.assign(d.begin(), d.end());
  auto id = in.take(kDigestBytes);
  m.iden_p = hashing::Digest(Bytes(id.begin(), id.end()));
  m.initiator_pub = group.decode(in.take(algebra::kGroupElementBytes));
  in.expect_end();
  return m;
}

Bytes Ciphertext::encode(const TransparentGroup& group) const {
  if (z.empty() || z.size() > 0xffff) throw InvalidInput("ciphertext needs 1..65535 key wraps");
  if (y.size() > 0x1fffffff) throw InvalidInput("masked message too long");
  Bytes out;
  out.push_back(kWireVersion);
  append(out, group.encode(t));
  put_u32_be(out, static_cast<std::uint32_t>(y.size() * 8));
  append(out, y);
  append(out, group.encode(w));
  put_u16_be(out, static_cast<std::uint16_t>(z.size()));
  for (const auto& zi : z) {
    if (zi.size() != kWrapBytes) throw InvalidInput("key wrap has wrong length");
    append(out, zi);
  }
  return out;
}

Ciphertext Ciphertext::decode(ByteView bytes, const TransparentGroup& group) {
  ByteReader in(bytes);
  if (in.u8() != kWireVersion) throw DecodeError("unsupported ciphertext version");
  Ciphertext c;
  c.t = group.decode(in.take(algebra::kGroupElementBytes));
  const auto bits = in.u32_be();
  if (bits % 8 != 0) throw DecodeError("masked message bit length is not a whole number of bytes");
  auto y = in.take(bits / 8);
  c.y.assign(y.begin(), y.end());
  c.w = group.decode(in.take(algebra::kGroupElementBytes));
  const auto n = in.u16_be();
  if (n == 0) throw DecodeError("ciphertext has no key wraps");
  c.z.reserve(n);
  for (std::uint16_t i = 0; i < n; ++i) {
    auto zi = in.take(kWrapBytes);
    c.z.emplace_back(zi.begin(), zi.end());
  }
  in.expect_end();
  return c;
}

Ciphertext signcrypt(const KeyPair& sender, std::span<const GroupElement> receivers, const Plaintext& m,
                     ByteView rng_seed, const TransparentGroup& group) {
  if (receivers.empty()) throw InvalidInput("signcrypt: empty receiver list");
  if (sender.secret.value % group.order() == 0) throw InvalidInput("signcrypt: zero sender key");
  if (m.d.empty()) throw InvalidInput("signcrypt: empty product data");
  for (const auto& k : receivers)
    if (!group.contains(k)) throw InvalidInput("signcrypt: receiver key not in group");

  auto engine = seeded_engine(rng_seed);
  algebra::GroupScalar r;
  do {
    r = group.scalar(uniform_below(engine, group.order()));
  } while (r.value == 0);
  const GroupElement big_r = group.element(uniform_below(engine, group.order()));

  Ciphertext c;
  c.t = group.mul(r, group.generator());
  c.y = m.encode(group);
  xor_into(c.y, hashing::expand_mask(hashing::h1(big_r, hashing::kMaskSeedBits, group), c.y.size() * 8));

  Bytes wrapped_r = group.encode(big_r);
  wrapped_r.resize(kWrapBytes, 0);
  c.z.reserve(receivers.size());
  for (const auto& k : receivers) {
    Bytes zi = wrapped_r;
    xor_into(zi, hashing::h3(c.t, k, group.mul(r, k), group));
    c.z.push_back(std::move(zi));
  }
  // The signature covers the wraps too, so no receiver accepts a ciphertext with any wrap altered.
  const auto h = hashing::h2(c.y, c.t, receivers, c.z, group);
  c.w = group.mul(sender.secret, group.mul(h, group.generator()));
  return c;
}

bool verify_only(const GroupElement& sender_pub, std::span<const GroupElement> all_receiver_pubs, const Ciphertext& c,
                 const TransparentGroup& group) {
  if (all_receiver_pubs.empty() || all_receiver_pubs.size() != c.z.size()) return false;
  if (!group.contains(sender_pub) || !group.contains(c.t) || !group.contains(c.w)) return false;
  for (const auto& k : all_receiver_pubs)
    if (!group.contains(k)) return false;
  const auto h = hashing::h2(c.y, c.t, all_receiver_pubs, c.z, group);
  return group.pairing(group.generator(), c.w) == group.pairing(sender_pub, group.mul(h, group.generator()));
}

Plaintext unsigncrypt(std::size_t receiver_index, const KeyPair& receiver, const GroupElement& sender_pub,
                      std::span<const GroupElement> all_receiver_pubs, const Ciphertext& c,
                      const TransparentGroup& group) {
  if (receiver_index >= c.z.size()) throw InvalidInput("unsigncrypt: receiver index out of range");
  if (c.z[receiver_index].size() != kWrapBytes) throw DecodeError("key wrap has wrong length");
  if (!verify_only(sender_pub, all_receiver_pubs, c, group))
    throw VerificationFailure("signature check failed; transaction aborted");

  Bytes wrap = c.z[receiver_index];
  xor_into(wrap, hashing::h3(c.t, receiver.public_key, group.mul(receiver.secret, c.t), group));
  for (std::size_t i = algebra::kGroupElementBytes; i < wrap.size(); ++i)
    if (wrap[i] != 0) throw DecodeError("key wrap does not open under this receiver key");
  const GroupElement big_r = group.decode(ByteView(wrap).first(algebra::kGroupElementBytes));

  if (c.y.empty()) throw DecodeError("empty masked message");
  Bytes message = c.y;
  xor_into(message, hashing::expand_mask(hashing::h1(big_r, hashing::kMaskSeedBits, group), c.y.size() * 8));
  Plaintext m = Plaintext::decode(message, group);
  if (m.initiator_pub != sender_pub) throw VerificationFailure("plaintext names a different initiator");
  return m;
}

}  // namespace prodchain::signcryption
