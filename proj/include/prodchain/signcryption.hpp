#pragma once

#include <span>
#include <vector>

#include "prodchain/algebra/group.hpp"
#include "prodchain/bytes.hpp"
#include "prodchain/hashing.hpp"
#include "prodchain/identity.hpp"

namespace prodchain::signcryption {

using algebra::GroupElement;
using algebra::TransparentGroup;
using identity::KeyPair;

/// m = {d, Iden_p, K_u+}.
struct Plaintext {
  Bytes d;
  hashing::Digest iden_p;
  GroupElement initiator_pub;

  /// u32be |d| || d || Iden_p (32 bytes) || K_u+ (8 bytes).
  Bytes encode(const TransparentGroup& group = TransparentGroup::standard()) const;
  static Plaintext decode(ByteView bytes, const TransparentGroup& group = TransparentGroup::standard());

  friend bool operator==(const Plaintext&, const Plaintext&) = default;
};

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kWrapBytes = hashing::kWrapBits / 8;

/// c = (T, y, w, z_1..z_N).
struct Ciphertext {
  GroupElement t;
  Bytes y;
  GroupElement w;
  std::vector<Bytes> z;

  /// version || T || u32be bit-length of y || y || w || u16be N || z_1..z_N.
  Bytes encode(const TransparentGroup& group = TransparentGroup::standard()) const;
  /// Throws DecodeError unless the bytes are exactly one canonical ciphertext.
  static Ciphertext decode(ByteView bytes, const TransparentGroup& group = TransparentGroup::standard());

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Multi-receiver signcryption. r and R are drawn from rng_seed, so equal inputs give
/// equal ciphertexts. Throws InvalidInput for an empty receiver list or empty d.
Ciphertext signcrypt(const KeyPair& sender, std::span<const GroupElement> receivers, const Plaintext& m,
                     ByteView rng_seed, const TransparentGroup& group = TransparentGroup::standard());

/// Receiver-side decrypt-and-verify. Throws VerificationFailure when the pairing check
/// fails (abort) and DecodeError when the unwrapped key or plaintext is malformed.
Plaintext unsigncrypt(std::size_t receiver_index, const KeyPair& receiver, const GroupElement& sender_pub,
                      std::span<const GroupElement> all_receiver_pubs, const Ciphertext& c,
                      const TransparentGroup& group = TransparentGroup::standard());

/// e(P, w) == e(K_u+, h*P) without decrypting. Malformed inputs verify as false.
bool verify_only(const GroupElement& sender_pub, std::span<const GroupElement> all_receiver_pubs, const Ciphertext& c,
                 const TransparentGroup& group = TransparentGroup::standard());

}  // namespace prodchain::signcryption
