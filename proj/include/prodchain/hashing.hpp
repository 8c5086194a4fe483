#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "prodchain/algebra/group.hpp"
#include "prodchain/bytes.hpp"

namespace prodchain::hashing {

/// Message bytes absorbed per compression call.
inline constexpr std::size_t kBlockBytes = 64;

/// Shape of the compression matrix. The matrix has `cols` = output_bits + 8*kBlockBytes
/// columns: the chaining value followed by one message block, bit-decomposed.
struct HashParams {
  std::uint32_t rows = 160;
  std::uint32_t cols = 768;
  std::uint32_t modulus = 257;
  std::uint32_t output_bits = 256;

  void validate() const;
  static HashParams standard() { return {}; }

  friend bool operator==(const HashParams&, const HashParams&) = default;
};

class Digest {
 public:
  Digest() = default;
  explicit Digest(Bytes bytes) : bytes_(std::move(bytes)) {}
  static Digest zero(std::size_t size = 32) { return Digest(Bytes(size, 0)); }
  static Digest from_hex(std::string_view hex);

  const Bytes& bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  std::string hex() const { return to_hex(bytes_); }
  operator ByteView() const noexcept { return bytes_; }

  friend auto operator<=>(const Digest&, const Digest&) = default;

 private:
  Bytes bytes_;
};

/// Iterated lattice compression: each 64-byte block (after MD padding with the bit
/// length) updates the chaining value h <- fold(A * bits(h || block) mod modulus),
/// where A is a public matrix expanded from a fixed seed.
class LashHasher {
 public:
  explicit LashHasher(const HashParams& params);
  static const LashHasher& standard();

  const HashParams& params() const noexcept { return params_; }
  const Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>& matrix() const noexcept { return matrix_; }
  std::size_t output_bytes() const noexcept { return params_.output_bits / 8; }
  const Bytes& initial_value() const noexcept { return iv_; }

  /// A * bits(input) mod modulus; input must be exactly cols/8 bytes, bits LSB-first.
  Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1> residues(ByteView input) const;
  /// Serializes a residue vector to output_bits.
  Bytes fold(const Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1>& residues) const;

  /// Throws InvalidInput on empty input.
  Digest hash(ByteView input) const;

 private:
  HashParams params_;
  Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic> matrix_;
  // Column 16*t + v holds the subset sum of the four matrix columns selected by nibble v
  // at nibble position t, reduced mod modulus.
  Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic> nibble_table_;
  Bytes iv_;
};

Digest lash_compress(ByteView input, const HashParams& params = HashParams::standard());

enum class Domain : std::uint8_t { kH1 = 0x01, kH2 = 0x02, kH3 = 0x03 };

/// lash_compress(tag || payload).
Digest domain_hash(Domain tag, ByteView payload);

/// Output length of h3 and of every key wrap z_i (the public value l).
inline constexpr std::size_t kWrapBits = 256;
/// Default output length of h1.
inline constexpr std::size_t kMaskSeedBits = 256;

/// H1: G1 -> {0,1}^n. n must be a positive multiple of 8.
Bytes h1(const algebra::GroupElement& r, std::size_t n_bits = kMaskSeedBits,
         const algebra::TransparentGroup& group = algebra::TransparentGroup::standard());

/// H2 over (y, T, K_r1..K_rN, z_1..z_N), keys and wraps hashed in the given order, reduced
/// into [0, q). Empty wraps hashes (y, T, K_r1..K_rN) alone.
/// Throws InvalidInput when receiver_keys is empty.
algebra::GroupScalar h2(ByteView y, const algebra::GroupElement& t,
                        std::span<const algebra::GroupElement> receiver_keys, std::span<const Bytes> wraps = {},
                        const algebra::TransparentGroup& group = algebra::TransparentGroup::standard());

/// H3: G1^3 -> {0,1}^l.
Bytes h3(const algebra::GroupElement& t, const algebra::GroupElement& k, const algebra::GroupElement& shared,
         const algebra::TransparentGroup& group = algebra::TransparentGroup::standard());

/// Counter-mode expansion: lash(seed || u64be(counter)) for counter = 0, 1, ...
/// truncated to length_bits; bits past length_bits in the last byte are zero.
Bytes expand_mask(ByteView seed, std::size_t length_bits);

/// Reduces a big-endian byte string modulo m.
std::uint64_t reduce_be(ByteView bytes, std::uint64_t m);

}  // namespace prodchain::hashing
