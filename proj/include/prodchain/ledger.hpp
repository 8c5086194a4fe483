#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prodchain/bytes.hpp"
#include "prodchain/hashing.hpp"
#include "prodchain/identity.hpp"
#include "prodchain/signcryption.hpp"

namespace prodchain::ledger {

using hashing::Digest;

inline constexpr std::size_t kGenesisBlocks = 2;

struct Prodblock {
  std::uint64_t height = 0;
  Digest prev_hash;
  double timestamp = 0.0;  // simulated seconds
  Digest initiator;        // pseudo-identity
  signcryption::Ciphertext payload;
  Digest block_hash;

  /// Canonical bytes of every field except block_hash; block_hash is lash_compress of these.
  Bytes encode_unhashed() const;
  Bytes encode() const;
  /// Strict: rejects anything that would not re-encode to the same bytes.
  static Prodblock decode(ByteView bytes);
  Digest compute_hash() const;

  friend bool operator==(const Prodblock&, const Prodblock&) = default;
};

/// The pseudo-identity reserved for genesis blocks (all 0xff).
Digest reserved_initiator();

/// Single linear chain plus the registry of pseudo-identities allowed to publish.
class Chain {
 public:
  /// Two fixed genesis blocks and the three organization wallets.
  static Chain genesis();

  const std::vector<Prodblock>& blocks() const noexcept { return blocks_; }
  std::vector<Prodblock>& mutable_blocks() noexcept { return blocks_; }
  const Prodblock& tip() const { return blocks_.back(); }
  std::size_t size() const noexcept { return blocks_.size(); }

  identity::Registry& registry() noexcept { return registry_; }
  const identity::Registry& registry() const noexcept { return registry_; }

  /// Throws FieldError naming height / prev_hash / timestamp / block_hash.
  Chain& append(Prodblock block);

 private:
  std::vector<Prodblock> blocks_;
  identity::Registry registry_;
};

/// Next block on top of chain's tip. Throws FieldError("initiator") for an unregistered
/// wallet and FieldError("timestamp") when time would go backwards.
Prodblock build_block(const Chain& chain, const identity::StakeholderWallet& initiator,
                      signcryption::Ciphertext payload, double timestamp);

/// Index of the first block whose hash, height, link or timestamp is wrong; nullopt if valid.
std::optional<std::size_t> validate_chain(const Chain& chain);
std::optional<std::size_t> validate_chain(const std::vector<Prodblock>& blocks);
/// Same walk over raw encodings; a block that fails to decode is bad at its index.
std::optional<std::size_t> validate_encoded(const std::vector<Bytes>& blocks);

/// "PRDC" || version || repeated (u32be length || block bytes).
Bytes encode_ledger(const std::vector<Prodblock>& blocks);
/// Splits the framing only. Throws DecodeError on bad magic, version or truncation.
std::vector<Bytes> split_ledger(ByteView file);
/// Decodes every block; throws DecodeError on the first malformed one.
Chain decode_ledger(ByteView file);

void save_chain(const Chain& chain, const std::string& path);
Chain load_chain(const std::string& path);

}  // namespace prodchain::ledger
