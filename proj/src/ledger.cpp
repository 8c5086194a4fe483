#include "prodchain/ledger.hpp"

#include <bit>

#include "prodchain/error.hpp"

namespace prodchain::ledger {

namespace {
constexpr std::size_t kDigestBytes = 32;
constexpr std::uint8_t kLedgerVersion = 1;
constexpr char kMagic[4] = {'P', 'R', 'D', 'C'};

Digest take_digest(ByteReader& in) {
  auto b = in.take(kDigestBytes);
  return Digest(Bytes(b.begin(), b.end()));
}

const std::vector<Prodblock>& genesis_blocks() {
  static const std::vector<Prodblock> blocks = [] {
    const auto& g = algebra::TransparentGroup::standard();
    signcryption::Ciphertext empty{g.identity(), {}, g.identity(), {Bytes(signcryption::kWrapBytes, 0)}};
    std::vector<Prodblock> out;
    for (std::uint64_t h = 0; h < kGenesisBlocks; ++h) {
      Prodblock b{h, h == 0 ? Digest::zero() : out.back().block_hash, 0.0, reserved_initiator(), empty, {}};
      b.block_hash = b.compute_hash();
      out.push_back(std::move(b));
    }
    return out;
  }();
  return blocks;
}
}  // namespace

Digest reserved_initiator() { return Digest(Bytes(kDigestBytes, 0xff)); }

Bytes Prodblock::encode_unhashed() const {
  if (prev_hash.size() != kDigestBytes || initiator.size() != kDigestBytes)
    throw InvalidInput("block digests must be 32 bytes");
  Bytes out;
  put_u64_be(out, height);
  append(out, prev_hash);
  put_u64_be(out, std::bit_cast<std::uint64_t>(timestamp));
  append(out, initiator);
  const Bytes body = payload.encode();
  put_u32_be(out, static_cast<std::uint32_t>(body.size()));
  append(out, body);
  return out;
}

Bytes Prodblock::encode() const {
  if (block_hash.size() != kDigestBytes) throw InvalidInput("block hash must be 32 bytes");
  Bytes out = encode_unhashed();
  append(out, block_hash);
  return out;
}

Prodblock Prodblock::decode(ByteView bytes) {
  ByteReader in(bytes);
  Prodblock b;
  b.height = in.u64_be();
  b.prev_hash = take_digest(in);
  b.timestamp = std::bit_cast<double>(in.u64_be());
  b.initiator = take_digest(in);
  const auto len = in.u32_be();
  b.payload = signcryption::Ciphertext::decode(in.take(len));
  b.block_hash = take_digest(in);
  in.expect_end();
  return b;
}

Digest Prodblock::compute_hash() const { return hashing::lash_compress(encode_unhashed()); }

Chain Chain::genesis() {
  Chain c;
  c.blocks_ = genesis_blocks();
  for (const auto& pm : identity::genesis_organizations()) c.registry_.register_stakeholder(pm);
  return c;
}

Chain& Chain::append(Prodblock block) {
  const auto& last = tip();
  if (block.height != last.height + 1) throw FieldError("height", "does not extend the tip");
  if (block.prev_hash != last.block_hash) throw FieldError("prev_hash", "does not match the tip's hash");
  if (!(block.timestamp >= last.timestamp)) throw FieldError("timestamp", "earlier than the tip");
  if (block.block_hash != block.compute_hash()) throw FieldError("block_hash", "does not match block contents");
  blocks_.push_back(std::move(block));
  return *this;
}

Prodblock build_block(const Chain& chain, const identity::StakeholderWallet& initiator,
                      signcryption::Ciphertext payload, double timestamp) {
  if (!chain.registry().contains(initiator.pseudo_id)) throw FieldError("initiator", "pseudo-identity not registered");
  const auto& last = chain.tip();
  if (!(timestamp >= last.timestamp)) throw FieldError("timestamp", "earlier than the tip");
  Prodblock b{last.height + 1, last.block_hash, timestamp, initiator.pseudo_id, std::move(payload), {}};
  b.block_hash = b.compute_hash();
  return b;
}

namespace {
bool block_ok(const std::vector<Prodblock>& blocks, std::size_t i) {
  const auto& b = blocks[i];
  if (b.height != i) return false;
  if (i < kGenesisBlocks) return b.encode() == genesis_blocks()[i].encode();
  const auto& prev = blocks[i - 1];
  if (b.prev_hash != prev.block_hash) return false;
  if (!(b.timestamp >= prev.timestamp)) return false;
  try {
    return b.block_hash == b.compute_hash();
  } catch (const InvalidInput&) {
    return false;
  }
}
}  // namespace

std::optional<std::size_t> validate_chain(const std::vector<Prodblock>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (!block_ok(blocks, i)) return i;
  if (blocks.size() < kGenesisBlocks) return blocks.size();
  return std::nullopt;
}

std::optional<std::size_t> validate_chain(const Chain& chain) { return validate_chain(chain.blocks()); }

std::optional<std::size_t> validate_encoded(const std::vector<Bytes>& encoded) {
  std::vector<Prodblock> blocks;
  blocks.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    try {
      blocks.push_back(Prodblock::decode(encoded[i]));
    } catch (const DecodeError&) {
      return i;
    }
    if (!block_ok(blocks, i)) return i;
  }
  if (blocks.size() < kGenesisBlocks) return blocks.size();
  return std::nullopt;
}

Bytes encode_ledger(const std::vector<Prodblock>& blocks) {
  Bytes out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kLedgerVersion);
  for (const auto& b : blocks) {
    Bytes enc = b.encode();
    put_u32_be(out, static_cast<std::uint32_t>(enc.size()));
    append(out, enc);
  }
  return out;
}

std::vector<Bytes> split_ledger(ByteView file) {
  ByteReader in(file);
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) throw DecodeError("not a PRODCHAIN ledger file");
  if (in.u8() != kLedgerVersion) throw DecodeError("unsupported ledger version");
  std::vector<Bytes> blocks;
  while (in.remaining() > 0) {
    const auto len = in.u32_be();
    auto b = in.take(len);
    blocks.emplace_back(b.begin(), b.end());
  }
  return blocks;
}

Chain decode_ledger(ByteView file) {
  Chain chain = Chain::genesis();
  auto& blocks = chain.mutable_blocks();
  blocks.clear();
  for (const auto& enc : split_ledger(file)) blocks.push_back(Prodblock::decode(enc));
  return chain;
}

void save_chain(const Chain& chain, const std::string& path) { write_file(path, encode_ledger(chain.blocks())); }

Chain load_chain(const std::string& path) { return decode_ledger(read_file(path)); }

}  // namespace prodchain::ledger
