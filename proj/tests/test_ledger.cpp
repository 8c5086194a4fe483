#include <filesystem>

#include "doctest.h"
#include "prodchain/error.hpp"
#include "prodchain/ledger.hpp"

using namespace prodchain;
using namespace prodchain::ledger;

namespace {

signcryption::Ciphertext payload_for(const identity::StakeholderWallet& from, const identity::StakeholderWallet& to,
                                     std::uint64_t k) {
  signcryption::Plaintext m{to_bytes("lot " + std::to_string(k)), from.pseudo_id, from.keys.public_key};
  Bytes seed;
  put_u64_be(seed, k);
  const std::vector<algebra::GroupElement> receivers{to.keys.public_key};
  return signcryption::signcrypt(from.keys, receivers, m, seed);
}

Chain chain_with(std::size_t user_blocks) {
  Chain c = Chain::genesis();
  const auto orgs = c.registry().wallets();
  for (std::size_t k = 0; k < user_blocks; ++k) {
    const auto& from = *orgs[k % 3];
    const auto& to = *orgs[(k + 1) % 3];
    c.append(build_block(c, from, payload_for(from, to, k), static_cast<double>(k)));
  }
  return c;
}

std::string field_of(auto&& fn) {
  try {
    fn();
  } catch (const FieldError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("genesis") {
  const auto c = Chain::genesis();
  CHECK(c.size() == 2);
  CHECK(c.tip().height == 1);
  CHECK(c.registry().size() == 3);
  CHECK(encode_ledger(c.blocks()) == encode_ledger(Chain::genesis().blocks()));
  CHECK(c.blocks()[1].prev_hash == c.blocks()[0].block_hash);
  CHECK(c.blocks()[0].initiator == reserved_initiator());
  CHECK_FALSE(validate_chain(c).has_value());
}

TEST_CASE("block encoding round trip") {
  const auto c = chain_with(3);
  for (const auto& b : c.blocks()) {
    CHECK(Prodblock::decode(b.encode()) == b);
    CHECK(b.block_hash == b.compute_hash());
  }
  auto enc = c.tip().encode();
  enc.push_back(0);
  CHECK_THROWS_AS(Prodblock::decode(enc), DecodeError);
}

TEST_CASE("build_block") {
  Chain c = Chain::genesis();
  const auto& org = *c.registry().wallets()[0];
  const auto& other = *c.registry().wallets()[1];
  const auto b = build_block(c, org, payload_for(org, other, 0), 1.0);
  CHECK(b.height == 2);
  const auto stranger = identity::issue_wallet({identity::DocumentType::kNationalId, to_bytes("x"), identity::Role::kCustomer});
  CHECK(field_of([&] { build_block(c, stranger, payload_for(stranger, org, 0), 1.0); }) == "initiator");
  c.append(b);
  CHECK(field_of([&] { build_block(c, org, payload_for(org, other, 1), 0.5); }) == "timestamp");

  const auto long_chain = chain_with(100);
  CHECK(long_chain.size() == 102);
  for (std::size_t i = 2; i < long_chain.size(); ++i) {
    CHECK(long_chain.blocks()[i].height == i);
    CHECK(long_chain.blocks()[i].prev_hash == long_chain.blocks()[i - 1].block_hash);
  }
  CHECK_FALSE(validate_chain(long_chain).has_value());
}

TEST_CASE("append checks") {
  Chain c = chain_with(1);
  const auto& org = *c.registry().wallets()[0];
  const auto& other = *c.registry().wallets()[1];
  const auto good = build_block(c, org, payload_for(org, other, 7), 5.0);

  auto stale = good;
  stale.prev_hash = c.blocks()[1].block_hash;
  stale.block_hash = stale.compute_hash();
  CHECK(field_of([&] { c.append(stale); }) == "prev_hash");

  auto wrong_height = good;
  wrong_height.height = 9;
  wrong_height.block_hash = wrong_height.compute_hash();
  CHECK(field_of([&] { c.append(wrong_height); }) == "height");

  auto mutated = good;
  mutated.payload.y[0] ^= 1;
  CHECK(field_of([&] { c.append(mutated); }) == "block_hash");

  CHECK(c.size() == 3);
  c.append(good);
  CHECK(c.size() == 4);
}

TEST_CASE("validate_chain finds the first bad block") {
  const auto c = chain_with(98);
  auto blocks = c.blocks();
  blocks[3].payload.y[0] ^= 0x10;
  CHECK(validate_chain(blocks) == std::optional<std::size_t>(3));

  blocks = c.blocks();
  std::swap(blocks[5], blocks[6]);
  CHECK(validate_chain(blocks) == std::optional<std::size_t>(5));

  blocks = c.blocks();
  blocks[0].timestamp = -0.0;
  CHECK(validate_chain(blocks) == std::optional<std::size_t>(0));

  blocks = c.blocks();
  blocks.erase(blocks.begin() + 40);
  CHECK(validate_chain(blocks) == std::optional<std::size_t>(40));

  CHECK(validate_chain(std::vector<Prodblock>{c.blocks()[0]}) == std::optional<std::size_t>(1));
  CHECK(validate_chain(std::vector<Prodblock>{}) == std::optional<std::size_t>(0));
}

TEST_CASE("byte mutations on the encoded chain") {
  const auto c = chain_with(6);
  std::vector<Bytes> enc;
  for (const auto& b : c.blocks()) enc.push_back(b.encode());
  CHECK_FALSE(validate_encoded(enc).has_value());
  for (std::size_t i = 0; i < enc.size(); ++i) {
    for (std::size_t pos = 0; pos < enc[i].size(); ++pos) {
      auto copy = enc;
      copy[i][pos] ^= 0x01;
      REQUIRE(validate_encoded(copy) == std::optional<std::size_t>(i));
    }
  }
}

TEST_CASE("ledger files") {
  const auto c = chain_with(4);
  const auto file = encode_ledger(c.blocks());
  CHECK(std::equal(file.begin(), file.begin() + 4, "PRDC"));
  CHECK(file[4] == 1);
  CHECK(decode_ledger(file).blocks() == c.blocks());
  CHECK(split_ledger(file).size() == c.size());

  auto bad = file;
  bad[0] = 'X';
  CHECK_THROWS_AS(split_ledger(bad), DecodeError);
  bad = file;
  bad[4] = 2;
  CHECK_THROWS_AS(split_ledger(bad), DecodeError);
  bad = file;
  bad.pop_back();
  CHECK_THROWS_AS(split_ledger(bad), DecodeError);

  const auto path = (std::filesystem::temp_directory_path() / "prodchain_ledger_test.prdc").string();
  save_chain(c, path);
  CHECK(load_chain(path).blocks() == c.blocks());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_chain(path), IoError);
  CHECK_THROWS_AS(save_chain(c, "/nonexistent-dir/x.prdc"), IoError);
}
