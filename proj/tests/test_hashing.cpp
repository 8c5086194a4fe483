#include <bit>
#include <random>
#include <set>

#include "doctest.h"
#include "prodchain/error.hpp"
#include "prodchain/hashing.hpp"

using namespace prodchain;
using namespace prodchain::hashing;

namespace {

using U32Vec = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1>;

// Dense A * bits(x) in 64-bit arithmetic, independent of the nibble tables.
U32Vec dense_residues(const LashHasher& h, ByteView input) {
  const auto& a = h.matrix();
  Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1> bits(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) bits[j] = (input[static_cast<std::size_t>(j / 8)] >> (j % 8)) & 1;
  const Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1> prod = a.cast<std::uint64_t>() * bits;
  U32Vec out(prod.size());
  for (Eigen::Index i = 0; i < prod.size(); ++i) out[i] = static_cast<std::uint32_t>(prod[i] % h.params().modulus);
  return out;
}

Bytes oracle_fold(const U32Vec& r, std::size_t width) {
  Bytes out(width, 0);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const auto low = static_cast<std::uint8_t>((r[i] & 0xff) ^ ((r[i] >> 8) & 0xff));
    out[static_cast<std::size_t>(i) % width] ^= std::rotl(low, static_cast<int>(static_cast<std::size_t>(i) / width));
  }
  return out;
}

Bytes oracle_hash(const LashHasher& h, const Bytes& msg) {
  Bytes m = msg;
  const std::uint64_t bit_len = msg.size() * 8;
  m.push_back(0x80);
  while (m.size() % 64 != 56) m.push_back(0);
  for (int s = 56; s >= 0; s -= 8) m.push_back(static_cast<std::uint8_t>(bit_len >> s));
  Bytes state = h.initial_value();
  for (std::size_t off = 0; off < m.size(); off += 64) {
    Bytes in = state;
    in.insert(in.end(), m.begin() + static_cast<std::ptrdiff_t>(off), m.begin() + static_cast<std::ptrdiff_t>(off + 64));
    state = oracle_fold(dense_residues(h, in), h.output_bytes());
  }
  return state;
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

}  // namespace

TEST_CASE("hash params") {
  CHECK_NOTHROW(HashParams::standard().validate());
  CHECK_THROWS_AS((HashParams{160, 700, 257, 256}).validate(), InvalidInput);
  CHECK_THROWS_AS((HashParams{160, 768, 256, 256}).validate(), InvalidInput);
  CHECK_THROWS_AS((HashParams{20, 768, 257, 256}).validate(), InvalidInput);
}

TEST_CASE("compression matches dense oracle") {
  const auto& h = LashHasher::standard();
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const Bytes in = random_bytes(rng, 96);
    REQUIRE(h.residues(in) == dense_residues(h, in));
  }
  CHECK_THROWS_AS(h.residues(Bytes(95, 0)), InvalidInput);
  for (std::size_t len : {1u, 55u, 56u, 63u, 64u, 65u, 119u, 120u, 300u}) {
    const Bytes msg = random_bytes(rng, len);
    REQUIRE(lash_compress(msg).bytes() == oracle_hash(h, msg));
  }
}

TEST_CASE("lash_compress contract") {
  const Bytes a = to_bytes("prodchain");
  CHECK(lash_compress(a) == lash_compress(a));
  CHECK_THROWS_AS(lash_compress(Bytes{}), InvalidInput);
  for (std::size_t len : {1u, 64u, 1000u, 1u << 20})
    CHECK(lash_compress(Bytes(len, 0x5a)).size() == HashParams::standard().output_bits / 8);
  // Non-standard shape.
  const HashParams small{64, 576, 257, 64};
  CHECK(lash_compress(a, small).size() == 8);
}

TEST_CASE("single bit flips change the digest") {
  std::mt19937_64 rng(2);
  std::set<Digest> digests;
  std::set<Bytes> inputs;
  for (int t = 0; t < 1000; ++t) {
    Bytes msg = random_bytes(rng, 1 + rng() % 100);
    const auto d0 = lash_compress(msg);
    inputs.insert(msg);
    const std::size_t bit = rng() % (msg.size() * 8);
    msg[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    const auto d1 = lash_compress(msg);
    inputs.insert(msg);
    REQUIRE(d0 != d1);
    digests.insert(d0);
    digests.insert(d1);
  }
  // Short random inputs can repeat; distinct inputs must give distinct digests.
  CHECK(digests.size() == inputs.size());
}

TEST_CASE("h1") {
  const auto& g = algebra::TransparentGroup::standard();
  CHECK(h1(g.element(42)) == h1(g.element(42)));
  CHECK(h1(g.element(42), 64).size() == 8);
  CHECK(h1(g.element(42), 1024).size() == 128);
  CHECK_THROWS_AS(h1(g.element(1), 0), InvalidInput);
  std::set<Bytes> seen;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10000; ++t) seen.insert(h1(g.element(rng())));
  CHECK(seen.size() == 10000);
}

TEST_CASE("h2") {
  const auto& g = algebra::TransparentGroup::standard();
  const std::vector<algebra::GroupElement> keys{g.element(3), g.element(5), g.element(7)};
  const std::vector<algebra::GroupElement> permuted{g.element(5), g.element(3), g.element(7)};
  const Bytes y = to_bytes("masked");
  CHECK(h2(y, g.element(9), keys) == h2(y, g.element(9), keys));
  CHECK(h2(y, g.element(9), keys) != h2(y, g.element(9), permuted));
  CHECK(h2(y, g.element(9), keys) != h2(y, g.element(10), keys));
  CHECK_THROWS_AS(h2(y, g.element(9), std::span<const algebra::GroupElement>{}), InvalidInput);
  const std::vector<Bytes> wraps{Bytes(4, 1), Bytes(4, 2)}, flipped{Bytes(4, 1), Bytes{2, 2, 2, 3}};
  const std::vector<Bytes> swapped{Bytes(4, 2), Bytes(4, 1)};
  CHECK(h2(y, g.element(9), keys, wraps) == h2(y, g.element(9), keys, wraps));
  CHECK(h2(y, g.element(9), keys, wraps) != h2(y, g.element(9), keys));
  CHECK(h2(y, g.element(9), keys, wraps) != h2(y, g.element(9), keys, flipped));
  CHECK(h2(y, g.element(9), keys, wraps) != h2(y, g.element(9), keys, swapped));
  // Wrap boundaries are length-prefixed.
  CHECK(h2(y, g.element(9), keys, std::vector<Bytes>{Bytes{1, 2}, Bytes{3}}) !=
        h2(y, g.element(9), keys, std::vector<Bytes>{Bytes{1}, Bytes{2, 3}}));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) CHECK(h2(random_bytes(rng, 16), g.element(rng()), keys).value < g.order());
}

TEST_CASE("h3") {
  const auto& g = algebra::TransparentGroup::standard();
  std::mt19937_64 rng(6);
  for (int t = 0; t < 1000; ++t) {
    const auto a = g.element(rng()), b = g.element(rng()), c = g.element(rng());
    const auto base = h3(a, b, c);
    REQUIRE(base.size() == kWrapBits / 8);
    REQUIRE(base == h3(a, b, c));
    const auto other = g.element(rng());
    REQUIRE(h3(other, b, c) != base);
    REQUIRE(h3(a, other, c) != base);
    REQUIRE(h3(a, b, other) != base);
  }
}

TEST_CASE("expand_mask") {
  const Bytes seed = to_bytes("mask seed");
  const auto m64 = expand_mask(seed, 64), m128 = expand_mask(seed, 128);
  CHECK(std::equal(m64.begin(), m64.end(), m128.begin()));
  CHECK(expand_mask(seed, 1000) == expand_mask(seed, 1000));
  CHECK(expand_mask(seed, 13).size() == 2);
  CHECK((expand_mask(seed, 13)[1] & 0xe0) == 0);
  CHECK_THROWS_AS(expand_mask(seed, 0), InvalidInput);

  const auto big = expand_mask(seed, 1'000'000);
  std::size_t ones = 0;
  for (auto b : big) ones += static_cast<std::size_t>(std::popcount(b));
  const double frac = static_cast<double>(ones) / 1e6;
  CHECK(frac > 0.45);
  CHECK(frac < 0.55);
}

TEST_CASE("reduce_be and digest hex") {
  CHECK(reduce_be(Bytes{0x01, 0x00}, 1000) == 256);
  CHECK(reduce_be(Bytes(40, 0xff), 7) == reduce_be(Bytes(40, 0xff), 7));
  // 2^64 mod (2^64 - 59) = 59
  Bytes two64{1, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(reduce_be(two64, 18446744073709551557ull) == 59);
  const auto d = lash_compress(to_bytes("x"));
  CHECK(Digest::from_hex(d.hex()) == d);
  CHECK(d.hex().size() == 64);
  CHECK(d.hex() == to_hex(d.bytes()));
}
