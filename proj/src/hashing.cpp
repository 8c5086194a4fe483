#include "prodchain/hashing.hpp"

#include <bit>
#include <cmath>

#include "prodchain/algebra/ring.hpp"
#include "prodchain/error.hpp"
#include "prodchain/seeded.hpp"

namespace prodchain::hashing {

namespace {
constexpr std::string_view kMatrixSeed = "prodchain/lash/public-matrix/v1";
constexpr std::string_view kIvSeed = "prodchain/lash/iv/v1";
}  // namespace

void HashParams::validate() const {
  if (output_bits == 0 || output_bits % 8 != 0) throw InvalidInput("output_bits must be a positive multiple of 8");
  if (cols != output_bits + 8 * kBlockBytes) throw InvalidInput("cols must equal output_bits + 512");
  if (modulus < 3 || modulus > 65521 || !algebra::is_prime(modulus)) throw InvalidInput("modulus must be a small prime");
  if (rows < output_bits / 8) throw InvalidInput("rows must cover every output byte");
  if (rows * std::log2(static_cast<double>(modulus)) < output_bits)
    throw InvalidInput("rows * log2(modulus) must be >= output_bits");
}

Digest Digest::from_hex(std::string_view hex) { return Digest(prodchain::from_hex(hex)); }

LashHasher::LashHasher(const HashParams& params) : params_(params) {
  params_.validate();
  auto engine = seeded_engine(to_bytes(kMatrixSeed));
  matrix_.resize(params_.rows, params_.cols);
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
      matrix_(i, j) = static_cast<std::uint32_t>(uniform_below(engine, params_.modulus));

  const Eigen::Index positions = params_.cols / 4;
  nibble_table_.resize(params_.rows, positions * 16);
  for (Eigen::Index t = 0; t < positions; ++t) {
    for (std::uint32_t v = 0; v < 16; ++v) {
      Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1> sum = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1>::Zero(params_.rows);
      for (int b = 0; b < 4; ++b)
        if (v >> b & 1) sum += matrix_.col(4 * t + b);
      nibble_table_.col(16 * t + v) = sum.unaryExpr([m = params_.modulus](std::uint32_t x) { return x % m; });
    }
  }

  auto iv_engine = seeded_engine(to_bytes(kIvSeed));
  iv_.resize(output_bytes());
  for (auto& b : iv_) b = static_cast<std::uint8_t>(iv_engine());
}

const LashHasher& LashHasher::standard() {
  static const LashHasher hasher(HashParams::standard());
  return hasher;
}

Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1> LashHasher::residues(ByteView input) const {
  if (input.size() * 8 != params_.cols) throw InvalidInput("compression input has wrong length");
  // Table entries are < modulus <= 2^16 and there are cols/4 of them, so no overflow.
  Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1> acc = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1>::Zero(params_.rows);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const Eigen::Index t = static_cast<Eigen::Index>(2 * i);
    acc += nibble_table_.col(16 * t + (input[i] & 0xf));
    acc += nibble_table_.col(16 * (t + 1) + (input[i] >> 4));
  }
  const std::uint32_t m = params_.modulus;
  return acc.unaryExpr([m](std::uint32_t x) { return x % m; });
}

Bytes LashHasher::fold(const Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1>& residues) const {
  const std::size_t width = output_bytes();
  Bytes out(width, 0);
  for (Eigen::Index r = 0; r < residues.size(); ++r) {
    const auto layer = static_cast<int>(static_cast<std::size_t>(r) / width);
    const auto low = static_cast<std::uint8_t>(residues[r] ^ (residues[r] >> 8));
    out[static_cast<std::size_t>(r) % width] ^= std::rotl(low, layer);
  }
  return out;
}

Digest LashHasher::hash(ByteView input) const {
  if (input.empty()) throw InvalidInput("lash_compress: empty input");
  Bytes padded(input.begin(), input.end());
  padded.push_back(0x80);
  while (padded.size() % kBlockBytes != kBlockBytes - 8) padded.push_back(0);
  put_u64_be(padded, static_cast<std::uint64_t>(input.size()) * 8);

  const std::size_t width = output_bytes();
  Bytes state = iv_;
  Bytes work(width + kBlockBytes);
  for (std::size_t off = 0; off < padded.size(); off += kBlockBytes) {
    std::copy(state.begin(), state.end(), work.begin());
    std::copy(padded.begin() + static_cast<std::ptrdiff_t>(off),
              padded.begin() + static_cast<std::ptrdiff_t>(off + kBlockBytes), work.begin() + static_cast<std::ptrdiff_t>(width));
    state = fold(residues(work));
  }
  return Digest(std::move(state));
}

Digest lash_compress(ByteView input, const HashParams& params) {
  if (params == HashParams::standard()) return LashHasher::standard().hash(input);
  return LashHasher(params).hash(input);
}

Digest domain_hash(Domain tag, ByteView payload) {
  Bytes buf;
  buf.reserve(payload.size() + 1);
  buf.push_back(static_cast<std::uint8_t>(tag));
  append(buf, payload);
  return lash_compress(buf);
}

namespace {
Bytes fit_bits(const Digest& d, std::size_t n_bits) {
  if (n_bits == 0 || n_bits % 8 != 0) throw InvalidInput("bit length must be a positive multiple of 8");
  if (n_bits <= d.size() * 8) return Bytes(d.bytes().begin(), d.bytes().begin() + static_cast<std::ptrdiff_t>(n_bits / 8));
  return expand_mask(d, n_bits);
}
}  // namespace

Bytes h1(const algebra::GroupElement& r, std::size_t n_bits, const algebra::TransparentGroup& group) {
  return fit_bits(domain_hash(Domain::kH1, group.encode(r)), n_bits);
}

std::uint64_t reduce_be(ByteView bytes, std::uint64_t m) {
  unsigned __int128 acc = 0;
  for (auto b : bytes) acc = (acc * 256 + b) % m;
  return static_cast<std::uint64_t>(acc);
}

algebra::GroupScalar h2(ByteView y, const algebra::GroupElement& t, std::span<const algebra::GroupElement> receiver_keys,
                        std::span<const Bytes> wraps, const algebra::TransparentGroup& group) {
  if (receiver_keys.empty()) throw InvalidInput("h2: empty receiver list");
  if (receiver_keys.size() > 0xffff) throw InvalidInput("h2: too many receivers");
  Bytes payload;
  put_u32_be(payload, static_cast<std::uint32_t>(y.size()));
  append(payload, y);
  append(payload, group.encode(t));
  put_u16_be(payload, static_cast<std::uint16_t>(receiver_keys.size()));
  for (const auto& k : receiver_keys) append(payload, group.encode(k));
  if (wraps.size() > 0xffff) throw InvalidInput("h2: too many key wraps");
  if (!wraps.empty()) {
    put_u16_be(payload, static_cast<std::uint16_t>(wraps.size()));
    for (const auto& z : wraps) {
      put_u32_be(payload, static_cast<std::uint32_t>(z.size()));
      append(payload, z);
    }
  }
  return {reduce_be(domain_hash(Domain::kH2, payload), group.order())};
}

Bytes h3(const algebra::GroupElement& t, const algebra::GroupElement& k, const algebra::GroupElement& shared,
         const algebra::TransparentGroup& group) {
  Bytes payload = group.encode(t);
  append(payload, group.encode(k));
  append(payload, group.encode(shared));
  return fit_bits(domain_hash(Domain::kH3, payload), kWrapBits);
}

Bytes expand_mask(ByteView seed, std::size_t length_bits) {
  if (length_bits == 0) throw InvalidInput("expand_mask: zero length");
  const std::size_t nbytes = (length_bits + 7) / 8;
  Bytes out;
  out.reserve(nbytes + 32);
  Bytes input(seed.begin(), seed.end());
  const std::size_t base = input.size();
  for (std::uint64_t counter = 0; out.size() < nbytes; ++counter) {
    input.resize(base);
    put_u64_be(input, counter);
    append(out, lash_compress(input));
  }
  out.resize(nbytes);
  if (length_bits % 8 != 0) out.back() &= static_cast<std::uint8_t>(0xff >> (8 - length_bits % 8));
  return out;
}

}  // namespace prodchain::hashing
