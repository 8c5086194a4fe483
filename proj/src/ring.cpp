#include "prodchain/algebra/ring.hpp"

#include <string>

#include "prodchain/error.hpp"
#include "prodchain/seeded.hpp"

namespace prodchain {

std::mt19937_64 seeded_engine(ByteView seed) {
  std::vector<std::uint32_t> words;
  words.reserve(seed.size() / 4 + 2);
  words.push_back(static_cast<std::uint32_t>(seed.size()));
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    acc |= static_cast<std::uint32_t>(seed[i]) << (8 * (i % 4));
    if (i % 4 == 3) {
      words.push_back(acc);
      acc = 0;
    }
  }
  if (seed.size() % 4 != 0) words.push_back(acc);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("uniform_below: zero bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = engine();
  } while (v >= limit);
  return v % bound;
}

double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace prodchain

namespace prodchain::algebra {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (v % p == 0) return v == p;
  }
  auto mulmod = [v](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % v);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b))
      if (e & 1) r = mulmod(r, b);
    return r;
  };
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all 64-bit inputs.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void RingParams::validate() const {
  if (n < 4 || (n & (n - 1)) != 0) throw InvalidInput("ring degree must be a power of two >= 4");
  if (q >= (1u << 16)) throw InvalidInput("ring modulus must fit in 16 bits");
  if (!is_prime(q)) throw InvalidInput("ring modulus must be prime");
  if (q % (2 * n) != 1) throw InvalidInput("ring modulus must be 1 mod 2n");
}

RingElement::RingElement(const RingParams& params) : params_(params), coeffs_(Residues::Zero(params.n)) {
  params_.validate();
}

RingElement::RingElement(const RingParams& params, Residues coeffs) : params_(params), coeffs_(std::move(coeffs)) {
  params_.validate();
  if (coeffs_.size() != static_cast<Eigen::Index>(params_.n))
    throw InvalidInput("ring element needs exactly n coefficients");
  if ((coeffs_.array() >= params_.q).any()) throw InvalidInput("ring coefficient out of range");
}

RingElement RingElement::monomial(const RingParams& params, std::uint32_t degree, std::uint32_t coeff) {
  RingElement e(params);
  if (degree >= params.n) throw InvalidInput("monomial degree >= n");
  e.coeffs_[degree] = coeff % params.q;
  return e;
}

Bytes RingElement::encode() const {
  Bytes out;
  out.reserve(2 * params_.n);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) put_u16_le(out, static_cast<std::uint16_t>(coeffs_[i]));
  return out;
}

RingElement RingElement::decode(const RingParams& params, ByteView bytes) {
  ByteReader in(bytes);
  Residues c(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) c[i] = in.u16_le();
  in.expect_end();
  if ((c.array() >= params.q).any()) throw DecodeError("ring coefficient out of range");
  return RingElement(params, std::move(c));
}

SmallRingElement::SmallRingElement(const RingParams& params, Trits coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  params_.validate();
  if (coeffs_.size() != static_cast<Eigen::Index>(params_.n))
    throw InvalidInput("small ring element needs exactly n coefficients");
  if ((coeffs_.array() < -1).any() || (coeffs_.array() > 1).any())
    throw InvalidInput("small ring coefficient outside [-1, 1]");
}

RingElement SmallRingElement::lift() const {
  const std::uint32_t q = params_.q;
  Residues c = coeffs_.unaryExpr([q](std::int8_t t) {
    return t < 0 ? q - 1 : static_cast<std::uint32_t>(t);
  });
  return RingElement(params_, std::move(c));
}

namespace {
void require_same(const RingElement& a, const RingElement& b) {
  if (!(a.params() == b.params())) throw InvalidInput("ring parameter mismatch");
}
}  // namespace

RingElement ring_add(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  const std::uint32_t q = a.params().q;
  Residues sum = a.coeffs() + b.coeffs();
  return RingElement(a.params(), sum.unaryExpr([q](std::uint32_t v) { return v >= q ? v - q : v; }));
}

RingElement ring_neg(const RingElement& a) {
  const std::uint32_t q = a.params().q;
  return RingElement(a.params(), a.coeffs().unaryExpr([q](std::uint32_t v) { return v == 0 ? 0u : q - v; }));
}

RingElement ring_sub(const RingElement& a, const RingElement& b) { return ring_add(a, ring_neg(b)); }

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  const std::uint64_t q = a.params().q;
  const Eigen::Index n = a.params().n;
  // acc[k] holds sum of products landing on X^k; wrapped terms are added as q - product.
  Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1> acc = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1>::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::uint64_t p = ai * b[j] % q;
      const Eigen::Index k = i + j;
      if (k < n)
        acc[k] += p;
      else
        acc[k - n] += q - p;
    }
  }
  Residues c = acc.unaryExpr([q](std::uint64_t v) { return static_cast<std::uint32_t>(v % q); });
  return RingElement(a.params(), std::move(c));
}

SmallRingElement sample_small(ByteView seed, const RingParams& params) {
  if (seed.empty()) throw InvalidInput("sample_small: empty seed");
  params.validate();
  auto engine = seeded_engine(seed);
  Trits c(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) c[i] = static_cast<std::int8_t>(uniform_below(engine, 3)) - 1;
  return SmallRingElement(params, std::move(c));
}

RingElement sample_uniform(ByteView seed, const RingParams& params) {
  if (seed.empty()) throw InvalidInput("sample_uniform: empty seed");
  params.validate();
  auto engine = seeded_engine(seed);
  Residues c(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) c[i] = static_cast<std::uint32_t>(uniform_below(engine, params.q));
  return RingElement(params, std::move(c));
}

}  // namespace prodchain::algebra
