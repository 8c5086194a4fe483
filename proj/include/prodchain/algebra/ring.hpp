#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "prodchain/bytes.hpp"

namespace prodchain::algebra {

/// Z_q[X]/(X^n + 1) with q prime, q = 1 mod 2n, n a power of two >= 4.
struct RingParams {
  std::uint32_t q = 12289;
  std::uint32_t n = 256;

  /// Throws InvalidInput naming the violated constraint.
  void validate() const;

  static RingParams standard() { return {12289, 256}; }
  static RingParams toy() { return {17, 4}; }

  friend bool operator==(const RingParams&, const RingParams&) = default;
};

using Residues = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 1>;
using Trits = Eigen::Matrix<std::int8_t, Eigen::Dynamic, 1>;

class RingElement {
 public:
  /// The zero polynomial.
  explicit RingElement(const RingParams& params);
  /// Coefficients of X^0..X^(n-1); each must already be in [0, q).
  RingElement(const RingParams& params, Residues coeffs);

  static RingElement monomial(const RingParams& params, std::uint32_t degree, std::uint32_t coeff = 1);
  static RingElement one(const RingParams& params) { return monomial(params, 0); }

  const RingParams& params() const noexcept { return params_; }
  const Residues& coeffs() const noexcept { return coeffs_; }
  std::uint32_t operator[](Eigen::Index i) const { return coeffs_[i]; }

  /// n little-endian 16-bit residues.
  Bytes encode() const;
  static RingElement decode(const RingParams& params, ByteView bytes);

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
  }

 private:
  RingParams params_;
  Residues coeffs_;
};

/// Element of R_{q,[1]}: all coefficients in {-1, 0, 1}.
class SmallRingElement {
 public:
  SmallRingElement(const RingParams& params, Trits coeffs);

  const RingParams& params() const noexcept { return params_; }
  const Trits& coeffs() const noexcept { return coeffs_; }
  RingElement lift() const;

  friend bool operator==(const SmallRingElement& a, const SmallRingElement& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
  }

 private:
  RingParams params_;
  Trits coeffs_;
};

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);
/// Negacyclic convolution (X^n = -1).
RingElement ring_mul(const RingElement& a, const RingElement& b);

inline RingElement operator+(const RingElement& a, const RingElement& b) { return ring_add(a, b); }
inline RingElement operator-(const RingElement& a, const RingElement& b) { return ring_sub(a, b); }
inline RingElement operator-(const RingElement& a) { return ring_neg(a); }
inline RingElement operator*(const RingElement& a, const RingElement& b) { return ring_mul(a, b); }

/// Deterministic ternary sample; each coefficient uniform over {-1, 0, 1}.
SmallRingElement sample_small(ByteView seed, const RingParams& params);

/// Uniform element of R_q derived from a seed (public ring generator, noise commitments).
RingElement sample_uniform(ByteView seed, const RingParams& params);

/// Deterministic Miller-Rabin, exact for all 64-bit values.
bool is_prime(std::uint64_t v);

}  // namespace prodchain::algebra
