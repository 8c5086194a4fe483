#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "prodchain/bytes.hpp"
#include "prodchain/error.hpp"

namespace prodchain::algebra {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;

inline constexpr int kDefaultBasisDimension = 8;

/// Exact determinant by fraction-free (Bareiss) elimination.
std::int64_t integer_determinant(const IntMatrix& m);

/// Square integer basis; column i is the basis vector b_(i+1).
class LatticeBasis {
 public:
  /// Throws InvalidInput unless square and full rank.
  explicit LatticeBasis(IntMatrix vectors);

  Eigen::Index dimension() const noexcept { return vectors_.cols(); }
  const IntMatrix& matrix() const noexcept { return vectors_; }
  auto vector(Eigen::Index i) const { return vectors_.col(i); }

  /// Dimension byte, then entries as little-endian int64, column-major.
  Bytes encode() const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) { return a.vectors_ == b.vectors_; }

 private:
  IntMatrix vectors_;
};

/// Full-rank basis derived deterministically from a seed (the key center's random basis).
/// Built as L * U with L lower triangular (nonzero diagonal) and U unit upper triangular.
LatticeBasis generate_basis(ByteView seed, int dimension = kDefaultBasisDimension);

/// Sum of x_i * b_i.
template <typename Derived>
Vector<typename Derived::Scalar> lattice_point(const LatticeBasis& basis, const Eigen::MatrixBase<Derived>& x) {
  static_assert(Derived::ColsAtCompileTime == 1 || Derived::ColsAtCompileTime == Eigen::Dynamic);
  if (x.cols() != 1 || x.rows() != basis.dimension()) throw InvalidInput("lattice_point: dimension mismatch");
  return basis.matrix().template cast<typename Derived::Scalar>() * x.derived();
}

}  // namespace prodchain::algebra
