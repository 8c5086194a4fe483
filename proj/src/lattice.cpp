#include "prodchain/algebra/lattice.hpp"

#include "prodchain/seeded.hpp"

namespace prodchain::algebra {

std::int64_t integer_determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  Matrix<__int128> a = m.cast<__int128>();
  __int128 prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index pivot = k + 1;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      a.row(k).swap(a.row(pivot));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return static_cast<std::int64_t>(sign * a(n - 1, n - 1));
}

LatticeBasis::LatticeBasis(IntMatrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols() || vectors_.rows() == 0) throw InvalidInput("basis must be square");
  if (integer_determinant(vectors_) == 0) throw InvalidInput("basis vectors are linearly dependent");
}

Bytes LatticeBasis::encode() const {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(dimension()));
  for (Eigen::Index j = 0; j < vectors_.cols(); ++j)
    for (Eigen::Index i = 0; i < vectors_.rows(); ++i) put_u64_le(out, static_cast<std::uint64_t>(vectors_(i, j)));
  return out;
}

LatticeBasis generate_basis(ByteView seed, int dimension) {
  if (seed.empty()) throw InvalidInput("generate_basis: empty seed");
  if (dimension < 1 || dimension > 16) throw InvalidInput("generate_basis: dimension must be in [1, 16]");
  auto engine = seeded_engine(seed);
  auto small = [&] { return static_cast<std::int64_t>(uniform_below(engine, 7)) - 3; };
  IntMatrix lower = IntMatrix::Zero(dimension, dimension);
  IntMatrix upper = IntMatrix::Identity(dimension, dimension);
  for (int i = 0; i < dimension; ++i) {
    std::int64_t d = static_cast<std::int64_t>(uniform_below(engine, 3)) + 1;
    lower(i, i) = (engine() & 1) ? d : -d;
    for (int j = 0; j < i; ++j) lower(i, j) = small();
    for (int j = i + 1; j < dimension; ++j) upper(i, j) = small();
  }
  return LatticeBasis(lower * upper);
}

}  // namespace prodchain::algebra
