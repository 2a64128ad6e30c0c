#ifndef CTXUPB_LINALG_HPP
#define CTXUPB_LINALG_HPP

// Dense complex kernels shared by every other module. Vectors and matrices
// are plain Eigen types; everything here is a pure function.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctxupb/error.hpp"

namespace ctxupb {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

struct Tolerances {
  double orth_tol = 1e-9;  ///< |<u|v>| at or below this counts as orthogonal
  double rank_tol = 1e-9;  ///< singular values below rank_tol * sigma_max are dropped
  double psd_tol = 1e-9;   ///< eigenvalues above -psd_tol count as nonnegative

  void validate() const {
    if (!(orth_tol > 0.0) || !(rank_tol > 0.0) || !(psd_tol > 0.0)) {
      throw Error(ErrorKind::ParseError, "tolerances must be strictly positive");
    }
  }
};

enum class Party { A = 0, B = 1 };

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// Tensor product of an ordered list of factors, first factor most significant.
inline ComplexVector kron_all(std::span<const ComplexVector> factors) {
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  e(static_cast<Eigen::Index>(index)) = 1.0;
  return e;
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

inline double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs_entry(m));
  return max_abs_entry(m - m.adjoint()) <= tol * scale;
}

struct EigenSystem {
  RealVector values;     ///< ascending
  ComplexMatrix vectors; ///< column k pairs with values(k)
};

/// Eigendecomposition of a Hermitian matrix (Householder tridiagonalisation
/// followed by implicit QR; deterministic for a given input).
inline EigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (!is_hermitian(m)) {
    throw Error(ErrorKind::NonHermitian, "matrix fails the Hermitian symmetry check");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline std::size_t common_dimension(std::span<const ComplexVector> vectors) {
  if (vectors.empty()) return 0;
  const auto dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "vectors have differing dimensions");
    }
  }
  return static_cast<std::size_t>(dim);
}

/// Stack vectors as columns.
inline ComplexMatrix as_columns(std::span<const ComplexVector> vectors) {
  const auto dim = common_dimension(vectors);
  ComplexMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return out;
}

inline std::size_t rank_of(std::span<const ComplexVector> vectors, const Tolerances& tol = {}) {
  if (vectors.empty()) return 0;
  const ComplexMatrix stacked = as_columns(vectors);
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cutoff = tol.rank_tol * s(0);
  return static_cast<std::size_t>((s.array() > cutoff).count());
}

/// Orthonormal basis (columns) of the orthogonal complement of span(vectors)
/// in C^dim. The spanning set is orthonormalised in order, then the standard
/// basis e_0, e_1, ... is orthonormalised against it; surviving directions
/// form the complement, so the result is deterministic.
inline ComplexMatrix orthogonal_complement(std::span<const ComplexVector> vectors, std::size_t dim,
                                           const Tolerances& tol = {}) {
  const auto d = static_cast<Eigen::Index>(dim);
  double scale = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != d) throw Error(ErrorKind::DimensionMismatch, "vector dimension differs from space");
    scale = std::max(scale, v.norm());
  }
  std::vector<ComplexVector> span_basis;
  auto reduce = [&](ComplexVector w, const std::vector<ComplexVector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    return w;
  };
  for (const auto& v : vectors) {
    ComplexVector w = reduce(v, span_basis);
    const double n = w.norm();
    if (n > tol.rank_tol * std::max(scale, 1e-300)) span_basis.push_back(w / n);
  }
  std::vector<ComplexVector> comp;
  std::vector<ComplexVector> all = span_basis;
  for (Eigen::Index k = 0; k < d && static_cast<Eigen::Index>(all.size()) < d; ++k) {
    ComplexVector w = reduce(basis_vector(dim, static_cast<std::size_t>(k)), all);
    const double n = w.norm();
    if (n > 1e-6) {
      all.push_back(w / n);
      comp.push_back(w / n);
    }
  }
  ComplexMatrix out(d, static_cast<Eigen::Index>(comp.size()));
  for (std::size_t i = 0; i < comp.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = comp[i];
  return out;
}

namespace detail {
inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

inline void check_square(const ComplexMatrix& rho, std::size_t total) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != total) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                    ", party dimensions multiply to " + std::to_string(total));
  }
}
}  // namespace detail

inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                   Party keep) {
  detail::check_square(rho, dim_a * dim_b);
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (keep == Party::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

/// Transpose of subsystem `party` in a multipartite matrix (first party most
/// significant in the row index).
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                       std::size_t party) {
  const std::size_t total = detail::product(dims);
  detail::check_square(rho, total);
  if (party >= dims.size()) throw Error(ErrorKind::DimensionMismatch, "party index out of range");
  std::size_t inner = 1;
  for (std::size_t m = party + 1; m < dims.size(); ++m) inner *= dims[m];
  const std::size_t dp = dims[party];
  auto digit = [&](std::size_t idx) { return (idx / inner) % dp; };
  auto with_digit = [&](std::size_t idx, std::size_t d) { return idx - digit(idx) * inner + d * inner; };
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t c = 0; c < total; ++c) {
      const std::size_t r2 = with_digit(r, digit(c));
      const std::size_t c2 = with_digit(c, digit(r));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rho(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2));
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                       Party party) {
  const std::size_t dims[] = {dim_a, dim_b};
  return partial_transpose(rho, dims, static_cast<std::size_t>(party));
}

}  // namespace ctxupb

#endif  // CTXUPB_LINALG_HPP
