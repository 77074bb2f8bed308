// Copyright 2026 The Gleason Frames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gleason/core.hpp"

namespace gleason {

/**
 * A d x d complex Hermitian matrix, an element of the real d^2-dimensional
 * space of Hermitian operators with the trace inner product <A, B> = Tr(AB).
 *
 * Stored entries are exactly Hermitian: entry (j, k) is the bitwise complex
 * conjugate of entry (k, j) and diagonal entries have zero imaginary part.
 * Sums, differences and real multiples of exactly Hermitian matrices stay
 * exactly Hermitian, so the arithmetic below never re-symmetrizes.
 */
class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Rejects input whose asymmetry max|A - A^dagger| exceeds `asym_tol`.
  static HermitianOperator from_matrix(const MatrixXc& m,
                                       double asym_tol = 1e-12) {
    if (m.rows() != m.cols() || m.rows() < 1)
      throw InvariantViolation("square", "operator matrix must be square");
    if (!m.allFinite())
      throw InvariantViolation("finite", "operator has non-finite entries");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > asym_tol)
      throw InvariantViolation("hermitian", "asymmetry exceeds tolerance", asym);
    return hermitian_part(m);
  }

  /// (M + M^dagger) / 2 without any check; used for products of Hermitians.
  static HermitianOperator hermitian_part(const MatrixXc& m) {
    HermitianOperator h;
    const auto d = m.rows();
    h.m_.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      h.m_(j, j) = cplx(m(j, j).real(), 0.0);
      for (Eigen::Index k = j + 1; k < d; ++k) {
        const cplx v = 0.5 * (m(j, k) + std::conj(m(k, j)));
        h.m_(j, k) = v;
        h.m_(k, j) = std::conj(v);
      }
    }
    return h;
  }

  static HermitianOperator identity(int d) {
    HermitianOperator h;
    h.m_ = MatrixXc::Identity(d, d);
    return h;
  }

  static HermitianOperator zero(int d) {
    HermitianOperator h;
    h.m_ = MatrixXc::Zero(d, d);
    return h;
  }

  /// |v><v| / <v|v>.
  static HermitianOperator projector(const VectorXc& v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0)) throw InvariantViolation("nonzero", "projector onto zero vector");
    return hermitian_part(v * v.adjoint() / n2);
  }

  static HermitianOperator diagonal(const std::vector<double>& diag) {
    HermitianOperator h = zero(static_cast<int>(diag.size()));
    for (std::size_t j = 0; j < diag.size(); ++j)
      h.m_(j, j) = cplx(diag[j], 0.0);
    return h;
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const MatrixXc& matrix() const { return m_; }
  cplx operator()(int j, int k) const { return m_(j, k); }

  double trace() const { return m_.diagonal().real().sum(); }

  /// Orthonormal real coordinates: diagonal entries, then sqrt(2) Re and
  /// sqrt(2) Im of each upper off-diagonal entry, so that dot products of
  /// coordinate vectors equal trace inner products.
  VectorXd real_vector() const {
    const int d = dim();
    VectorXd v(d * d);
    int idx = 0;
    for (int j = 0; j < d; ++j) v(idx++) = m_(j, j).real();
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        v(idx++) = std::sqrt(2.0) * m_(j, k).real();
        v(idx++) = std::sqrt(2.0) * m_(j, k).imag();
      }
    return v;
  }

  static HermitianOperator from_real_vector(int d, const VectorXd& v) {
    if (v.size() != d * d) throw DimensionMismatch(static_cast<int>(v.size()), d * d);
    HermitianOperator h = zero(d);
    int idx = 0;
    for (int j = 0; j < d; ++j) h.m_(j, j) = cplx(v(idx++), 0.0);
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const double re = v(idx++) / std::sqrt(2.0);
        const double im = v(idx++) / std::sqrt(2.0);
        h.m_(j, k) = cplx(re, im);
        h.m_(k, j) = cplx(re, -im);
      }
    return h;
  }

  /// Hilbert-Schmidt (Frobenius) norm.
  double norm() const { return m_.norm(); }

  HermitianOperator& operator+=(const HermitianOperator& o) {
    require_same_dim(dim(), o.dim());
    m_ += o.m_;
    return *this;
  }
  HermitianOperator& operator-=(const HermitianOperator& o) {
    require_same_dim(dim(), o.dim());
    m_ -= o.m_;
    return *this;
  }
  HermitianOperator& operator*=(double s) {
    m_ *= s;
    return *this;
  }

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    return a -= b;
  }
  friend HermitianOperator operator-(HermitianOperator a) { return a *= -1.0; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
  friend HermitianOperator operator/(HermitianOperator a, double s) {
    return a *= (1.0 / s);
  }

 private:
  MatrixXc m_;
};

/// Tr(AB). Computed from the orthonormal coordinates, which makes the result
/// bitwise symmetric in its arguments.
inline double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim());
  return a.real_vector().dot(b.real_vector());
}

/// ||A - B|| in the Hilbert-Schmidt norm.
inline double hs_distance(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim());
  return (a.matrix() - b.matrix()).norm();
}

/// A S A for Hermitian A and S, symmetrized.
inline HermitianOperator sandwich(const HermitianOperator& a,
                                  const HermitianOperator& s) {
  require_same_dim(a.dim(), s.dim());
  return HermitianOperator::hermitian_part(a.matrix() * s.matrix() * a.matrix());
}

struct EigenDecomposition {
  VectorXd values;   // descending
  MatrixXc vectors;  // columns, orthonormal
  int sweeps = 0;

  double max() const { return values(0); }
  double min() const { return values(values.size() - 1); }
};

/**
 * Cyclic complex Jacobi eigensolver.
 *
 * Each rotation first removes the phase of the pivot a_pq with a diagonal
 * unitary and then applies a real Givens rotation, so every step is a
 * unitary similarity. Converged when the off-diagonal Frobenius norm falls
 * below tol.eig_offdiag * max(1, ||A||_F).
 */
inline EigenDecomposition eig_hermitian(const HermitianOperator& op,
                                        const ToleranceConfig& tol = {}) {
  const int d = op.dim();
  MatrixXc a = op.matrix();
  MatrixXc v = MatrixXc::Identity(d, d);
  const double scale = std::max(1.0, a.norm());

  auto off_norm = [&]() {
    double s = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  int sweep = 0;
  bool converged = off_norm() < tol.eig_offdiag * scale;
  while (!converged && sweep < tol.max_sweeps) {
    ++sweep;
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const cplx b = a(p, q);
        const double absb = std::abs(b);
        if (absb == 0.0) continue;
        const cplx phase_conj = std::conj(b) / absb;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * absb);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const cplx upp = c, upq = s, uqp = -s * phase_conj, uqq = c * phase_conj;
        for (int k = 0; k < d; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (int k = 0; k < d; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = off_norm() < tol.eig_offdiag * scale;
  }
  if (!converged)
    throw ConvergenceError("Jacobi eigensolver did not converge after " +
                           std::to_string(sweep) + " sweeps");

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a(x, x).real() > a(y, y).real();
  });
  EigenDecomposition out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (int j = 0; j < d; ++j) {
    out.values(j) = a(order[j], order[j]).real();
    out.vectors.col(j) = v.col(order[j]);
  }
  out.sweeps = sweep;
  return out;
}

inline double max_eigenvalue(const HermitianOperator& op, const ToleranceConfig& tol = {}) {
  return eig_hermitian(op, tol).max();
}

inline double min_eigenvalue(const HermitianOperator& op, const ToleranceConfig& tol = {}) {
  return eig_hermitian(op, tol).min();
}

/// V f(diag(lambda)) V^dagger.
template <class Fn>
HermitianOperator spectral_map(const HermitianOperator& op, Fn&& fn,
                               const ToleranceConfig& tol = {}) {
  const auto e = eig_hermitian(op, tol);
  VectorXc mapped(e.values.size());
  for (Eigen::Index j = 0; j < e.values.size(); ++j) mapped(j) = fn(e.values(j));
  return HermitianOperator::hermitian_part(e.vectors * mapped.asDiagonal() *
                                           e.vectors.adjoint());
}

/// Positive square root of a positive semidefinite operator; eigenvalues
/// slightly below zero from rounding are clamped.
inline HermitianOperator sqrt_psd(const HermitianOperator& op, const ToleranceConfig& tol = {}) {
  return spectral_map(op, [](double x) { return std::sqrt(std::max(0.0, x)); }, tol);
}

/// Numerical rank from singular values, relative cutoff.
inline int numerical_rank(const VectorXd& singular_values, double rank_cutoff) {
  if (singular_values.size() == 0) return 0;
  const double top = singular_values.maxCoeff();
  if (!(top > 0)) return 0;
  int r = 0;
  for (Eigen::Index j = 0; j < singular_values.size(); ++j)
    if (singular_values(j) > rank_cutoff * top) ++r;
  return r;
}

/// Column matrix of orthonormal real coordinates of a list of operators.
inline MatrixXd coordinate_matrix(const std::vector<HermitianOperator>& ops) {
  if (ops.empty()) return {};
  const int d = ops.front().dim();
  MatrixXd m(d * d, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t j = 0; j < ops.size(); ++j) {
    require_same_dim(d, ops[j].dim());
    m.col(static_cast<Eigen::Index>(j)) = ops[j].real_vector();
  }
  return m;
}

inline int operator_rank(const std::vector<HermitianOperator>& ops, double rank_cutoff) {
  if (ops.empty()) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(coordinate_matrix(ops));
  return numerical_rank(svd.singularValues(), rank_cutoff);
}

/**
 * An ordered basis of d^2 Hermitian operators.
 *
 * Construction never fails on dependent input; `independent()` reports the
 * rank certificate and expansion throws SingularBasis when it does not hold.
 * Coordinates are obtained from a QR factorization of the coordinate matrix.
 */
class OperatorBasis {
 public:
  enum class Kind { orthonormal, augmented, mic_pom, generic };

  OperatorBasis() = default;

  OperatorBasis(std::vector<HermitianOperator> elements, Kind kind,
                const ToleranceConfig& tol = {})
      : elements_(std::move(elements)), kind_(kind), tol_(tol) {
    if (elements_.empty()) throw InvariantViolation("basis-size", "empty basis");
    dim_ = elements_.front().dim();
    if (static_cast<int>(elements_.size()) != dim_ * dim_)
      throw InvariantViolation("basis-size", "basis must have d^2 elements",
                               static_cast<double>(elements_.size()));
    coords_ = gleason::coordinate_matrix(elements_);
    Eigen::JacobiSVD<MatrixXd> svd(coords_);
    singular_values_ = svd.singularValues();
    rank_ = numerical_rank(singular_values_, tol.rank_cutoff);
    qr_.compute(coords_);
    if (kind_ == Kind::orthonormal) {
      const double err = (gram() - MatrixXd::Identity(size(), size())).cwiseAbs().maxCoeff();
      if (err > tol.residual)
        throw InvariantViolation("orthonormal", "Gram matrix differs from identity", err);
    }
  }

  int dim() const { return dim_; }
  int size() const { return dim_ * dim_; }
  Kind kind() const { return kind_; }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const HermitianOperator& operator[](int j) const { return elements_[j]; }
  const ToleranceConfig& tolerances() const { return tol_; }

  /// Columns are the orthonormal coordinates of the elements.
  const MatrixXd& coordinate_matrix() const { return coords_; }
  MatrixXd gram() const { return coords_.transpose() * coords_; }
  const VectorXd& singular_values() const { return singular_values_; }
  double min_singular_value() const { return singular_values_.minCoeff(); }
  int rank() const { return rank_; }
  bool independent() const { return rank_ == size(); }

  void require_independent() const {
    if (!independent())
      throw SingularBasis("basis is numerically singular: rank " + std::to_string(rank_) +
                          " < " + std::to_string(size()));
  }

  /// Coefficients e with sum_j e_j B_j = h.
  VectorXd expand(const HermitianOperator& h) const {
    require_same_dim(dim_, h.dim());
    require_independent();
    return qr_.solve(h.real_vector());
  }

  /// Solves for several coordinate columns at once.
  MatrixXd solve_coordinates(const MatrixXd& rhs) const {
    require_independent();
    return qr_.solve(rhs);
  }

  HermitianOperator combine(const VectorXd& coeffs) const {
    if (coeffs.size() != size()) throw DimensionMismatch(static_cast<int>(coeffs.size()), size());
    return HermitianOperator::from_real_vector(dim_, coords_ * coeffs);
  }

 private:
  std::vector<HermitianOperator> elements_;
  Kind kind_ = Kind::generic;
  ToleranceConfig tol_;
  int dim_ = 0;
  int rank_ = 0;
  MatrixXd coords_;
  VectorXd singular_values_;
  Eigen::ColPivHouseholderQR<MatrixXd> qr_;
};

inline const char* to_string(OperatorBasis::Kind k) {
  switch (k) {
    case OperatorBasis::Kind::orthonormal: return "orthonormal";
    case OperatorBasis::Kind::augmented: return "augmented";
    case OperatorBasis::Kind::mic_pom: return "mic-pom";
    case OperatorBasis::Kind::generic: return "generic";
  }
  return "generic";
}

/// I/sqrt(d); symmetric and antisymmetric off-diagonal units for each j < k;
/// then the d - 1 traceless diagonal operators. For d = 2 this is
/// {I, X, Y, Z} / sqrt(2).
inline OperatorBasis orthonormal_operator_basis(int d, const ToleranceConfig& tol = {}) {
  if (d < 2) throw InvariantViolation("dimension", "need d >= 2", d);
  std::vector<HermitianOperator> out;
  out.reserve(d * d);
  out.push_back(HermitianOperator::identity(d) / std::sqrt(static_cast<double>(d)));
  const double r2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      MatrixXc sym = MatrixXc::Zero(d, d);
      sym(j, k) = r2;
      sym(k, j) = r2;
      out.push_back(HermitianOperator::from_matrix(sym));
      MatrixXc anti = MatrixXc::Zero(d, d);
      anti(j, k) = cplx(0, -r2);
      anti(k, j) = cplx(0, r2);
      out.push_back(HermitianOperator::from_matrix(anti));
    }
  for (int l = 1; l < d; ++l) {
    std::vector<double> diag(d, 0.0);
    const double n = std::sqrt(static_cast<double>(l * (l + 1)));
    for (int m = 0; m < l; ++m) diag[m] = 1.0 / n;
    diag[l] = -l / n;
    out.push_back(HermitianOperator::diagonal(diag));
  }
  return OperatorBasis(std::move(out), OperatorBasis::Kind::orthonormal, tol);
}

inline VectorXd expand(const HermitianOperator& h, const OperatorBasis& basis) {
  return basis.expand(h);
}

/// D maps `from`-coordinates to `to`-coordinates; inverse_transpose is D^{-T}.
struct BasisChange {
  MatrixXd forward;
  MatrixXd inverse_transpose;
};

inline BasisChange change_of_basis(const OperatorBasis& from, const OperatorBasis& to) {
  require_same_dim(from.dim(), to.dim());
  BasisChange out;
  out.forward = to.solve_coordinates(from.coordinate_matrix());
  out.inverse_transpose = from.solve_coordinates(to.coordinate_matrix()).transpose();
  return out;
}

}  // namespace gleason
