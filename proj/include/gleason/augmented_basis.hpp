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

#include <optional>
#include <string>
#include <vector>

#include "gleason/effect_algebra.hpp"
#include "gleason/operator_space.hpp"

namespace gleason {

inline double orthonormality_error(const MatrixXc& onb) {
  const auto d = onb.cols();
  return (onb.adjoint() * onb - MatrixXc::Identity(d, d)).cwiseAbs().maxCoeff();
}

/**
 * Completes the projectors onto the columns e_j of `onb` to d^2 linearly
 * independent rank-one projectors: first |e_j><e_j|, then for each j < k the
 * projectors onto (e_j + e_k)/sqrt(2) and (e_j + i e_k)/sqrt(2).
 */
inline std::vector<HermitianOperator> complete_projector_basis(const MatrixXc& onb,
                                                               const ToleranceConfig& tol = {}) {
  if (onb.rows() != onb.cols() || onb.rows() < 2)
    throw InvariantViolation("dimension", "need a square d x d vector matrix, d >= 2");
  const double err = orthonormality_error(onb);
  if (err > tol.residual) throw InvariantViolation("orthonormal", "input vectors", err);
  const int d = static_cast<int>(onb.cols());
  std::vector<HermitianOperator> out;
  out.reserve(d * d);
  for (int j = 0; j < d; ++j) out.push_back(HermitianOperator::projector(onb.col(j)));
  const cplx i(0.0, 1.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      out.push_back(HermitianOperator::projector(VectorXc(onb.col(j) + onb.col(k))));
      out.push_back(HermitianOperator::projector(VectorXc(onb.col(j) + i * onb.col(k))));
    }
  return out;
}

/// d^2 linearly independent rank-one effects B_j whose first d elements are
/// c |e_j><e_j| and whose sum is an effect.
class AugmentedBasis {
 public:
  /// Assembles without validation; see validate_augmented.
  AugmentedBasis(MatrixXc onb, std::vector<HermitianOperator> elements, double c, double gamma,
                 const ToleranceConfig& tol = {})
      : onb_(std::move(onb)),
        c_(c),
        gamma_(gamma),
        view_(std::move(elements), OperatorBasis::Kind::augmented, tol) {}

  int dim() const { return view_.dim(); }
  const MatrixXc& onb() const { return onb_; }
  double c() const { return c_; }
  double gamma() const { return gamma_; }
  const std::vector<HermitianOperator>& elements() const { return view_.elements(); }
  const HermitianOperator& operator[](int j) const { return view_[j]; }
  const OperatorBasis& basis() const { return view_; }

  HermitianOperator sum() const {
    HermitianOperator s = HermitianOperator::zero(dim());
    for (const auto& b : elements()) s += b;
    return s;
  }

 private:
  MatrixXc onb_;
  double c_;
  double gamma_;
  OperatorBasis view_;
};

/**
 * B_j = Pi_j / Gamma with Gamma the top eigenvalue of G = sum_j Pi_j, so that
 * c = 1 / Gamma. An explicit `c` rescales every projector by c instead and is
 * accepted only while c G is still an effect.
 */
inline AugmentedBasis augmented_basis_from_onb(const MatrixXc& onb, const ToleranceConfig& tol = {},
                                               std::optional<double> c = std::nullopt) {
  auto projectors = complete_projector_basis(onb, tol);
  const int d = static_cast<int>(onb.cols());
  HermitianOperator g = HermitianOperator::zero(d);
  for (const auto& p : projectors) g += p;
  const double gamma = max_eigenvalue(g, tol);
  double scale = 1.0 / gamma;
  if (c) {
    if (!(*c > 0.0 && *c < 1.0)) throw InvariantViolation("c-range", "c must lie in (0, 1)", *c);
    const double top = *c * gamma;
    if (top > 1.0 + tol.psd_slack)
      throw InvariantViolation("sum-is-effect", "c * G has an eigenvalue above one", top);
    scale = *c;
  }
  for (auto& p : projectors) p *= scale;
  return AugmentedBasis(onb, std::move(projectors), scale, gamma, tol);
}

inline AugmentedBasis augmented_basis_canonical(int d, const ToleranceConfig& tol = {}) {
  return augmented_basis_from_onb(MatrixXc::Identity(d, d), tol);
}

struct ConditionResult {
  std::string name;
  bool passed = false;
  double witness = 0.0;
};

struct AugmentedReport {
  std::vector<ConditionResult> conditions;

  bool ok() const {
    for (const auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
  const ConditionResult* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Checks the four defining conditions; never throws on invalid content.
inline AugmentedReport validate_augmented(const AugmentedBasis& b, const ToleranceConfig& tol = {}) {
  AugmentedReport rep;
  const int d = b.dim();

  {
    ConditionResult r{"first-d-projectors", true, 0.0};
    if (!(b.c() > 0.0 && b.c() < 1.0)) {
      r.passed = false;
      r.witness = b.c();
    } else if (b.onb().rows() != d || b.onb().cols() != d ||
               orthonormality_error(b.onb()) > tol.residual) {
      r.passed = false;
      r.witness = b.onb().cols() == d ? orthonormality_error(b.onb()) : -1.0;
    } else {
      for (int j = 0; j < d; ++j) {
        const double dev =
            hs_distance(b[j], b.c() * HermitianOperator::projector(b.onb().col(j)));
        r.witness = std::max(r.witness, dev);
      }
      r.passed = r.witness <= tol.residual;
    }
    rep.conditions.push_back(r);
  }
  {
    const auto chk = is_effect(b.sum(), tol);
    rep.conditions.push_back({"sum-is-effect", chk.ok, chk.ok ? chk.max_eigenvalue : chk.witness});
  }
  {
    // Rank one effect: spectrum (lambda, 0, ..., 0) with 0 < lambda <= 1.
    ConditionResult r{"rank-one-effects", true, 0.0};
    for (const auto& e : b.elements()) {
      const auto chk = is_effect(e, tol);
      const auto ev = eig_hermitian(e, tol);
      const double second = ev.values.size() > 1 ? ev.values(1) : 0.0;
      if (!chk.ok) {
        r.passed = false;
        r.witness = chk.witness;
        break;
      }
      if (!(ev.max() > tol.psd_slack) || second > tol.psd_slack) {
        r.passed = false;
        r.witness = second;
        break;
      }
      r.witness = std::max(r.witness, second);
    }
    rep.conditions.push_back(r);
  }
  rep.conditions.push_back({"linear-independence", b.basis().independent(),
                            static_cast<double>(b.basis().rank())});
  return rep;
}

/// [[B_1, ..., B_{d^2}, I - sum_j B_j]]; the last entry is the completion
/// element.
inline Pom completion_pom(const AugmentedBasis& b, const ToleranceConfig& tol = {}) {
  std::vector<HermitianOperator> effects = b.elements();
  effects.push_back(HermitianOperator::identity(b.dim()) - b.sum());
  return Pom::create(std::move(effects), tol);
}

}  // namespace gleason
