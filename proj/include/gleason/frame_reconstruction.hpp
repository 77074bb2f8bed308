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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "gleason/augmented_basis.hpp"
#include "gleason/cone_geometry.hpp"
#include "gleason/effect_algebra.hpp"
#include "gleason/operator_space.hpp"
#include "gleason/random.hpp"

namespace gleason {

/**
 * A probability assignment on effects, held as an evaluation oracle.
 *
 * born:        f(E) = Tr(rho E)
 * tabulated:   f(E) = expand(E, basis) . values
 * adversarial: any other callable; adversarial_square gives (Tr rho E)^2.
 *
 * Evaluation is const and stateless, so one frame may be shared across
 * threads.
 */
class FrameFunction {
 public:
  enum class Kind { born, tabulated, adversarial };
  using Oracle = std::function<double(const HermitianOperator&)>;

  static FrameFunction born(const DensityOperator& rho) {
    FrameFunction f(Kind::born, rho.dim(), "born");
    f.state_ = rho.op();
    f.eval_ = [r = rho.op()](const HermitianOperator& e) { return hs_inner(r, e); };
    return f;
  }

  static FrameFunction tabulated(OperatorBasis basis, VectorXd values) {
    basis.require_independent();
    if (values.size() != basis.size())
      throw DimensionMismatch(static_cast<int>(values.size()), basis.size());
    FrameFunction f(Kind::tabulated, basis.dim(), "tabulated");
    f.basis_ = std::make_shared<const OperatorBasis>(std::move(basis));
    f.values_ = values;
    f.eval_ = [b = f.basis_, v = std::move(values)](const HermitianOperator& e) {
      return b->expand(e).dot(v);
    };
    return f;
  }

  static FrameFunction adversarial(std::string tag, int dim, Oracle fn) {
    FrameFunction f(Kind::adversarial, dim, std::move(tag));
    f.eval_ = std::move(fn);
    return f;
  }

  /// (Tr rho E)^2: maps I to 1 and stays in [0, 1], but is not additive.
  static FrameFunction adversarial_square(const DensityOperator& rho) {
    auto f = adversarial("square", rho.dim(), [r = rho.op()](const HermitianOperator& e) {
      const double p = hs_inner(r, e);
      return p * p;
    });
    f.state_ = rho.op();
    return f;
  }

  double operator()(const Effect& e) const {
    require_same_dim(dim_, e.dim());
    return eval_(e.op());
  }

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  const std::string& tag() const { return tag_; }
  const std::optional<HermitianOperator>& state() const { return state_; }
  const OperatorBasis* basis() const { return basis_.get(); }
  const VectorXd& values() const { return values_; }

 private:
  FrameFunction(Kind k, int dim, std::string tag) : kind_(k), dim_(dim), tag_(std::move(tag)) {}

  Kind kind_;
  int dim_;
  std::string tag_;
  Oracle eval_;
  std::optional<HermitianOperator> state_;
  std::shared_ptr<const OperatorBasis> basis_;
  VectorXd values_;
};

struct CoexistingPair {
  Effect first;
  Effect second;
};

/// E2 = S F S with S = sqrt(I - E1) and F a random effect, so E1 + E2 <= I
/// holds by construction.
inline CoexistingPair sample_coexisting_pair(int d, Rng& rng, const ToleranceConfig& tol = {}) {
  Effect e1 = random_effect(d, rng, tol);
  const Effect f = random_effect(d, rng, tol);
  const HermitianOperator s = sqrt_psd(HermitianOperator::identity(d) - e1.op(), tol);
  Effect e2 = Effect::create(sandwich(s, f.op()), tol);
  return {std::move(e1), std::move(e2)};
}

struct AdditivityReport {
  int trials = 0;
  double max_violation = 0.0;         // includes the I/2 + I/2 probe
  double random_max_violation = 0.0;  // random pairs only
  double normalization = 0.0;         // f(I)
  double value_min = 0.0;
  double value_max = 0.0;
  bool additive = false;
  bool normalized = false;
  bool in_range = false;

  bool pass() const { return additive && normalized && in_range; }
};

/**
 * Samples coexisting pairs and records max |f(E1) + f(E2) - f(E1 + E2)|.
 * The pair E1 = E2 = I/2 is always probed first, followed by `trials`
 * random pairs. Also checks f(I) = 1 and that every observed value lies in
 * [0, 1] up to psd_slack.
 */
inline AdditivityReport check_additivity(const FrameFunction& f, int trials, std::uint64_t seed,
                                         const ToleranceConfig& tol = {}) {
  if (trials < 1) throw InvariantViolation("trials", "need at least one trial", trials);
  const int d = f.dim();
  AdditivityReport r;
  r.trials = trials;
  const HermitianOperator id = HermitianOperator::identity(d);
  r.normalization = f(Effect::create(id, tol));
  r.value_min = r.value_max = r.normalization;
  auto observe = [&](double v) {
    r.value_min = std::min(r.value_min, v);
    r.value_max = std::max(r.value_max, v);
    return v;
  };
  auto violation = [&](const Effect& a, const Effect& b) {
    const Effect sum = Effect::create(a.op() + b.op(), tol);
    return std::abs(observe(f(a)) + observe(f(b)) - observe(f(sum)));
  };

  const Effect half = Effect::create(id * 0.5, tol);
  r.max_violation = violation(half, half);
  Rng rng = make_rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto pair = sample_coexisting_pair(d, rng, tol);
    r.random_max_violation = std::max(r.random_max_violation, violation(pair.first, pair.second));
  }
  r.max_violation = std::max(r.max_violation, r.random_max_violation);
  r.additive = r.max_violation <= tol.residual;
  r.normalized = std::abs(r.normalization - 1.0) <= tol.residual;
  r.in_range = r.value_min >= -tol.psd_slack && r.value_max <= 1.0 + tol.psd_slack;
  return r;
}

/// Component j is f(basis_j); every element must be an effect.
inline VectorXd frame_vector(const FrameFunction& f, const OperatorBasis& basis,
                             const ToleranceConfig& tol = {}) {
  require_same_dim(f.dim(), basis.dim());
  VectorXd out(basis.size());
  for (int j = 0; j < basis.size(); ++j) out(j) = f(Effect::create(basis[j], tol));
  return out;
}

struct ReconstructionReport {
  HermitianOperator rho_hat;
  VectorXd frame_values;    // f on the MIC-POM
  VectorXd orthonormal_coeffs;  // rho_hat in the orthonormal basis
  double trace = 0.0;
  double min_eigenvalue = 0.0;
  double max_deviation = 0.0;  // max |f(E) - Tr(rho_hat E)| over the test set
  int test_set_size = 0;
  bool pass = false;
};

/**
 * rho_hat = sum_j c'_j W_j with c' = C^{-T} f_M, where C takes MIC-POM
 * coordinates to orthonormal coordinates. The result is checked against f on
 * `test_size` seeded random effects.
 */
inline ReconstructionReport reconstruct_density(const FrameFunction& f, const MicPom& m,
                                                const OperatorBasis& w,
                                                const ToleranceConfig& tol = {},
                                                std::uint64_t test_seed = 0,
                                                int test_size = 200) {
  require_same_dim(f.dim(), m.dim());
  require_same_dim(w.dim(), m.dim());
  if (w.kind() != OperatorBasis::Kind::orthonormal)
    throw InvariantViolation("orthonormal", "reconstruction needs an orthonormal basis");
  m.basis().require_independent();

  ReconstructionReport r;
  r.frame_values = frame_vector(f, m.basis(), tol);
  const BasisChange change = change_of_basis(m.basis(), w);
  r.orthonormal_coeffs = change.inverse_transpose * r.frame_values;
  r.rho_hat = w.combine(r.orthonormal_coeffs);
  r.trace = r.rho_hat.trace();
  r.min_eigenvalue = min_eigenvalue(r.rho_hat, tol);

  Rng rng = make_rng(test_seed);
  r.test_set_size = test_size;
  for (int k = 0; k < test_size; ++k) {
    const Effect e = random_effect(f.dim(), rng, tol);
    r.max_deviation = std::max(r.max_deviation, std::abs(f(e) - hs_inner(r.rho_hat, e.op())));
  }
  r.pass = std::abs(r.trace - 1.0) <= tol.residual && r.min_eigenvalue >= -tol.psd_slack &&
           r.max_deviation < tol.residual;
  return r;
}

struct ConsistencyReport {
  double residual = 0.0;  // ||D^{-T} f_B - f_M||
  double witness_deviation_augmented = 0.0;  // max_G |f(G) - g . f_B|
  double witness_deviation_mic = 0.0;        // max_G |f(G) - g'' . f_M|
  VectorXd f_augmented;
  VectorXd f_mic;
};

/**
 * With D taking augmented-basis coordinates to MIC-POM coordinates, compares
 * D^{-T} f_B against f_M. The certificate's witnesses G, which carry
 * nonnegative coordinates in both bases, are evaluated as well.
 */
inline ConsistencyReport consistency_DT(const FrameFunction& f, const AugmentedBasis& b,
                                        const MicPom& m, const SpanCertificate& cert,
                                        const ToleranceConfig& tol = {}) {
  const auto chk = verify_certificate(cert, b.basis(), m.basis(), tol);
  if (!chk.ok)
    throw InvariantViolation("certificate", "certificate does not verify for these bases");
  ConsistencyReport r;
  r.f_augmented = frame_vector(f, b.basis(), tol);
  r.f_mic = frame_vector(f, m.basis(), tol);
  const BasisChange change = change_of_basis(b.basis(), m.basis());
  r.residual = (change.inverse_transpose * r.f_augmented - r.f_mic).norm();
  for (std::size_t k = 0; k < cert.witnesses.size(); ++k) {
    const double fg = f(Effect::create(cert.witnesses[k], tol));
    r.witness_deviation_augmented = std::max(
        r.witness_deviation_augmented, std::abs(fg - cert.augmented_coeffs[k].coeffs.dot(r.f_augmented)));
    r.witness_deviation_mic =
        std::max(r.witness_deviation_mic, std::abs(fg - cert.mic_coeffs[k].coeffs.dot(r.f_mic)));
  }
  return r;
}

struct RestrictionReport {
  int index = 0;
  double max_scale = 0.0;  // a_j
  double unit_value = 0.0; // F_j(1) = f(B_j)
  double value_at_zero = 0.0;
  double max_deviation = 0.0;
  double worst_x = 0.0;
  int samples = 0;
};

/// F_j(x) = f(x B_j) on `samples` equispaced points of [0, a_j], compared with
/// x f(B_j). `j` is zero-based.
inline RestrictionReport restriction_linearity_check(const FrameFunction& f,
                                                     const AugmentedBasis& b, int j, int samples,
                                                     const ToleranceConfig& tol = {}) {
  if (j < 0 || j >= b.basis().size())
    throw InvariantViolation("index", "basis index out of range", j);
  if (samples < 2) throw InvariantViolation("samples", "need at least two samples", samples);
  RestrictionReport r;
  r.index = j;
  r.samples = samples;
  const Effect bj = Effect::create(b[j], tol);
  r.max_scale = max_scale(bj, tol);
  r.unit_value = f(bj);
  for (int i = 0; i < samples; ++i) {
    const double x = r.max_scale * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double fx = f(Effect::create(x * b[j], tol));
    if (i == 0) r.value_at_zero = fx;
    const double dev = std::abs(fx - x * r.unit_value);
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_x = x;
    }
  }
  return r;
}

}  // namespace gleason
