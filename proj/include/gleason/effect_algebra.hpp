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
#include <optional>
#include <string>
#include <vector>

#include "gleason/operator_space.hpp"
#include "gleason/random.hpp"

namespace gleason {

struct EffectCheck {
  bool ok = false;
  double witness = 0.0;  // offending eigenvalue when !ok
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;

  explicit operator bool() const { return ok; }
};

/// Spectrum inside [-psd_slack, 1 + psd_slack].
inline EffectCheck is_effect(const HermitianOperator& h, const ToleranceConfig& tol = {}) {
  const auto e = eig_hermitian(h, tol);
  EffectCheck out;
  out.min_eigenvalue = e.min();
  out.max_eigenvalue = e.max();
  if (e.min() < -tol.psd_slack) {
    out.witness = e.min();
  } else if (e.max() > 1.0 + tol.psd_slack) {
    out.witness = e.max();
  } else {
    out.ok = true;
  }
  return out;
}

/// A Hermitian operator E with 0 <= E <= I.
class Effect {
 public:
  static Effect create(HermitianOperator h, const ToleranceConfig& tol = {}) {
    const auto chk = is_effect(h, tol);
    if (!chk.ok)
      throw InvariantViolation("effect", "spectrum leaves [0, 1]", chk.witness);
    return Effect(std::move(h));
  }

  const HermitianOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }

 private:
  explicit Effect(HermitianOperator h) : op_(std::move(h)) {}
  HermitianOperator op_;
};

/// E1 and E2 coexist iff E1 + E2 is again an effect.
inline bool coexists(const Effect& e1, const Effect& e2, const ToleranceConfig& tol = {}) {
  require_same_dim(e1.dim(), e2.dim());
  return is_effect(e1.op() + e2.op(), tol).ok;
}

/// 1 / lambda_max(E): the largest x with x E still an effect.
inline double max_scale(const Effect& e, const ToleranceConfig& tol = {}) {
  const double top = max_eigenvalue(e.op(), tol);
  if (!(top > tol.psd_slack))
    throw InvariantViolation("nonzero", "max_scale of the zero effect", top);
  return 1.0 / top;
}

struct PomReport {
  bool ok = true;
  std::string violated;  // empty when ok
  int index = -1;        // offending element, if any
  double witness = 0.0;
  double sum_residual = 0.0;
  int rank = 0;
};

/// Total check of the POM conditions; `require_mic` adds the rank-d^2 test.
inline PomReport pom_report(const std::vector<HermitianOperator>& effects,
                            const ToleranceConfig& tol = {}, bool require_mic = false) {
  PomReport r;
  if (effects.size() < 2) {
    r.ok = false;
    r.violated = "size";
    r.witness = static_cast<double>(effects.size());
    return r;
  }
  const int d = effects.front().dim();
  HermitianOperator sum = HermitianOperator::zero(d);
  for (std::size_t j = 0; j < effects.size(); ++j) {
    if (effects[j].dim() != d) {
      r.ok = false;
      r.violated = "dimension";
      r.index = static_cast<int>(j);
      return r;
    }
    sum += effects[j];
  }
  for (std::size_t j = 0; j < effects.size(); ++j) {
    const auto chk = is_effect(effects[j], tol);
    if (!chk.ok) {
      r.ok = false;
      r.violated = "effect";
      r.index = static_cast<int>(j);
      r.witness = chk.witness;
      return r;
    }
  }
  r.sum_residual = hs_distance(sum, HermitianOperator::identity(d));
  if (r.sum_residual > tol.residual) {
    r.ok = false;
    r.violated = "sum-to-identity";
    r.witness = r.sum_residual;
    return r;
  }
  r.rank = operator_rank(effects, tol.rank_cutoff);
  if (require_mic && (static_cast<int>(effects.size()) != d * d || r.rank != d * d)) {
    r.ok = false;
    r.violated = "linear-independence";
    r.witness = r.rank;
  }
  return r;
}

/// Finite sequence of effects summing to the identity.
class Pom {
 public:
  static Pom create(std::vector<HermitianOperator> effects, const ToleranceConfig& tol = {}) {
    const auto r = pom_report(effects, tol);
    if (!r.ok) throw InvariantViolation(r.violated, "not a POM", r.witness);
    Pom p;
    p.dim_ = effects.front().dim();
    p.effects_ = std::move(effects);
    return p;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return effects_.size(); }
  const std::vector<HermitianOperator>& effects() const { return effects_; }

 private:
  Pom() = default;
  int dim_ = 0;
  std::vector<HermitianOperator> effects_;
};

/// A POM of exactly d^2 linearly independent effects; doubles as a basis.
class MicPom {
 public:
  static MicPom create(std::vector<HermitianOperator> effects, const ToleranceConfig& tol = {}) {
    const auto r = pom_report(effects, tol, /*require_mic=*/true);
    if (!r.ok) throw InvariantViolation(r.violated, "not a MIC-POM", r.witness);
    Pom pom = Pom::create(effects, tol);
    OperatorBasis basis(std::move(effects), OperatorBasis::Kind::mic_pom, tol);
    return MicPom(std::move(pom), std::move(basis));
  }

  int dim() const { return pom_.dim(); }
  const Pom& pom() const { return pom_; }
  const OperatorBasis& basis() const { return basis_; }
  const std::vector<HermitianOperator>& effects() const { return pom_.effects(); }

 private:
  MicPom(Pom p, OperatorBasis b) : pom_(std::move(p)), basis_(std::move(b)) {}
  Pom pom_;
  OperatorBasis basis_;
};

/// Positive semidefinite, unit trace.
class DensityOperator {
 public:
  static DensityOperator create(HermitianOperator h, const ToleranceConfig& tol = {}) {
    const double lo = min_eigenvalue(h, tol);
    if (lo < -tol.psd_slack) throw InvariantViolation("positive", "negative eigenvalue", lo);
    if (std::abs(h.trace() - 1.0) > tol.residual)
      throw InvariantViolation("unit-trace", "trace differs from one", h.trace());
    return DensityOperator(std::move(h));
  }

  const HermitianOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }

 private:
  explicit DensityOperator(HermitianOperator h) : op_(std::move(h)) {}
  HermitianOperator op_;
};

/// Qubit SIC: M_j = (I + s_j . sigma) / 4 with s_j the vertices of a regular
/// tetrahedron on the Bloch sphere.
inline MicPom sic_mic_pom(int d = 2, const ToleranceConfig& tol = {}) {
  if (d != 2) throw InvariantViolation("dimension", "closed-form SIC only for d = 2", d);
  const double s2 = std::sqrt(2.0);
  const double bloch[4][3] = {
      {0.0, 0.0, 1.0},
      {2.0 * s2 / 3.0, 0.0, -1.0 / 3.0},
      {-s2 / 3.0, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
      {-s2 / 3.0, -std::sqrt(2.0 / 3.0), -1.0 / 3.0},
  };
  std::vector<HermitianOperator> effects;
  for (const auto& s : bloch) {
    MatrixXc m(2, 2);
    m(0, 0) = 1.0 + s[2];
    m(1, 1) = 1.0 - s[2];
    m(0, 1) = cplx(s[0], -s[1]);
    m(1, 0) = cplx(s[0], s[1]);
    effects.push_back(HermitianOperator::from_matrix(m / 4.0));
  }
  return MicPom::create(std::move(effects), tol);
}

/**
 * Seeded random MIC-POM.
 *
 * Draws d^2 random rank-one positive operators A_j with sum S, rescales them
 * to (t / lambda_max(S)) A_j with t = 1/2, and adds (I - sum) / d^2 to each.
 * The result sums to I with every element positive; the rank certificate is
 * re-checked and the draw repeated from the advancing engine on failure.
 */
inline MicPom random_mic_pom(int d, std::uint64_t seed, const ToleranceConfig& tol = {}) {
  if (d < 2) throw InvariantViolation("dimension", "need d >= 2", d);
  constexpr int kMaxRetries = 32;
  constexpr double kShrink = 0.5;
  Rng rng = make_rng(seed);
  const int n = d * d;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<HermitianOperator> raw;
    HermitianOperator sum = HermitianOperator::zero(d);
    for (int j = 0; j < n; ++j) {
      const VectorXc v = gaussian_vector(d, rng);
      raw.push_back(HermitianOperator::hermitian_part(v * v.adjoint()));
      sum += raw.back();
    }
    const double scale = kShrink / max_eigenvalue(sum, tol);
    const HermitianOperator rest =
        (HermitianOperator::identity(d) - scale * sum) / static_cast<double>(n);
    std::vector<HermitianOperator> effects;
    for (const auto& a : raw) effects.push_back(scale * a + rest);
    if (pom_report(effects, tol, true).ok) return MicPom::create(std::move(effects), tol);
  }
  throw ConvergenceError("random_mic_pom: retry limit exceeded for seed " +
                         std::to_string(seed));
}

/// X X^dagger / Tr(X X^dagger) with X complex Ginibre.
inline DensityOperator random_density(int d, Rng& rng, const ToleranceConfig& tol = {}) {
  if (d < 2) throw InvariantViolation("dimension", "need d >= 2", d);
  const MatrixXc x = ginibre(d, rng);
  const MatrixXc xx = x * x.adjoint();
  return DensityOperator::create(
      HermitianOperator::hermitian_part(xx / xx.trace().real()), tol);
}

inline DensityOperator random_density(int d, std::uint64_t seed, const ToleranceConfig& tol = {}) {
  Rng rng = make_rng(seed);
  return random_density(d, rng, tol);
}

/// Random Hermitian operator mapped affinely onto a random sub-interval
/// [lo, hi] of [0, 1].
inline Effect random_effect(int d, Rng& rng, const ToleranceConfig& tol = {}) {
  if (d < 2) throw InvariantViolation("dimension", "need d >= 2", d);
  const HermitianOperator h = random_hermitian(d, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double lo = u(rng), hi = u(rng);
  if (lo > hi) std::swap(lo, hi);
  const auto e = eig_hermitian(h, tol);
  const double span = e.max() - e.min();
  const double alpha = span > 0 ? (hi - lo) / span : 0.0;
  HermitianOperator out =
      alpha * (h - e.min() * HermitianOperator::identity(d)) + lo * HermitianOperator::identity(d);
  return Effect::create(std::move(out), tol);
}

inline Effect random_effect(int d, std::uint64_t seed, const ToleranceConfig& tol = {}) {
  Rng rng = make_rng(seed);
  return random_effect(d, rng, tol);
}

}  // namespace gleason
