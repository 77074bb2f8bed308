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

#include "gleason/augmented_basis.hpp"
#include "gleason/effect_algebra.hpp"
#include "gleason/nnls.hpp"
#include "gleason/operator_space.hpp"
#include "gleason/random.hpp"

namespace gleason {

/// Nonnegative coefficients of an operator in the positive cone of a basis.
struct ConeDecomposition {
  VectorXd coeffs;
  double residual = 0.0;

  int nonzero() const {
    int n = 0;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j)
      if (coeffs(j) != 0.0) ++n;
    return n;
  }
  double min_coeff() const { return coeffs.minCoeff(); }
};

struct SpectralConeDecomposition {
  AugmentedBasis basis;
  ConeDecomposition decomposition;
};

/**
 * Writes an effect as a nonnegative combination of an augmented basis built
 * on its own eigenbasis: coefficient lambda_j / c on the first d elements and
 * zero elsewhere. Eigenvalues within psd_slack below zero are taken as zero,
 * so the coefficients are nonnegative by construction.
 */
inline SpectralConeDecomposition cone_decompose_spectral(const Effect& e,
                                                         const ToleranceConfig& tol = {}) {
  const auto eig = eig_hermitian(e.op(), tol);
  AugmentedBasis basis = augmented_basis_from_onb(eig.vectors, tol);
  const int d = e.dim();
  ConeDecomposition dec;
  dec.coeffs = VectorXd::Zero(d * d);
  for (int j = 0; j < d; ++j) dec.coeffs(j) = std::max(0.0, eig.values(j)) / basis.c();
  dec.residual = hs_distance(basis.basis().combine(dec.coeffs), e.op());
  return {std::move(basis), std::move(dec)};
}

/// Nonnegative least squares in the coordinates of `s`; absent when the best
/// nonnegative fit leaves a residual of at least tol.residual. For a basis
/// the feasible coefficient vector is unique.
inline std::optional<ConeDecomposition> cone_membership(const HermitianOperator& h,
                                                        const OperatorBasis& s,
                                                        const ToleranceConfig& tol = {}) {
  require_same_dim(h.dim(), s.dim());
  const auto sol = nnls(s.coordinate_matrix(), h.real_vector());
  if (!(sol.residual < tol.residual)) return std::nullopt;
  return ConeDecomposition{sol.x, sol.residual};
}

struct InteriorPoint {
  HermitianOperator point;  // E_delta
  double delta = 0.0;
  double epsilon = 0.0;
  double distance = 0.0;  // ||E_delta - I/d||
};

/// E_delta = I/d + delta sum_{j>d} B_j with delta = epsilon / (2 ||sum_{j>d} B_j||),
/// which places E_delta at distance epsilon/2 from I/d.
inline InteriorPoint interior_point_Edelta(const AugmentedBasis& b, double epsilon,
                                           const ToleranceConfig& tol = {}) {
  if (!(epsilon > 0)) throw InvariantViolation("epsilon", "epsilon must be positive", epsilon);
  const int d = b.dim();
  HermitianOperator tail = HermitianOperator::zero(d);
  for (int j = d; j < d * d; ++j) tail += b[j];
  InteriorPoint out;
  out.epsilon = epsilon;
  out.delta = epsilon / (2.0 * tail.norm());
  out.point = HermitianOperator::identity(d) / static_cast<double>(d) + out.delta * tail;
  out.distance = hs_distance(out.point, HermitianOperator::identity(d) / static_cast<double>(d));
  const auto chk = is_effect(out.point, tol);
  if (!chk.ok) throw InvariantViolation("effect", "E_delta is not an effect; halve epsilon", chk.witness);
  return out;
}

/**
 * d^2 linearly independent effects lying in both positive cones, each with
 * its two nonnegative decompositions.
 */
struct SpanCertificate {
  int dim = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double gamma = 0.0;  // ball radius actually used
  std::string method;  // "orthonormal-ball" or "random-ball"
  int epsilon_halvings = 0;
  int gamma_halvings = 0;
  HermitianOperator e_delta;
  std::vector<HermitianOperator> witnesses;
  std::vector<ConeDecomposition> augmented_coeffs;
  std::vector<ConeDecomposition> mic_coeffs;
  int rank = 0;
};

struct CertificateCheck {
  bool ok = true;
  int rank = 0;
  std::vector<std::string> failures;
};

/// Re-verifies a certificate against its two bases from scratch.
inline CertificateCheck verify_certificate(const SpanCertificate& cert, const OperatorBasis& b,
                                           const OperatorBasis& m, const ToleranceConfig& tol = {}) {
  CertificateCheck out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.failures.push_back(std::move(why));
  };
  const int n = cert.dim * cert.dim;
  if (b.dim() != cert.dim || m.dim() != cert.dim) {
    fail("dimension");
    return out;
  }
  if (static_cast<int>(cert.witnesses.size()) != n) {
    fail("witness-count");
    return out;
  }
  for (int k = 0; k < n; ++k) {
    const auto& w = cert.witnesses[k];
    const std::string tag = "witness " + std::to_string(k);
    if (!is_effect(w, tol).ok) fail(tag + ": not an effect");
    for (const auto* pair : {&b, &m}) {
      const auto& stored = (pair == &b ? cert.augmented_coeffs : cert.mic_coeffs);
      const char* which = pair == &b ? "augmented" : "mic-pom";
      if (static_cast<int>(stored.size()) != n) {
        fail(std::string(which) + ": coefficient count");
        continue;
      }
      const VectorXd& c = stored[k].coeffs;
      if (c.size() != n) {
        fail(tag + ": " + which + " coefficient size");
        continue;
      }
      if (c.minCoeff() < -tol.psd_slack) fail(tag + ": negative " + which + " coefficient");
      if (hs_distance(pair->combine(c), w) >= tol.residual) fail(tag + ": " + which + " residual");
    }
  }
  out.rank = operator_rank(cert.witnesses, tol.rank_cutoff);
  if (out.rank != n) fail("rank");
  if (cert.rank != out.rank) fail("stored rank");
  return out;
}

namespace detail {

inline bool fill_witnesses(SpanCertificate& cert, std::vector<HermitianOperator> candidates,
                           const OperatorBasis& b, const OperatorBasis& m,
                           const ToleranceConfig& tol) {
  std::vector<ConeDecomposition> cb, cm;
  for (const auto& w : candidates) {
    if (!is_effect(w, tol).ok) return false;
    auto db = cone_membership(w, b, tol);
    auto dm = cone_membership(w, m, tol);
    if (!db || !dm) return false;
    cb.push_back(std::move(*db));
    cm.push_back(std::move(*dm));
  }
  const int rank = operator_rank(candidates, tol.rank_cutoff);
  if (rank != b.size()) return false;
  cert.witnesses = std::move(candidates);
  cert.augmented_coeffs = std::move(cb);
  cert.mic_coeffs = std::move(cm);
  cert.rank = rank;
  return true;
}

}  // namespace detail

/**
 * Finds d^2 linearly independent effects in C(B) n C(M).
 *
 * E_delta is interior to both cones; epsilon is halved until that holds.
 * The starting radius is min over both cones of
 * (smallest coefficient of E_delta) * (smallest singular value of the basis),
 * a radius inside which no coefficient can change sign. Witnesses
 * E_delta + (gamma/2) W_k are tried with gamma halved on failure, then
 * seeded random points of the ball. Every witness is re-verified.
 */
inline SpanCertificate intersection_span_certificate(const AugmentedBasis& b, const MicPom& m,
                                                     std::optional<double> epsilon,
                                                     std::uint64_t seed,
                                                     const ToleranceConfig& tol = {}) {
  require_same_dim(b.dim(), m.dim());
  const int d = b.dim();
  constexpr int kMaxHalvings = 20;
  SpanCertificate cert;
  cert.dim = d;
  double eps = epsilon.value_or(1.0 / (4.0 * d));

  std::optional<InteriorPoint> ip;
  double min_b = 0.0, min_m = 0.0;
  for (int h = 0; h <= kMaxHalvings; ++h, eps *= 0.5) {
    cert.epsilon_halvings = h;
    try {
      ip = interior_point_Edelta(b, eps, tol);
    } catch (const InvariantViolation&) {
      continue;
    }
    const auto db = cone_membership(ip->point, b.basis(), tol);
    const auto dm = cone_membership(ip->point, m.basis(), tol);
    if (db && dm && db->min_coeff() > tol.psd_slack && dm->min_coeff() > tol.psd_slack) {
      min_b = db->min_coeff();
      min_m = dm->min_coeff();
      break;
    }
    ip.reset();
  }
  if (!ip) throw ConvergenceError("certificate stage E_delta: no interior point found");
  cert.epsilon = ip->epsilon;
  cert.delta = ip->delta;
  cert.e_delta = ip->point;

  const double gamma0 = std::min(min_b * b.basis().min_singular_value(),
                                 min_m * m.basis().min_singular_value());
  const OperatorBasis w = orthonormal_operator_basis(d, tol);
  double gamma = gamma0;
  for (int h = 0; h <= kMaxHalvings; ++h, gamma *= 0.5) {
    std::vector<HermitianOperator> cand;
    for (const auto& wk : w.elements()) cand.push_back(ip->point + (gamma / 2.0) * wk);
    if (detail::fill_witnesses(cert, std::move(cand), b.basis(), m.basis(), tol)) {
      cert.gamma = gamma;
      cert.gamma_halvings = h;
      cert.method = "orthonormal-ball";
      return cert;
    }
  }

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int attempt = 0; attempt < 4 * kMaxHalvings; ++attempt) {
    const double radius = gamma0 * std::pow(0.5, attempt / 4);
    std::vector<HermitianOperator> cand;
    for (int k = 0; k < d * d; ++k) {
      HermitianOperator dir = random_hermitian(d, rng);
      dir = dir / dir.norm();
      cand.push_back(ip->point + (radius * u(rng)) * dir);
    }
    if (detail::fill_witnesses(cert, std::move(cand), b.basis(), m.basis(), tol)) {
      cert.gamma = radius;
      cert.method = "random-ball";
      return cert;
    }
  }
  throw ConvergenceError("certificate stage witnesses: no rank-d^2 witness set found");
}

}  // namespace gleason
