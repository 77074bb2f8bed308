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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gleason {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/**
 * Numerical tolerances shared by every floating-point module.
 *
 * eig_offdiag  - Jacobi stops once the off-diagonal Frobenius norm drops below
 *                this (scaled by max(1, |A|_F)).
 * psd_slack    - magnitude by which an eigenvalue may leave [0, 1] and still
 *                count as inside.
 * residual     - accepted reconstruction / decomposition residual.
 * rank_cutoff  - singular values below rank_cutoff * sigma_max count as zero.
 */
struct ToleranceConfig {
  double eig_offdiag = 1e-13;
  double psd_slack = 1e-9;
  double residual = 1e-8;
  double rank_cutoff = 1e-8;
  int max_sweeps = 100;

  bool valid() const {
    return eig_offdiag > 0 && psd_slack > 0 && residual > 0 &&
           rank_cutoff > 0 && psd_slack <= residual && max_sweeps > 0;
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(int a, int b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

class SingularBasis : public Error {
 public:
  explicit SingularBasis(const std::string& what) : Error(what) {}
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A named invariant failed; `witness` is the offending numeric value, if any.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string name, const std::string& detail,
                     double witness = 0.0)
      : Error(name + ": " + detail), name_(std::move(name)), witness_(witness) {}

  const std::string& name() const { return name_; }
  double witness() const { return witness_; }

 private:
  std::string name_;
  double witness_;
};

inline void require_same_dim(int a, int b) {
  if (a != b) throw DimensionMismatch(a, b);
}

}  // namespace gleason
