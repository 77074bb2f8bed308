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

#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace gleason {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // ||A x - b||
  int iterations = 0;
  bool converged = false;
};

/**
 * Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
 *
 * The passive set P grows by the most positive dual component and the
 * inner loop steps back along the segment to the last feasible point
 * whenever the unconstrained solution on P leaves the orthant.
 */
inline NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iter = 0) {
  const auto n = a.cols();
  if (max_iter <= 0) max_iter = static_cast<int>(3 * n + 10);
  const double eps = std::numeric_limits<double>::epsilon();
  const double dual_tol =
      10.0 * eps * a.norm() * static_cast<double>(std::max(a.rows(), n)) * std::max(1.0, b.norm());

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    const Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Eigen::Index>(k));
    return s;
  };

  Eigen::VectorXd w = a.transpose() * (b - a * out.x);
  while (out.iterations < max_iter) {
    Eigen::Index t = -1;
    double best = dual_tol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[j] && w(j) > best) {
        best = w(j);
        t = j;
      }
    if (t < 0) {
      out.converged = true;
      break;
    }
    passive[t] = true;
    ++out.iterations;

    while (true) {
      Eigen::VectorXd s = solve_passive();
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && s(j) <= 0.0) feasible = false;
      if (feasible) {
        out.x = s;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && s(j) <= 0.0) alpha = std::min(alpha, out.x(j) / (out.x(j) - s(j)));
      out.x += alpha * (s - out.x);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && out.x(j) <= eps * std::max(1.0, out.x.cwiseAbs().maxCoeff())) {
          passive[j] = false;
          out.x(j) = 0.0;
        }
      ++out.iterations;
      if (out.iterations >= max_iter) break;
    }
    w = a.transpose() * (b - a * out.x);
  }
  out.residual = (a * out.x - b).norm();
  return out;
}

}  // namespace gleason
