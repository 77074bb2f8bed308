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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gleason/augmented_basis.hpp"
#include "gleason/cauchy_interval.hpp"
#include "gleason/cone_geometry.hpp"
#include "gleason/effect_algebra.hpp"
#include "gleason/frame_reconstruction.hpp"
#include "gleason/json_io.hpp"

namespace {

using namespace gleason;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

MatrixXc random_onb(int d, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_unitary(d, rng);
}

// 1. Reconstruction exactness.
Outcome reconstruction_exactness() {
  const auto t0 = Clock::now();
  double worst_dist = 0, worst_trace = 0, worst_min = 1;
  const auto w2 = orthonormal_operator_basis(2), w3 = orthonormal_operator_basis(3),
             w4 = orthonormal_operator_basis(4);
  for (int d : {2, 3, 4}) {
    const OperatorBasis& w = d == 2 ? w2 : (d == 3 ? w3 : w4);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto rho = random_density(d, 1000 * d + s);
      const auto m = random_mic_pom(d, 5000 * d + s);
      const auto rep = reconstruct_density(FrameFunction::born(rho), m, w, {}, s);
      worst_dist = std::max(worst_dist, hs_distance(rep.rho_hat, rho.op()));
      worst_trace = std::max(worst_trace, std::abs(rep.trace - 1.0));
      worst_min = std::min(worst_min, rep.min_eigenvalue);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome o;
  o.pass = worst_dist <= 1e-8 && worst_trace <= 1e-10 && worst_min >= -1e-9 && secs < 30;
  o.detail = "300 states; max dist " + fmt(worst_dist) + ", max |tr-1| " + fmt(worst_trace) +
             ", min eig " + fmt(worst_min) + ", " + fmt(secs) + " s";
  return o;
}

// 2. Two MIC-POMs give the same state.
Outcome basis_independence() {
  double worst = 0;
  for (int d : {2, 3}) {
    const auto w = orthonormal_operator_basis(d);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto f = FrameFunction::born(random_density(d, 20000 + 100 * d + s));
      const auto r1 = reconstruct_density(f, random_mic_pom(d, 21000 + 100 * d + s), w);
      const auto r2 = reconstruct_density(f, random_mic_pom(d, 22000 + 100 * d + s), w);
      worst = std::max(worst, hs_distance(r1.rho_hat, r2.rho_hat));
    }
  }
  return {worst <= 2e-8, "100 instances; max ||rho1 - rho2|| " + fmt(worst)};
}

// 3. Spectral cone decomposition.
Outcome spectral_decomposition() {
  double worst_res = 0, worst_coeff = 0;
  int worst_excess = 0;
  for (int d : {2, 3, 4}) {
    Rng rng = make_rng(30000 + d);
    for (int t = 0; t < 500; ++t) {
      const auto r = cone_decompose_spectral(random_effect(d, rng));
      worst_res = std::max(worst_res, r.decomposition.residual);
      worst_coeff = std::min(worst_coeff, r.decomposition.min_coeff());
      worst_excess = std::max(worst_excess, r.decomposition.nonzero() - d);
    }
  }
  return {worst_res <= 1e-8 && worst_coeff >= 0 && worst_excess <= 0,
          "1500 effects; max residual " + fmt(worst_res) + ", min coeff " + fmt(worst_coeff) +
              ", max (nonzero - d) " + std::to_string(worst_excess)};
}

// 4. Span certificates and their serialized re-verification.
Outcome span_certificates() {
  int bad_rank = 0, bad_verify = 0;
  double worst_dist = 0;
  for (int d : {2, 3}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto b = augmented_basis_from_onb(random_onb(d, 40000 + 100 * d + s));
      const auto m = random_mic_pom(d, 41000 + 100 * d + s);
      const auto cert = intersection_span_certificate(b, m, std::nullopt, s);
      if (cert.rank != d * d) ++bad_rank;
      const auto j = nlohmann::json::parse(io::certificate_to_json(cert, b, m, {}).dump());
      const auto chk = io::verify_certificate_json(j);
      if (!chk.ok || chk.rank != d * d) ++bad_verify;
      const auto e = io::operator_from_json(j.at("e_delta"));
      const double dist = hs_distance(e, HermitianOperator::identity(d) / static_cast<double>(d));
      worst_dist = std::max(worst_dist, std::abs(dist - j.at("epsilon").get<double>() / 2));
    }
  }
  return {bad_rank == 0 && bad_verify == 0 && worst_dist <= 1e-10,
          "40 certificates; rank failures " + std::to_string(bad_rank) + ", re-verify failures " +
              std::to_string(bad_verify) + ", max | ||E_delta - I/d|| - eps/2 | " + fmt(worst_dist)};
}

// 5. D^{-T} f_B = f_M for born frames.
Outcome consistency() {
  double worst = 0;
  for (int d : {2, 3}) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto b = augmented_basis_from_onb(random_onb(d, 50000 + 100 * d + s));
      const auto m = random_mic_pom(d, 51000 + 100 * d + s);
      const auto cert = intersection_span_certificate(b, m, std::nullopt, s);
      const auto f = FrameFunction::born(random_density(d, 52000 + 100 * d + s));
      worst = std::max(worst, consistency_DT(f, b, m, cert).residual);
    }
  }
  return {worst <= 1e-8, "100 pairs; max residual " + fmt(worst)};
}

// 6. Restriction linearity.
Outcome restriction_linearity() {
  double born_worst = 0;
  for (int d : {2, 3}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto b = augmented_basis_from_onb(random_onb(d, 60000 + 100 * d + s));
      const auto f = FrameFunction::born(random_density(d, 61000 + 100 * d + s));
      for (int j = 0; j < d * d; ++j)
        born_worst = std::max(born_worst, restriction_linearity_check(f, b, j, 100).max_deviation);
    }
  }
  const auto b2 = augmented_basis_from_onb(random_onb(2, 62000));
  const auto sq = FrameFunction::adversarial_square(random_density(2, 62001));
  double sq_best = 0;
  for (int j = 0; j < 4; ++j)
    sq_best = std::max(sq_best, restriction_linearity_check(sq, b2, j, 100).max_deviation);
  return {born_worst <= 1e-10 && sq_best >= 0.01,
          "born max deviation " + fmt(born_worst) + "; square frame (d=2) max deviation " +
              fmt(sq_best)};
}

// 7. Additivity detection.
Outcome additivity_detection() {
  const auto sq = check_additivity(
      FrameFunction::adversarial_square(DensityOperator::create(HermitianOperator::diagonal({1, 0}))),
      100, 70000);
  double born_worst = 0;
  for (int d : {2, 3, 4})
    for (std::uint64_t s = 0; s < 5; ++s)
      born_worst = std::max(
          born_worst,
          check_additivity(FrameFunction::born(random_density(d, 71000 + 10 * d + s)), 100, s)
              .max_violation);
  return {sq.max_violation >= 0.1 && !sq.additive && born_worst <= 1e-12,
          "square frame violation " + fmt(sq.max_violation) + " (random pairs alone " +
              fmt(sq.random_max_violation) + "); born max violation " + fmt(born_worst)};
}

// 8. Grid forcing, exact.
Outcome grid_forcing() {
  using namespace gleason::cauchy;
  std::mt19937_64 rng(80000);
  auto rat = [&](int lo, int hi, int maxden) {
    const long n = lo + static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1));
    return Rational(n, 1 + static_cast<long>(rng() % static_cast<unsigned>(maxden)));
  };
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const Rational a = rat(1, 50, 20);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 60);
    const Rational v = rat(-100, 100, 37);
    const auto g = grid_from_unit(a, n, v);
    bool ok = !g.validate().has_value();
    // Additivity on every pair of grid points, then linearity with slope f(a)/a.
    for (std::int64_t j = 0; ok && j <= n; ++j)
      for (std::int64_t k = 0; j + k <= n; ++k)
        if (g.values()[j] + g.values()[k] != g.values()[j + k]) ok = false;
    const auto lin = check_linear(g);
    const Rational slope = g.value(a) / a;
    ok = ok && lin.is_linear && lin.slope == slope;
    for (std::int64_t k = 0; ok && k <= n; ++k)
      if (g.values()[k] != slope * g.point(k)) ok = false;
    if (!ok) ++failures;
  }
  return {failures == 0, "200 exact grids; failures " + std::to_string(failures)};
}

// 9. Extension laws, exact.
Outcome extension_laws() {
  using namespace gleason::cauchy;
  std::mt19937_64 rng(90000);
  int cases[3] = {0, 0, 0};
  int failures = 0;
  auto sign_case = [](int sx, int sy) { return sx >= 0 && sy >= 0 ? 0 : (sx < 0 && sy < 0 ? 2 : 1); };

  // Grid model: inputs m a / N with m anywhere in [-5N, 5N].
  for (int t = 0; t < 500; ++t) {
    const Rational a(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 9));
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 24);
    const auto g = grid_from_unit(a, n, Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 11)));
    ExtensionView ext(g);
    const int want = t % 3;
    auto draw = [&](bool negative) {
      const std::int64_t m = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(5 * n + 1));
      return Rational(negative ? -m : m) * a / n;
    };
    const Rational x = draw(want == 2), y = draw(want >= 1);
    ++cases[sign_case(sign(x), sign(y))];
    if (ext.f_real(x) + ext.f_real(y) != ext.f_real(x + y)) ++failures;
    if (ext.f_real(-x) != -ext.f_real(x)) ++failures;
  }
  // Q(sqrt 2) model: arbitrary exact inputs.
  for (int t = 0; t < 500; ++t) {
    const QSqrt2Additive f(Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 7)),
                           Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 7)),
                           Rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 5)));
    ExtensionView ext(f);
    auto draw = [&]() {
      return QSqrt2(Rational(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 13)),
                    Rational(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 13)));
    };
    QSqrt2 x = draw(), y = draw();
    const int want = t % 3;
    if ((want == 0) != (x.sign() >= 0 && y.sign() >= 0) || (want == 2) != (x.sign() < 0 && y.sign() < 0)) {
      // Flip signs to land in the requested case.
      if (want == 0) { if (x.sign() < 0) x = -x; if (y.sign() < 0) y = -y; }
      if (want == 1) { if (x.sign() < 0) x = -x; if (y.sign() >= 0) y = -y; }
      if (want == 2) { if (x.sign() >= 0) x = -x; if (y.sign() >= 0) y = -y; }
    }
    ++cases[sign_case(x.sign(), y.sign())];
    if (ext.f_real(x) + ext.f_real(y) != ext.f_real(x + y)) ++failures;
  }
  // Well-definedness of f_+ across two moduli.
  int modulus_checks = 0;
  for (int t = 0; t < 100; ++t) {
    const Rational a(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 9));
    const auto g = grid_from_unit(a, 210, Rational(static_cast<long>(rng() % 41) - 20, 7));
    ExtensionView ext(g);
    const long k = 1 + static_cast<long>(rng() % 6);
    const Rational x = k * a;
    const long mult[] = {1, 2, 3, 5, 7};
    const long n1 = k * mult[rng() % 5], n2 = k * mult[rng() % 5];
    if (ext.f_plus(x, n1) != ext.f_plus(x, n2)) ++failures;
    const QSqrt2Additive q(Rational(static_cast<long>(rng() % 9) - 4), Rational(static_cast<long>(rng() % 9) - 4));
    ExtensionView eq(q);
    const QSqrt2 xq(Rational(static_cast<long>(rng() % 50)), Rational(static_cast<long>(rng() % 50), 3));
    const Integer m = eq.minimal_modulus(xq);
    if (eq.f_plus(xq, m) != eq.f_plus(xq, m + 1 + static_cast<long>(rng() % 10))) ++failures;
    modulus_checks += 2;
  }
  const bool covered = cases[0] > 0 && cases[1] > 0 && cases[2] > 0;
  return {failures == 0 && covered,
          "1000 pairs (cases ++/+-/-- = " + std::to_string(cases[0]) + "/" + std::to_string(cases[1]) +
              "/" + std::to_string(cases[2]) + "), " + std::to_string(modulus_checks) +
              " modulus checks; failures " + std::to_string(failures)};
}

// 10. Unboundedness witnesses for the non-linear model.
Outcome unboundedness() {
  using namespace gleason::cauchy;
  const auto t0 = Clock::now();
  const QSqrt2Additive f(Rational(1), Rational(0));
  bool ok = true;
  std::ostringstream detail;
  for (const char* b : {"10", "1000", "1000000"}) {
    const Rational bound = parse_rational(b);
    const auto w = unboundedness_witness(f, bound);
    const bool valid = w.x.sign() > 0 && (QSqrt2(Rational(1)) - w.x).sign() >= 0 &&
                       f.value(w.x) > bound && f.value(w.x) == w.value;
    ok = ok && valid;
    detail << "B=" << b << ": x=" << to_string(w.x) << " f=" << to_string(w.value) << "; ";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  detail << fmt(secs) << " s";
  return {ok && secs < 1.0, detail.str()};
}

// 11. Augmented-basis construction.
Outcome augmented_construction() {
  int failures = 0;
  double worst_trace = 0;
  for (int d = 2; d <= 5; ++d)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto b = augmented_basis_from_onb(random_onb(d, 110000 + 100 * d + s));
      if (!validate_augmented(b).ok()) ++failures;
      HermitianOperator g = HermitianOperator::zero(d);
      for (const auto& p : complete_projector_basis(b.onb())) g += p;
      worst_trace = std::max(worst_trace, std::abs(g.trace() - d * d));
    }
  const double gamma = augmented_basis_canonical(2).gamma();
  const double gamma_err = std::abs(gamma - (2.0 + 1.0 / std::sqrt(2.0)));
  return {failures == 0 && gamma_err <= 1e-12 && worst_trace <= 1e-10,
          "80 bases; validation failures " + std::to_string(failures) + ", |Gamma - (2 + 1/sqrt2)| " +
              fmt(gamma_err) + ", max |Tr G - d^2| " + fmt(worst_trace)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"reconstruction exactness", reconstruction_exactness},
      {"basis independence of the recovered state", basis_independence},
      {"spectral cone decomposition", spectral_decomposition},
      {"span certificates", span_certificates},
      {"D^-T f_B = f_M consistency", consistency},
      {"restriction linearity", restriction_linearity},
      {"additivity detection", additivity_detection},
      {"grid forcing (exact)", grid_forcing},
      {"extension laws (exact)", extension_laws},
      {"unboundedness witnesses", unboundedness},
      {"augmented-basis construction", augmented_construction},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] AC%zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
