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

#include <gtest/gtest.h>

#include "gleason/json_io.hpp"

namespace gleason::io {
namespace {

TEST(JsonIo, OperatorRoundTripIsExact) {
  Rng rng = make_rng(1);
  const auto h = random_hermitian(3, rng);
  const auto back = operator_from_json(json::parse(to_json(h).dump()));
  EXPECT_TRUE(back.matrix() == h.matrix());
}

TEST(JsonIo, OperatorRejectsMalformed) {
  EXPECT_THROW(operator_from_json(json::parse(R"({"dim": 2})")), FormatError);
  EXPECT_THROW(operator_from_json(json::parse(R"({"dim": 2, "entries": [[[1,0]]]})")), FormatError);
  EXPECT_THROW(
      operator_from_json(json::parse(R"({"dim": 2, "entries": [[[1,0],[1,0]],[[0,0],[1,0]]]})")),
      FormatError);
  EXPECT_THROW(operator_from_json(json::parse(R"({"dim": 1, "entries": [["a"]]})")), FormatError);
}

TEST(JsonIo, TolerancesRoundTrip) {
  ToleranceConfig t;
  t.residual = 1e-6;
  const auto back = tolerances_from_json(tolerances_to_json(t));
  EXPECT_EQ(back.residual, 1e-6);
  EXPECT_EQ(back.psd_slack, t.psd_slack);
  EXPECT_THROW(tolerances_from_json(json::parse(R"({"residual": -1})")), FormatError);
}

TEST(JsonIo, PomRoundTrip) {
  const auto m = random_mic_pom(3, 4);
  const auto back = pom_effects_from_json(json::parse(pom_to_json(m.effects()).dump()));
  ASSERT_EQ(back.size(), 9u);
  EXPECT_TRUE(pom_report(back, {}, true).ok);
}

TEST(JsonIo, AugmentedBasisCarriesCompletion) {
  const auto b = augmented_basis_canonical(2);
  const json j = augmented_to_json(b, {});
  EXPECT_EQ(j.at("completion").at("role"), "completion element");
  EXPECT_TRUE(j.at("validation").at("ok").get<bool>());
  const auto back = augmented_from_json(json::parse(j.dump()), {});
  EXPECT_TRUE(validate_augmented(back).ok());
  EXPECT_EQ(back.gamma(), b.gamma());
  const auto comp = operator_from_json(j.at("completion").at("operator"));
  std::vector<HermitianOperator> pom = back.elements();
  pom.push_back(comp);
  EXPECT_TRUE(pom_report(pom).ok);
}

TEST(JsonIo, CertificateReverifies) {
  for (int d = 2; d <= 3; ++d) {
    Rng rng = make_rng(d);
    const auto b = augmented_basis_from_onb(random_unitary(d, rng));
    const auto m = random_mic_pom(d, d);
    const auto cert = intersection_span_certificate(b, m, std::nullopt, d);
    const json j = json::parse(certificate_to_json(cert, b, m, {}).dump());
    const auto chk = verify_certificate_json(j);
    EXPECT_TRUE(chk.ok);
    EXPECT_EQ(chk.rank, d * d);
  }
}

TEST(JsonIo, TamperedCertificateRejected) {
  const auto b = augmented_basis_canonical(2);
  const auto m = sic_mic_pom();
  const auto cert = intersection_span_certificate(b, m, std::nullopt, 0);
  json j = certificate_to_json(cert, b, m, {});

  json bad = j;
  bad["witnesses"][0]["mic_pom"]["coeffs"][0] = 0.9;
  EXPECT_FALSE(verify_certificate_json(bad).ok);

  bad = j;
  bad["epsilon"] = j["epsilon"].get<double>() * 2;
  EXPECT_FALSE(verify_certificate_json(bad).ok);

  bad = j;
  bad["mic_pom"]["effects"][0] = to_json(HermitianOperator::identity(2) * 0.5);
  const auto chk = verify_certificate_json(bad);
  EXPECT_FALSE(chk.ok);
  ASSERT_FALSE(chk.failures.empty());
  EXPECT_EQ(chk.failures.front(), "mic-pom: sum-to-identity");

  bad = j;
  bad.erase("witnesses");
  EXPECT_THROW(verify_certificate_json(bad), FormatError);
}

TEST(JsonIo, FrameRoundTrip) {
  Rng rng = make_rng(3);
  const auto rho = random_density(2, rng);
  const auto e = random_effect(2, rng);
  for (const auto& f : {FrameFunction::born(rho), FrameFunction::adversarial_square(rho)}) {
    const auto back = frame_from_json(json::parse(frame_to_json(f).dump()), {});
    EXPECT_EQ(back.kind(), f.kind());
    EXPECT_EQ(back(e), f(e));
  }
  const auto m = sic_mic_pom();
  const auto tab = FrameFunction::tabulated(m.basis(), VectorXd::Constant(4, 0.25));
  const auto back = frame_from_json(frame_to_json(tab), {});
  EXPECT_NEAR(back(e), tab(e), 1e-14);
  EXPECT_THROW(frame_from_json(json::parse(R"({"kind": "mystery"})"), {}), FormatError);
  EXPECT_THROW(frame_to_json(FrameFunction::adversarial("x", 2, [](const HermitianOperator&) {
                 return 0.0;
               })),
               FormatError);
}

}  // namespace
}  // namespace gleason::io
