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

#include <string>
#include <vector>

#include <json.hpp>

#include "gleason/augmented_basis.hpp"
#include "gleason/cone_geometry.hpp"
#include "gleason/effect_algebra.hpp"
#include "gleason/frame_reconstruction.hpp"
#include "gleason/operator_space.hpp"

// File formats:
//   operator    {"dim": d, "entries": [[[re, im], ...], ...]}
//   POM         {"dim": d, "effects": [operator, ...]}
//   frame       {"dim": d, "kind": "born" | "adversarial-square", "state": operator}
//               {"dim": d, "kind": "tabulated", "basis": [operator, ...], "values": [...]}
//   certificate see certificate_to_json

namespace gleason::io {

using nlohmann::json;

/// Malformed document; maps to exit code 2 in the CLI.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline json tolerances_to_json(const ToleranceConfig& t) {
  return {{"eig_offdiag", t.eig_offdiag},
          {"psd_slack", t.psd_slack},
          {"residual", t.residual},
          {"rank_cutoff", t.rank_cutoff}};
}

inline ToleranceConfig tolerances_from_json(const json& j) {
  ToleranceConfig t;
  t.eig_offdiag = j.value("eig_offdiag", t.eig_offdiag);
  t.psd_slack = j.value("psd_slack", t.psd_slack);
  t.residual = j.value("residual", t.residual);
  t.rank_cutoff = j.value("rank_cutoff", t.rank_cutoff);
  if (!t.valid()) throw FormatError("invalid tolerance configuration");
  return t;
}

inline json to_json(const HermitianOperator& h) {
  json rows = json::array();
  for (int j = 0; j < h.dim(); ++j) {
    json row = json::array();
    for (int k = 0; k < h.dim(); ++k) row.push_back({h(j, k).real(), h(j, k).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", h.dim()}, {"entries", std::move(rows)}};
}

/// Rejects non-Hermitian input beyond 1e-12 asymmetry.
inline HermitianOperator operator_from_json(const json& j) {
  try {
    const int d = j.at("dim").get<int>();
    const json& rows = j.at("entries");
    if (d < 1 || !rows.is_array() || static_cast<int>(rows.size()) != d)
      throw FormatError("operator: entries must be a dim x dim array");
    MatrixXc m(d, d);
    for (int r = 0; r < d; ++r) {
      if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != d)
        throw FormatError("operator: row " + std::to_string(r) + " has wrong length");
      for (int c = 0; c < d; ++c) {
        const json& e = rows[r][c];
        if (!e.is_array() || e.size() != 2) throw FormatError("operator: entries are [re, im]");
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      }
    }
    return HermitianOperator::from_matrix(m, 1e-12);
  } catch (const json::exception& e) {
    throw FormatError(std::string("operator: ") + e.what());
  } catch (const InvariantViolation& e) {
    throw FormatError(std::string("operator: ") + e.what());
  }
}

inline json to_json(const std::vector<HermitianOperator>& ops) {
  json arr = json::array();
  for (const auto& h : ops) arr.push_back(to_json(h));
  return arr;
}

inline std::vector<HermitianOperator> operators_from_json(const json& arr) {
  if (!arr.is_array()) throw FormatError("expected an array of operators");
  std::vector<HermitianOperator> out;
  for (const auto& j : arr) out.push_back(operator_from_json(j));
  for (const auto& h : out)
    if (h.dim() != out.front().dim()) throw FormatError("operators of mixed dimension");
  return out;
}

inline json vector_to_json(const VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) arr.push_back(v(j));
  return arr;
}

inline VectorXd vector_from_json(const json& arr) {
  if (!arr.is_array()) throw FormatError("expected a numeric array");
  VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t j = 0; j < arr.size(); ++j) v(static_cast<Eigen::Index>(j)) = arr[j].get<double>();
  return v;
}

inline json pom_to_json(const std::vector<HermitianOperator>& effects) {
  return {{"dim", effects.empty() ? 0 : effects.front().dim()}, {"effects", to_json(effects)}};
}

/// Reads the effects without checking POM conditions; see pom_report.
inline std::vector<HermitianOperator> pom_effects_from_json(const json& j) {
  try {
    auto effects = operators_from_json(j.at("effects"));
    if (!effects.empty() && effects.front().dim() != j.at("dim").get<int>())
      throw FormatError("POM: dim does not match effects");
    return effects;
  } catch (const json::exception& e) {
    throw FormatError(std::string("POM: ") + e.what());
  }
}

inline json onb_to_json(const MatrixXc& onb) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < onb.cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < onb.rows(); ++r) col.push_back({onb(r, c).real(), onb(r, c).imag()});
    cols.push_back(std::move(col));
  }
  return cols;
}

inline MatrixXc onb_from_json(const json& cols) {
  const auto d = static_cast<Eigen::Index>(cols.size());
  MatrixXc m(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    if (static_cast<Eigen::Index>(cols[c].size()) != d) throw FormatError("onb: wrong vector length");
    for (Eigen::Index r = 0; r < d; ++r) m(r, c) = cplx(cols[c][r][0].get<double>(), cols[c][r][1].get<double>());
  }
  return m;
}

inline json augmented_to_json(const AugmentedBasis& b, const ToleranceConfig& tol) {
  json out = {{"dim", b.dim()},
              {"gamma", b.gamma()},
              {"c", b.c()},
              {"onb", onb_to_json(b.onb())},
              {"elements", to_json(b.elements())}};
  const HermitianOperator completion = HermitianOperator::identity(b.dim()) - b.sum();
  out["completion"] = {{"role", "completion element"}, {"operator", to_json(completion)}};
  json conds = json::array();
  const auto rep = validate_augmented(b, tol);
  for (const auto& c : rep.conditions)
    conds.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  out["validation"] = {{"ok", rep.ok()}, {"conditions", conds}};
  return out;
}

inline AugmentedBasis augmented_from_json(const json& j, const ToleranceConfig& tol) {
  try {
    return AugmentedBasis(onb_from_json(j.at("onb")), operators_from_json(j.at("elements")),
                          j.at("c").get<double>(), j.at("gamma").get<double>(), tol);
  } catch (const json::exception& e) {
    throw FormatError(std::string("augmented basis: ") + e.what());
  } catch (const InvariantViolation& e) {
    throw FormatError(std::string("augmented basis: ") + e.what());
  }
}

inline json decomposition_to_json(const ConeDecomposition& c) {
  return {{"coeffs", vector_to_json(c.coeffs)}, {"residual", c.residual}};
}

inline json certificate_to_json(const SpanCertificate& cert, const AugmentedBasis& b,
                                 const MicPom& m, const ToleranceConfig& tol) {
  json witnesses = json::array();
  for (std::size_t k = 0; k < cert.witnesses.size(); ++k)
    witnesses.push_back({{"operator", to_json(cert.witnesses[k])},
                         {"augmented", decomposition_to_json(cert.augmented_coeffs[k])},
                         {"mic_pom", decomposition_to_json(cert.mic_coeffs[k])}});
  return {{"dim", cert.dim},
          {"epsilon", cert.epsilon},
          {"delta", cert.delta},
          {"gamma", cert.gamma},
          {"method", cert.method},
          {"epsilon_halvings", cert.epsilon_halvings},
          {"gamma_halvings", cert.gamma_halvings},
          {"e_delta", to_json(cert.e_delta)},
          {"augmented_basis", augmented_to_json(b, tol)},
          {"mic_pom", pom_to_json(m.effects())},
          {"witnesses", witnesses},
          {"rank", cert.rank},
          {"tolerances", tolerances_to_json(tol)}};
}

struct LoadedCertificate {
  SpanCertificate cert;
  std::vector<HermitianOperator> augmented_elements;
  std::vector<HermitianOperator> mic_elements;
  ToleranceConfig tol;
};

inline LoadedCertificate certificate_from_json(const json& j) {
  try {
    LoadedCertificate out;
    out.tol = tolerances_from_json(j.at("tolerances"));
    auto& c = out.cert;
    c.dim = j.at("dim").get<int>();
    c.epsilon = j.at("epsilon").get<double>();
    c.delta = j.at("delta").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.method = j.at("method").get<std::string>();
    c.e_delta = operator_from_json(j.at("e_delta"));
    c.rank = j.at("rank").get<int>();
    for (const auto& w : j.at("witnesses")) {
      c.witnesses.push_back(operator_from_json(w.at("operator")));
      c.augmented_coeffs.push_back({vector_from_json(w.at("augmented").at("coeffs")),
                                    w.at("augmented").at("residual").get<double>()});
      c.mic_coeffs.push_back({vector_from_json(w.at("mic_pom").at("coeffs")),
                              w.at("mic_pom").at("residual").get<double>()});
    }
    out.augmented_elements = operators_from_json(j.at("augmented_basis").at("elements"));
    out.mic_elements = pom_effects_from_json(j.at("mic_pom"));
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
}

/**
 * Independent re-verification of a serialized certificate: the augmented
 * basis is re-validated, the MIC-POM re-checked, and every witness is
 * re-expanded in both bases.
 */
inline CertificateCheck verify_certificate_json(const json& j) {
  const LoadedCertificate lc = certificate_from_json(j);
  CertificateCheck out;
  const ToleranceConfig& tol = lc.tol;
  const AugmentedBasis b = augmented_from_json(j.at("augmented_basis"), tol);
  const auto aug = validate_augmented(b, tol);
  for (const auto& c : aug.conditions)
    if (!c.passed) out.failures.push_back("augmented basis: " + c.name);
  const auto pr = pom_report(lc.mic_elements, tol, true);
  if (!pr.ok) out.failures.push_back("mic-pom: " + pr.violated);
  if (!out.failures.empty()) {
    out.ok = false;
    return out;
  }
  const OperatorBasis mb(lc.mic_elements, OperatorBasis::Kind::mic_pom, tol);
  auto inner = verify_certificate(lc.cert, b.basis(), mb, tol);
  const int d = lc.cert.dim;
  const double dist = hs_distance(lc.cert.e_delta, HermitianOperator::identity(d) / double(d));
  if (std::abs(dist - lc.cert.epsilon / 2.0) > tol.residual) {
    inner.ok = false;
    inner.failures.push_back("e_delta distance");
  }
  return inner;
}

inline json frame_to_json(const FrameFunction& f) {
  json out = {{"dim", f.dim()}};
  switch (f.kind()) {
    case FrameFunction::Kind::born:
      out["kind"] = "born";
      out["state"] = to_json(*f.state());
      break;
    case FrameFunction::Kind::tabulated:
      out["kind"] = "tabulated";
      out["basis"] = to_json(f.basis()->elements());
      out["values"] = vector_to_json(f.values());
      break;
    case FrameFunction::Kind::adversarial:
      if (f.tag() != "square" || !f.state()) throw FormatError("only the square adversarial frame is serializable");
      out["kind"] = "adversarial-square";
      out["state"] = to_json(*f.state());
      break;
  }
  return out;
}

inline FrameFunction frame_from_json(const json& j, const ToleranceConfig& tol) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "born" || kind == "adversarial-square") {
      const auto rho = DensityOperator::create(operator_from_json(j.at("state")), tol);
      return kind == "born" ? FrameFunction::born(rho) : FrameFunction::adversarial_square(rho);
    }
    if (kind == "tabulated") {
      OperatorBasis basis(operators_from_json(j.at("basis")), OperatorBasis::Kind::generic, tol);
      if (!basis.independent()) throw FormatError("frame: tabulated basis is singular");
      return FrameFunction::tabulated(std::move(basis), vector_from_json(j.at("values")));
    }
    throw FormatError("frame: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw FormatError(std::string("frame: ") + e.what());
  } catch (const InvariantViolation& e) {
    throw FormatError(std::string("frame: ") + e.what());
  }
}

}  // namespace gleason::io
