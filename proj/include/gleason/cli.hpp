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
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gleason/augmented_basis.hpp"
#include "gleason/cauchy_interval.hpp"
#include "gleason/cone_geometry.hpp"
#include "gleason/effect_algebra.hpp"
#include "gleason/frame_reconstruction.hpp"
#include "gleason/json_io.hpp"

// Command-line front end. Exit codes: 0 all checks pass, 1 a verification
// verdict failed, 2 invalid arguments or input.

namespace gleason::cli {

using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;

struct RunConfig {
  std::optional<int> dim;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<double> tol_residual;
  std::string out;
  bool pretty = false;

  ToleranceConfig tolerances() const {
    ToleranceConfig t;
    if (tol_residual) {
      t.residual = *tol_residual;
      t.psd_slack = std::min(t.psd_slack, t.residual);
    }
    if (!t.valid()) throw io::FormatError("invalid --tol-residual");
    return t;
  }
};

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw io::FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Every report carries the tolerances it ran under.
inline void emit(json report, const RunConfig& cfg, std::ostream& out) {
  if (!report.contains("tolerances")) report["tolerances"] = io::tolerances_to_json(cfg.tolerances());
  const std::string text = cfg.pretty ? report.dump(2) : report.dump();
  if (cfg.out.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw io::FormatError("cannot write '" + cfg.out + "'");
  f << text << "\n";
}

inline int require_dim(const RunConfig& cfg) {
  if (!cfg.dim) throw io::FormatError("--dim is required");
  if (*cfg.dim < 2 || *cfg.dim > 16) throw io::FormatError("--dim must be in [2, 16]");
  return *cfg.dim;
}

inline std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw io::FormatError("--seed is required for randomized subcommands");
  return *cfg.seed;
}

inline json verdict_report(const std::string& sub, bool pass, const ToleranceConfig& tol) {
  return {{"subcommand", sub}, {"verdict", pass ? "pass" : "fail"}, {"tolerances", io::tolerances_to_json(tol)}};
}

inline void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "write the JSON report to this path");
  sub->add_flag("--pretty", cfg.pretty, "indented JSON");
  sub->add_option("--tol-residual", cfg.tol_residual, "reconstruction/decomposition residual tolerance");
}

inline MatrixXc onb_for(int d, const std::optional<std::uint64_t>& seed) {
  if (!seed) return MatrixXc::Identity(d, d);
  Rng rng = make_rng(*seed);
  return random_unitary(d, rng);
}

// --- subcommands ----------------------------------------------------------

inline int cmd_augbasis(const RunConfig& cfg, std::ostream& out) {
  const auto tol = cfg.tolerances();
  const int d = require_dim(cfg);
  const AugmentedBasis b = augmented_basis_from_onb(onb_for(d, cfg.seed), tol);
  const auto rep = validate_augmented(b, tol);
  json r = verdict_report("augbasis", rep.ok(), tol);
  r["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  r["basis"] = io::augmented_to_json(b, tol);
  emit(r, cfg, out);
  return rep.ok() ? kPass : kFail;
}

inline int cmd_certify(const RunConfig& cfg, const std::string& verify_path, std::ostream& out) {
  if (!verify_path.empty()) {
    const json cert = read_json_file(verify_path);
    const auto chk = io::verify_certificate_json(cert);
    json r = verdict_report("certify-cone", chk.ok, io::tolerances_from_json(cert.at("tolerances")));
    r["mode"] = "verify";
    r["rank"] = chk.rank;
    r["failures"] = chk.failures;
    emit(r, cfg, out);
    return chk.ok ? kPass : kFail;
  }
  const auto tol = cfg.tolerances();
  const int d = require_dim(cfg);
  const auto seed = require_seed(cfg);
  const AugmentedBasis b = augmented_basis_from_onb(onb_for(d, seed), tol);
  const MicPom m = random_mic_pom(d, seed, tol);
  SpanCertificate cert;
  try {
    cert = intersection_span_certificate(b, m, cfg.epsilon, seed, tol);
  } catch (const ConvergenceError& e) {
    json r = verdict_report("certify-cone", false, tol);
    r["violated"] = "certificate";
    r["detail"] = e.what();
    emit(r, cfg, out);
    return kFail;
  }
  const auto chk = verify_certificate(cert, b.basis(), m.basis(), tol);
  json r = io::certificate_to_json(cert, b, m, tol);
  r["subcommand"] = "certify-cone";
  r["seed"] = seed;
  r["verdict"] = chk.ok ? "pass" : "fail";
  emit(r, cfg, out);
  return chk.ok ? kPass : kFail;
}

inline int cmd_reconstruct(const RunConfig& cfg, const std::string& state_path,
                           const std::string& mic_path, std::ostream& out) {
  const auto tol = cfg.tolerances();
  const auto seed = require_seed(cfg);
  std::optional<DensityOperator> rho;
  if (!state_path.empty()) {
    try {
      rho = DensityOperator::create(io::operator_from_json(read_json_file(state_path)), tol);
    } catch (const InvariantViolation& e) {
      throw io::FormatError(std::string("state: ") + e.what());
    }
  }
  const int d = rho ? rho->dim() : require_dim(cfg);
  if (cfg.dim && *cfg.dim != d) throw io::FormatError("--dim does not match the state file");
  if (!rho) rho = random_density(d, seed, tol);

  std::optional<MicPom> m;
  if (!mic_path.empty()) {
    auto effects = io::pom_effects_from_json(read_json_file(mic_path));
    const auto pr = pom_report(effects, tol, true);
    if (!pr.ok) throw io::FormatError("mic: not a MIC-POM (" + pr.violated + ")");
    m = MicPom::create(std::move(effects), tol);
    if (m->dim() != d) throw io::FormatError("mic: dimension does not match the state");
  } else {
    m = random_mic_pom(d, seed, tol);
  }
  const auto w = orthonormal_operator_basis(d, tol);
  const auto rep = reconstruct_density(FrameFunction::born(*rho), *m, w, tol, seed);
  const double dist = hs_distance(rep.rho_hat, rho->op());
  const bool pass = rep.pass && dist <= tol.residual;
  json r = verdict_report("reconstruct", pass, tol);
  r["dim"] = d;
  r["seed"] = seed;
  r["trace"] = rep.trace;
  r["min_eigenvalue"] = rep.min_eigenvalue;
  r["max_deviation"] = rep.max_deviation;
  r["test_set_size"] = rep.test_set_size;
  r["state_distance"] = dist;
  r["frame_values"] = io::vector_to_json(rep.frame_values);
  r["rho_hat"] = io::to_json(rep.rho_hat);
  emit(r, cfg, out);
  return pass ? kPass : kFail;
}

inline int cmd_verify_frame(const RunConfig& cfg, const std::string& frame_path, int trials,
                            std::ostream& out) {
  const auto tol = cfg.tolerances();
  if (frame_path.empty()) throw io::FormatError("--frame is required");
  if (trials < 1) throw io::FormatError("--trials must be positive");
  const FrameFunction f = io::frame_from_json(read_json_file(frame_path), tol);
  const std::uint64_t seed = cfg.seed.value_or(0);
  const auto rep = check_additivity(f, trials, seed, tol);
  std::vector<std::string> violations;
  if (!rep.additive) violations.push_back("additivity");
  if (!rep.normalized) violations.push_back("normalization");
  if (!rep.in_range) violations.push_back("range");
  json r = verdict_report("verify-frame", violations.empty(), tol);
  r["seed"] = seed;
  r["trials"] = trials;
  r["violated"] = violations.empty() ? json(nullptr) : json(violations.front());
  r["violations"] = violations;
  r["max_violation"] = rep.max_violation;
  r["random_max_violation"] = rep.random_max_violation;
  r["normalization"] = rep.normalization;
  r["value_min"] = rep.value_min;
  r["value_max"] = rep.value_max;
  emit(r, cfg, out);
  return violations.empty() ? kPass : kFail;
}

inline int cmd_validate(const RunConfig& cfg, const std::string& pom_path, bool mic,
                        const std::string& aug_path, std::ostream& out) {
  const auto tol = cfg.tolerances();
  if (pom_path.empty() == aug_path.empty())
    throw io::FormatError("validate needs exactly one of --pom or --augmented");
  if (!pom_path.empty()) {
    const auto effects = io::pom_effects_from_json(read_json_file(pom_path));
    const auto pr = pom_report(effects, tol, mic);
    json r = verdict_report("validate", pr.ok, tol);
    r["kind"] = mic ? "mic-pom" : "pom";
    r["violated"] = pr.ok ? json(nullptr) : json(pr.violated);
    r["index"] = pr.index;
    r["witness"] = pr.witness;
    r["sum_residual"] = pr.sum_residual;
    r["rank"] = pr.rank;
    emit(r, cfg, out);
    return pr.ok ? kPass : kFail;
  }
  const json j = read_json_file(aug_path);
  const AugmentedBasis b = io::augmented_from_json(j.contains("basis") ? j.at("basis") : j, tol);
  const auto rep = validate_augmented(b, tol);
  json r = verdict_report("validate", rep.ok(), tol);
  r["kind"] = "augmented";
  json conds = json::array();
  std::optional<std::string> first;
  for (const auto& c : rep.conditions) {
    conds.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    if (!c.passed && !first) first = c.name;
  }
  r["conditions"] = conds;
  r["violated"] = first ? json(*first) : json(nullptr);
  emit(r, cfg, out);
  return rep.ok() ? kPass : kFail;
}

// --- cauchy ---------------------------------------------------------------

struct CauchyArgs {
  std::string a = "1", n = "1", v = "0";
  std::string alpha = "1", beta = "0", bound = "1", interval = "1";
  std::string in, x, x_sqrt2 = "0";
  std::string which, epsilon = "1/10";
  int depth = 60, levels = 20;
};

inline json exact_pair(const cauchy::QSqrt2& x) {
  return {{"p", cauchy::to_string(x.p)}, {"q", cauchy::to_string(x.q)}, {"approx", x.approx()}};
}

using AnyModel = std::variant<cauchy::GridAdditiveFunction, cauchy::QSqrt2Additive>;

inline AnyModel model_from_json(const json& j) {
  using namespace cauchy;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "grid") {
      const Rational a = parse_rational(j.at("a").get<std::string>());
      const auto n = j.at("n").get<std::int64_t>();
      if (j.contains("values")) {
        std::vector<Rational> vals;
        for (const auto& s : j.at("values")) vals.push_back(parse_rational(s.get<std::string>()));
        return GridAdditiveFunction(a, n, std::move(vals));
      }
      return grid_from_unit(a, n, parse_rational(j.at("v").get<std::string>()));
    }
    if (kind == "qsqrt2")
      return QSqrt2Additive(parse_rational(j.at("alpha").get<std::string>()),
                            parse_rational(j.at("beta").get<std::string>()),
                            parse_rational(j.value("a", std::string("1"))));
    throw io::FormatError("model: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw io::FormatError(std::string("model: ") + e.what());
  } catch (const InvariantViolation& e) {
    throw io::FormatError(std::string("model: ") + e.what());
  }
}

inline int cmd_cauchy_grid(const RunConfig& cfg, const CauchyArgs& ca, std::ostream& out) {
  using namespace cauchy;
  Rational a, v;
  std::int64_t n = 0;
  try {
    a = parse_rational(ca.a);
    v = parse_rational(ca.v);
    n = std::stoll(ca.n);
  } catch (const std::exception& e) {
    throw io::FormatError(e.what());
  }
  const auto g = grid_from_unit(a, n, v);
  const auto lin = check_linear(g);
  json r = {{"subcommand", "cauchy grid"},
            {"verdict", lin.is_linear ? "pass" : "fail"},
            {"a", to_string(a)},
            {"n", n},
            {"v", to_string(v)},
            {"f_a", to_string(g.values().back())},
            {"slope", to_string(lin.slope)},
            {"is_linear", lin.is_linear}};
  if (n <= 1000) {
    json vals = json::array();
    for (const auto& x : g.values()) vals.push_back(to_string(x));
    r["values"] = vals;
  }
  emit(r, cfg, out);
  return lin.is_linear ? kPass : kFail;
}

inline int cmd_cauchy_witness(const RunConfig& cfg, const CauchyArgs& ca, std::ostream& out) {
  using namespace cauchy;
  QSqrt2Additive f(parse_rational(ca.alpha), parse_rational(ca.beta), parse_rational(ca.interval));
  const Rational bound = parse_rational(ca.bound);
  const auto w = unboundedness_witness(f, bound);
  const bool valid = w.x.sign() > 0 && f.contains(w.x) && f.value(w.x) > bound;
  json r = {{"subcommand", "cauchy witness"},
            {"verdict", valid ? "pass" : "fail"},
            {"alpha", to_string(f.alpha())},
            {"beta", to_string(f.beta())},
            {"bound", to_string(bound)},
            {"interval", to_string(f.interval())},
            {"x", exact_pair(w.x)},
            {"value", to_string(w.value)},
            {"steps", w.steps}};
  emit(r, cfg, out);
  return valid ? kPass : kFail;
}

inline int cmd_cauchy_extend(const RunConfig& cfg, const CauchyArgs& ca, std::ostream& out) {
  using namespace cauchy;
  if (ca.in.empty() || ca.x.empty()) throw io::FormatError("extend needs --in and --x");
  const AnyModel model = model_from_json(read_json_file(ca.in));
  const Rational xr = parse_rational(ca.x);
  const Rational xs = parse_rational(ca.x_sqrt2);
  json r = {{"subcommand", "cauchy extend"}, {"verdict", "pass"}};
  try {
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          ExtensionView<M> ext(m);
          typename M::input_type x;
          if constexpr (std::is_same_v<M, GridAdditiveFunction>) {
            if (xs != 0) throw InvariantViolation("domain", "grid models take rational input");
            x = xr;
            r["x"] = to_string(xr);
          } else {
            x = QSqrt2(xr, xs);
            r["x"] = exact_pair(x);
          }
          const auto mag = sign(x) >= 0 ? x : typename M::input_type(-x);
          r["modulus"] = ext.minimal_modulus(mag).str();
          r["f_real"] = to_string(ext.f_real(x));
        },
        model);
  } catch (const InvariantViolation& e) {
    throw io::FormatError(e.what());
  }
  emit(r, cfg, out);
  return kPass;
}

inline int cmd_cauchy_condition(const RunConfig& cfg, const CauchyArgs& ca, std::ostream& out) {
  using namespace cauchy;
  if (ca.in.empty()) throw io::FormatError("condition needs --in");
  const auto which = parse_condition(ca.which);
  if (!which) throw io::FormatError("unknown condition '" + ca.which + "'");
  const AnyModel model = model_from_json(read_json_file(ca.in));
  ConditionParams p;
  p.bound = parse_rational(ca.bound);
  p.epsilon = parse_rational(ca.epsilon);
  p.depth = ca.depth;
  p.levels = ca.levels;
  const auto rep = std::visit([&](const auto& m) { return check_condition(m, *which, p); }, model);
  json r = {{"subcommand", "cauchy condition"},
            {"verdict", rep.holds_on_searched_set ? "pass" : "fail"},
            {"condition", to_string(rep.which)},
            {"holds_on_searched_set", rep.holds_on_searched_set},
            {"conclusive", rep.conclusive},
            {"witness", rep.witness},
            {"searched", rep.searched},
            {"points_searched", rep.points_searched}};
  emit(r, cfg, out);
  return rep.holds_on_searched_set ? kPass : kFail;
}

}  // namespace detail

/// Runs one invocation. Reports go to `out` (or --out); diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Frame functions on effects: reconstruction, cone certificates, Cauchy checks",
               "gleason"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string state_path, mic_path, verify_path, frame_path, pom_path, aug_path;
  int trials = 100;
  bool mic = false;
  CauchyArgs ca;

  auto* recon = app.add_subcommand("reconstruct", "recover a hidden state from its born frame");
  recon->add_option("--dim", cfg.dim);
  recon->add_option("--seed", cfg.seed);
  recon->add_option("--state", state_path, "hidden state (operator JSON)");
  recon->add_option("--mic", mic_path, "MIC-POM (POM JSON)");
  add_common(recon, cfg);

  auto* cert = app.add_subcommand("certify-cone", "span certificate for C(B) n C(M)");
  cert->add_option("--dim", cfg.dim);
  cert->add_option("--seed", cfg.seed);
  cert->add_option("--epsilon", cfg.epsilon);
  cert->add_option("--verify", verify_path, "re-verify a certificate file");
  add_common(cert, cfg);

  auto* aug = app.add_subcommand("augbasis", "construct an augmented basis");
  aug->add_option("--dim", cfg.dim);
  aug->add_option("--seed", cfg.seed, "random orthonormal basis (default: computational)");
  add_common(aug, cfg);

  auto* vf = app.add_subcommand("verify-frame", "test additivity, normalization and range of a frame");
  vf->add_option("--frame", frame_path);
  vf->add_option("--trials", trials);
  vf->add_option("--seed", cfg.seed);
  add_common(vf, cfg);

  auto* val = app.add_subcommand("validate", "check a POM or augmented basis file");
  val->add_option("--pom", pom_path);
  val->add_flag("--mic", mic, "also require d^2 linearly independent effects");
  val->add_option("--augmented", aug_path);
  add_common(val, cfg);

  auto* cauchy_cmd = app.add_subcommand("cauchy", "exact additive functions on [0, a]");
  cauchy_cmd->require_subcommand(1);
  auto* grid = cauchy_cmd->add_subcommand("grid", "grid-additive function from f(a/N) = v");
  grid->add_option("--a", ca.a);
  grid->add_option("--n", ca.n);
  grid->add_option("--v", ca.v);
  add_common(grid, cfg);
  auto* wit = cauchy_cmd->add_subcommand("witness", "x in (0, a] with f(x) > bound");
  wit->add_option("--alpha", ca.alpha);
  wit->add_option("--beta", ca.beta);
  wit->add_option("--bound", ca.bound);
  wit->add_option("--interval", ca.interval);
  add_common(wit, cfg);
  auto* ext = cauchy_cmd->add_subcommand("extend", "evaluate the real-line extension");
  ext->add_option("--in", ca.in);
  ext->add_option("--x", ca.x, "rational part P/Q");
  ext->add_option("--x-sqrt2", ca.x_sqrt2, "coefficient of sqrt 2 (Q(sqrt 2) models)");
  add_common(ext, cfg);
  auto* cond = cauchy_cmd->add_subcommand("condition", "search for a regularity-condition witness");
  cond->add_option("--in", ca.in);
  cond->add_option("--which", ca.which, "bounded_above | bounded_below | continuous_at_zero | monotone");
  cond->add_option("--bound", ca.bound);
  cond->add_option("--epsilon", ca.epsilon);
  cond->add_option("--depth", ca.depth);
  cond->add_option("--levels", ca.levels);
  add_common(cond, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInvalid;
  }

  try {
    if (*recon) return cmd_reconstruct(cfg, state_path, mic_path, out);
    if (*cert) return cmd_certify(cfg, verify_path, out);
    if (*aug) return cmd_augbasis(cfg, out);
    if (*vf) return cmd_verify_frame(cfg, frame_path, trials, out);
    if (*val) return cmd_validate(cfg, pom_path, mic, aug_path, out);
    if (*grid) return cmd_cauchy_grid(cfg, ca, out);
    if (*wit) return cmd_cauchy_witness(cfg, ca, out);
    if (*ext) return cmd_cauchy_extend(cfg, ca, out);
    if (*cond) return cmd_cauchy_condition(cfg, ca, out);
  } catch (const io::FormatError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvariantViolation& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const ConvergenceError& e) {
    err << "failed: " << e.what() << "\n";
    return kFail;
  }
  return kInvalid;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gleason"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gleason::cli
