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

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gleason/core.hpp"

// Additive functions on an interval [0, a], in exact arithmetic.

namespace gleason::cauchy {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "p/q" or "p", optional sign on p.
inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (s.empty() || slash == 0 || slash + 1 == s.size())
    throw InvariantViolation("rational", "cannot parse '" + s + "' as p/q");
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    const Integer p(s.substr(0, slash));
    const Integer q(s.substr(slash + 1));
    if (q == 0) throw InvariantViolation("rational", "zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const InvariantViolation&) {
    throw;
  } catch (const std::exception&) {
    throw InvariantViolation("rational", "cannot parse '" + s + "' as p/q");
  }
}

/// Always "p/q" with q > 0.
inline std::string to_string(const Rational& r) {
  return num(r).str() + "/" + den(r).str();
}

inline Integer floor(const Rational& r) {
  const Integer n = num(r), d = den(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

inline Integer ceil(const Rational& r) {
  const Integer n = num(r), d = den(r);
  Integer q = n / d;
  if (n % d != 0 && n > 0) q += 1;
  return q;
}

inline int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

/// p + q sqrt(2) with p, q rational.
struct QSqrt2 {
  Rational p;
  Rational q;

  QSqrt2() = default;
  QSqrt2(Rational p_, Rational q_ = 0) : p(std::move(p_)), q(std::move(q_)) {}

  /// Exact sign. p and q of opposite signs compare p^2 against 2 q^2, which
  /// can never tie unless both vanish.
  int sign() const {
    const int sp = gleason::cauchy::sign(p), sq = gleason::cauchy::sign(q);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    return p * p > 2 * q * q ? sp : sq;
  }

  double approx() const {
    return p.convert_to<double>() + q.convert_to<double>() * 1.4142135623730951;
  }

  friend QSqrt2 operator+(const QSqrt2& a, const QSqrt2& b) { return {a.p + b.p, a.q + b.q}; }
  friend QSqrt2 operator-(const QSqrt2& a, const QSqrt2& b) { return {a.p - b.p, a.q - b.q}; }
  friend QSqrt2 operator-(const QSqrt2& a) { return {-a.p, -a.q}; }
  friend QSqrt2 operator*(const Rational& s, const QSqrt2& a) { return {s * a.p, s * a.q}; }
  friend QSqrt2 operator/(const QSqrt2& a, const Rational& s) { return {a.p / s, a.q / s}; }
  friend bool operator==(const QSqrt2& a, const QSqrt2& b) { return a.p == b.p && a.q == b.q; }
  friend std::strong_ordering operator<=>(const QSqrt2& a, const QSqrt2& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

inline std::string to_string(const QSqrt2& x) {
  return to_string(x.p) + " + " + to_string(x.q) + "*sqrt2";
}

inline int sign(const QSqrt2& x) { return x.sign(); }

/// Smallest integer n with x <= n.
inline Integer ceil(const QSqrt2& x) {
  Integer n = ceil(Rational(x.p)) + ceil(Rational(x.q * Rational(14142136, 10000000)));
  while ((x - QSqrt2(Rational(n))).sign() > 0) n += 1;
  while ((x - QSqrt2(Rational(n - 1))).sign() <= 0) n -= 1;
  return n;
}

// ---------------------------------------------------------------------------
// Grid model

/**
 * Values f(k a / N), k = 0..N, of a function on the grid of [0, a].
 * The table is stored as given; validate() reports which invariant fails.
 */
class GridAdditiveFunction {
 public:
  using input_type = Rational;

  GridAdditiveFunction(Rational a, std::int64_t n, std::vector<Rational> values)
      : a_(std::move(a)), n_(n), values_(std::move(values)) {
    if (!(a_ > 0)) throw InvariantViolation("interval", "a must be positive");
    if (n_ < 1) throw InvariantViolation("grid", "N must be at least 1");
    if (static_cast<std::int64_t>(values_.size()) != n_ + 1)
      throw InvariantViolation("grid", "need N + 1 values");
  }

  struct Violation {
    std::string name;  // "zero" or "additivity"
    std::int64_t j = 0, k = 0;
  };

  /// f(0) = 0 and f(a/N) + f(k a/N) = f((k+1) a/N) for all k < N. By
  /// induction these steps are equivalent to additivity on every grid pair.
  std::optional<Violation> validate() const {
    if (values_[0] != 0) return Violation{"zero", 0, 0};
    for (std::int64_t k = 1; k < n_; ++k)
      if (values_[1] + values_[k] != values_[k + 1]) return Violation{"additivity", 1, k};
    return std::nullopt;
  }

  const Rational& interval() const { return a_; }
  std::int64_t steps() const { return n_; }
  const std::vector<Rational>& values() const { return values_; }
  Rational point(std::int64_t k) const { return a_ * k / n_; }

  /// Index of x on the grid, if it is a grid point of [0, a].
  std::optional<std::int64_t> index_of(const Rational& x) const {
    const Rational k = x * n_ / a_;
    if (den(k) != 1 || k < 0 || k > n_) return std::nullopt;
    return num(k).convert_to<std::int64_t>();
  }

  bool contains(const Rational& x) const { return index_of(x).has_value(); }

  Rational value(const Rational& x) const {
    const auto k = index_of(x);
    if (!k) throw InvariantViolation("domain", to_string(x) + " is not a grid point");
    return values_[*k];
  }

  /// Smallest n >= max(1, ceil(x/a)) with x/n on the grid.
  std::optional<Integer> minimal_modulus(const Rational& x) const {
    if (x == 0) return Integer(1);
    const Rational m = x * n_ / a_;
    if (den(m) != 1 || m < 0) return std::nullopt;
    const Integer mi = num(m);
    Integer n = std::max(Integer(1), ceil(Rational(x / a_)));
    for (; n <= mi; ++n)
      if (mi % n == 0) return n;
    return std::nullopt;
  }

  std::vector<Rational> probe_points(int /*depth*/) const {
    std::vector<Rational> out;
    for (std::int64_t k = 1; k <= n_; ++k) out.push_back(point(k));
    return out;
  }

 private:
  Rational a_;
  std::int64_t n_;
  std::vector<Rational> values_;
};

/// f(k a / N) = k v: the only grid-additive function with f(a / N) = v.
inline GridAdditiveFunction grid_from_unit(const Rational& a, std::int64_t n, const Rational& v) {
  if (n < 1) throw InvariantViolation("grid", "N must be at least 1");
  std::vector<Rational> values;
  values.reserve(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) values.push_back(v * k);
  return GridAdditiveFunction(a, n, std::move(values));
}

struct LinearityResult {
  bool is_linear = false;
  Rational slope;  // f(a) / a
};

/// Throws InvariantViolation when the grid invariants fail; otherwise compares
/// every value with (f(a)/a) x exactly.
inline LinearityResult check_linear(const GridAdditiveFunction& g) {
  if (const auto v = g.validate())
    throw InvariantViolation(v->name, "grid invariant fails at (" + std::to_string(v->j) + ", " +
                                          std::to_string(v->k) + ")");
  LinearityResult r;
  r.slope = g.values().back() / g.interval();
  r.is_linear = true;
  for (std::int64_t k = 0; k <= g.steps(); ++k)
    if (g.values()[k] != r.slope * g.point(k)) r.is_linear = false;
  return r;
}

// ---------------------------------------------------------------------------
// Q(sqrt 2) model

/// Iterates the fractions p/q that approximate sqrt(2) best from one side:
/// the continued-fraction convergents (p_{k+1} = 2 p_k + p_{k-1}, starting
/// 1/1, 3/2) interleaved with the intermediate fractions
/// (p_{k-1} + p_k) / (q_{k-1} + q_k), in increasing order of q.
class Sqrt2Approximants {
 public:
  struct Fraction {
    Integer p, q;
    bool above;  // p/q > sqrt(2)
  };

  Fraction next() {
    Fraction out;
    if (pending_) {
      out = *pending_;
      pending_.reset();
      return out;
    }
    // Emit convergent k, queue the intermediate fraction that follows it.
    out = {p_, q_, above_};
    Fraction inter{prev_p_ + p_, prev_q_ + q_, !above_};
    const Integer np = 2 * p_ + prev_p_, nq = 2 * q_ + prev_q_;
    prev_p_ = p_;
    prev_q_ = q_;
    p_ = np;
    q_ = nq;
    above_ = !above_;
    pending_ = inter;
    return out;
  }

 private:
  Integer prev_p_ = 1, prev_q_ = 0;  // 1/0
  Integer p_ = 1, q_ = 1;
  bool above_ = false;
  std::optional<Fraction> pending_;
};

/**
 * f(p + q sqrt 2) = alpha p + beta q on [0, a] n Q(sqrt 2).
 *
 * Additive by construction. It is linear only if beta = alpha sqrt 2, and for
 * rational alpha, beta that happens exactly when beta^2 = 2 alpha^2 with
 * alpha and beta of equal sign, i.e. alpha = beta = 0.
 */
class QSqrt2Additive {
 public:
  using input_type = QSqrt2;

  QSqrt2Additive(Rational alpha, Rational beta, Rational a = 1)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), a_(std::move(a)) {
    if (!(a_ > 0)) throw InvariantViolation("interval", "a must be positive");
  }

  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  const Rational& interval() const { return a_; }

  bool is_nonlinear() const { return beta_ * beta_ != 2 * alpha_ * alpha_; }

  bool contains(const QSqrt2& x) const {
    return x.sign() >= 0 && (QSqrt2(a_) - x).sign() >= 0;
  }

  Rational value(const QSqrt2& x) const { return alpha_ * x.p + beta_ * x.q; }

  std::optional<Integer> minimal_modulus(const QSqrt2& x) const {
    if (x.sign() < 0) return std::nullopt;
    return std::max(Integer(1), ceil(x / a_));
  }

  /// Positive points p - q sqrt 2 or q sqrt 2 - p from the first `depth`
  /// one-sided approximants that fall in (0, a], followed by k a / depth.
  std::vector<QSqrt2> probe_points(int depth) const {
    std::vector<QSqrt2> out;
    Sqrt2Approximants walk;
    for (int i = 0; i < depth; ++i) {
      const auto f = walk.next();
      const QSqrt2 x = f.above ? QSqrt2(Rational(f.p), Rational(-f.q))
                               : QSqrt2(Rational(-f.p), Rational(f.q));
      if (x.sign() > 0 && contains(x)) out.push_back(x);
    }
    for (int k = 1; k <= depth; ++k) out.emplace_back(a_ * k / depth);
    return out;
  }

 private:
  Rational alpha_, beta_, a_;
};

struct Witness {
  QSqrt2 x;
  Rational value;
  int steps = 0;
};

/**
 * A point x in (0, a] with f(x) > bound, found by walking the one-sided
 * approximants p/q of sqrt 2: |p - q sqrt 2| < 1/q while the value grows like
 * q |beta - alpha sqrt 2|.
 */
inline Witness unboundedness_witness(const QSqrt2Additive& f, const Rational& bound,
                                     int max_steps = 100000) {
  if (f.alpha() == 0 && f.beta() == 0)
    throw InvariantViolation("degenerate", "alpha = beta = 0 is the zero function");
  if (!f.is_nonlinear()) throw InvariantViolation("linear", "model is linear");
  if (!(bound > 0)) throw InvariantViolation("bound", "bound must be positive");
  Sqrt2Approximants walk;
  for (int step = 1; step <= max_steps; ++step) {
    const auto fr = walk.next();
    const QSqrt2 x = fr.above ? QSqrt2(Rational(fr.p), Rational(-fr.q))
                              : QSqrt2(Rational(-fr.p), Rational(fr.q));
    if (x.sign() > 0 && f.contains(x)) {
      const Rational v = f.value(x);
      if (v > bound) return {x, v, step};
    }
  }
  throw ConvergenceError("unboundedness_witness: step limit reached");
}

// ---------------------------------------------------------------------------
// Extensions f_+ and f_R

template <class M>
concept AdditiveModel = requires(const M& m, const typename M::input_type& x, int depth) {
  { m.interval() } -> std::convertible_to<Rational>;
  { m.contains(x) } -> std::convertible_to<bool>;
  { m.value(x) } -> std::convertible_to<Rational>;
  { m.minimal_modulus(x) } -> std::convertible_to<std::optional<Integer>>;
  { m.probe_points(depth) } -> std::convertible_to<std::vector<typename M::input_type>>;
};

/**
 * f_+(x) = n f(x / n) for x >= 0 and any n with x / n in the base domain;
 * f_R(x) = f_+(x) for x >= 0 and -f_+(-x) otherwise.
 */
template <AdditiveModel Model>
class ExtensionView {
 public:
  using input_type = typename Model::input_type;

  explicit ExtensionView(Model base) : base_(std::move(base)) {}

  const Model& base() const { return base_; }

  Rational f_plus(const input_type& x, const Integer& n) const {
    if (sign(x) < 0) throw InvariantViolation("domain", "f_+ takes nonnegative input");
    if (n < 1) throw InvariantViolation("modulus", "n must be positive");
    const input_type scaled = x / Rational(n);
    if (!base_.contains(scaled))
      throw InvariantViolation("domain", "x / n is outside the base domain");
    return Rational(n) * base_.value(scaled);
  }

  Integer minimal_modulus(const input_type& x) const {
    const auto n = base_.minimal_modulus(x);
    if (!n) throw InvariantViolation("domain", "input is not representable in the base domain");
    return *n;
  }

  Rational f_plus(const input_type& x) const { return f_plus(x, minimal_modulus(x)); }

  Rational f_real(const input_type& x) const {
    return sign(x) >= 0 ? f_plus(x) : Rational(-f_plus(input_type(-x)));
  }

 private:
  Model base_;
};

template <AdditiveModel Model>
Rational extend_real(const Model& base, const typename Model::input_type& x) {
  return ExtensionView<Model>(base).f_real(x);
}

// ---------------------------------------------------------------------------
// Regularity conditions

enum class Condition { bounded_above, bounded_below, continuous_at_zero, monotone };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::bounded_above: return "bounded_above";
    case Condition::bounded_below: return "bounded_below";
    case Condition::continuous_at_zero: return "continuous_at_zero";
    case Condition::monotone: return "monotone";
  }
  return "";
}

inline std::optional<Condition> parse_condition(const std::string& s) {
  for (auto c : {Condition::bounded_above, Condition::bounded_below, Condition::continuous_at_zero,
                 Condition::monotone})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

struct ConditionParams {
  Rational bound = 1;    // b for bounded_above, c for bounded_below
  Rational epsilon = Rational(1, 10);  // continuity threshold
  int depth = 60;        // probe depth
  int levels = 20;       // delta levels for continuous_at_zero
};

/// Evidence over a finite searched set, never a proof.
struct ConditionReport {
  Condition which{};
  bool holds_on_searched_set = true;
  std::vector<std::string> witness;  // x (and y for monotone), with values
  std::string searched;
  int points_searched = 0;
  bool conclusive = true;  // false when the probe set ran out of resolution
};

template <AdditiveModel Model>
ConditionReport check_condition(const Model& f, Condition which, const ConditionParams& params) {
  using X = typename Model::input_type;
  ConditionReport r;
  r.which = which;
  std::vector<X> pts = f.probe_points(params.depth);
  r.points_searched = static_cast<int>(pts.size());
  r.searched = std::to_string(pts.size()) + " probe points in (0, " + to_string(f.interval()) + "]";

  auto describe = [&](const X& x) { return "f(" + to_string(x) + ") = " + to_string(f.value(x)); };

  switch (which) {
    case Condition::bounded_above:
    case Condition::bounded_below:
      for (const auto& x : pts) {
        const Rational v = f.value(x);
        if (which == Condition::bounded_above ? v > params.bound : v < params.bound) {
          r.holds_on_searched_set = false;
          r.witness.push_back(describe(x));
          break;
        }
      }
      break;
    case Condition::monotone: {
      std::sort(pts.begin(), pts.end(), [](const X& a, const X& b) { return sign(b - a) > 0; });
      X prev = X(Rational(0));
      Rational prev_v = 0;
      for (const auto& x : pts) {
        const Rational v = f.value(x);
        if (v < prev_v) {
          r.holds_on_searched_set = false;
          r.witness = {describe(prev), describe(x)};
          break;
        }
        prev = x;
        prev_v = v;
      }
      break;
    }
    case Condition::continuous_at_zero: {
      // Levels delta_k = a / 2^k, k = 1..levels. Discontinuity evidence needs
      // a point with |f| >= epsilon below every level; one level whose probe
      // points all satisfy |f| < epsilon is continuity evidence. Running out
      // of probe points first leaves the scan inconclusive.
      int scanned = 0;
      std::optional<X> finest;
      Rational delta = f.interval();
      bool clean_level = false;
      for (int k = 1; k <= params.levels; ++k) {
        delta /= 2;
        bool any = false;
        std::optional<X> hit;
        for (const auto& x : pts) {
          if (sign(x) > 0 && sign(X(delta) - x) > 0) {
            any = true;
            const Rational v = f.value(x);
            if ((v < 0 ? Rational(-v) : v) >= params.epsilon) hit = x;
          }
        }
        if (!any) break;
        ++scanned;
        if (!hit) {
          clean_level = true;
          break;
        }
        finest = hit;
      }
      r.conclusive = clean_level || scanned == params.levels;
      r.searched += "; " + std::to_string(scanned) + " delta levels a/2^k scanned";
      if (!clean_level && scanned == params.levels) {
        r.holds_on_searched_set = false;
        r.witness.push_back(describe(*finest));
      }
      break;
    }
  }
  return r;
}

}  // namespace gleason::cauchy
