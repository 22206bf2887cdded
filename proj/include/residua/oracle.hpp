#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "residua/ast.hpp"
#include "residua/big_real.hpp"

namespace residua {

using RealFn = std::function<BigReal(const BigReal&)>;

struct QuadResult {
  BigReal value;
  BigReal abs_error_estimate;
  long n_evals = 0;
  bool converged = false;
};

inline constexpr int kMaxPanels = 4000;
inline constexpr int kTailTerms = 40;

/// Globally adaptive 15/7-point Gauss-Kronrod. `tol` bounds the summed |K - G|
/// relative to max(1, |value|). With endpoint_alpha = a the substitution
/// x = lo + u^(1/(1+a)) removes an x^a singularity at lo. Throws MaxSubdivisions.
QuadResult quad_finite(const RealFn& f, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                       std::optional<BigReal> endpoint_alpha = std::nullopt);

enum class TailKind { None, Trig, DecayingExp };

struct TailClass {
  TailKind kind = TailKind::None;
  /// angular frequency of the trig factor
  BigReal a;
  /// trig zeros sit at (k + phase) pi / a: 1/2 for cos, 0 for sin
  BigReal phase;
};

enum class HalfLineMap {
  /// x = t/(1-t) on [0,1); geometric doubling for exponential tails
  Rational,
  /// [0,1] direct plus x = 1/u on (0,1]; Euler averaging for trig tails
  Reciprocal,
};

/// Integral over [0, inf). Throws MaxSubdivisions or TailDivergence.
QuadResult quad_halfline(const RealFn& f, const BigReal& tol, const TailClass& tail,
                         HalfLineMap map = HalfLineMap::Rational,
                         std::optional<BigReal> endpoint_alpha = std::nullopt);

/// Evaluates an expression in `var` at real points; parameters must already be bound.
class RealEvaluator {
 public:
  RealEvaluator(const ExprPtr& e, std::string var);
  ~RealEvaluator();
  RealEvaluator(const RealEvaluator&) = delete;
  RealEvaluator& operator=(const RealEvaluator&) = delete;
  RealEvaluator(RealEvaluator&&) noexcept;

  /// Throws DomainError on NaN or an unbound symbol.
  BigReal operator()(const BigReal& x) const;

  struct Node;

 private:
  std::unique_ptr<Node> root_;
  std::string var_;
};

struct OracleHint {
  TailClass tail;
  /// x^a behaviour at the lower bound (keyhole with a < 0)
  std::optional<BigReal> endpoint_alpha;
};

/// Numeric value of the integral straight from its expression tree, at twice the
/// working precision. The full line is folded onto [0, inf) as f(x) + f(-x).
QuadResult oracle_integrate(const Integral& integral, const OracleHint& hint, const BigReal& tol,
                            HalfLineMap map = HalfLineMap::Rational);

struct Verdict {
  bool pass = false;
  BigReal oracle;
  BigReal gap;
  std::string note;
};

inline constexpr double kOracleDefaultTol = 1e-12;
inline constexpr double kVerifyDefaultRelTol = 1e-8;

/// PASS iff the oracle converged and |closed - oracle| <= rel_tol max(1, |oracle|).
Verdict verify(const BigReal& closed, const QuadResult& oracle, const BigReal& rel_tol);

}  // namespace residua
