#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "residua/ast.hpp"
#include "residua/oracle.hpp"
#include "residua/residue.hpp"

namespace residua {

enum class Family {
  RationalLine,
  FourierRational,
  TrigUnitCircle,
  KeyholePower,
  ExpRectangle,
  GaussianShift,
  SinhKernel,
};
std::string_view to_string(Family f);

enum class BoundsKind { FullLine, HalfLine, ZeroToTwoPi };
std::string_view to_string(BoundsKind b);

enum class TrigPart { None, Cos, Sin };
std::string_view to_string(TrigPart t);

struct IntegralProblem {
  Family family = Family::RationalLine;
  Kernel kernel;
  /// a, b, n as far as the family defines them
  std::map<std::string, BigReal> params;
  BoundsKind bounds = BoundsKind::FullLine;
  TrigPart trig_part = TrigPart::None;
  /// 1/2 when a half-line integral is read off the full line by symmetry
  mpq_class scale = 1;
  /// normalized integral the problem was built from
  Integral source;

  friend bool operator==(const IntegralProblem& x, const IntegralProblem& y) {
    return x.family == y.family && x.kernel == y.kernel && x.params == y.params && x.bounds == y.bounds &&
           x.trig_part == y.trig_part && x.scale == y.scale;
  }
};

struct ClosedValue {
  BigReal value;
  std::vector<ResidueRecord> residues;
  std::string formula_note;
  /// the partner integral sharing the same residue sum (sin part of a cos problem and so on)
  std::optional<BigReal> companion;
  /// imaginary part dropped by the final projection
  BigReal discarded_imag;
};

/// Normalizes, then matches the integrand against the families in the order
/// Sinh, Gaussian, Keyhole, ExpRectangle, Fourier, Trig, Rational.
/// Throws Unclassifiable or InvalidParams.
IntegralProblem classify(const Integral& integral);

ClosedValue eval_rational_line(const IntegralProblem& p);
/// Cos and sin parts of 2 pi i times the upper half-plane residues of e^{iaz} R(z).
std::pair<ClosedValue, ClosedValue> eval_fourier_rational(const IntegralProblem& p);
/// x sin(ax)/(x^2+b^2) by differentiating the cos family in a.
ClosedValue eval_param_derivative(const IntegralProblem& p);
ClosedValue eval_trig_unit_circle(const IntegralProblem& p);
ClosedValue eval_keyhole_power(const IntegralProblem& p);
ClosedValue eval_exp_rectangle(const IntegralProblem& p);
ClosedValue eval_gaussian_shift(const IntegralProblem& p);
ClosedValue eval_sinh_kernel(const IntegralProblem& p);

/// Dispatches on the family.
ClosedValue evaluate(const IntegralProblem& p);

/// Poles the family's contour encloses (and the indentation points for SinhKernel).
std::vector<Pole> relevant_poles(const IntegralProblem& p);

/// Tail class and endpoint behaviour the oracle should assume.
OracleHint oracle_hint(const IntegralProblem& p);

enum class ContourPiece { Semicircle, RectangleSide, SmallIndent };
std::string_view to_string(ContourPiece c);

struct DecayRow {
  BigReal radius;
  /// integral of |k| along the piece
  BigReal bound;
};

struct DecayReport {
  ContourPiece piece = ContourPiece::Semicircle;
  std::vector<DecayRow> rows;
  /// least-squares slope of log(bound) against log(R), or against R for rectangle sides
  BigReal exponent;
  std::string model;

  std::string csv() const;
};

/// Semicircle: |z| = R, 0 <= arg z <= pi. RectangleSide: Re z = R, 0 <= Im z <= 2 pi.
/// SmallIndent: |z| = R around 0, upper half.
DecayReport arc_decay_check(const Kernel& k, ContourPiece piece, const std::vector<BigReal>& radii);

/// Default contour piece for the family.
ContourPiece decay_piece(Family f);

}  // namespace residua
