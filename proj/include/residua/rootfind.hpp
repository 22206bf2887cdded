#pragma once

#include <string_view>
#include <vector>

#include "residua/polynomial.hpp"

namespace residua {

inline constexpr int kMaxDegree = 64;
inline constexpr int kAberthMaxIters = 200;

struct Root {
  BigComplex location;
  int multiplicity = 1;
  /// |p(location)| scaled by max|c| / sum |c_k| |location|^k
  BigReal residual;
};

enum class Region {
  UpperHalfPlane,
  LowerHalfPlane,
  InsideUnitDisk,
  OutsideUnitDisk,
  InsideStrip,
  InsideKeyhole,
  OnContour,
};

std::string_view to_string(Region r);

/// Which closed path the poles are measured against.
enum class ContourKind {
  /// the real line closed by an upper semicircle
  RealLine,
  UnitCircle,
  /// keyhole around the positive real axis; f is R(z)
  Keyhole,
  /// rectangle 0 <= Im z <= 2pi; f is R(w) with w = e^z, poles reported in z
  ExpStrip,
};

struct Pole {
  Root root;
  Region region = Region::UpperHalfPlane;
};

/// 2^(-prec/3) at working precision.
BigReal cluster_radius();
/// 2^(-prec/2) at working precision.
BigReal on_contour_tol();
/// 2^(-prec+16) max|c| (deg+1)
BigReal root_accept_tol(const Polynomial& p);

/// All roots with multiplicity, sorted by argument in [0, 2pi) then modulus.
/// Throws DomainError for degree < 1, DegreeTooHigh above kMaxDegree,
/// NonConvergence if a residual exceeds root_accept_tol.
std::vector<Root> find_roots(const Polynomial& p);

/// Denominator roots of f tagged against the contour, with numerator cancellation
/// applied. Throws PoleOnContour or BranchPoleConflict.
std::vector<Pole> classify_poles(const RationalFunction& f, ContourKind contour);

/// Nearest integer to (1/2 pi i) of the integral of p'/p around the circle.
/// Throws IllConditioned when the sum is more than 0.25 from an integer.
int argument_principle_count(const Polynomial& p, const BigComplex& center, const BigReal& radius,
                             int n_samples = 128);

/// Rounds both parts to the working precision.
BigComplex round_to_working(const BigComplex& z);
BigReal round_to_working(const BigReal& x);

}  // namespace residua
