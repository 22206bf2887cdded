#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "residua/rootfind.hpp"

namespace residua {

enum class Multiplier {
  None,
  /// e^{i a z}
  ExpIaz,
  /// e^{a log z}, arg z in [0, 2pi)
  PowerLog,
  /// e^{a z}; the rational part is in w = e^z
  ExpAz,
  /// e^{-z^2 + 2 i b z}
  GaussShift,
  /// e^{i a z} / sinh z
  ExpIazOverSinh,
  /// log z, arg z in [0, 2pi)
  Log,
};

std::string_view to_string(Multiplier m);

/// Integrand continued into the complex plane: rational part times a multiplier.
struct Kernel {
  RationalFunction rational;
  Multiplier multiplier = Multiplier::None;
  BigReal a;
  BigReal b;

  BigComplex eval(const BigComplex& z) const;
  bool has_branch_cut() const noexcept {
    return multiplier == Multiplier::PowerLog || multiplier == Multiplier::Log;
  }

  friend bool operator==(const Kernel& x, const Kernel& y) {
    return x.rational == y.rational && x.multiplier == y.multiplier && x.a == y.a && x.b == y.b;
  }
};

enum class ResidueMethod { SimpleQuotient, OrderMDerivative, NumericContour };
std::string_view to_string(ResidueMethod m);

struct ResidueRecord {
  Pole pole;
  BigComplex value;
  ResidueMethod method = ResidueMethod::SimpleQuotient;
  /// |closed - numeric| when both ran
  std::optional<BigReal> crosscheck_delta;
};

/// 1e-20 at 128 bits, scaled with precision.
BigReal residue_xcheck_tol();
/// 1e-18 at 128 bits, scaled with precision.
BigReal assembly_tol();

/// The branch log used by the keyhole kernels: arg in [0, 2pi).
BigComplex log_0_2pi(const BigComplex& z);

/// Order of the pole of k at z0 (0 or negative where k is regular).
int pole_order(const Kernel& k, const BigComplex& z0);
/// N(z0)/D'(z0). Throws NotSimple for a higher-order pole.
BigComplex residue_simple(const Kernel& k, const BigComplex& z0);
/// Order-m residue formula. Throws OrderMismatch if m is not the detected order.
BigComplex residue_order_m(const Kernel& k, const BigComplex& z0, int m);
/// Trapezoid rule on a circle, doubling from n_samples until successive sums agree.
/// Throws NoConvergence beyond 2^16 samples.
BigComplex residue_numeric_contour(const Kernel& k, const BigComplex& z0, const BigReal& radius,
                                   int n_samples = 16);
/// beta_n = (1/2 pi i) contour integral of k(z) (z - z0)^(n-1) dz; beta_1 is the residue.
BigComplex laurent_coefficient(const Kernel& k, const BigComplex& z0, int n, const BigReal& radius);
/// Singular points of k near z0 (poles, sinh zeros, images of e^z poles).
std::vector<BigComplex> kernel_singularities(const Kernel& k, const BigComplex& z0);
/// Half the distance to the nearest other singularity (or the branch cut), capped at 1.
BigReal default_contour_radius(const Kernel& k, const BigComplex& z0);

/// Closed-form residue at the pole, cross-checked by the numeric contour.
ResidueRecord compute_residue(const Kernel& k, const Pole& pole, bool crosscheck = true);

}  // namespace residua
