#include "residua/rootfind.hpp"

#include <algorithm>
#include <numeric>

#include "residua/error.hpp"

namespace residua {

namespace {

struct EvalPair {
  BigComplex p;
  BigComplex dp;
  BigReal bound;
};

EvalPair eval_with_derivative(const Polynomial& poly, const BigComplex& z) {
  const auto& c = poly.coeffs();
  EvalPair out;
  out.p = c.back();
  out.dp = BigComplex();
  const BigReal az = abs(z);
  BigReal mu = abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    out.dp *= z;
    out.dp += out.p;
    out.p *= z;
    out.p += c[k];
    mu *= az;
    mu += abs(c[k]);
  }
  out.bound = ldexp(mu * static_cast<long>(4 * c.size()), -working_precision());
  return out;
}

BigReal normalized_residual(const Polynomial& p, const BigComplex& r) {
  PolyEval e = poly_eval_with_bound(p, r);
  if (e.abs_sum.is_zero()) return BigReal(0L);
  return abs(e.value) * p.max_abs_coeff() / e.abs_sum;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<BigComplex> aberth(const Polynomial& p) {
  const int n = p.degree();
  const Polynomial dp = poly_derivative(p);
  BigReal rho(0L);
  for (int k = 0; k < n; ++k) {
    BigReal q = abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading());
    if (q > rho) rho = std::move(q);
  }
  rho += 1L;
  // golden-angle spacing keeps the starting set free of symmetries of p
  const BigReal golden = (BigReal(3L) - sqrt(BigReal(5L))) * BigReal::pi();
  std::vector<BigComplex> z;
  z.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z.push_back(BigComplex::polar(rho, golden * static_cast<long>(k) + BigReal(1L) / 7L));

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < kAberthMaxIters; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      EvalPair e = eval_with_derivative(p, z[k]);
      if (abs(e.p) <= e.bound) {
        done[k] = true;
        continue;
      }
      all_done = false;
      if (e.dp.is_zero()) {
        z[k] += BigComplex::polar(ldexp(rho, -working_precision() / 4), BigReal(static_cast<long>(k + 1)));
        continue;
      }
      BigComplex ratio = e.p / e.dp;
      BigComplex s;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == k) continue;
        BigComplex d = z[k] - z[j];
        if (!d.is_zero()) s += BigComplex(1L) / d;
      }
      BigComplex denom = BigComplex(1L) - ratio * s;
      BigComplex w = denom.is_zero() ? ratio : ratio / denom;
      z[k] -= w;
    }
    if (all_done) break;
  }
  return z;
}

BigComplex newton_polish(const Polynomial& q, BigComplex z) {
  if (q.degree() < 1) return z;
  const Polynomial dq = poly_derivative(q);
  for (int it = 0; it < 40; ++it) {
    EvalPair e = eval_with_derivative(q, z);
    if (abs(e.p) <= e.bound || e.dp.is_zero()) break;
    BigComplex step = e.p / e.dp;
    z -= step;
    if (abs(step) <= ldexp(abs(z) + 1L, -working_precision())) break;
  }
  return z;
}

bool arg_less(const Root& a, const Root& b) {
  BigReal ta = arg_0_2pi(a.location);
  BigReal tb = arg_0_2pi(b.location);
  if (ta != tb) return ta < tb;
  return abs(a.location) < abs(b.location);
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::UpperHalfPlane: return "upper-half-plane";
    case Region::LowerHalfPlane: return "lower-half-plane";
    case Region::InsideUnitDisk: return "inside-unit-disk";
    case Region::OutsideUnitDisk: return "outside-unit-disk";
    case Region::InsideStrip: return "inside-strip";
    case Region::InsideKeyhole: return "inside-keyhole";
    case Region::OnContour: return "on-contour";
  }
  return "?";
}

BigReal cluster_radius() { return pow2(-working_precision() / 3); }
BigReal on_contour_tol() { return pow2(-working_precision() / 2); }

BigReal root_accept_tol(const Polynomial& p) {
  return ldexp(p.max_abs_coeff() * static_cast<long>(p.degree() + 1), 16 - working_precision());
}

BigComplex round_to_working(const BigComplex& z) { return {BigReal(z.re.get()), BigReal(z.im.get())}; }
BigReal round_to_working(const BigReal& x) { return BigReal(x.get()); }

std::vector<Root> find_roots(const Polynomial& p_in) {
  if (p_in.degree() < 1) throw Error(ErrorCode::DomainError, "find_roots needs degree >= 1");
  if (p_in.degree() > kMaxDegree) {
    throw Error(ErrorCode::DegreeTooHigh,
                "degree " + std::to_string(p_in.degree()) + " exceeds " + std::to_string(kMaxDegree));
  }
  const int prec = working_precision();
  const BigReal cluster = cluster_radius();
  const BigReal accept = root_accept_tol(p_in);
  const bool real_input = p_in.is_real();

  std::vector<Root> roots;
  const int zero_mult = p_in.low_order();
  if (zero_mult > 0) roots.push_back({BigComplex(), zero_mult, BigReal(0L)});
  const Polynomial p = p_in.shift_down(zero_mult);

  if (p.degree() >= 1) {
    std::vector<BigComplex> approx;
    std::vector<BigComplex> polished;
    std::vector<int> mult;
    {
      PrecisionScope wide(2 * prec);
      approx = aberth(p);
      UnionFind uf(approx.size());
      for (std::size_t i = 0; i < approx.size(); ++i) {
        for (std::size_t j = i + 1; j < approx.size(); ++j) {
          if (abs(approx[i] - approx[j]) <= cluster) uf.unite(i, j);
        }
      }
      std::vector<std::size_t> reps;
      for (std::size_t i = 0; i < approx.size(); ++i) {
        if (uf.find(i) == i) reps.push_back(i);
      }
      for (std::size_t r : reps) {
        BigComplex sum;
        int m = 0;
        for (std::size_t i = 0; i < approx.size(); ++i) {
          if (uf.find(i) == r) {
            sum += approx[i];
            ++m;
          }
        }
        BigComplex centre = sum / static_cast<long>(m);
        if (real_input && abs(centre.im) <= ldexp(cluster, -1)) centre.im = BigReal(0L);
        Polynomial q = p;
        for (int d = 1; d < m; ++d) q = poly_derivative(q);
        polished.push_back(newton_polish(q, centre));
        mult.push_back(m);
      }
      if (real_input) {
        std::vector<bool> paired(polished.size(), false);
        for (std::size_t i = 0; i < polished.size(); ++i) {
          if (paired[i] || polished[i].im.sign() <= 0) continue;
          std::size_t best = polished.size();
          BigReal best_d;
          for (std::size_t j = 0; j < polished.size(); ++j) {
            if (j == i || paired[j] || polished[j].im.sign() >= 0 || mult[j] != mult[i]) continue;
            BigReal d = abs(polished[j] - conj(polished[i]));
            if (best == polished.size() || d < best_d) {
              best = j;
              best_d = std::move(d);
            }
          }
          if (best != polished.size()) {
            polished[best] = conj(polished[i]);
            paired[i] = paired[best] = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < polished.size(); ++i) {
      Root r;
      r.location = round_to_working(polished[i]);
      r.multiplicity = mult[i];
      {
        PrecisionScope wide(2 * prec);
        r.residual = normalized_residual(p_in, r.location);
      }
      r.residual = round_to_working(r.residual);
      if (!(r.residual <= accept)) {
        throw Error(ErrorCode::NonConvergence,
                    "root residual " + r.residual.to_string(6) + " exceeds acceptance " + accept.to_string(6) +
                        " after " + std::to_string(kAberthMaxIters) + " sweeps");
      }
      roots.push_back(std::move(r));
    }
  }
  std::sort(roots.begin(), roots.end(), arg_less);
  return roots;
}

int argument_principle_count(const Polynomial& p, const BigComplex& center, const BigReal& radius, int n_samples) {
  if (n_samples < 8) n_samples = 8;
  const int prec = working_precision();
  BigReal total;
  {
    PrecisionScope wide(3 * prec);
    const Polynomial dp = poly_derivative(p);
    const BigReal two_pi = ldexp(BigReal::pi(), 1);
    BigComplex sum;
    for (int j = 0; j < n_samples; ++j) {
      BigComplex offset = BigComplex::polar(radius, two_pi * static_cast<long>(j) / static_cast<long>(n_samples));
      BigComplex z = center + offset;
      BigComplex pv = poly_eval(p, z);
      if (pv.is_zero()) throw Error(ErrorCode::IllConditioned, "root on the counting circle");
      sum += poly_eval(dp, z) / pv * offset;
    }
    // (1/2 pi i) sum f(z_j) i r e^{i t_j} dt = (1/N) sum f(z_j) (z_j - c)
    total = sum.re / static_cast<long>(n_samples);
  }
  BigReal nearest = round_nearest(total);
  if (abs(total - nearest) > BigReal(1L) / 4L) {
    throw Error(ErrorCode::IllConditioned,
                "winding sum " + total.to_string(8) + " is not close to an integer");
  }
  return static_cast<int>(nearest.to_long());
}

std::vector<Pole> classify_poles(const RationalFunction& f, ContourKind contour) {
  const BigReal cluster = cluster_radius();
  const BigReal tol = on_contour_tol();
  std::vector<Root> den_roots = find_roots(f.den);
  std::vector<Root> num_roots;
  if (f.num.degree() >= 1) num_roots = find_roots(f.num);

  std::vector<Pole> poles;
  for (Root& r : den_roots) {
    for (const Root& z : num_roots) {
      if (abs(z.location - r.location) <= cluster) r.multiplicity -= z.multiplicity;
    }
    if (r.multiplicity <= 0) continue;
    Pole pole;
    switch (contour) {
      case ContourKind::RealLine:
        if (abs(r.location.im) <= tol) {
          throw Error(ErrorCode::PoleOnContour,
                      "pole at " + r.location.re.to_string(12) + " lies on the real axis");
        }
        pole.region = r.location.im.sign() > 0 ? Region::UpperHalfPlane : Region::LowerHalfPlane;
        break;
      case ContourKind::UnitCircle: {
        BigReal m = abs(r.location);
        if (abs(m - 1L) <= tol) {
          throw Error(ErrorCode::PoleOnContour, "pole at " + r.location.to_string() + " lies on the unit circle");
        }
        pole.region = m < 1L ? Region::InsideUnitDisk : Region::OutsideUnitDisk;
        break;
      }
      case ContourKind::Keyhole:
        if (abs(r.location.im) <= tol && r.location.re >= -tol) {
          throw Error(ErrorCode::BranchPoleConflict,
                      "pole at " + r.location.re.to_string(12) + " lies on the branch cut [0, inf)");
        }
        pole.region = Region::InsideKeyhole;
        break;
      case ContourKind::ExpStrip: {
        if (r.location.is_zero()) continue;  // w = 0 is z = -inf, not a finite pole
        if (abs(r.location.im) <= tol && r.location.re.sign() > 0) {
          throw Error(ErrorCode::PoleOnContour,
                      "pole at z = " + log(r.location.re).to_string(12) + " lies on the real axis");
        }
        BigComplex z{log(abs(r.location)), arg_0_2pi(r.location)};
        r.location = std::move(z);
        pole.region = Region::InsideStrip;
        break;
      }
    }
    pole.root = std::move(r);
    poles.push_back(std::move(pole));
  }
  return poles;
}

}  // namespace residua
