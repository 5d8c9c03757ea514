#include "microlab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "microlab/spaces.hpp"

namespace microlab {

namespace {

// xi^alpha with the convention 0^0 = 1.
double fiber_power(const double xi[2], const std::array<int, 2>& alpha) {
  double v = 1.0;
  for (int k = 0; k < alpha[0]; ++k) v *= xi[0];
  for (int k = 0; k < alpha[1]; ++k) v *= xi[1];
  return v;
}

// Falling factorial alpha! / (alpha - beta)!; zero when beta > alpha.
double monomial_factor(int alpha, int beta) {
  if (beta > alpha) return 0.0;
  double f = 1.0;
  for (int k = 0; k < beta; ++k) f *= double(alpha - k);
  return f;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

}  // namespace

CoefficientSymbol::CoefficientSymbol(std::vector<Term> terms,
                                     bool principally_real)
    : terms_(std::move(terms)), principally_real_(principally_real) {
  if (terms_.empty())
    throw std::invalid_argument("CoefficientSymbol: no terms");
  grid_ = terms_.front().coeff.grid();
  for (auto& t : terms_) {
    if (t.coeff.grid() != grid_)
      throw std::invalid_argument("CoefficientSymbol: mixed grids");
    if (t.alpha[0] < 0 || t.alpha[1] < 0)
      throw std::invalid_argument("CoefficientSymbol: negative exponent");
    if (grid_.dim == 1 && t.alpha[1] != 0)
      throw std::invalid_argument(
          "CoefficientSymbol: second fiber exponent on a 1D grid");
    order_ = std::max(order_, t.alpha[0] + t.alpha[1]);
  }
  if (principally_real_) {
    for (const auto& t : terms_)
      if (t.alpha[0] + t.alpha[1] == order_ && !t.coeff.is_real())
        throw std::invalid_argument(
            "CoefficientSymbol: declared principally real but a leading "
            "coefficient is complex");
  }
}

std::complex<double> CoefficientSymbol::eval(std::size_t i,
                                             const double xi[2]) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& t : terms_) acc += t.coeff.at(i) * fiber_power(xi, t.alpha);
  return acc;
}

SampledField CoefficientSymbol::fiber_derivative_slice(
    const std::array<int, 2>& beta, const double xi[2]) const {
  std::vector<std::complex<double>> vals(grid_.size(), {0.0, 0.0});
  for (const auto& t : terms_) {
    double c = monomial_factor(t.alpha[0], beta[0]) *
               monomial_factor(t.alpha[1], beta[1]);
    if (c == 0.0) continue;
    std::array<int, 2> rem{t.alpha[0] - beta[0], t.alpha[1] - beta[1]};
    double w = c * fiber_power(xi, rem);
    if (w == 0.0) continue;
    const auto& src = t.coeff.values();
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += w * src[i];
  }
  SampledField out(grid_, std::move(vals), false);
  out.retag_real();
  return out;
}

// ---- HomogeneousSymbol ------------------------------------------------------

HomogeneousSymbol HomogeneousSymbol::from_table(const Grid& g, double degree,
                                                std::vector<double> table,
                                                int n_angles) {
  if (g.dim == 1 && n_angles != 2)
    throw std::invalid_argument("HomogeneousSymbol: 1D cosphere has 2 points");
  if (g.dim == 2 && n_angles < 8)
    throw std::invalid_argument("HomogeneousSymbol: too few angles");
  if (table.size() != g.size() * std::size_t(n_angles))
    throw std::invalid_argument("HomogeneousSymbol: table size mismatch");
  HomogeneousSymbol ph;
  ph.grid_ = g;
  ph.degree_ = degree;
  ph.n_angles_ = n_angles;
  ph.table_ = std::move(table);
  ph.table_max_ = 0.0;
  for (double v : ph.table_) ph.table_max_ = std::max(ph.table_max_, std::fabs(v));
  return ph;
}

void HomogeneousSymbol::direction(int a, double omega[2]) const {
  if (grid_.dim == 1) {
    omega[0] = a == 0 ? 1.0 : -1.0;
    omega[1] = 0.0;
  } else {
    double th = kTwoPi * a / n_angles_;
    omega[0] = std::cos(th);
    omega[1] = std::sin(th);
  }
}

// Periodic multilinear interpolation of the angle-a table slice at x.
double HomogeneousSymbol::table_interp(const double x[2], int angle) const {
  int n = grid_.n;
  double u0 = wrap_angle(x[0]) / grid_.spacing();
  int i0 = int(std::floor(u0)) % n;
  double f0 = u0 - std::floor(u0);
  if (grid_.dim == 1) {
    double v0 = table_[std::size_t(i0) * n_angles_ + angle];
    double v1 = table_[std::size_t((i0 + 1) % n) * n_angles_ + angle];
    return v0 + f0 * (v1 - v0);
  }
  double u1 = wrap_angle(x[1]) / grid_.spacing();
  int i1 = int(std::floor(u1)) % n;
  double f1 = u1 - std::floor(u1);
  auto at = [&](int a0, int a1) {
    return table_[(std::size_t(a0 % n) * n + (a1 % n)) * n_angles_ + angle];
  };
  double v00 = at(i0, i1), v01 = at(i0, i1 + 1);
  double v10 = at(i0 + 1, i1), v11 = at(i0 + 1, i1 + 1);
  return (1 - f0) * ((1 - f1) * v00 + f1 * v01) +
         f0 * ((1 - f1) * v10 + f1 * v11);
}

double HomogeneousSymbol::angular_profile(const double x[2],
                                          double theta) const {
  if (grid_.dim != 2)
    throw std::invalid_argument("angular_profile: needs a 2D fiber");
  if (!lead_.empty()) {
    double omega[2] = {std::cos(theta), std::sin(theta)};
    double acc = 0.0;
    for (const auto& t : lead_)
      acc += t.interp.eval_real(x) * fiber_power(omega, t.alpha);
    return acc;
  }
  double u = wrap_angle(theta) / (kTwoPi / n_angles_);
  int a = int(std::floor(u)) % n_angles_;
  double f = u - std::floor(u);
  double v0 = table_interp(x, a);
  double v1 = table_interp(x, (a + 1) % n_angles_);
  return v0 + f * (v1 - v0);
}

double HomogeneousSymbol::eval(const double x[2], const double xi[2]) const {
  if (!lead_.empty()) {
    // Leading monomials are already homogeneous of the right degree.
    double acc = 0.0;
    for (const auto& t : lead_)
      acc += t.interp.eval_real(x) * fiber_power(xi, t.alpha);
    return acc;
  }
  double rho = std::hypot(xi[0], xi[1]);
  if (rho == 0.0) return 0.0;
  double profile;
  if (grid_.dim == 1) {
    profile = table_interp(x, xi[0] >= 0.0 ? 0 : 1);
  } else {
    profile = angular_profile(x, std::atan2(xi[1], xi[0]));
  }
  return std::pow(rho, degree_) * profile;
}

void HomogeneousSymbol::hamilton(const double x[2], const double xi[2],
                                 double dxdt[2], double dxidt[2]) const {
  double rho = std::hypot(xi[0], xi[1]);
  if (rho == 0.0)
    throw std::invalid_argument("hamilton: zero-section fiber");
  dxdt[0] = dxdt[1] = dxidt[0] = dxidt[1] = 0.0;
  if (!lead_.empty()) {
    for (const auto& t : lead_) {
      double a = t.interp.eval_real(x);
      // d_xi of the monomial, exact.
      for (int axis = 0; axis < grid_.dim; ++axis) {
        std::array<int, 2> al = t.alpha;
        if (al[axis] == 0) continue;
        al[axis] -= 1;
        dxdt[axis] += a * t.alpha[axis] * fiber_power(xi, al);
      }
      // -d_x via the interpolant's analytic partials.
      double mono = fiber_power(xi, t.alpha);
      for (int axis = 0; axis < grid_.dim; ++axis)
        dxidt[axis] -= t.interp.partial(x, axis).real() * mono;
    }
    return;
  }
  // Tabulated path: homogeneity in the radius, central differences in x
  // (step = one grid spacing) and in angle (step = one angular spacing).
  double h = grid_.spacing();
  if (grid_.dim == 1) {
    int a = xi[0] >= 0.0 ? 0 : 1;
    double sgn = xi[0] >= 0.0 ? 1.0 : -1.0;
    double g = table_interp(x, a);
    dxdt[0] = degree_ * std::pow(rho, degree_ - 1.0) * sgn * g;
    double xp[2] = {x[0] + h, 0.0}, xm[2] = {x[0] - h, 0.0};
    double gx = (table_interp(xp, a) - table_interp(xm, a)) / (2.0 * h);
    dxidt[0] = -std::pow(rho, degree_) * gx;
    return;
  }
  double theta = std::atan2(xi[1], xi[0]);
  double cs = xi[0] / rho, sn = xi[1] / rho;
  double g = angular_profile(x, theta);
  double dth = kTwoPi / n_angles_;
  double gth = (angular_profile(x, theta + dth) -
                angular_profile(x, theta - dth)) /
               (2.0 * dth);
  // grad_xi (rho^m g(theta)) = rho^{m-1} (m g omega + g' theta_hat).
  double rm1 = std::pow(rho, degree_ - 1.0);
  dxdt[0] = rm1 * (degree_ * g * cs - gth * sn);
  dxdt[1] = rm1 * (degree_ * g * sn + gth * cs);
  double rm = std::pow(rho, degree_);
  for (int axis = 0; axis < 2; ++axis) {
    double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
    xp[axis] += h;
    xm[axis] -= h;
    dxidt[axis] =
        -rm * (angular_profile(xp, theta) - angular_profile(xm, theta)) /
        (2.0 * h);
  }
}

HomogeneousSymbol principal_symbol(const CoefficientSymbol& p, int n_angles) {
  const Grid& g = p.grid();
  HomogeneousSymbol ph;
  ph.grid_ = g;
  ph.degree_ = double(p.order());
  ph.n_angles_ = g.dim == 1 ? 2 : n_angles;

  double lead_scale = 0.0;
  for (const auto& t : p.terms()) {
    if (t.alpha[0] + t.alpha[1] != p.order()) continue;
    if (!t.coeff.is_real())
      throw std::invalid_argument(
          "principal_symbol: leading coefficient is not real-valued");
    lead_scale = std::max(lead_scale, t.coeff.max_abs());
    ph.lead_.push_back({t.alpha, TrigInterpolant(t.coeff)});
  }
  if (ph.lead_.empty() || lead_scale == 0.0)
    throw std::invalid_argument(
        "principal_symbol: leading part vanishes identically");

  ph.table_.assign(g.size() * std::size_t(ph.n_angles_), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int a = 0; a < ph.n_angles_; ++a) {
      double omega[2];
      ph.direction(a, omega);
      double acc = 0.0;
      for (const auto& t : p.terms()) {
        if (t.alpha[0] + t.alpha[1] != p.order()) continue;
        acc += t.coeff.at(i).real() * fiber_power(omega, t.alpha);
      }
      ph.table_[i * ph.n_angles_ + a] = acc;
      ph.table_max_ = std::max(ph.table_max_, std::fabs(acc));
    }
  }
  return ph;
}

void hamilton_field(const HomogeneousSymbol& ph, const PhasePoint& pt,
                    double dxdt[2], double dxidt[2]) {
  ph.hamilton(pt.x.data(), pt.xi.data(), dxdt, dxidt);
}

std::vector<PhasePoint> characteristic_points(const HomogeneousSymbol& ph,
                                              double tol) {
  if (tol <= 0.0) throw std::invalid_argument("characteristic_points: tol > 0");
  const Grid& g = ph.grid();
  double cut = tol * ph.max_table_abs();
  std::vector<PhasePoint> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int a = 0; a < ph.angle_count(); ++a) {
      if (std::fabs(ph.table_value(i, a)) > cut) continue;
      PhasePoint pt;
      if (g.dim == 1) {
        pt.x = {g.spacing() * double(i), 0.0};
      } else {
        pt.x = {g.spacing() * double(i / std::size_t(g.n)),
                g.spacing() * double(i % std::size_t(g.n))};
      }
      double omega[2];
      ph.direction(a, omega);
      pt.xi = {omega[0], omega[1]};
      out.push_back(pt);
    }
  }
  return out;
}

PhasePoint null_project(const HomogeneousSymbol& ph, const PhasePoint& pt) {
  if (ph.grid().dim != 2)
    throw std::invalid_argument(
        "null_project: angular root search needs a 2D fiber");
  double rho = std::hypot(pt.xi[0], pt.xi[1]);
  if (rho == 0.0) throw std::invalid_argument("null_project: zero fiber");
  double cut = 1e-10 * ph.max_table_abs();
  double theta0 = std::atan2(pt.xi[1], pt.xi[0]);
  auto prof = [&](double th) { return ph.angular_profile(pt.x.data(), th); };
  if (std::fabs(prof(theta0)) <= cut) return pt;

  // Walk outward from the start angle over the tabulated angular segments
  // and bisect the first bracketing segment found.
  int n = ph.angle_count();
  double dth = kTwoPi / n;
  int base = int(std::floor(wrap_angle(theta0) / dth));
  auto segment_angle = [&](int idx) { return dth * double(idx); };
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int d = 0; d <= n / 2 && !found; ++d) {
    for (int sgn : {+1, -1}) {
      if (d == 0 && sgn < 0) continue;
      int idx = base + sgn * d;
      double a = segment_angle(idx), b = segment_angle(idx + 1);
      double fa = prof(a), fb = prof(b);
      if (fa == 0.0) { lo = hi = a; found = true; break; }
      if (fb == 0.0) { lo = hi = b; found = true; break; }
      if (fa * fb < 0.0) { lo = a; hi = b; found = true; break; }
    }
  }
  if (!found)
    throw std::runtime_error(
        "null_project: no angular root (elliptic at this position)");
  if (lo != hi) {
    double fa = prof(lo);
    for (int it = 0; it < 200 && std::fabs(hi - lo) > 1e-15; ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = prof(mid);
      if (std::fabs(fm) <= cut) { lo = hi = mid; break; }
      if (fa * fm <= 0.0) hi = mid;
      else { lo = mid; fa = fm; }
    }
  }
  double theta = 0.5 * (lo + hi);
  if (std::fabs(prof(theta)) > cut)
    throw std::runtime_error("null_project: root refinement failed");
  PhasePoint out = pt;
  out.xi = {rho * std::cos(theta), rho * std::sin(theta)};
  return out;
}

// ---- seminorm scans ---------------------------------------------------------

SymbolClassReport seminorm_scan(
    const std::function<SampledField(const std::array<int, 2>& alpha,
                                     const double xi[2])>& slice,
    const Grid& g, const SymbolClass& cls, int alpha_max,
    const DyadicPartition& P) {
  if (alpha_max < 0 || alpha_max > 4)
    throw std::invalid_argument("seminorm_scan: alpha_max in [0,4]");
  SymbolClassReport rep;
  rep.cls = cls;
  rep.alpha_max = alpha_max;

  std::vector<std::array<int, 2>> alphas;
  if (g.dim == 1) {
    for (int a = 0; a <= alpha_max; ++a) alphas.push_back({a, 0});
  } else {
    for (int a0 = 0; a0 <= alpha_max; ++a0)
      for (int a1 = 0; a0 + a1 <= alpha_max; ++a1) alphas.push_back({a0, a1});
  }

  double max_radius = g.max_radius();
  int buckets = 0;
  while (std::exp2(buckets) <= max_radius) ++buckets;

  for (const auto& alpha : alphas) {
    int aa = alpha[0] + alpha[1];
    for (int j = 0; j < buckets; ++j) {
      double base = std::exp2(j);
      std::vector<std::array<double, 2>> reps;
      for (double rho : {base, std::floor(1.5 * base)}) {
        if (rho > max_radius) continue;
        if (g.dim == 1) {
          reps.push_back({rho, 0.0});
          reps.push_back({-rho, 0.0});
        } else {
          reps.push_back({rho, 0.0});
          reps.push_back({0.0, rho});
          reps.push_back({-rho, 0.0});
          reps.push_back({rho, rho});
        }
      }
      if (reps.empty()) continue;
      double sup_item = 0.0, space_item = 0.0;
      for (const auto& xi : reps) {
        SampledField sl = slice(alpha, xi.data());
        double rho2 = xi[0] * xi[0] + xi[1] * xi[1];
        double w1 = std::pow(1.0 + rho2, 0.5 * (-cls.m + aa));
        double w2 =
            std::pow(1.0 + rho2, 0.5 * (-cls.m + aa - cls.r * cls.delta));
        sup_item = std::max(sup_item, w1 * sl.max_abs());
        double xnorm = cls.space == SymbolClass::Space::zygmund
                           ? zygmund_norm(sl, cls.r, P)
                           : hr_infty_norm(sl, cls.r);
        space_item = std::max(space_item, w2 * xnorm);
      }
      rep.entries.push_back({alpha, j, sup_item, space_item});
      rep.verdict = std::max({rep.verdict, sup_item, space_item});
    }
  }
  return rep;
}

SymbolClassReport symbol_seminorm(const CoefficientSymbol& p,
                                  const SymbolClass& cls, int alpha_max,
                                  const DyadicPartition& P) {
  if (P.grid() != p.grid())
    throw std::invalid_argument("symbol_seminorm: partition grid mismatch");
  auto slice = [&p](const std::array<int, 2>& alpha, const double xi[2]) {
    return p.fiber_derivative_slice(alpha, xi);
  };
  return seminorm_scan(slice, p.grid(), cls, alpha_max, P);
}

}  // namespace microlab
