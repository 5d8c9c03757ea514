#include <cmath>
#include <complex>

#include "doctest.h"
#include "microlab/flow.hpp"
#include "microlab/symbols.hpp"

using namespace microlab;

namespace {

SampledField const_field(const Grid& g, double c) {
  return SampledField::from_real(g, std::vector<double>(g.size(), c));
}

// tau^2 - a(t, x) xi^2 with a = base + sin(x) on a 2D grid.
HomogeneousSymbol wave_hat(int n, double base) {
  Grid g = Grid::make(2, n);
  std::vector<double> av(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    av[i] = -(base + std::sin(double(i % g.n) * g.spacing()));
  CoefficientSymbol p({{{2, 0}, const_field(g, 1.0), false},
                       {{0, 2}, SampledField::from_real(g, av), false}});
  return principal_symbol(p);
}

// |xi|^2 in one dimension, coefficient-backed so evaluation is exact.
HomogeneousSymbol free_hat_1d() {
  Grid g = Grid::make(1, 32);
  CoefficientSymbol p({{{2, 0}, const_field(g, 1.0), false}});
  return principal_symbol(p);
}

}  // namespace

TEST_SUITE("bicharacteristics") {

TEST_CASE("free flow is exact straight-line drift") {
  HomogeneousSymbol ph = free_hat_1d();
  PhasePoint start;
  start.x = {1.0, 0.0};
  start.xi = {0.75, 0.0};
  Trajectory traj = integrate(ph, start, 1.0);
  CHECK(traj.status == FlowStatus::completed);
  PhasePoint end = traj.at(1.0);
  CHECK(std::abs(end.x[0] - (1.0 + 2.0 * 0.75)) <= 1e-8);
  CHECK(std::abs(end.xi[0] - 0.75) <= 1e-10);
}

TEST_CASE("null rays of the constant-speed wave move at unit speed") {
  HomogeneousSymbol ph = wave_hat(64, 2.0 - 0.0);  // keep variable medium out
  // Start on the null set of tau^2 - 2 xi^2 ... use the constant medium.
  Grid g = Grid::make(2, 32);
  CoefficientSymbol p({{{2, 0}, const_field(g, 1.0), false},
                       {{0, 2}, const_field(g, -1.0), false}});
  HomogeneousSymbol unit = principal_symbol(p);
  PhasePoint start;
  start.x = {0.0, 2.0};
  start.xi = {1.0, 1.0};  // tau = xi: null
  Trajectory traj = integrate(unit, start, 0.5);
  PhasePoint end = traj.at(0.5);
  // dx/dt = -2 xi, dt/dt slot moves at 2 tau; the x displacement per unit
  // of the curve parameter has magnitude 2, same as the time slot: the
  // projected ray speed |dx/dtime| is 1.
  double dtphys = end.x[0] - start.x[0];
  double dxphys = end.x[1] - start.x[1];
  CHECK(std::abs(std::abs(dxphys / dtphys) - 1.0) <= 1e-9);
}

TEST_CASE("the symbol is conserved along variable-medium flows") {
  HomogeneousSymbol ph = wave_hat(256, 2.0);
  PhasePoint start;
  start.x = {0.0, 1.3};
  double a = 2.0 + std::sin(1.3);
  start.xi = {std::sqrt(a), 1.0};  // null start
  Trajectory traj = integrate(ph, start, 1.0);
  CHECK(traj.status == FlowStatus::completed);
  double drift = 0.0;
  for (const auto& s : traj.samples)
    drift = std::max(drift, std::abs(s.symbol_value - traj.samples[0].symbol_value));
  CHECK(drift <= 1e-6);
}

TEST_CASE("integration runs backwards and returns to the start") {
  HomogeneousSymbol ph = wave_hat(256, 2.0);
  PhasePoint start;
  start.x = {0.0, 2.2};
  start.xi = {1.4, 1.0};
  IntegrateOptions opt;
  opt.abs_tol = 1e-8;
  Trajectory fwd = integrate(ph, start, 0.8, opt);
  PhasePoint mid = fwd.at(0.8);
  PhasePoint back_start = mid;
  Trajectory bwd = integrate(ph, back_start, -0.8, opt);
  PhasePoint home = bwd.at(-0.8);
  double err = std::hypot(home.x[0] - start.x[0], home.x[1] - start.x[1]) +
               std::hypot(home.xi[0] - start.xi[0], home.xi[1] - start.xi[1]);
  CHECK(err <= 1e-7);
}

TEST_CASE("degree-2 flows rescale with the fiber") {
  HomogeneousSymbol ph = wave_hat(128, 2.0);
  PhasePoint start;
  start.x = {0.0, 0.9};
  start.xi = {1.2, 0.8};
  double lam = 3.0;
  PhasePoint scaled = start;
  scaled.xi = {lam * 1.2, lam * 0.8};
  Trajectory base = integrate(ph, start, 0.6);
  Trajectory fast = integrate(ph, scaled, 0.6 / lam);
  PhasePoint b = base.at(0.6), f = fast.at(0.6 / lam);
  CHECK(std::abs(b.x[0] - f.x[0]) <= 1e-6);
  CHECK(std::abs(b.x[1] - f.x[1]) <= 1e-6);
  CHECK(std::abs(lam * b.xi[0] - f.xi[0]) <= 1e-5);
  CHECK(std::abs(lam * b.xi[1] - f.xi[1]) <= 1e-5);
}

TEST_CASE("starts on the zero section are rejected") {
  HomogeneousSymbol ph = free_hat_1d();
  PhasePoint bad;
  bad.x = {1.0, 0.0};
  bad.xi = {0.0, 0.0};
  CHECK_THROWS(integrate(ph, bad, 1.0));
}

TEST_CASE("tolerances outside the supported band are rejected") {
  HomogeneousSymbol ph = free_hat_1d();
  PhasePoint start;
  start.xi = {1.0, 0.0};
  IntegrateOptions opt;
  opt.abs_tol = 1e-15;
  CHECK_THROWS(integrate(ph, start, 1.0, opt));
  opt.abs_tol = 1e-3;
  CHECK_THROWS(integrate(ph, start, 1.0, opt));
}

TEST_CASE("lipschitz hamiltonians keep the funnel thin") {
  // Free particle: trajectories with jittered momenta separate linearly,
  // width(t) <= 2 jitter * 2 t, comfortably below 3 jitter (1 + 2t).
  auto family = [](int) {
    HamiltonianSystem sys;
    sys.dim = 1;
    sys.homogeneous_fiber = false;
    sys.field = [](const PhasePoint& p, double dxdt[2], double dxidt[2]) {
      dxdt[0] = 2.0 * p.xi[0];
      dxdt[1] = 0.0;
      dxidt[0] = 0.0;
      dxidt[1] = 0.0;
    };
    sys.value = [](const PhasePoint& p) { return p.xi[0] * p.xi[0]; };
    return sys;
  };
  PhasePoint start;
  start.x = {0.0, 0.0};
  start.xi = {1.0, 0.0};
  FunnelSpec spec;
  spec.ensemble = 24;
  spec.jitter = 1e-6;
  spec.t_end = 2.0;
  Funnel f = funnel(family, start, spec);
  CHECK(f.width.front() <= 2.0 * spec.jitter);
  for (std::size_t i = 0; i < f.times.size(); ++i)
    CHECK(f.width[i] <= 3.0 * spec.jitter * (1.0 + 2.0 * f.times[i]));
}

TEST_CASE("closed-form escape envelope of the power-law force") {
  // x'' = |x|^(1/2) sign x from rest: x(t) = t^4 / 144.
  CHECK(power_law_envelope(0.5, 1.0) == doctest::Approx(1.0 / 144.0));
  CHECK(power_law_envelope(0.5, 2.0) == doctest::Approx(16.0 / 144.0));
  CHECK(power_law_envelope(0.5, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("the non-lipschitz mechanical family opens a funnel") {
  FunnelSpec spec;
  spec.ensemble = 32;
  spec.jitter = 1e-6;
  spec.t_end = 1.5;
  spec.seed = 2;
  Funnel f = funnel_mechanical(0.5, spec);
  CHECK(f.width.back() >= 0.01);  // escapes far beyond the jitter scale
  // The escape envelope tracks the closed-form power solution at the tail.
  double t = f.times.back();
  CHECK(std::abs(f.envelope.back() - power_law_envelope(0.5, t)) <=
        0.15 * power_law_envelope(0.5, t));
}

TEST_CASE("the lipschitz member of the family stays put") {
  FunnelSpec spec;
  spec.ensemble = 32;
  spec.jitter = 1e-6;
  spec.t_end = 1.5;
  spec.seed = 2;
  Funnel f = funnel_mechanical(1.0, spec);
  CHECK(f.width.back() <= 1e-4);
}

TEST_CASE("ray tracing constant media gives straight rays") {
  Grid g = Grid::make(1, 128);
  auto up = ray_trace_wave(const_field(g, 1.0), 3.0, +1, 1.0);
  CHECK(std::abs(up.back().second - 4.0) <= 1e-8);
  auto down = ray_trace_wave(const_field(g, 4.0), 3.0, -1, 1.0);
  CHECK(std::abs(down.back().second - 1.0) <= 1e-8);
}

TEST_CASE("ray tracing matches the full phase-space flow") {
  // dx/dt = sqrt(a(x)) against the x-projection of the null bicharacteristic
  // of tau^2 - a(x) xi^2 through the same point.
  int n = 256;
  Grid g1 = Grid::make(1, n);
  std::vector<double> av(g1.size());
  for (std::size_t i = 0; i < g1.size(); ++i)
    av[i] = 2.0 + std::sin(i * g1.spacing());
  SampledField a1 = SampledField::from_real(g1, av);
  double x0 = 1.0;
  auto ray = ray_trace_wave(a1, x0, +1, 1.0, 1e-10);

  HomogeneousSymbol ph = wave_hat(n, 2.0);
  PhasePoint start;
  start.x = {0.0, x0};
  double a0 = 2.0 + std::sin(x0);
  // Null start with positive tau so the time slot advances with the curve
  // parameter; xi = -1 orients the spatial drift to +sqrt(a).
  start.xi = {std::sqrt(a0), -1.0};
  IntegrateOptions opt;
  opt.abs_tol = 1e-10;
  Trajectory traj = integrate(ph, start, 1.0, opt);

  // Independent oracle: fine fixed-step RK4 for dx/dt = sqrt(2 + sin x),
  // dense enough that its own error is negligible.  Both the projected ray
  // and the full flow are compared at their accepted sample points (linear
  // interpolation between samples would dominate the budget otherwise).
  auto oracle = [&](double t_target) {
    double x = x0, t = 0.0;
    const double dt = 1e-4;
    auto v = [](double y) { return std::sqrt(2.0 + std::sin(y)); };
    while (t + dt <= t_target) {
      double k1 = v(x), k2 = v(x + 0.5 * dt * k1), k3 = v(x + 0.5 * dt * k2),
             k4 = v(x + dt * k3);
      x += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      t += dt;
    }
    double rem = t_target - t;
    double k1 = v(x), k2 = v(x + 0.5 * rem * k1), k3 = v(x + 0.5 * rem * k2),
           k4 = v(x + rem * k3);
    return x + rem * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  };
  double worst_ray = 0.0;
  for (const auto& [t, x] : ray)
    worst_ray = std::max(worst_ray, std::abs(x - oracle(t)));
  CHECK(worst_ray <= 1e-6);
  double worst_flow = 0.0;
  for (const auto& s : traj.samples) {
    double t = s.pt.x[0];  // physical time lives in the time slot
    if (t > 1.0) break;
    worst_flow = std::max(worst_flow, std::abs(s.pt.x[1] - oracle(t)));
  }
  CHECK(worst_flow <= 1e-6);
}

TEST_CASE("ray tracing rejects non-positive media") {
  Grid g = Grid::make(1, 64);
  std::vector<double> v(g.size(), 1.0);
  v[10] = -0.5;
  CHECK_THROWS(ray_trace_wave(SampledField::from_real(g, v), 0.0, +1, 1.0));
}

TEST_CASE("trajectory csv has one row per accepted sample") {
  HomogeneousSymbol ph = free_hat_1d();
  PhasePoint start;
  start.x = {0.5, 0.0};
  start.xi = {1.0, 0.0};
  Trajectory traj = integrate(ph, start, 0.3);
  std::string csv = trajectory_csv(traj, 1);
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == traj.samples.size() + 1);  // header plus samples
  CHECK(csv.find("p_hat_value") != std::string::npos);
}

TEST_CASE("funnel json carries the ensemble metadata") {
  FunnelSpec spec;
  spec.ensemble = 16;
  spec.jitter = 1e-6;
  spec.t_end = 0.5;
  Funnel f = funnel_mechanical(0.5, spec);
  std::string js = funnel_json(f, 0.5, true);
  CHECK(js.find("\"alpha\"") != std::string::npos);
  CHECK(js.find("\"width\"") != std::string::npos);
  CHECK(js.find("\"envelope\"") != std::string::npos);
}

}  // TEST_SUITE
