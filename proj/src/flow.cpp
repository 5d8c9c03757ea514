#include "microlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "microlab/rng.hpp"
#include "microlab/trig.hpp"

namespace microlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600,
                 kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640,
                 kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

using Deriv = std::function<void(double t, const double* y, double* dy)>;

// One adaptive RK45 run over [0, t_end] (t_end of either sign) on an
// n-dimensional state.  on_accept(t, y) is called after the initial state
// and every accepted step; returning false stops the integration.
void rk45(int n, const Deriv& f, double* y, double t_end,
          const IntegrateOptions& opt, int& accepted, int& rejected,
          const std::function<bool(double, const double*)>& on_accept) {
  if (opt.abs_tol < 1e-12 || opt.abs_tol > 1e-4)
    throw std::invalid_argument("integrate: abs_tol in [1e-12, 1e-4]");
  double dir = t_end >= 0.0 ? 1.0 : -1.0;
  double span = std::fabs(t_end);
  double t = 0.0;
  double h = std::min(opt.initial_step, span);
  double k1[4], k2[4], k3[4], k4[4], k5[4], k6[4], k7[4], ytmp[4], y5[4];
  if (!on_accept(0.0, y)) return;
  f(0.0, y, k1);
  while (t < span) {
    h = std::min(h, span - t);
    double ts = dir * t;
    auto stage = [&](double frac, const double* coeff, int stages,
                     double* out) {
      const double* ks[6] = {k1, k2, k3, k4, k5, k6};
      for (int i = 0; i < n; ++i) {
        double acc = y[i];
        for (int s = 0; s < stages; ++s) acc += dir * h * coeff[s] * ks[s][i];
        ytmp[i] = acc;
      }
      f(ts + dir * frac * h, ytmp, out);
    };
    const double c2[] = {kA21};
    const double c3[] = {kA31, kA32};
    const double c4[] = {kA41, kA42, kA43};
    const double c5[] = {kA51, kA52, kA53, kA54};
    const double c6[] = {kA61, kA62, kA63, kA64, kA65};
    stage(1.0 / 5, c2, 1, k2);
    stage(3.0 / 10, c3, 2, k3);
    stage(4.0 / 5, c4, 3, k4);
    stage(8.0 / 9, c5, 4, k5);
    stage(1.0, c6, 5, k6);
    for (int i = 0; i < n; ++i)
      y5[i] = y[i] + dir * h *
                         (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] +
                          kB5 * k5[i] + kB6 * k6[i]);
    f(ts + dir * h, y5, k7);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double e = dir * h *
                 (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                  kE6 * k6[i] + kE7 * k7[i]);
      err = std::max(err, std::fabs(e));
    }
    bool accept = err <= opt.abs_tol || h <= opt.min_step * (1.0 + 1e-12);
    double factor =
        err > 0.0 ? 0.9 * std::pow(opt.abs_tol / err, 0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    if (accept) {
      ++accepted;
      t += h;
      for (int i = 0; i < n; ++i) {
        y[i] = y5[i];
        k1[i] = k7[i];  // FSAL
      }
      if (!on_accept(dir * t, y)) return;
    } else {
      ++rejected;
    }
    h = std::clamp(h * factor, opt.min_step, opt.max_step);
  }
}

}  // namespace

PhasePoint Trajectory::at(double t) const {
  if (samples.empty()) throw std::runtime_error("Trajectory::at: empty");
  double t0 = samples.front().t, t1 = samples.back().t;
  bool fwd = t1 >= t0;
  if ((fwd && t <= t0) || (!fwd && t >= t0)) return samples.front().pt;
  if ((fwd && t >= t1) || (!fwd && t <= t1)) return samples.back().pt;
  std::size_t lo = 0, hi = samples.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if ((samples[mid].t <= t) == fwd)
      lo = mid;
    else
      hi = mid;
  }
  const auto& a = samples[lo];
  const auto& b = samples[hi];
  double u = (t - a.t) / (b.t - a.t);
  PhasePoint out;
  for (int i = 0; i < 2; ++i) {
    out.x[i] = a.pt.x[i] + u * (b.pt.x[i] - a.pt.x[i]);
    out.xi[i] = a.pt.xi[i] + u * (b.pt.xi[i] - a.pt.xi[i]);
  }
  return out;
}

HamiltonianSystem hamiltonian_system(const HomogeneousSymbol& ph) {
  HamiltonianSystem sys;
  sys.dim = ph.grid().dim;
  sys.homogeneous_fiber = true;
  sys.field = [ph](const PhasePoint& pt, double dxdt[2], double dxidt[2]) {
    ph.hamilton(pt.x.data(), pt.xi.data(), dxdt, dxidt);
  };
  sys.value = [ph](const PhasePoint& pt) {
    return ph.eval(pt.x.data(), pt.xi.data());
  };
  return sys;
}

HamiltonianSystem mechanical_power_law(double alpha) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("mechanical_power_law: alpha in (0,1]");
  HamiltonianSystem sys;
  sys.dim = 1;
  sys.homogeneous_fiber = false;
  sys.field = [alpha](const PhasePoint& pt, double dxdt[2], double dxidt[2]) {
    dxdt[0] = pt.xi[0];
    dxdt[1] = 0.0;
    double x = pt.x[0];
    dxidt[0] = (x >= 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(x), alpha);
    dxidt[1] = 0.0;
  };
  sys.value = [alpha](const PhasePoint& pt) {
    return 0.5 * pt.xi[0] * pt.xi[0] -
           std::pow(std::fabs(pt.x[0]), 1.0 + alpha) / (1.0 + alpha);
  };
  return sys;
}

HamiltonianSystem mechanical_power_law_mollified(double alpha, double eps) {
  if (eps <= 0.0)
    throw std::invalid_argument("mechanical_power_law_mollified: eps > 0");
  HamiltonianSystem sys;
  sys.dim = 1;
  sys.homogeneous_fiber = false;
  sys.field = [alpha, eps](const PhasePoint& pt, double dxdt[2],
                           double dxidt[2]) {
    dxdt[0] = pt.xi[0];
    dxdt[1] = 0.0;
    double x = pt.x[0];
    dxidt[0] = x * std::pow(x * x + eps * eps, 0.5 * (alpha - 1.0));
    dxidt[1] = 0.0;
  };
  sys.value = [alpha, eps](const PhasePoint& pt) {
    double x = pt.x[0];
    double pot = (std::pow(x * x + eps * eps, 0.5 * (alpha + 1.0)) -
                  std::pow(eps * eps, 0.5 * (alpha + 1.0))) /
                 (1.0 + alpha);
    return 0.5 * pt.xi[0] * pt.xi[0] - pot;
  };
  return sys;
}

Trajectory integrate(const HamiltonianSystem& sys, const PhasePoint& start,
                     double t_end, const IntegrateOptions& opt) {
  int n = 2 * sys.dim;
  double rho0 = std::hypot(start.xi[0], start.xi[1]);
  if (sys.homogeneous_fiber && rho0 == 0.0)
    throw std::invalid_argument("integrate: start on the zero section");

  auto unpack = [&](const double* y) {
    PhasePoint pt;
    pt.x[0] = y[0];
    pt.xi[0] = y[sys.dim];
    if (sys.dim == 2) {
      pt.x[1] = y[1];
      pt.xi[1] = y[3];
    }
    return pt;
  };
  Deriv f = [&](double, const double* y, double* dy) {
    PhasePoint pt = unpack(y);
    double dxdt[2], dxidt[2];
    sys.field(pt, dxdt, dxidt);
    dy[0] = dxdt[0];
    dy[sys.dim] = dxidt[0];
    if (sys.dim == 2) {
      dy[1] = dxdt[1];
      dy[3] = dxidt[1];
    }
  };

  Trajectory traj;
  auto on_accept = [&](double t, const double* y) {
    PhasePoint pt = unpack(y);
    traj.samples.push_back({t, pt, sys.value ? sys.value(pt) : 0.0});
    if (sys.homogeneous_fiber) {
      double rho = std::hypot(pt.xi[0], pt.xi[1]);
      if (rho < 1e-6 * rho0) {
        traj.status = FlowStatus::zero_section;
        return false;
      }
      if (rho > 1e6 * rho0) {
        traj.status = FlowStatus::blow_up;
        return false;
      }
    }
    return true;
  };

  double y[4] = {start.x[0], 0.0, 0.0, 0.0};
  y[sys.dim] = start.xi[0];
  if (sys.dim == 2) {
    y[1] = start.x[1];
    y[3] = start.xi[1];
  }
  rk45(n, f, y, t_end, opt, traj.accepted_steps, traj.rejected_steps,
       on_accept);
  return traj;
}

Trajectory integrate(const HomogeneousSymbol& ph, const PhasePoint& start,
                     double t_end, const IntegrateOptions& opt) {
  return integrate(hamiltonian_system(ph), start, t_end, opt);
}

// ---- funnels -----------------------------------------------------------------

double power_law_envelope(double alpha, double t) {
  double beta = 2.0 / (1.0 - alpha);
  double K = std::pow(beta * (beta - 1.0), -1.0 / (1.0 - alpha));
  return K * std::pow(t, beta);
}

Funnel funnel(const std::function<HamiltonianSystem(int)>& family,
              const PhasePoint& start, const FunnelSpec& spec) {
  if (spec.ensemble < 16)
    throw std::invalid_argument("funnel: ensemble >= 16");
  if (spec.jitter <= 0.0) throw std::invalid_argument("funnel: jitter > 0");

  HamiltonianSystem base = family(0);
  int dim = base.dim;
  Rng rng(spec.seed);
  IntegrateOptions opt;
  opt.abs_tol = spec.abs_tol;

  std::vector<Trajectory> members;
  for (int e = 0; e < spec.ensemble; ++e) {
    // Uniform point of the fiber ball of radius jitter (rejection
    // sampling); base points stay put, so width(0) = 0.
    double v[2];
    double norm2;
    do {
      norm2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        v[i] = rng.uniform(-1.0, 1.0);
        norm2 += v[i] * v[i];
      }
    } while (norm2 > 1.0);
    PhasePoint s = start;
    for (int i = 0; i < dim; ++i) s.xi[i] += spec.jitter * v[i];
    members.push_back(integrate(base, s, spec.t_end, opt));
  }
  for (int l = 1; l <= spec.mollification_levels; ++l)
    members.push_back(integrate(family(l), start, spec.t_end, opt));

  Funnel out;
  out.members = int(members.size());
  out.jitter = spec.jitter;
  for (int i = 0; i <= spec.time_samples; ++i) {
    double t = spec.t_end * double(i) / double(spec.time_samples);
    out.times.push_back(t);
    std::vector<PhasePoint> pts;
    for (const auto& m : members) pts.push_back(m.at(t));
    double w = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        double d2 = 0.0;
        for (int c = 0; c < dim; ++c) {
          double dx = pts[a].x[c] - pts[b].x[c];
          d2 += dx * dx;
        }
        w = std::max(w, std::sqrt(d2));
      }
    out.width.push_back(w);
    double env = 0.0;
    for (const auto& p : pts) {
      double d2 = 0.0;
      for (int c = 0; c < dim; ++c) {
        double dx = p.x[c] - start.x[c];
        d2 += dx * dx;
      }
      env = std::max(env, std::sqrt(d2));
    }
    out.envelope.push_back(env);
  }

  // Log-log growth fit over the second half of the run.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = out.times.size() / 2; i < out.times.size(); ++i) {
    if (out.width[i] <= 0.0 || out.times[i] <= 0.0) continue;
    double lx = std::log(out.times[i]), ly = std::log(out.width[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt >= 2 && sxx * cnt - sx * sx > 0.0)
    out.growth_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return out;
}

Funnel funnel_mechanical(double alpha, const FunnelSpec& spec) {
  auto family = [alpha](int level) {
    if (level == 0) return mechanical_power_law(alpha);
    return mechanical_power_law_mollified(alpha, std::exp2(-level));
  };
  return funnel(family, PhasePoint{}, spec);
}

// ---- wave rays ---------------------------------------------------------------

std::vector<std::pair<double, double>> ray_trace_wave(const SampledField& a,
                                                      double x0, int sign,
                                                      double t_end,
                                                      double abs_tol) {
  if (a.grid().dim != 1)
    throw std::invalid_argument("ray_trace_wave: 1D coefficient expected");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("ray_trace_wave: sign is +-1");
  for (const auto& v : a.values())
    if (v.real() <= 0.0)
      throw std::invalid_argument("ray_trace_wave: coefficient must be > 0");
  TrigInterpolant interp(a);
  // Hyperbolicity between samples too: the band-limited extension must not
  // cross zero.
  int n = a.grid().n;
  for (int i = 0; i < 4 * n; ++i) {
    double x[2] = {kTwoPi * double(i) / double(4 * n), 0.0};
    if (interp.eval_real(x) <= 0.0)
      throw std::invalid_argument(
          "ray_trace_wave: interpolated coefficient dips below zero");
  }

  IntegrateOptions opt;
  opt.abs_tol = abs_tol;
  opt.max_step = 1e-2;
  Deriv f = [&](double, const double* y, double* dy) {
    double x[2] = {y[0], 0.0};
    dy[0] = double(sign) * std::sqrt(std::max(interp.eval_real(x), 0.0));
  };
  std::vector<std::pair<double, double>> out;
  auto on_accept = [&](double t, const double* y) {
    out.emplace_back(t, y[0]);
    return true;
  };
  double y[1] = {x0};
  int acc = 0, rej = 0;
  rk45(1, f, y, t_end, opt, acc, rej, on_accept);
  return out;
}

// ---- rendering ------------------------------------------------------------------

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace

std::string trajectory_csv(const Trajectory& traj, int dim) {
  std::string out =
      dim == 1 ? "t,x,xi,p_hat_value\n" : "t,x0,x1,xi0,xi1,p_hat_value\n";
  for (const auto& s : traj.samples) {
    out += fmt(s.t);
    for (int c = 0; c < dim; ++c) out += "," + fmt(s.pt.x[c]);
    for (int c = 0; c < dim; ++c) out += "," + fmt(s.pt.xi[c]);
    out += "," + fmt(s.symbol_value) + "\n";
  }
  return out;
}

std::string funnel_json(const Funnel& f, double alpha, bool has_alpha) {
  std::string out = "{\n";
  if (has_alpha) out += "  \"alpha\": " + fmt(alpha) + ",\n";
  out += "  \"members\": " + std::to_string(f.members) + ",\n";
  out += "  \"jitter\": " + fmt(f.jitter) + ",\n";
  out += "  \"growth_exponent\": " + fmt(f.growth_exponent) + ",\n";
  auto arr = [&](const char* name, const std::vector<double>& v) {
    out += std::string("  \"") + name + "\": [";
    for (std::size_t i = 0; i < v.size(); ++i)
      out += (i ? ", " : "") + fmt(v[i]);
    out += "]";
  };
  arr("times", f.times);
  out += ",\n";
  arr("width", f.width);
  out += ",\n";
  arr("envelope", f.envelope);
  out += "\n}\n";
  return out;
}

}  // namespace microlab
