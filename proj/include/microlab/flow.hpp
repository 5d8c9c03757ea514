#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "microlab/grid.hpp"
#include "microlab/symbols.hpp"

namespace microlab {

enum class FlowStatus { completed, zero_section, blow_up };

struct TrajectorySample {
  double t;
  PhasePoint pt;
  double symbol_value;  // p evaluated along the curve (conservation log)
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  FlowStatus status = FlowStatus::completed;
  int accepted_steps = 0;
  int rejected_steps = 0;

  double end_time() const { return samples.back().t; }
  // Linear interpolation between accepted steps.
  PhasePoint at(double t) const;
};

// A Hamiltonian flow field packaged with its conserved value.  dim is the
// spatial dimension (1 or 2); homogeneous_fiber enables the zero-section /
// fiber blow-up guards that only make sense for symbols homogeneous in xi
// (mechanical Hamiltonians turn them off).
struct HamiltonianSystem {
  int dim = 1;
  bool homogeneous_fiber = true;
  std::function<void(const PhasePoint&, double dxdt[2], double dxidt[2])>
      field;
  std::function<double(const PhasePoint&)> value;
};

HamiltonianSystem hamiltonian_system(const HomogeneousSymbol& ph);
// p = |xi|^2 / 2 - |x|^{1+alpha} / (1+alpha) on the line: the force
// |x|^alpha sign(x) is continuous but (for alpha < 1) not Lipschitz at the
// origin, the classic uniqueness-failure seed.
HamiltonianSystem mechanical_power_law(double alpha);
// Same family with the force smoothed to x (x^2 + eps^2)^{(alpha-1)/2}:
// Lipschitz for every eps > 0, so the flow is unique again.
HamiltonianSystem mechanical_power_law_mollified(double alpha, double eps);

struct IntegrateOptions {
  double abs_tol = 1e-8;     // per-step error bound, in [1e-12, 1e-4]
  double initial_step = 1e-3;
  double min_step = 1e-6;
  double max_step = 1e-1;
};

// Adaptive embedded Runge-Kutta 4(5) integration of dgamma/dt = H_p(gamma)
// from t = 0 to t_end (t_end may be negative).  Samples are recorded at
// every accepted step.  For homogeneous systems the run stops early with a
// flagged status when |xi| leaves [1e-6, 1e6] x |xi(0)|.
Trajectory integrate(const HamiltonianSystem& sys, const PhasePoint& start,
                     double t_end, const IntegrateOptions& opt = {});
Trajectory integrate(const HomogeneousSymbol& ph, const PhasePoint& start,
                     double t_end, const IntegrateOptions& opt = {});

// ---- non-uniqueness funnels --------------------------------------------------

struct FunnelSpec {
  int ensemble = 64;           // >= 16 jittered members
  double jitter = 1e-6;        // radius of the fiber jitter ball
  int mollification_levels = 0;
  double t_end = 1.0;
  double abs_tol = 1e-8;
  std::uint64_t seed = 1;
  int time_samples = 64;
};

struct Funnel {
  std::vector<double> times;
  // Max pairwise distance in x of the ensemble at each time.
  std::vector<double> width;
  // Max |x(t) - x_start| over members: the one-sided escape envelope.
  std::vector<double> envelope;
  double growth_exponent = 0.0;  // log-log slope of width over the tail
  int members = 0;
  double jitter = 0.0;
};

// Integrate an ensemble from starts whose fibers are jittered inside a ball
// of the given radius (base points untouched, so width(0) = 0 <= 2 * jitter)
// plus, per mollification level, one member flowing the smoothed system from
// the exact start.  family(0) is the base system; family(l) for l >= 1 its
// l-th smoothing.
Funnel funnel(const std::function<HamiltonianSystem(int level)>& family,
              const PhasePoint& start, const FunnelSpec& spec);
// The power-law family above, started at the origin of phase space, with
// mollification scales eps_l = 2^{-l}.
Funnel funnel_mechanical(double alpha, const FunnelSpec& spec);

// Closed-form escape envelope of x'' = |x|^alpha sign x from rest at the
// origin: x(t) = K t^{2/(1-alpha)} with K = (beta (beta-1))^{-1/(1-alpha)},
// beta = 2/(1-alpha).
double power_law_envelope(double alpha, double t);

// ---- projected null rays of the wave symbol -----------------------------------

// Integrate dx/dt = sign * sqrt(a(x)) with a evaluated by trigonometric
// interpolation; the (t, x) projection of the null bicharacteristics of
// tau^2 - a(x) xi^2.  Rejects coefficients that are not strictly positive.
std::vector<std::pair<double, double>> ray_trace_wave(const SampledField& a,
                                                      double x0, int sign,
                                                      double t_end,
                                                      double abs_tol = 1e-8);

// ---- report rendering ----------------------------------------------------------

std::string trajectory_csv(const Trajectory& traj, int dim);
std::string funnel_json(const Funnel& f, double alpha, bool has_alpha);

}  // namespace microlab
