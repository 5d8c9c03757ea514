#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "microlab/dyadic.hpp"
#include "microlab/grid.hpp"
#include "microlab/spaces.hpp"
#include "microlab/wavefront.hpp"

namespace microlab {

// Initial data for the 1D divergence-form wave equation
// u_tt = (a(x) u_x)_x on the circle, with u_t(0) = 0.
struct WaveInitSpec {
  enum class Kind { step, cusp, smooth };
  Kind kind = Kind::step;
  double gamma = 0.5;  // cusp exponent: |2 sin((x - x0)/2)|^gamma
  double x0 = 3.141592653589793;
};

// Coefficient a(x) = a_min + amplitude * synth(x)^2 where synth carries the
// prescribed roughness; amplitude 0 gives the constant-coefficient medium.
struct WaveCoeffSpec {
  SynthKind kind = SynthKind::lacunary;
  double r = 1.5;
  std::uint64_t seed = 1;
  double a_min = 1.0;
  double amplitude = 0.5;
};

struct WaveScenario {
  int n = 1024;
  WaveCoeffSpec coeff;
  WaveInitSpec init;
  double T = 0.5;
  double dt = 0.0;              // 0: cfl_fraction * spacing / sqrt(max a)
  double cfl_fraction = 0.0625; // kept well under the stability bound 0.5:
                                // the leapfrog phase lead of near-Nyquist
                                // modes scales like (pi * cfl)^2 / 2 and has
                                // to stay inside the probe's cell budget
                                // even after grid doubling
  int snapshots = 8;           // records at t = k T / snapshots, k = 0..snapshots
  ProbeLatticeSpec probe{/*stride=*/2};
  double query_s = 0.4;
  // Pinned experiment verdict thresholds, in grid cells.
  double mismatch_tol_cells = 3.0;
  double confinement_tol_cells = 10.0;
};

// Config round-trip for the CLI / report echo.  Accepts the schema
// {grid:{n}, coeff:{kind,r,seed,a_min,amplitude}, init:{type,gamma?,x0},
//  time:{T,dt?}, probe:{h,stride,jmin,jmax,margin}, query:{s}, snapshots:k};
// every group is optional and falls back to the defaults above.
WaveScenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const WaveScenario& sc);

struct WaveInputs {
  Grid g;
  SampledField a;
  SampledField u0;
  SampledField v0;
  double dt = 0.0;   // actual step; divides the snapshot interval
  int steps = 0;     // steps to reach T
  double tau = 0.0;  // a-priori bookkeeping: query_s - r
};

WaveInputs build_inputs(const WaveScenario& sc);

struct WaveSnapshot {
  double t;
  SampledField u;
  SampledField ut;  // centered difference, second order at the snapshot
  double energy;    // 0.5 * quadrature(ut^2 + a ux^2)
};

// Leapfrog u^{n+1} = 2u^n - u^{n-1} + dt^2 (a u_x)_x with spectral space
// derivatives.  Throws on CFL violation (dt > 0.5 spacing / sqrt(max a))
// and on non-finite values (with the failing step in the message).
std::vector<WaveSnapshot> wave_solve(const WaveInputs& in, int snapshots);
std::vector<WaveSnapshot> wave_solve(const WaveScenario& sc);

struct ClusterRecord {
  double t = 0.0;
  double centroid = 0.0;        // torus coordinate
  double extent_cells = 0.0;
  int hits = 0;
  bool resolved = true;         // extent <= window + 8 * stride cells
  double mismatch_cells = 0.0;  // centroid to nearest ray
};

struct SnapshotRecord {
  double t = 0.0;
  double energy = 0.0;
  double ray_plus = 0.0;   // wrapped ray positions at this time
  double ray_minus = 0.0;
  int entries = 0;
  int singular = 0;
  int indeterminate = 0;
  std::vector<double> singular_centers;  // torus coordinates, pooled
  std::vector<ClusterRecord> clusters;
};

struct PropagationReport {
  std::string schema = "microlab/propagation-report/v1";
  WaveScenario scenario;       // configuration echo
  double dt = 0.0;
  int steps = 0;
  double tau = 0.0;            // query_s - r; a-priori order of u is tau + 2
  double wf_order = 0.0;       // order the scans ran at (query_s + 1)
  std::vector<SnapshotRecord> snapshots;
  double max_mismatch_cells = 0.0;  // over resolved clusters
  int unresolved_clusters = 0;
  int confinement_violations = 0;
  double max_energy_drift = 0.0;
  double indeterminate_rate = 0.0;
  bool mismatch_pass = false;
  bool confinement_pass = false;

  bool passed() const { return mismatch_pass && confinement_pass; }
};

// Solve, scan every snapshot, trace both null rays from x0, and compare:
// mismatch = max distance from each resolved singular-cluster centroid to
// the nearest ray; confinement counts singular probes whose window edge
// sits farther than the threshold from every ray.  Throws when more than
// 20% of the probes come back indeterminate.
PropagationReport experiment_propagation(const WaveScenario& sc);
// Same, with externally built inputs (custom coefficient or data).
PropagationReport experiment_propagation(const WaveScenario& sc,
                                         const WaveInputs& in);

std::string report_json(const PropagationReport& rep);
std::string report_csv(const PropagationReport& rep);
std::string report_svg(const PropagationReport& rep);

// Writes report.json, timeseries.csv, spacetime.svg (all byte-deterministic
// for a fixed scenario) plus run_meta.json carrying the wall-clock runtime,
// which is deliberately kept out of the deterministic trio.
void emit_report(const PropagationReport& rep, const std::string& out_dir,
                 double runtime_seconds);

}  // namespace microlab
