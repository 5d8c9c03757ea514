#pragma once

#include <string>
#include <vector>

#include "microlab/dyadic.hpp"
#include "microlab/grid.hpp"

namespace microlab {

enum class WfClass { regular, singular, indeterminate };

// One microlocal look: a smooth window of `width_cells` grid cells around
// `center`, restricted in frequency to the cone around `direction` (a
// half-line in 1D), examined across dyadic shells [j_min, j_max].
struct MicrolocalProbe {
  double center[2] = {0.0, 0.0};
  int width_cells = 8;               // full window support, >= 8 cells
  double direction[2] = {1.0, 0.0};  // 1D: direction[0] = +-1
  double aperture_deg = 20.0;        // cone half-angle, 2D only
  int j_min = 3;
  int j_max = 3;                     // <= top shell - 1
  double window_sharpness = 2.0;
  double margin = 0.1;               // classification slack in s
};

// Spectral L2 energy of the windowed field inside the cone, one value per
// shell j_min..j_max.
std::vector<double> microlocal_energies(const SampledField& u,
                                        const MicrolocalProbe& probe,
                                        const DyadicPartition& P);

struct ProbeVerdict {
  WfClass verdict = WfClass::indeterminate;
  double s_star = 0.0;      // apparent microlocal Sobolev order
  double sigma_star = 0.0;  // spectral decay exponent, s_star + dim/2
  int shells_used = 0;
  std::vector<int> shells;          // shell indices that entered the fit
  std::vector<double> log2_energy;  // matching log2 E_j values
};

// Least-squares decay fit of log2 E_j against j over the shells whose energy
// clears the noise floor 1e-13 * ||u||_{L2}.  Shell energies of a field
// whose local spectrum decays like <xi>^{-sigma} scale as 2^{j(dim/2 -
// sigma)}, so s* = -slope and sigma* = s* + dim/2.  Singular at order s iff
// s* < s - margin; fewer than 4 usable shells is indeterminate, never
// silently regular.
ProbeVerdict wf_classify(const SampledField& u, double s,
                         const MicrolocalProbe& probe,
                         const DyadicPartition& P);

struct ProbeLatticeSpec {
  int stride = 16;      // center spacing in cells; must be <= width/2
  int width_cells = 0;  // 0: n/32, at least 128, capped at max(n/4, 8)
  int j_min = 0;        // 0: max(3, j_max - 3)
  int j_max = 0;        // 0: top shell - 1
  double aperture_deg = 20.0;
  double window_sharpness = 2.0;
  double margin = 0.1;
};

struct WavefrontEntry {
  double x0[2];
  double omega[2];
  double s_star;
  double sigma_star;
  WfClass verdict;
  int shells_used;
};

struct WavefrontEstimate {
  double order_s = 0.0;
  double margin = 0.1;
  int stride = 0;
  int width_cells = 0;
  int j_min = 0;
  int j_max = 0;
  std::vector<WavefrontEntry> entries;

  std::size_t singular_count() const;
  std::size_t indeterminate_count() const;
};

// Classify every (center, direction) on the probe lattice: centers every
// `stride` cells, directions +-1 in 1D and 8 compass points in 2D.
WavefrontEstimate wf_scan(const SampledField& u, double s,
                          const ProbeLatticeSpec& spec,
                          const DyadicPartition& P);

// Arc clusters of singular probe centers for 1D scans, directions pooled.
// Two singular centers join the same cluster when they sit at most
// `gap_cells` apart along the circle.
struct SingularCluster {
  double centroid = 0.0;      // circle coordinate of the cluster center
  double extent_cells = 0.0;  // arc span covered, in cells
  int hits = 0;               // singular entries pooled in
};
std::vector<SingularCluster> singular_clusters(const WavefrontEstimate& est,
                                               const Grid& g, int gap_cells);

std::string wavefront_json(const WavefrontEstimate& est);
// s* heatmap over (center, direction); 1D scans only.
std::string wavefront_svg(const WavefrontEstimate& est, const Grid& g);

}  // namespace microlab
