#pragma once

#include <cstdint>

#include "microlab/dyadic.hpp"
#include "microlab/grid.hpp"

namespace microlab {

// Zygmund-class norm sup_j 2^{jr} ||psi_j(D) f||_inf over the partition's
// shells.  r in (0, 4].
double zygmund_norm(const SampledField& f, double r, const DyadicPartition& P);

// Sobolev norm ||<D>^s f||_{L^2} with the grid quadrature L2; computed
// spectrally (identical by Parseval).
double sobolev_norm(const SampledField& f, double s);

// Discrete bmo-type norm: |low-frequency part| + max over dyadic cubes of
// the mean absolute deviation from the cube mean of the high-frequency
// part.  On the integer lattice the smooth cutoff psi_0 keeps only xi = 0,
// so the low/high split is exactly mean / mean-free part.
double bmo_norm(const SampledField& f);

// Sobolev-bmo norm of <D>^r f; the hypothesis space for the endpoint
// mapping bound of the flat remainder.
double hr_infty_norm(const SampledField& f, double r);

enum class SynthKind { lacunary, piecewise_polynomial, mollified_noise };

struct RegularityBudget {
  double r = 1.0;       // target Hölder/Zygmund order, in (0, 4]
  double scale = 1.0;   // target norm magnitude
  std::uint64_t seed = 1;
  SynthKind kind = SynthKind::lacunary;
};

// Deterministic rough-field synthesis.
//  - lacunary: scale * sum_{j=1}^{J-1} 2^{-jr} cos(2^j w_j . x + phi_j), one
//    mode per shell, phases snapped to the mode's sample-phase lattice so
//    every shell maximum equals scale * 2^{-jr} exactly and the Zygmund
//    r-norm reads off as `scale`.
//  - piecewise_polynomial: periodic degree-2 spline with seeded knots on a
//    fixed 512-cell reference lattice (so one seed names one continuum
//    function at every grid size); second derivative piecewise constant
//    with max |f''| = scale (a C^{1,1} representative).
//  - mollified_noise: seeded white noise low-passed below the top shell,
//    rescaled to sup-norm `scale`.
SampledField synthesize_regular(const Grid& g, const RegularityBudget& b,
                                const DyadicPartition& P);

}  // namespace microlab
