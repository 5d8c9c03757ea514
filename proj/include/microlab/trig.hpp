#pragma once

#include <complex>
#include <vector>

#include "microlab/grid.hpp"

namespace microlab {

// Trigonometric interpolant of a sampled field: evaluates the band-limited
// extension (and its first partials) at arbitrary points of the torus.
// Coefficients below rel_cutoff * max|coeff| are dropped, which keeps
// evaluation cheap for synthesized fields whose spectra are sparse.
//
// For real-tagged fields a Nyquist mode (axis frequency -n/2) is folded
// into a cosine so the interpolant stays real and even between samples.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(const SampledField& f, double rel_cutoff = 1e-15);

  double dim() const { return dim_; }
  std::complex<double> eval(const double x[2]) const;
  std::complex<double> partial(const double x[2], int axis) const;
  double eval_real(const double x[2]) const { return eval(x).real(); }

 private:
  struct Mode {
    double k0, k1;            // frequency vector
    std::complex<double> c;   // coefficient including (2pi)^{-dim}
    bool nyq0, nyq1;          // fold e^{ikx} -> cos(kx) on that axis
  };
  int dim_ = 1;
  bool real_ = false;
  std::vector<Mode> modes_;
};

}  // namespace microlab
