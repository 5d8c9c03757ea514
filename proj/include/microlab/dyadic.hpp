#pragma once

#include "microlab/grid.hpp"

namespace microlab {

// Dyadic partition of unity on the frequency lattice.
//
// The radial profile is the classic smooth cutoff: identically 1 on
// rho <= 1/2, identically 0 on rho >= 1, with a normalized exponential ramp
// in between whose steepness is set by `sharpness` (in [1, 100]).  The
// profile is what the paradifferential smoothing uses, so a coefficient
// smoothed at cutoff 2^k has x-spectrum supported exactly in |eta| <= 2^k.
//
// Shells telescope from the dilated profile chi(xi) = profile(|xi|/2):
//   psi_0 = chi,   psi_j = chi(2^-j xi) - chi(2^-j+1 xi)   (1 <= j < J),
// so psi_j vanishes exactly outside [2^{j-1}, 2^{j+1}], and the top shell
// absorbs the Nyquist annulus (psi_J := 1 - sum_{j<J} psi_j, supported in
// |xi| > 2^{J-1}).  The sum over shells is exactly 1 at every lattice point.
class DyadicPartition {
 public:
  DyadicPartition() = default;
  static DyadicPartition build(const Grid& g, double sharpness = 4.0);

  const Grid& grid() const { return grid_; }
  int top_shell() const { return J_; }
  double sharpness() const { return sharpness_; }

  // Tabulated shell weight at lattice entry i (transform layout).
  double shell(int j, std::size_t i) const { return shells_[j][i]; }
  const std::vector<double>& shell_table(int j) const { return shells_[j]; }

  // Radial profile and its continuum formula (also used off-lattice).
  double profile(double rho) const { return profile_value(rho, sharpness_); }
  static double profile_value(double rho, double sharpness);
  // d^order/drho^order of the profile; order 0/1 closed-form, higher orders
  // by central differences on the first derivative (plenty for seminorm
  // tables, which only compare dyadic growth rates).
  static double profile_derivative(double rho, int order, double sharpness);

  // Continuum shell weight psi_j(|xi| = rho); matches the tables on lattice
  // radii for j < J.
  double shell_weight(int j, double rho) const;
  // Radial derivative of psi_j, orders <= 2.
  double shell_weight_derivative(int j, double rho, int order) const;

 private:
  Grid grid_;
  double sharpness_ = 4.0;
  int J_ = 0;
  std::vector<std::vector<double>> shells_;
};

// Spectral projection onto shell j (Fourier multiplier by the tabulated
// psi_j).  Real fields stay real: the weights are radial.
SampledField block(const SampledField& f, int j, const DyadicPartition& P);

// Smoothing operator psi0(2^{-delta k} D): leaves frequencies
// |xi| <= 2^{delta k - 1} untouched and removes |xi| > 2^{delta k}.
SampledField low_pass(const SampledField& f, int k, double delta,
                      const DyadicPartition& P);

}  // namespace microlab
