#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace microlab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Periodic grid on [0, 2pi)^dim with n equidistant points per axis.
// n must be a power of two >= 16 so that dyadic frequency shells tile the
// lattice cleanly; dim is 1 or 2.  The frequency lattice is the set of
// integer vectors with each component in [-n/2, n/2).
struct Grid {
  int dim = 1;
  int n = 0;

  static Grid make(int dim, int n);

  double spacing() const { return kTwoPi / n; }
  std::size_t size() const {
    return dim == 1 ? std::size_t(n) : std::size_t(n) * n;
  }
  // Signed frequency for a transform-layout index along one axis.
  int freq(int i) const { return i < n / 2 ? i : i - n; }
  // Largest |xi| on the lattice (corner in 2D).
  double max_radius() const;

  bool operator==(const Grid& o) const { return dim == o.dim && n == o.n; }
  bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Complex samples over a Grid (row-major in 2D, axis 0 outermost).  The
// real flag is advisory: it records that every imaginary part is negligible
// relative to the field magnitude, and is maintained by the transform and
// multiplier routines rather than trusted blindly.
class SampledField {
 public:
  SampledField() = default;
  SampledField(const Grid& g, std::vector<std::complex<double>> v, bool real_tag);
  static SampledField zeros(const Grid& g);
  static SampledField from_real(const Grid& g, const std::vector<double>& v);

  const Grid& grid() const { return grid_; }
  const std::vector<std::complex<double>>& values() const { return values_; }
  std::vector<std::complex<double>>& values() { return values_; }
  bool is_real() const { return real_; }
  void set_real_tag(bool r) { real_ = r; }

  std::complex<double> at(std::size_t i) const { return values_[i]; }
  // Coordinates of node i (2D: i = i0*n + i1).
  double coord(std::size_t i, int axis) const;

  double max_abs() const;
  // Re-derive the real flag by measuring imaginary parts.
  void retag_real(double rel_tol = 1e-13);

 private:
  Grid grid_;
  std::vector<std::complex<double>> values_;
  bool real_ = false;
};

// Fourier coefficients in transform layout (same indexing as the field,
// frequency via Grid::freq per axis).  The forward transform carries the
// quadrature weight spacing^dim so that coefficients approximate the
// integral transform over the torus; see fourier.hpp.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(const Grid& g, std::vector<std::complex<double>> c);
  static Spectrum zeros(const Grid& g);

  const Grid& grid() const { return grid_; }
  const std::vector<std::complex<double>>& coeff() const { return coeff_; }
  std::vector<std::complex<double>>& coeff() { return coeff_; }

  // Signed frequency vector of entry i; xi[1] is 0 in 1D.
  void freq_of(std::size_t i, int xi[2]) const;
  double radius_of(std::size_t i) const;

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeff_;
};

double torus_distance(double a, double b);  // on [0, 2pi)

}  // namespace microlab
