#include "microlab/grid.hpp"

#include <cmath>

namespace microlab {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid Grid::make(int dim, int n) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("Grid: dim must be 1 or 2");
  if (n < 16 || !power_of_two(n))
    throw std::invalid_argument("Grid: n must be a power of two >= 16");
  Grid g;
  g.dim = dim;
  g.n = n;
  return g;
}

double Grid::max_radius() const {
  double half = n / 2;
  return dim == 1 ? half : std::sqrt(2.0) * half;
}

SampledField::SampledField(const Grid& g, std::vector<std::complex<double>> v,
                           bool real_tag)
    : grid_(g), values_(std::move(v)), real_(real_tag) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("SampledField: value count does not match grid");
}

SampledField SampledField::zeros(const Grid& g) {
  return SampledField(g, std::vector<std::complex<double>>(g.size()), true);
}

SampledField SampledField::from_real(const Grid& g,
                                     const std::vector<double>& v) {
  if (v.size() != g.size())
    throw std::invalid_argument("SampledField: value count does not match grid");
  std::vector<std::complex<double>> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i];
  return SampledField(g, std::move(c), true);
}

double SampledField::coord(std::size_t i, int axis) const {
  if (grid_.dim == 1) return grid_.spacing() * double(i);
  std::size_t i0 = i / grid_.n, i1 = i % grid_.n;
  return grid_.spacing() * double(axis == 0 ? i0 : i1);
}

double SampledField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

void SampledField::retag_real(double rel_tol) {
  double m = max_abs();
  double im = 0.0;
  for (const auto& v : values_) im = std::max(im, std::abs(v.imag()));
  real_ = (m == 0.0) || (im <= rel_tol * m);
}

Spectrum::Spectrum(const Grid& g, std::vector<std::complex<double>> c)
    : grid_(g), coeff_(std::move(c)) {
  if (coeff_.size() != grid_.size())
    throw std::invalid_argument("Spectrum: coefficient count does not match grid");
}

Spectrum Spectrum::zeros(const Grid& g) {
  return Spectrum(g, std::vector<std::complex<double>>(g.size()));
}

void Spectrum::freq_of(std::size_t i, int xi[2]) const {
  if (grid_.dim == 1) {
    xi[0] = grid_.freq(int(i));
    xi[1] = 0;
  } else {
    xi[0] = grid_.freq(int(i / grid_.n));
    xi[1] = grid_.freq(int(i % grid_.n));
  }
}

double Spectrum::radius_of(std::size_t i) const {
  int xi[2];
  freq_of(i, xi);
  return std::hypot(double(xi[0]), double(xi[1]));
}

double torus_distance(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kTwoPi);
  return d > kTwoPi / 2 ? kTwoPi - d : d;
}

}  // namespace microlab
