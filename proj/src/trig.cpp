#include "microlab/trig.hpp"

#include <cmath>

#include "microlab/fourier.hpp"

namespace microlab {

TrigInterpolant::TrigInterpolant(const SampledField& f, double rel_cutoff) {
  dim_ = f.grid().dim;
  real_ = f.is_real();
  Spectrum s = forward_transform(f);
  double mx = 0.0;
  for (const auto& c : s.coeff()) mx = std::max(mx, std::abs(c));
  double cut = mx * rel_cutoff;
  double norm = std::pow(kTwoPi, -dim_);
  const Grid& g = f.grid();
  int xi[2];
  for (std::size_t i = 0; i < s.coeff().size(); ++i) {
    std::complex<double> c = s.coeff()[i];
    if (std::abs(c) <= cut) continue;
    s.freq_of(i, xi);
    Mode m;
    m.k0 = xi[0];
    m.k1 = xi[1];
    m.c = c * norm;
    m.nyq0 = real_ && xi[0] == -g.n / 2;
    m.nyq1 = real_ && dim_ == 2 && xi[1] == -g.n / 2;
    modes_.push_back(m);
  }
}

std::complex<double> TrigInterpolant::eval(const double x[2]) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& m : modes_) {
    std::complex<double> t = m.c;
    if (m.nyq0)
      t *= std::cos(m.k0 * x[0]);
    else
      t *= std::polar(1.0, m.k0 * x[0]);
    if (dim_ == 2) {
      if (m.nyq1)
        t *= std::cos(m.k1 * x[1]);
      else
        t *= std::polar(1.0, m.k1 * x[1]);
    }
    acc += t;
  }
  return acc;
}

std::complex<double> TrigInterpolant::partial(const double x[2],
                                              int axis) const {
  std::complex<double> acc(0.0, 0.0);
  const std::complex<double> I(0.0, 1.0);
  for (const auto& m : modes_) {
    std::complex<double> f0 = m.nyq0
        ? std::complex<double>(std::cos(m.k0 * x[0]), 0.0)
        : std::polar(1.0, m.k0 * x[0]);
    std::complex<double> f1(1.0, 0.0);
    if (dim_ == 2)
      f1 = m.nyq1 ? std::complex<double>(std::cos(m.k1 * x[1]), 0.0)
                  : std::polar(1.0, m.k1 * x[1]);
    std::complex<double> d0 = m.nyq0
        ? std::complex<double>(-m.k0 * std::sin(m.k0 * x[0]), 0.0)
        : I * m.k0 * f0;
    std::complex<double> d1 = m.nyq1
        ? std::complex<double>(-m.k1 * std::sin(m.k1 * x[1]), 0.0)
        : I * m.k1 * f1;
    acc += m.c * (axis == 0 ? d0 * f1 : f0 * d1);
  }
  return acc;
}

}  // namespace microlab
