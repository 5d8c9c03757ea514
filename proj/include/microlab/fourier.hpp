#pragma once

#include <array>
#include <functional>

#include "microlab/grid.hpp"

namespace microlab {

// Discrete transforms with the conventions
//
//   forward:  F(xi) = spacing^dim * sum_x e^{-i x.xi} f(x)
//   inverse:  f(x)  = (2pi)^{-dim} * sum_xi e^{+i x.xi} F(xi)
//
// i.e. the forward coefficient carries the grid quadrature weight, so a
// plane wave e^{i k.x} transforms to a single coefficient of size (2pi)^dim.
// Parseval then reads  (2pi)^{-dim} sum_xi |F|^2 = spacing^dim sum_x |f|^2.
Spectrum forward_transform(const SampledField& f);
SampledField inverse_transform(const Spectrum& s);

// Apply the multiplier w(xi) in frequency.  w receives the signed integer
// frequency vector (xi[1] unused in 1D).  The output real flag is set by
// measurement, so Hermitian-symmetric multipliers preserve it.
SampledField fourier_multiplier(
    const SampledField& f,
    const std::function<std::complex<double>(const std::array<int, 2>&)>& w);

// Multiplier PROD_k (i xi_k)^{beta_k}; |beta| <= 8.
SampledField spectral_derivative(const SampledField& f,
                                 const std::array<int, 2>& beta);

// Japanese bracket <xi> = (1 + |xi|^2)^{1/2} power multiplier.
SampledField bessel_power(const SampledField& f, double s);

// Grid quadrature L2 norm sqrt(spacing^dim * sum |f|^2).
double quadrature_l2(const SampledField& f);
// Spectral-side L2 norm sqrt((2pi)^{-dim} * sum |F|^2); equals the above.
double spectral_l2(const Spectrum& s);

}  // namespace microlab
