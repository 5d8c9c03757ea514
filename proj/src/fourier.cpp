#include "microlab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace microlab {

namespace {

// Plan cache.  Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so a
// cached plan can be executed on any caller buffer via fftw_execute_dft.
// Creation is serialized (FFTW planning is not thread-safe); execution is.
struct PlanKey {
  int dim, n, sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(dim, n, sign) < std::tie(o.dim, o.n, o.sign);
  }
};

fftw_plan get_plan(const Grid& g, int sign) {
  static std::mutex mu;
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  PlanKey key{g.dim, g.n, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> scratch(g.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (g.dim == 1)
    p = fftw_plan_dft_1d(g.n, buf, buf, sign, flags);
  else
    p = fftw_plan_dft_2d(g.n, g.n, buf, buf, sign, flags);
  cache.emplace(key, p);
  return p;
}

void run(const Grid& g, int sign, const std::vector<std::complex<double>>& in,
         std::vector<std::complex<double>>& out) {
  out.resize(in.size());
  fftw_plan p = get_plan(g, sign);
  fftw_execute_dft(
      p,
      reinterpret_cast<fftw_complex*>(
          const_cast<std::complex<double>*>(in.data())),
      reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

Spectrum forward_transform(const SampledField& f) {
  const Grid& g = f.grid();
  std::vector<std::complex<double>> c;
  run(g, FFTW_FORWARD, f.values(), c);
  double w = std::pow(g.spacing(), g.dim);
  for (auto& v : c) v *= w;
  return Spectrum(g, std::move(c));
}

SampledField inverse_transform(const Spectrum& s) {
  const Grid& g = s.grid();
  std::vector<std::complex<double>> v;
  run(g, FFTW_BACKWARD, s.coeff(), v);
  double w = std::pow(kTwoPi, -g.dim);
  for (auto& x : v) x *= w;
  SampledField out(g, std::move(v), false);
  out.retag_real();
  return out;
}

SampledField fourier_multiplier(
    const SampledField& f,
    const std::function<std::complex<double>(const std::array<int, 2>&)>& w) {
  Spectrum s = forward_transform(f);
  const Grid& g = f.grid();
  std::array<int, 2> xi{0, 0};
  auto& c = s.coeff();
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      xi[0] = g.freq(i);
      c[i] *= w(xi);
    }
  } else {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < g.n; ++i0) {
      xi[0] = g.freq(i0);
      for (int i1 = 0; i1 < g.n; ++i1, ++idx) {
        xi[1] = g.freq(i1);
        c[idx] *= w(xi);
      }
    }
  }
  return inverse_transform(s);
}

SampledField spectral_derivative(const SampledField& f,
                                 const std::array<int, 2>& beta) {
  int total = 0;
  for (int k = 0; k < f.grid().dim; ++k) {
    if (beta[k] < 0) throw std::invalid_argument("spectral_derivative: beta >= 0");
    total += beta[k];
  }
  if (total > 8)
    throw std::invalid_argument("spectral_derivative: |beta| <= 8");
  const std::complex<double> I(0.0, 1.0);
  return fourier_multiplier(f, [&](const std::array<int, 2>& xi) {
    std::complex<double> m(1.0, 0.0);
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < beta[k]; ++j) m *= I * double(xi[k]);
    return m;
  });
}

SampledField bessel_power(const SampledField& f, double s) {
  return fourier_multiplier(f, [&](const std::array<int, 2>& xi) {
    double r2 = double(xi[0]) * xi[0] + double(xi[1]) * xi[1];
    return std::complex<double>(std::pow(1.0 + r2, 0.5 * s), 0.0);
  });
}

double quadrature_l2(const SampledField& f) {
  double acc = 0.0;
  for (const auto& v : f.values()) acc += std::norm(v);
  return std::sqrt(acc * std::pow(f.grid().spacing(), f.grid().dim));
}

double spectral_l2(const Spectrum& s) {
  double acc = 0.0;
  for (const auto& v : s.coeff()) acc += std::norm(v);
  return std::sqrt(acc * std::pow(kTwoPi, -s.grid().dim));
}

}  // namespace microlab
