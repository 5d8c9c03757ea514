#include "microlab/dyadic.hpp"

#include <cmath>

#include "microlab/fourier.hpp"

namespace microlab {

double DyadicPartition::profile_value(double rho, double sharpness) {
  if (rho <= 0.5) return 1.0;
  if (rho >= 1.0) return 0.0;
  double u = 2.0 * (rho - 0.5);  // in (0,1)
  // phi(t) = exp(-sharpness (1-t)/t) vanishes to all orders at t=0.
  double pu = std::exp(-sharpness * (1.0 - u) / u);
  double pv = std::exp(-sharpness * u / (1.0 - u));
  return pv / (pu + pv);
}

namespace {
double profile_first_derivative(double rho, double sharpness) {
  if (rho <= 0.5 || rho >= 1.0) return 0.0;
  double u = 2.0 * (rho - 0.5);
  double s = sharpness;
  double pu = std::exp(-s * (1.0 - u) / u);
  double pv = std::exp(-s * u / (1.0 - u));
  double dpu = pu * s / (u * u);
  double dpv = -pv * s / ((1.0 - u) * (1.0 - u));
  double den = pu + pv;
  // d/du of pv/(pu+pv), times du/drho = 2.
  return 2.0 * (dpv * den - pv * (dpu + dpv)) / (den * den);
}
}  // namespace

double DyadicPartition::profile_derivative(double rho, int order,
                                           double sharpness) {
  if (order == 0) return profile_value(rho, sharpness);
  if (order == 1) return profile_first_derivative(rho, sharpness);
  if (order < 0 || order > 4)
    throw std::invalid_argument("profile_derivative: order in [0,4]");
  // Central differences on the closed-form first derivative.
  double h = 1e-4;
  auto lower = [&](double r) {
    return profile_derivative(r, order - 1, sharpness);
  };
  return (lower(rho + h) - lower(rho - h)) / (2.0 * h);
}

DyadicPartition DyadicPartition::build(const Grid& g, double sharpness) {
  if (sharpness < 1.0 || sharpness > 100.0)
    throw std::invalid_argument("DyadicPartition: sharpness in [1,100]");
  double R = g.max_radius();
  if (R < 2.0) throw std::invalid_argument("DyadicPartition: lattice too small");

  DyadicPartition P;
  P.grid_ = g;
  P.sharpness_ = sharpness;
  int J = 1;
  while (std::exp2(J) < R) ++J;  // largest j with 2^{j-1} < R
  P.J_ = J;

  std::size_t size = g.size();
  P.shells_.assign(J + 1, std::vector<double>(size, 0.0));
  std::vector<double> radius(size);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) radius[i] = std::abs(double(g.freq(i)));
  } else {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1, ++idx)
        radius[idx] = std::hypot(double(g.freq(i0)), double(g.freq(i1)));
  }
  for (std::size_t i = 0; i < size; ++i) {
    double rho = radius[i];
    double acc = 0.0;
    for (int j = 0; j < J; ++j) {
      double w = j == 0
          ? profile_value(rho / 2.0, sharpness)
          : profile_value(rho / std::exp2(j + 1), sharpness) -
                profile_value(rho / std::exp2(j), sharpness);
      P.shells_[j][i] = w;
      acc += w;
    }
    P.shells_[J][i] = 1.0 - acc;  // Nyquist annulus absorber
  }
  return P;
}

double DyadicPartition::shell_weight(int j, double rho) const {
  if (j < 0 || j > J_) throw std::out_of_range("shell_weight: bad shell index");
  if (j == 0) return profile(rho / 2.0);
  if (j == J_) return 1.0 - profile(rho / std::exp2(J_));
  return profile(rho / std::exp2(j + 1)) - profile(rho / std::exp2(j));
}

double DyadicPartition::shell_weight_derivative(int j, double rho,
                                                int order) const {
  if (order == 0) return shell_weight(j, rho);
  if (order > 2) throw std::invalid_argument("shell derivative: order <= 2");
  double a = std::exp2(j == 0 ? 1 : j + 1);  // outer dilation
  double outer = profile_derivative(rho / a, order, sharpness_) /
                 std::pow(a, order);
  if (j == 0) return outer;
  if (j == J_) {
    double b = std::exp2(J_);
    return -profile_derivative(rho / b, order, sharpness_) / std::pow(b, order);
  }
  double b = std::exp2(j);
  return outer - profile_derivative(rho / b, order, sharpness_) /
                     std::pow(b, order);
}

SampledField block(const SampledField& f, int j, const DyadicPartition& P) {
  if (f.grid() != P.grid())
    throw std::invalid_argument("block: field and partition grids differ");
  if (j < 0 || j > P.top_shell())
    throw std::out_of_range("block: shell index outside [0, J]");
  Spectrum s = forward_transform(f);
  auto& c = s.coeff();
  const auto& w = P.shell_table(j);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= w[i];
  return inverse_transform(s);
}

SampledField low_pass(const SampledField& f, int k, double delta,
                      const DyadicPartition& P) {
  if (f.grid() != P.grid())
    throw std::invalid_argument("low_pass: field and partition grids differ");
  if (k < 0) throw std::invalid_argument("low_pass: k >= 0");
  if (delta <= 0.0 || delta > 1.0)
    throw std::invalid_argument("low_pass: delta in (0,1]");
  double cutoff = std::exp2(delta * k);
  Spectrum s = forward_transform(f);
  auto& c = s.coeff();
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] *= P.profile(s.radius_of(i) / cutoff);
  return inverse_transform(s);
}

}  // namespace microlab
