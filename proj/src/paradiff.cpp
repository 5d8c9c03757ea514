#include "microlab/paradiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "microlab/fourier.hpp"
#include "microlab/rng.hpp"
#include "microlab/spaces.hpp"

namespace microlab {

namespace {

double fiber_power(const int xi[2], const std::array<int, 2>& alpha) {
  double v = 1.0;
  for (int k = 0; k < alpha[0]; ++k) v *= double(xi[0]);
  for (int k = 0; k < alpha[1]; ++k) v *= double(xi[1]);
  return v;
}

double fiber_power(const double xi[2], const std::array<int, 2>& alpha) {
  double v = 1.0;
  for (int k = 0; k < alpha[0]; ++k) v *= xi[0];
  for (int k = 0; k < alpha[1]; ++k) v *= xi[1];
  return v;
}

double monomial_factor(int alpha, int beta) {
  if (beta > alpha) return 0.0;
  double f = 1.0;
  for (int k = 0; k < beta; ++k) f *= double(alpha - k);
  return f;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * double(n - i) / double(i + 1);
  return b;
}

}  // namespace

std::complex<double> ShellSmoothedSymbol::eval(std::size_t i, std::size_t l,
                                               const int xi[2]) const {
  std::complex<double> acc(0.0, 0.0);
  for (int k = 0; k < shell_count(); ++k) {
    double w = partition_.shell(k, l);
    if (w == 0.0) continue;
    for (std::size_t t = 0; t < alphas_.size(); ++t)
      acc += coeff_[k][t].at(i) * (w * fiber_power(xi, alphas_[t]));
  }
  return acc;
}

SampledField ShellSmoothedSymbol::fiber_derivative_slice(
    const std::array<int, 2>& beta, const double xi[2]) const {
  if (grid_.dim != 1)
    throw std::invalid_argument(
        "fiber_derivative_slice: shell-structured slices are 1D");
  int b = beta[0];
  if (b < 0 || b > 2 || beta[1] != 0)
    throw std::invalid_argument(
        "fiber_derivative_slice: fiber order 0..2 supported");
  double rho = std::fabs(xi[0]);
  double sgn = xi[0] >= 0.0 ? 1.0 : -1.0;

  std::vector<std::complex<double>> vals(grid_.size(), {0.0, 0.0});
  for (int k = 0; k < shell_count(); ++k) {
    // Radial weight and its xi-derivatives at this representative.  The
    // weight is radial, so d/dxi brings a sign factor on odd orders.
    double w[3];
    w[0] = partition_.shell_weight(k, rho);
    w[1] = partition_.shell_weight_derivative(k, rho, 1) * sgn;
    w[2] = partition_.shell_weight_derivative(k, rho, 2);
    for (std::size_t t = 0; t < alphas_.size(); ++t) {
      int a = alphas_[t][0];
      // Leibniz: d^b (xi^a w) = sum_l C(b,l) (d^l xi^a)(d^{b-l} w).
      double scalar = 0.0;
      for (int l = 0; l <= b; ++l) {
        double mono = monomial_factor(a, l);
        if (mono == 0.0) continue;
        double pw = 1.0;
        for (int q = 0; q < a - l; ++q) pw *= xi[0];
        scalar += binom(b, l) * mono * pw * w[b - l];
      }
      if (scalar == 0.0) continue;
      const auto& src = coeff_[k][t].values();
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += scalar * src[i];
    }
  }
  SampledField out(grid_, std::move(vals), false);
  out.retag_real();
  return out;
}

BonyDecomposition decompose(const CoefficientSymbol& p, double delta,
                            const DyadicPartition& P) {
  if (delta <= 0.0 || delta > 1.0)
    throw std::invalid_argument("decompose: delta in (0,1]");
  if (P.grid() != p.grid())
    throw std::invalid_argument("decompose: partition grid mismatch");

  BonyDecomposition out;
  for (ShellSmoothedSymbol* side : {&out.sharp, &out.flat}) {
    side->grid_ = p.grid();
    side->delta_ = delta;
    side->order_ = p.order();
    side->partition_ = P;
  }
  out.sharp.part_ = ShellSmoothedSymbol::Part::sharp;
  out.flat.part_ = ShellSmoothedSymbol::Part::flat;
  for (const auto& t : p.terms()) {
    out.sharp.alphas_.push_back(t.alpha);
    out.flat.alphas_.push_back(t.alpha);
  }

  int J = P.top_shell();
  out.sharp.coeff_.resize(J + 1);
  out.flat.coeff_.resize(J + 1);
  for (int k = 0; k <= J; ++k) {
    for (const auto& t : p.terms()) {
      SampledField smooth = low_pass(t.coeff, k, delta, P);
      if (t.coeff.is_real()) {
        // The radial smoothing multiplier preserves realness; scrub the FFT
        // round-off imaginary part so a near-zero shell (e.g. the mean of a
        // mean-free coefficient) is not measured as complex.
        std::vector<std::complex<double>> re(smooth.values().size());
        for (std::size_t i = 0; i < re.size(); ++i)
          re[i] = smooth.at(i).real();
        smooth = SampledField(p.grid(), std::move(re), true);
      }
      std::vector<std::complex<double>> rem(t.coeff.values());
      for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= smooth.at(i);
      SampledField remainder(p.grid(), std::move(rem), t.coeff.is_real());
      if (!t.coeff.is_real()) remainder.retag_real();
      out.sharp.coeff_[k].push_back(std::move(smooth));
      out.flat.coeff_[k].push_back(std::move(remainder));
    }
  }
  return out;
}

// ---- quantization -----------------------------------------------------------

SampledField quantize(const CoefficientSymbol& p, const SampledField& f) {
  if (p.grid() != f.grid())
    throw std::invalid_argument("quantize: grid mismatch");
  const Grid& g = f.grid();
  Spectrum F = forward_transform(f);
  std::vector<std::complex<double>> acc(g.size(), {0.0, 0.0});
  for (const auto& t : p.terms()) {
    Spectrum weighted(g, F.coeff());
    int xi[2];
    for (std::size_t l = 0; l < weighted.coeff().size(); ++l) {
      weighted.freq_of(l, xi);
      weighted.coeff()[l] *= fiber_power(xi, t.alpha);
    }
    SampledField conv = inverse_transform(weighted);
    const auto& a = t.coeff.values();
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc[i] += a[i] * conv.at(i);
  }
  SampledField out(g, std::move(acc), false);
  out.retag_real();
  return out;
}

SampledField quantize(const ShellSmoothedSymbol& p, const SampledField& f) {
  if (p.grid() != f.grid())
    throw std::invalid_argument("quantize: grid mismatch");
  const Grid& g = f.grid();
  const DyadicPartition& P = p.partition();
  Spectrum F = forward_transform(f);
  std::vector<std::complex<double>> acc(g.size(), {0.0, 0.0});
  for (int k = 0; k < p.shell_count(); ++k) {
    for (std::size_t t = 0; t < p.alphas().size(); ++t) {
      Spectrum weighted(g, F.coeff());
      int xi[2];
      for (std::size_t l = 0; l < weighted.coeff().size(); ++l) {
        double w = P.shell(k, l);
        if (w == 0.0) {
          weighted.coeff()[l] = 0.0;
          continue;
        }
        weighted.freq_of(l, xi);
        weighted.coeff()[l] *= w * fiber_power(xi, p.alphas()[t]);
      }
      SampledField conv = inverse_transform(weighted);
      const auto& c = p.coeff(k, int(t)).values();
      for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] += c[i] * conv.at(i);
    }
  }
  SampledField out(g, std::move(acc), false);
  out.retag_real();
  return out;
}

SampledField quantize_dense(
    const std::function<std::complex<double>(
        std::size_t node, std::size_t lattice, const int xi[2])>& p,
    const SampledField& f) {
  const Grid& g = f.grid();
  if ((g.dim == 1 && g.n > 256) || (g.dim == 2 && g.n > 64))
    throw std::invalid_argument(
        "quantize_dense: size guard (n <= 256 in 1D, n <= 64 in 2D)");
  Spectrum F = forward_transform(f);
  std::vector<std::complex<double>> out(g.size());
  double norm = std::pow(kTwoPi, -g.dim);
  int xi[2];
  for (std::size_t i = 0; i < g.size(); ++i) {
    double x[2] = {0.0, 0.0};
    if (g.dim == 1) {
      x[0] = g.spacing() * double(i);
    } else {
      x[0] = g.spacing() * double(i / std::size_t(g.n));
      x[1] = g.spacing() * double(i % std::size_t(g.n));
    }
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t l = 0; l < F.coeff().size(); ++l) {
      F.freq_of(l, xi);
      double phase = x[0] * xi[0] + x[1] * xi[1];
      acc += std::polar(1.0, phase) * p(i, l, xi) * F.coeff()[l];
    }
    out[i] = norm * acc;
  }
  SampledField res(g, std::move(out), false);
  res.retag_real();
  return res;
}

SampledField quantize_dense(const CoefficientSymbol& p,
                            const SampledField& f) {
  auto cb = [&p](std::size_t node, std::size_t, const int xi[2]) {
    double x[2] = {double(xi[0]), double(xi[1])};
    return p.eval(node, x);
  };
  return quantize_dense(cb, f);
}

SampledField quantize_dense(const ShellSmoothedSymbol& p,
                            const SampledField& f) {
  auto cb = [&p](std::size_t node, std::size_t lattice, const int xi[2]) {
    return p.eval(node, lattice, xi);
  };
  return quantize_dense(cb, f);
}

SymbolClassReport symbol_seminorm(const ShellSmoothedSymbol& p,
                                  const SymbolClass& cls, int alpha_max,
                                  const DyadicPartition& P) {
  if (P.grid() != p.grid())
    throw std::invalid_argument("symbol_seminorm: partition grid mismatch");
  auto slice = [&p](const std::array<int, 2>& alpha, const double xi[2]) {
    return p.fiber_derivative_slice(alpha, xi);
  };
  return seminorm_scan(slice, p.grid(), cls, alpha_max, P);
}

// ---- statistical probes -------------------------------------------------------

SampledField colored_noise(const Grid& g, double order, std::uint64_t seed) {
  Rng rng(seed);
  Spectrum sp = Spectrum::zeros(g);
  int xi[2];
  double sum = 0.0;
  std::vector<double> amp(g.size());
  std::vector<double> phase(g.size());
  for (std::size_t l = 0; l < g.size(); ++l) {
    sp.freq_of(l, xi);
    double rho2 = double(xi[0]) * xi[0] + double(xi[1]) * xi[1];
    double a = rng.uniform(0.5, 1.5) * std::pow(1.0 + rho2, -0.5 * order);
    amp[l] = a;
    phase[l] = rng.uniform(0.0, kTwoPi);
    // Contribution to ||f||_{H^order}^2 = (2pi)^{-d} sum <xi>^{2 order}|F|^2
    double weighted = std::pow(1.0 + rho2, 0.5 * order) * a;
    sum += weighted * weighted;
  }
  double scale = 1.0 / std::sqrt(std::pow(kTwoPi, -g.dim) * sum);
  for (std::size_t l = 0; l < g.size(); ++l)
    sp.coeff()[l] = std::polar(scale * amp[l], phase[l]);
  return inverse_transform(sp);
}

MappingProbeReport mapping_norm_probe(
    const std::function<SampledField(const SampledField&)>& op, const Grid& g,
    double m, double s, int trials, std::uint64_t seed) {
  if (trials < 10)
    throw std::invalid_argument("mapping_norm_probe: trials >= 10");
  MappingProbeReport rep;
  rep.s = s;
  rep.m = m;
  for (int t = 0; t < trials; ++t) {
    SampledField f = colored_noise(g, s + m, seed + std::uint64_t(t));
    rep.ratios.push_back(sobolev_norm(op(f), s));
  }
  std::vector<double> sorted(rep.ratios);
  std::sort(sorted.begin(), sorted.end());
  rep.max_ratio = sorted.back();
  rep.q25 = sorted[std::size_t(0.25 * (sorted.size() - 1))];
  rep.q50 = sorted[std::size_t(0.50 * (sorted.size() - 1))];
  rep.q75 = sorted[std::size_t(0.75 * (sorted.size() - 1))];
  return rep;
}

MappingProbeReport mapping_norm_probe(const CoefficientSymbol& p, double m,
                                      double s, int trials,
                                      std::uint64_t seed) {
  auto op = [&p](const SampledField& f) { return quantize(p, f); };
  return mapping_norm_probe(op, p.grid(), m, s, trials, seed);
}

FlatEndpointReport flat_endpoint_check(const SampledField& q, double r,
                                       double s, int trials,
                                       std::uint64_t seed,
                                       const DyadicPartition& P) {
  if (s < 0.0 || s > r)
    throw std::invalid_argument("flat_endpoint_check: s in [0, r]");
  CoefficientSymbol sym({{{0, 0}, q, !q.is_real()}}, q.is_real());
  BonyDecomposition dec = decompose(sym, 1.0, P);

  FlatEndpointReport rep;
  rep.r = r;
  rep.s = s;
  rep.hr_norm = hr_infty_norm(q, r);
  for (int t = 0; t < trials; ++t) {
    SampledField f = colored_noise(q.grid(), s - r, seed + std::uint64_t(t));
    double num = sobolev_norm(quantize(dec.flat, f), s);
    rep.ratios.push_back(num);
    rep.max_ratio = std::max(rep.max_ratio, num);
  }
  rep.constant = rep.hr_norm > 0.0 ? rep.max_ratio / rep.hr_norm : 0.0;
  return rep;
}

}  // namespace microlab
