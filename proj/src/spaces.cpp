#include "microlab/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "microlab/fourier.hpp"
#include "microlab/rng.hpp"

namespace microlab {

double zygmund_norm(const SampledField& f, double r,
                    const DyadicPartition& P) {
  if (r <= 0.0 || r > 4.0)
    throw std::invalid_argument("zygmund_norm: r in (0,4]");
  double best = 0.0;
  for (int j = 0; j <= P.top_shell(); ++j) {
    double m = block(f, j, P).max_abs();
    best = std::max(best, std::exp2(double(j) * r) * m);
  }
  return best;
}

double sobolev_norm(const SampledField& f, double s) {
  Spectrum sp = forward_transform(f);
  double acc = 0.0;
  int xi[2];
  for (std::size_t i = 0; i < sp.coeff().size(); ++i) {
    sp.freq_of(i, xi);
    double r2 = double(xi[0]) * xi[0] + double(xi[1]) * xi[1];
    acc += std::pow(1.0 + r2, s) * std::norm(sp.coeff()[i]);
  }
  return std::sqrt(acc * std::pow(kTwoPi, -f.grid().dim));
}

namespace {

// Max over dyadic cubes of the mean absolute deviation from the cube mean.
// Cubes at level l have side n/2^l cells; level log2(n) is a single cell
// (deviation zero), so it is skipped.
double dyadic_mad_max(const SampledField& f) {
  const Grid& g = f.grid();
  const auto& v = f.values();
  int n = g.n;
  int levels = 0;
  while ((1 << levels) < n) ++levels;
  double best = 0.0;
  for (int l = 0; l < levels; ++l) {
    int side = n >> l;
    int per_axis = 1 << l;
    if (g.dim == 1) {
      for (int c = 0; c < per_axis; ++c) {
        std::complex<double> mean(0.0, 0.0);
        for (int i = 0; i < side; ++i) mean += v[c * side + i];
        mean /= double(side);
        double mad = 0.0;
        for (int i = 0; i < side; ++i) mad += std::abs(v[c * side + i] - mean);
        best = std::max(best, mad / double(side));
      }
    } else {
      for (int c0 = 0; c0 < per_axis; ++c0)
        for (int c1 = 0; c1 < per_axis; ++c1) {
          std::complex<double> mean(0.0, 0.0);
          for (int i0 = 0; i0 < side; ++i0)
            for (int i1 = 0; i1 < side; ++i1)
              mean += v[std::size_t(c0 * side + i0) * n + (c1 * side + i1)];
          double cells = double(side) * side;
          mean /= cells;
          double mad = 0.0;
          for (int i0 = 0; i0 < side; ++i0)
            for (int i1 = 0; i1 < side; ++i1)
              mad += std::abs(
                  v[std::size_t(c0 * side + i0) * n + (c1 * side + i1)] - mean);
          best = std::max(best, mad / cells);
        }
    }
  }
  return best;
}

}  // namespace

double bmo_norm(const SampledField& f) {
  // psi_0(D) on the integer lattice keeps only xi = 0 (the profile vanishes
  // at radius 1), so the low-pass part is the grid mean.
  std::complex<double> mean(0.0, 0.0);
  for (const auto& x : f.values()) mean += x;
  mean /= double(f.values().size());
  std::vector<std::complex<double>> hi(f.values());
  for (auto& x : hi) x -= mean;
  SampledField high(f.grid(), std::move(hi), f.is_real());
  return std::abs(mean) + dyadic_mad_max(high);
}

double hr_infty_norm(const SampledField& f, double r) {
  return bmo_norm(bessel_power(f, r));
}

namespace {

SampledField synth_lacunary(const Grid& g, const RegularityBudget& b,
                            const DyadicPartition& P) {
  Rng rng(b.seed);
  std::vector<double> vals(g.size(), 0.0);
  int n = g.n;
  for (int j = 1; j < P.top_shell(); ++j) {
    int k = 1 << j;  // mode magnitude 2^j, inside shell j exactly
    int axis = (g.dim == 2) ? int(rng.uniform_int(2)) : 0;
    // Phase snapped to the mode's sample-phase lattice: some grid point
    // attains cos(...) = 1, so the shell sup equals the amplitude exactly.
    double phi = -kTwoPi * double(k) * double(rng.uniform_int(n / k)) / n;
    double amp = b.scale * std::exp2(-double(j) * b.r);
    if (g.dim == 1) {
      for (int i = 0; i < n; ++i)
        vals[i] += amp * std::cos(k * (kTwoPi * i / n) + phi);
    } else {
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1) {
          double xa = kTwoPi * (axis == 0 ? i0 : i1) / n;
          vals[std::size_t(i0) * n + i1] += amp * std::cos(k * xa + phi);
        }
    }
  }
  return SampledField::from_real(g, vals);
}

SampledField synth_spline(const Grid& g, const RegularityBudget& b) {
  if (g.dim != 1)
    throw std::invalid_argument(
        "synthesize_regular: piecewise_polynomial is 1D");
  Rng rng(b.seed);
  int n = g.n;
  // Knots live on a fixed 512-cell reference lattice, so a seed names one
  // continuum spline and refined grids resample the same function (the
  // refinement studies depend on that).
  const int ref = 512;
  int knots = 8 + int(rng.uniform_int(9));  // 8..16
  std::vector<int> idx;
  while (int(idx.size()) < knots) {
    int cand = int(rng.uniform_int(ref));
    bool dup = false;
    for (int e : idx) dup = dup || e == cand;
    if (!dup) idx.push_back(cand);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<double> knot(knots), d(knots);
  for (int i = 0; i < knots; ++i) {
    knot[i] = kTwoPi * idx[i] / ref;
    double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    d[i] = sign * rng.uniform(0.5, 1.5);
  }
  // Lengths of [knot_i, knot_{i+1}) wrapping at 2pi.
  std::vector<double> len(knots);
  for (int i = 0; i < knots; ++i)
    len[i] = (i + 1 < knots ? knot[i + 1] : knot[0] + kTwoPi) - knot[i];
  // Make f'' mean-free so f' closes up, then scale to max |f''| = scale.
  double mean2 = 0.0;
  for (int i = 0; i < knots; ++i) mean2 += d[i] * len[i];
  mean2 /= kTwoPi;
  double mx = 0.0;
  for (int i = 0; i < knots; ++i) {
    d[i] -= mean2;
    mx = std::max(mx, std::fabs(d[i]));
  }
  for (int i = 0; i < knots; ++i) d[i] *= b.scale / mx;

  // f'(x) by exact integration of the piecewise-constant f'' from knot[0],
  // then remove the mean of f' so f itself closes up.
  std::vector<double> slope_at(knots);  // f'(knot[i]) with f'(knot[0]) = 0
  slope_at[0] = 0.0;
  for (int i = 1; i < knots; ++i)
    slope_at[i] = slope_at[i - 1] + d[i - 1] * len[i - 1];
  // mean of f' over the torus: sum of interval integrals (trapezoids).
  double mean1 = 0.0;
  for (int i = 0; i < knots; ++i) {
    double s0 = slope_at[i];
    mean1 += s0 * len[i] + 0.5 * d[i] * len[i] * len[i];
  }
  mean1 /= kTwoPi;

  // Values at knots with f(knot[0]) = 0, integrating the corrected slope.
  std::vector<double> val_at(knots);
  val_at[0] = 0.0;
  for (int i = 1; i < knots; ++i) {
    double s0 = slope_at[i - 1] - mean1;
    double L = len[i - 1];
    val_at[i] = val_at[i - 1] + s0 * L + 0.5 * d[i - 1] * L * L;
  }

  std::vector<double> vals(n);
  int seg = 0;
  for (int i = 0; i < n; ++i) {
    double x = kTwoPi * i / n;
    // Advance to the segment containing x (points before knot[0] belong to
    // the wrapped last segment).
    if (x < knot[0]) {
      double t = x + kTwoPi - knot[knots - 1];
      double s0 = slope_at[knots - 1] - mean1;
      vals[i] = val_at[knots - 1] + s0 * t + 0.5 * d[knots - 1] * t * t;
      continue;
    }
    while (seg + 1 < knots && knot[seg + 1] <= x) ++seg;
    double t = x - knot[seg];
    double s0 = slope_at[seg] - mean1;
    vals[i] = val_at[seg] + s0 * t + 0.5 * d[seg] * t * t;
  }
  return SampledField::from_real(g, vals);
}

SampledField synth_noise(const Grid& g, const RegularityBudget& b,
                         const DyadicPartition& P) {
  Rng rng(b.seed);
  std::vector<double> w(g.size());
  for (auto& x : w) x = rng.normal();
  SampledField noise = SampledField::from_real(g, w);
  int cutoff = std::max(2, P.top_shell() - 2);
  SampledField sm = low_pass(noise, cutoff, 1.0, P);
  double m = sm.max_abs();
  if (m == 0.0) return sm;
  auto v = sm.values();
  for (auto& x : v) x *= b.scale / m;
  SampledField out(g, std::move(v), false);
  out.retag_real();
  return out;
}

}  // namespace

SampledField synthesize_regular(const Grid& g, const RegularityBudget& b,
                                const DyadicPartition& P) {
  if (b.r <= 0.0 || b.r > 4.0)
    throw std::invalid_argument("synthesize_regular: r in (0,4]");
  if (b.scale < 0.0)
    throw std::invalid_argument("synthesize_regular: scale >= 0");
  if (P.grid() != g)
    throw std::invalid_argument("synthesize_regular: partition grid mismatch");
  if (b.scale == 0.0) return SampledField::zeros(g);
  switch (b.kind) {
    case SynthKind::lacunary:
      return synth_lacunary(g, b, P);
    case SynthKind::piecewise_polynomial:
      return synth_spline(g, b);
    case SynthKind::mollified_noise:
      return synth_noise(g, b, P);
  }
  throw std::invalid_argument("synthesize_regular: unknown kind");
}

}  // namespace microlab
