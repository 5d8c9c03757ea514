#include <cmath>
#include <complex>

#include "doctest.h"
#include "microlab/fourier.hpp"
#include "microlab/paradiff.hpp"
#include "microlab/rng.hpp"
#include "microlab/spaces.hpp"

using namespace microlab;

namespace {

SampledField const_field(const Grid& g, double c) {
  return SampledField::from_real(g, std::vector<double>(g.size(), c));
}

SampledField cos_mode(const Grid& g, double k) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::cos(k * i * g.spacing());
  return SampledField::from_real(g, v);
}

SampledField random_real(const Grid& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(g.size());
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return SampledField::from_real(g, v);
}

double rel_l2_err(const SampledField& a, const SampledField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    num += std::norm(a.at(i) - b.at(i));
    den += std::norm(b.at(i));
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("paradiff") {

TEST_CASE("constant coefficients put everything into the smoothed part") {
  Grid g = Grid::make(1, 128);
  DyadicPartition P = DyadicPartition::build(g);
  CoefficientSymbol p({{{1, 0}, const_field(g, 3.0), false},
                       {{0, 0}, const_field(g, -1.5), false}});
  BonyDecomposition d = decompose(p, 1.0, P);
  for (int k = 0; k < d.flat.shell_count(); ++k)
    for (std::size_t t = 0; t < d.flat.alphas().size(); ++t)
      CHECK(d.flat.coeff(k, int(t)).max_abs() <= 1e-14);
  for (int k = 0; k < d.sharp.shell_count(); ++k) {
    CHECK(d.sharp.coeff(k, 0).at(17).real() == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(d.sharp.coeff(k, 1).at(17).real() == doctest::Approx(-1.5).epsilon(1e-13));
  }
}

TEST_CASE("a single mode routes by the smoothing cutoff") {
  // Coefficient cos(64 x): the shell-k smoother keeps it exactly when the
  // plateau reaches 64 (2^(k-1) >= 64, k >= 7) and kills it for k <= 6.
  Grid g = Grid::make(1, 512);
  DyadicPartition P = DyadicPartition::build(g);
  CoefficientSymbol p({{{1, 0}, cos_mode(g, 64.0), false}});
  BonyDecomposition d = decompose(p, 1.0, P);
  REQUIRE(d.sharp.shell_count() == P.top_shell() + 1);
  for (int k = 0; k <= P.top_shell(); ++k) {
    double sharp_amp = d.sharp.coeff(k, 0).max_abs();
    double flat_amp = d.flat.coeff(k, 0).max_abs();
    if (k <= 6) {
      CHECK(sharp_amp <= 1e-13);
      CHECK(flat_amp == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      CHECK(sharp_amp == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(flat_amp <= 1e-13);
    }
  }
}

TEST_CASE("sharp plus flat reproduces the symbol on grid x lattice") {
  Grid g = Grid::make(1, 128);
  DyadicPartition P = DyadicPartition::build(g);
  for (std::uint64_t seed : {1ull, 2ull}) {
    RegularityBudget b;
    b.r = 1.5;
    b.seed = seed;
    SampledField a = synthesize_regular(g, b, P);
    CoefficientSymbol p({{{2, 0}, a, false},
                         {{1, 0}, random_real(g, seed + 50), false},
                         {{0, 0}, const_field(g, 0.3), false}});
    BonyDecomposition d = decompose(p, 1.0, P);
    Spectrum probe = Spectrum::zeros(g);
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 3) {
      for (std::size_t l = 0; l < g.size(); l += 3) {
        int xi[2];
        probe.freq_of(l, xi);
        double xid[2] = {double(xi[0]), double(xi[1])};
        std::complex<double> want = p.eval(i, xid);
        std::complex<double> got = d.sharp.eval(i, l, xi) + d.flat.eval(i, l, xi);
        scale = std::max(scale, std::abs(want));
        worst = std::max(worst, std::abs(want - got));
      }
    }
    CHECK(worst <= 1e-12 * scale);
  }
}

TEST_CASE("real coefficients smooth to real coefficients") {
  Grid g = Grid::make(1, 256);
  DyadicPartition P = DyadicPartition::build(g);
  RegularityBudget b;
  b.r = 1.5;
  b.seed = 9;
  CoefficientSymbol p({{{1, 0}, synthesize_regular(g, b, P), false}});
  BonyDecomposition d = decompose(p, 1.0, P);
  for (int k = 0; k < d.sharp.shell_count(); ++k) {
    CHECK(d.sharp.coeff(k, 0).is_real());
    CHECK(d.flat.coeff(k, 0).is_real());
  }
}

TEST_CASE("smoothed coefficients have spectrum inside |eta| <= 2^(dk)") {
  Grid g = Grid::make(1, 512);
  DyadicPartition P = DyadicPartition::build(g);
  CoefficientSymbol p({{{1, 0}, random_real(g, 31), false}});
  for (double delta : {1.0, 0.7}) {
    BonyDecomposition d = decompose(p, delta, P);
    for (int k = 0; k < d.sharp.shell_count(); ++k) {
      Spectrum F = forward_transform(d.sharp.coeff(k, 0));
      double cutoff = std::exp2(delta * k);
      double outside = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (F.radius_of(i) > cutoff)
          outside = std::max(outside, std::abs(F.coeff()[i]));
      CHECK(outside <= 1e-13);
    }
  }
}

TEST_CASE("decompose rejects out-of-range smoothing exponents") {
  Grid g = Grid::make(1, 128);
  DyadicPartition P = DyadicPartition::build(g);
  CoefficientSymbol p({{{0, 0}, const_field(g, 1.0), false}});
  CHECK_THROWS(decompose(p, 0.0, P));
  CHECK_THROWS(decompose(p, 1.5, P));
}

TEST_CASE("order-zero quantization is pointwise multiplication") {
  Grid g = Grid::make(1, 256);
  SampledField a = cos_mode(g, 3.0);
  SampledField f = random_real(g, 5);
  CoefficientSymbol p({{{0, 0}, a, false}});
  SampledField out = quantize(p, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(out.at(i) - a.at(i) * f.at(i)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("the symbol i xi quantizes to the spectral derivative") {
  Grid g = Grid::make(1, 256);
  SampledField f = cos_mode(g, 9.0);
  std::vector<std::complex<double>> iv(g.size(), {0.0, 1.0});
  CoefficientSymbol p({{{1, 0}, SampledField(g, iv, false), true}},
                      /*principally_real=*/false);
  SampledField lhs = quantize(p, f);
  SampledField rhs = spectral_derivative(f, {1, 0});
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(lhs.at(i) - rhs.at(i)));
  CHECK(worst <= 1e-11);
}

TEST_CASE("fast and dense quantization agree at 1e-10") {
  Grid g = Grid::make(1, 128);
  DyadicPartition P = DyadicPartition::build(g);
  RegularityBudget b;
  b.r = 2.0;
  b.seed = 21;
  SampledField a = synthesize_regular(g, b, P);
  SampledField f = random_real(g, 77);
  CoefficientSymbol p({{{2, 0}, a, false},
                       {{0, 0}, cos_mode(g, 2.0), false}});
  CHECK(rel_l2_err(quantize(p, f), quantize_dense(p, f)) <= 1e-10);

  BonyDecomposition d = decompose(p, 1.0, P);
  CHECK(rel_l2_err(quantize(d.sharp, f), quantize_dense(d.sharp, f)) <= 1e-10);
  CHECK(rel_l2_err(quantize(d.flat, f), quantize_dense(d.flat, f)) <= 1e-10);
}

TEST_CASE("dense quantization of the unit symbol is the identity") {
  Grid g = Grid::make(1, 64);
  SampledField f = random_real(g, 13);
  SampledField out = quantize_dense(
      [](std::size_t, std::size_t, const int[2]) {
        return std::complex<double>(1.0, 0.0);
      },
      f);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(out.at(i) - f.at(i)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("dense quantization matches a literal double sum at n=16") {
  Grid g = Grid::make(1, 16);
  SampledField f = random_real(g, 3);
  auto sym = [](std::size_t node, std::size_t, const int xi[2]) {
    double x = kTwoPi * double(node) / 16.0;
    double bump = std::exp(-0.1 * xi[0] * xi[0]);
    return std::exp(std::complex<double>(0.0, x)) * bump;
  };
  SampledField out = quantize_dense(sym, f);
  Spectrum F = forward_transform(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t l = 0; l < g.size(); ++l) {
      int xi[2];
      F.freq_of(l, xi);
      double x = i * g.spacing();
      acc += std::exp(std::complex<double>(0.0, x * xi[0])) *
             sym(i, l, xi) * F.coeff()[l];
    }
    acc /= kTwoPi;
    CHECK(std::abs(out.at(i) - acc) <= 1e-12);
  }
}

TEST_CASE("dense path enforces its size guards") {
  Grid big1 = Grid::make(1, 512);
  SampledField f1 = random_real(big1, 1);
  CoefficientSymbol p1({{{0, 0}, const_field(big1, 1.0), false}});
  CHECK_THROWS(quantize_dense(p1, f1));
  Grid big2 = Grid::make(2, 128);
  SampledField f2 = random_real(big2, 1);
  CoefficientSymbol p2({{{0, 0}, const_field(big2, 1.0), false}});
  CHECK_THROWS(quantize_dense(p2, f2));
}

TEST_CASE("quantization is linear in the field") {
  Grid g = Grid::make(1, 128);
  DyadicPartition P = DyadicPartition::build(g);
  CoefficientSymbol p({{{1, 0}, random_real(g, 41), false}});
  BonyDecomposition d = decompose(p, 1.0, P);
  SampledField f = random_real(g, 42), h = random_real(g, 43);
  std::vector<std::complex<double>> comb(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    comb[i] = 2.0 * f.at(i) - 0.5 * h.at(i);
  SampledField fc(g, comb, true);
  SampledField lhs = quantize(d.sharp, fc);
  SampledField qf = quantize(d.sharp, f), qh = quantize(d.sharp, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst,
                     std::abs(lhs.at(i) - (2.0 * qf.at(i) - 0.5 * qh.at(i))));
  CHECK(worst <= 1e-12);
}

TEST_CASE("sharp quantization of a real symbol keeps real fields real") {
  Grid g = Grid::make(1, 256);
  DyadicPartition P = DyadicPartition::build(g);
  RegularityBudget b;
  b.r = 1.5;
  b.seed = 4;
  CoefficientSymbol p({{{2, 0}, synthesize_regular(g, b, P), false}});
  BonyDecomposition d = decompose(p, 1.0, P);
  SampledField out = quantize(d.sharp, random_real(g, 6));
  double im = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    im = std::max(im, std::abs(out.at(i).imag()));
  CHECK(im <= 1e-12 * std::max(1.0, out.max_abs()));
}

TEST_CASE("colored noise is normalized in its sobolev space") {
  Grid g = Grid::make(1, 512);
  for (double order : {-1.0, 0.0, 1.5}) {
    SampledField f = colored_noise(g, order, 17);
    CHECK(sobolev_norm(f, order) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the unit symbol probes to operator norm exactly one") {
  Grid g = Grid::make(1, 256);
  CoefficientSymbol p({{{0, 0}, const_field(g, 1.0), false}});
  MappingProbeReport rep = mapping_norm_probe(p, 0.0, 0.5, 12, 7);
  CHECK(rep.ratios.size() == 12);
  for (double r : rep.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.q25 <= rep.q50);
  CHECK(rep.q50 <= rep.q75);
}

TEST_CASE("multiplication operators obey the exact L2 bound") {
  Grid g = Grid::make(1, 256);
  SampledField a = cos_mode(g, 5.0);  // sup norm exactly 1
  CoefficientSymbol p({{{0, 0}, a, false}});
  MappingProbeReport rep = mapping_norm_probe(p, 0.0, 0.0, 15, 3);
  for (double r : rep.ratios) CHECK(r <= 1.0 * (1.0 + 1e-10));
}

TEST_CASE("flat part of a constant multiplier vanishes") {
  Grid g = Grid::make(1, 256);
  DyadicPartition P = DyadicPartition::build(g);
  FlatEndpointReport rep =
      flat_endpoint_check(const_field(g, 2.0), 2.0, 1.0, 10, 5, P);
  CHECK(rep.hr_norm == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(rep.max_ratio <= 1e-12);
  CHECK(rep.constant <= 1e-12);
}

TEST_CASE("flat endpoint bound is finite on a C^(1,1) multiplier") {
  Grid g = Grid::make(1, 512);
  DyadicPartition P = DyadicPartition::build(g);
  RegularityBudget b;
  b.kind = SynthKind::piecewise_polynomial;
  b.seed = 2;
  SampledField q = synthesize_regular(g, b, P);
  for (double s : {0.0, 2.0}) {
    FlatEndpointReport rep = flat_endpoint_check(q, 2.0, s, 8, 11, P);
    CHECK(rep.hr_norm > 0.0);
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.constant < 50.0);  // sanity ceiling, not a sharp constant
  }
}

TEST_CASE("flat remainder seminorms are finite in the shifted class") {
  Grid g = Grid::make(1, 256);
  DyadicPartition P = DyadicPartition::build(g);
  RegularityBudget b;
  b.r = 1.5;
  b.seed = 13;
  CoefficientSymbol p({{{1, 0}, synthesize_regular(g, b, P), false}});
  BonyDecomposition d = decompose(p, 1.0, P);
  SymbolClass cls;
  cls.m = 1.0 - 1.5;
  cls.delta = 1.0;
  cls.r = 1.5;
  SymbolClassReport rep = symbol_seminorm(d.flat, cls, 2, P);
  CHECK(rep.verdict > 0.0);
  CHECK(std::isfinite(rep.verdict));
}

}  // TEST_SUITE
