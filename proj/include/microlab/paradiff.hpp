#pragma once

#include <cstdint>
#include <functional>

#include "microlab/dyadic.hpp"
#include "microlab/grid.hpp"
#include "microlab/symbols.hpp"

namespace microlab {

class ShellSmoothedSymbol;
struct BonyDecomposition;
BonyDecomposition decompose(const CoefficientSymbol& p, double delta,
                            const DyadicPartition& P);

// One half of the Bony smoothing split of a polynomial symbol
//
//   p(x, xi) = sum_k sum_alpha c_{k,alpha}(x) xi^alpha psi_k(xi),
//
// where c = psi0(2^{-delta k}D) a_alpha on the sharp side and
// c = a_alpha - psi0(2^{-delta k}D) a_alpha on the flat side.  The flat
// coefficients are stored as that exact floating-point difference, so
// sharp + flat reproduces the parent symbol to partition-of-unity
// round-off.  Sharp coefficients have x-spectrum supported exactly in
// |eta| <= 2^{delta k}.
class ShellSmoothedSymbol {
 public:
  enum class Part { sharp, flat };

  ShellSmoothedSymbol() = default;

  const Grid& grid() const { return grid_; }
  Part part() const { return part_; }
  double delta() const { return delta_; }
  int parent_order() const { return order_; }
  int shell_count() const { return int(coeff_.size()); }  // = J + 1
  const std::vector<std::array<int, 2>>& alphas() const { return alphas_; }
  const SampledField& coeff(int k, int term) const { return coeff_[k][term]; }
  const DyadicPartition& partition() const { return partition_; }

  // Symbol value at grid node i and lattice entry l (exact shell tables).
  std::complex<double> eval(std::size_t i, std::size_t l,
                            const int xi[2]) const;
  // Analytic fiber derivative slice (1D fiber, |beta| <= 2: radial shell
  // weight derivatives are tabulated up to second order).
  SampledField fiber_derivative_slice(const std::array<int, 2>& beta,
                                      const double xi[2]) const;

 private:
  friend struct BonyDecomposition;
  friend BonyDecomposition decompose(const CoefficientSymbol&, double,
                                     const DyadicPartition&);
  Grid grid_;
  Part part_ = Part::sharp;
  double delta_ = 1.0;
  int order_ = 0;
  std::vector<std::array<int, 2>> alphas_;
  std::vector<std::vector<SampledField>> coeff_;  // [shell][term]
  DyadicPartition partition_;
};

struct BonyDecomposition {
  ShellSmoothedSymbol sharp;
  ShellSmoothedSymbol flat;
};

// Split p into the smoothed part and the remainder at smoothing exponent
// delta in (0, 1].  Real coefficients stay real on both sides.
BonyDecomposition decompose(const CoefficientSymbol& p, double delta,
                            const DyadicPartition& P);

// ---- quantization -----------------------------------------------------------

// Fast paths: sum over terms of a_alpha(x) . IFFT[xi^alpha F(xi)], with an
// extra shell projector psi_k for smoothed symbols.  Exact discrete
// analogs of the oscillatory-integral quantization for polynomial fibers.
SampledField quantize(const CoefficientSymbol& p, const SampledField& f);
SampledField quantize(const ShellSmoothedSymbol& p, const SampledField& f);

// Dense reference path: out(x) = (2pi)^{-dim} sum_xi e^{ix.xi} p(x,xi) F(xi)
// evaluated row by row.  The callback receives the grid node, the lattice
// entry index (for exact table lookups), and the signed frequency.
// Guards: n <= 256 in 1D, n <= 64 per axis in 2D.
SampledField quantize_dense(
    const std::function<std::complex<double>(
        std::size_t node, std::size_t lattice, const int xi[2])>& p,
    const SampledField& f);
SampledField quantize_dense(const CoefficientSymbol& p, const SampledField& f);
SampledField quantize_dense(const ShellSmoothedSymbol& p,
                            const SampledField& f);

// Flat-remainder seminorm scan (1D; fiber derivatives up to order 2).
SymbolClassReport symbol_seminorm(const ShellSmoothedSymbol& p,
                                  const SymbolClass& cls, int alpha_max,
                                  const DyadicPartition& P);

// ---- statistical mapping probes ---------------------------------------------

// Random field with prescribed spectral coloring <xi>^{-order} (seeded
// amplitudes and phases), normalized so that sobolev_norm(f, order) = 1.
SampledField colored_noise(const Grid& g, double order, std::uint64_t seed);

struct MappingProbeReport {
  double s = 0.0;       // target space order
  double m = 0.0;       // operator order (inputs normalized in H^{s+m})
  double max_ratio = 0.0;
  double q25 = 0.0, q50 = 0.0, q75 = 0.0;
  std::vector<double> ratios;
};

// Empirical operator norm H^{s+m} -> H^s of op on `trials` colored probes.
MappingProbeReport mapping_norm_probe(
    const std::function<SampledField(const SampledField&)>& op, const Grid& g,
    double m, double s, int trials, std::uint64_t seed);
MappingProbeReport mapping_norm_probe(const CoefficientSymbol& p, double m,
                                      double s, int trials,
                                      std::uint64_t seed);

struct FlatEndpointReport {
  double r = 0.0, s = 0.0;
  double hr_norm = 0.0;     // hr_infty_norm(q, r) of the multiplier field
  double max_ratio = 0.0;   // empirical operator norm H^{s-r} -> H^s of q-flat
  double constant = 0.0;    // max_ratio / hr_norm
  std::vector<double> ratios;
};

// Endpoint mapping probe for the flat part of the order-zero symbol q(x):
// sobolev_norm(q_flat(x,D) f, s) against hr_infty_norm(q, r) *
// sobolev_norm(f, s - r) on seeded colored probes, s in [0, r].
FlatEndpointReport flat_endpoint_check(const SampledField& q, double r,
                                       double s, int trials,
                                       std::uint64_t seed,
                                       const DyadicPartition& P);

}  // namespace microlab
