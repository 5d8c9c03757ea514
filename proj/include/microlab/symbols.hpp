#pragma once

#include <array>
#include <functional>
#include <vector>

#include "microlab/dyadic.hpp"
#include "microlab/grid.hpp"
#include "microlab/trig.hpp"

namespace microlab {

// A point of phase space.  x is a position (torus coordinates for symbols
// sampled on a Grid, plane coordinates for mechanical Hamiltonians), xi a
// fiber covector; second components are unused in one dimension.
struct PhasePoint {
  std::array<double, 2> x{0.0, 0.0};
  std::array<double, 2> xi{0.0, 0.0};
};

// Polynomial-in-the-fiber symbol p(x, xi) = sum_alpha a_alpha(x) xi^alpha.
// The order is the largest |alpha| present.  "Principally real" declares
// that every top-order coefficient is real-valued, which is what the flow
// and propagation machinery require; lower-order coefficients may be
// declared complex via the per-term flag.
class CoefficientSymbol {
 public:
  struct Term {
    std::array<int, 2> alpha{0, 0};  // fiber exponents; alpha[1] unused in 1D
    SampledField coeff;
    bool complex_ok = false;
  };

  CoefficientSymbol() = default;
  explicit CoefficientSymbol(std::vector<Term> terms,
                             bool principally_real = true);

  const Grid& grid() const { return grid_; }
  const std::vector<Term>& terms() const { return terms_; }
  int order() const { return order_; }
  bool principally_real() const { return principally_real_; }

  // p at grid node i and an arbitrary fiber point.
  std::complex<double> eval(std::size_t i, const double xi[2]) const;
  // Analytic fiber derivative d_xi^beta p(. , xi), a field in x.
  SampledField fiber_derivative_slice(const std::array<int, 2>& beta,
                                      const double xi[2]) const;

 private:
  Grid grid_;
  std::vector<Term> terms_;
  int order_ = 0;
  bool principally_real_ = true;
};

// Positively homogeneous symbol of real degree m, stored as a table of
// cosphere values q(x, omega) with p(x, xi) = |xi|^m q(x, xi/|xi|).  The
// cosphere is {+1, -1} in 1D and a uniform angular grid in 2D.  Symbols
// built as the leading part of a CoefficientSymbol keep trigonometric
// interpolants of the coefficients, so evaluation and the Hamilton field
// are analytic in x; user-supplied tables use multilinear interpolation in
// x, linear interpolation in angle, and central differences for
// derivatives (step: one grid spacing in x, one angular spacing in theta).
class HomogeneousSymbol {
 public:
  HomogeneousSymbol() = default;

  // table is indexed [node * n_angles + angle]; n_angles must be 2 in 1D.
  static HomogeneousSymbol from_table(const Grid& g, double degree,
                                      std::vector<double> table,
                                      int n_angles);

  const Grid& grid() const { return grid_; }
  double degree() const { return degree_; }
  int angle_count() const { return n_angles_; }
  bool coefficient_backed() const { return !lead_.empty(); }
  double table_value(std::size_t node, int angle) const {
    return table_[node * n_angles_ + angle];
  }
  double max_table_abs() const { return table_max_; }
  // Unit direction of angle index a (1D: {+1, 0} and {-1, 0}).
  void direction(int a, double omega[2]) const;

  // p(x, xi) at an arbitrary point (off-grid x allowed).
  double eval(const double x[2], const double xi[2]) const;
  // Cosphere profile q(x, omega(theta)) at frozen x (2D only).
  double angular_profile(const double x[2], double theta) const;
  // Hamilton field H_p = (d_xi p, -d_x p).
  void hamilton(const double x[2], const double xi[2], double dxdt[2],
                double dxidt[2]) const;

 private:
  friend HomogeneousSymbol principal_symbol(const CoefficientSymbol&, int);
  struct LeadTerm {
    std::array<int, 2> alpha;
    TrigInterpolant interp;
  };

  double table_interp(const double x[2], int angle) const;

  Grid grid_;
  double degree_ = 0.0;
  int n_angles_ = 2;
  std::vector<double> table_;
  double table_max_ = 0.0;
  std::vector<LeadTerm> lead_;
};

// Leading homogeneous part: the |alpha| = order terms tabulated on the
// cosphere.  Fails if every leading coefficient vanishes identically or if
// a leading coefficient is not real-valued.
HomogeneousSymbol principal_symbol(const CoefficientSymbol& p,
                                   int n_angles = 512);

// H_p = (d_xi p, -d_x p) at a phase point off the zero section.
void hamilton_field(const HomogeneousSymbol& ph, const PhasePoint& pt,
                    double dxdt[2], double dxidt[2]);

// All tabulated (x, omega) samples with |q| <= tol * max |q|.
std::vector<PhasePoint> characteristic_points(const HomogeneousSymbol& ph,
                                              double tol);

// Snap the fiber direction to the nearest angular root of the cosphere
// profile at fixed x and |xi| (2D fiber only).  Points that already satisfy
// |q| <= 1e-10 * max|q| are returned unchanged.  Throws if the profile has
// no sign change anywhere on the cosphere (elliptic symbol).
PhasePoint null_project(const HomogeneousSymbol& ph, const PhasePoint& pt);

// ---- rough-symbol seminorms -----------------------------------------------

// Claimed class of a rough symbol: order m, smoothing exponent delta,
// coefficient regularity r measured in the chosen x-space.
struct SymbolClass {
  enum class Space { zygmund, hr_infty };
  double m = 0.0;
  double delta = 1.0;
  double r = 1.0;
  Space space = Space::zygmund;
};

struct SeminormEntry {
  std::array<int, 2> alpha;  // fiber derivative probed
  int bucket;                // dyadic radius bucket, representative ~ 2^bucket
  double sup_item;           // <xi>^{-m+|alpha|} sup_x |slice|
  double space_item;         // <xi>^{-m+|alpha|-r*delta} X-norm of the slice
};

struct SymbolClassReport {
  SymbolClass cls;
  int alpha_max = 0;
  std::vector<SeminormEntry> entries;
  double verdict = 0.0;  // max over the table
};

// Scan a slice provider over fiber derivatives |alpha| <= alpha_max and
// dyadic radius buckets with fixed integer representatives (in 1D:
// +-2^j and +-floor(1.5 * 2^j) up to the lattice radius).  The provider
// returns d_xi^alpha p(. , xi) as a field in x.
SymbolClassReport seminorm_scan(
    const std::function<SampledField(const std::array<int, 2>& alpha,
                                     const double xi[2])>& slice,
    const Grid& g, const SymbolClass& cls, int alpha_max,
    const DyadicPartition& P);

SymbolClassReport symbol_seminorm(const CoefficientSymbol& p,
                                  const SymbolClass& cls, int alpha_max,
                                  const DyadicPartition& P);

}  // namespace microlab
