// Python bindings.  The module mirrors the C++ API; fields cross the
// boundary as numpy arrays (complex128 on the way out, float or complex on
// the way in, with the real tag inferred from the dtype).

#include <algorithm>
#include <array>
#include <complex>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "microlab/dyadic.hpp"
#include "microlab/field_io.hpp"
#include "microlab/flow.hpp"
#include "microlab/fourier.hpp"
#include "microlab/grid.hpp"
#include "microlab/lab.hpp"
#include "microlab/paradiff.hpp"
#include "microlab/spaces.hpp"
#include "microlab/symbols.hpp"
#include "microlab/wavefront.hpp"

namespace py = pybind11;
using namespace microlab;

namespace {

std::array<double, 2> pair_of(const std::vector<double>& v, const char* what) {
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw std::invalid_argument(std::string(what) + ": expected 1 or 2 numbers");
}

py::array_t<std::complex<double>> field_array(const SampledField& f) {
  const Grid& g = f.grid();
  py::array_t<std::complex<double>> out(
      g.dim == 1 ? std::vector<py::ssize_t>{g.n}
                 : std::vector<py::ssize_t>{g.n, g.n});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

SampledField field_from_array(const Grid& g, const py::array& arr) {
  auto a = py::array_t<std::complex<double>,
                       py::array::c_style | py::array::forcecast>::ensure(arr);
  if (!a) throw std::invalid_argument("values must be a numeric array");
  if (std::size_t(a.size()) != g.size())
    throw std::invalid_argument("value count does not match the grid");
  std::vector<std::complex<double>> v(a.data(), a.data() + a.size());
  SampledField f(g, std::move(v), arr.dtype().kind() != 'c');
  if (!f.is_real()) f.retag_real();
  return f;
}

// Run fn with the supplied partition, or a freshly built default one.
template <class F>
auto with_partition(const std::optional<DyadicPartition>& P, const Grid& g,
                    F&& fn) {
  if (P) {
    if (P->grid() != g)
      throw std::invalid_argument("partition grid does not match the data");
    return fn(*P);
  }
  return fn(DyadicPartition::build(g));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Computational microlocal analysis on periodic grids: dyadic "
      "partitions, rough-symbol calculus, bicharacteristic flows, "
      "wavefront-set estimation, and a rough-coefficient wave lab.";

  // ---- grid and fields -----------------------------------------------------

  py::class_<Grid>(m, "Grid", "Periodic grid on [0, 2pi)^dim, n points per axis.")
      .def(py::init(&Grid::make), py::arg("dim"), py::arg("n"))
      .def_readonly("dim", &Grid::dim)
      .def_readonly("n", &Grid::n)
      .def("spacing", &Grid::spacing)
      .def("size", &Grid::size)
      .def("freq", &Grid::freq, py::arg("i"),
           "Signed frequency of a transform-layout index along one axis.")
      .def("max_radius", &Grid::max_radius)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const Grid& g) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "Grid(dim=%d, n=%d)", g.dim, g.n);
        return std::string(buf);
      });

  py::class_<SampledField>(m, "SampledField",
                           "Complex samples over a Grid (row-major in 2D).")
      .def(py::init(&field_from_array), py::arg("grid"), py::arg("values"))
      .def_static("zeros", &SampledField::zeros, py::arg("grid"))
      .def_property_readonly("grid", &SampledField::grid,
                             py::return_value_policy::copy)
      .def_property_readonly("is_real", &SampledField::is_real)
      .def("to_numpy", &field_array,
           "Copy of the samples as a complex128 array, shape (n,) or (n, n).")
      .def("coord", &SampledField::coord, py::arg("i"), py::arg("axis"))
      .def("max_abs", &SampledField::max_abs)
      .def("__len__", [](const SampledField& f) { return f.grid().size(); })
      .def("__repr__", [](const SampledField& f) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "SampledField(dim=%d, n=%d, real=%s, max_abs=%.6g)",
                      f.grid().dim, f.grid().n, f.is_real() ? "True" : "False",
                      f.max_abs());
        return std::string(buf);
      });

  py::class_<Spectrum>(m, "Spectrum",
                       "Fourier coefficients in transform layout.")
      .def(py::init([](const Grid& g, const py::array& arr) {
             auto a = py::array_t<std::complex<double>,
                                  py::array::c_style |
                                      py::array::forcecast>::ensure(arr);
             if (!a) throw std::invalid_argument("coefficients must be numeric");
             if (std::size_t(a.size()) != g.size())
               throw std::invalid_argument(
                   "coefficient count does not match the grid");
             return Spectrum(
                 g, std::vector<std::complex<double>>(a.data(),
                                                      a.data() + a.size()));
           }),
           py::arg("grid"), py::arg("coeff"))
      .def_property_readonly("grid", &Spectrum::grid,
                             py::return_value_policy::copy)
      .def("to_numpy",
           [](const Spectrum& s) {
             const Grid& g = s.grid();
             py::array_t<std::complex<double>> out(
                 g.dim == 1 ? std::vector<py::ssize_t>{g.n}
                            : std::vector<py::ssize_t>{g.n, g.n});
             std::copy(s.coeff().begin(), s.coeff().end(), out.mutable_data());
             return out;
           })
      .def("freq_of",
           [](const Spectrum& s, std::size_t i) {
             int xi[2];
             s.freq_of(i, xi);
             return py::make_tuple(xi[0], xi[1]);
           },
           py::arg("i"))
      .def("radius_of", &Spectrum::radius_of, py::arg("i"));

  m.def("torus_distance", &torus_distance, py::arg("a"), py::arg("b"),
        "Shortest distance between two points of [0, 2pi).");

  // ---- transforms ------------------------------------------------------------

  m.def("forward_transform", &forward_transform, py::arg("f"),
        "F(xi) = spacing^dim * sum_x e^{-i x.xi} f(x).");
  m.def("inverse_transform", &inverse_transform, py::arg("spectrum"));
  m.def("fourier_multiplier",
        [](const SampledField& f,
           const std::function<std::complex<double>(std::array<int, 2>)>& w) {
          return fourier_multiplier(
              f, [&](const std::array<int, 2>& xi) { return w(xi); });
        },
        py::arg("f"), py::arg("w"),
        "Apply the multiplier w(xi); w receives the signed frequency pair.");
  m.def("spectral_derivative", &spectral_derivative, py::arg("f"),
        py::arg("beta"), "Multiplier prod_k (i xi_k)^{beta_k}; |beta| <= 8.");
  m.def("bessel_power", &bessel_power, py::arg("f"), py::arg("s"),
        "Japanese-bracket power multiplier <xi>^s.");
  m.def("quadrature_l2", &quadrature_l2, py::arg("f"));
  m.def("spectral_l2", &spectral_l2, py::arg("spectrum"));

  // ---- dyadic partition -------------------------------------------------------

  py::class_<DyadicPartition>(m, "DyadicPartition",
                              "Dyadic partition of unity on the frequency "
                              "lattice; shells sum to 1 exactly.")
      .def_static("build", &DyadicPartition::build, py::arg("grid"),
                  py::arg("sharpness") = 4.0)
      .def_property_readonly("grid", &DyadicPartition::grid,
                             py::return_value_policy::copy)
      .def("top_shell", &DyadicPartition::top_shell)
      .def("sharpness", &DyadicPartition::sharpness)
      .def("shell", &DyadicPartition::shell, py::arg("j"), py::arg("i"),
           "Tabulated shell weight at lattice entry i.")
      .def("shell_table",
           [](const DyadicPartition& P, int j) {
             const auto& t = P.shell_table(j);
             py::array_t<double> out(py::ssize_t(t.size()));
             std::copy(t.begin(), t.end(), out.mutable_data());
             return out;
           },
           py::arg("j"))
      .def("profile", &DyadicPartition::profile, py::arg("rho"))
      .def("shell_weight", &DyadicPartition::shell_weight, py::arg("j"),
           py::arg("rho"))
      .def("shell_weight_derivative", &DyadicPartition::shell_weight_derivative,
           py::arg("j"), py::arg("rho"), py::arg("order"));

  m.def("block",
        [](const SampledField& f, int j,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, f.grid(), [&](const DyadicPartition& part) {
            return block(f, j, part);
          });
        },
        py::arg("f"), py::arg("j"), py::arg("partition") = std::nullopt,
        "Spectral projection onto dyadic shell j.");
  m.def("low_pass",
        [](const SampledField& f, int k, double delta,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, f.grid(), [&](const DyadicPartition& part) {
            return low_pass(f, k, delta, part);
          });
        },
        py::arg("f"), py::arg("k"), py::arg("delta") = 1.0,
        py::arg("partition") = std::nullopt,
        "Smoothing cut psi0(2^{-delta k} D).");

  // ---- function spaces ---------------------------------------------------------

  m.def("zygmund_norm",
        [](const SampledField& f, double r,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, f.grid(), [&](const DyadicPartition& part) {
            return zygmund_norm(f, r, part);
          });
        },
        py::arg("f"), py::arg("r"), py::arg("partition") = std::nullopt,
        "sup_j 2^{jr} ||psi_j(D) f||_inf for r in (0, 4].");
  m.def("sobolev_norm", &sobolev_norm, py::arg("f"), py::arg("s"),
        "||<D>^s f||_{L^2} with grid quadrature.");
  m.def("bmo_norm", &bmo_norm, py::arg("f"));
  m.def("hr_infty_norm", &hr_infty_norm, py::arg("f"), py::arg("r"),
        "bmo norm of <D>^r f.");

  py::enum_<SynthKind>(m, "SynthKind")
      .value("lacunary", SynthKind::lacunary)
      .value("piecewise_polynomial", SynthKind::piecewise_polynomial)
      .value("mollified_noise", SynthKind::mollified_noise);

  m.def("synthesize_regular",
        [](const Grid& g, double r, double scale, std::uint64_t seed,
           SynthKind kind, const std::optional<DyadicPartition>& P) {
          RegularityBudget b;
          b.r = r;
          b.scale = scale;
          b.seed = seed;
          b.kind = kind;
          return with_partition(P, g, [&](const DyadicPartition& part) {
            return synthesize_regular(g, b, part);
          });
        },
        py::arg("grid"), py::arg("r") = 1.0, py::arg("scale") = 1.0,
        py::arg("seed") = 1, py::arg("kind") = SynthKind::lacunary,
        py::arg("partition") = std::nullopt,
        "Deterministic field of prescribed Zygmund/Hölder regularity.");

  // ---- symbols -------------------------------------------------------------------

  py::class_<CoefficientSymbol> csym(
      m, "CoefficientSymbol",
      "Polynomial-in-the-fiber symbol sum_alpha a_alpha(x) xi^alpha.");
  py::class_<CoefficientSymbol::Term>(csym, "Term")
      .def(py::init([](std::array<int, 2> alpha, const SampledField& coeff,
                       bool complex_ok) {
             return CoefficientSymbol::Term{alpha, coeff, complex_ok};
           }),
           py::arg("alpha"), py::arg("coeff"), py::arg("complex_ok") = false)
      .def_readonly("alpha", &CoefficientSymbol::Term::alpha)
      .def_readonly("coeff", &CoefficientSymbol::Term::coeff)
      .def_readonly("complex_ok", &CoefficientSymbol::Term::complex_ok);
  csym.def(py::init<std::vector<CoefficientSymbol::Term>, bool>(),
           py::arg("terms"), py::arg("principally_real") = true)
      .def_property_readonly("grid", &CoefficientSymbol::grid,
                             py::return_value_policy::copy)
      .def_property_readonly("order", &CoefficientSymbol::order)
      .def_property_readonly("principally_real",
                             &CoefficientSymbol::principally_real)
      .def_property_readonly("terms", &CoefficientSymbol::terms)
      .def("eval",
           [](const CoefficientSymbol& p, std::size_t i,
              const std::vector<double>& xi) {
             auto v = pair_of(xi, "xi");
             return p.eval(i, v.data());
           },
           py::arg("i"), py::arg("xi"),
           "Symbol value at grid node i and fiber point xi.")
      .def("fiber_derivative_slice",
           [](const CoefficientSymbol& p, std::array<int, 2> beta,
              const std::vector<double>& xi) {
             auto v = pair_of(xi, "xi");
             return p.fiber_derivative_slice(beta, v.data());
           },
           py::arg("beta"), py::arg("xi"));

  py::class_<PhasePoint>(m, "PhasePoint")
      .def(py::init([](const std::vector<double>& x,
                       const std::vector<double>& xi) {
             PhasePoint pt;
             pt.x = pair_of(x, "x");
             pt.xi = pair_of(xi, "xi");
             return pt;
           }),
           py::arg("x"), py::arg("xi"))
      .def_readwrite("x", &PhasePoint::x)
      .def_readwrite("xi", &PhasePoint::xi)
      .def("__repr__", [](const PhasePoint& p) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "PhasePoint(x=(%.6g, %.6g), xi=(%.6g, %.6g))", p.x[0],
                      p.x[1], p.xi[0], p.xi[1]);
        return std::string(buf);
      });

  py::class_<HomogeneousSymbol>(m, "HomogeneousSymbol",
                                "Positively homogeneous symbol stored as "
                                "cosphere values.")
      .def_static("from_table", &HomogeneousSymbol::from_table, py::arg("grid"),
                  py::arg("degree"), py::arg("table"), py::arg("n_angles"))
      .def_property_readonly("grid", &HomogeneousSymbol::grid,
                             py::return_value_policy::copy)
      .def_property_readonly("degree", &HomogeneousSymbol::degree)
      .def_property_readonly("angle_count", &HomogeneousSymbol::angle_count)
      .def_property_readonly("coefficient_backed",
                             &HomogeneousSymbol::coefficient_backed)
      .def("direction",
           [](const HomogeneousSymbol& ph, int a) {
             double w[2];
             ph.direction(a, w);
             return py::make_tuple(w[0], w[1]);
           },
           py::arg("a"))
      .def("eval",
           [](const HomogeneousSymbol& ph, const std::vector<double>& x,
              const std::vector<double>& xi) {
             auto xv = pair_of(x, "x");
             auto xiv = pair_of(xi, "xi");
             return ph.eval(xv.data(), xiv.data());
           },
           py::arg("x"), py::arg("xi"))
      .def("angular_profile",
           [](const HomogeneousSymbol& ph, const std::vector<double>& x,
              double theta) {
             auto xv = pair_of(x, "x");
             return ph.angular_profile(xv.data(), theta);
           },
           py::arg("x"), py::arg("theta"))
      .def("hamilton",
           [](const HomogeneousSymbol& ph, const std::vector<double>& x,
              const std::vector<double>& xi) {
             auto xv = pair_of(x, "x");
             auto xiv = pair_of(xi, "xi");
             double dx[2], dxi[2];
             ph.hamilton(xv.data(), xiv.data(), dx, dxi);
             return py::make_tuple(py::make_tuple(dx[0], dx[1]),
                                   py::make_tuple(dxi[0], dxi[1]));
           },
           py::arg("x"), py::arg("xi"),
           "Hamilton field (d_xi p, -d_x p) as a pair of pairs.");

  m.def("principal_symbol", &principal_symbol, py::arg("p"),
        py::arg("n_angles") = 512,
        "Leading homogeneous part tabulated on the cosphere.");
  m.def("characteristic_points", &characteristic_points, py::arg("ph"),
        py::arg("tol"),
        "Tabulated (x, omega) samples with |q| <= tol * max |q|.");
  m.def("null_project", &null_project, py::arg("ph"), py::arg("pt"),
        "Snap the fiber direction to the nearest angular root (2D).");

  py::enum_<SymbolClass::Space>(m, "SymbolSpace")
      .value("zygmund", SymbolClass::Space::zygmund)
      .value("hr_infty", SymbolClass::Space::hr_infty);

  py::class_<SymbolClass>(m, "SymbolClass",
                          "Claimed class of a rough symbol: order m, "
                          "smoothing exponent delta, regularity r.")
      .def(py::init([](double mm, double delta, double r,
                       SymbolClass::Space space) {
             SymbolClass c;
             c.m = mm;
             c.delta = delta;
             c.r = r;
             c.space = space;
             return c;
           }),
           py::arg("m") = 0.0, py::arg("delta") = 1.0, py::arg("r") = 1.0,
           py::arg("space") = SymbolClass::Space::zygmund)
      .def_readwrite("m", &SymbolClass::m)
      .def_readwrite("delta", &SymbolClass::delta)
      .def_readwrite("r", &SymbolClass::r)
      .def_readwrite("space", &SymbolClass::space);

  py::class_<SeminormEntry>(m, "SeminormEntry")
      .def_readonly("alpha", &SeminormEntry::alpha)
      .def_readonly("bucket", &SeminormEntry::bucket)
      .def_readonly("sup_item", &SeminormEntry::sup_item)
      .def_readonly("space_item", &SeminormEntry::space_item);

  py::class_<SymbolClassReport>(m, "SymbolClassReport")
      .def_readonly("cls", &SymbolClassReport::cls)
      .def_readonly("alpha_max", &SymbolClassReport::alpha_max)
      .def_readonly("entries", &SymbolClassReport::entries)
      .def_readonly("verdict", &SymbolClassReport::verdict);

  // ---- paradifferential decomposition ---------------------------------------------

  py::class_<ShellSmoothedSymbol> sss(
      m, "ShellSmoothedSymbol",
      "One half of the shell-smoothing split of a polynomial symbol.");
  py::enum_<ShellSmoothedSymbol::Part>(sss, "Part")
      .value("sharp", ShellSmoothedSymbol::Part::sharp)
      .value("flat", ShellSmoothedSymbol::Part::flat);
  sss.def_property_readonly("grid", &ShellSmoothedSymbol::grid,
                            py::return_value_policy::copy)
      .def_property_readonly("part", &ShellSmoothedSymbol::part)
      .def_property_readonly("delta", &ShellSmoothedSymbol::delta)
      .def_property_readonly("parent_order", &ShellSmoothedSymbol::parent_order)
      .def_property_readonly("shell_count", &ShellSmoothedSymbol::shell_count)
      .def_property_readonly("alphas", &ShellSmoothedSymbol::alphas)
      .def("coeff", &ShellSmoothedSymbol::coeff, py::arg("k"), py::arg("term"),
           py::return_value_policy::copy)
      .def("eval",
           [](const ShellSmoothedSymbol& p, std::size_t i, std::size_t l,
              std::array<int, 2> xi) {
             return p.eval(i, l, xi.data());
           },
           py::arg("i"), py::arg("l"), py::arg("xi"),
           "Value at grid node i and lattice entry l (exact shell tables).")
      .def("fiber_derivative_slice",
           [](const ShellSmoothedSymbol& p, std::array<int, 2> beta,
              const std::vector<double>& xi) {
             auto v = pair_of(xi, "xi");
             return p.fiber_derivative_slice(beta, v.data());
           },
           py::arg("beta"), py::arg("xi"));

  py::class_<BonyDecomposition>(m, "BonyDecomposition")
      .def_readonly("sharp", &BonyDecomposition::sharp)
      .def_readonly("flat", &BonyDecomposition::flat);

  m.def("decompose",
        [](const CoefficientSymbol& p, double delta,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, p.grid(), [&](const DyadicPartition& part) {
            return decompose(p, delta, part);
          });
        },
        py::arg("p"), py::arg("delta") = 1.0,
        py::arg("partition") = std::nullopt,
        "Split p into smoothed and remainder families; sharp + flat "
        "reproduces p to round-off.");

  m.def("quantize",
        py::overload_cast<const CoefficientSymbol&, const SampledField&>(
            &quantize),
        py::arg("p"), py::arg("f"), "Apply the symbol as an operator.");
  m.def("quantize",
        py::overload_cast<const ShellSmoothedSymbol&, const SampledField&>(
            &quantize),
        py::arg("p"), py::arg("f"));
  m.def("quantize_dense",
        static_cast<SampledField (*)(const CoefficientSymbol&,
                                     const SampledField&)>(&quantize_dense),
        py::arg("p"), py::arg("f"),
        "Dense reference quantization (n <= 256 in 1D, 64 in 2D).");
  m.def("quantize_dense",
        static_cast<SampledField (*)(const ShellSmoothedSymbol&,
                                     const SampledField&)>(&quantize_dense),
        py::arg("p"), py::arg("f"));

  m.def("symbol_seminorm",
        [](const CoefficientSymbol& p, const SymbolClass& cls, int alpha_max,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, p.grid(), [&](const DyadicPartition& part) {
            return symbol_seminorm(p, cls, alpha_max, part);
          });
        },
        py::arg("p"), py::arg("cls"), py::arg("alpha_max") = 2,
        py::arg("partition") = std::nullopt,
        "Seminorm table of a polynomial symbol against a claimed class.");
  m.def("symbol_seminorm",
        [](const ShellSmoothedSymbol& p, const SymbolClass& cls, int alpha_max,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, p.grid(), [&](const DyadicPartition& part) {
            return symbol_seminorm(p, cls, alpha_max, part);
          });
        },
        py::arg("p"), py::arg("cls"), py::arg("alpha_max") = 2,
        py::arg("partition") = std::nullopt);

  m.def("colored_noise", &colored_noise, py::arg("grid"), py::arg("order"),
        py::arg("seed"),
        "Seeded random field with spectral coloring <xi>^{-order}, "
        "normalized in H^order.");

  py::class_<MappingProbeReport>(m, "MappingProbeReport")
      .def_readonly("s", &MappingProbeReport::s)
      .def_readonly("m", &MappingProbeReport::m)
      .def_readonly("max_ratio", &MappingProbeReport::max_ratio)
      .def_readonly("q25", &MappingProbeReport::q25)
      .def_readonly("q50", &MappingProbeReport::q50)
      .def_readonly("q75", &MappingProbeReport::q75)
      .def_readonly("ratios", &MappingProbeReport::ratios);

  m.def("mapping_norm_probe",
        static_cast<MappingProbeReport (*)(const CoefficientSymbol&, double,
                                           double, int, std::uint64_t)>(
            &mapping_norm_probe),
        py::arg("p"), py::arg("m"), py::arg("s"), py::arg("trials") = 50,
        py::arg("seed") = 1,
        "Empirical H^{s+m} -> H^s operator norm on colored probes.");

  py::class_<FlatEndpointReport>(m, "FlatEndpointReport")
      .def_readonly("r", &FlatEndpointReport::r)
      .def_readonly("s", &FlatEndpointReport::s)
      .def_readonly("hr_norm", &FlatEndpointReport::hr_norm)
      .def_readonly("max_ratio", &FlatEndpointReport::max_ratio)
      .def_readonly("constant", &FlatEndpointReport::constant)
      .def_readonly("ratios", &FlatEndpointReport::ratios);

  m.def("flat_endpoint_check",
        [](const SampledField& q, double r, double s, int trials,
           std::uint64_t seed, const std::optional<DyadicPartition>& P) {
          return with_partition(P, q.grid(), [&](const DyadicPartition& part) {
            return flat_endpoint_check(q, r, s, trials, seed, part);
          });
        },
        py::arg("q"), py::arg("r"), py::arg("s"), py::arg("trials") = 50,
        py::arg("seed") = 1, py::arg("partition") = std::nullopt,
        "Endpoint probe H^{s-r} -> H^s for the flat part of q(x).");

  // ---- bicharacteristic flows --------------------------------------------------

  py::enum_<FlowStatus>(m, "FlowStatus")
      .value("completed", FlowStatus::completed)
      .value("zero_section", FlowStatus::zero_section)
      .value("blow_up", FlowStatus::blow_up);

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("t", &TrajectorySample::t)
      .def_readonly("pt", &TrajectorySample::pt)
      .def_readonly("symbol_value", &TrajectorySample::symbol_value);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("samples", &Trajectory::samples)
      .def_readonly("status", &Trajectory::status)
      .def_readonly("accepted_steps", &Trajectory::accepted_steps)
      .def_readonly("rejected_steps", &Trajectory::rejected_steps)
      .def("end_time", &Trajectory::end_time)
      .def("at", &Trajectory::at, py::arg("t"),
           "Linear interpolation between accepted steps.");

  py::class_<HamiltonianSystem>(m, "HamiltonianSystem",
                                "Opaque flow field; build via "
                                "mechanical_power_law or hamiltonian_system.")
      .def_readonly("dim", &HamiltonianSystem::dim)
      .def_readonly("homogeneous_fiber", &HamiltonianSystem::homogeneous_fiber);

  m.def("hamiltonian_system", &hamiltonian_system, py::arg("ph"));
  m.def("mechanical_power_law", &mechanical_power_law, py::arg("alpha"),
        "p = |xi|^2/2 - |x|^{1+alpha}/(1+alpha) on the line.");
  m.def("mechanical_power_law_mollified", &mechanical_power_law_mollified,
        py::arg("alpha"), py::arg("eps"));

  py::class_<IntegrateOptions>(m, "IntegrateOptions")
      .def(py::init([](double abs_tol, double initial_step, double min_step,
                       double max_step) {
             IntegrateOptions o;
             o.abs_tol = abs_tol;
             o.initial_step = initial_step;
             o.min_step = min_step;
             o.max_step = max_step;
             return o;
           }),
           py::arg("abs_tol") = 1e-8, py::arg("initial_step") = 1e-3,
           py::arg("min_step") = 1e-6, py::arg("max_step") = 1e-1)
      .def_readwrite("abs_tol", &IntegrateOptions::abs_tol)
      .def_readwrite("initial_step", &IntegrateOptions::initial_step)
      .def_readwrite("min_step", &IntegrateOptions::min_step)
      .def_readwrite("max_step", &IntegrateOptions::max_step);

  m.def("integrate",
        [](const HomogeneousSymbol& ph, const PhasePoint& start, double t_end,
           const std::optional<IntegrateOptions>& opt) {
          return integrate(ph, start, t_end, opt.value_or(IntegrateOptions{}));
        },
        py::arg("ph"), py::arg("start"), py::arg("t_end"),
        py::arg("options") = std::nullopt,
        "Adaptive RK4(5) Hamilton flow; t_end may be negative.");
  m.def("integrate",
        [](const HamiltonianSystem& sys, const PhasePoint& start, double t_end,
           const std::optional<IntegrateOptions>& opt) {
          return integrate(sys, start, t_end, opt.value_or(IntegrateOptions{}));
        },
        py::arg("system"), py::arg("start"), py::arg("t_end"),
        py::arg("options") = std::nullopt);

  py::class_<FunnelSpec>(m, "FunnelSpec")
      .def(py::init([](int ensemble, double jitter, int mollification_levels,
                       double t_end, double abs_tol, std::uint64_t seed,
                       int time_samples) {
             FunnelSpec s;
             s.ensemble = ensemble;
             s.jitter = jitter;
             s.mollification_levels = mollification_levels;
             s.t_end = t_end;
             s.abs_tol = abs_tol;
             s.seed = seed;
             s.time_samples = time_samples;
             return s;
           }),
           py::arg("ensemble") = 64, py::arg("jitter") = 1e-6,
           py::arg("mollification_levels") = 0, py::arg("t_end") = 1.0,
           py::arg("abs_tol") = 1e-8, py::arg("seed") = 1,
           py::arg("time_samples") = 64)
      .def_readwrite("ensemble", &FunnelSpec::ensemble)
      .def_readwrite("jitter", &FunnelSpec::jitter)
      .def_readwrite("mollification_levels", &FunnelSpec::mollification_levels)
      .def_readwrite("t_end", &FunnelSpec::t_end)
      .def_readwrite("abs_tol", &FunnelSpec::abs_tol)
      .def_readwrite("seed", &FunnelSpec::seed)
      .def_readwrite("time_samples", &FunnelSpec::time_samples);

  py::class_<Funnel>(m, "Funnel")
      .def_readonly("times", &Funnel::times)
      .def_readonly("width", &Funnel::width)
      .def_readonly("envelope", &Funnel::envelope)
      .def_readonly("growth_exponent", &Funnel::growth_exponent)
      .def_readonly("members", &Funnel::members)
      .def_readonly("jitter", &Funnel::jitter);

  m.def("funnel_mechanical",
        [](double alpha, const std::optional<FunnelSpec>& spec) {
          return funnel_mechanical(alpha, spec.value_or(FunnelSpec{}));
        },
        py::arg("alpha"), py::arg("spec") = std::nullopt,
        "Jittered-ensemble funnel of the power-law Hamiltonian from rest at "
        "the origin.");
  m.def("power_law_envelope", &power_law_envelope, py::arg("alpha"),
        py::arg("t"),
        "Closed-form escape envelope of x'' = |x|^alpha sign x from rest.");
  m.def("ray_trace_wave", &ray_trace_wave, py::arg("a"), py::arg("x0"),
        py::arg("sign"), py::arg("t_end"), py::arg("abs_tol") = 1e-8,
        "(t, x) samples of dx/dt = sign * sqrt(a(x)).");

  m.def("trajectory_csv", &trajectory_csv, py::arg("traj"), py::arg("dim"));
  m.def("funnel_json", &funnel_json, py::arg("funnel"), py::arg("alpha"),
        py::arg("has_alpha") = true);

  // ---- wavefront estimation ------------------------------------------------------

  py::enum_<WfClass>(m, "WfClass")
      .value("regular", WfClass::regular)
      .value("singular", WfClass::singular)
      .value("indeterminate", WfClass::indeterminate);

  py::class_<MicrolocalProbe>(m, "MicrolocalProbe",
                              "One microlocal look: smooth window, frequency "
                              "cone, dyadic shell range.")
      .def(py::init([](const std::vector<double>& center, int width_cells,
                       const std::vector<double>& direction,
                       double aperture_deg, int j_min, int j_max,
                       double window_sharpness, double margin) {
             MicrolocalProbe p;
             auto c = pair_of(center, "center");
             auto d = pair_of(direction, "direction");
             p.center[0] = c[0];
             p.center[1] = c[1];
             p.width_cells = width_cells;
             p.direction[0] = d[0];
             p.direction[1] = d[1];
             p.aperture_deg = aperture_deg;
             p.j_min = j_min;
             p.j_max = j_max;
             p.window_sharpness = window_sharpness;
             p.margin = margin;
             return p;
           }),
           py::arg("center"), py::arg("width_cells"), py::arg("direction"),
           py::arg("aperture_deg") = 20.0, py::arg("j_min") = 3,
           py::arg("j_max") = 3, py::arg("window_sharpness") = 2.0,
           py::arg("margin") = 0.1)
      .def_property_readonly("center",
                             [](const MicrolocalProbe& p) {
                               return py::make_tuple(p.center[0], p.center[1]);
                             })
      .def_property_readonly("direction",
                             [](const MicrolocalProbe& p) {
                               return py::make_tuple(p.direction[0],
                                                     p.direction[1]);
                             })
      .def_readwrite("width_cells", &MicrolocalProbe::width_cells)
      .def_readwrite("aperture_deg", &MicrolocalProbe::aperture_deg)
      .def_readwrite("j_min", &MicrolocalProbe::j_min)
      .def_readwrite("j_max", &MicrolocalProbe::j_max)
      .def_readwrite("window_sharpness", &MicrolocalProbe::window_sharpness)
      .def_readwrite("margin", &MicrolocalProbe::margin);

  m.def("microlocal_energies",
        [](const SampledField& u, const MicrolocalProbe& probe,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, u.grid(), [&](const DyadicPartition& part) {
            return microlocal_energies(u, probe, part);
          });
        },
        py::arg("u"), py::arg("probe"), py::arg("partition") = std::nullopt,
        "Windowed in-cone spectral energy per shell j_min..j_max.");

  py::class_<ProbeVerdict>(m, "ProbeVerdict")
      .def_readonly("verdict", &ProbeVerdict::verdict)
      .def_readonly("s_star", &ProbeVerdict::s_star)
      .def_readonly("sigma_star", &ProbeVerdict::sigma_star)
      .def_readonly("shells_used", &ProbeVerdict::shells_used)
      .def_readonly("shells", &ProbeVerdict::shells)
      .def_readonly("log2_energy", &ProbeVerdict::log2_energy);

  m.def("wf_classify",
        [](const SampledField& u, double s, const MicrolocalProbe& probe,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, u.grid(), [&](const DyadicPartition& part) {
            return wf_classify(u, s, probe, part);
          });
        },
        py::arg("u"), py::arg("s"), py::arg("probe"),
        py::arg("partition") = std::nullopt,
        "Decay-fit classification of one probe at Sobolev order s.");

  py::class_<ProbeLatticeSpec>(m, "ProbeLatticeSpec")
      .def(py::init([](int stride, int width_cells, int j_min, int j_max,
                       double aperture_deg, double window_sharpness,
                       double margin) {
             ProbeLatticeSpec s;
             s.stride = stride;
             s.width_cells = width_cells;
             s.j_min = j_min;
             s.j_max = j_max;
             s.aperture_deg = aperture_deg;
             s.window_sharpness = window_sharpness;
             s.margin = margin;
             return s;
           }),
           py::arg("stride") = 16, py::arg("width_cells") = 0,
           py::arg("j_min") = 0, py::arg("j_max") = 0,
           py::arg("aperture_deg") = 20.0, py::arg("window_sharpness") = 2.0,
           py::arg("margin") = 0.1)
      .def_readwrite("stride", &ProbeLatticeSpec::stride)
      .def_readwrite("width_cells", &ProbeLatticeSpec::width_cells)
      .def_readwrite("j_min", &ProbeLatticeSpec::j_min)
      .def_readwrite("j_max", &ProbeLatticeSpec::j_max)
      .def_readwrite("aperture_deg", &ProbeLatticeSpec::aperture_deg)
      .def_readwrite("window_sharpness", &ProbeLatticeSpec::window_sharpness)
      .def_readwrite("margin", &ProbeLatticeSpec::margin);

  py::class_<WavefrontEntry>(m, "WavefrontEntry")
      .def_property_readonly("x0",
                             [](const WavefrontEntry& e) {
                               return py::make_tuple(e.x0[0], e.x0[1]);
                             })
      .def_property_readonly("omega",
                             [](const WavefrontEntry& e) {
                               return py::make_tuple(e.omega[0], e.omega[1]);
                             })
      .def_readonly("s_star", &WavefrontEntry::s_star)
      .def_readonly("sigma_star", &WavefrontEntry::sigma_star)
      .def_readonly("verdict", &WavefrontEntry::verdict)
      .def_readonly("shells_used", &WavefrontEntry::shells_used);

  py::class_<WavefrontEstimate>(m, "WavefrontEstimate")
      .def_readonly("order_s", &WavefrontEstimate::order_s)
      .def_readonly("margin", &WavefrontEstimate::margin)
      .def_readonly("stride", &WavefrontEstimate::stride)
      .def_readonly("width_cells", &WavefrontEstimate::width_cells)
      .def_readonly("j_min", &WavefrontEstimate::j_min)
      .def_readonly("j_max", &WavefrontEstimate::j_max)
      .def_readonly("entries", &WavefrontEstimate::entries)
      .def("singular_count", &WavefrontEstimate::singular_count)
      .def("indeterminate_count", &WavefrontEstimate::indeterminate_count);

  m.def("wf_scan",
        [](const SampledField& u, double s,
           const std::optional<ProbeLatticeSpec>& spec,
           const std::optional<DyadicPartition>& P) {
          return with_partition(P, u.grid(), [&](const DyadicPartition& part) {
            return wf_scan(u, s, spec.value_or(ProbeLatticeSpec{}), part);
          });
        },
        py::arg("u"), py::arg("s"), py::arg("spec") = std::nullopt,
        py::arg("partition") = std::nullopt,
        "Classify every (center, direction) on the probe lattice.");

  py::class_<SingularCluster>(m, "SingularCluster")
      .def_readonly("centroid", &SingularCluster::centroid)
      .def_readonly("extent_cells", &SingularCluster::extent_cells)
      .def_readonly("hits", &SingularCluster::hits);

  m.def("singular_clusters", &singular_clusters, py::arg("estimate"),
        py::arg("grid"), py::arg("gap_cells"),
        "Arc clusters of singular probe centers (1D scans, directions "
        "pooled).");
  m.def("wavefront_json", &wavefront_json, py::arg("estimate"));
  m.def("wavefront_svg", &wavefront_svg, py::arg("estimate"), py::arg("grid"));

  // ---- wave lab ----------------------------------------------------------------

  py::class_<WaveInitSpec> wis(m, "WaveInitSpec");
  py::enum_<WaveInitSpec::Kind>(wis, "Kind")
      .value("step", WaveInitSpec::Kind::step)
      .value("cusp", WaveInitSpec::Kind::cusp)
      .value("smooth", WaveInitSpec::Kind::smooth);
  wis.def(py::init<>())
      .def_readwrite("kind", &WaveInitSpec::kind)
      .def_readwrite("gamma", &WaveInitSpec::gamma)
      .def_readwrite("x0", &WaveInitSpec::x0);

  py::class_<WaveCoeffSpec>(m, "WaveCoeffSpec")
      .def(py::init<>())
      .def_readwrite("kind", &WaveCoeffSpec::kind)
      .def_readwrite("r", &WaveCoeffSpec::r)
      .def_readwrite("seed", &WaveCoeffSpec::seed)
      .def_readwrite("a_min", &WaveCoeffSpec::a_min)
      .def_readwrite("amplitude", &WaveCoeffSpec::amplitude);

  py::class_<WaveScenario>(m, "WaveScenario")
      .def(py::init<>())
      .def_readwrite("n", &WaveScenario::n)
      .def_readwrite("coeff", &WaveScenario::coeff)
      .def_readwrite("init", &WaveScenario::init)
      .def_readwrite("T", &WaveScenario::T)
      .def_readwrite("dt", &WaveScenario::dt)
      .def_readwrite("cfl_fraction", &WaveScenario::cfl_fraction)
      .def_readwrite("snapshots", &WaveScenario::snapshots)
      .def_readwrite("probe", &WaveScenario::probe)
      .def_readwrite("query_s", &WaveScenario::query_s)
      .def_readwrite("mismatch_tol_cells", &WaveScenario::mismatch_tol_cells)
      .def_readwrite("confinement_tol_cells",
                     &WaveScenario::confinement_tol_cells);

  m.def("scenario_from_json", &scenario_from_json, py::arg("text"));
  m.def("scenario_to_json", &scenario_to_json, py::arg("scenario"));

  py::class_<WaveInputs>(m, "WaveInputs")
      .def_readonly("g", &WaveInputs::g)
      .def_readonly("a", &WaveInputs::a)
      .def_readonly("u0", &WaveInputs::u0)
      .def_readonly("v0", &WaveInputs::v0)
      .def_readonly("dt", &WaveInputs::dt)
      .def_readonly("steps", &WaveInputs::steps)
      .def_readonly("tau", &WaveInputs::tau);

  m.def("build_inputs", &build_inputs, py::arg("scenario"));

  py::class_<WaveSnapshot>(m, "WaveSnapshot")
      .def_readonly("t", &WaveSnapshot::t)
      .def_readonly("u", &WaveSnapshot::u)
      .def_readonly("ut", &WaveSnapshot::ut)
      .def_readonly("energy", &WaveSnapshot::energy);

  m.def("wave_solve",
        py::overload_cast<const WaveInputs&, int>(&wave_solve),
        py::arg("inputs"), py::arg("snapshots"),
        "Leapfrog wave solve; snapshots at t = k T / snapshots.");
  m.def("wave_solve", py::overload_cast<const WaveScenario&>(&wave_solve),
        py::arg("scenario"));

  py::class_<ClusterRecord>(m, "ClusterRecord")
      .def_readonly("t", &ClusterRecord::t)
      .def_readonly("centroid", &ClusterRecord::centroid)
      .def_readonly("extent_cells", &ClusterRecord::extent_cells)
      .def_readonly("hits", &ClusterRecord::hits)
      .def_readonly("resolved", &ClusterRecord::resolved)
      .def_readonly("mismatch_cells", &ClusterRecord::mismatch_cells);

  py::class_<SnapshotRecord>(m, "SnapshotRecord")
      .def_readonly("t", &SnapshotRecord::t)
      .def_readonly("energy", &SnapshotRecord::energy)
      .def_readonly("ray_plus", &SnapshotRecord::ray_plus)
      .def_readonly("ray_minus", &SnapshotRecord::ray_minus)
      .def_readonly("entries", &SnapshotRecord::entries)
      .def_readonly("singular", &SnapshotRecord::singular)
      .def_readonly("indeterminate", &SnapshotRecord::indeterminate)
      .def_readonly("singular_centers", &SnapshotRecord::singular_centers)
      .def_readonly("clusters", &SnapshotRecord::clusters);

  py::class_<PropagationReport>(m, "PropagationReport")
      .def_readonly("schema", &PropagationReport::schema)
      .def_readonly("scenario", &PropagationReport::scenario)
      .def_readonly("dt", &PropagationReport::dt)
      .def_readonly("steps", &PropagationReport::steps)
      .def_readonly("tau", &PropagationReport::tau)
      .def_readonly("wf_order", &PropagationReport::wf_order)
      .def_readonly("snapshots", &PropagationReport::snapshots)
      .def_readonly("max_mismatch_cells", &PropagationReport::max_mismatch_cells)
      .def_readonly("unresolved_clusters", &PropagationReport::unresolved_clusters)
      .def_readonly("confinement_violations",
                    &PropagationReport::confinement_violations)
      .def_readonly("max_energy_drift", &PropagationReport::max_energy_drift)
      .def_readonly("indeterminate_rate", &PropagationReport::indeterminate_rate)
      .def_readonly("mismatch_pass", &PropagationReport::mismatch_pass)
      .def_readonly("confinement_pass", &PropagationReport::confinement_pass)
      .def("passed", &PropagationReport::passed);

  m.def("experiment_propagation",
        py::overload_cast<const WaveScenario&>(&experiment_propagation),
        py::arg("scenario"),
        "Solve, scan every snapshot, and compare singular clusters against "
        "the null rays.");
  m.def("experiment_propagation",
        py::overload_cast<const WaveScenario&, const WaveInputs&>(
            &experiment_propagation),
        py::arg("scenario"), py::arg("inputs"));

  m.def("report_json", &report_json, py::arg("report"));
  m.def("report_csv", &report_csv, py::arg("report"));
  m.def("report_svg", &report_svg, py::arg("report"));
  m.def("emit_report", &emit_report, py::arg("report"), py::arg("out_dir"),
        py::arg("runtime_seconds"),
        "Write report.json, timeseries.csv, spacetime.svg, run_meta.json.");

  // ---- file formats ---------------------------------------------------------------

  m.def("save_field", &save_field, py::arg("f"), py::arg("path"));
  m.def("load_field", &load_field, py::arg("path"));
  m.def("field_csv", &field_csv, py::arg("f"));
  m.def("save_symbol", &save_symbol, py::arg("p"), py::arg("manifest_path"));
  m.def("load_symbol", &load_symbol, py::arg("manifest_path"));
  m.def("partition_csv", &partition_csv, py::arg("partition"));
}
