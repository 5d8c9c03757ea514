// Command-line front end.  Field and symbol files use the field_io formats;
// JSON reports are rendered by the library so the CLI stays a thin shell.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

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

using namespace microlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write failed: " + path);
}

SynthKind parse_kind(const std::string& s) {
  if (s == "lacunary") return SynthKind::lacunary;
  if (s == "piecewise_polynomial" || s == "spline")
    return SynthKind::piecewise_polynomial;
  if (s == "mollified_noise" || s == "noise") return SynthKind::mollified_noise;
  throw CLI::ValidationError("--kind", "unknown synthesis kind '" + s + "'");
}

// Trigonometric-interpolant refinement to the doubled grid: spectral zero
// padding, with Nyquist coefficients split between +-N/2 so real fields
// stay real.
SampledField refine2(const SampledField& f) {
  const Grid& g = f.grid();
  Spectrum src = forward_transform(f);
  Grid g2 = Grid::make(g.dim, 2 * g.n);
  Spectrum dst = Spectrum::zeros(g2);
  auto axis_index = [&](int xi) {
    return std::size_t(xi >= 0 ? xi : 2 * g.n + xi);
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    int xi[2];
    src.freq_of(i, xi);
    std::complex<double> c = src.coeff()[i];
    if (c == std::complex<double>(0.0, 0.0)) continue;
    int images0[2] = {xi[0], xi[0]};
    int n0 = 1;
    if (xi[0] == -g.n / 2) {
      images0[1] = g.n / 2;
      n0 = 2;
    }
    int images1[2] = {xi[1], xi[1]};
    int n1 = 1;
    if (g.dim == 2 && xi[1] == -g.n / 2) {
      images1[1] = g.n / 2;
      n1 = 2;
    }
    std::complex<double> share = c / double(n0 * n1);
    for (int a = 0; a < n0; ++a)
      for (int b = 0; b < n1; ++b) {
        std::size_t idx = axis_index(images0[a]);
        if (g.dim == 2) idx = idx * std::size_t(2 * g.n) + axis_index(images1[b]);
        dst.coeff()[idx] += share;
      }
  }
  SampledField out = inverse_transform(dst);
  if (f.is_real()) out.set_real_tag(true);
  return out;
}

CoefficientSymbol refine_symbol(const CoefficientSymbol& p) {
  std::vector<CoefficientSymbol::Term> terms;
  for (const auto& t : p.terms())
    terms.push_back({t.alpha, refine2(t.coeff), t.complex_ok});
  return CoefficientSymbol(std::move(terms), p.principally_real());
}

std::string json_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int cmd_partition_check(int n, int dim, double sharpness,
                        const std::string& csv_out) {
  Grid g = Grid::make(dim, n);
  DyadicPartition P = DyadicPartition::build(g, sharpness);
  int J = P.top_shell();
  int failures = 0;
  auto complain = [&](const char* what, int j, double radius, double value) {
    ++failures;
    if (failures <= 10)
      std::fprintf(stderr, "invariant violated: %s (shell %d, |xi|=%g, value %.3e)\n",
                   what, j, radius, value);
  };
  Spectrum probe = Spectrum::zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double rho = probe.radius_of(i);
    double sum = 0.0;
    for (int j = 0; j <= J; ++j) {
      double w = P.shell(j, i);
      sum += w;
      if (w < 0.0 || w > 1.0 + 1e-12) complain("weight outside [0,1]", j, rho, w);
      if (j == 0 && rho > 2.0 && w != 0.0)
        complain("low block leaking above |xi|=2", j, rho, w);
      if (j > 0 && j < J &&
          (rho < std::exp2(j - 1) - 1e-9 || rho > std::exp2(j + 1) + 1e-9) &&
          w != 0.0)
        complain("shell support outside [2^{j-1}, 2^{j+1}]", j, rho, w);
      if (j == J && rho < std::exp2(J - 1) - 1e-9 && w != 0.0)
        complain("top shell leaking below 2^{J-1}", j, rho, w);
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      complain("partition of unity", -1, rho, sum - 1.0);
  }
  if (!csv_out.empty()) spit(csv_out, partition_csv(P));
  if (failures) {
    std::fprintf(stderr, "partition-check: %d invariant failures (n=%d, dim=%d, %d shells)\n",
                 failures, n, dim, J + 1);
    return 1;
  }
  std::printf("partition-check: ok (n=%d, dim=%d, shells 0..%d, sharpness %g)\n",
              n, dim, J, sharpness);
  return 0;
}

int cmd_probe_bound(const std::string& symbol_path, double s, double r,
                    int trials, std::uint64_t seed, const std::string& out) {
  CoefficientSymbol p = load_symbol(symbol_path);
  double m = p.order();
  MappingProbeReport base = mapping_norm_probe(p, m, s, trials, seed);
  CoefficientSymbol p2 = refine_symbol(p);
  MappingProbeReport fine = mapping_norm_probe(p2, m, s, trials, seed);

  std::ostringstream j;
  j << "{\n"
    << "  \"s\": " << json_num(s) << ",\n"
    << "  \"r\": " << json_num(r) << ",\n"
    << "  \"m\": " << json_num(m) << ",\n"
    << "  \"trials\": " << trials << ",\n"
    << "  \"seed\": " << seed << ",\n"
    << "  \"max_ratio\": " << json_num(base.max_ratio) << ",\n"
    << "  \"quantiles\": {\"q25\": " << json_num(base.q25)
    << ", \"q50\": " << json_num(base.q50)
    << ", \"q75\": " << json_num(base.q75) << "},\n"
    << "  \"refinement_pairs\": [[" << p.grid().n << ", "
    << json_num(base.max_ratio) << "], [" << p2.grid().n << ", "
    << json_num(fine.max_ratio) << "]]\n"
    << "}\n";
  if (out.empty())
    std::fputs(j.str().c_str(), stdout);
  else
    spit(out, j.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"microlocal analysis toolkit"};
  app.require_subcommand(1);

  // partition-check
  auto* pc = app.add_subcommand("partition-check",
                                "verify the dyadic partition invariants");
  int pc_n = 1024, pc_dim = 1;
  double pc_sharp = 4.0;
  std::string pc_csv;
  pc->add_option("--n", pc_n, "grid size per axis (power of two >= 16)");
  pc->add_option("--dim", pc_dim, "dimension (1 or 2)")->check(CLI::Range(1, 2));
  pc->add_option("--sharpness", pc_sharp, "profile ramp steepness");
  pc->add_option("-o,--csv", pc_csv, "dump the (j, |xi|, psi_j) table as CSV");

  // norm
  auto* nm = app.add_subcommand("norm", "print a function-space norm of a field");
  std::string nm_space, nm_file;
  double nm_order = 1.0;
  nm->add_option("--space", nm_space, "zygmund | sobolev | bmo | hrinf")
      ->required();
  nm->add_option("--order", nm_order, "space order r (unused for bmo)");
  nm->add_option("file", nm_file, "field file")->required();

  // synth
  auto* sy = app.add_subcommand("synth", "synthesize a field of prescribed regularity");
  std::string sy_kind = "lacunary", sy_out;
  double sy_r = 1.0, sy_scale = 1.0;
  std::uint64_t sy_seed = 1;
  int sy_n = 1024, sy_dim = 1;
  sy->add_option("--kind", sy_kind,
                 "lacunary | piecewise_polynomial | mollified_noise");
  sy->add_option("--r", sy_r, "regularity order in (0, 4]");
  sy->add_option("--seed", sy_seed, "RNG seed");
  sy->add_option("--scale", sy_scale, "target norm scale");
  sy->add_option("--n", sy_n, "grid size per axis");
  sy->add_option("--dim", sy_dim, "dimension (1 or 2)")->check(CLI::Range(1, 2));
  sy->add_option("-o,--output", sy_out, "output field file")->required();

  // decompose
  auto* de = app.add_subcommand(
      "decompose", "split a symbol into smoothed and remainder families");
  std::string de_symbol, de_prefix;
  double de_delta = 1.0;
  de->add_option("symbol", de_symbol, "symbol manifest")->required();
  de->add_option("--delta", de_delta, "smoothing exponent in (0, 1]");
  de->add_option("-o,--output", de_prefix, "output prefix")->required();

  // quantize
  auto* qu = app.add_subcommand("quantize", "apply a symbol as an operator");
  std::string qu_symbol, qu_field, qu_out;
  qu->add_option("symbol", qu_symbol, "symbol manifest")->required();
  qu->add_option("field", qu_field, "input field file")->required();
  qu->add_option("-o,--output", qu_out, "output field file")->required();

  // probe-bound
  auto* pb = app.add_subcommand(
      "probe-bound", "empirical Sobolev mapping bound of a quantized symbol");
  std::string pb_symbol, pb_out;
  double pb_s = 0.0, pb_r = 1.0;
  int pb_trials = 50;
  std::uint64_t pb_seed = 1;
  pb->add_option("symbol", pb_symbol, "symbol manifest")->required();
  pb->add_option("--s", pb_s, "target space order")->required();
  pb->add_option("--r", pb_r, "coefficient regularity (report echo)");
  pb->add_option("--trials", pb_trials, "number of colored probes")
      ->check(CLI::Range(10, 100000));
  pb->add_option("--seed", pb_seed, "RNG seed");
  pb->add_option("-o,--output", pb_out, "report path (default stdout)");

  // flow
  auto* fl = app.add_subcommand("flow",
                                "integrate the Hamilton flow of a symbol's "
                                "leading part");
  std::string fl_symbol, fl_out;
  std::vector<double> fl_start;
  double fl_t = 1.0, fl_tol = 1e-8;
  fl->add_option("symbol", fl_symbol, "symbol manifest")->required();
  fl->add_option("--start", fl_start,
                 "phase-space start x...,xi... (2*dim numbers)")
      ->required()
      ->delimiter(',');
  fl->add_option("--t", fl_t, "integration time (may be negative)");
  fl->add_option("--tol", fl_tol, "absolute step tolerance");
  fl->add_option("-o,--output", fl_out, "trajectory CSV path")->required();

  // funnel
  auto* fu = app.add_subcommand(
      "funnel", "non-uniqueness funnel of a low-regularity Hamiltonian");
  std::string fu_family = "mechanical", fu_out;
  double fu_alpha = 0.5, fu_jitter = 1e-6, fu_t = 1.0;
  int fu_ensemble = 64, fu_levels = 0, fu_samples = 64;
  std::uint64_t fu_seed = 1;
  fu->add_option("--family", fu_family, "only 'mechanical' is available");
  fu->add_option("--alpha", fu_alpha, "force exponent in (0, 1)");
  fu->add_option("--jitter", fu_jitter, "fiber jitter ball radius");
  fu->add_option("--t", fu_t, "time horizon");
  fu->add_option("--ensemble", fu_ensemble, "jittered member count");
  fu->add_option("--levels", fu_levels, "mollified companion levels");
  fu->add_option("--samples", fu_samples, "time samples recorded");
  fu->add_option("--seed", fu_seed, "RNG seed");
  fu->add_option("-o,--output", fu_out, "funnel JSON path")->required();

  // wavefront
  auto* wf = app.add_subcommand("wavefront",
                                "scan a field for microlocal singularities");
  std::string wf_field, wf_out, wf_svg;
  double wf_s = 1.0, wf_margin = 0.1, wf_aperture = 20.0, wf_sharp = 2.0;
  int wf_stride = 16, wf_width = 0, wf_jmin = 0, wf_jmax = 0;
  wf->add_option("field", wf_field, "field file")->required();
  wf->add_option("--s", wf_s, "query Sobolev order");
  wf->add_option("--stride", wf_stride, "probe center spacing in cells");
  wf->add_option("--width", wf_width, "window width in cells (0: n/32)");
  wf->add_option("--jmin", wf_jmin, "lowest shell in the fit (0: auto)");
  wf->add_option("--jmax", wf_jmax, "highest shell in the fit (0: auto)");
  wf->add_option("--margin", wf_margin, "classification slack in s");
  wf->add_option("--aperture", wf_aperture, "cone half-angle, degrees (2D)");
  wf->add_option("--sharpness", wf_sharp, "window profile steepness");
  wf->add_option("-o,--output", wf_out, "estimate JSON path")->required();
  wf->add_option("--svg", wf_svg, "optional s* heatmap SVG path");

  // wave-experiment
  auto* we = app.add_subcommand(
      "wave-experiment", "propagation experiment; exit 0 iff it passes");
  std::string we_config, we_out;
  we->add_option("config", we_config, "scenario JSON")->required();
  we->add_option("-o,--output", we_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(pc))
      return cmd_partition_check(pc_n, pc_dim, pc_sharp, pc_csv);

    if (app.got_subcommand(nm)) {
      SampledField f = load_field(nm_file);
      double value;
      if (nm_space == "zygmund") {
        DyadicPartition P = DyadicPartition::build(f.grid());
        value = zygmund_norm(f, nm_order, P);
      } else if (nm_space == "sobolev") {
        value = sobolev_norm(f, nm_order);
      } else if (nm_space == "bmo") {
        value = bmo_norm(f);
      } else if (nm_space == "hrinf") {
        value = hr_infty_norm(f, nm_order);
      } else {
        throw CLI::ValidationError("--space", "unknown space '" + nm_space + "'");
      }
      std::printf("%.12g\n", value);
      return 0;
    }

    if (app.got_subcommand(sy)) {
      Grid g = Grid::make(sy_dim, sy_n);
      DyadicPartition P = DyadicPartition::build(g);
      RegularityBudget b;
      b.r = sy_r;
      b.scale = sy_scale;
      b.seed = sy_seed;
      b.kind = parse_kind(sy_kind);
      save_field(synthesize_regular(g, b, P), sy_out);
      return 0;
    }

    if (app.got_subcommand(de)) {
      CoefficientSymbol p = load_symbol(de_symbol);
      DyadicPartition P = DyadicPartition::build(p.grid());
      BonyDecomposition d = decompose(p, de_delta, P);
      // One plain-symbol manifest per shell and side; the shell weight
      // psi_k itself is reconstructible from the partition, so the files
      // carry exactly the smoothed / remainder coefficient data.
      std::ostringstream index;
      index << "{\n  \"delta\": " << json_num(de_delta)
            << ",\n  \"order\": " << p.order() << ",\n  \"shells\": "
            << d.sharp.shell_count() << ",\n  \"sharp\": [";
      for (auto side : {ShellSmoothedSymbol::Part::sharp,
                        ShellSmoothedSymbol::Part::flat}) {
        const ShellSmoothedSymbol& half =
            side == ShellSmoothedSymbol::Part::sharp ? d.sharp : d.flat;
        const char* tag =
            side == ShellSmoothedSymbol::Part::sharp ? "sharp" : "flat";
        for (int k = 0; k < half.shell_count(); ++k) {
          std::vector<CoefficientSymbol::Term> terms;
          for (std::size_t t = 0; t < half.alphas().size(); ++t)
            terms.push_back({half.alphas()[t], half.coeff(k, int(t)),
                             p.terms()[t].complex_ok});
          std::string name =
              de_prefix + "_" + tag + "_k" + std::to_string(k) + ".json";
          save_symbol(CoefficientSymbol(std::move(terms), p.principally_real()),
                      name);
          if (k) index << ", ";
          index << "\"" << name << "\"";
        }
        if (side == ShellSmoothedSymbol::Part::sharp)
          index << "],\n  \"flat\": [";
      }
      index << "]\n}\n";
      spit(de_prefix + ".json", index.str());
      return 0;
    }

    if (app.got_subcommand(qu)) {
      CoefficientSymbol p = load_symbol(qu_symbol);
      SampledField f = load_field(qu_field);
      save_field(quantize(p, f), qu_out);
      return 0;
    }

    if (app.got_subcommand(pb))
      return cmd_probe_bound(pb_symbol, pb_s, pb_r, pb_trials, pb_seed, pb_out);

    if (app.got_subcommand(fl)) {
      CoefficientSymbol p = load_symbol(fl_symbol);
      int dim = p.grid().dim;
      if (int(fl_start.size()) != 2 * dim)
        throw CLI::ValidationError(
            "--start", "expected " + std::to_string(2 * dim) + " numbers");
      PhasePoint start{};
      for (int k = 0; k < dim; ++k) {
        start.x[k] = fl_start[std::size_t(k)];
        start.xi[k] = fl_start[std::size_t(dim + k)];
      }
      IntegrateOptions opt;
      opt.abs_tol = fl_tol;
      Trajectory traj = integrate(principal_symbol(p, p.order()), start, fl_t, opt);
      spit(fl_out, trajectory_csv(traj, dim));
      if (traj.status != FlowStatus::completed)
        std::fprintf(stderr, "flow: stopped early (%s) at t=%.6g\n",
                     traj.status == FlowStatus::zero_section ? "zero section"
                                                             : "blow-up",
                     traj.end_time());
      return 0;
    }

    if (app.got_subcommand(fu)) {
      if (fu_family != "mechanical")
        throw CLI::ValidationError("--family",
                                   "unknown family '" + fu_family + "'");
      FunnelSpec spec;
      spec.ensemble = fu_ensemble;
      spec.jitter = fu_jitter;
      spec.mollification_levels = fu_levels;
      spec.t_end = fu_t;
      spec.seed = fu_seed;
      spec.time_samples = fu_samples;
      Funnel f = funnel_mechanical(fu_alpha, spec);
      spit(fu_out, funnel_json(f, fu_alpha, true));
      return 0;
    }

    if (app.got_subcommand(wf)) {
      SampledField f = load_field(wf_field);
      DyadicPartition P = DyadicPartition::build(f.grid());
      ProbeLatticeSpec spec;
      spec.stride = wf_stride;
      spec.width_cells = wf_width;
      spec.j_min = wf_jmin;
      spec.j_max = wf_jmax;
      spec.margin = wf_margin;
      spec.aperture_deg = wf_aperture;
      spec.window_sharpness = wf_sharp;
      WavefrontEstimate est = wf_scan(f, wf_s, spec, P);
      spit(wf_out, wavefront_json(est));
      if (!wf_svg.empty()) spit(wf_svg, wavefront_svg(est, f.grid()));
      std::printf("wavefront: %zu probes, %zu singular, %zu indeterminate\n",
                  est.entries.size(), est.singular_count(),
                  est.indeterminate_count());
      return 0;
    }

    if (app.got_subcommand(we)) {
      WaveScenario sc = scenario_from_json(slurp(we_config));
      auto t0 = std::chrono::steady_clock::now();
      PropagationReport rep = experiment_propagation(sc);
      auto t1 = std::chrono::steady_clock::now();
      double secs = std::chrono::duration<double>(t1 - t0).count();
      emit_report(rep, we_out, secs);
      std::printf(
          "wave-experiment: mismatch %.2f cells, %d confinement violations, "
          "%d unresolved clusters, %s (%.1fs)\n",
          rep.max_mismatch_cells, rep.confinement_violations,
          rep.unresolved_clusters, rep.passed() ? "pass" : "FAIL", secs);
      return rep.passed() ? 0 : 2;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "microlab: %s\n", e.what());
    return 1;
  }
  return 0;
}
