#include "microlab/field_io.hpp"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian");

namespace microlab {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void save_field(const SampledField& f, const std::string& path) {
  if (f.grid().n == 0) throw std::invalid_argument("save_field: empty field");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_field: cannot open " + path);
  const Grid& g = f.grid();
  std::string header = "{\"dim\":" + std::to_string(g.dim) + ",\"shape\":[";
  header += std::to_string(g.n);
  if (g.dim == 2) header += "," + std::to_string(g.n);
  header += std::string("],\"dtype\":\"") + (f.is_real() ? "f64" : "c128") +
            "\",\"layout\":\"row-major\"}\n";
  out << header;
  if (f.is_real()) {
    std::vector<double> buf(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] = f.at(i).real();
    out.write(reinterpret_cast<const char*>(buf.data()),
              std::streamsize(buf.size() * sizeof(double)));
  } else {
    out.write(reinterpret_cast<const char*>(f.values().data()),
              std::streamsize(g.size() * 2 * sizeof(double)));
  }
  if (!out) throw std::runtime_error("save_field: write failed: " + path);
}

SampledField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_field: cannot open " + path);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("load_field: missing header: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(header);
  } catch (const std::exception& e) {
    throw std::runtime_error("load_field: bad header in " + path + ": " +
                             e.what());
  }
  int dim = j.at("dim").get<int>();
  auto shape = j.at("shape").get<std::vector<int>>();
  std::string dtype = j.at("dtype").get<std::string>();
  std::string layout = j.value("layout", "row-major");
  if (layout != "row-major")
    throw std::runtime_error("load_field: unsupported layout " + layout);
  if (int(shape.size()) != dim)
    throw std::runtime_error("load_field: shape/dim mismatch in " + path);
  if (dim == 2 && shape[0] != shape[1])
    throw std::runtime_error("load_field: only square 2D grids supported");
  bool real = dtype == "f64";
  if (!real && dtype != "c128")
    throw std::runtime_error("load_field: unknown dtype " + dtype);

  Grid g = Grid::make(dim, shape[0]);
  std::vector<std::complex<double>> values(g.size());
  if (real) {
    std::vector<double> buf(g.size());
    in.read(reinterpret_cast<char*>(buf.data()),
            std::streamsize(buf.size() * sizeof(double)));
    if (std::size_t(in.gcount()) != buf.size() * sizeof(double))
      throw std::runtime_error("load_field: truncated payload: " + path);
    for (std::size_t i = 0; i < g.size(); ++i) values[i] = buf[i];
  } else {
    in.read(reinterpret_cast<char*>(values.data()),
            std::streamsize(g.size() * 2 * sizeof(double)));
    if (std::size_t(in.gcount()) != g.size() * 2 * sizeof(double))
      throw std::runtime_error("load_field: truncated payload: " + path);
  }
  return SampledField(g, std::move(values), real);
}

std::string field_csv(const SampledField& f) {
  if (f.grid().dim != 1)
    throw std::invalid_argument("field_csv: 1D fields only");
  std::string out = f.is_real() ? "i,x,value\n" : "i,x,re,im\n";
  for (int i = 0; i < f.grid().n; ++i) {
    out += std::to_string(i) + "," + fmt(f.coord(i, 0));
    out += "," + fmt(f.at(i).real());
    if (!f.is_real()) out += "," + fmt(f.at(i).imag());
    out += "\n";
  }
  return out;
}

void save_symbol(const CoefficientSymbol& p,
                 const std::string& manifest_path) {
  namespace fs = std::filesystem;
  fs::path mp(manifest_path);
  std::string stem = mp.stem().string();
  nlohmann::ordered_json j;
  j["m"] = p.order();
  j["principally_real"] = p.principally_real();
  j["terms"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < p.terms().size(); ++k) {
    const auto& term = p.terms()[k];
    std::string field_name = stem + "_term" + std::to_string(k) + ".field";
    save_field(term.coeff, (mp.parent_path() / field_name).string());
    nlohmann::ordered_json t;
    t["alpha"] = p.grid().dim == 1
                     ? std::vector<int>{term.alpha[0]}
                     : std::vector<int>{term.alpha[0], term.alpha[1]};
    t["field"] = field_name;
    j["terms"].push_back(std::move(t));
  }
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("save_symbol: cannot open " + manifest_path);
  out << j.dump(2) << "\n";
  if (!out)
    throw std::runtime_error("save_symbol: write failed: " + manifest_path);
}

CoefficientSymbol load_symbol(const std::string& manifest_path) {
  namespace fs = std::filesystem;
  std::ifstream in(manifest_path);
  if (!in)
    throw std::runtime_error("load_symbol: cannot open " + manifest_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error("load_symbol: bad manifest " + manifest_path +
                             ": " + e.what());
  }
  bool principally_real = j.value("principally_real", true);
  fs::path dir = fs::path(manifest_path).parent_path();
  std::vector<CoefficientSymbol::Term> terms;
  for (const auto& t : j.at("terms")) {
    auto alpha = t.at("alpha").get<std::vector<int>>();
    if (alpha.empty() || alpha.size() > 2)
      throw std::runtime_error("load_symbol: alpha must have 1 or 2 entries");
    fs::path fp = t.at("field").get<std::string>();
    if (fp.is_relative()) fp = dir / fp;
    SampledField coeff = load_field(fp.string());
    CoefficientSymbol::Term term;
    term.alpha = {alpha[0], alpha.size() > 1 ? alpha[1] : 0};
    term.complex_ok = !coeff.is_real();
    term.coeff = std::move(coeff);
    terms.push_back(std::move(term));
  }
  CoefficientSymbol p(std::move(terms), principally_real);
  if (j.contains("m") && j["m"].get<int>() != p.order())
    throw std::runtime_error("load_symbol: declared order m=" +
                             std::to_string(j["m"].get<int>()) +
                             " but terms give " + std::to_string(p.order()));
  return p;
}

std::string partition_csv(const DyadicPartition& P) {
  const Grid& g = P.grid();
  std::string out = "j,radius,psi\n";
  if (g.dim == 1) {
    for (int j = 0; j <= P.top_shell(); ++j)
      for (int r = 0; r <= g.n / 2; ++r) {
        std::size_t i = r < g.n / 2 ? std::size_t(r) : std::size_t(g.n / 2);
        out += std::to_string(j) + "," + std::to_string(r) + "," +
               fmt(P.shell(j, i)) + "\n";
      }
  } else {
    // One sample per axis-aligned radius (frequency (r, 0)).
    for (int j = 0; j <= P.top_shell(); ++j)
      for (int r = 0; r <= g.n / 2; ++r) {
        std::size_t row = r < g.n / 2 ? std::size_t(r) : std::size_t(g.n / 2);
        out += std::to_string(j) + "," + std::to_string(r) + "," +
               fmt(P.shell(j, row * std::size_t(g.n))) + "\n";
      }
  }
  return out;
}

}  // namespace microlab
