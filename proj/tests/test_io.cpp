#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "microlab/field_io.hpp"

using namespace microlab;

namespace {

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "microlab_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("real fields round trip bit-exactly as f64") {
  Grid g = Grid::make(1, 64);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    v[i] = std::sin(3.0 * i * g.spacing()) + 0.125 * i;
  SampledField f = SampledField::from_real(g, v);
  auto path = scratch() / "real.field";
  save_field(f, path.string());
  SampledField r = load_field(path.string());
  CHECK(r.grid() == g);
  CHECK(r.is_real());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.at(i) == f.at(i));
  // Header is one line of JSON announcing the compact dtype.
  std::string raw = slurp(path);
  auto nl = raw.find('\n');
  REQUIRE(nl != std::string::npos);
  nlohmann::json h = nlohmann::json::parse(raw.substr(0, nl));
  CHECK(h["dtype"].get<std::string>() == "f64");
  CHECK(h["dim"].get<int>() == 1);
  CHECK(h["shape"][0].get<int>() == 64);
  CHECK(raw.size() - nl - 1 == g.size() * sizeof(double));
}

TEST_CASE("complex fields round trip bit-exactly as c128") {
  Grid g = Grid::make(1, 32);
  std::vector<std::complex<double>> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    v[i] = std::complex<double>(std::cos(double(i)), std::sin(2.0 * i));
  SampledField f(g, v, false);
  auto path = scratch() / "complex.field";
  save_field(f, path.string());
  SampledField r = load_field(path.string());
  CHECK(r.grid() == g);
  CHECK(!r.is_real());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.at(i) == f.at(i));
}

TEST_CASE("2d fields keep their shape and layout") {
  Grid g = Grid::make(2, 32);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = double(i % 97) / 97.0;
  SampledField f = SampledField::from_real(g, v);
  auto path = scratch() / "plane.field";
  save_field(f, path.string());
  SampledField r = load_field(path.string());
  CHECK(r.grid() == g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.at(i) == f.at(i));
}

TEST_CASE("field csv lists one row per sample") {
  Grid g = Grid::make(1, 16);
  std::vector<double> v(g.size(), 0.0);
  v[3] = 1.5;
  std::string csv = field_csv(SampledField::from_real(g, v));
  CHECK(csv.rfind("i,x,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
  CHECK(csv.find("\n3,") != std::string::npos);
  // Complex fields get re/im columns.
  std::vector<std::complex<double>> w(g.size(), {0.0, 1.0});
  std::string csvc = field_csv(SampledField(g, w, false));
  CHECK(csvc.rfind("i,x,re,im\n", 0) == 0);
}

TEST_CASE("symbol manifests restore every term") {
  Grid g = Grid::make(1, 64);
  std::vector<double> one(g.size(), 1.0), a(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    a[i] = -(2.0 + std::sin(i * g.spacing()));
  std::vector<CoefficientSymbol::Term> terms(2);
  terms[0].alpha = {2, 0};
  terms[0].coeff = SampledField::from_real(g, one);
  terms[1].alpha = {1, 0};
  terms[1].coeff = SampledField::from_real(g, a);
  CoefficientSymbol p(terms);
  auto manifest = scratch() / "wave.symbol";
  save_symbol(p, manifest.string());

  nlohmann::json j = nlohmann::json::parse(slurp(manifest));
  CHECK(j["m"].get<int>() == 2);
  CHECK(j["principally_real"].get<bool>());
  REQUIRE(j["terms"].size() == 2);
  for (const auto& t : j["terms"]) {
    auto sibling = manifest.parent_path() / t["field"].get<std::string>();
    CHECK(std::filesystem::exists(sibling));
  }

  CoefficientSymbol q = load_symbol(manifest.string());
  CHECK(q.order() == 2);
  CHECK(q.principally_real());
  REQUIRE(q.terms().size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(q.terms()[k].alpha == p.terms()[k].alpha);
    CHECK(q.terms()[k].complex_ok == p.terms()[k].complex_ok);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(q.terms()[k].coeff.at(i) == p.terms()[k].coeff.at(i));
  }
  double xi[2] = {1.7, 0.0};
  for (std::size_t i = 0; i < g.size(); i += 7)
    CHECK(std::abs(q.eval(i, xi) - p.eval(i, xi)) <= 1e-15);
}

TEST_CASE("partition csv tabulates shell weights by radius") {
  Grid g = Grid::make(1, 64);
  DyadicPartition P = DyadicPartition::build(g);
  std::string csv = partition_csv(P);
  CHECK(csv.rfind("j,radius,psi\n", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  double wmax = 0.0;
  while (std::getline(in, line)) {
    ++rows;
    int j, r;
    double w;
    char c1, c2;
    std::istringstream ls(line);
    ls >> j >> c1 >> r >> c2 >> w;
    REQUIRE(ls);
    CHECK(j >= 0);
    CHECK(j <= P.top_shell());
    CHECK(r >= 0);
    CHECK(r <= g.n / 2);
    CHECK(w >= -1e-15);
    CHECK(w <= 1.0 + 1e-15);
    wmax = std::max(wmax, w);
  }
  CHECK(rows == (P.top_shell() + 1) * (g.n / 2 + 1));
  CHECK(wmax == doctest::Approx(1.0));
}

TEST_CASE("loaders reject missing or mangled files") {
  auto dir = scratch();
  CHECK_THROWS(load_field((dir / "nope.field").string()));
  CHECK_THROWS(load_symbol((dir / "nope.symbol").string()));
  auto bad = dir / "bad.field";
  std::ofstream(bad) << "this is not a header\n1234";
  CHECK_THROWS(load_field(bad.string()));
}

}  // TEST_SUITE
