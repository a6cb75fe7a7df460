#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "locuslab/cheb_family.hpp"
#include "locuslab/cli.hpp"
#include "locuslab/locus_solver.hpp"

using namespace locuslab;
using namespace locuslab::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kData = LOCUSLAB_TEST_DATA;

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("locuslab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int config_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string config_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseComplex, Grammar) {
  EXPECT_EQ(parse_complex("1"), Complex(1.0, 0.0));
  EXPECT_EQ(parse_complex("1+0i"), Complex(1.0, 0.0));
  EXPECT_EQ(parse_complex("1+2i"), Complex(1.0, 2.0));
  EXPECT_EQ(parse_complex("1-2i"), Complex(1.0, -2.0));
  EXPECT_EQ(parse_complex("-2.5i"), Complex(0.0, -2.5));
  EXPECT_EQ(parse_complex("i"), Complex(0.0, 1.0));
  EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(parse_complex(" 3 + 4i "), Complex(3.0, 4.0));
  EXPECT_EQ(parse_complex("1.5e-3-2.5E+1i"), Complex(1.5e-3, -25.0));
  for (const char* bad : {"", "1+", "abc", "1+2", "1+2j", "2ii", "1 2i"}) EXPECT_THROW(parse_complex(bad, 7), ConfigError) << bad;
  try {
    parse_complex("1+xi", 7);
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 7);
  }
}

TEST(ParseConfig, ChebyshevFile) {
  const RunConfig cfg = parse_config_file(kData / "chebyshev.cfg");
  ASSERT_TRUE(cfg.symbol.has_value());
  EXPECT_EQ(cfg.symbol->k(), 1);
  EXPECT_EQ(cfg.symbol->h(), 2);
  EXPECT_EQ(cfg.symbol->n(), 1);
  EXPECT_EQ(cfg.symbol->c(-1), Complex(1.0));
  EXPECT_EQ(cfg.symbol->c(2), Complex(1.0));
  EXPECT_EQ(cfg.symbol->c(0), Complex(0.0));
  EXPECT_EQ(cfg.symbol->c(1), Complex(0.0));
  EXPECT_EQ(cfg.ms, (std::vector<int>{4, 8}));
}

TEST(ParseConfig, StarFile) {
  const RunConfig cfg = parse_config_file(kData / "star.cfg");
  ASSERT_TRUE(cfg.symbol.has_value());
  EXPECT_EQ(cfg.symbol->coeffs(), star_symbol(2).coeffs());
  EXPECT_EQ(cfg.symbol->n(), 1);
}

TEST(ParseConfig, MissingLeadingCoefficientNamesKey) {
  EXPECT_THROW(parse_config_file(kData / "missing_ch.cfg"), ConfigError);
  const std::string msg = config_error("k = 1\nh = 2\nn = 1\nc[-1] = 1\n");
  EXPECT_NE(msg.find("c[2]"), std::string::npos) << msg;
  const std::string low = config_error("k = 1\nh = 2\nn = 1\nc[2] = 1\n");
  EXPECT_NE(low.find("c[-1]"), std::string::npos) << low;
  EXPECT_NE(config_error("k = 1\nh = 2\nn = 1\nc[-1] = 0\nc[2] = 1\n").find("non-zero"), std::string::npos);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  EXPECT_EQ(config_error_line("k = 1\nh = 2\nk = 1\n"), 3);
  EXPECT_NE(config_error("k = 1\nh = 2\nk = 1\n").find("duplicate"), std::string::npos);
  EXPECT_EQ(config_error_line("k = 1\nh = 2\nn = 1\nc[-1] = 1+xi\nc[2] = 1\n"), 4);
  EXPECT_EQ(config_error_line("# comment\nbogus = 3\n"), 2);
  EXPECT_EQ(config_error_line("k = 1\nno equals sign\n"), 2);
  EXPECT_EQ(config_error_line("k = 1\nh = 2\nn = 1\nc[-1] = 1\nc[2] = 1\nc[5] = 1\n"), 6);
  EXPECT_EQ(config_error_line("m = 3, 0\n"), 1);
}

TEST(ParseConfig, OptionsAndTolerances) {
  const RunConfig cfg = parse(
      "k = 1\nh = 1\nn = 0\nc[-1] = 1\nc[1] = 1   # tridiagonal\nm = 3, 5\nseed = 7\n"
      "tol.rank = 1e-9\ntol.max_digits = 300\ngrid.nx = 11\ngrid.re_min = -1.5\nresolution = 64\nd = 3\n");
  EXPECT_EQ(cfg.ms, (std::vector<int>{3, 5}));
  EXPECT_EQ(cfg.tol.seed, 7u);
  EXPECT_EQ(cfg.tol.rank, 1e-9);
  EXPECT_EQ(cfg.tol.max_digits, 300u);
  EXPECT_EQ(cfg.grid.nx, 11);
  EXPECT_EQ(cfg.grid.re_min, -1.5);
  EXPECT_EQ(cfg.resolution, 64);
  EXPECT_EQ(cfg.d, 3);
  const RunConfig bare = parse("d = 2\n");
  EXPECT_FALSE(bare.symbol.has_value());
  EXPECT_EQ(bare.tol.seed, 42u);
}

TEST(Json, LocusRoundTripIsBitExact) {
  const auto sol = solve_locus(star_symbol(2), 4);
  const EigenLocus& full = sol.full;
  const std::string text = locus_to_json(full).dump(2);
  const EigenLocus back = locus_from_json(nlohmann::json::parse(text));
  ASSERT_EQ(back.points.size(), full.points.size());
  EXPECT_EQ(back.m, full.m);
  EXPECT_EQ(back.kind, full.kind);
  for (std::size_t i = 0; i < full.points.size(); ++i) {
    const auto& a = full.points[i];
    const auto& b = back.points[i];
    ASSERT_EQ(a.coords.size(), b.coords.size());
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
      EXPECT_EQ(a.coords[j].real(), b.coords[j].real());
      EXPECT_EQ(a.coords[j].imag(), b.coords[j].imag());
    }
    EXPECT_EQ(a.multiplicity, b.multiplicity);
    EXPECT_EQ(a.det_residuals, b.det_residuals);
    EXPECT_EQ(a.sigma_ratio, b.sigma_ratio);
  }
  EXPECT_EQ(locus_to_json(back).dump(2), text);

  LocusPoint nan_point;
  nan_point.coords = {Complex(0.1, 0.2)};
  const LocusPoint nb = point_from_json(point_to_json(nan_point));
  EXPECT_TRUE(std::isnan(nb.sigma_ratio));
  EXPECT_TRUE(std::isnan(nb.minor_residual));
}

TEST(RunCommand, LocusTridiagonalCsv) {
  const fs::path out = fresh_dir("locus_tri");
  RunConfig cfg = parse_config_file(kData / "tridiagonal.cfg");
  std::ostringstream log;
  ASSERT_EQ(run_command("locus", cfg, out, log), 0) << log.str();
  const auto rows = csv_rows(out / "locus_m3.csv");
  ASSERT_EQ(rows.size(), 3u);
  std::vector<double> vals;
  for (const auto& r : rows) {
    vals.push_back(std::stod(r.at(2)));
    EXPECT_EQ(std::stod(r.at(3)), 0.0);
    EXPECT_EQ(r.at(1), "1");
  }
  std::sort(vals.begin(), vals.end());
  EXPECT_NEAR(vals[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(vals[1], 0.0, 1e-12);
  EXPECT_NEAR(vals[2], std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(fs::exists(out / "locus_m3.json"));
  EXPECT_TRUE(fs::exists(out / "locus_m3.svg"));
  const auto defects = nlohmann::json::parse(slurp(out / "defects.json"));
  EXPECT_TRUE(defects.at("defects").empty());
}

TEST(RunCommand, OutputsAreByteDeterministic) {
  RunConfig cfg = parse_config_file(kData / "chebyshev.cfg");
  cfg.ms = {3};
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  std::ostringstream log;
  ASSERT_EQ(run_command("locus", cfg, a, log), 0);
  ASSERT_EQ(run_command("locus", cfg, b, log), 0);
  for (const char* f : {"locus_m3.csv", "locus_m3.json", "locus_m3.svg", "defects.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  ASSERT_EQ(run_command("measure", cfg, a, log), 0);
  ASSERT_EQ(run_command("measure", cfg, b, log), 0);
  EXPECT_EQ(slurp(a / "measure_m3.csv"), slurp(b / "measure_m3.csv"));
}

TEST(RunCommand, HypocycloidHasFiveCusps) {
  const fs::path out = fresh_dir("hypo");
  RunConfig cfg;
  cfg.d = 2;
  std::ostringstream log;
  ASSERT_EQ(run_command("hypocycloid", cfg, out, log), 0);
  std::vector<Complex> curve;
  for (const auto& r : csv_rows(out / "hypocycloid.csv")) curve.emplace_back(std::stod(r.at(2)), std::stod(r.at(3)));
  ASSERT_EQ(curve.size(), 2048u);
  EXPECT_EQ(count_cusps(curve), 5);
  std::vector<Complex> formula;
  for (const auto& r : csv_rows(out / "hypocycloid_formula.csv")) formula.emplace_back(std::stod(r.at(2)), std::stod(r.at(3)));
  EXPECT_NEAR(std::abs(formula.at(0) - Complex(7.0)), 0.0, 1e-12);
  const std::string svg = slurp(out / "hypocycloid.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
}

TEST(RunCommand, VerifyChebyshev) {
  const fs::path out = fresh_dir("verify");
  RunConfig cfg = parse_config_file(kData / "chebyshev.cfg");
  cfg.resolution = 48;
  std::ostringstream log;
  ASSERT_EQ(run_command("verify", cfg, out, log), 0) << log.str();
  const auto rep = nlohmann::json::parse(slurp(out / "report.json"));
  ASSERT_EQ(rep.at("records").size(), 2u);
  EXPECT_EQ(rep.at("records")[0].at("m"), 4);
  EXPECT_EQ(rep.at("records")[1].at("total_multiplicity"), 36);
  EXPECT_EQ(rep.at("verdicts").at("conjugate_symmetry").get<std::string>().rfind("supported", 0), 0u);
}

TEST(RunCommand, BasisAndCregion) {
  const fs::path out = fresh_dir("basis");
  RunConfig cfg = parse_config_file(kData / "chebyshev.cfg");
  cfg.ms = {2};
  cfg.grid.nx = cfg.grid.ny = 21;
  std::ostringstream log;
  ASSERT_EQ(run_command("basis", cfg, out, log), 0) << log.str();
  EXPECT_TRUE(nlohmann::json::parse(slurp(out / "triangularity_m2.json")).at("pass").get<bool>());
  EXPECT_NE(slurp(out / "basis_m2.txt").find("I=(1,3)"), std::string::npos);
  ASSERT_EQ(run_command("cregion", cfg, out, log), 0) << log.str();
  EXPECT_EQ(csv_rows(out / "cregion.csv").size(), 21u * 21u);
}

TEST(RunCommand, ExitCodes) {
  std::ostringstream log;
  const fs::path out = fresh_dir("codes");
  EXPECT_EQ(run_command("locus", RunConfig{}, out, log), 2);
  EXPECT_FALSE(nlohmann::json::parse(slurp(out / "defects.json")).at("input_error").get<std::string>().empty());
  EXPECT_EQ(run_command("frobnicate", RunConfig{}, out, log), 2);

  RunConfig big = parse_config_file(kData / "chebyshev.cfg");
  big.ms = {14};
  EXPECT_EQ(run_command("basis", big, out, log), 2);

  RunConfig far = parse_config_file(kData / "chebyshev.cfg");
  far.grid = ScanGrid{20.0, 21.0, 20.0, 21.0, 5, 5};
  EXPECT_EQ(run_command("cregion", far, out, log), 1);
  EXPECT_FALSE(nlohmann::json::parse(slurp(out / "defects.json")).at("defects").empty());

  EXPECT_EQ(report_input_error("locus", out, "bad config", log), 2);
  EXPECT_EQ(nlohmann::json::parse(slurp(out / "defects.json")).at("input_error"), "bad config");
}

TEST(OutputDir, Precedence) {
  ::setenv("LOCUSLAB_OUT", "/tmp/from_env", 1);
  EXPECT_EQ(output_dir("explicit"), fs::path("explicit"));
  EXPECT_EQ(output_dir(""), fs::path("/tmp/from_env"));
  ::unsetenv("LOCUSLAB_OUT");
  EXPECT_EQ(output_dir(""), fs::path("locuslab_out"));
}

TEST(Svg, FrameAndStyles) {
  SvgLayer dots;
  dots.points = {{0.0, 0.0}, {1.0, 1.0}};
  SvgLayer segs;
  segs.style = SvgLayer::Style::segments;
  segs.points = {{0.0, 0.0}, {1.0, 0.0}};
  const std::string svg = render_svg({dots, segs}, 100);
  EXPECT_NE(svg.find("width=\"100\""), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '<') - 3, 3);  // svg, rect, /svg aside
  EXPECT_NE(svg.find("<path"), std::string::npos);
  EXPECT_EQ(render_svg({}), render_svg({}));
}
