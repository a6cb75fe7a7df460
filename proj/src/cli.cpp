#include "locuslab/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <regex>
#include <sstream>

#include "locuslab/asymptotics.hpp"
#include "locuslab/cheb_family.hpp"
#include "locuslab/locus_solver.hpp"
#include "locuslab/minor_basis.hpp"

namespace locuslab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::regex& real_literal() {
  static const std::regex re(R"(^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$)");
  return re;
}

double parse_real(const std::string& s, const std::string& what, int line) {
  if (!std::regex_match(s, real_literal()))
    throw ConfigError("malformed " + what + " '" + s + "' on line " + std::to_string(line), line);
  return std::strtod(s.c_str(), nullptr);
}

long parse_integer(const std::string& s, const std::string& key, int line) {
  static const std::regex re(R"(^[+-]?\d+$)");
  if (!std::regex_match(s, re))
    throw ConfigError("key '" + key + "' expects an integer, got '" + s + "' on line " + std::to_string(line), line);
  return std::strtol(s.c_str(), nullptr, 10);
}

void set_tolerance(Tolerances& tol, const std::string& name, const std::string& value, int line) {
  static const std::map<std::string, double Tolerances::*> reals{
      {"prune", &Tolerances::prune},           {"cluster", &Tolerances::cluster},
      {"c_region", &Tolerances::c_region},     {"disc", &Tolerances::disc},
      {"hermitian", &Tolerances::hermitian},   {"eval", &Tolerances::eval},
      {"rank", &Tolerances::rank},             {"widom_separation", &Tolerances::widom_separation},
      {"det_residual", &Tolerances::det_residual}, {"newton_move", &Tolerances::newton_move},
      {"perturbation", &Tolerances::perturbation}};
  static const std::map<std::string, int Tolerances::*> ints{{"root_max_iter", &Tolerances::root_max_iter},
                                                            {"newton_max_iter", &Tolerances::newton_max_iter},
                                                            {"newton_halvings", &Tolerances::newton_halvings},
                                                            {"max_m_n1", &Tolerances::max_m_n1},
                                                            {"double_max_m", &Tolerances::double_max_m}};
  const std::string key = "tol." + name;
  if (auto it = reals.find(name); it != reals.end()) {
    tol.*(it->second) = parse_real(value, "value of '" + key + "'", line);
  } else if (auto jt = ints.find(name); jt != ints.end()) {
    tol.*(jt->second) = static_cast<int>(parse_integer(value, key, line));
  } else if (name == "max_digits") {
    const long v = parse_integer(value, key, line);
    if (v < 0) throw ConfigError("key 'tol.max_digits' must be non-negative on line " + std::to_string(line), line);
    tol.max_digits = static_cast<unsigned>(v);
  } else {
    throw ConfigError("unknown key '" + key + "' on line " + std::to_string(line), line);
  }
}

std::vector<int> parse_m_list(const std::string& value, int line) {
  std::vector<int> ms;
  std::string token;
  std::istringstream is(value);
  while (std::getline(is, token, ',')) {
    token = trim(token);
    const long m = parse_integer(token, "m", line);
    if (m < 1) throw ConfigError("m values must be >= 1 on line " + std::to_string(line), line);
    ms.push_back(static_cast<int>(m));
  }
  if (ms.empty()) throw ConfigError("key 'm' is empty on line " + std::to_string(line), line);
  return ms;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Complex parse_complex(const std::string& text, int line) {
  const std::string what = "complex literal";
  std::string s;
  bool gap = false;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t') {
      gap = !s.empty();
      continue;
    }
    // spaces may only surround the sign between the two parts
    if (gap && ch != '+' && ch != '-' && s.back() != '+' && s.back() != '-')
      throw ConfigError("malformed complex literal '" + text + "' on line " + std::to_string(line), line);
    gap = false;
    s += ch;
  }
  if (s.empty()) throw ConfigError("empty complex literal on line " + std::to_string(line), line);
  if (s.back() != 'i') return {parse_real(s, what, line), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;)
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  const std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  if (im_part.empty() || im_part == "+" || im_part == "-") im_part += "1";
  try {
    const double re = re_part.empty() ? 0.0 : parse_real(re_part, what, line);
    return {re, parse_real(im_part, what, line)};
  } catch (const ConfigError&) {
    throw ConfigError("malformed complex literal '" + text + "' on line " + std::to_string(line), line);
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::optional<long> k, h, n;
  std::map<int, std::pair<Complex, int>> coeffs;
  static const std::regex coeff_key(R"(^c\[\s*([+-]?\d+)\s*\]$)");

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value' on line " + std::to_string(line), line);
    std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    std::smatch match;
    const bool is_coeff = std::regex_match(key, match, coeff_key);
    int coeff_index = 0;
    if (is_coeff) {
      coeff_index = static_cast<int>(std::strtol(match[1].str().c_str(), nullptr, 10));
      key = "c[" + std::to_string(coeff_index) + "]";
    }
    if (key.empty()) throw ConfigError("empty key on line " + std::to_string(line), line);
    if (value.empty()) throw ConfigError("key '" + key + "' has no value on line " + std::to_string(line), line);
    if (auto [it, fresh] = seen.emplace(key, line); !fresh)
      throw ConfigError("duplicate key '" + key + "' on line " + std::to_string(line) + " (first on line " +
                            std::to_string(it->second) + ")",
                        line);

    if (is_coeff) {
      coeffs[coeff_index] = {parse_complex(value, line), line};
    } else if (key == "k") {
      k = parse_integer(value, key, line);
    } else if (key == "h") {
      h = parse_integer(value, key, line);
    } else if (key == "n") {
      n = parse_integer(value, key, line);
    } else if (key == "m") {
      cfg.ms = parse_m_list(value, line);
    } else if (key == "seed") {
      const long s = parse_integer(value, key, line);
      if (s < 0) throw ConfigError("key 'seed' must be non-negative on line " + std::to_string(line), line);
      cfg.tol.seed = static_cast<std::uint64_t>(s);
    } else if (key == "d") {
      cfg.d = static_cast<int>(parse_integer(value, key, line));
      if (cfg.d < 1) throw ConfigError("key 'd' must be >= 1 on line " + std::to_string(line), line);
    } else if (key == "samples") {
      cfg.samples = static_cast<int>(parse_integer(value, key, line));
      if (cfg.samples < 3) throw ConfigError("key 'samples' must be >= 3 on line " + std::to_string(line), line);
    } else if (key == "resolution") {
      cfg.resolution = static_cast<int>(parse_integer(value, key, line));
      if (cfg.resolution < 3) throw ConfigError("key 'resolution' must be >= 3 on line " + std::to_string(line), line);
    } else if (key == "grid.re_min") {
      cfg.grid.re_min = parse_real(value, "value of 'grid.re_min'", line);
    } else if (key == "grid.re_max") {
      cfg.grid.re_max = parse_real(value, "value of 'grid.re_max'", line);
    } else if (key == "grid.im_min") {
      cfg.grid.im_min = parse_real(value, "value of 'grid.im_min'", line);
    } else if (key == "grid.im_max") {
      cfg.grid.im_max = parse_real(value, "value of 'grid.im_max'", line);
    } else if (key == "grid.nx") {
      cfg.grid.nx = static_cast<int>(parse_integer(value, key, line));
    } else if (key == "grid.ny") {
      cfg.grid.ny = static_cast<int>(parse_integer(value, key, line));
    } else if (key.rfind("tol.", 0) == 0) {
      set_tolerance(cfg.tol, key.substr(4), value, line);
    } else {
      throw ConfigError("unknown key '" + key + "' on line " + std::to_string(line), line);
    }
  }

  if (!k && !h && !n) {
    if (!coeffs.empty()) throw ConfigError("coefficients given without 'k', 'h' and 'n'", coeffs.begin()->second.second);
    return cfg;
  }
  if (!k) throw ConfigError("missing key 'k'", 0);
  if (!h) throw ConfigError("missing key 'h'", 0);
  if (!n) throw ConfigError("missing key 'n'", 0);
  if (*k < 1 || *h < 1 || *n < 0 || *n >= *h)
    throw ConfigError("band shape needs k >= 1, h >= 1 and 0 <= n < h", seen.at("h"));
  for (const auto& [j, val] : coeffs)
    if (j < -*k || j > *h)
      throw ConfigError("key 'c[" + std::to_string(j) + "]' lies outside [-k, h] on line " +
                            std::to_string(val.second),
                        val.second);
  for (const long edge : {-*k, *h}) {
    const std::string key = "c[" + std::to_string(edge) + "]";
    const auto it = coeffs.find(static_cast<int>(edge));
    if (it == coeffs.end()) throw ConfigError("missing key '" + key + "'", 0);
    if (it->second.first == Complex{})
      throw ConfigError("key '" + key + "' must be non-zero on line " + std::to_string(it->second.second),
                        it->second.second);
  }
  std::vector<Complex> c(static_cast<std::size_t>(*k + *h + 1));
  for (const auto& [j, val] : coeffs) c[static_cast<std::size_t>(j + *k)] = val.first;
  try {
    cfg.symbol.emplace(static_cast<int>(*k), static_cast<int>(*h), static_cast<int>(*n), std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0);
  }
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'", 0);
  return parse_config(in);
}

nlohmann::json point_to_json(const LocusPoint& p) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& z : p.coords) coords.push_back({{"re", z.real()}, {"im", z.imag()}});
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json det = nlohmann::json::array();
  for (double r : p.det_residuals) det.push_back(num(r));
  return {{"coords", coords},
          {"multiplicity", p.multiplicity},
          {"residuals", {{"det", det}, {"sigma_ratio", num(p.sigma_ratio)}, {"minor", num(p.minor_residual)}}}};
}

LocusPoint point_from_json(const nlohmann::json& j) {
  auto num = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  LocusPoint p;
  for (const auto& z : j.at("coords")) p.coords.emplace_back(z.at("re").get<double>(), z.at("im").get<double>());
  p.multiplicity = j.at("multiplicity").get<int>();
  const auto& r = j.at("residuals");
  for (const auto& v : r.at("det")) p.det_residuals.push_back(num(v));
  p.sigma_ratio = num(r.at("sigma_ratio"));
  p.minor_residual = num(r.at("minor"));
  return p;
}

nlohmann::json locus_to_json(const EigenLocus& locus) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : locus.points) pts.push_back(point_to_json(p));
  return {{"m", locus.m},
          {"n", locus.n},
          {"kind", to_string(locus.kind)},
          {"total_multiplicity", locus.total_multiplicity()},
          {"points", pts},
          {"warnings", locus.warnings},
          {"defects", locus.defects}};
}

EigenLocus locus_from_json(const nlohmann::json& j) {
  EigenLocus l;
  l.m = j.at("m").get<int>();
  l.n = j.at("n").get<int>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "full" && kind != "tilde") throw std::invalid_argument("locus_from_json: unknown kind '" + kind + "'");
  l.kind = kind == "tilde" ? LocusKind::tilde : LocusKind::full;
  for (const auto& p : j.at("points")) l.points.push_back(point_from_json(p));
  l.warnings = j.at("warnings").get<std::vector<std::string>>();
  l.defects = j.at("defects").get<std::vector<std::string>>();
  return l;
}

std::string render_svg(const std::vector<SvgLayer>& layers, int size) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& l : layers)
    for (const auto& z : l.points) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
  if (!(x0 <= x1)) x0 = y0 = -1.0, x1 = y1 = 1.0;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double cx = 0.5 * (x0 + x1);
  const double cy = 0.5 * (y0 + y1);
  const double scale = 0.9 * size / span;
  auto px = [&](Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", 0.5 * size + (z.real() - cx) * scale,
                  0.5 * size - (z.imag() - cy) * scale);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& l : layers) {
    using Style = SvgLayer::Style;
    switch (l.style) {
      case Style::dots:
        for (const auto& z : l.points) {
          const std::string p = px(z);
          const auto comma = p.find(',');
          os << "<circle cx=\"" << p.substr(0, comma) << "\" cy=\"" << p.substr(comma + 1) << "\" r=\"2.5\" fill=\""
             << l.color << "\"/>\n";
        }
        break;
      case Style::polyline:
      case Style::closed_polyline:
        os << '<' << (l.style == Style::polyline ? "polyline" : "polygon") << " fill=\"none\" stroke=\"" << l.color
           << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < l.points.size(); ++i) os << (i ? " " : "") << px(l.points[i]);
        os << "\"/>\n";
        break;
      case Style::segments:
        os << "<path fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1\" d=\"";
        for (std::size_t i = 0; i + 1 < l.points.size(); i += 2)
          os << (i ? " " : "") << 'M' << px(l.points[i]) << " L" << px(l.points[i + 1]);
        os << "\"/>\n";
        break;
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::filesystem::path output_dir(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv("LOCUSLAB_OUT"); env && *env) return env;
  return "locuslab_out";
}

namespace {

struct Defect {
  std::optional<int> m;
  std::string message;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, std::filesystem::path out, std::ostream& log)
      : cfg_(cfg), out_(std::move(out)), log_(log) {}

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(out_ / name, std::ios::binary);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + (out_ / name).string());
    log_ << "wrote " << (out_ / name).string() << '\n';
  }

  const BandSymbol& symbol() const {
    if (!cfg_.symbol) throw ConfigError("config has no band symbol (keys k, h, n, c[j])", 0);
    return *cfg_.symbol;
  }

  static std::string point_columns(int n) {
    std::string s;
    for (int j = 0; j <= n; ++j) s += ",x" + std::to_string(j) + "_re,x" + std::to_string(j) + "_im";
    return s;
  }

  static std::string point_values(const Point& x) {
    std::string s;
    for (const auto& z : x) s += ',' + fmt(z.real()) + ',' + fmt(z.imag());
    return s;
  }

  void locus() {
    for (int m : cfg_.ms) {
      const auto sol = solve_locus(symbol(), m, cfg_.tol);
      const EigenLocus& full = sol.full;
      for (const auto& d : full.defects) defects.push_back({m, d});
      const std::string stem = "locus_m" + std::to_string(m);
      write(stem + ".json", locus_to_json(full).dump(2) + "\n");
      std::ostringstream csv;
      csv << "index,multiplicity" << point_columns(full.n) << ",max_det_residual,sigma_ratio\n";
      for (std::size_t i = 0; i < full.points.size(); ++i) {
        const auto& p = full.points[i];
        double det = 0.0;
        for (double r : p.det_residuals) det = std::max(det, r);
        csv << i << ',' << p.multiplicity << point_values(p.coords) << ',' << fmt(det) << ',' << fmt(p.sigma_ratio)
            << '\n';
      }
      write(stem + ".csv", csv.str());
      SvgLayer dots;
      for (const auto& p : full.points) dots.points.push_back(p.coords.at(0));
      dots.color = "crimson";
      write(stem + ".svg", render_svg({dots}));
      log_ << "m=" << m << ": " << full.points.size() << " points, total multiplicity " << full.total_multiplicity()
           << '\n';
    }
  }

  void cregion() {
    const RegionScan scan = c_region_scan(symbol(), cfg_.grid, cfg_.tol);
    std::ostringstream csv;
    csv << "i,j,re,im,residual\n";
    for (int j = 0; j < scan.grid.ny; ++j)
      for (int i = 0; i < scan.grid.nx; ++i)
        csv << i << ',' << j << ',' << fmt(scan.grid.re_at(i)) << ',' << fmt(scan.grid.im_at(j)) << ','
            << fmt(scan.at(i, j)) << '\n';
    write("cregion.csv", csv.str());
    SvgLayer segs;
    segs.style = SvgLayer::Style::segments;
    segs.color = "navy";
    for (const auto& s : scan.boundary) {
      segs.points.push_back(s.a);
      segs.points.push_back(s.b);
    }
    SvgLayer frame;
    frame.style = SvgLayer::Style::closed_polyline;
    frame.color = "lightgray";
    frame.points = {{scan.grid.re_min, scan.grid.im_min}, {scan.grid.re_max, scan.grid.im_min},
                    {scan.grid.re_max, scan.grid.im_max}, {scan.grid.re_min, scan.grid.im_max}};
    write("cregion.svg", render_svg({frame, segs}));
    if (!scan.found_region) defects.push_back({std::nullopt, "no grid sample lies in C_A: " + scan.diagnostics});
    if (!scan.within_cauchy_box) defects.push_back({std::nullopt, "region sample outside the Cauchy box"});
    log_ << scan.in_region << " grid samples in C_A, " << scan.boundary.size() << " boundary segments\n";
  }

  void basis() {
    for (int m : cfg_.ms) {
      const MinorBasis b = build_basis(symbol(), m);
      std::ostringstream txt;
      for (std::size_t i = 0; i < b.sets.size(); ++i)
        txt << "I=" << b.sets[i].to_string() << ": " << b.minors[i].to_string(17) << '\n';
      write("basis_m" + std::to_string(m) + ".txt", txt.str());
      const TriangularityReport rep = triangularity_report(b);
      nlohmann::json rows = nlohmann::json::array(), cols = nlohmann::json::array(), mat = nlohmann::json::array();
      for (const auto& r : rep.rows) rows.push_back(r.to_string());
      for (const auto& c : rep.columns) cols.push_back(c);
      for (std::size_t r = 0; r < rep.rows.size(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < rep.columns.size(); ++c)
          row.push_back({{"re", rep.at(r, c).real()}, {"im", rep.at(r, c).imag()}});
        mat.push_back(row);
      }
      const nlohmann::json out{{"m", m},
                               {"n", b.n},
                               {"rows", rows},
                               {"columns", cols},
                               {"matrix", mat},
                               {"expected_diagonal", rep.expected_diagonal.real()},
                               {"lower_triangular", rep.lower_triangular},
                               {"diagonal_ok", rep.diagonal_ok},
                               {"stray_terms", rep.stray_terms},
                               {"pass", rep.pass}};
      write("triangularity_m" + std::to_string(m) + ".json", out.dump(2) + "\n");
      if (!rep.pass) defects.push_back({m, "leading-coefficient matrix is not triangular with diagonal (-1)^m"});
      log_ << "m=" << m << ": " << b.sets.size() << " minors, triangularity " << (rep.pass ? "pass" : "fail") << '\n';
    }
  }

  void verify() {
    ReportOptions opt;
    opt.resolution = cfg_.resolution;
    const ConvergenceReport rep = conjecture_report(symbol(), cfg_.ms, opt, cfg_.tol);
    nlohmann::json recs = nlohmann::json::array();
    auto pt = [](const Point& x) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& z : x) a.push_back({{"re", z.real()}, {"im", z.imag()}});
      return a;
    };
    for (const auto& r : rep.records) {
      recs.push_back({{"m", r.m},
                      {"solved", r.solved},
                      {"error", r.error},
                      {"points", r.points},
                      {"total_multiplicity", r.total_multiplicity},
                      {"max_c_residual", r.max_c_residual},
                      {"mean_c_residual", r.mean_c_residual},
                      {"locus_to_region", r.locus_to_region},
                      {"region_to_locus", r.region_to_locus},
                      {"symmetry_defect", r.symmetry_defect},
                      {"symmetry_closure_defect", r.symmetry_closure_defect},
                      {"tilde_gap", r.tilde_gap},
                      {"worst_point", pt(r.worst_point)},
                      {"defects", r.defects}});
      if (!r.solved) defects.push_back({r.m, "solver failed: " + r.error});
      for (const auto& d : r.defects) defects.push_back({r.m, d});
    }
    const nlohmann::json out{{"multihermitian", rep.multihermitian},
                             {"metric", rep.metric == Metric::x0_plane ? "x0_plane" : "euclidean"},
                             {"region_samples", rep.region_samples},
                             {"records", recs},
                             {"verdicts",
                              {{"locus_in_region", rep.locus_in_region},
                               {"region_filled", rep.region_filled},
                               {"conjugate_symmetry", rep.conjugate_symmetry},
                               {"tilde_vs_full", rep.tilde_vs_full}}}};
    write("report.json", out.dump(2) + "\n");
    log_ << "locus in region: " << rep.locus_in_region << "\nregion filled: " << rep.region_filled << "\nconjugate symmetry: "
         << rep.conjugate_symmetry << '\n';
  }

  void hypocycloid_curves() {
    const auto boundary = star_boundary_curve(cfg_.d, cfg_.samples);
    const auto formula = hypocycloid_curve(cfg_.d, cfg_.samples);
    auto table = [&](const std::vector<Complex>& c) {
      std::ostringstream csv;
      csv << "index,theta,re,im\n";
      for (std::size_t s = 0; s < c.size(); ++s)
        csv << s << ',' << fmt(kTwoPi * static_cast<double>(s) / static_cast<double>(c.size())) << ','
            << fmt(c[s].real()) << ',' << fmt(c[s].imag()) << '\n';
      return csv.str();
    };
    write("hypocycloid.csv", table(boundary));
    write("hypocycloid_formula.csv", table(formula));
    SvgLayer curve;
    curve.style = SvgLayer::Style::closed_polyline;
    curve.points = boundary;
    curve.color = "navy";
    write("hypocycloid.svg", render_svg({curve}));
    log_ << "d=" << cfg_.d << ": " << count_cusps(boundary) << " cusps\n";
  }

  void measure() {
    for (int m : cfg_.ms) {
      const auto sol = solve_locus(symbol(), m, cfg_.tol);
      for (const auto& d : sol.full.defects) defects.push_back({m, d});
      const RootCountingMeasure mu = measure_of(sol.full);
      std::ostringstream csv;
      csv << "index,mass,multiplicity" << point_columns(mu.n) << '\n';
      for (std::size_t i = 0; i < mu.atoms.size(); ++i)
        csv << i << ',' << fmt(mu.atoms[i].mass) << ',' << mu.atoms[i].point.multiplicity
            << point_values(mu.atoms[i].point.coords) << '\n';
      write("measure_m" + std::to_string(m) + ".csv", csv.str());
      log_ << "m=" << m << ": " << mu.atoms.size() << " atoms, total mass " << fmt(mu.total_mass()) << '\n';
    }
  }

  std::vector<Defect> defects;

 private:
  const RunConfig& cfg_;
  std::filesystem::path out_;
  std::ostream& log_;
};

void write_defects(const std::filesystem::path& out, const std::string& command, const std::vector<Defect>& defects,
                   const std::string& input_error) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& d : defects)
    list.push_back({{"m", d.m ? nlohmann::json(*d.m) : nlohmann::json(nullptr)}, {"message", d.message}});
  nlohmann::json j{{"command", command}, {"defects", list}};
  if (!input_error.empty()) j["input_error"] = input_error;
  std::ofstream f(out / "defects.json", std::ios::binary);
  f << j.dump(2) << '\n';
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, const std::filesystem::path& out,
                std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) {
    log << "error: cannot create output directory " << out.string() << ": " << ec.message() << '\n';
    return 2;
  }
  Runner run(config, out, log);
  try {
    if (command == "locus")
      run.locus();
    else if (command == "cregion")
      run.cregion();
    else if (command == "basis")
      run.basis();
    else if (command == "verify")
      run.verify();
    else if (command == "hypocycloid")
      run.hypocycloid_curves();
    else if (command == "measure")
      run.measure();
    else
      throw ConfigError("unknown command '" + command + "'", 0);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    write_defects(out, command, run.defects, e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    write_defects(out, command, run.defects, e.what());
    return 2;
  } catch (const std::length_error& e) {
    log << "error: " << e.what() << '\n';
    write_defects(out, command, run.defects, e.what());
    return 2;
  } catch (const std::exception& e) {
    run.defects.push_back({std::nullopt, e.what()});
  }
  write_defects(out, command, run.defects, "");
  for (const auto& d : run.defects) log << "defect" << (d.m ? " (m=" + std::to_string(*d.m) + ")" : "") << ": " << d.message << '\n';
  return run.defects.empty() ? 0 : 1;
}

int report_input_error(const std::string& command, const std::filesystem::path& out, const std::string& message,
                       std::ostream& log) {
  log << "error: " << message << '\n';
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (!ec) write_defects(out, command, {}, message);
  return 2;
}

}  // namespace locuslab::cli
