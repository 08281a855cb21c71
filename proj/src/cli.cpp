#include "isqeig/cli.hpp"

#include "isqeig/ball_solver.hpp"
#include "isqeig/convergence.hpp"
#include "isqeig/errors.hpp"
#include "isqeig/mortar_sem.hpp"
#include "isqeig/sector_solver.hpp"
#include "isqeig/specfun.hpp"
#include "isqeig/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isq::cli {

namespace {

constexpr const char* kVersion = "isqeig 1.0.0";

enum class Family { radial, mortar };

struct Target {
  Family family = Family::radial;
  Geometry geometry;
  Domain domain = Domain::square;
  Method method = Method::II;
};

int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw std::invalid_argument("bad " + what + ": '" + s + "'");
  return v;
}

Target resolve(const RunConfig& cfg) {
  Target t;
  const std::string& g = cfg.geometry;
  if (g == "disk") {
    t.geometry = Geometry::ball(2);
  } else if (g == "ball3") {
    t.geometry = Geometry::ball(3);
  } else if (g.rfind("balld:", 0) == 0) {
    const int d = parse_int(g.substr(6), "dimension");
    if (d < 2 || d > 64) throw std::invalid_argument("balld: dimension must lie in [2, 64]");
    t.geometry = Geometry::ball(d);
  } else if (g == "sector") {
    if (!(cfg.gamma >= 0.5) || !std::isfinite(cfg.gamma)) throw std::invalid_argument("--gamma must be >= 1/2");
    t.geometry = Geometry::sector(cfg.gamma);
  } else if (g == "square" || g == "lshape") {
    t.family = Family::mortar;
    t.domain = g == "square" ? Domain::square : Domain::lshape;
  } else {
    throw std::invalid_argument("unknown geometry '" + g + "'");
  }
  if (!(cfg.c >= 0.0) || !std::isfinite(cfg.c)) throw std::invalid_argument("--c must be >= 0");

  const std::string m = cfg.method.empty() ? (t.family == Family::mortar ? "msem" : "II") : cfg.method;
  if (t.family == Family::mortar) {
    if (m != "msem") throw std::invalid_argument("square and lshape take --method msem");
    return t;
  }
  if (m == "I") t.method = Method::I;
  else if (m == "II") t.method = Method::II;
  else if (m == "classic") t.method = Method::classic;
  else if (m == "poly") t.method = Method::poly;
  else if (m == "msem") throw std::invalid_argument("--method msem needs --geometry square or lshape");
  else throw std::invalid_argument("unknown method '" + m + "'");
  if (t.geometry.kind == Geometry::Kind::sector && !exponential_method(t.method))
    throw std::invalid_argument("sector supports methods I and II only");
  return t;
}

double default_radius(Domain d) { return d == Domain::square ? 0.3 : 0.5; }

MortarConfig mortar_config(const RunConfig& cfg, Domain domain) {
  MortarConfig mc = domain == Domain::square ? square_reference_config(cfg.c) : lshape_reference_config();
  mc.c = cfg.c;
  mc.R = cfg.R.value_or(default_radius(domain));
  const auto& q = cfg.quad_degrees;
  if (q.empty()) return mc;
  if (q.size() != 4 && q.size() != 10)
    throw std::invalid_argument("--quad-degrees takes 4 values (K0,N0,K,N) or 10 (K0,N0,K1,N1,...,K4,N4)");
  mc.K0 = q[0];
  mc.N0 = q[1];
  for (int k = 0; k < 4; ++k) {
    const std::size_t at = q.size() == 4 ? 2 : 2 + 2 * k;
    mc.quads[k] = QuadDegrees{q[at], q[at + 1]};
  }
  if (mc.K0 < 0 || mc.N0 < 1) throw std::invalid_argument("--quad-degrees: need K0 >= 0, N0 >= 1");
  for (const QuadDegrees& d : mc.quads)
    if (d.K < 1 || d.N < 2) throw std::invalid_argument("--quad-degrees: need K >= 1, N >= 2 per quad");
  return mc;
}

void check_count(const RunConfig& cfg) {
  if (cfg.count < 1 || cfg.count > 100000) throw std::invalid_argument("--count must lie in [1, 100000]");
}

void check_degrees(const RunConfig& cfg) {
  if (cfg.K < 1 || cfg.K > 512) throw std::invalid_argument("--K must lie in [1, 512]");
  if (cfg.N < 0 || cfg.N > 500) throw std::invalid_argument("--N must lie in [0, 500]");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

nlohmann::json json_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr);
  return std::get<std::string>(c);
}

Cell opt(double v, bool present) { return present ? Cell{v} : Cell{}; }

long long radial_dof(const Target& t, const RunConfig& cfg) {
  long long dof = 0;
  if (t.geometry.kind == Geometry::Kind::ball) {
    for (int n = 0; n <= cfg.N; ++n) {
      const RadialMode m = assemble_mode(t.method, n, cfg.c, t.geometry.dimension, cfg.K);
      dof += static_cast<long long>(m.A.order()) * m.multiplicity;
    }
  } else {
    for (int n = 1; n <= cfg.N; ++n) dof += assemble_sector(t.method, n, cfg.c, t.geometry.gamma, cfg.K).A.order();
  }
  return dof;
}

}  // namespace

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.substr(0, eq) != "K")
    throw std::invalid_argument("--sweep expects K=a:b[:step], got '" + text + "'");
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 2 && parts.size() != 3)
    throw std::invalid_argument("--sweep expects K=a:b[:step], got '" + text + "'");
  Sweep s;
  s.first = parse_int(parts[0], "sweep start");
  s.last = parse_int(parts[1], "sweep end");
  if (parts.size() == 3 && !parts[2].empty() && parts[2][0] == '*') {
    s.geometric = true;
    s.step = parse_int(parts[2].substr(1), "sweep factor");
    if (s.step < 2) throw std::invalid_argument("--sweep factor must be >= 2");
  } else {
    s.step = parts.size() == 3 ? parse_int(parts[2], "sweep step") : 1;
  }
  if (s.first < 1 || s.last < s.first || s.step < 1)
    throw std::invalid_argument("--sweep needs 1 <= a <= b and step >= 1");
  return s;
}

std::vector<int> Sweep::values() const {
  std::vector<int> v;
  for (long long K = first; K <= last; K = geometric ? K * step : K + step) v.push_back(static_cast<int>(K));
  return v;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

Table cmd_reference(const RunConfig& cfg) {
  check_count(cfg);
  const Target t = resolve(cfg);
  Table tab;
  tab.columns = {"index", "lambda", "n", "k", "multiplicity"};
  if (t.family == Family::mortar) {
    const std::vector<double> ref = msem_reference(t.domain, cfg.c);
    if (ref.empty()) throw std::invalid_argument("no reference values for this domain and c");
    if (static_cast<std::size_t>(cfg.count) > ref.size())
      throw std::invalid_argument("only " + std::to_string(ref.size()) + " reference values are known");
    Spectrum s;
    for (double v : ref) s.add(v);
    for (const auto& g : s.groups()) {
      if (g.first >= static_cast<std::size_t>(cfg.count)) break;
      tab.rows.push_back({static_cast<long long>(g.first + 1), g.value, Cell{}, Cell{},
                          static_cast<long long>(g.multiplicity)});
    }
    return tab;
  }
  const Spectrum s = reference_spectrum(t.geometry, cfg.c, cfg.count);
  const auto groups = tracked_eigenvalues(t.geometry, cfg.c, static_cast<int>(s.groups().size()));
  std::size_t first = 0;
  for (const auto& g : groups) {
    tab.rows.push_back({static_cast<long long>(first + 1), g.reference, static_cast<long long>(g.n),
                        static_cast<long long>(g.k), static_cast<long long>(g.multiplicity)});
    first += g.multiplicity;
  }
  return tab;
}

Table cmd_solve(const RunConfig& cfg) {
  check_count(cfg);
  const Target t = resolve(cfg);
  Table tab;
  tab.columns = {"index", "lambda", "reference", "abs_error", "n", "k", "multiplicity", "dof"};
  Spectrum got;
  std::vector<double> ref;
  long long dof = 0;
  if (t.family == Family::mortar) {
    const MortarMesh mesh(mortar_config(cfg, t.domain));
    const MsemResult r = solve_msem(mesh, cfg.count);
    got = r.spectrum;
    dof = r.columns;
    ref = msem_reference(t.domain, cfg.c);
    tab.meta = {{"columns", static_cast<long long>(r.columns)},
                {"constraint_rank", static_cast<long long>(r.constraint_rank)},
                {"columns_minus_rank", static_cast<long long>(r.dof)},
                {"quad_order", static_cast<long long>(r.quad_order)}};
  } else {
    check_degrees(cfg);
    if (t.geometry.kind == Geometry::Kind::ball)
      got = solve_ball(BallProblem{t.geometry.dimension, cfg.c, cfg.K, cfg.N, t.method}, cfg.count);
    else
      got = solve_sector(SectorProblem{t.geometry.gamma, cfg.c, cfg.K, cfg.N, t.method}, cfg.count);
    ref = reference_spectrum(t.geometry, cfg.c, cfg.count).values();
    dof = radial_dof(t, cfg);
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    const bool has_ref = i < ref.size();
    const double r = has_ref ? ref[i] : 0.0;
    const ModeTag tag = got.tags()[i];
    tab.rows.push_back({static_cast<long long>(i + 1), got[i], opt(r, has_ref), opt(std::abs(got[i] - r), has_ref),
                        tag.n >= 0 ? Cell{static_cast<long long>(tag.n)} : Cell{},
                        tag.k >= 0 ? Cell{static_cast<long long>(tag.k)} : Cell{},
                        static_cast<long long>(got.multiplicity_at(i)), dof});
  }
  return tab;
}

Table cmd_convergence(const RunConfig& cfg) {
  check_count(cfg);
  if (!cfg.sweep) throw std::invalid_argument("convergence needs --sweep K=a:b[:step]");
  const Target t = resolve(cfg);
  const std::vector<int> Ks = cfg.sweep->values();
  Table tab;

  if (t.family == Family::mortar) {
    const std::vector<double> ref = msem_reference(t.domain, cfg.c);
    if (ref.empty()) throw std::invalid_argument("no reference values for this domain and c");
    Spectrum rs;
    for (double v : ref) rs.add(v);
    auto groups = rs.groups();
    if (static_cast<int>(groups.size()) < cfg.count)
      throw std::invalid_argument("only " + std::to_string(groups.size()) + " distinct reference values are known");
    groups.resize(cfg.count);
    const int want = static_cast<int>(groups.back().first) + groups.back().multiplicity;
    const double R = cfg.R.value_or(default_radius(t.domain));
    tab.columns = {"K", "dof", "sqrtDoF", "eig_index", "abs_error"};
    std::vector<std::vector<double>> errs(groups.size());
    std::vector<double> xs;
    for (int p : Ks) {
      const MortarMesh mesh(msem_sweep_config(t.domain, cfg.c, R, p));
      const MsemResult r = solve_msem(mesh, want);
      const double x = std::sqrt(static_cast<double>(r.columns));
      xs.push_back(x);
      for (std::size_t i = 0; i < groups.size(); ++i) {
        const double e = std::abs(r.spectrum[groups[i].first] - groups[i].value);
        errs[i].push_back(e);
        tab.rows.push_back({static_cast<long long>(p), static_cast<long long>(r.columns), x,
                            static_cast<long long>(i + 1), e});
      }
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const SlopeFit f = fit_prefloor(xs, errs[i], kRelativeFloor * groups[i].value);
      tab.rows.push_back({std::string("fit"), Cell{}, Cell{}, static_cast<long long>(i + 1),
                          opt(f.slope, f.points >= 2)});
    }
    tab.meta = {{"fit", std::string("log10(abs_error) vs sqrtDoF")},
                {"sweep_family", std::string("K0=K, N0=K+2, quads (K+4, 2K)")}};
    return tab;
  }

  const auto tracked = tracked_eigenvalues(t.geometry, cfg.c, cfg.count);
  const bool semilog = exponential_method(t.method);
  tab.columns = {"K", "eig_index", "n", "abs_error"};
  std::vector<std::vector<double>> errs(tracked.size());
  std::vector<double> xs;
  for (int K : Ks) {
    xs.push_back(semilog ? K : std::log10(static_cast<double>(K)));
    for (std::size_t i = 0; i < tracked.size(); ++i) {
      const auto& tr = tracked[i];
      const double e = std::abs(mode_eigenvalue(t.geometry, t.method, cfg.c, tr.n, tr.k, K) - tr.reference);
      errs[i].push_back(e);
      tab.rows.push_back({static_cast<long long>(K), static_cast<long long>(tr.index),
                          static_cast<long long>(tr.n), e});
    }
  }
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    const SlopeFit f = fit_prefloor(xs, errs[i], kRelativeFloor * tracked[i].reference);
    tab.rows.push_back({std::string("fit"), static_cast<long long>(tracked[i].index),
                        static_cast<long long>(tracked[i].n), opt(f.slope, f.points >= 2)});
  }
  tab.meta = {{"fit", std::string(semilog ? "log10(abs_error) vs K" : "log10(abs_error) vs log10(K)")}};
  return tab;
}

Table cmd_validate(const RunConfig& cfg, bool& passed) {
  const ValidationReport rep = run_validation(cfg.module, cfg.seed);
  Table tab;
  tab.columns = {"module", "check", "value", "tolerance", "pass"};
  for (const CheckResult& c : rep.checks)
    tab.rows.push_back({c.module, c.name, c.value, c.tolerance, static_cast<long long>(c.pass)});
  passed = rep.passed();
  tab.meta = {{"checks", static_cast<long long>(rep.checks.size())},
              {"passed", static_cast<long long>(passed)}};
  return tab;
}

namespace {

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = cfg.command;
  j["geometry"] = cfg.geometry;
  j["method"] = cfg.method;
  j["c"] = cfg.c;
  j["gamma"] = cfg.gamma;
  j["R"] = cfg.R ? nlohmann::json(*cfg.R) : nlohmann::json(nullptr);
  j["K"] = cfg.K;
  j["N"] = cfg.N;
  j["quad_degrees"] = cfg.quad_degrees;
  j["count"] = cfg.count;
  if (cfg.sweep) j["sweep"] = cfg.sweep->values();
  j["seed"] = cfg.seed;
  j["module"] = cfg.module;
  return j;
}

std::string render(const Table& tab, const RunConfig& cfg, double seconds) {
  if (cfg.format == "csv") return to_csv(tab);
  nlohmann::json meta;
  meta["config"] = config_echo(cfg);
  meta["version"] = kVersion;
  meta["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                  std::to_string(EIGEN_MINOR_VERSION);
  meta["wall_time_s"] = seconds;
  for (const auto& [k, v] : tab.meta) meta[k] = json_cell(v);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : tab.rows) {
    nlohmann::json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[tab.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(r));
  }
  nlohmann::json doc;
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& sweep) {
  sub->add_option("--geometry", cfg.geometry, "disk, ball3, balld:<d>, sector, square or lshape");
  sub->add_option("--method", cfg.method, "I, II, classic, poly or msem");
  sub->add_option("--c", cfg.c, "inverse-square potential strength");
  sub->add_option("--gamma", cfg.gamma, "sector opening pi/gamma");
  sub->add_option_function<double>("--R", [&cfg](const double& r) { cfg.R = r; }, "inner radius for square/lshape");
  sub->add_option("--K", cfg.K, "radial degree");
  sub->add_option("--N", cfg.N, "highest angular mode");
  sub->add_option("--quad-degrees", cfg.quad_degrees, "K0,N0,K1,N1[,...,K4,N4]")->delimiter(',');
  sub->add_option("--count", cfg.count, "number of eigenvalues");
  sub->add_option("--sweep", sweep, "K=a:b[:step]");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--seed", cfg.seed, "seed for randomized validation samples");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet eigenvalues of -Laplace + c^2/|x|^2 on balls, sectors and polygons", "isqeig"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  RunConfig cfg;
  std::string sweep;
  CLI::App* reference = app.add_subcommand("reference", "exact eigenvalues from Bessel zeros or tables");
  CLI::App* solve = app.add_subcommand("solve", "compute eigenvalues with a chosen method");
  CLI::App* convergence = app.add_subcommand("convergence", "error versus degree over a sweep");
  CLI::App* validate = app.add_subcommand("validate", "run the oracle suites");
  for (CLI::App* sub : {reference, solve, convergence, validate}) add_common(sub, cfg, sweep);
  validate->add_option("--module", cfg.module, "restrict to one suite")->check(CLI::IsMember(validation_modules()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  int code = kOk;
  Table tab;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!sweep.empty()) cfg.sweep = parse_sweep(sweep);
    if (cfg.command == "reference") tab = cmd_reference(cfg);
    else if (cfg.command == "solve") tab = cmd_solve(cfg);
    else if (cfg.command == "convergence") tab = cmd_convergence(cfg);
    else {
      bool passed = false;
      tab = cmd_validate(cfg, passed);
      if (!passed) code = kValidationFailure;
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = render(tab, cfg, seconds);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open '" << cfg.out << "' for writing\n";
      return kBadArguments;
    }
    f << text;
  }
  if (code == kValidationFailure) err << "validation failed\n";
  return code;
}

}  // namespace isq::cli
