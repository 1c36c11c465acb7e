#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "eqloc/cache.hpp"
#include "eqloc/cone.hpp"
#include "eqloc/csm.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/grass.hpp"
#include "eqloc/json_io.hpp"
#include "eqloc/omega1.hpp"
#include "eqloc/poly_text.hpp"
#include "eqloc/positivity.hpp"
#include "eqloc/symfunc.hpp"

namespace eqloc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kHeavyOmega1 = 4;

struct RunConfig {
  unsigned workers = 1;
  bool json_output = false;
  std::string cache_dir;
};

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("bad index list '" + text + "'");
    }
    if (pos != item.size()) throw InvalidArgument("bad index list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::pair<std::size_t, std::size_t> parse_grass(const std::string& text) {
  const auto v = parse_indices(text);
  if (v.size() != 2 || v[0] == 0 || v[0] >= v[1]) throw InvalidArgument("--grass expects m,n with 0 < m < n");
  if (v[1] > kMaxVars) throw InvalidArgument("at most 16 characters are supported");
  return {v[0], v[1]};
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& vars, std::size_t nvars) {
  std::vector<std::size_t> out;
  for (auto v : vars) {
    if (v == 0 || v > nvars) throw InvalidArgument("variable index out of range");
    out.push_back(v - 1);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("cannot parse " + path + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidArgument("cannot write " + path.string());
}

void print_poly(std::ostream& out, const RunConfig& cfg, const MultiPoly& p) {
  if (cfg.json_output) {
    out << json{{"poly", to_json(p)}, {"text", to_string(p)}}.dump() << '\n';
  } else {
    out << to_string(p) << '\n';
  }
}

std::string entry_text(const std::vector<Partition>& key) {
  std::string s;
  for (const auto& p : key) {
    if (!s.empty()) s += ' ';
    s += to_string(p);
  }
  return s;
}

void print_table(std::ostream& out, const RunConfig& cfg, const SchurTable& t) {
  if (cfg.json_output) {
    out << to_json(t).dump() << '\n';
    return;
  }
  for (const auto& [key, coef] : t.entries) out << entry_text(key) << " : " << to_string(coef) << '\n';
}

// --- integrate ---------------------------------------------------------

struct IntegrateArgs {
  std::string grass;
  std::optional<unsigned> power;
  bool volume = false;
  std::string class_file;
  std::string templ;
  std::optional<unsigned> degree_cap;
};

MultiPoly c1_power(std::size_t m, unsigned k) {
  MultiPoly s(m);
  for (std::size_t i = 0; i < m; ++i) s -= MultiPoly::variable(m, i);
  return s.pow(k);
}

int cmd_integrate(const IntegrateArgs& a, const RunConfig& cfg, std::ostream& out) {
  IntegrateOptions opts;
  opts.workers = cfg.workers;
  opts.degree_cap = a.degree_cap;
  const int sources = (a.power ? 1 : 0) + (a.volume ? 1 : 0) + (a.class_file.empty() ? 0 : 1) +
                      (a.templ.empty() ? 0 : 1);
  if (sources != 1) throw InvalidArgument("give exactly one of --power, --volume, --class, --template");
  if (!a.class_file.empty()) {
    const LocalClassTable table = local_table_from_json(read_json_file(a.class_file));
    if (!a.grass.empty() && parse_grass(a.grass) != std::make_pair(table.m, table.n))
      throw InvalidArgument("--grass differs from the table's Grassmannian");
    print_poly(out, cfg, integrate(table, opts));
    return kOk;
  }
  if (a.grass.empty()) throw InvalidArgument("--grass is required");
  const auto [m, n] = parse_grass(a.grass);
  MultiPoly W;
  if (a.power) {
    W = c1_power(m, *a.power);
  } else if (a.volume) {
    W = c1_power(m, static_cast<unsigned>(m * (n - m)));
  } else {
    W = parse_poly(a.templ, m, "x");
  }
  print_poly(out, cfg, integrate_symmetric(W, m, n, opts));
  return kOk;
}

// --- schur / expand / gysin / residue -----------------------------------

struct SchurArgs {
  std::string partition;
  std::string vars;
  std::optional<std::size_t> nvars;
  bool negate = false;
};

int cmd_schur(const SchurArgs& a, const RunConfig& cfg, std::ostream& out) {
  const Partition I = parse_partition(a.partition);
  const auto vars1 = parse_indices(a.vars);
  std::size_t nvars = a.nvars.value_or(0);
  for (auto v : vars1) nvars = std::max(nvars, v);
  print_poly(out, cfg, schur(I, zero_based(vars1, nvars), nvars, a.negate));
  return kOk;
}

struct ExpandArgs {
  std::string poly;
  std::size_t nvars = 0;
  std::string vars;
  std::string xvars;
  std::string vvars;
};

int cmd_expand(const ExpandArgs& a, const RunConfig& cfg, std::ostream& out) {
  const MultiPoly p = parse_poly(a.poly, a.nvars);
  SchurTable t;
  if (!a.vars.empty()) {
    if (!a.xvars.empty() || !a.vvars.empty()) throw InvalidArgument("use either --vars or --xvars/--vvars");
    t = expand_schur(p, zero_based(parse_indices(a.vars), a.nvars));
  } else {
    if (a.xvars.empty() || a.vvars.empty()) throw InvalidArgument("--xvars and --vvars are both required");
    t = expand_two_alphabets(p, zero_based(parse_indices(a.xvars), a.nvars),
                             zero_based(parse_indices(a.vvars), a.nvars));
  }
  print_table(out, cfg, t);
  return kOk;
}

struct GysinArgs {
  std::string grass;
  std::string J;
  std::string K;
  bool check = false;
};

int cmd_gysin(const GysinArgs& a, const RunConfig& cfg, std::ostream& out) {
  const auto [m, n] = parse_grass(a.grass);
  const Partition J = parse_partition(a.J);
  const Partition K = parse_partition(a.K);
  const GysinResult r = gysin_schur(J, K, m, n);
  const MultiPoly value = gysin_schur_poly(J, K, m, n);
  if (a.check && gysin_localization(J, K, m, n) != value)
    throw Inconsistent("Schur formula disagrees with localization");
  if (cfg.json_output) {
    json j = {{"sign", r.sign}, {"poly", to_json(value)}};
    if (r.sign != 0) j["I"] = r.I.parts();
    out << j.dump() << '\n';
  } else if (r.sign == 0) {
    out << "0\n";
  } else {
    out << (r.sign > 0 ? "" : "-") << "S" << to_string(r.I) << " = " << to_string(value) << '\n';
  }
  return kOk;
}

struct ResidueArgs {
  std::string grass;
  std::string templ;
};

int cmd_residue(const ResidueArgs& a, const RunConfig& cfg, std::ostream& out) {
  const auto [m, n] = parse_grass(a.grass);
  print_poly(out, cfg, residue_integral(parse_poly(a.templ, m, "x"), m, n));
  return kOk;
}

// --- omega1 --------------------------------------------------------------

struct Omega1Args {
  std::size_t n = 0;
  std::string method;
  std::string out_dir = ".";
  bool allow_heavy = false;
};

int cmd_omega1(const Omega1Args& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.n == 0) throw InvalidArgument("--n must be at least 1");
  if (2 * a.n > kMaxVars) throw InvalidArgument("--n is too large");
  if (a.n >= kHeavyOmega1 && !a.allow_heavy) {
    err << "omega1 --n " << a.n << " is a heavy run (about a minute of CPU with the modular "
        << "method); pass --allow-heavy to proceed\n";
    return kHeavyRefused;
  }
  Omega1Options opts;
  opts.workers = cfg.workers;
  if (!cfg.cache_dir.empty()) {
    opts.cache_dir = fs::path(cfg.cache_dir);
  } else {
    opts.cache_dir = cache_dir_from_env();
  }
  const bool heavy = a.n >= kHeavyOmega1;
  const Omega1Method method =
      a.method.empty() ? (heavy ? Omega1Method::modular : Omega1Method::direct)
                       : parse_omega1_method(a.method);
  opts.full_table = !heavy;
  const Omega1Result r = omega1_local(a.n, method, opts);

  // Consistency: the Euler characteristic counts the fixed points in X.
  std::size_t members = 0;
  for (const auto& p : fixed_points(a.n, 2 * a.n))
    if (omega1_depth(p) >= 1) ++members;
  const Rational chi = r.full_table ? euler_characteristic(r.table)
                                    : omega1_euler_from_raw_top(*r.raw_top, a.n);
  if (chi != Rational(static_cast<long>(members)))
    throw Inconsistent("Euler characteristic " + to_string(chi) + " differs from the " +
                       std::to_string(members) + " fixed points of the variety");

  const SchurTable schur_table = omega1_schur_table(r.f, a.n);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string tag = std::to_string(a.n);
  write_file(dir / ("f" + tag + ".json"), to_json(r.f).dump(1) + "\n");
  write_file(dir / ("table" + tag + ".json"), to_json(r.table).dump(1) + "\n");
  write_file(dir / ("schur" + tag + ".json"), to_json(schur_table).dump(1) + "\n");

  if (cfg.json_output) {
    json degrees = json::array();
    for (int d = 0; d <= r.f.degree(); ++d) degrees.push_back(to_string(r.f.homogeneous_component(d)));
    out << json{{"n", a.n},
                {"method", to_string(method)},
                {"terms", r.f.size()},
                {"euler_characteristic", to_string(chi)},
                {"degrees", std::move(degrees)}}
               .dump()
        << '\n';
  } else {
    out << "f" << a.n << " (" << r.f.size() << " terms, method " << to_string(method) << ")\n";
    for (int d = 0; d <= r.f.degree(); ++d) {
      const MultiPoly c = r.f.homogeneous_component(d);
      if (c.is_zero()) continue;
      out << "deg " << d << ": " << (c.size() <= 64 ? to_string(c) : std::to_string(c.size()) + " terms")
          << '\n';
    }
    out << "euler characteristic: " << to_string(chi) << '\n';
  }
  return kOk;
}

// --- cone ----------------------------------------------------------------

struct ConeArgs {
  std::string scalar;
  std::string weights;
  std::string b0;
  std::size_t nvars = 0;
};

int cmd_cone(const ConeArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (!a.scalar.empty()) {
    if (!a.weights.empty()) throw InvalidArgument("use either --scalar or --weights");
    const MultiPoly c = scalar_cone_class(parse_rationals(a.scalar));
    const std::vector<std::string> names{"t"};
    if (cfg.json_output) {
      out << json{{"poly", to_json(c)}, {"text", to_string(c, std::span<const std::string>(names))}}.dump()
          << '\n';
    } else {
      out << to_string(c, std::span<const std::string>(names)) << '\n';
    }
    return kOk;
  }
  if (a.weights.empty() || a.nvars == 0) throw InvalidArgument("--weights needs --nvars");
  std::vector<LinearForm> w;
  std::stringstream ss(a.weights);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const MultiPoly f = parse_poly(item, a.nvars);
    if (f.degree() != 1 || !f.is_homogeneous()) throw InvalidArgument("weight '" + item + "' is not linear");
    std::vector<std::int64_t> coeffs(a.nvars, 0);
    for (const auto& t : f.terms()) {
      if (t.coef.get_den() != 1 || !t.coef.get_num().fits_slong_p())
        throw InvalidArgument("weights need integer coefficients");
      coeffs[static_cast<std::size_t>(t.mono.last_variable())] = t.coef.get_num().get_si();
    }
    w.emplace_back(std::move(coeffs));
  }
  const MultiPoly b0 = a.b0.empty() ? MultiPoly(a.nvars) : parse_poly(a.b0, a.nvars);
  print_poly(out, cfg, projective_cone_class(b0, w));
  return kOk;
}

// --- positivity ----------------------------------------------------------

struct PositivityArgs {
  std::string class_file;
  std::string poly;
  std::size_t nvars = 0;
  std::string tree;
};

std::vector<LinearForm> deepest_point_weights(std::size_t nvars) {
  if (nvars % 2 != 0) return {};
  std::vector<std::size_t> base(nvars / 2);
  std::iota(base.begin(), base.end(), 1);
  return tangent_weights(GrassPoint::make(nvars / 2, nvars, base));
}

int cmd_positivity(const PositivityArgs& a, const RunConfig& cfg, std::ostream& out) {
  MultiPoly p;
  if (!a.class_file.empty()) {
    const json j = read_json_file(a.class_file);
    p = poly_from_json(j.contains("poly") ? j.at("poly") : j);
  } else if (!a.poly.empty()) {
    if (a.nvars == 0) throw InvalidArgument("--poly needs --nvars");
    p = parse_poly(a.poly, a.nvars);
  } else {
    throw InvalidArgument("give --class or --poly");
  }
  const TreeBasis tree = TreeBasis::parse(a.tree, p.nvars());
  const MultiPoly u = change_basis(p, tree);
  const NonnegReport report = check_nonneg(u);
  const auto weights = deepest_point_weights(p.nvars());
  const bool positive_basis = !weights.empty() && is_positive_basis(tree, weights);
  if (cfg.json_output) {
    json neg = json::array();
    for (const auto& t : report.negative)
      neg.push_back(to_string(MultiPoly::monomial(u.nvars(), t.mono, t.coef), "u"));
    out << json{{"tree", to_string(tree)},
                {"positive_basis", positive_basis},
                {"pass", report.ok},
                {"terms", u.size()},
                {"negative", std::move(neg)}}
               .dump()
        << '\n';
  } else {
    out << "tree " << to_string(tree) << '\n';
    if (!weights.empty()) out << "positive basis: " << (positive_basis ? "yes" : "no") << '\n';
    out << (report.ok ? "PASS" : "FAIL") << " (" << u.size() << " terms, " << report.negative.size()
        << " negative)\n";
    for (const auto& t : report.negative)
      out << "  " << to_string(MultiPoly::monomial(u.nvars(), t.mono, t.coef), "u") << '\n';
  }
  return report.ok ? kOk : kCheckFailed;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  bool list = false;
  bool allow_heavy = false;
};

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (a.list || a.suite.empty()) {
    for (const auto& s : suite_names()) out << s << '\n';
    return kOk;
  }
  SuiteOptions so;
  so.workers = cfg.workers;
  so.allow_heavy = a.allow_heavy;
  const std::vector<std::string> suites =
      a.suite == "all" ? suite_names() : std::vector<std::string>{a.suite};
  bool all_ok = true;
  json report = json::array();
  for (const auto& s : suites) {
    for (const auto& c : run_suite(s, so)) {
      all_ok = all_ok && c.ok;
      if (cfg.json_output) {
        report.push_back({{"suite", s}, {"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      } else {
        out << (c.ok ? "PASS " : "FAIL ") << s << ": " << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
      }
    }
  }
  if (cfg.json_output) out << report.dump() << '\n';
  return all_ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant localization calculator", "eqloc"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json_output, "Machine-readable output");
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $EQLOC_CACHE_DIR)");

  IntegrateArgs ia;
  auto* integrate_cmd = app.add_subcommand("integrate", "Integrate over a Grassmannian by localization");
  integrate_cmd->add_option("--grass", ia.grass, "m,n for Grass_m(C^n)");
  integrate_cmd->add_option("--power", ia.power, "Power of c1(O(1))");
  integrate_cmd->add_flag("--volume", ia.volume, "c1(O(1)) to the dimension");
  integrate_cmd->add_option("--class", ia.class_file, "Local class table JSON");
  integrate_cmd->add_option("--template", ia.templ, "Symmetric polynomial in x1..xm");
  integrate_cmd->add_option("--degree-cap", ia.degree_cap, "Only output degrees up to this");

  SchurArgs sa;
  auto* schur_cmd = app.add_subcommand("schur", "Schur polynomial by the bialternant");
  schur_cmd->add_option("--partition", sa.partition, "Partition, e.g. 2,1")->required();
  schur_cmd->add_option("--vars", sa.vars, "1-based variables, e.g. 1,2")->required();
  schur_cmd->add_option("--nvars", sa.nvars, "Ring size");
  schur_cmd->add_flag("--negate", sa.negate, "Evaluate at -t");

  ExpandArgs ea;
  auto* expand_cmd = app.add_subcommand("expand", "Expand a symmetric polynomial in Schur functions");
  expand_cmd->add_option("--poly", ea.poly, "Polynomial in t1..tN")->required();
  expand_cmd->add_option("--nvars", ea.nvars, "Ring size")->required();
  expand_cmd->add_option("--vars", ea.vars, "One alphabet");
  expand_cmd->add_option("--xvars", ea.xvars, "First alphabet, read as -t");
  expand_cmd->add_option("--vvars", ea.vvars, "Second alphabet");

  GysinArgs ga;
  auto* gysin_cmd = app.add_subcommand("gysin", "Integral of S_J(Q) S_K(R) as a Schur function");
  gysin_cmd->add_option("--grass", ga.grass, "m,n")->required();
  gysin_cmd->add_option("-J,--quotient", ga.J, "Partition for the quotient bundle")->required();
  gysin_cmd->add_option("-K,--tautological", ga.K, "Partition for the tautological bundle")->default_val("");
  gysin_cmd->add_flag("--check", ga.check, "Cross-check by localization");

  ResidueArgs ra;
  auto* residue_cmd = app.add_subcommand("residue", "Integral by iterated residues at infinity");
  residue_cmd->add_option("--grass", ra.grass, "m,n")->required();
  residue_cmd->add_option("--template", ra.templ, "Symmetric polynomial in x1..xm")->required();

  Omega1Args oa;
  auto* omega1_cmd = app.add_subcommand("omega1", "Local class of Omega_1(n) at its most singular point");
  omega1_cmd->add_option("--n", oa.n, "n")->required();
  omega1_cmd->add_option("--method", oa.method,
                         "direct | gkm | grouped | modular (default: direct, modular for n >= 4)")
      ->check(CLI::IsMember({"direct", "gkm", "grouped", "modular"}));
  omega1_cmd->add_option("--out", oa.out_dir, "Output directory");
  omega1_cmd->add_flag("--allow-heavy", oa.allow_heavy, "Permit n >= 4");

  ConeArgs ca;
  auto* cone_cmd = app.add_subcommand("cone", "Local class at the vertex of a cone");
  cone_cmd->add_option("--scalar", ca.scalar, "Coefficients a0,...,a(n-1) under scalar action");
  cone_cmd->add_option("--weights", ca.weights, "Weights separated by ';'");
  cone_cmd->add_option("--b0", ca.b0, "b0 polynomial");
  cone_cmd->add_option("--nvars", ca.nvars, "Ring size for --weights");

  PositivityArgs pa;
  auto* positivity_cmd = app.add_subcommand("positivity", "Nonnegativity in a spanning-tree basis");
  positivity_cmd->add_option("--class", pa.class_file, "Polynomial JSON (or omega1 f file)");
  positivity_cmd->add_option("--poly", pa.poly, "Polynomial in t1..tN");
  positivity_cmd->add_option("--nvars", pa.nvars, "Ring size for --poly");
  positivity_cmd->add_option("--tree", pa.tree, "Edges, e.g. 1>2,2>4,4>3")->required();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a regression suite");
  verify_cmd->add_option("suite", va.suite, "Suite name or 'all'");
  verify_cmd->add_flag("--list", va.list, "List suites");
  verify_cmd->add_flag("--allow-heavy", va.allow_heavy, "Include heavy checks");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*integrate_cmd) return cmd_integrate(ia, cfg, out);
    if (*schur_cmd) return cmd_schur(sa, cfg, out);
    if (*expand_cmd) return cmd_expand(ea, cfg, out);
    if (*gysin_cmd) return cmd_gysin(ga, cfg, out);
    if (*residue_cmd) return cmd_residue(ra, cfg, out);
    if (*omega1_cmd) return cmd_omega1(oa, cfg, out, err);
    if (*cone_cmd) return cmd_cone(ca, cfg, out);
    if (*positivity_cmd) return cmd_positivity(pa, cfg, out);
    if (*verify_cmd) return cmd_verify(va, cfg, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const MathError& e) {
    err << "inconsistent: " << e.what() << '\n';
    return kMathError;
  }
  return kInputError;
}

}  // namespace eqloc::cli
