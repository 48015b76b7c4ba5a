// sommerfeld: spectra tables, method comparisons, action integrals, NU
// reductions and fine-structure numbers on the command line.
//
// exit codes: 0 ok, 2 usage, 3 tolerance failure (compare), 4 computation error

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sommerfeld/sommerfeld.hpp"

namespace {

using namespace sommerfeld;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_tolerance = 3;
constexpr int exit_computation = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlagSpec {
  const char* flag;
  const char* param;
  const char* help;
};

const std::vector<FlagSpec> model_flags = {
    {"--Z", "Z", "nuclear charge (coulomb, kepler_nd)"},
    {"--l", "l", "orbital quantum number"},
    {"--j", "j", "total angular momentum, half-odd (dirac)"},
    {"--mu", "mu", "coupling Z e^2/(hbar c) (relativistic_kg, dirac)"},
    {"--nu-sign", "nu_sign", "sign of nu in the second-order Dirac form, -1 or +1"},
    {"--gamma2", "gamma2", "Kratzer strength 2 m a^2 D/hbar^2"},
    {"--a", "a", "Poschl-Teller exponent at x = 0"},
    {"--b", "b", "Poschl-Teller exponent at the right wall"},
    {"--alpha", "alpha", "inverse range"},
    {"--V0", "V0", "well depth / strength"},
    {"--kappa2", "kappa2", "2 m V0/(hbar^2 alpha^2), alternative to --V0 (modified_poschl_teller)"},
};

struct KindFlags {
  PotentialKind kind;
  std::vector<std::string> required;
  std::vector<std::string> optional;
  bool free_dim = false;
};

const std::vector<KindFlags> kind_flags = {
    {PotentialKind::coulomb, {"Z", "l"}, {}, false},
    {PotentialKind::kepler_nd, {"Z", "l"}, {}, true},
    {PotentialKind::relativistic_kg, {"mu", "l"}, {}, false},
    {PotentialKind::dirac, {"mu", "j"}, {"nu_sign"}, false},
    {PotentialKind::kratzer, {"gamma2", "l"}, {}, false},
    {PotentialKind::oscillator_nd, {"l"}, {}, true},
    {PotentialKind::poschl_teller, {"a", "b"}, {"alpha", "V0"}, false},
    // V0 or kappa2, checked separately
    {PotentialKind::modified_poschl_teller, {}, {"V0", "kappa2", "alpha"}, false},
};

const KindFlags& flags_for(PotentialKind k) {
  for (const auto& f : kind_flags) {
    if (f.kind == k) return f;
  }
  throw UsageError("no flag table for kind");
}

std::string flag_of(const std::string& param) {
  for (const auto& f : model_flags) {
    if (param == f.param) return f.flag;
  }
  return "--" + param;
}

std::string_view family_of(PotentialKind k) {
  switch (k) {
    case PotentialKind::poschl_teller: return family_name(Family::trigonometric);
    case PotentialKind::modified_poschl_teller: return family_name(Family::hyperbolic);
    default: return family_name(Family::radial);
  }
}

struct ModelArgs {
  std::string kind;
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> opts;
  int dim = 0;
  CLI::Option* dim_opt = nullptr;
};

void add_model_options(CLI::App* app, ModelArgs& m) {
  app->add_option("--model", m.kind, "potential kind (see `list`)")->required();
  for (const auto& f : model_flags) {
    m.values[f.param] = 0.0;
    m.opts[f.param] = app->add_option(f.flag, m.values[f.param], f.help);
  }
  m.dim_opt = app->add_option("--dim", m.dim, "space dimension (kepler_nd, oscillator_nd)");
}

PotentialModel build_from(const ModelArgs& a) {
  const auto kind = parse_kind(a.kind);
  if (!kind) throw UsageError("--model: unknown kind '" + a.kind + "'");
  const auto& table = flags_for(*kind);
  auto allowed = [&](const std::string& p) {
    for (const auto& r : table.required) {
      if (r == p) return true;
    }
    for (const auto& o : table.optional) {
      if (o == p) return true;
    }
    return false;
  };
  Params params;
  for (const auto& [name, opt] : a.opts) {
    if (opt->count() == 0) continue;
    if (!allowed(name)) {
      throw UsageError(flag_of(name) + " does not apply to " + a.kind);
    }
    params[name] = a.values.at(name);
  }
  for (const auto& r : table.required) {
    if (!params.count(r)) throw UsageError(flag_of(r) + " is required for " + a.kind);
  }
  if (*kind == PotentialKind::modified_poschl_teller) {
    const bool v0 = params.count("V0") > 0;
    const bool k2 = params.count("kappa2") > 0;
    if (v0 == k2) throw UsageError("modified_poschl_teller takes exactly one of --V0, --kappa2");
    if (k2) {
      const double alpha = params.count("alpha") ? params.at("alpha") : 1.0;
      params["V0"] = 0.5 * params.at("kappa2") * alpha * alpha;
      params.erase("kappa2");
    }
  }
  int dim = default_dim(*kind);
  if (a.dim_opt->count() > 0) {
    if (!table.free_dim) throw UsageError("--dim does not apply to " + a.kind);
    dim = a.dim;
  }
  return build_model(*kind, params, dim, true);
}

std::vector<int> parse_states(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      throw UsageError("--nr: cannot read '" + t + "'");
    }
    if (pos != t.size() || v < 0) throw UsageError("--nr: expected n_r >= 0, got '" + t + "'");
    return v;
  };
  std::vector<int> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(s.substr(0, dots));
    const int hi = to_int(s.substr(dots + 2));
    if (hi < lo) throw UsageError("--nr: empty range '" + s + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw UsageError("--nr: no states given");
  return out;
}

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "all") return {all_methods.begin(), all_methods.end()};
  std::vector<Method> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto m = parse_method(item);
    if (!m) throw UsageError("--method: unknown method '" + item + "'");
    bool dup = false;
    for (auto x : out) dup = dup || x == *m;
    if (!dup) out.push_back(*m);
  }
  if (out.empty()) throw UsageError("--method: no methods given");
  return out;
}

Poly2 parse_poly(const std::string& flag, const std::string& s) {
  std::vector<double> c;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot read '" + item + "'");
    }
    if (pos != item.size()) throw UsageError(flag + ": cannot read '" + item + "'");
    c.push_back(v);
  }
  if (c.empty() || c.size() > 3) {
    throw UsageError(flag + ": expected 1 to 3 ascending coefficients");
  }
  c.resize(3, 0.0);
  return {c[0], c[1], c[2]};
}

json poly_json(const Poly2& p) { return json::array({p.c0, p.c1, p.c2}); }

struct Output {
  std::string format = "json";
};

void add_format(CLI::App* app, Output& out) {
  app->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---- subcommands

struct TableArgs {
  ModelArgs model;
  Output out;
  std::string nr = "0";
  std::string methods = "all";
  double tol = default_compare_tol;
  int jobs = 1;
  int points = default_grid_points;
};

void add_table_options(CLI::App* app, TableArgs& t) {
  add_model_options(app, t.model);
  add_format(app, t.out);
  app->add_option("--nr", t.nr, "radial quantum numbers: a..b or a comma list");
  app->add_option("--method", t.methods,
                  "exact, wkb_closed, wkb_numeric, numerov as a comma list, or all");
  app->add_option("--tol", t.tol, "relative tolerance for within_tol")
      ->check(CLI::PositiveNumber);
  app->add_option("--jobs", t.jobs, "worker threads for independent rows")
      ->check(CLI::PositiveNumber);
  app->add_option("--points", t.points, "Numerov grid points");
}

int run_table(const TableArgs& t, bool compare) {
  const auto methods = parse_methods(t.methods);
  if (compare && methods.size() < 2) throw UsageError("compare needs at least two methods");
  const auto states = parse_states(t.nr);
  const auto model = build_from(t.model);
  ComputeOptions opt;
  opt.tol = t.tol;
  opt.jobs = t.jobs;
  opt.points = t.points;
  const auto rows = compute_table(model, methods, states, opt);
  if (t.out.format == "csv") {
    std::cout << table_csv(rows);
  } else {
    emit(table_json(model, rows, t.tol));
  }
  if (compare && !all_within(rows)) return exit_tolerance;
  return exit_ok;
}

int run_list(const Output& out) {
  if (out.format == "csv") {
    std::cout << "kind,family,default_dim,required,optional,dim_flag\n";
  }
  json kinds = json::array();
  for (const auto& k : kind_flags) {
    std::vector<std::string> req, opt;
    for (const auto& r : k.required) req.push_back(flag_of(r));
    for (const auto& o : k.optional) opt.push_back(flag_of(o));
    if (k.kind == PotentialKind::modified_poschl_teller) req.push_back("--V0|--kappa2");
    if (out.format == "csv") {
      auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
        return s;
      };
      std::cout << kind_name(k.kind) << "," << family_of(k.kind) << "," << default_dim(k.kind)
                << "," << join(req) << "," << join(opt) << "," << (k.free_dim ? "true" : "false")
                << "\n";
    }
    kinds.push_back({{"kind", kind_name(k.kind)},
                     {"family", family_of(k.kind)},
                     {"default_dim", default_dim(k.kind)},
                     {"required", req},
                     {"optional", opt},
                     {"dim_flag", k.free_dim}});
  }
  if (out.format == "json") emit({{"schema_version", schema_version}, {"kinds", kinds}});
  return exit_ok;
}

struct IntegralArgs {
  Output out;
  double A = 0.0, B = 0.0, C = 0.0, eps = 0.0;
};

int run_integral(const std::string& which, const IntegralArgs& a) {
  std::vector<std::pair<std::string, double>> fields;
  TurningPoints tp;
  if (which == "hyperbolic") {
    const double v = hyperbolic_integral(a.eps);
    const double x = hyperbolic_turning_point(a.eps);
    fields = {{"eps", a.eps}, {"value", v}};
    tp = {-x, x};
  } else {
    const Family fam = which == "trig" ? Family::trigonometric : Family::radial;
    const double v = fam == Family::radial ? sommerfeld_integral(a.A, a.B, a.C)
                                           : trig_integral(a.A, a.B, a.C);
    tp = quadratic_turning_points(a.A, a.B, a.C, fam);
    fields = {{"A", a.A}, {"B", a.B}, {"C", a.C}, {"value", v}};
  }
  fields.emplace_back("x1", tp.lo);
  fields.emplace_back("x2", tp.hi);
  if (a.out.format == "csv") {
    std::cout << record_csv(fields);
    return exit_ok;
  }
  json doc{{"schema_version", schema_version}, {"integral", which}};
  for (const auto& [k, v] : fields) doc[k] = v;
  emit(doc);
  return exit_ok;
}

struct NuArgs {
  Output out;
  std::string sigma, tau_tilde, sigma_tilde;
};

int run_nu(const NuArgs& a) {
  HypergeometricCoefficients h;
  h.sigma = parse_poly("--sigma", a.sigma);
  h.tau_tilde = parse_poly("--tau-tilde", a.tau_tilde);
  h.sigma_tilde = parse_poly("--sigma-tilde", a.sigma_tilde);
  const auto reductions = reduce_hypergeometric(h);
  std::optional<Reduction> chosen;
  std::string why;
  try {
    chosen = select_bound_state_branch(reductions, h.sigma, h.tau_tilde);
  } catch (const Error& e) {
    why = e.what();
  }
  auto is_chosen = [&](const Reduction& r) {
    return chosen && chosen->branch.k_index == r.branch.k_index &&
           chosen->branch.radical_sign == r.branch.radical_sign;
  };
  if (a.out.format == "csv") {
    std::cout << "k_index,radical_sign,k,pi0,pi1,pi2,tau0,tau1,tau2,lambda,selected\n";
    for (const auto& r : reductions) {
      std::cout << r.branch.k_index << "," << r.branch.radical_sign << "," << shortest(r.k);
      for (double c : {r.pi_poly.c0, r.pi_poly.c1, r.pi_poly.c2, r.tau_poly.c0, r.tau_poly.c1,
                       r.tau_poly.c2, r.lambda}) {
        std::cout << "," << shortest(c);
      }
      std::cout << "," << (is_chosen(r) ? "true" : "false") << "\n";
    }
    return exit_ok;
  }
  json rows = json::array();
  for (const auto& r : reductions) {
    rows.push_back({{"k_index", r.branch.k_index},
                    {"radical_sign", r.branch.radical_sign},
                    {"k", r.k},
                    {"pi", poly_json(r.pi_poly)},
                    {"tau", poly_json(r.tau_poly)},
                    {"lambda", r.lambda},
                    {"selected", is_chosen(r)}});
  }
  json doc{{"schema_version", schema_version},
           {"sigma", poly_json(h.sigma)},
           {"tau_tilde", poly_json(h.tau_tilde)},
           {"sigma_tilde", poly_json(h.sigma_tilde)},
           {"reductions", rows}};
  doc["selection_error"] = why.empty() ? json(nullptr) : json(why);
  emit(doc);
  return exit_ok;
}

struct FineArgs {
  Output out;
  int n = 2;
  double mu = 1e-3;
};

int run_fine(const FineArgs& a) {
  const double kg = level_spread(Theory::kg, a.n, a.mu);
  const double dirac = level_spread(Theory::dirac, a.n, a.mu);
  const std::vector<std::pair<std::string, double>> fields = {
      {"n", static_cast<double>(a.n)},
      {"mu", a.mu},
      {"spread_kg", kg},
      {"spread_dirac", dirac},
      {"ratio", kg / dirac},
      {"limit", 4.0 * a.n / (2.0 * a.n - 1.0)}};
  if (a.out.format == "csv") {
    std::cout << record_csv(fields);
    return exit_ok;
  }
  json doc{{"schema_version", schema_version}};
  for (const auto& [k, v] : fields) doc[k] = v;
  doc["n"] = a.n;
  emit(doc);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical and exact bound-state spectra"};
  app.require_subcommand(1);

  Output list_out;
  auto* list = app.add_subcommand("list", "potential kinds and their flags");
  add_format(list, list_out);

  TableArgs levels_args;
  auto* levels = app.add_subcommand("levels", "energy table for a range of states");
  add_table_options(levels, levels_args);

  TableArgs compare_args;
  auto* compare = app.add_subcommand("compare", "compare methods; exit 3 if any row fails --tol");
  add_table_options(compare, compare_args);

  IntegralArgs int_args;
  auto* integral = app.add_subcommand("integral", "closed-form action integrals");
  integral->require_subcommand(1);
  auto* som = integral->add_subcommand("sommerfeld", "int sqrt(-A + B/r - C/r^2) dr");
  auto* trig = integral->add_subcommand("trig", "int sqrt(A - B/cos^2 t - C/sin^2 t) dt");
  auto* hyp = integral->add_subcommand("hyperbolic", "int sqrt(sech^2 x - eps) dx");
  for (auto* sub : {som, trig}) {
    sub->add_option("--A", int_args.A)->required();
    sub->add_option("--B", int_args.B)->required();
    sub->add_option("--C", int_args.C)->required();
    add_format(sub, int_args.out);
  }
  hyp->add_option("--eps", int_args.eps)->required();
  add_format(hyp, int_args.out);

  NuArgs nu_args;
  auto* nu = app.add_subcommand("nu-reduce", "Nikiforov-Uvarov reduction, ascending coefficients");
  nu->add_option("--sigma", nu_args.sigma, "sigma, degree <= 2")->required();
  nu->add_option("--tau-tilde", nu_args.tau_tilde, "tau~, degree <= 1")->required();
  nu->add_option("--sigma-tilde", nu_args.sigma_tilde, "sigma~, degree <= 2")->required();
  add_format(nu, nu_args.out);

  FineArgs fine_args;
  auto* fine = app.add_subcommand("finestructure", "Klein-Gordon / Dirac level spreads");
  fine->add_option("--n", fine_args.n, "principal quantum number >= 2")->required();
  fine->add_option("--mu", fine_args.mu, "coupling")->required();
  add_format(fine, fine_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*list) return run_list(list_out);
    if (*levels) return run_table(levels_args, false);
    if (*compare) return run_table(compare_args, true);
    if (*som) return run_integral("sommerfeld", int_args);
    if (*trig) return run_integral("trig", int_args);
    if (*hyp) return run_integral("hyperbolic", int_args);
    if (*nu) return run_nu(nu_args);
    if (*fine) return run_fine(fine_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_computation;
  }
  return exit_usage;
}
