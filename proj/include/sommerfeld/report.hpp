#pragma once

// Level tables across methods, their deviations, and CSV/JSON serialization.

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sommerfeld/closed_form_spectra.hpp"
#include "sommerfeld/error.hpp"
#include "sommerfeld/numerov_oracle.hpp"
#include "sommerfeld/phase_integral_engine.hpp"
#include "sommerfeld/potential_catalog.hpp"

namespace sommerfeld {

inline constexpr double default_compare_tol = 1e-8;
inline constexpr const char* schema_version = "1";

inline constexpr std::array<Method, 4> all_methods = {Method::exact, Method::wkb_closed,
                                                      Method::wkb_numeric, Method::numerov};

struct LevelComparison {
  QuantumState state;
  std::optional<double> e_exact;
  std::optional<double> e_wkb_closed;
  std::optional<double> e_wkb_numeric;
  std::optional<double> e_numerov;
  std::optional<double> abs_dev;  // absent with fewer than two methods
  std::optional<double> rel_dev;
  std::optional<bool> within_tol;

  std::optional<double>& energy(Method m) {
    switch (m) {
      case Method::exact: return e_exact;
      case Method::wkb_closed: return e_wkb_closed;
      case Method::wkb_numeric: return e_wkb_numeric;
      case Method::numerov: return e_numerov;
    }
    return e_exact;
  }
  const std::optional<double>& energy(Method m) const {
    return const_cast<LevelComparison*>(this)->energy(m);
  }
};

struct ComputeOptions {
  double tol = default_compare_tol;
  double phase_tol = default_phase_tol;
  double numerov_tol = default_numerov_tol;
  int points = default_grid_points;
  int jobs = 1;
};

inline double compute_level(const PotentialModel& model, Method method, int n_r,
                            const ComputeOptions& opt = {}) {
  switch (method) {
    case Method::exact: return exact_level(model, state_of(model, n_r)).value;
    case Method::wkb_closed: return wkb_closed_level(model, state_of(model, n_r)).value;
    case Method::wkb_numeric:
      return quantize_level(model.with_langer(true), n_r, opt.phase_tol).value;
    case Method::numerov: return solve_eigenvalue(model, n_r, opt.numerov_tol, opt.points).energy;
  }
  fail(ErrorCode::InvalidParameter, "unknown method");
}

// Max pairwise spread of the present energies; relative to the largest
// magnitude unless that is below 1e-14.
inline void fill_deviations(LevelComparison& row, double tol) {
  std::vector<double> e;
  for (auto m : all_methods) {
    if (row.energy(m)) e.push_back(*row.energy(m));
  }
  row.abs_dev.reset();
  row.rel_dev.reset();
  row.within_tol.reset();
  if (e.size() < 2) return;
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  double scale = 0.0;
  for (double v : e) scale = std::max(scale, std::fabs(v));
  row.abs_dev = *hi - *lo;
  const bool tiny = scale < 1e-14;
  row.rel_dev = tiny ? *row.abs_dev : *row.abs_dev / scale;
  row.within_tol = *row.rel_dev <= tol;
}

// Methods without the state (NoSuchBoundState) leave their cell empty. A row
// that no method can fill rethrows.
inline LevelComparison compute_row(const PotentialModel& model, const std::vector<Method>& methods,
                                   int n_r, const ComputeOptions& opt = {}) {
  LevelComparison row;
  row.state = state_of(model, n_r);
  std::optional<Error> missing;
  for (auto m : methods) {
    try {
      row.energy(m) = compute_level(model, m, n_r, opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSuchBoundState) throw;
      missing = e;
    }
  }
  bool any = false;
  for (auto m : methods) any = any || row.energy(m).has_value();
  if (!any && missing) throw *missing;
  fill_deviations(row, opt.tol);
  return row;
}

// Rows come back sorted by n_r whatever the number of jobs.
inline std::vector<LevelComparison> compute_table(const PotentialModel& model,
                                                  const std::vector<Method>& methods,
                                                  std::vector<int> states,
                                                  const ComputeOptions& opt = {}) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  std::vector<LevelComparison> rows(states.size());
  std::vector<std::exception_ptr> errors(states.size());
  const int jobs = std::clamp(opt.jobs, 1, std::max(1, static_cast<int>(states.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      rows[i] = compute_row(model, methods, states[i], opt);
    }
    return rows;
  }
  std::mutex lock;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::lock_guard<std::mutex> g(lock);
        if (next == states.size()) return;
        i = next++;
      }
      try {
        rows[i] = compute_row(model, methods, states[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

// A row missing all but one method is a failure: the methods disagree on
// whether the state exists.
inline bool all_within(const std::vector<LevelComparison>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const LevelComparison& r) { return r.within_tol.value_or(false); });
}

// ---- serialization

inline std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string_view angular_kind_name(Angular a) {
  switch (a) {
    case Angular::orbital: return "l";
    case Angular::total: return "j";
    case Angular::none: return "none";
  }
  return "none";
}

inline Angular parse_angular_kind(std::string_view s) {
  if (s == "l") return Angular::orbital;
  if (s == "j") return Angular::total;
  if (s == "none") return Angular::none;
  fail(ErrorCode::InvalidParameter, "unknown angular kind '" + std::string(s) + "'");
}

inline nlohmann::json model_json(const PotentialModel& model) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : model.params()) params[name] = value;
  return {{"kind", kind_name(model.kind())},
          {"params", params},
          {"dim", model.dim()},
          {"units", model.units()}};
}

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> opt_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace detail

inline nlohmann::json row_json(const LevelComparison& r) {
  nlohmann::json j;
  j["n_r"] = r.state.n_r;
  j["angular_kind"] = angular_kind_name(r.state.kind);
  j["angular"] = r.state.kind == Angular::none ? nlohmann::json(nullptr)
                                                : nlohmann::json(r.state.angular);
  j["dim"] = r.state.dim;
  for (auto m : all_methods) j["e_" + std::string(method_name(m))] = detail::opt_json(r.energy(m));
  j["abs_dev"] = detail::opt_json(r.abs_dev);
  j["rel_dev"] = detail::opt_json(r.rel_dev);
  j["within_tol"] = detail::opt_json(r.within_tol);
  return j;
}

inline LevelComparison row_from_json(const nlohmann::json& j) {
  LevelComparison r;
  r.state.n_r = j.at("n_r").get<int>();
  r.state.kind = parse_angular_kind(j.at("angular_kind").get<std::string>());
  r.state.angular = j.at("angular").is_null() ? 0.0 : j.at("angular").get<double>();
  r.state.dim = j.at("dim").get<int>();
  for (auto m : all_methods) {
    r.energy(m) = detail::opt_from<double>(j.at("e_" + std::string(method_name(m))));
  }
  r.abs_dev = detail::opt_from<double>(j.at("abs_dev"));
  r.rel_dev = detail::opt_from<double>(j.at("rel_dev"));
  r.within_tol = detail::opt_from<bool>(j.at("within_tol"));
  return r;
}

inline nlohmann::json table_json(const PotentialModel& model,
                                 const std::vector<LevelComparison>& rows, double tol) {
  nlohmann::json out;
  out["schema_version"] = schema_version;
  out["model"] = model_json(model);
  out["tolerance"] = tol;
  out["rows"] = nlohmann::json::array();
  for (const auto& r : rows) out["rows"].push_back(row_json(r));
  return out;
}

inline std::vector<LevelComparison> table_from_json(const nlohmann::json& doc) {
  if (doc.at("schema_version").get<std::string>() != schema_version) {
    fail(ErrorCode::InvalidParameter, "unsupported schema_version");
  }
  std::vector<LevelComparison> rows;
  for (const auto& r : doc.at("rows")) rows.push_back(row_from_json(r));
  return rows;
}

inline constexpr const char* csv_header =
    "n_r,angular,e_exact,e_wkb_closed,e_wkb_numeric,e_numerov,abs_dev,rel_dev,within_tol";

inline std::string table_csv(const std::vector<LevelComparison>& rows) {
  auto cell = [](const std::optional<double>& v) { return v ? shortest(*v) : std::string(); };
  std::string out = std::string(csv_header) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.state.n_r) + ",";
    if (r.state.kind != Angular::none) out += shortest(r.state.angular);
    for (auto m : all_methods) out += "," + cell(r.energy(m));
    out += "," + cell(r.abs_dev) + "," + cell(r.rel_dev) + ",";
    if (r.within_tol) out += *r.within_tol ? "true" : "false";
    out += "\n";
  }
  return out;
}

// Flat key/value documents (integrals, fine structure) as a one-row CSV.
inline std::string record_csv(const std::vector<std::pair<std::string, double>>& fields) {
  std::string head, vals;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    head += (i ? "," : "") + fields[i].first;
    vals += (i ? "," : "") + shortest(fields[i].second);
  }
  return head + "\n" + vals + "\n";
}

}  // namespace sommerfeld
