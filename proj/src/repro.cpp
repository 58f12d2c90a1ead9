#include "qpac/repro.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpac/config.hpp"
#include "qpac/errors.hpp"
#include "qpac/experiments.hpp"

namespace qpac {
namespace {

using nlohmann::json;

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_number(v);
        else return v;
      },
      c);
}

std::optional<double> cell_number(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return *d;
  if (auto i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::nullopt;
}

bool compare(double lhs, const std::string& op, const json& rhs, double tol) {
  if (op == "finite_positive") return std::isfinite(lhs) && lhs > 0.0;
  if (op == "in") return lhs >= rhs.at(0).get<double>() && lhs <= rhs.at(1).get<double>();
  const double r = rhs.get<double>();
  if (op == "<") return lhs < r;
  if (op == "<=") return lhs <= r + tol;
  if (op == ">") return lhs > r;
  if (op == ">=") return lhs >= r - tol;
  if (op == "==") return std::abs(lhs - r) <= tol;
  throw ConfigError("unknown assertion op '" + op + "'");
}

bool cell_matches(const Cell& c, const json& value) {
  if (value.is_string()) return cell_text(c) == value.get<std::string>();
  const auto num = cell_number(c);
  return num && *num == value.get<double>();
}

bool row_selected(const ResultTable& t, const std::vector<Cell>& row, const json& where) {
  if (where.is_null()) return true;
  const Cell& c = row[t.column_index(where.at("column").get<std::string>())];
  const std::string op = where.value("op", "==");
  if (op == "==") return cell_matches(c, where.at("value"));
  const auto num = cell_number(c);
  return num && compare(*num, op, where.at("value"), 0.0);
}

std::vector<const std::vector<Cell>*> selected_rows(const ResultTable& t, const json& a) {
  std::vector<const std::vector<Cell>*> out;
  const json where = a.contains("where") ? a.at("where") : json(nullptr);
  for (const auto& row : t.rows) {
    if (row_selected(t, row, where)) out.push_back(&row);
  }
  return out;
}

const std::vector<Cell>& row_at_key(const ResultTable& t, const std::string& key, const json& value) {
  const std::size_t k = t.column_index(key);
  for (const auto& row : t.rows) {
    if (cell_matches(row[k], value)) return row;
  }
  throw ConfigError("no row with " + key + " = " + value.dump());
}

AssertionResult check_one(const ResultTable& t, const json& a) {
  AssertionResult res;
  res.name = a.value("name", a.value("kind", "assertion"));
  const std::string kind = a.at("kind").get<std::string>();
  const double tol = a.value("tol", 0.0);
  std::ostringstream observed;

  if (kind == "each") {
    const std::size_t col = t.column_index(a.at("column").get<std::string>());
    const std::string op = a.at("op").get<std::string>();
    const auto rows = selected_rows(t, a);
    res.pass = !rows.empty();
    for (const auto* row : rows) {
      const auto lhs = cell_number((*row)[col]);
      json rhs = a.contains("other") ? json(*cell_number((*row)[t.column_index(a.at("other").get<std::string>())]))
                                     : a.value("value", json(0.0));
      const bool ok = lhs && compare(*lhs, op, rhs, tol);
      observed << (observed.tellp() > 0 ? " " : "") << (lhs ? format_number(*lhs) : "?");
      res.pass = res.pass && ok;
    }
    res.expected = a.at("column").get<std::string>() + " " + op + " " +
                   (a.contains("other") ? a.at("other").get<std::string>()
                                        : a.value("value", json(nullptr)).dump());
  } else if (kind == "monotone") {
    const std::size_t col = t.column_index(a.at("column").get<std::string>());
    const std::string order = a.at("order").get<std::string>();
    const auto rows = selected_rows(t, a);
    res.pass = rows.size() >= 2;
    std::optional<double> prev;
    for (const auto* row : rows) {
      const double v = cell_number((*row)[col]).value_or(std::nan(""));
      observed << (prev ? " " : "") << format_number(v);
      if (prev) {
        const bool ok = order == "non_increasing"        ? v <= *prev
                        : order == "non_decreasing"      ? v >= *prev
                        : order == "strictly_increasing" ? v > *prev
                                                         : throw ConfigError("unknown order " + order);
        res.pass = res.pass && ok;
      }
      prev = v;
    }
    res.expected = a.at("column").get<std::string>() + " " + order;
  } else if (kind == "compare_rows") {
    const std::string key = a.at("key").get<std::string>();
    const std::size_t col = t.column_index(a.at("column").get<std::string>());
    const auto va = cell_number(row_at_key(t, key, a.at("a"))[col]);
    const auto vb = cell_number(row_at_key(t, key, a.at("b"))[col]);
    const std::string op = a.at("op").get<std::string>();
    res.pass = va && vb && compare(*va, op, json(*vb), tol);
    observed << (va ? format_number(*va) : "?") << " vs " << (vb ? format_number(*vb) : "?");
    res.expected = a.at("column").get<std::string>() + "[" + key + "=" + a.at("a").dump() + "] " +
                   op + " " + a.at("column").get<std::string>() + "[" + key + "=" + a.at("b").dump() + "]";
  } else {
    throw ConfigError("unknown assertion kind '" + kind + "'");
  }
  res.observed = observed.str();
  return res;
}

}  // namespace

bool ReproReport::pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return !results.empty();
}

std::string ReproReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS " : "FAIL ") << scenario << ": " << r.name << " (expected "
       << r.expected << "; observed " << r.observed << ")\n";
  }
  os << (pass() ? "PASS " : "FAIL ") << scenario << " [" << output_path << "]\n";
  return os.str();
}

json ReproReport::to_json() const {
  json j;
  j["scenario"] = scenario;
  j["output"] = output_path;
  j["pass"] = pass();
  j["assertions"] = json::array();
  for (const auto& r : results) {
    j["assertions"].push_back(
        {{"name", r.name}, {"pass", r.pass}, {"observed", r.observed}, {"expected", r.expected}});
  }
  return j;
}

json load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open manifest");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<std::string> scenario_names(const json& manifest) {
  std::vector<std::string> names;
  for (const auto& [name, _] : manifest.at("scenarios").items()) names.push_back(name);
  return names;
}

std::vector<AssertionResult> check_assertions(const ResultTable& table, const json& assertions) {
  std::vector<AssertionResult> out;
  for (const auto& a : assertions) out.push_back(check_one(table, a));
  return out;
}

ReproReport run_repro(const json& manifest, const std::string& scenario, const std::string& out_dir,
                      std::size_t threads) {
  const auto& scenarios = manifest.at("scenarios");
  if (!scenarios.contains(scenario)) {
    std::string known;
    for (const auto& n : scenario_names(manifest)) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + scenario + "' (known: " + known + ")");
  }
  const json& spec = scenarios.at(scenario);
  const json& cfg_json = spec.at("config");
  const Command command = parse_command(cfg_json.at("command").get<std::string>());
  ExperimentConfig cfg = apply_json(default_config(command), cfg_json, "manifest:" + scenario);
  cfg.threads = threads;
  cfg.out = (std::filesystem::path(out_dir) / (scenario + ".csv")).string();

  ReproReport report;
  report.scenario = scenario;
  report.output_path = execute(cfg);
  std::ifstream in(report.output_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const ResultTable table = ResultTable::from_csv(buf.str());
  report.results = check_assertions(table, spec.at("assertions"));
  return report;
}

}  // namespace qpac
