#include "arlog/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace arlog::analysis {
namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json param_json(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return number(x);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          Json arr = Json::array();
          for (double d : x) arr.push_back(number(d));
          return arr;
        } else {
          return x;
        }
      },
      v);
}

std::string param_text(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          std::string s;
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ";" : "") + format_double(x[i]);
          return s;
        } else {
          return x;
        }
      },
      v);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kPublished: return "published";
    case Provenance::kDerived: return "derived";
    case Provenance::kEmpirical: return "empirical";
  }
  return "unknown";
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

double ExperimentReport::stat(std::string_view name) const {
  for (const auto& s : stats) {
    if (s.name == name) return s.value;
  }
  throw std::out_of_range("no stat named " + std::string(name));
}

const Verdict& ExperimentReport::verdict(std::string_view name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw std::out_of_range("no verdict named " + std::string(name));
}

const Target& ExperimentReport::target(std::string_view name) const {
  for (const auto& t : targets) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no target named " + std::string(name));
}

std::string ExperimentReport::to_json(int indent) const {
  Json j;
  j["experiment"] = experiment;
  Json p = Json::object();
  for (const auto& param : params) p[param.name] = param_json(param.value);
  j["params"] = p;
  j["seed"] = seed;
  j["reps"] = reps;
  Json s = Json::object();
  for (const auto& stat : stats) s[stat.name] = number(stat.value);
  j["stats"] = s;
  Json t = Json::array();
  for (const auto& target : targets) {
    t.push_back({{"name", target.name},
                 {"value", target.value},
                 {"provenance", to_string(target.provenance)},
                 {"source", target.source}});
  }
  j["targets"] = t;
  Json tol = Json::object();
  for (const auto& v : verdicts) tol[v.name] = number(v.tolerance);
  j["tolerances"] = tol;
  Json vs = Json::array();
  for (const auto& v : verdicts) {
    vs.push_back({{"name", v.name},
                  {"target", v.target},
                  {"observed", number(v.observed)},
                  {"tolerance", number(v.tolerance)},
                  {"rule", v.rule},
                  {"passed", v.passed}});
  }
  j["verdicts"] = vs;
  j["exploratory"] = exploratory;
  j["passed"] = passed();
  j["notes"] = notes;
  return j.dump(indent) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::string out = "section,name,value,target,tolerance,provenance,passed\n";
  auto row = [&out](std::string_view section, std::string_view name, std::string_view value,
                    std::string_view target, std::string_view tolerance, std::string_view provenance,
                    std::string_view passed) {
    out += csv_field(section) + ',' + csv_field(name) + ',' + csv_field(value) + ',' + csv_field(target) +
           ',' + csv_field(tolerance) + ',' + csv_field(provenance) + ',' + csv_field(passed) + '\n';
  };
  row("meta", "experiment", experiment, "", "", "", "");
  row("meta", "seed", std::to_string(seed), "", "", "", "");
  row("meta", "reps", std::to_string(reps), "", "", "", "");
  for (const auto& p : params) row("param", p.name, param_text(p.value), "", "", "", "");
  for (const auto& s : stats) row("stat", s.name, format_double(s.value), "", "", "", "");
  for (const auto& t : targets) row("target", t.name, t.value, "", "", to_string(t.provenance), "");
  for (const auto& v : verdicts) {
    row("verdict", v.name, format_double(v.observed), v.target, format_double(v.tolerance), "",
        v.passed ? "true" : "false");
  }
  return out;
}

}  // namespace arlog::analysis
