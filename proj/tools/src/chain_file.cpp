#include "sgmc/cli/chain_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sgmc/error.hpp"

namespace sgmc::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::kInvalidArgument, origin + ": " + field + ": " + msg);
}

std::size_t require_count(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(origin, field, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ChainFile parse_chain_file(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::kInvalidArgument, origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                                 ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object()) fail(origin, "<root>", "expected an object");
  ChainFile cf;

  if (!j.contains("states") || !j["states"].is_array() || j["states"].empty()) {
    fail(origin, "states", "expected a nonempty array of strings");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    const json& s = j["states"][i];
    std::string field = "states[" + std::to_string(i) + "]";
    if (!s.is_string()) fail(origin, field, "expected a string");
    if (!seen.insert(s.get<std::string>()).second) fail(origin, field, "duplicate state '" + s.get<std::string>() + "'");
    cf.spec.states.push_back(s.get<std::string>());
  }
  const std::size_t n = cf.spec.states.size();

  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty()) {
    fail(origin, "generators", "expected a nonempty array");
  }
  std::set<std::string> labels;
  Rational numeric_sum(0);
  bool any_symbolic = false;
  for (std::size_t g = 0; g < j["generators"].size(); ++g) {
    const json& gj = j["generators"][g];
    std::string field = "generators[" + std::to_string(g) + "]";
    if (!gj.is_object()) fail(origin, field, "expected an object");
    if (!gj.contains("label") || !gj["label"].is_string() || gj["label"].get<std::string>().empty()) {
      fail(origin, field + ".label", "expected a nonempty string");
    }
    std::string label = gj["label"].get<std::string>();
    std::string named = field + " ('" + label + "')";
    if (label == kBoxLabel || label == "#" || label.find('.') != std::string::npos) {
      fail(origin, named + ".label", "reserved label");
    }
    if (!labels.insert(label).second) fail(origin, named + ".label", "duplicate label");
    if (!gj.contains("action") || !gj["action"].is_array()) fail(origin, named + ".action", "expected an array");
    const json& act = gj["action"];
    if (act.size() != n) {
      fail(origin, named + ".action",
           "has " + std::to_string(act.size()) + " entries for " + std::to_string(n) + " states");
    }
    Transformation t;
    for (std::size_t i = 0; i < n; ++i) {
      std::string f = named + ".action[" + std::to_string(i) + "]";
      if (!act[i].is_number_integer()) fail(origin, f, "expected a state index");
      long long v = act[i].get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail(origin, f, "state index " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
      }
      t.images.push_back(static_cast<std::uint32_t>(v));
    }
    ChainGenerator cg{label, std::move(t), std::nullopt};
    if (gj.contains("prob")) {
      const json& p = gj["prob"];
      if (!p.is_string()) fail(origin, named + ".prob", "expected a string such as \"1/3\" or \"sym\"");
      if (p.get<std::string>() == "sym") {
        any_symbolic = true;
      } else {
        Rational r;
        try {
          r = parse_rational(p.get<std::string>());
        } catch (const Error& e) {
          fail(origin, named + ".prob", e.what());
        }
        if (r < 0 || r > 1) fail(origin, named + ".prob", "probability outside [0, 1]");
        numeric_sum += r;
        cg.prob = r;
      }
    } else {
      any_symbolic = true;
    }
    cf.spec.generators.push_back(std::move(cg));
  }
  if (numeric_sum > 1) fail(origin, "generators", "numeric probabilities sum to " + to_string(numeric_sum) + " > 1");
  if (!any_symbolic && numeric_sum != 1) {
    fail(origin, "generators", "numeric probabilities sum to " + to_string(numeric_sum) + ", expected 1");
  }

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) fail(origin, "options", "expected an object");
    for (const auto& [key, value] : o.items()) {
      std::string field = "options." + key;
      if (key == "max_elements") {
        cf.caps.max_elements = require_count(value, origin, field);
      } else if (key == "max_kr") {
        cf.caps.max_kr = require_count(value, origin, field);
      } else if (key == "max_mc") {
        cf.caps.max_mc = require_count(value, origin, field);
      } else if (key == "seed") {
        cf.seed = require_count(value, origin, field);
      } else if (key == "series_order") {
        cf.series_order = static_cast<std::uint32_t>(require_count(value, origin, field));
      } else {
        fail(origin, field, "unknown option");
      }
    }
  }
  return cf;
}

ChainFile load_chain_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_chain_file(ss.str(), path);
}

std::optional<Point> default_point(const MarkovChainSpec& spec) { return spec.numeric_point(); }

Point parse_eval(const std::string& text, const MarkovChainSpec& spec) {
  Point p;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    if (spec.generators[i].prob) p[static_cast<VarId>(i)] = *spec.generators[i].prob;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::kInvalidArgument, "--eval: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::optional<VarId> var;
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      const std::string& l = spec.generators[i].label;
      if (key == l || key == "x" + l || key == "x_" + l) var = static_cast<VarId>(i);
    }
    if (!var) throw Error(ErrorKind::kInvalidArgument, "--eval: unknown generator '" + key + "'");
    Rational v = parse_rational(item.substr(eq + 1));
    if (v < 0) throw Error(ErrorKind::kInvalidArgument, "--eval: negative value for '" + key + "'");
    const auto& prob = spec.generators[*var].prob;
    if (prob && *prob == 0 && v != 0) {
      throw Error(ErrorKind::kInvalidArgument, "--eval: generator '" + key + "' has probability 0 in the chain file");
    }
    p[*var] = v;
  }
  Rational sum(0);
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    auto it = p.find(static_cast<VarId>(i));
    if (it == p.end()) {
      throw Error(ErrorKind::kInvalidArgument, "--eval: no value for generator '" + spec.generators[i].label + "'");
    }
    sum += it->second;
  }
  if (sum != 1) throw Error(ErrorKind::kInvalidArgument, "--eval: probabilities sum to " + to_string(sum));
  return p;
}

}  // namespace sgmc::cli
