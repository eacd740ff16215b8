#include "sgmc/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sgmc/cli/chain_file.hpp"
#include "sgmc/dot.hpp"
#include "sgmc/error.hpp"
#include "sgmc/kleene.hpp"
#include "sgmc/loop_graph.hpp"
#include "sgmc/mixing.hpp"
#include "sgmc/pipeline.hpp"

namespace sgmc::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kMaxExpressionChars = 20000;

struct Flags {
  std::string input;
  std::string out;
  std::string eval;
  std::uint64_t seed = 0;
  std::size_t max_elements = 0;
  std::size_t max_kr = 0;
  std::size_t max_mc = 0;
  std::uint32_t series_order = 40;
  bool timings = false;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* max_elements_opt = nullptr;
  CLI::Option* max_kr_opt = nullptr;
  CLI::Option* max_mc_opt = nullptr;
  CLI::Option* series_opt = nullptr;
};

struct Context {
  ChainFile file;
  PipelineOptions caps;
  std::uint64_t seed = 1;
  std::uint32_t series_order = 40;
  std::optional<Point> point;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("-i,--input", f.input, "chain file (JSON)")->required();
  app->add_option("-o,--out", f.out, "output file (default: stdout)");
  app->add_option("--eval", f.eval, "evaluation point, e.g. a=1/2,b=1/2");
  f.seed_opt = app->add_option("--seed", f.seed, "random seed (fallback: SGMC_SEED)");
  f.max_elements_opt = app->add_option("--max-elements", f.max_elements, "semigroup size cap");
  f.max_kr_opt = app->add_option("--max-kr", f.max_kr, "KR expansion vertex cap");
  f.max_mc_opt = app->add_option("--max-mc", f.max_mc, "McCammond expansion vertex cap");
  f.series_opt = app->add_option("--series-order", f.series_order, "series degree for cross-checks");
}

Context resolve(const Flags& f) {
  Context c;
  c.file = load_chain_file(f.input);
  c.caps = c.file.caps;
  if (f.max_elements_opt->count()) c.caps.max_elements = f.max_elements;
  if (f.max_kr_opt->count()) c.caps.max_kr = f.max_kr;
  if (f.max_mc_opt->count()) c.caps.max_mc = f.max_mc;
  if (f.seed_opt->count()) {
    c.seed = f.seed;
  } else if (const char* env = std::getenv("SGMC_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorKind::kInvalidArgument, "SGMC_SEED is not an unsigned integer");
    c.seed = v;
  } else if (c.file.seed) {
    c.seed = *c.file.seed;
  }
  c.series_order = f.series_opt->count() ? f.series_order : c.file.series_order.value_or(f.series_order);
  if (!f.eval.empty()) {
    c.point = parse_eval(f.eval, c.file.spec);
  } else {
    c.point = default_point(c.file.spec);
  }
  return c;
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::kInvalidArgument, f.out + ": cannot write");
  file << text;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json point_json(const Point& p, const MarkovChainSpec& spec) {
  json j = json::object();
  for (const auto& [v, value] : p) j[spec.generators.at(v).label] = to_string(value);
  return j;
}

json distribution_json(const Distribution& d, const MarkovChainSpec& spec) {
  json j = json::object();
  for (std::size_t i = 0; i < d.size(); ++i) j[spec.states[i]] = to_string(d[i]);
  return j;
}

json chain_json(const MarkovChainSpec& spec) {
  json gens = json::array();
  for (const auto& g : spec.generators) {
    gens.push_back({{"label", g.label}, {"action", g.action.images}, {"prob", g.prob ? to_string(*g.prob) : "sym"}});
  }
  return {{"states", spec.states}, {"generators", gens}};
}

/// Parses a word over `labels`: '.'-separated, or one label per code point.
/// "#" stands for the box label.
Word parse_word(const std::string& text, const std::vector<std::string>& labels) {
  auto lookup = [&](std::string token) -> LabelId {
    if (token == "#") token = kBoxLabel;
    auto it = std::find(labels.begin(), labels.end(), token);
    if (it == labels.end()) throw Error(ErrorKind::kUnknownVertexWord, "unknown letter '" + token + "' in '" + text + "'");
    return static_cast<LabelId>(it - labels.begin());
  };
  Word w;
  if (text.empty() || text == "𝟙") return w;
  if (text.find('.') != std::string::npos) {
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, '.')) w.push_back(lookup(token));
    return w;
  }
  for (std::size_t i = 0; i < text.size();) {
    std::size_t len = 1;
    auto c = static_cast<unsigned char>(text[i]);
    if (c >= 0xF0) {
      len = 4;
    } else if (c >= 0xE0) {
      len = 3;
    } else if (c >= 0xC0) {
      len = 2;
    }
    w.push_back(lookup(text.substr(i, len)));
    i += len;
  }
  return w;
}

json result_json(const FullReport& rep, const Ergodicity& erg) {
  const StationaryResult& r = rep.result;
  const FiniteSemigroup& s = r.semigroup;
  json elements = json::array();
  for (ElementId e = 0; e < s.core_size(); ++e) {
    elements.push_back({{"name", s.name(e)}, {"action", s.action(e).images}});
  }
  json ideal = json::array();
  for (ElementId e : r.ideal.members) ideal.push_back(s.name(e));
  json terminals = json::array();
  for (const auto& t : r.terminals) {
    json tj = {{"word", r.expanded.format_word(t.word)},
               {"element", s.name(t.element)},
               {"expression", to_string(t.expression, r.expanded.labels(), kMaxExpressionChars)},
               {"psi", to_string(t.psi, r.vars)}};
    if (t.limit) tj["limit"] = to_string(*t.limit, r.vars);
    terminals.push_back(std::move(tj));
  }
  json stationary = json::array();
  for (const auto& [e, f] : r.per_element) stationary.push_back({{"element", s.name(e)}, {"psi", to_string(f, r.vars)}});
  json j;
  j["chain"] = chain_json(rep.spec);
  j["semigroup"] = {{"size", s.core_size()},
                    {"elements", elements},
                    {"minimal_ideal", ideal},
                    {"ideal_left_zero", r.ideal.is_left_zero}};
  j["ergodicity"] = {{"irreducible", erg.irreducible},
                     {"period", erg.period},
                     {"recurrent_period", erg.recurrent_period},
                     {"closed_classes", erg.closed_classes}};
  j["method"] = r.method == StationaryResult::Method::kLeftZero ? "left_zero" : "general";
  if (r.box) j["eliminated"] = r.vars.name(r.elim);
  j["expansion"] = {{"kr_vertices", r.kr.graph.num_vertices()}, {"mc_vertices", r.mc.graph.num_vertices()}};
  j["terminals"] = terminals;
  j["stationary"] = stationary;
  j["residual_mass"] = to_string(r.residual_mass, r.vars);
  j["normalization"] = rep.normalization_ok;
  return j;
}

int cmd_analyze(const Flags& f, std::size_t points, std::ostream& out, std::ostream& err) {
  Context c = resolve(f);
  auto t0 = std::chrono::steady_clock::now();
  FullReport rep = full_report(c.file.spec, c.caps, points, c.seed, false);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json j = result_json(rep, ergodicity(c.file.spec));
  json checks = json::array();
  for (const auto& rec : rep.checks) {
    json cj = {{"point", point_json(rec.point, rep.spec)}, {"ok", rec.ok}};
    if (rec.error.empty()) {
      cj["symbolic"] = distribution_json(rec.symbolic, rep.spec);
      cj["oracle"] = distribution_json(rec.oracle, rep.spec);
    } else {
      cj["error"] = rec.error;
    }
    checks.push_back(std::move(cj));
  }
  j["verification"] = checks;
  j["verified"] = rep.verified;
  if (c.point) {
    Point pt = restrict_to_support(c.file.spec, *c.point);
    j["distribution"] = {{"point", point_json(pt, rep.spec)}, {"states", distribution_json(pushforward(rep.result, pt), rep.spec)}};
  }
  j["seed"] = c.seed;
  if (f.timings) j["seconds"] = seconds;
  emit(f, j.dump(2) + "\n", out);
  if (!rep.verified) {
    err << "verification failed\n";
    return kExitVerification;
  }
  return kExitOk;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  auto cols = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
  };
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], cols(r[i]));
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - cols(r[i]) + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

int cmd_mixing(const Flags& f, const std::string& epsilon_text, std::uint32_t tmax, std::uint32_t start,
               std::size_t trials, std::ostream& out, std::ostream& err) {
  Context c = resolve(f);
  if (!c.point) throw Error(ErrorKind::kInvalidArgument, "symbolic chain: --eval is required for mixing");
  MixingOptions mo;
  mo.epsilon = parse_rational(epsilon_text);
  mo.tmax = tmax;
  mo.start = start;
  mo.trials = trials;
  mo.seed = c.seed;
  MixingReport rep = mixing_report(c.file.spec, *c.point, mo, c.caps);
  MarkovChainSpec spec = c.file.spec.without_null_generators();
  VariableTable vars = spec.variables();
  FiniteSemigroup s = generate(spec.generator_specs(), c.caps.max_elements);

  Rational truncated(0);
  std::vector<Rational> long_tail = hitting_tails(rep.psi, c.series_order, restrict_to_support(c.file.spec, *c.point));
  for (std::uint32_t t = 1; t < long_tail.size(); ++t) truncated += long_tail[t];

  std::string text;
  text += "point: " + format_point(restrict_to_support(c.file.spec, *c.point), vars) + "\n\n";
  std::vector<std::vector<std::string>> rows{{"t", "Pr(tau>=t)", "decimal"}};
  for (std::size_t t = 0; t < rep.tail.size(); ++t) {
    rows.push_back({std::to_string(t), to_string(rep.tail[t]), fixed(to_double(rep.tail[t]))});
  }
  text += table(rows) + "\n";
  text += "E[tau] = " + to_string(rep.expected, vars) + "\n";
  text += "E[tau] at point = " + to_string(rep.expected_value) + " (" + fixed(to_double(rep.expected_value)) + ")\n";
  text += "sum of tails t=1.." + std::to_string(c.series_order) + " = " + fixed(to_double(truncated)) + "\n";
  text += "t_mix ≤ " + rep.tmix_bound.get_str() + " (epsilon = " + to_string(rep.epsilon) + ")\n";
  std::vector<std::vector<std::string>> per{{"element", "E[tau | entry]", "value"}};
  for (const auto& e : rep.per_element) {
    per.push_back({s.name(e.element), to_string(e.expected, vars), fixed(to_double(e.expected_value))});
  }
  text += "\n" + table(per);
  if (rep.asst) {
    std::vector<std::vector<std::string>> asst{{"t", "TV", "Pr(tau>t)", "holds"}};
    if (trials > 0) asst[0].push_back("TV(sim)");
    for (const auto& r : *rep.asst) {
      asst.push_back({std::to_string(r.t), fixed(to_double(r.tv), 9), fixed(to_double(r.tail), 9), r.holds ? "yes" : "NO"});
      if (r.simulated_tv) asst.back().push_back(fixed(*r.simulated_tv, 4));
    }
    text += "\n" + table(asst);
  } else {
    err << "warning: " << rep.asst_skipped << "; skipping the TV bound table\n";
  }

  json j;
  j["point"] = point_json(restrict_to_support(c.file.spec, *c.point), spec);
  json tails = json::array();
  for (const auto& t : rep.tail) tails.push_back(to_string(t));
  j["tail"] = tails;
  j["expected_tau"] = {{"function", to_string(rep.expected, vars)}, {"value", to_string(rep.expected_value)}};
  j["tail_sum"] = {{"upto", c.series_order}, {"value", to_string(truncated)}};
  j["epsilon"] = to_string(rep.epsilon);
  j["tmix_bound"] = rep.tmix_bound.get_str();
  json per_json = json::array();
  for (const auto& e : rep.per_element) {
    per_json.push_back({{"element", s.name(e.element)},
                        {"psi", to_string(e.psi, vars)},
                        {"expected_tau", to_string(e.expected, vars)},
                        {"value", to_string(e.expected_value)}});
  }
  j["per_element"] = per_json;
  bool ok = true;
  if (rep.asst) {
    json rows_json = json::array();
    for (const auto& r : *rep.asst) {
      json rj = {{"t", r.t}, {"tv", to_string(r.tv)}, {"tail", to_string(r.tail)}, {"holds", r.holds}};
      if (r.simulated_tv) rj["empirical_tv"] = *r.simulated_tv;
      rows_json.push_back(std::move(rj));
      ok = ok && r.holds;
    }
    j["asst"] = rows_json;
  } else {
    j["asst_skipped"] = rep.asst_skipped;
  }
  if (f.out.empty()) {
    out << text;
  } else {
    emit(f, j.dump(2) + "\n", out);
    out << text;
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_export(const Flags& f, const std::string& graph, std::ostream& out) {
  Context c = resolve(f);
  MarkovChainSpec spec = c.file.spec.without_null_generators();
  FiniteSemigroup s = generate(spec.generator_specs(), c.caps.max_elements);
  std::string dot;
  if (graph == "rcay") {
    dot = dot_cayley(right_cayley(s));
  } else if (graph == "kr") {
    dot = dot_kr(kr_expand(s, c.caps.max_kr));
  } else if (graph == "mc" || graph.rfind("loop:", 0) == 0) {
    StationaryResult r = stationary(s, c.caps);
    if (graph == "mc") {
      std::vector<bool> omit;
      if (r.method == StationaryResult::Method::kLeftZero) {
        omit.resize(r.expanded.size());
        for (ElementId e : r.ideal.members) omit[e] = true;
      }
      dot = dot_mc(r.mc, omit);
    } else {
      Word w = parse_word(graph.substr(5), r.expanded.labels());
      auto v = r.mc.find_word(w);
      bool terminal = v && std::any_of(r.terminals.begin(), r.terminals.end(),
                                       [&](const TerminalResult& t) { return t.vertex == *v; });
      if (!terminal) {
        throw Error(ErrorKind::kUnknownVertexWord, "'" + graph.substr(5) + "' is not a terminal vertex of the expansion");
      }
      PictContext ctx(r.mc.graph);
      dot = dot_loop_graph(ctx.pict(w));
    }
  } else {
    throw Error(ErrorKind::kInvalidArgument, "--graph must be rcay, kr, mc or loop:<word>");
  }
  emit(f, dot, out);
  return kExitOk;
}

int cmd_verify(const Flags& f, std::size_t points, std::size_t maxlen, bool corrupt, std::ostream& out) {
  Context c = resolve(f);
  MarkovChainSpec spec = c.file.spec.without_null_generators();
  FiniteSemigroup s = generate(spec.generator_specs(), c.caps.max_elements);
  StationaryResult r = stationary(s, c.caps);
  VariableTable vars = spec.variables();
  std::size_t passed = 0;
  std::size_t total = 0;
  std::string text;
  auto record = [&](bool ok, const std::string& what) {
    ++total;
    if (ok) ++passed;
    text += (ok ? "PASS " : "FAIL ") + what + "\n";
  };

  record(normalization_holds(r), "normalization");

  MarkovChainSpec oracle_spec = spec;
  if (corrupt) {
    auto& img = oracle_spec.generators.front().action.images;
    img.front() = (img.front() + 1) % static_cast<std::uint32_t>(img.size());
  }
  SymbolicMatrix tm = transition_matrix(oracle_spec);
  std::vector<Point> pts;
  if (c.point) {
    Point own = restrict_to_support(c.file.spec, *c.point);
    if (std::all_of(own.begin(), own.end(), [](const auto& kv) { return kv.second > 0; })) pts.push_back(own);
  }
  std::mt19937_64 rng(c.seed);
  for (std::size_t i = 0; i < points; ++i) pts.push_back(random_interior_point(spec.generators.size(), rng));
  for (const Point& p : pts) {
    bool ok = false;
    std::string why;
    try {
      ok = pushforward(r, p) == stationary_oracle(evaluate(tm, p));
    } catch (const Error& e) {
      why = std::string(" (") + e.what() + ")";
    }
    record(ok, "oracle at " + format_point(p, vars) + why);
  }

  std::vector<VarId> var_of(r.expanded.labels().size());
  std::iota(var_of.begin(), var_of.end(), VarId{0});
  PictContext ctx(r.mc.graph);
  for (const auto& t : r.terminals) {
    std::string name = r.expanded.format_word(t.word);
    if (name.empty()) name = "𝟙";
    auto walks = enumerate_walks(r.mc.graph, t.vertex, maxlen);
    bool kleene_ok = false;
    std::string why;
    try {
      kleene_ok = kleene_enumerate(t.expression, maxlen) == walks;
    } catch (const Error& e) {
      why = std::string(" (") + e.what() + ")";
    }
    record(kleene_ok, "kleene language = expansion paths for " + name + why);
    LoopGraph lg = ctx.pict(t.word);
    record(paths_bijection_check(r.mc.graph, t.word, lg, maxlen), "loop graph paths = expansion paths for " + name);
    bool series_ok = false;
    try {
      series_ok = rf_series(t.psi, static_cast<std::uint32_t>(maxlen + 1)).coefficients == word_series(walks, var_of);
    } catch (const Error& e) {
      why = std::string(" (") + e.what() + ")";
    }
    record(series_ok, "series coefficients = path counts for " + name + why);
  }
  text += std::to_string(passed) + "/" + std::to_string(total) + " checks passed\n";
  emit(f, text, out);
  return passed == total ? kExitOk : kExitVerification;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kUnknownVertexWord:
    case ErrorKind::kPathNotInGraph:
      return kExitInput;
    case ErrorKind::kCapExceeded:
      return kExitCap;
    default:
      return kExitVerification;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary distributions and mixing bounds of random-letter Markov chains", "sgmc"};
  app.require_subcommand(1);
  // One set per subcommand: the option handles must belong to the parsed one.
  Flags fa, fm, fe, fv;

  std::size_t analyze_points = 3;
  auto* analyze = app.add_subcommand("analyze", "run the pipeline and write a JSON report");
  add_common(analyze, fa);
  analyze->add_option("--points", analyze_points, "random interior points for the oracle check");
  analyze->add_flag("--timings", fa.timings, "include wall-clock seconds in the report");

  std::string epsilon = "1/4";
  std::uint32_t tmax = 15;
  std::uint32_t start = 0;
  std::size_t trials = 0;
  auto* mixing = app.add_subcommand("mixing", "hitting-time tail, E[tau] and the Markov bound");
  add_common(mixing, fm);
  mixing->add_option("--epsilon", epsilon, "target total variation distance");
  mixing->add_option("--tmax", tmax, "largest t in the tables");
  mixing->add_option("--start", start, "start state index for the TV table");
  mixing->add_option("--trials", trials, "Monte Carlo trials per t (0: off)");

  std::string graph;
  auto* exporter = app.add_subcommand("export", "write a graph as DOT");
  add_common(exporter, fe);
  exporter->add_option("--graph", graph, "rcay | kr | mc | loop:<word>")->required();

  std::size_t verify_points = 5;
  std::size_t maxlen = 10;
  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "oracle, language and series consistency checks");
  add_common(verify, fv);
  verify->add_option("--points", verify_points, "random interior points");
  verify->add_option("--maxlen", maxlen, "path length bound for enumeration checks");
  verify->add_flag("--corrupt-oracle", corrupt, "perturb the oracle's action table (negative control)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(fa, analyze_points, out, err);
    if (mixing->parsed()) return cmd_mixing(fm, epsilon, tmax, start, trials, out, err);
    if (exporter->parsed()) return cmd_export(fe, graph, out);
    return cmd_verify(fv, verify_points, maxlen, corrupt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitCap;
  }
}

}  // namespace sgmc::cli
