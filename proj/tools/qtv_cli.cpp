#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "qtv/falcomb.hpp"
#include "qtv/jones.hpp"
#include "qtv/link_script.hpp"
#include "qtv/selftest.hpp"
#include "qtv/shadow.hpp"
#include "qtv/tv.hpp"

using namespace qtv;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kParse = 3, kInvariant = 4, kAllTainted = 5 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string script_path;
  std::string builtin = "borromean";
  int r = 0;
  std::string r_range;
  std::string m_range;
  std::string colours;
  std::string precision;
  int workers = 0;
  bool deterministic = false;
  std::string format = "table";
  std::string output;
  int full_max_m = 50;
};

std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<int> parse_range(const std::string& spec, const std::string& field) {
  std::vector<int> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw ConfigError(field + ": '" + tok + "' is not an integer");
    parts.push_back(v);
  }
  if (parts.size() == 1) parts = {parts[0], parts[0], 2};
  if (parts.size() == 2) parts.push_back(2);
  if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) throw ConfigError(field + ": expected start:stop[:step]");
  std::vector<int> out;
  for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
  return out;
}

void check_r(int r) {
  if (r < 3 || r % 2 == 0) throw ConfigError("--r: " + std::to_string(r) + " is not an odd integer >= 3");
}

std::vector<int> r_values(const RunConfig& cfg, const std::string& fallback) {
  std::vector<int> rs = cfg.r_range.empty() ? parse_range(fallback, "--r-range") : parse_range(cfg.r_range, "--r-range");
  for (int r : rs) check_r(r);
  return rs;
}

qkernel::Precision precision_of(const RunConfig& cfg) {
  std::string p = cfg.precision;
  if (p.empty()) {
    const char* env = std::getenv("QTV_PRECISION");
    p = env ? env : "double";
  }
  try {
    return qkernel::parse_precision(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--precision: ") + e.what());
  }
}

falcomb::FALDescriptor load_link(const RunConfig& cfg) {
  std::string text;
  if (!cfg.script_path.empty()) {
    std::ifstream in(cfg.script_path);
    if (!in) throw ConfigError("cannot read link script " + cfg.script_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    auto s = falcomb::builtin_script(cfg.builtin);
    if (!s) throw ConfigError("--builtin: unknown link '" + cfg.builtin + "'");
    text = *s;
  }
  return falcomb::fal_from_text(text);
}

// "a1,..,ac;i1,..,is" or n comma-separated values, circles first.
jones::Colouring parse_colours(const std::string& spec, const jones::EvaluationPlan& plan, int m) {
  std::vector<int> v;
  std::string clean = spec;
  for (char& ch : clean)
    if (ch == ';') ch = ',';
  std::stringstream ss(clean);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int x = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw ConfigError("--colours: '" + tok + "' is not an integer");
    v.push_back(x);
  }
  if (v.size() == 1) v.assign(plan.c + plan.s, v[0]);
  if (static_cast<int>(v.size()) != plan.c + plan.s)
    throw ConfigError("--colours: expected " + std::to_string(plan.c + plan.s) + " values, got " + std::to_string(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] < 0 || v[k] > m - 1)
      throw ConfigError("--colours: entry " + std::to_string(k) + " = " + std::to_string(v[k]) + " is outside 0.." +
                        std::to_string(m - 1));
  return {std::vector<int>(v.begin(), v.begin() + plan.c), std::vector<int>(v.begin() + plan.c, v.end())};
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_kv(std::ostream& os, const std::string& format, const json& j) {
  if (format == "json") {
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    bool first = true;
    for (auto& [k, v] : j.items()) os << (first ? "" : ",") << k, first = false;
    os << "\n";
    first = true;
    for (auto& [k, v] : j.items()) {
      os << (first ? "" : ",");
      first = false;
      if (v.is_number_float()) os << fmt(v.get<double>());
      else if (v.is_string()) os << v.get<std::string>();
      else os << v.dump();
    }
    os << "\n";
  } else {
    for (auto& [k, v] : j.items()) {
      os << std::left << std::setw(22) << k;
      if (v.is_number_float()) os << fmt(v.get<double>());
      else if (v.is_string()) os << v.get<std::string>();
      else os << v.dump();
      os << "\n";
    }
  }
}

void emit_series(std::ostream& os, const std::string& format, const tv::GrowthSeries& s, const std::string& label) {
  if (format == "json") {
    json j;
    j["series"] = label;
    j["target"] = s.target;
    j["upper_bound_only"] = s.upper_bound_only;
    j["entries"] = json::array();
    for (const auto& e : s.entries)
      j["entries"].push_back({{"r", e.r}, {"growth", e.value}, {"tainted", e.tainted}, {"unverified", e.unverified}});
    if (s.fit)
      j["fit"] = {{"V_est", s.fit->V_est}, {"coef_logr", s.fit->coef_logr}, {"coef_inv", s.fit->coef_inv},
                  {"residual_norm", s.fit->residual_norm}};
    else
      j["fit"] = nullptr;
    os << j.dump(2) << "\n";
    return;
  }
  std::string vest = s.fit ? fmt(s.fit->V_est) : "";
  if (format == "csv") {
    os << "r,growth,target,tainted,fit_Vest\n";
    for (const auto& e : s.entries)
      os << e.r << "," << fmt(e.value) << "," << fmt(s.target) << "," << (e.tainted ? 1 : 0) << "," << vest << "\n";
    if (s.fit) os << "fit," << vest << "," << fmt(s.target) << ",0," << vest << "\n";
    return;
  }
  os << std::left << std::setw(8) << "r" << std::setw(24) << "growth" << std::setw(10) << "tainted" << "note\n";
  for (const auto& e : s.entries)
    os << std::setw(8) << e.r << std::setw(24) << fmt(e.value) << std::setw(10) << (e.tainted ? "yes" : "no")
       << (e.unverified ? "unverified" : "") << "\n";
  os << "target " << fmt(s.target) << "\n";
  if (s.fit)
    os << "fit V_est " << vest << " (a=" << fmt(s.fit->coef_logr) << ", b=" << fmt(s.fit->coef_inv)
       << ", residual " << fmt(s.fit->residual_norm) << ")\n";
  else
    os << "fit unavailable: fewer than 4 untainted entries\n";
  if (s.upper_bound_only) os << "twisted link: upper bound only, no lower-bound verdict\n";
}

int all_tainted_code(const tv::GrowthSeries& s) {
  bool all = !s.entries.empty();
  for (const auto& e : s.entries) all = all && e.tainted;
  return all ? kAllTainted : kOk;
}

int run(const RunConfig& cfg) {
  Sink sink(cfg.output);
  std::ostream& os = sink.out();
  const auto& cmd = cfg.command;

  if (cmd == "selftest") {
    auto checks = selftest::run_all();
    bool ok = true;
    json j = json::array();
    for (const auto& c : checks) {
      ok = ok && c.pass;
      if (cfg.format == "table")
        os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << c.name << c.checked << " checked, "
           << c.failed << " failed" << (c.first_failure.empty() ? "" : "; first: " + c.first_failure) << "\n";
      j.push_back({{"name", c.name}, {"pass", c.pass}, {"checked", c.checked}, {"failed", c.failed},
                   {"first_failure", c.first_failure}});
    }
    if (cfg.format == "json") os << j.dump(2) << "\n";
    if (cfg.format == "csv") {
      os << "name,pass,checked,failed\n";
      for (const auto& c : checks) os << c.name << "," << c.pass << "," << c.checked << "," << c.failed << "\n";
    }
    return ok ? kOk : kInvariant;
  }

  auto fal = load_link(cfg);
  auto precision = precision_of(cfg);
  tv::TVOptions opts{cfg.workers, cfg.deterministic};

  if (cmd == "link-info") {
    json j;
    j["c"] = fal.c;
    j["s"] = fal.s;
    j["n"] = fal.n();
    j["volume"] = falcomb::fal_volume(fal);
    j["octahedra"] = fal.octahedra();
    j["flat"] = fal.flat();
    j["triangles"] = fal.nerve.triangle_count();
    j["red_edges"] = fal.dimer.red_edges();
    emit_kv(os, cfg.format, j);
    return kOk;
  }
  if (cmd == "fsl-graph") {
    auto g = shadow::fal_to_gluing_graph(fal);
    auto bad = shadow::validate(g);
    if (cfg.format == "json") {
      json j;
      j["vertices"] = g.n_vertices;
      j["volume"] = shadow::shadow_volume(g);
      j["edges"] = json::array();
      for (const auto& e : g.edges)
        j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"label", e.label ? shadow::to_string(*e.label) : "?"},
                              {"crossing_circle", e.crossing_circle}});
      j["violations"] = bad;
      os << j.dump(2) << "\n";
    } else {
      os << shadow::to_text(g) << "volume " << fmt(shadow::shadow_volume(g)) << "\n";
      for (const auto& v : bad) os << "violation: " << v << "\n";
    }
    if (!bad.empty()) throw InvariantError("gluing graph fails validation: " + bad.front());
    return kOk;
  }

  auto plan = jones::compile_plan(fal);

  if (cmd == "jones" || cmd == "tv") {
    if (cfg.r == 0) throw ConfigError("--r is required");
    check_r(cfg.r);
    auto ctx = qkernel::make_context(cfg.r, precision);
    json j;
    j["r"] = cfg.r;
    bool tainted;
    if (cmd == "jones") {
      auto col = parse_colours(cfg.colours.empty() ? "0" : cfg.colours, plan, ctx.m);
      auto J = jones::coloured_jones_modulus(plan, ctx, col);
      j["log_abs_J"] = J.modulus.is_zero() ? -HUGE_VAL : J.modulus.logmag;
      j["abs_J"] = J.modulus.to_double();
      j["terms"] = J.term_count;
      tainted = J.tainted;
    } else {
      auto T = tv::turaev_viro(plan, ctx, opts);
      j["log_TV"] = T.value.logmag;
      j["TV"] = T.value.to_double();
      j["growth"] = 2 * std::numbers::pi / cfg.r * T.value.logmag;
      j["colourings"] = T.colourings;
      tainted = T.tainted;
    }
    j["tainted"] = tainted;
    emit_kv(os, cfg.format, j);
    return tainted ? kAllTainted : kOk;
  }
  if (cmd == "growth") {
    auto s = tv::tv_growth_series(plan, r_values(cfg, "5:101:2"), opts, precision);
    emit_series(os, cfg.format, s, "tv");
    return all_tainted_code(s);
  }
  if (cmd == "diagonal") {
    auto s = tv::diagonal_growth_series(plan, r_values(cfg, "5:201:2"), precision);
    emit_series(os, cfg.format, s, "diagonal");
    return all_tainted_code(s);
  }
  if (cmd == "cjq") {
    auto ms = parse_range(cfg.m_range.empty() ? "2:50:2" : cfg.m_range, "--m-range");
    for (int m : ms)
      if (m < 1) throw ConfigError("--m-range: m must be positive");
    auto s = tv::cj_growth_series(plan, ms, cfg.full_max_m, precision);
    emit_series(os, cfg.format, s, "cjq");
    return all_tainted_code(s);
  }
  throw ConfigError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum 6j-symbols, coloured Jones polynomials and Turaev-Viro invariants of octahedral fully augmented links"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    auto* script = sub->add_option("--script", cfg.script_path, "Link script file");
    sub->add_option("--builtin", cfg.builtin, "Built-in link: borromean, sister1, sister2")->excludes(script);
    sub->add_option("--precision", cfg.precision, "double or dd (default: $QTV_PRECISION, else double)");
    sub->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
    sub->add_flag("--deterministic", cfg.deterministic, "Single-threaded, bit-reproducible sweep");
    sub->add_option("--format", cfg.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--output", cfg.output, "Write to a file instead of stdout");
  };

  auto* info = app.add_subcommand("link-info", "Crossing circles, strands, volume");
  auto* fsl = app.add_subcommand("fsl-graph", "Gluing graph of the corresponding shadow link");
  auto* jones_cmd = app.add_subcommand("jones", "|J| at one colouring");
  auto* tv_cmd = app.add_subcommand("tv", "Turaev-Viro invariant at one r");
  auto* growth = app.add_subcommand("growth", "(2pi/r) log TV_r over an r range, with fit");
  auto* diag = app.add_subcommand("diagonal", "Single-term lower-bound growth series");
  auto* cjq = app.add_subcommand("cjq", "Coloured Jones growth at r = 2m+1");
  auto* self = app.add_subcommand("selftest", "Sign checks, theta audit, pop invariance, small-r routes");
  for (auto* sub : {info, fsl, jones_cmd, tv_cmd, growth, diag, cjq, self}) add_common(sub);
  for (auto* sub : {jones_cmd, tv_cmd}) sub->add_option("--r", cfg.r, "Odd r >= 3");
  jones_cmd->add_option("--colours", cfg.colours, "Circle then strand labels in 0..m-1: a1,..,ac;i1,..,is");
  for (auto* sub : {growth, diag}) sub->add_option("--r-range", cfg.r_range, "start:stop[:step], odd r");
  cjq->add_option("--m-range", cfg.m_range, "start:stop[:step]");
  cjq->add_option("--full-max-m", cfg.full_max_m, "Largest m summed in full; beyond it the diagonal term is used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return run(cfg);
  } catch (const falcomb::ScriptError& e) {
    std::cerr << "script error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const qkernel::ContextError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const tv::FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return kConfig;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
