#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xnr/cnf.hpp"
#include "xnr/errors.hpp"
#include "xnr/minimality.hpp"
#include "xnr/model_io.hpp"
#include "xnr/necessity.hpp"
#include "xnr/oracle.hpp"
#include "xnr/testgen.hpp"

namespace xnr::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Settings {
  std::string model_path;
  int cls = 1;
  std::string condition;
  bool json = false;
  bool verify = false;
  std::optional<std::size_t> mlp_bound;
  std::optional<std::size_t> oracle_bound;
  unsigned threads = 0;
  std::string preorder = "subset";
  bool trace = false;
  std::string scan = "canonical";
  std::vector<std::string> generate;
  std::size_t count = 200;
  std::uint64_t seed = 1;
  // gen
  std::string family;
  std::size_t n = 8;
  std::size_t nodes = 0;
  std::size_t depth = 0;
  std::string hidden = "4";
  std::int64_t weight_bound = 4;
  std::string dimacs;
  std::string out_path;
};

std::size_t from_env(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(name) + " must be a non-negative integer");
  }
}

// Flags win over environment variables, which win over built-in defaults.
EngineOptions engine_options(const Settings& s) {
  EngineOptions o;
  o.mlp_bound = s.mlp_bound ? *s.mlp_bound : from_env("XNR_MLP_BOUND", kDefaultMlpBound);
  o.threads = s.threads;
  return o;
}

OracleOptions oracle_options(const Settings& s) {
  OracleOptions o;
  o.bound = s.oracle_bound ? *s.oracle_bound : from_env("XNR_ORACLE_BOUND", kDefaultOracleBound);
  o.threads = s.threads;
  return o;
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json report_header(const std::string& command, const Settings& s, const Classifier& m) {
  Json r;
  r["command"] = command;
  r["model"] = s.model_path;
  r["engine"] = std::string(to_string(m.family()));
  r["n"] = m.arity();
  r["class"] = s.cls;
  return r;
}

void emit(const Json& report, const Settings& s, std::ostream& out, const std::string& text) {
  if (s.json) {
    out << report.dump() << '\n';
  } else {
    out << text;
  }
}

int check_necessary(const Settings& s, std::ostream& out) {
  const Classifier m = load_model(s.model_path);
  const ClassLabel c = class_label(s.cls);
  const Condition phi = parse_condition(s.condition);
  phi.check_arity(m.arity());

  const auto start = Clock::now();
  const bool verdict = is_necessary(m, c, phi, engine_options(s));
  const double ms = elapsed_ms(start);

  Json r = report_header("check-necessary", s, m);
  r["condition"] = phi.to_string();
  r["verdict"] = verdict ? "yes" : "no";
  std::string text = std::string(verdict ? "yes" : "no") + "\n";
  if (s.verify) {
    const bool agrees = oracle_is_necessary(m, c, phi, oracle_options(s)) == verdict;
    r["oracle_agrees"] = agrees;
    text += std::string("oracle: ") + (agrees ? "agrees" : "DISAGREES") + "\n";
  }
  r["elapsed_ms"] = ms;
  emit(r, s, out, text);
  return verdict ? kYes : kNo;
}

int check_minimal(const Settings& s, std::ostream& out) {
  const Classifier m = load_model(s.model_path);
  const ClassLabel c = class_label(s.cls);
  const Condition phi = parse_condition(s.condition);
  phi.check_arity(m.arity());
  const Preorder order = s.preorder == "card" ? Preorder::Cardinality : Preorder::Subset;

  const auto start = Clock::now();
  const bool verdict = is_min_necessary(m, c, phi, engine_options(s), order);
  const double ms = elapsed_ms(start);

  Json r = report_header("check-minimal", s, m);
  r["condition"] = phi.to_string();
  r["preorder"] = s.preorder;
  r["verdict"] = verdict ? "yes" : "no";
  std::string text = std::string(verdict ? "yes" : "no") + "\n";
  if (s.verify) {
    const bool agrees = oracle_is_min_necessary(m, c, phi, oracle_options(s)) == verdict;
    r["oracle_agrees"] = agrees;
    text += std::string("oracle: ") + (agrees ? "agrees" : "DISAGREES") + "\n";
  }
  r["elapsed_ms"] = ms;
  emit(r, s, out, text);
  return verdict ? kYes : kNo;
}

int find_minimal(const Settings& s, std::ostream& out) {
  const Classifier m = load_model(s.model_path);
  const ClassLabel c = class_label(s.cls);
  FindOptions opts;
  opts.engine = engine_options(s);
  opts.order = s.scan == "reversed" ? ScanOrder::Reversed : ScanOrder::Canonical;

  const auto start = Clock::now();
  const Explanation e = find_min_necessary(m, c, opts);
  const double ms = elapsed_ms(start);

  Json r = report_header("find-minimal", s, m);
  r["condition"] = e.condition.to_string();
  r["minimal"] = e.minimal;
  Json added = Json::array();
  for (const auto& l : e.added_literals) added.push_back(l.to_string());
  r["added_literals"] = added;
  std::string text = e.condition.to_string() + "\n";
  if (s.trace) {
    for (const auto& l : e.added_literals) text += "added " + l.to_string() + "\n";
  }
  if (s.verify) {
    const bool agrees = oracle_is_min_necessary(m, c, e.condition, oracle_options(s));
    r["oracle_agrees"] = agrees;
    text += std::string("oracle: ") + (agrees ? "agrees" : "DISAGREES") + "\n";
  }
  r["elapsed_ms"] = ms;
  emit(r, s, out, text);
  return kYes;
}

Model generate_model(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "bdd") return random_bdd(n, 2 * n, seed);
  if (family == "dt") return random_dt(n, n, seed);
  if (family == "perceptron") return random_perceptron(n, 4, seed);
  if (family == "mlp") return random_mlp(n, {4, 3}, 4, seed);
  throw std::invalid_argument("unknown family '" + family + "' (bdd, dt, perceptron, mlp)");
}

struct CaseResult {
  bool necessity = true;
  bool minimality = true;
  bool synthesis = true;
  bool all() const { return necessity && minimality && synthesis; }
};

CaseResult verify_case(const Classifier& m, ClassLabel c, const Condition& phi,
                       const EngineOptions& eo, const OracleOptions& oo) {
  const Oracle oracle(m, c, oo);
  CaseResult r;
  r.necessity = is_necessary(m, c, phi, eo) == oracle.is_necessary(phi);
  r.minimality = is_min_necessary(m, c, phi, eo) == oracle.is_min_necessary(phi);
  FindOptions fo;
  fo.engine = eo;
  r.synthesis = oracle.is_min_necessary(find_min_necessary(m, c, fo).condition);
  return r;
}

int verify(const Settings& s, std::ostream& out) {
  const EngineOptions eo = engine_options(s);
  const OracleOptions oo = oracle_options(s);
  std::size_t agree = 0;
  std::size_t total = 0;
  CaseResult tally;
  std::string label;
  const auto start = Clock::now();

  auto record = [&](const CaseResult& r) {
    ++total;
    if (r.all()) ++agree;
    tally.necessity = tally.necessity && r.necessity;
    tally.minimality = tally.minimality && r.minimality;
    tally.synthesis = tally.synthesis && r.synthesis;
  };

  if (!s.generate.empty()) {
    if (s.generate.size() != 4) throw CLI::ValidationError("--generate", "expects: family n count seed");
    const std::string family = s.generate[0];
    const std::size_t n = std::stoull(s.generate[1]);
    const std::size_t count = std::stoull(s.generate[2]);
    const std::uint64_t seed = std::stoull(s.generate[3]);
    if (family == "mlp" && n > eo.mlp_bound) throw BoundExceeded("mlp engine", n, eo.mlp_bound);
    if (n > oo.bound) throw BoundExceeded("brute-force oracle", n, oo.bound);
    label = family;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t case_seed = seed * 0x9E3779B97F4A7C15ULL + i;
      const Classifier m(generate_model(family, n, case_seed));
      Rng rng(case_seed ^ 0xC2B2AE3D27D4EB4FULL);
      const ClassLabel c = rng.coin() ? ClassLabel::One : ClassLabel::Zero;
      record(verify_case(m, c, random_condition(n, 3, rng.below(UINT64_MAX)), eo, oo));
    }
  } else {
    if (s.model_path.empty()) throw CLI::ValidationError("verify", "needs --model or --generate");
    const Classifier m = load_model(s.model_path);
    if (m.family() == Family::Mlp && m.arity() > eo.mlp_bound) {
      throw BoundExceeded("mlp engine", m.arity(), eo.mlp_bound);
    }
    if (m.arity() > oo.bound) throw BoundExceeded("brute-force oracle", m.arity(), oo.bound);
    label = std::string(to_string(m.family()));
    Rng rng(s.seed);
    for (std::size_t i = 0; i < s.count; ++i) {
      const ClassLabel c = i % 2 == 0 ? ClassLabel::Zero : ClassLabel::One;
      record(verify_case(m, c, random_condition(m.arity(), 3, rng.below(UINT64_MAX)), eo, oo));
    }
  }

  Json r;
  r["command"] = "verify";
  r["family"] = label;
  r["cases"] = total;
  r["agree"] = agree;
  r["necessity_agrees"] = tally.necessity;
  r["minimality_agrees"] = tally.minimality;
  r["synthesis_agrees"] = tally.synthesis;
  r["elapsed_ms"] = elapsed_ms(start);
  std::ostringstream text;
  text << agree << "/" << total << " agree\n";
  emit(r, s, out, text.str());
  return agree == total ? kYes : kNo;
}

std::vector<std::size_t> parse_widths(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto w = std::stoull(item);
    if (w == 0) throw std::invalid_argument("--hidden widths must be positive");
    out.push_back(w);
  }
  return out;
}

int gen(const Settings& s, std::ostream& out) {
  Model model;
  if (s.family == "cnf-mlp") {
    if (s.dimacs.empty()) throw CLI::ValidationError("gen cnf-mlp", "needs --dimacs");
    std::ifstream in(s.dimacs);
    if (!in) throw IoError("cannot open " + s.dimacs);
    std::ostringstream buf;
    buf << in.rdbuf();
    model = cnf_to_mlp(parse_dimacs(buf.str()));
  } else if (s.family == "bdd") {
    model = random_bdd(s.n, s.nodes ? s.nodes : 2 * s.n, s.seed);
  } else if (s.family == "dt") {
    model = random_dt(s.n, s.depth ? s.depth : s.n, s.seed);
  } else if (s.family == "perceptron") {
    model = random_perceptron(s.n, s.weight_bound, s.seed);
  } else if (s.family == "mlp") {
    model = random_mlp(s.n, parse_widths(s.hidden), s.weight_bound, s.seed);
  } else {
    throw std::invalid_argument("unknown family '" + s.family + "'");
  }
  const Classifier checked(model);
  if (s.out_path.empty() || s.out_path == "-") {
    out << model_to_json(checked.model()) << '\n';
  } else {
    save_model(checked, s.out_path);
  }
  return kYes;
}

void add_model_flags(CLI::App* cmd, Settings& s, bool condition) {
  cmd->add_option("--model,-m", s.model_path, "Model JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--class,-c", s.cls, "Target class")->required()->check(CLI::IsMember({0, 1}));
  if (condition) cmd->add_option("--condition", s.condition, "Condition, e.g. \"v1=1 & v2!=v3\"")->required();
}

void add_engine_flags(CLI::App* cmd, Settings& s) {
  cmd->add_flag("--json", s.json, "Emit a JSON report");
  cmd->add_flag("--verify", s.verify, "Cross-check the answer with the brute-force oracle");
  cmd->add_option("--mlp-bound", s.mlp_bound, "Largest MLP arity the exhaustive engine accepts (env XNR_MLP_BOUND, default 24)");
  cmd->add_option("--oracle-bound", s.oracle_bound, "Largest arity the oracle accepts (env XNR_ORACLE_BOUND, default 16)");
  cmd->add_option("--threads", s.threads, "Worker threads for enumeration (0 = all cores)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global necessary reasons for binary classifiers", "xnr"};
  app.require_subcommand(1);
  Settings s;

  auto* nec = app.add_subcommand("check-necessary", "Does every instance of the class satisfy the condition?");
  add_model_flags(nec, s, true);
  add_engine_flags(nec, s);

  auto* min = app.add_subcommand(
      "check-minimal",
      "Is the condition a minimal necessary reason? Cardinality and subset minimality "
      "coincide for necessary conditions, so both preorders run the same check.");
  add_model_flags(min, s, true);
  add_engine_flags(min, s);
  min->add_option("--preorder", s.preorder, "card or subset")->check(CLI::IsMember({"card", "subset"}));

  auto* find = app.add_subcommand("find-minimal", "Synthesize a minimal necessary reason");
  add_model_flags(find, s, false);
  add_engine_flags(find, s);
  find->add_flag("--trace", s.trace, "Print the literals in the order they were added");
  find->add_option("--scan", s.scan, "Literal scan order")->check(CLI::IsMember({"canonical", "reversed"}));

  auto* ver = app.add_subcommand("verify", "Compare engines with the brute-force oracle");
  ver->add_option("--model,-m", s.model_path, "Model JSON file")->check(CLI::ExistingFile);
  ver->add_option("--generate", s.generate, "family n count seed")->expected(4);
  ver->add_option("--count", s.count, "Random conditions per supplied model");
  ver->add_option("--seed", s.seed, "Seed for conditions on a supplied model");
  add_engine_flags(ver, s);

  auto* g = app.add_subcommand("gen", "Write a random model (or a CNF encoding) as JSON");
  g->add_option("family", s.family, "bdd, dt, perceptron, mlp or cnf-mlp")
      ->required()
      ->check(CLI::IsMember({"bdd", "dt", "perceptron", "mlp", "cnf-mlp"}));
  g->add_option("--n", s.n, "Number of features");
  g->add_option("--seed", s.seed, "Random seed");
  g->add_option("--nodes", s.nodes, "BDD internal node budget (default 2n)");
  g->add_option("--depth", s.depth, "Decision tree depth (default n)");
  g->add_option("--hidden", s.hidden, "MLP hidden widths, comma separated");
  g->add_option("--weight-bound", s.weight_bound, "Weights lie in [-b, b]");
  g->add_option("--dimacs", s.dimacs, "CNF input for cnf-mlp")->check(CLI::ExistingFile);
  g->add_option("-o,--out", s.out_path, "Output file (default stdout)");

  std::vector<const char*> argv{"xnr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "xnr: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (nec->parsed()) return check_necessary(s, out);
    if (min->parsed()) return check_minimal(s, out);
    if (find->parsed()) return find_minimal(s, out);
    if (ver->parsed()) return verify(s, out);
    if (g->parsed()) return gen(s, out);
  } catch (const BoundExceeded& e) {
    err << "xnr: " << e.what() << '\n';
    return kBoundExceeded;
  } catch (const std::exception& e) {
    err << "xnr: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace xnr::cli
