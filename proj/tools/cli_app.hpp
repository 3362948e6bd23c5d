#pragma once

// The `mpw` command line: describe, cfun, act, whittaker, npoly, check.
//
// Configuration comes from an optional JSON file (--config) and from flags;
// a flag given on the command line overrides the file.  Exit codes:
// 0 ok, 1 invariant failure, 2 configuration error, 3 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "mpw/mpw.hpp"

namespace mpw::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kConfigError = 2, kInternalError = 3 };

struct JobConfig {
  std::string command;
  std::string type;
  int n = 1;
  std::vector<long> Q{1};
  std::vector<Marker> markers;
  std::optional<std::vector<long>> lambda;
  std::optional<std::vector<int>> word;  // 0-based
  std::string input;                     // RatFunc JSON file for `act`
  std::string format = "json";
  std::string output;
  std::string report;
  bool numeric = false;
  std::uint64_t seed = 1;
  int trials = 100;
  long box = 2;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<long> parse_ints(const std::string& field, const std::string& s) {
  std::vector<long> out;
  for (const auto& tok : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError(field, "expected a comma separated integer list, got '" + s + "'");
    }
  }
  return out;
}

/// "s1,s2" or "1,2" (1-based) -> 0-based indices.
inline std::vector<int> parse_word(const std::string& s) {
  std::vector<int> out;
  for (auto tok : split(s, ',')) {
    if (!tok.empty() && (tok[0] == 's' || tok[0] == 'S')) tok = tok.substr(1);
    try {
      std::size_t used = 0;
      const int k = std::stoi(tok, &used);
      if (used != tok.size() || k < 1) throw std::invalid_argument(tok);
      out.push_back(k - 1);
    } catch (const std::exception&) {
      throw ConfigError("word", "expected simple reflections like s1,s2, got '" + s + "'");
    }
  }
  return out;
}

inline Marker parse_marker(const std::string& field, const std::string& kind, int d) {
  if (kind != "SL2" && kind != "SU3") throw ConfigError(field, "marker kind must be SL2 or SU3, got '" + kind + "'");
  if (d < 1) throw ConfigError(field, "marker degree must be >= 1");
  return Marker{kind == "SL2" ? GaussKind::SL2 : GaussKind::SU3, d};
}

/// "SL2:1,SU3:2"  (degree optional)
inline std::vector<Marker> parse_markers(const std::string& s) {
  std::vector<Marker> out;
  for (const auto& tok : split(s, ',')) {
    const auto parts = split(tok, ':');
    if (parts.empty() || parts.size() > 2) throw ConfigError("markers", "expected KIND[:DEGREE], got '" + tok + "'");
    int d = 1;
    if (parts.size() == 2) d = static_cast<int>(parse_ints("markers", parts[1]).at(0));
    out.push_back(parse_marker("markers", parts[0], d));
  }
  return out;
}

inline void load_config_file(const std::string& path, JobConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  auto get = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(dst);
    } catch (const std::exception&) {
      throw ConfigError(key, "has the wrong type in the config file");
    }
  };
  get("type", cfg.type);
  get("n", cfg.n);
  get("Q", cfg.Q);
  get("format", cfg.format);
  get("output", cfg.output);
  get("report", cfg.report);
  get("numeric", cfg.numeric);
  get("seed", cfg.seed);
  get("trials", cfg.trials);
  get("box", cfg.box);
  get("input", cfg.input);
  if (j.contains("lambda")) {
    std::vector<long> l;
    get("lambda", l);
    cfg.lambda = l;
  }
  if (j.contains("word")) {
    std::vector<int> w;
    get("word", w);
    for (int& x : w) {
      if (x < 1) throw ConfigError("word", "reflection indices are 1-based");
      --x;
    }
    cfg.word = w;
  }
  if (j.contains("markers")) {
    if (!j["markers"].is_array()) throw ConfigError("markers", "must be an array");
    cfg.markers.clear();
    for (const auto& mk : j["markers"]) {
      if (!mk.is_object() || !mk.contains("kind")) throw ConfigError("markers", "entries need a \"kind\"");
      cfg.markers.push_back(parse_marker("markers", mk["kind"].get<std::string>(), mk.value("d", 1)));
    }
  }
}

inline std::string word_string(const std::vector<int>& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::string("s") + std::to_string(w[k] + 1);
  return s;
}

inline json word_json(const std::vector<int>& w) {
  json a = json::array();
  for (int i : w) a.push_back(i + 1);
  return a;
}

}  // namespace detail

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Exact metaplectic Whittaker functions, c-functions and the twisted Weyl action", "mpw"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    struct Flags {
      std::string config, type, Q, markers, lambda, word, format, output, report, input;
      int n = 0;
      std::uint64_t seed = 0;
      int trials = 0;
      long box = 0;
      bool numeric = false;
    } f;

    auto common = [&](CLI::App* sub) {
      sub->add_option("--config", f.config, "JSON configuration file");
      sub->add_option("--type", f.type, "Cartan type, e.g. A2, B2, A1xA1");
      sub->add_option("--n", f.n, "cover degree n >= 1");
      sub->add_option("--Q", f.Q, "Q(alpha_i^vee) per simple coroot (comma list; one value is broadcast)");
      sub->add_option("--markers", f.markers, "per node KIND[:DEGREE] with KIND in {SL2, SU3}, e.g. SU3:1");
      sub->add_option("--format", f.format, "json | latex | text");
      sub->add_option("--output", f.output, "write the result to this file instead of stdout");
    };

    auto* describe = app.add_subcommand("describe", "report n, Q, n_alpha, eps_alpha, Lambda and the cosets");
    common(describe);
    auto* cfun = app.add_subcommand("cfun", "Gindikin-Karpelevic c-function c_w (default w = w0)");
    common(cfun);
    cfun->add_option("--word", f.word, "reduced word, e.g. s1,s2");
    auto* actc = app.add_subcommand("act", "w o f for f = x^lambda or a RatFunc JSON file");
    common(actc);
    actc->add_option("--word", f.word, "word, e.g. s1,s2 (rightmost reflection acts first)");
    actc->add_option("--lambda", f.lambda, "exponent of the monomial x^lambda (comma list)");
    actc->add_option("--input", f.input, "RatFunc JSON file to act on instead of a monomial");
    auto* whit = app.add_subcommand("whittaker", "normalized spherical Whittaker value at pi^lambda");
    common(whit);
    whit->add_option("--lambda", f.lambda, "cocharacter lambda in simple-coroot coordinates");
    auto* npoly = app.add_subcommand("npoly", "the p-part N(chi, lambda)");
    common(npoly);
    npoly->add_option("--lambda", f.lambda, "dominant lambda");
    auto* check = app.add_subcommand("check", "run the invariant suite; exit 1 on any failure");
    common(check);
    check->add_flag("--numeric", f.numeric, "add numeric specialization checks");
    check->add_option("--seed", f.seed, "master seed for numeric checks");
    check->add_option("--trials", f.trials, "random characters per numeric check");
    check->add_option("--box", f.box, "monomial box |lambda|_inf <= box");
    check->add_option("--report", f.report, "also write the JSON report to this file");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kConfigError;
    }

    try {
      JobConfig cfg;
      CLI::App* sub = app.get_subcommands().front();
      cfg.command = sub->get_name();
      if (!f.config.empty()) detail::load_config_file(f.config, cfg);
      auto given = [&](const char* name) {
        auto* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
      };
      if (given("--type")) cfg.type = f.type;
      if (given("--n")) cfg.n = f.n;
      if (given("--Q")) cfg.Q = detail::parse_ints("Q", f.Q);
      if (given("--markers")) cfg.markers = detail::parse_markers(f.markers);
      if (given("--format")) cfg.format = f.format;
      if (given("--output")) cfg.output = f.output;
      if (given("--lambda")) cfg.lambda = detail::parse_ints("lambda", f.lambda);
      if (given("--word")) cfg.word = detail::parse_word(f.word);
      if (given("--input")) cfg.input = f.input;
      if (given("--numeric")) cfg.numeric = f.numeric;
      if (given("--seed")) cfg.seed = f.seed;
      if (given("--trials")) cfg.trials = f.trials;
      if (given("--box")) cfg.box = f.box;
      if (given("--report")) cfg.report = f.report;
      return execute(cfg);
    } catch (const ConfigError& e) {
      err_ << "config error: " << e.what() << "\n";
      return kConfigError;
    } catch (const UnsupportedError& e) {
      err_ << "unsupported: " << e.what() << "\n";
      return kConfigError;
    } catch (const DomainError& e) {
      err_ << "invalid input: " << e.what() << "\n";
      return kConfigError;
    } catch (const std::exception& e) {
      err_ << "internal error: " << e.what() << "\n";
      return kInternalError;
    }
  }

 private:
  int execute(const JobConfig& cfg) {
    if (cfg.type.empty()) throw ConfigError("type", "missing (use --type or the config file)");
    if (cfg.format != "json" && cfg.format != "latex" && cfg.format != "text")
      throw ConfigError("format", "must be json, latex or text");
    if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
    if (cfg.box < 0) throw ConfigError("box", "must be >= 0");
    auto datum = std::make_shared<const RelativeRootDatum>(build_datum(cfg.type, cfg.markers));
    const MetaplecticStructure m(datum, cfg.n, cfg.Q);

    json doc;
    doc["command"] = cfg.command;
    doc["config"] = config_json(m);
    std::string latex;
    int code = kOk;

    if (cfg.command == "describe") {
      doc["structure"] = describe_json(m);
    } else if (cfg.command == "cfun") {
      const WeylElem& w = element(m, cfg);
      const RatFunc c = c_w(m, w);
      doc["word"] = detail::word_json(w.word);
      doc["c"] = to_json(c);
      latex = "c_{" + detail::word_string(w.word) + "} = " + to_latex(c);
      doc["latex"] = latex;
    } else if (cfg.command == "act") {
      const std::vector<int> word = cfg.word.value_or(std::vector<int>{});
      for (int i : word)
        if (i >= m.rank()) throw ConfigError("word", "reflection s" + std::to_string(i + 1) + " exceeds the rank");
      RatFunc f = input_function(m, cfg);
      const RatFunc g = act_word(m, word, f);
      doc["word"] = detail::word_json(word);
      doc["input"] = to_json(f);
      doc["result"] = to_json(g);
      latex = to_latex(g);
      doc["latex"] = latex;
    } else if (cfg.command == "whittaker") {
      const LatticeVector l = lambda(m, cfg);
      const WhittakerResult res = whittaker_normalized(m, l);
      doc["lambda"] = l.to_vector();
      doc["dominant"] = m.datum().is_dominant(l);
      doc["value"] = to_json(res.value);
      json terms = json::array();
      for (const auto& t : res.terms) terms.push_back({{"word", detail::word_json(t.word)}, {"value", to_json(t.value)}});
      doc["terms"] = std::move(terms);
      latex = to_latex(res.value);
      doc["latex"] = latex;
    } else if (cfg.command == "npoly") {
      const LatticeVector l = lambda(m, cfg);
      if (!m.datum().is_dominant(l)) throw ConfigError("lambda", "N(chi, lambda) needs a dominant lambda");
      const RatFunc N = n_poly(m, l);
      doc["lambda"] = l.to_vector();
      doc["N"] = to_json(N);
      doc["polynomial"] = N.is_polynomial();
      doc["final_theorem"] = check_final_theorem(m, l);
      latex = to_latex(N);
      doc["latex"] = latex;
      if (!doc["final_theorem"].get<bool>()) code = kInvariantFailure;
    } else if (cfg.command == "check") {
      CheckOptions opt;
      opt.numeric = cfg.numeric;
      opt.seed = cfg.seed;
      opt.trials = cfg.trials;
      opt.box = cfg.box;
      opt.dominant_box = std::min<long>(cfg.box, 2);
      opt.workers = worker_count();
      const auto results = run_checks(m, opt);
      json arr = json::array();
      bool ok = true;
      for (const auto& r : results) {
        json jr = {{"name", r.name}, {"passed", r.passed()}, {"skipped", r.skipped}, {"cases", r.cases}, {"failures", r.failures}};
        if (opt.numeric) jr["max_rel_dev"] = r.max_dev;
        if (!r.note.empty()) jr["note"] = r.note;
        arr.push_back(std::move(jr));
        ok = ok && r.passed();
        err_ << (r.skipped ? "SKIP " : r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, "
             << r.seconds << " s)" << (r.note.empty() ? "" : "  " + r.note) << "\n";
      }
      doc["numeric"] = opt.numeric;
      if (opt.numeric) {
        doc["seed"] = cfg.seed;
        doc["trials"] = cfg.trials;
      }
      doc["checks"] = std::move(arr);
      doc["all_passed"] = ok;
      if (!cfg.report.empty()) write_file(cfg.report, doc.dump(2) + "\n");
      if (!ok) code = kInvariantFailure;
    }

    std::string text;
    if (cfg.format == "latex" && !latex.empty()) {
      text = latex + "\n";
    } else if (cfg.format == "text") {
      text = human(doc);
    } else {
      text = doc.dump(2) + "\n";
    }
    if (cfg.output.empty()) out_ << text;
    else write_file(cfg.output, text);
    return code;
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw ConfigError("output", "cannot write '" + path + "'");
    o << text;
  }

  static json config_json(const MetaplecticStructure& m) {
    json mk = json::array();
    for (const auto& x : m.datum().markers()) mk.push_back({{"kind", to_string(x.kind)}, {"d", x.degree}});
    return {{"type", m.datum().name()}, {"rank", m.rank()}, {"n", m.n()}, {"Q", m.Q()}, {"markers", std::move(mk)}};
  }

  static json describe_json(const MetaplecticStructure& m) {
    const auto& D = m.datum();
    json cartan = json::array();
    for (int i = 0; i < D.rank(); ++i) {
      json row = json::array();
      for (int j = 0; j < D.rank(); ++j) row.push_back(D.cartan()(i, j));
      cartan.push_back(std::move(row));
    }
    json pos = json::array();
    for (std::size_t k = 0; k < D.positive_coroots().size(); ++k)
      pos.push_back({{"coroot", D.positive_coroots()[k].to_vector()},
                     {"Q", m.Q_pos(k)},
                     {"n_alpha", m.n_pos(k)},
                     {"eps", m.eps_pos(k)}});
    json basis = json::array();
    for (const auto& b : m.cosets().lattice().basis()) basis.push_back(b.to_vector());
    json reps = json::array();
    for (const auto& r : m.cosets().reps()) reps.push_back(r.to_vector());
    json B = json::array();
    for (int i = 0; i < D.rank(); ++i) {
      json row = json::array();
      for (int j = 0; j < D.rank(); ++j) row.push_back(m.B_matrix()(i, j));
      B.push_back(std::move(row));
    }
    return {{"cartan", std::move(cartan)},
            {"B", std::move(B)},
            {"weyl_order", D.order()},
            {"longest_word", detail::word_json(D.longest().word)},
            {"positive_coroots", std::move(pos)},
            {"lambda_basis", std::move(basis)},
            {"gamma_order", m.cosets().size()},
            {"coset_reps", std::move(reps)}};
  }

  static std::string human(const json& doc) {
    std::ostringstream os;
    for (const auto& [k, v] : doc.items()) os << k << ": " << v.dump() << "\n";
    return os.str();
  }

  static const WeylElem& element(const MetaplecticStructure& m, const JobConfig& cfg) {
    if (!cfg.word) return m.datum().longest();
    for (int i : *cfg.word)
      if (i >= m.rank()) throw ConfigError("word", "reflection s" + std::to_string(i + 1) + " exceeds the rank");
    const WeylElem& w = m.datum().from_word(*cfg.word);
    if (w.length() != static_cast<int>(cfg.word->size())) throw ConfigError("word", "word is not reduced");
    return w;
  }

  static LatticeVector lambda(const MetaplecticStructure& m, const JobConfig& cfg) {
    if (!cfg.lambda) throw ConfigError("lambda", "missing (use --lambda or the config file)");
    if (static_cast<int>(cfg.lambda->size()) != m.rank())
      throw ConfigError("lambda", "length " + std::to_string(cfg.lambda->size()) + " differs from the rank " + std::to_string(m.rank()));
    return LatticeVector::from(*cfg.lambda);
  }

  static RatFunc input_function(const MetaplecticStructure& m, const JobConfig& cfg) {
    if (!cfg.input.empty()) {
      std::ifstream in(cfg.input);
      if (!in) throw ConfigError("input", "cannot open '" + cfg.input + "'");
      json j;
      try {
        in >> j;
        RatFunc f = ratfunc_from_json(j.contains("result") ? j["result"] : j);
        if (f.rank() != m.rank()) throw ConfigError("input", "rank differs from the datum");
        return f;
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError("input", std::string("not a RatFunc JSON document: ") + e.what());
      }
    }
    return RatFunc::monomial(lambda(m, cfg));
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return App(out, err).run(argc, argv);
}

}  // namespace mpw::cli
