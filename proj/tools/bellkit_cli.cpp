// bellkit: exact local bounds, facet certification, see-saw quantum values,
// visibility and detection-efficiency thresholds for bipartite Bell
// inequalities. Batch-only; identical arguments and seed give byte-identical
// output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellkit/detection.hpp"
#include "bellkit/errors.hpp"
#include "bellkit/families.hpp"
#include "bellkit/inequality.hpp"
#include "bellkit/local_bounds.hpp"
#include "bellkit/quantum.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/shb.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int restarts = 0;  // 0 = per-size default
  double tol = 1e-12;
  int max_iters = 10000;
  std::string format = "json";
  int precision = 6;
  std::string output;  // empty = stdout
};

bell::OptimizerConfig optimizer_config(const GlobalOptions& opts) {
  bell::OptimizerConfig cfg;
  cfg.seed = opts.seed;
  cfg.restarts = opts.restarts;
  cfg.tol = opts.tol;
  cfg.max_iters = opts.max_iters;
  return cfg;
}

// Rounds through a fixed-significant-digit text form, so JSON and CSV both
// print exactly the requested precision.
double round_sig(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

std::string format_double(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return buffer;
}

json rational_json(const bell::Rational& r) {
  if (r.is_integer()) return json(r.num());
  return json(r.to_string());
}

void emit(const GlobalOptions& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(opts.output);
  if (!out) throw std::runtime_error("cannot write to '" + opts.output + "'");
  out << text << "\n";
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Shared --name/--file inequality source.
struct IneqSource {
  std::string name;
  std::string file;

  void add_options(CLI::App* cmd) {
    auto* name_opt = cmd->add_option("--name", name, "catalog inequality name");
    auto* file_opt = cmd->add_option("--file", file, "inequality JSON file ('-' for stdin)");
    name_opt->excludes(file_opt);
  }

  bell::AnyInequality load() const {
    if (!name.empty()) return bell::catalog(name);
    if (!file.empty()) return bell::inequality_from_json(read_file(file));
    throw std::invalid_argument("one of --name or --file is required");
  }

  bell::CorrelationInequality load_correlation() const {
    bell::AnyInequality any = load();
    if (auto* corr = std::get_if<bell::CorrelationInequality>(&any)) return *corr;
    throw std::invalid_argument("this command needs a correlation-form inequality");
  }
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t pos = 0;
    out.push_back(std::stod(token, &pos));
    if (pos != token.size()) throw std::invalid_argument("bad number '" + token + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    const int i = static_cast<int>(v);
    if (v != i) throw std::invalid_argument("expected integers");
    out.push_back(i);
  }
  return out;
}

double parse_theta(const std::string& text) {
  if (text == "max") return std::numbers::pi / 4;
  std::size_t pos = 0;
  const double theta = std::stod(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("bad --theta '" + text + "'");
  return theta;
}

// ---------------------------------------------------------------------------
// Subcommand payloads.

int run_catalog(const GlobalOptions& opts, const std::string& name) {
  if (name.empty()) {
    if (opts.format == "csv") {
      std::string lines = "name";
      for (const std::string& n : bell::catalog_names()) lines += "\n" + n;
      emit(opts, lines);
    } else {
      emit(opts, json(bell::catalog_names()).dump());
    }
    return 0;
  }
  emit(opts, bell::to_json(bell::catalog(name), 2));
  return 0;
}

int run_gen(const GlobalOptions& opts, const std::string& name,
            const std::string& family, int n, const std::string& row) {
  if (!name.empty()) {
    emit(opts, bell::to_json(bell::catalog(name), 2));
    return 0;
  }
  if (family == "as") {
    emit(opts, bell::to_json(bell::gen_as(n), 2));
    return 0;
  }
  if (family == "d") {
    std::vector<std::int64_t> first_row;
    for (int v : parse_int_list(row)) first_row.push_back(v);
    emit(opts, bell::to_json(bell::gen_d(first_row), 2));
    return 0;
  }
  throw std::invalid_argument("gen needs --name, or --family as --n N, or --family d --row ...");
}

int run_bound(const GlobalOptions& opts, const IneqSource& source) {
  bell::AnyInequality any = source.load();
  json doc;
  if (auto* corr = std::get_if<bell::CorrelationInequality>(&any)) {
    const bell::Rational bound = bell::local_bound_correlation(*corr);
    doc = {{"name", corr->name()}, {"bound", rational_json(bound)}};
  } else {
    const auto& prob = std::get<bell::ProbabilityInequality>(any);
    const bell::Rational bound = bell::local_bound_probability(prob);
    doc = {{"name", prob.name()}, {"bound", rational_json(bound)}};
  }
  if (opts.format == "csv") {
    const std::string bound_text =
        doc["bound"].is_string() ? doc["bound"].get<std::string>()
                                 : std::to_string(doc["bound"].get<std::int64_t>());
    emit(opts, "name,bound\n" + doc["name"].get<std::string>() + "," + bound_text);
  } else {
    emit(opts, doc.dump());
  }
  return 0;
}

int run_facet(const GlobalOptions& opts, const IneqSource& source,
              const std::string& space) {
  if (space != "full" && space != "correlation") {
    throw std::invalid_argument("--space must be 'full' or 'correlation'");
  }
  bell::AnyInequality any = source.load();
  bell::FacetReport report;
  std::string name;
  if (auto* corr = std::get_if<bell::CorrelationInequality>(&any)) {
    if (!corr->bound()) corr->set_bound(bell::local_bound_correlation(*corr));
    report = bell::facet_check(*corr, space == "full" ? bell::PolytopeSpace::full
                                                      : bell::PolytopeSpace::correlation);
    name = corr->name();
  } else {
    auto& prob = std::get<bell::ProbabilityInequality>(any);
    if (space != "full") {
      throw std::invalid_argument("probability-form inequalities only support --space full");
    }
    if (!prob.bound()) prob.set_bound(bell::local_bound_probability(prob));
    report = bell::facet_check(prob);
    name = prob.name();
  }
  if (opts.format == "csv") {
    std::ostringstream out;
    out << "name,is_facet,polytope_dim,saturating_vertices,affine_rank,space\n"
        << name << "," << (report.is_facet ? "true" : "false") << ","
        << report.polytope_dim << "," << report.saturating_vertex_count << ","
        << report.affine_rank << "," << space;
    emit(opts, out.str());
  } else {
    json doc = json::parse(bell::to_json(report));
    doc["name"] = name;
    emit(opts, doc.dump());
  }
  return 0;
}

int run_qvalue(const GlobalOptions& opts, const IneqSource& source, int dim,
               bool emit_strategy, bool emit_trace) {
  const bell::CorrelationInequality ineq = source.load_correlation();
  bell::OptimizerConfig cfg = optimizer_config(opts);
  cfg.record_trace = emit_trace;
  const bell::SeesawResult result = bell::seesaw_value(ineq, dim, cfg);
  if (opts.format == "csv") {
    emit(opts, "name,dim,value\n" + ineq.name() + "," + std::to_string(dim) + "," +
                   format_double(result.value, opts.precision));
    return 0;
  }
  json doc = {{"name", ineq.name()},
              {"dim", dim},
              {"value", round_sig(result.value, opts.precision)}};
  if (emit_strategy) {
    doc["strategy"] = json::parse(bell::to_json(result.strategy, result.value));
  }
  if (emit_trace) {
    json trace = json::array();
    for (double v : result.trace) trace.push_back(round_sig(v, opts.precision));
    doc["trace"] = std::move(trace);
  }
  emit(opts, doc.dump());
  return 0;
}

int run_visibility(const GlobalOptions& opts, const IneqSource& source,
                   const std::string& family, const std::string& n_list, int dim) {
  struct Row {
    std::string label;
    double visibility;
    bool conjectured;
  };
  std::vector<Row> rows;
  if (family == "as") {
    for (int n : parse_int_list(n_list)) {
      const bell::CorrelationInequality ineq = bell::gen_as(n);
      rows.push_back({std::to_string(n),
                      bell::visibility_threshold(ineq, dim, optimizer_config(opts)),
                      ineq.bound_conjectured()});
    }
  } else if (!family.empty()) {
    throw std::invalid_argument("--family only supports 'as'");
  } else {
    bell::CorrelationInequality ineq = source.load_correlation();
    if (!ineq.bound()) ineq.set_bound(bell::local_bound_correlation(ineq));
    rows.push_back({ineq.name(),
                    bell::visibility_threshold(ineq, dim, optimizer_config(opts)),
                    ineq.bound_conjectured()});
  }

  if (opts.format == "csv") {
    std::ostringstream out;
    out << "n,visibility,bound_conjectured";
    for (const Row& row : rows)
      out << "\n" << row.label << "," << format_double(row.visibility, opts.precision)
          << "," << (row.conjectured ? "true" : "false");
    emit(opts, out.str());
  } else {
    json arr = json::array();
    for (const Row& row : rows) {
      json entry = {{"n", row.label},
                    {"visibility", round_sig(row.visibility, opts.precision)}};
      if (row.conjectured) entry["boundConjectured"] = true;
      arr.push_back(std::move(entry));
    }
    emit(opts, arr.dump());
  }
  return 0;
}

int run_detection(const GlobalOptions& opts, const IneqSource& source,
                  const std::string& theta_text, bool symmetric, double eta_b,
                  bool emit_settings) {
  bell::CorrelationInequality ineq = source.load_correlation();
  if (!ineq.bound()) ineq.set_bound(bell::local_bound_correlation(ineq));
  const double theta = parse_theta(theta_text);
  bell::DetectionThresholdQuery query;
  query.symmetric = symmetric;
  query.fixed_eta_b = eta_b;
  const auto threshold =
      bell::detection_threshold(ineq, theta, query, optimizer_config(opts));
  if (opts.format == "csv") {
    std::ostringstream out;
    out << "name,theta,eta_star\n"
        << ineq.name() << "," << format_double(theta, opts.precision) << ",";
    if (threshold) out << format_double(threshold->eta_star, opts.precision);
    emit(opts, out.str());
    return 0;
  }
  json doc;
  doc["name"] = ineq.name();
  doc["theta"] = round_sig(theta, opts.precision);
  if (threshold) {
    doc["eta_star"] = round_sig(threshold->eta_star, opts.precision);
    if (!symmetric) doc["eta_b"] = round_sig(eta_b, opts.precision);
    if (emit_settings) {
      const auto settings_json = [&](const std::vector<bell::BlochSetting>& settings) {
        json arr = json::array();
        for (const bell::BlochSetting& s : settings)
          arr.push_back(json::array({round_sig(s.x, opts.precision),
                                     round_sig(s.y, opts.precision),
                                     round_sig(s.z, opts.precision)}));
        return arr;
      };
      doc["aliceSettings"] = settings_json(threshold->alice);
      doc["bobSettings"] = settings_json(threshold->bob);
    }
  } else {
    doc["eta_star"] = nullptr;
    doc["note"] = "no violation at unit efficiency";
  }
  emit(opts, doc.dump());
  return 0;
}

int run_shb(const GlobalOptions& opts, int n, int m, bool oracle, bool quantum,
            bool emit_inequality, bool correlation_form, bool emit_strategy) {
  if (correlation_form) {
    if (n != 3 || m != 2) {
      throw std::invalid_argument("--correlation-form is the n=3, m=2 export");
    }
    emit(opts, bell::to_json(bell::shb_correlation_form(), 2));
    return 0;
  }
  if (emit_inequality) {
    bell::ProbabilityInequality game = bell::shb_inequality(n, m);
    game.set_bound(bell::local_bound_probability(game));
    emit(opts, bell::to_json(game, 2));
    return 0;
  }
  json doc = {{"n", n}, {"m", m}, {"localFormula", bell::shb_local_formula(n)}};
  doc["localBound"] = bell::shb_local_oracle(n, m);
  if (oracle) doc["oracle"] = doc["localBound"];
  if (quantum || emit_strategy) {
    if (n != 2) throw std::invalid_argument("--quantum is defined for n = 2");
    const bell::ShbQuantumStrategy strategy = bell::shb_quantum_score(m);
    doc["quantumScore"] = round_sig(strategy.score, opts.precision);
    if (emit_strategy) {
      doc["state"] = json::parse(bell::to_json(strategy.state));
      doc["aliceMeasurements"] = json::parse(bell::to_json(strategy.alice));
      doc["bobMeasurements"] = json::parse(bell::to_json(strategy.bob));
    }
  }
  if (opts.format == "csv") {
    std::ostringstream out;
    out << "n,m,local_formula,local_bound";
    if (quantum) out << ",quantum_score";
    out << "\n" << n << "," << m << "," << doc["localFormula"].get<std::int64_t>() << ","
        << doc["localBound"].get<std::int64_t>();
    if (quantum) out << "," << format_double(doc["quantumScore"].get<double>(), opts.precision);
    emit(opts, out.str());
  } else {
    emit(opts, doc.dump());
  }
  return 0;
}

int run_plot(const GlobalOptions& opts, const std::string& kind,
             const IneqSource& source, const std::string& n_list, int dim,
             const std::string& theta_list, const std::string& theta_text,
             const std::string& eta_list) {
  std::ostringstream out;
  if (kind == "visibility_vs_n") {
    out << "n,visibility";
    for (int n : parse_int_list(n_list)) {
      const bell::CorrelationInequality ineq = bell::gen_as(n);
      const double v = bell::visibility_threshold(ineq, dim, optimizer_config(opts));
      out << "\n" << n << "," << format_double(v, opts.precision);
    }
  } else if (kind == "detection_vs_theta") {
    bell::CorrelationInequality ineq = source.load_correlation();
    if (!ineq.bound()) ineq.set_bound(bell::local_bound_correlation(ineq));
    out << "theta,eta_star";
    for (double theta : parse_double_list(theta_list)) {
      const auto threshold = bell::detection_threshold(
          ineq, theta, bell::DetectionThresholdQuery{}, optimizer_config(opts));
      out << "\n" << format_double(theta, opts.precision) << ",";
      if (threshold) out << format_double(threshold->eta_star, opts.precision);
    }
  } else if (kind == "bellvalue_vs_eta") {
    bell::CorrelationInequality ineq = source.load_correlation();
    if (!ineq.bound()) ineq.set_bound(bell::local_bound_correlation(ineq));
    const double theta = parse_theta(theta_text);
    out << "eta,value";
    for (double eta : parse_double_list(eta_list)) {
      const bell::DetectionOptimum optimum = bell::detection_optimal_value(
          ineq, theta, bell::DetectionModel(eta, eta), optimizer_config(opts));
      out << "\n" << format_double(eta, opts.precision) << ","
          << format_double(optimum.value, opts.precision);
    }
  } else {
    throw std::invalid_argument("unknown --kind '" + kind + "'");
  }
  emit(opts, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell inequality toolbox: catalog, exact local bounds, facet\n"
               "certification, see-saw quantum values, visibility and\n"
               "detection-efficiency thresholds, and the SHB guessing game."};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "optimizer seed")->envname("BELLKIT_SEED");
  app.add_option("--restarts", opts.restarts, "see-saw restarts (0 = default)");
  app.add_option("--tol", opts.tol, "see-saw convergence tolerance");
  app.add_option("--max-iters", opts.max_iters, "see-saw iteration cap");
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--precision", opts.precision, "significant digits (<= 15)")
      ->check(CLI::Range(1, 15));
  app.add_option("--output", opts.output, "write output to a file instead of stdout");

  auto* catalog_cmd = app.add_subcommand("catalog", "list or print the built-in inequalities");
  std::string catalog_name;
  catalog_cmd->add_option("--name", catalog_name, "inequality to print");

  auto* gen_cmd = app.add_subcommand("gen", "generate an inequality (AS or D family)");
  std::string gen_name, gen_family, gen_row;
  int gen_n = 0;
  gen_cmd->add_option("--name", gen_name, "catalog shortcut");
  gen_cmd->add_option("--family", gen_family, "'as' or 'd'")
      ->check(CLI::IsMember({"as", "d"}));
  gen_cmd->add_option("--n", gen_n, "inputs per side (AS family)");
  gen_cmd->add_option("--row", gen_row, "first row, comma separated (D family)");

  auto* bound_cmd = app.add_subcommand("bound", "exact local bound by enumeration");
  IneqSource bound_source;
  bound_source.add_options(bound_cmd);

  auto* facet_cmd = app.add_subcommand("facet", "facet (tightness) certification");
  IneqSource facet_source;
  facet_source.add_options(facet_cmd);
  std::string facet_space = "full";
  facet_cmd->add_option("--space", facet_space, "polytope space: full or correlation");

  auto* qvalue_cmd = app.add_subcommand("qvalue", "see-saw quantum value");
  IneqSource qvalue_source;
  qvalue_source.add_options(qvalue_cmd);
  int qvalue_dim = 3;
  bool qvalue_strategy = false, qvalue_trace = false;
  qvalue_cmd->add_option("--dim", qvalue_dim, "strategy vector dimension");
  qvalue_cmd->add_flag("--emit-strategy", qvalue_strategy, "include the optimal vectors");
  qvalue_cmd->add_flag("--emit-trace", qvalue_trace, "include per-sweep values of the winning restart");

  auto* vis_cmd = app.add_subcommand("visibility", "critical visibility bound/quantum");
  IneqSource vis_source;
  vis_source.add_options(vis_cmd);
  std::string vis_family, vis_n_list;
  int vis_dim = 2;
  vis_cmd->add_option("--family", vis_family, "'as' for the AS_n sweep");
  vis_cmd->add_option("--n", vis_n_list, "comma-separated n values (AS sweep)");
  vis_cmd->add_option("--dim", vis_dim, "strategy vector dimension");

  auto* det_cmd = app.add_subcommand("detection", "detection-efficiency threshold");
  IneqSource det_source;
  det_source.add_options(det_cmd);
  std::string det_theta = "max";
  bool det_symmetric = false, det_settings = false;
  double det_eta_b = -1.0;
  det_cmd->add_option("--theta", det_theta, "entanglement angle in radians, or 'max'");
  det_cmd->add_flag("--symmetric", det_symmetric, "equal efficiencies on both sides");
  det_cmd->add_option("--eta-b", det_eta_b, "fix Bob's efficiency, scan Alice's");
  det_cmd->add_flag("--emit-settings", det_settings, "include the threshold Bloch settings");

  auto* shb_cmd = app.add_subcommand("shb", "the guessing game with a joker");
  int shb_n = 2, shb_m = 2;
  bool shb_oracle = false, shb_quantum = false, shb_emit = false, shb_corr = false;
  bool shb_strategy = false;
  shb_cmd->add_option("--n", shb_n, "Alice input count");
  shb_cmd->add_option("--m", shb_m, "alphabet size");
  shb_cmd->add_flag("--oracle", shb_oracle, "report the exhaustive oracle value");
  shb_cmd->add_flag("--quantum", shb_quantum, "report the constructed quantum score (n=2)");
  shb_cmd->add_flag("--emit-inequality", shb_emit, "print the probability-form JSON");
  shb_cmd->add_flag("--correlation-form", shb_corr, "print the 4-setting export (n=3, m=2)");
  shb_cmd->add_flag("--emit-strategy", shb_strategy,
                    "include the state and measurements of the quantum strategy");

  auto* plot_cmd = app.add_subcommand("plot", "emit CSV tables for external plotting");
  std::string plot_kind;
  IneqSource plot_source;
  plot_source.add_options(plot_cmd);
  std::string plot_n_list = "2,4,6,8,10";
  int plot_dim = 2;
  std::string plot_theta_list = "0.7853981633974483,0.5,0.3,0.1";
  std::string plot_theta = "max";
  std::string plot_eta_list = "1.0,0.9,0.8284271247461903,0.7";
  plot_cmd->add_option("--kind", plot_kind,
                       "visibility_vs_n | detection_vs_theta | bellvalue_vs_eta")
      ->required();
  plot_cmd->add_option("--n", plot_n_list, "comma-separated AS sizes");
  plot_cmd->add_option("--dim", plot_dim, "strategy vector dimension");
  plot_cmd->add_option("--theta-list", plot_theta_list, "comma-separated angles");
  plot_cmd->add_option("--theta", plot_theta, "entanglement angle or 'max'");
  plot_cmd->add_option("--eta", plot_eta_list, "comma-separated efficiencies");

  // Global options may appear before or after the subcommand name.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough(true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  }

  try {
    if (*catalog_cmd) return run_catalog(opts, catalog_name);
    if (*gen_cmd) return run_gen(opts, gen_name, gen_family, gen_n, gen_row);
    if (*bound_cmd) return run_bound(opts, bound_source);
    if (*facet_cmd) return run_facet(opts, facet_source, facet_space);
    if (*qvalue_cmd)
      return run_qvalue(opts, qvalue_source, qvalue_dim, qvalue_strategy, qvalue_trace);
    if (*vis_cmd) return run_visibility(opts, vis_source, vis_family, vis_n_list, vis_dim);
    if (*det_cmd) {
      if (det_symmetric && det_eta_b >= 0.0) {
        throw std::invalid_argument("--symmetric and --eta-b are mutually exclusive");
      }
      const bool symmetric = det_eta_b < 0.0;
      return run_detection(opts, det_source, det_theta, symmetric,
                           symmetric ? 1.0 : det_eta_b, det_settings);
    }
    if (*shb_cmd)
      return run_shb(opts, shb_n, shb_m, shb_oracle, shb_quantum, shb_emit, shb_corr,
                     shb_strategy);
    if (*plot_cmd)
      return run_plot(opts, plot_kind, plot_source, plot_n_list, plot_dim,
                      plot_theta_list, plot_theta, plot_eta_list);
  } catch (const bell::LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
