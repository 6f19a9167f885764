// Command-line front end. Exit codes: 0 ok, 1 a check failed, 2 usage or input error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgspec/cheeger.hpp"
#include "sgspec/error.hpp"
#include "sgspec/graph.hpp"
#include "sgspec/graph_io.hpp"
#include "sgspec/harness.hpp"
#include "sgspec/nodal.hpp"
#include "sgspec/operators.hpp"
#include "sgspec/spectra.hpp"
#include "sgspec/transforms.hpp"

using nlohmann::ordered_json;
using namespace sgspec;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Output {
  std::string format = "json";
  std::string path;  // empty: stdout

  void emit(const ordered_json& doc, const std::string& text) const {
    const std::string body = format == "json" ? doc.dump(2) + "\n" : text;
    if (path.empty())
      std::cout << body;
    else
      write_file(path, body);
  }
};

ordered_json id_sets(const SignedGraph& g, const std::vector<std::vector<Index>>& sets) {
  ordered_json out = ordered_json::array();
  for (const auto& s : sets) {
    ordered_json ids = ordered_json::array();
    for (Index x : s) ids.push_back(g.id(x));
    out.push_back(ids);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Set from --mu-mode; applies to every graph loaded from --graph.
std::string measure_mode = "graph";

SignedGraph apply_mu_mode(const SignedGraph& g, const std::string& mode) {
  if (mode == "graph") return g;
  if (mode == "unit") return g.with_mu(std::vector<double>(g.size(), 1.0));
  if (mode == "degree") return g.with_degree_measure();
  throw ConfigError("unknown mu mode '" + mode + "' (expected graph, unit or degree)");
}

SignedGraph load_graph(const std::string& path) { return apply_mu_mode(parse_graph(read_file(path)), measure_mode); }

ordered_json certificate_json(const ResidualCertificate& c) {
  return {{"verdict", c.verdict}, {"max_residual", c.max_residual}, {"exact", c.exact},
          {"has_witness", c.witness.has_value()}};
}

int cmd_spectrum(const std::string& graph_path, double p, const Output& out) {
  const SignedGraph g = load_graph(graph_path);
  if (p == 2.0) {
    const SpectrumP2 spec = spectrum_p2(g);
    ordered_json groups = ordered_json::array(), vectors = ordered_json::array();
    for (const auto& grp : spec.groups)
      groups.push_back({{"value", grp.value}, {"first", grp.first + 1}, {"multiplicity", grp.count}});
    for (const auto& v : spec.vectors) vectors.push_back(function_to_json(g, v)["values"]);
    out.emit({{"p", p}, {"eigenvalues", spec.values}, {"groups", groups}, {"eigenfunctions", vectors}},
             "eigenvalues: " + join(spec.values) + "\n");
    return kOk;
  }
  if (p == 1.0) {
    const OneLapEigenSet set = one_lap_enumerate(g);
    ordered_json values = ordered_json::array();
    std::vector<double> approx;
    for (const auto& v : set.eigenvalues) {
      values.push_back(to_string(v));
      approx.push_back(to_double(v));
    }
    out.emit({{"p", p},
              {"eigenvalues", values},
              {"lambda1", set.lambda1 ? to_string(*set.lambda1) : "none"},
              {"smallest_positive", set.smallest_positive ? to_string(*set.smallest_positive) : "none"}},
             "eigenvalues (sign patterns): " + join(approx) + "\n");
    return kOk;
  }
  const ExtremalResult ex = extremal_p(g, p);
  out.emit({{"p", p},
            {"lambda_min", ex.min.lambda},
            {"lambda_max", ex.max.lambda},
            {"converged", !ex.unconverged},
            {"note", "interior eigenvalues are not computed for p other than 1 and 2"}},
           "lambda_min: " + num(ex.min.lambda) + "\nlambda_max: " + num(ex.max.lambda) + "\n");
  return ex.unconverged ? kCheckFailed : kOk;
}

ordered_json candidate_json(const SignedGraph& g, const ExtremalCandidate& c) {
  return {{"lambda", c.lambda}, {"residual", c.residual}, {"converged", c.converged}, {"restart", c.restart},
          {"function", function_to_json(g, c.f)["values"]}};
}

int cmd_extremal(const std::string& graph_path, double p, const ExtremalOptions& opts, const Output& out) {
  const SignedGraph g = load_graph(graph_path);
  const ExtremalResult ex = extremal_p(g, p, opts);
  ordered_json trace = ordered_json::array();
  for (const auto& t : ex.trace)
    trace.push_back({{"restart", t.restart}, {"ascent", t.ascent}, {"gradient_steps", t.gradient_steps},
                     {"newton_steps", t.newton_steps}, {"value", t.value}, {"residual", t.residual}});
  out.emit({{"p", p},
            {"min", candidate_json(g, ex.min)},
            {"max", candidate_json(g, ex.max)},
            {"unconverged", ex.unconverged},
            {"probe_violations", ex.probe_violations},
            {"trace", trace}},
           "lambda_min: " + num(ex.min.lambda) + " (residual " + num(ex.min.residual) + ")\nlambda_max: " +
               num(ex.max.lambda) + " (residual " + num(ex.max.residual) + ")\n");
  return ex.unconverged || ex.probe_violations > 0 ? kCheckFailed : kOk;
}

int cmd_nodal(const std::string& graph_path, const std::string& fn_path, bool dual, double p,
              const std::vector<int>& position, bool minimal, const Output& out) {
  const SignedGraph g = load_graph(graph_path);
  const VertexFunction f = parse_function(g, read_file(fn_path));
  const NodalSummary s = nodal_quantities(g, f);
  ordered_json doc{{"strong", s.strong.count},
                   {"weak", s.weak.count},
                   {"strong_domains", id_sets(g, s.strong.domains)},
                   {"weak_classes", id_sets(g, s.weak.classes)},
                   {"weak_closures", id_sets(g, s.weak.closures)},
                   {"zeros", s.zeros},
                   {"edges_positive", s.edges_positive},
                   {"edges_negative", s.edges_negative},
                   {"edges_zero", s.edges_zero},
                   {"surplus_positive", s.surplus_positive},
                   {"surplus_negative", s.surplus_negative},
                   {"identity_holds", s.identity_holds}};
  std::string text = "strong: " + std::to_string(s.strong.count) + "\nweak: " + std::to_string(s.weak.count) + "\n";
  if (dual) {
    doc["dual_strong"] = s.dual_strong.count;
    doc["dual_weak"] = s.dual_weak.count;
    text += "dual strong: " + std::to_string(s.dual_strong.count) + "\ndual weak: " + std::to_string(s.dual_weak.count) +
            "\n";
  }
  bool pass = s.identity_holds;
  if (!position.empty()) {
    if (position.size() != 2) throw ConfigError("--position expects k,r");
    SpectrumContext ctx{p, EigenPosition{position[0], position[1]}, minimal};
    const BoundReport rep = bound_report(g, f, ctx);
    ordered_json records = ordered_json::array();
    for (const auto& r : rep.records) {
      ordered_json rec{{"theorem", r.theorem}, {"lhs", r.lhs}, {"relation", r.relation}, {"rhs", r.rhs},
                       {"pass", r.pass}, {"skipped", r.skipped}};
      if (r.skipped) rec["skip_reason"] = r.skip_reason;
      records.push_back(rec);
      text += r.theorem + ": " + (r.skipped ? "skipped (" + r.skip_reason + ")" : r.pass ? "pass" : "FAIL") + "\n";
    }
    doc["bounds"] = {{"partial", rep.partial}, {"records", records}};
    pass = pass && rep.all_pass();
  }
  out.emit(doc, text);
  return pass ? kOk : kCheckFailed;
}

ordered_json sub_bipartition_json(const SignedGraph& g, const SubBipartition& s) {
  ordered_json out = ordered_json::array();
  for (const auto& [a, b] : s.pairs) out.push_back({id_sets(g, {a})[0], id_sets(g, {b})[0]});
  return out;
}

int cmd_cheeger(const std::string& graph_path, int k, bool heuristic, const Output& out) {
  const SignedGraph g = load_graph(graph_path);
  const CheegerResult r = cheeger_k(g, k, {}, heuristic ? CheegerMode::Heuristic : CheegerMode::Exact);
  out.emit({{"k", k},
            {"value", r.value},
            {"exact", to_string(r.exact_value)},
            {"heuristic", r.heuristic},
            {"evaluated", r.evaluated},
            {"argmin", sub_bipartition_json(g, r.argmin)},
            {"betas", r.betas}},
           "h_" + std::to_string(k) + " = " + to_string(r.exact_value) + (r.heuristic ? " (heuristic)" : "") + "\n");
  return kOk;
}

int cmd_onelap(const std::string& graph_path, std::size_t cap, const Output& out) {
  const SignedGraph g = load_graph(graph_path);
  const OneLapEigenSet set = one_lap_enumerate(g, cap);
  ordered_json pairs = ordered_json::array(), values = ordered_json::array();
  for (const auto& v : set.eigenvalues) values.push_back(to_string(v));
  for (const auto& pr : set.pairs)
    pairs.push_back({{"lambda", to_string(pr.lambda)}, {"function", function_to_json(g, pr.f)["values"]},
                     {"certificate", certificate_json(pr.certificate)}});
  const auto sp = smallest_positive_1lap(g);
  std::string text = "eigenvalues:";
  for (const auto& v : set.eigenvalues) text += " " + to_string(v);
  text += "\nsmallest positive: " + (sp ? to_string(*sp) : std::string("none")) + "\n";
  out.emit({{"patterns", set.patterns},
            {"eigenvalues", values},
            {"lambda1", set.lambda1 ? to_string(*set.lambda1) : "none"},
            {"smallest_positive", set.smallest_positive ? to_string(*set.smallest_positive) : "none"},
            {"smallest_positive_cheeger", sp ? to_string(*sp) : "none"},
            {"pairs", pairs}},
           text);
  return kOk;
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("--remove-edge expects u,v");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

int cmd_transform(const std::string& graph_path, const std::string& edge, const std::string& node,
                  const std::string& fn_path, double p, const std::string& graph_out, const Output& out) {
  const SignedGraph g = load_graph(graph_path);
  if (edge.empty() == node.empty()) throw ConfigError("give exactly one of --remove-edge and --remove-node");
  std::optional<VertexFunction> f;
  if (!fn_path.empty()) f = parse_function(g, read_file(fn_path));
  SurgeryResult sr;
  ordered_json doc;
  if (!edge.empty()) {
    if (!f) throw ConfigError("--remove-edge needs --function");
    const auto [u, v] = split_pair(edge);
    sr = remove_edge(g, p, *f, g.require_index(u), g.require_index(v), p == 2.0);
    doc["operation"] = {{"remove_edge", {u, v}}};
  } else {
    sr = remove_node(g, g.require_index(node), f);
    doc["operation"] = {{"remove_node", node}};
  }
  ordered_json changes = ordered_json::array();
  for (const auto& c : sr.kappa_changes)
    changes.push_back({{"vertex", sr.graph.id(c.vertex)}, {"before", c.before}, {"after", c.after}});
  doc["kappa_changes"] = changes;
  bool pass = true;
  if (f && sr.f && p > 1.0) {
    const double lambda = rayleigh(g, p, *f);
    const auto before = check_eigenpair(g, {lambda, *f, p}, 1e-9);
    const auto after = check_eigenpair(sr.graph, {lambda, *sr.f, p}, 1e-9);
    doc["verification"] = {{"p", p}, {"lambda", lambda}, {"before", certificate_json(before)},
                           {"after", certificate_json(after)}};
    // Only a certified input pair is expected to survive the surgery.
    pass = !before.verdict || after.verdict;
  }
  if (graph_out.empty())
    doc["graph"] = graph_to_json(sr.graph);
  else
    write_file(graph_out, serialize_graph(sr.graph));
  out.emit(doc, serialize_graph(sr.graph));
  return pass ? kOk : kCheckFailed;
}

int cmd_verify(const std::string& config_path, const std::string& replay_path, const Output& out) {
  const SuiteConfig cfg = suite_config_from_json(nlohmann::json::parse(read_file(config_path)));
  if (!replay_path.empty()) {
    const auto doc = nlohmann::json::parse(read_file(replay_path));
    const FailureBundle b = failure_bundle_from_json(doc);
    const bool fails = replay_bundle(b, cfg);
    out.emit({{"check", b.check}, {"record", b.record}, {"reproduced", fails}},
             b.record + (fails ? ": failure reproduced\n" : ": failure not reproduced\n"));
    return fails ? kCheckFailed : kOk;
  }
  const SuiteReport rep = run_suite(cfg);
  std::string text;
  for (const auto& [name, agg] : rep.records)
    text += name + ": checked " + std::to_string(agg.checked) + ", passed " + std::to_string(agg.passed) +
            ", failed " + std::to_string(agg.failed) + ", skipped " + std::to_string(agg.skipped) + "\n";
  out.emit(to_json(rep), text);
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_random(const RandomGraphParams& params, const Output& out) {
  const SignedGraph g = random_signed_graph(params);
  out.emit(graph_to_json(g), serialize_graph(g));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral tools for p-Laplacians on signed graphs"};
  app.require_subcommand(1);
  Output out;
  std::string graph_path, fn_path;
  double p = 2.0;
  auto common = [&](CLI::App* sub, bool needs_graph = true) {
    if (needs_graph) {
      sub->add_option("--graph", graph_path, "graph JSON file")->required()->check(CLI::ExistingFile);
      sub->add_option("--mu-mode", measure_mode, "measure: graph (as given), unit or degree")
          ->check(CLI::IsMember({"graph", "unit", "degree"}));
    }
    sub->add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues: exact for p = 2, sign patterns for p = 1, extremal otherwise");
  common(spectrum);
  spectrum->add_option("--p", p, "exponent")->check(CLI::Range(1.0, 1e6));

  ExtremalOptions ex_opts;
  auto* extremal = app.add_subcommand("extremal", "smallest and largest eigenvalue by projected gradient");
  common(extremal);
  extremal->add_option("--p", p, "exponent")->check(CLI::Range(1.0, 1e6));
  extremal->add_option("--restarts", ex_opts.restarts, "random restarts");
  extremal->add_option("--max-iter", ex_opts.max_iter, "gradient steps per restart");
  extremal->add_option("--seed", ex_opts.seed, "seed");

  bool dual = false, minimal = false;
  std::vector<int> position;
  auto* nodal = app.add_subcommand("nodal", "strong and weak nodal domains of a function");
  common(nodal);
  nodal->add_option("--function", fn_path, "function JSON file")->required()->check(CLI::ExistingFile);
  nodal->add_flag("--dual", dual, "also count on the negated signature");
  nodal->add_option("--p", p, "exponent, for the bound report");
  nodal->add_option("--position", position, "k,r of the eigenvalue; enables the bound report")->delimiter(',');
  nodal->add_flag("--minimal-support", minimal, "the function has minimal support in its eigenspace");

  int k = 1;
  bool heuristic = false;
  auto* cheeger = app.add_subcommand("cheeger", "k-way signed Cheeger constant by enumeration");
  common(cheeger);
  cheeger->add_option("--k", k, "number of sub-bipartitions")->required();
  cheeger->add_flag("--heuristic", heuristic, "local search above the enumeration cap");

  std::size_t cap = 12;
  auto* onelap = app.add_subcommand("onelap", "1-Laplacian eigenpairs among {-1,0,1} patterns");
  common(onelap);
  onelap->add_option("--cap", cap, "largest n to enumerate");

  std::string edge, node, graph_out;
  auto* transform = app.add_subcommand("transform", "eigenpair-compensated edge or node removal");
  common(transform);
  transform->add_option("--remove-edge", edge, "u,v");
  transform->add_option("--remove-node", node, "vertex id");
  transform->add_option("--function", fn_path, "function JSON file")->check(CLI::ExistingFile);
  transform->add_option("--p", p, "exponent");
  transform->add_option("-o,--output", graph_out, "write the new graph here");

  std::string config_path, replay_path;
  auto* verify = app.add_subcommand("verify", "run the randomized check suite");
  common(verify, false);
  verify->add_option("--config", config_path, "suite JSON file")->required()->check(CLI::ExistingFile);
  verify->add_option("--replay", replay_path, "failure bundle to re-run")->check(CLI::ExistingFile);
  verify->add_option("-o,--output", out.path, "write the report here");

  RandomGraphParams rp;
  std::string model = "uniform", rmu = "unit";
  auto* random = app.add_subcommand("random", "random signed graph");
  common(random, false);
  random->add_option("--n", rp.n, "vertices")->required();
  random->add_option("--density", rp.density, "edge probability");
  random->add_option("--model", model, "uniform, all-positive, all-negative, balanced or antibalanced");
  random->add_option("--seed", rp.seed, "seed");
  random->add_option("--mu-mode", rmu, "unit or degree");
  random->add_flag("--connected", rp.connected, "plant a spanning tree");
  random->add_option("-o,--output", out.path, "write the graph here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(graph_path, p, out);
    if (*extremal) return cmd_extremal(graph_path, p, ex_opts, out);
    if (*nodal) return cmd_nodal(graph_path, fn_path, dual, p, position, minimal, out);
    if (*cheeger) return cmd_cheeger(graph_path, k, heuristic, out);
    if (*onelap) return cmd_onelap(graph_path, cap, out);
    if (*transform) return cmd_transform(graph_path, edge, node, fn_path, p, graph_out, out);
    if (*verify) return cmd_verify(config_path, replay_path, out);
    if (*random) {
      rp.model = parse_signature_model(model);
      rp.mu_mode = parse_mu_mode(rmu);
      return cmd_random(rp, out);
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
