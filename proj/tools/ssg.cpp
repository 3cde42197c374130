// Command line front end: instance I/O, analytic quantities, value
// certificates, exact evaluation, simulation and the acceptance run.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ssg/analytic.hpp"
#include "ssg/best_response.hpp"
#include "ssg/certificate.hpp"
#include "ssg/errors.hpp"
#include "ssg/io.hpp"
#include "ssg/policy_eval.hpp"
#include "ssg/repro.hpp"
#include "ssg/simulate.hpp"
#include "ssg/strategies.hpp"

using namespace ssg;

namespace {

struct Flags {
  std::string graph = "-";
  std::string gen;
  std::optional<double> p;
  double tol = 1e-3;
  std::uint64_t seed = 20240611;
  std::uint64_t n = 10000;
  unsigned jobs = 1;
  std::string format = "json";
  std::string policy = "udfs";
  std::string hider = "uniform";
  std::string method = "double-oracle";
  std::string weighting = "tau_edge";
  std::vector<std::string> args;  // positional, verb specific
};

// Table output is just the JSON flattened into "path  value" rows, so both
// formats always carry the same numbers.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_number_float()) {
    rows.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void emit(const json& j, const Flags& f) {
  if (f.format == "table") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t w = 0;
    for (auto& r : rows) w = std::max(w, r.first.size());
    for (auto& r : rows) std::cout << r.first << std::string(w + 2 - r.first.size(), ' ') << r.second << "\n";
  } else {
    std::cout << round_numbers(j).dump(2) << "\n";
  }
}

Instance load(const Flags& f) {
  Instance inst = [&] {
    if (!f.gen.empty()) {
      RootedGraph g = generate(f.gen);
      ActivationParams params(g, 1.0);
      return Instance{std::move(g), std::move(params)};
    }
    return load_instance(f.graph);
  }();
  if (f.p) inst.params = ActivationParams(inst.graph, *f.p);
  return inst;
}

double uniform_p(const Instance& inst, const std::string& what) {
  if (!inst.params.uniform()) throw DomainError(what + " needs a uniform activation probability (use --p)");
  return inst.params[0];
}

json edge_map(const RootedGraph& g, const std::vector<double>& v) {
  json j = json::object();
  for (int e = 0; e < g.num_edges(); ++e) j[g.edge(e).id] = v[e];
  return j;
}

std::string slurp_if_file(const std::string& s) {
  std::ifstream in(s);
  if (!in) return s;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// uniform | ebd | point:<edge> | {"e1": 0.3, ...} (inline or a file)
HiderDistribution parse_hider(const Instance& inst, const std::string& spec) {
  const RootedGraph& g = inst.graph;
  if (spec == "uniform") return uniform_density(g);
  if (spec == "ebd") return ebd(TreeView(g), uniform_p(inst, "ebd"));
  if (spec.rfind("point:", 0) == 0) {
    const auto e = g.find_edge(spec.substr(6));
    if (!e) throw DomainError("unknown edge '" + spec.substr(6) + "'");
    return HiderDistribution::point(g, *e);
  }
  const json j = json::parse(slurp_if_file(spec));
  std::vector<double> mass(g.num_edges(), 0.0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto e = g.find_edge(it.key());
    if (!e) throw DomainError("unknown edge '" + it.key() + "' in hider distribution");
    mass[*e] = it.value().get<double>();
  }
  return HiderDistribution(g, mass);
}

PolicyPtr parse_policy(const Instance& inst, const std::string& spec) {
  json desc;
  const std::string text = slurp_if_file(spec);
  if (!text.empty() && text.front() == '{') {
    desc = json::parse(text);
  } else {
    desc = {{"kind", spec}};
  }
  return policy_from_descriptor(inst.graph, inst.params, desc);
}

// "gen line 3 2" and "gen line:3,2" both work.
std::string generator_spec(const std::vector<std::string>& args) {
  if (args.empty()) throw DomainError("gen needs a generator, e.g. 'gen line 3 2'");
  std::string spec = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) spec += (i == 1 ? ":" : ",") + args[i];
  return spec;
}

json do_classify(const Instance& inst) {
  const RootedGraph& g = inst.graph;
  json out{{"class", std::string(to_string(classify(g)))},
           {"vertices", g.num_vertices()},
           {"edges", g.num_edges()},
           {"root", g.vertex_name(g.root())},
           {"max_degree", g.max_degree()},
           {"uniform_p", inst.params.uniform()}};
  if (classify(g) == GraphClass::kTree) out["binary"] = TreeView(g).is_binary();
  if (auto par = parallel_structure(g)) out["parallel_lengths"] = par->lengths;
  return out;
}

json do_bounds(const Instance& inst) {
  const auto d = deterministic_bounds(inst.graph);
  const auto s = stochastic_bounds(inst.graph, inst.params);
  return {{"deterministic", {{"lower", d.lower}, {"upper", d.upper}, {"exact", d.exact}}},
          {"stochastic", {{"lower", s.lower}, {"upper", s.upper}, {"exact", s.exact}}},
          {"postman_length", chinese_postman_length(inst.graph)},
          {"p_min", inst.params.min()}};
}

json do_analytic(const Instance& inst, const Flags& f) {
  const RootedGraph& g = inst.graph;
  const double p = uniform_p(inst, "analytic");
  const std::string what = f.args.empty() ? "all" : f.args[0];
  const bool all = what == "all";
  json out{{"p", p}};
  const bool tree = classify(g) == GraphClass::kTree;

  if (what == "tau" || what == "lambda" || (all && tree)) {
    if (!tree) throw DomainError("analytic " + what + " needs a tree");
    const TreeView t(g);
    const LambdaWeighting w =
        f.weighting == "tau_vertex" ? LambdaWeighting::kTauVertex : LambdaWeighting::kTauEdge;
    const bool want_lambda = what == "lambda" || (all && t.is_binary());
    if (what == "lambda" && !t.is_binary()) throw DomainError("analytic lambda needs a binary tree");
    const TreeAnalytics a = want_lambda ? lambda(t, p, w) : cycle_time_tree(t, p);
    json tv = json::object();
    for (int v = 0; v < g.num_vertices(); ++v) tv[g.vertex_name(v)] = a.tau_vertex[v];
    out["tau_vertex"] = tv;
    out["tau_edge"] = edge_map(g, a.tau_edge);
    out["tau_root"] = a.tau_root(t);
    if (want_lambda) {
      json lv = json::object();
      for (int v = 0; v < g.num_vertices(); ++v) lv[g.vertex_name(v)] = a.lambda_vertex[v];
      out["lambda_vertex"] = lv;
      out["lambda_edge"] = edge_map(g, a.lambda_edge);
      out["lambda_root"] = a.lambda_root(t);
      out["equalized_value"] = a.equalized_value(t);
      out["lambda_weighting"] = std::string(to_string(w));
      const auto bw = bdfs_weights(t, p);
      out["bdfs_clamped"] = bw.any_clamped;
    }
  }
  if (what == "phi" || what == "theta" || (all && parallel_structure(g))) {
    const auto par = parallel_structure(g);
    if (!par) throw DomainError("analytic " + what + " needs a parallel Eulerian graph");
    const int m = static_cast<int>(par->lengths.size()) / 2;
    out["lengths"] = par->lengths;
    out["phi"] = phi(m, p);
    if (par->lengths.size() % 2 == 0) {
      out["theta"] = theta_parallel(par->lengths, p);
      out["equalized_value"] = parallel_equalized_value(par->lengths, p);
    } else if (what == "theta") {
      throw DomainError("theta needs an even number of paths");
    }
  }
  if (what == "closed-form" || all) {
    if (auto cf = closed_form_for(g, p)) {
      out["closed_form"] = {{"value", cf->value}, {"formula", cf->formula}, {"p_min", cf->p_min}, {"p_max", cf->p_max}};
    } else if (!all) {
      throw DomainError("no closed form is known for this graph");
    }
  }
  if (!all && what != "tau" && what != "lambda" && what != "phi" && what != "theta" && what != "closed-form") {
    throw DomainError("unknown analytic quantity '" + what + "' (tau, lambda, phi, theta, closed-form, all)");
  }
  return out;
}

json do_ebd(const Instance& inst) {
  const double p = uniform_p(inst, "ebd");
  const TreeView t(inst.graph);
  return {{"p", p}, {"ebd", edge_map(inst.graph, ebd(t, p).masses())}};
}

json do_value(const Instance& inst, const Flags& f) {
  CertificateOptions o;
  o.tol = f.tol;
  o.method = f.method == "frank-wolfe" ? CertificateMethod::kFrankWolfe : CertificateMethod::kDoubleOracle;
  auto cert = approximate_value(inst.graph, inst.params, o);
  json out = cert.to_json(inst.graph);
  out["midpoint"] = cert.midpoint();
  if (inst.params.uniform()) {
    if (auto cf = closed_form_for(inst.graph, inst.params[0])) out["closed_form"] = cf->value;
  }
  return out;
}

json do_best_response(const Instance& inst, const Flags& f) {
  const auto eps = parse_hider(inst, f.hider);
  const auto br = best_response_value(inst.graph, inst.params, eps);
  return {{"value", br.value()},
          {"residual", br.residual()},
          {"belief_states", br.belief_states()},
          {"policy", br.policy()->descriptor()}};
}

json do_evaluate(const Instance& inst, const Flags& f) {
  const RootedGraph& g = inst.graph;
  const auto pol = parse_policy(inst, f.policy);
  const auto eps = parse_hider(inst, f.hider);
  const auto ht = policy_hitting_times(g, inst.params, *pol);
  json times = json::object();
  for (int e = 0; e < g.num_edges(); ++e) {
    times[g.edge(e).id] = ht.edges[e].finite() ? json(ht.edges[e].value) : json(nullptr);
  }
  const auto pay = ht.payoff(eps);
  const auto worst = ht.worst(g.all_edges());
  return {{"policy", pol->descriptor()},
          {"payoff", pay ? json(*pay) : json(nullptr)},
          {"worst_edge_payoff", worst ? json(*worst) : json(nullptr)},
          {"hitting_times", times},
          {"states", ht.states}};
}

json do_simulate(const Instance& inst, const Flags& f) {
  const auto pol = parse_policy(inst, f.policy);
  const auto eps = parse_hider(inst, f.hider);
  const auto r = monte_carlo(inst.graph, inst.params, eps, *pol, f.n, f.seed, f.jobs);
  json out = r.to_json();
  out["policy"] = pol->descriptor();
  return out;
}

int do_repro(const Flags& f) {
  ReproOptions o;
  o.seed = f.seed;
  o.jobs = f.jobs;
  if (f.n != Flags{}.n) o.episodes = f.n;
  json rows = json::array();
  bool all = true;
  auto show = [&](const CriterionResult& r) {
    all = all && r.pass;
    if (f.format == "table") {
      std::printf("%-4d %-46s %s  (%.1fs)  %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
    }
    rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
  };
  if (f.args.empty()) {
    run_acceptance(o, show);
  } else {
    for (const auto& a : f.args) show(run_criterion(std::stoi(a), o));
  }
  if (f.format != "table") emit({{"criteria", rows}, {"all_pass", all}}, f);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic search games on graphs with randomly active edges"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;

  app.add_option("--graph", f.graph, "instance file (JSON), '-' for stdin");
  app.add_option("--gen", f.gen, "generator spec instead of a file, e.g. line:3,2");
  app.add_option("--p", f.p, "override every edge's activation probability")->check(CLI::Range(0.0, 1.0));
  app.add_option("--tol", f.tol, "target gap for value certificates")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--n", f.n, "number of Monte Carlo episodes");
  app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", f.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--policy", f.policy, "policy name or descriptor JSON (udfs, bdfs, ucps, ues, ...)");
  app.add_option("--hider", f.hider, "uniform, ebd, point:<edge> or {edge: mass} JSON");
  app.add_option("--method", f.method, "certificate method")->check(CLI::IsMember({"double-oracle", "frank-wolfe"}));
  app.add_option("--weighting", f.weighting, "Lambda branch weighting")->check(CLI::IsMember({"tau_edge", "tau_vertex"}));

  const std::vector<std::pair<std::string, std::string>> verbs{
      {"classify", "tree / Eulerian / other"},
      {"bounds", "deterministic and stochastic value bounds"},
      {"analytic", "tau, lambda, phi, theta, closed-form or all"},
      {"ebd", "equal branching density on a tree"},
      {"value", "certified bracket on the game value"},
      {"best-response", "searcher's best reply to --hider"},
      {"evaluate", "exact hitting times of --policy"},
      {"simulate", "Monte Carlo estimate of --policy against --hider"},
      {"repro", "run the acceptance suite (optionally only the listed criteria)"},
      {"gen", "print a generated instance, e.g. 'gen line 3 2'"}};
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("args", f.args, "verb arguments");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (!f.gen.empty() && app.get_option("--graph")->count() > 0) {
    std::cerr << "error: give either --graph or --gen, not both\n";
    return 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "repro") return do_repro(f);
    if (verb == "gen") {
      const RootedGraph g = generate(f.gen.empty() ? generator_spec(f.args) : f.gen);
      const ActivationParams params(g, f.p.value_or(1.0));
      std::cout << round_numbers(instance_to_json(g, f.p ? &params : nullptr)).dump(2) << "\n";
      return 0;
    }
    const Instance inst = load(f);
    json out;
    if (verb == "classify") out = do_classify(inst);
    else if (verb == "bounds") out = do_bounds(inst);
    else if (verb == "analytic") out = do_analytic(inst, f);
    else if (verb == "ebd") out = do_ebd(inst);
    else if (verb == "value") out = do_value(inst, f);
    else if (verb == "best-response") out = do_best_response(inst, f);
    else if (verb == "evaluate") out = do_evaluate(inst, f);
    else if (verb == "simulate") out = do_simulate(inst, f);
    emit(out, f);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
