#include "ssg/repro.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>

#include "ssg/analytic.hpp"
#include "ssg/best_response.hpp"
#include "ssg/certificate.hpp"
#include "ssg/counterexamples.hpp"
#include "ssg/io.hpp"
#include "ssg/policy_eval.hpp"
#include "ssg/simulate.hpp"
#include "ssg/strategies.hpp"

namespace ssg {

namespace {

using Rng = std::mt19937_64;

const std::vector<double> kLineGrid{0.1, 0.3, 0.5, 0.7, 0.9, 1.0};

// Collects failures; the first few are kept for the report.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& extra = "") const {
    std::ostringstream os;
    os << checks_ - failures_ << "/" << checks_ << " checks";
    if (!extra.empty()) os << ", " << extra;
    if (!notes_.empty()) os << "; first failures: " << notes_;
    return os.str();
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string notes_;
};

std::string num(double x) { return format_number(x, 10); }

RootedGraph build_tree(const std::vector<int>& parent) {
  // parent[i] is the parent of vertex i+1; vertex 0 is the root
  std::vector<std::string> names{"O"};
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    names.push_back("v" + std::to_string(i + 1));
    edges.push_back({"e" + std::to_string(i + 1), names[parent[i]], names.back()});
  }
  return RootedGraph(names, edges, "O");
}

RootedGraph random_tree(Rng& rng, int num_edges) {
  std::vector<int> parent;
  for (int i = 0; i < num_edges; ++i) {
    parent.push_back(std::uniform_int_distribution<int>(0, i)(rng));
  }
  return build_tree(parent);
}

// Binary tree with at most `max_leaves` leaves and between 2 and 9 edges.
RootedGraph random_binary_tree(Rng& rng, int max_leaves) {
  const int target = std::uniform_int_distribution<int>(2, 9)(rng);
  std::vector<int> parent;
  std::vector<int> kids{0};
  int leaves = 1;
  int guard = 0;
  while (static_cast<int>(parent.size()) < target && ++guard < 1000) {
    const int v = std::uniform_int_distribution<int>(0, static_cast<int>(kids.size()) - 1)(rng);
    if (kids[v] >= 2) continue;
    const bool new_leaf = kids[v] == 1;  // a second child adds a leaf
    if (new_leaf && leaves + 1 > max_leaves) continue;
    if (new_leaf) ++leaves;
    ++kids[v];
    parent.push_back(v);
    kids.push_back(0);
  }
  return build_tree(parent);
}

// Connected multigraph: random tree plus extra edges (parallel ones allowed).
RootedGraph random_graph(Rng& rng, int num_edges) {
  const int n_tree = std::uniform_int_distribution<int>(1, num_edges)(rng);
  std::vector<std::string> names{"O"};
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < n_tree; ++i) {
    names.push_back("v" + std::to_string(i + 1));
    const int par = std::uniform_int_distribution<int>(0, i)(rng);
    edges.push_back({"e" + std::to_string(i + 1), names[par], names.back()});
  }
  const int nv = static_cast<int>(names.size());
  while (static_cast<int>(edges.size()) < num_edges) {
    const int a = std::uniform_int_distribution<int>(0, nv - 1)(rng);
    const int b = std::uniform_int_distribution<int>(0, nv - 1)(rng);
    if (a == b) continue;
    edges.push_back({"e" + std::to_string(edges.size() + 1), names[a], names[b]});
  }
  return RootedGraph(names, edges, "O");
}

CertificateOptions tight(double tol) {
  CertificateOptions o;
  o.tol = tol;
  o.iteration_cap = 500;
  return o;
}

// -- 1: line ---------------------------------------------------------------
CriterionResult line_values() {
  Checker c;
  const RootedGraph g = make_line(3, 2);
  const int lens[2] = {3, 2};
  for (double p : kLineGrid) {
    const auto cert = approximate_value(g, ActivationParams(g, p), tight(1e-4));
    const double want = closed_form_value(ClosedFormFamily::kLine, lens, p).value;
    c.expect(cert.gap() <= 1e-3, "p=" + num(p) + " gap " + num(cert.gap()));
    c.expect(std::abs(cert.midpoint() - want) <= 1e-3,
             "p=" + num(p) + " midpoint " + num(cert.midpoint()) + " vs " + num(want));
  }
  return {1, "line values", c.ok(), c.summary()};
}

// -- 2: circle -------------------------------------------------------------
CriterionResult circle_values() {
  Checker c;
  for (int L : {3, 4, 5}) {
    const RootedGraph g = make_circle(L);
    for (double p : kLineGrid) {
      const auto cert = approximate_value(g, ActivationParams(g, p), tight(1e-4));
      const double want = closed_form_value(ClosedFormFamily::kCircle, std::span(&L, 1), p).value;
      c.expect(cert.gap() <= 1e-3, "L=" + std::to_string(L) + " p=" + num(p) + " gap " + num(cert.gap()));
      c.expect(std::abs(cert.midpoint() - want) <= 1e-3, "L=" + std::to_string(L) + " p=" + num(p) +
                                                              " midpoint " + num(cert.midpoint()) +
                                                              " vs " + num(want));
    }
  }
  return {2, "circle values", c.ok(), c.summary()};
}

// -- 3: simple binary tree -------------------------------------------------
CriterionResult simple_tree_values() {
  Checker c;
  const double p0 = simple_tree_p0();
  c.expect(std::abs(simple_tree_high_p_value(p0) - simple_tree_low_p_value(p0)) <= 1e-9,
           "regime formulas disagree at p0");
  const RootedGraph g = make_simple_binary_tree();
  for (double p : {0.05, 0.10, p0, 0.2, 0.5, 0.8, 1.0}) {
    const auto cert = approximate_value(g, ActivationParams(g, p), tight(1e-4));
    const double want = closed_form_value(ClosedFormFamily::kSimpleBinaryTree, {}, p).value;
    c.expect(cert.gap() <= 1e-3, "p=" + num(p) + " gap " + num(cert.gap()));
    c.expect(std::abs(cert.midpoint() - want) <= 1e-3,
             "p=" + num(p) + " midpoint " + num(cert.midpoint()) + " vs " + num(want));
  }
  c.expect(simple_tree_high_p_value(1.0) == 4.0, "value at p=1 is not exactly 4");
  const auto det = deterministic_value(g, tight(1e-9));
  c.expect(std::abs(det.lower - 4.0) <= 1e-9 && std::abs(det.upper - 4.0) <= 1e-9,
           "certified deterministic value is not 4");
  return {3, "simple binary tree, both regimes", c.ok(), c.summary()};
}

// -- 4: deterministic extremes ---------------------------------------------
CriterionResult deterministic_extremes() {
  Checker c;
  Rng rng(404);
  for (int i = 0; i < 20; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const RootedGraph g = random_tree(rng, n);
    const auto cert = deterministic_value(g, tight(1e-8));
    c.expect(std::abs(cert.lower - n) <= 1e-6 && std::abs(cert.upper - n) <= 1e-6,
             "tree " + std::to_string(i) + " [" + num(cert.lower) + ", " + num(cert.upper) + "]");
  }
  std::vector<RootedGraph> eulerian;
  for (int L = 3; L <= 6; ++L) eulerian.push_back(make_circle(L));
  for (std::vector<int> lam : {std::vector<int>{1, 1}, {1, 1, 1, 1}, {2, 2}}) {
    eulerian.push_back(make_parallel(lam));
  }
  for (const auto& g : eulerian) {
    const double want = (g.num_edges() + 1) / 2.0;
    const auto cert = deterministic_value(g, tight(1e-8));
    c.expect(std::abs(cert.lower - want) <= 1e-6 && std::abs(cert.upper - want) <= 1e-6,
             std::to_string(g.num_edges()) + "-edge Eulerian graph [" + num(cert.lower) + ", " +
                 num(cert.upper) + "]");
  }
  return {4, "deterministic extremes", c.ok(), c.summary()};
}

// -- 5: EBD equalises pure DFS ---------------------------------------------
CriterionResult ebd_equalization() {
  Checker c;
  Rng rng(505);
  double worst = 0.0;
  int plans = 0;
  for (int i = 0; i < 50; ++i) {
    const RootedGraph g = random_binary_tree(rng, 5);
    const TreeView t(g);
    for (double p : {0.3, 0.6, 0.9, 1.0}) {
      const ActivationParams params(g, p);
      const double want = lambda(t, p).equalized_value(t);
      const HiderDistribution eps = ebd(t, p);
      for (const auto& s : enumerate_pure_dfs(g)) {
        const double got = *policy_hitting_times(g, params, *s).payoff(eps);
        worst = std::max(worst, std::abs(got - want));
        ++plans;
        c.expect(std::abs(got - want) <= 1e-9,
                 "tree " + std::to_string(i) + " p=" + num(p) + ": " + num(got) + " vs " + num(want));
      }
    }
  }
  return {5, "EBD equalization against pure DFS", c.ok(),
          c.summary(std::to_string(plans) + " plan evaluations, max deviation " + num(worst))};
}

// -- 6: UES equalisation on parallel Eulerian graphs -----------------------
// Two halves: UES hitting times (every edge), and the uniform density against
// pure Eulerian plans. The second half only holds when all paths have the same
// length or there are just two paths; the detail line says where it breaks.
CriterionResult ues_equalization() {
  Checker c;
  const std::vector<std::vector<int>> instances{
      {1, 1}, {2, 2}, {1, 4}, {3, 5}, {1, 1, 1, 1}, {2, 2, 2, 2}, {1, 2, 3, 4}, {1, 1, 1, 5},
      {1, 1, 1, 1, 1, 1}, {2, 2, 2, 2, 2, 2}, {1, 1, 2, 2, 3, 3}};
  double worst_ues = 0.0;
  std::vector<std::string> broken;
  for (const auto& lam : instances) {
    const RootedGraph g = make_parallel(lam);
    std::string tag = "(";
    for (std::size_t i = 0; i < lam.size(); ++i) tag += (i ? "," : "") + std::to_string(lam[i]);
    tag += ")";
    double worst_es = 0.0;
    for (double p : {0.2, 0.5, 0.8, 1.0}) {
      const ActivationParams params(g, p);
      const double want = parallel_equalized_value(lam, p);
      const auto ht = policy_hitting_times(g, params, *ues(g));
      for (int e = 0; e < g.num_edges(); ++e) {
        worst_ues = std::max(worst_ues, std::abs(ht.edges[e].value - want));
        c.expect(ht.edges[e].finite() && std::abs(ht.edges[e].value - want) <= 1e-9,
                 tag + " p=" + num(p) + " UES time of " + g.edge(e).id + ": " + num(ht.edges[e].value) +
                     " vs " + num(want));
      }
      const HiderDistribution ud = uniform_density(g);
      for (const auto& s : enumerate_pure_es(g, lam.size() >= 6 ? 60 : 1000)) {
        const double got = *policy_hitting_times(g, params, *s).payoff(ud);
        worst_es = std::max(worst_es, std::abs(got - want));
        c.expect(std::abs(got - want) <= 1e-9,
                 tag + " p=" + num(p) + " pure ES payoff " + num(got) + " vs " + num(want));
      }
    }
    if (worst_es > 1e-9) broken.push_back(tag + " off by up to " + num(worst_es));
  }
  std::string extra = "UES max deviation " + num(worst_ues);
  if (!broken.empty()) {
    extra += "; uniform density does not equalize pure ES on";
    for (const auto& b : broken) extra += " " + b;
  }
  return {6, "UES equalization on parallel Eulerian graphs", c.ok(), c.summary(extra)};
}

// -- 7: BDFS equalises leaf edges ------------------------------------------
CriterionResult bdfs_equalization() {
  Checker c;
  Rng rng(707);
  int tested = 0, skipped = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const RootedGraph g = random_binary_tree(rng, 5);
    const TreeView t(g);
    for (double p : {0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      if (bdfs_weights(t, p).any_clamped) {
        ++skipped;
        continue;
      }
      ++tested;
      const double want = lambda(t, p).equalized_value(t);
      const auto ht = policy_hitting_times(g, ActivationParams(g, p), *bdfs(g, p), t.leaf_edges());
      for (int e = 0; e < g.num_edges(); ++e) {
        if (!t.is_leaf_edge(e)) continue;
        worst = std::max(worst, std::abs(ht.edges[e].value - want));
        c.expect(std::abs(ht.edges[e].value - want) <= 1e-9,
                 "tree " + std::to_string(i) + " p=" + num(p) + " leaf " + g.edge(e).id + ": " +
                     num(ht.edges[e].value) + " vs " + num(want));
      }
    }
  }
  c.expect(tested > 0, "no unclamped instance");
  return {7, "BDFS leaf equalization", c.ok(),
          c.summary(std::to_string(tested) + " unclamped (tree, p) pairs, " + std::to_string(skipped) +
                    " clamped skipped, max deviation " + num(worst))};
}

// -- 8: counterexamples ----------------------------------------------------
CriterionResult counterexamples() {
  Checker c;
  for (int k = 1; k <= 20; ++k) {
    const double p = k / 21.0;
    const auto r = tree_counterexample_check(p);
    c.expect(r.difference < 0.0 && r.sign_agrees, "tree p=" + num(p) + " g1-g2=" + num(r.difference));
    c.expect(std::abs(r.g1 - r.g1_formula) <= 1e-9 && std::abs(r.g2 - r.g2_formula) <= 1e-9,
             "tree p=" + num(p) + " continuation payoffs differ from the closed forms");
  }
  for (double p : {0.05, 0.1, 0.2, 0.3, 0.35, 0.4, 0.45, 0.5, 0.6, 0.8, 0.9, 1.0}) {
    const auto r = eulerian_counterexample_check(p);
    c.expect(r.sign_agrees, "Eulerian p=" + num(p) + " g2-g1=" + num(r.difference));
    c.expect(std::abs(r.g1 - r.g1_formula) <= 1e-9 && std::abs(r.g2 - r.g2_formula) <= 1e-9,
             "Eulerian p=" + num(p) + " continuation payoffs differ from the closed forms");
    if (p == 0.4) c.expect(std::abs(r.difference) <= 1e-12, "g2-g1 not zero at p=0.4");
  }
  return {8, "counterexamples", c.ok(), c.summary()};
}

// -- 9: bound sandwich -----------------------------------------------------
CriterionResult bound_sandwich() {
  Checker c;
  Rng rng(909);
  for (int i = 0; i < 30; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const RootedGraph g = random_graph(rng, n);
    const double p = std::uniform_real_distribution<double>(0.25, 1.0)(rng);
    const ActivationParams params(g, p);
    const auto cert = approximate_value(g, params, tight(1e-4));
    const auto b = stochastic_bounds(g, params);
    c.expect(cert.lower >= b.lower - 1e-9 && cert.upper <= b.upper + 1e-9,
             "instance " + std::to_string(i) + " [" + num(cert.lower) + ", " + num(cert.upper) +
                 "] not inside [" + num(b.lower) + ", " + num(b.upper) + "]");
  }
  for (int i = 0; i < 10; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const RootedGraph g = random_tree(rng, n);
    const auto cert = approximate_value(g, ActivationParams(g, 0.999), tight(1e-4));
    c.expect(std::abs(cert.midpoint() - n) <= 0.02,
             "tree with " + std::to_string(n) + " edges at p=0.999: " + num(cert.midpoint()));
  }
  return {9, "bound sandwich", c.ok(), c.summary()};
}

// -- 10: Monte Carlo against exact evaluation ------------------------------
CriterionResult oracle_agreement(const ReproOptions& opt) {
  Checker c;
  struct Case {
    std::string label;
    RootedGraph g;
    double p;
    std::function<PolicyPtr(const RootedGraph&, double)> policy;
    std::function<HiderDistribution(const RootedGraph&, double)> hider;
  };
  auto ebd_of = [](const RootedGraph& g, double p) { return ebd(TreeView(g), p); };
  auto ud = [](const RootedGraph& g, double) { return uniform_density(g); };
  auto br_of = [](const RootedGraph& g, double p) {
    return best_response_value(g, ActivationParams(g, p), uniform_density(g)).policy();
  };
  std::vector<Case> cases;
  cases.push_back({"line udfs", make_line(3, 2), 0.5, [](auto& g, double) { return udfs(g); }, ebd_of});
  cases.push_back({"line bdfs", make_line(3, 2), 0.3, [](auto& g, double p) { return bdfs(g, p); }, ebd_of});
  cases.push_back({"tree bdfs", make_simple_binary_tree(), 0.5,
                   [](auto& g, double p) { return bdfs(g, p); }, ebd_of});
  cases.push_back({"tree pure dfs", make_simple_binary_tree(), 0.7,
                   [](auto& g, double) { return enumerate_pure_dfs(g).back(); }, ud});
  cases.push_back({"tree low-p", make_simple_binary_tree(), 0.1,
                   [](auto& g, double p) { return simple_tree_low_p_policy(g, p); }, ud});
  cases.push_back({"tree ucps", make_simple_binary_tree(), 0.6, [](auto& g, double) { return ucps(g); }, ud});
  cases.push_back({"circle ues", make_circle(4), 0.6, [](auto& g, double) { return ues(g); }, ud});
  cases.push_back({"circle ucps", make_circle(5), 0.4, [](auto& g, double) { return ucps(g); }, ud});
  cases.push_back({"parallel ues", make_parallel(std::vector<int>{2, 2, 2, 2}), 0.4,
                   [](auto& g, double) { return ues(g); }, ud});
  cases.push_back({"parallel uniform", make_parallel(std::vector<int>{1, 1, 1}), 0.5,
                   [](auto& g, double) { return parallel_uniform(g); }, ud});
  cases.push_back({"best response", make_line(3, 2), 0.5, br_of, ud});

  double worst_z = 0.0;
  double worst_residual = 0.0;
  std::uint64_t seed = opt.seed;
  for (auto& cs : cases) {
    const ActivationParams params(cs.g, cs.p);
    const PolicyPtr pol = cs.policy(cs.g, cs.p);
    const HiderDistribution eps = cs.hider(cs.g, cs.p);
    const double exact = *policy_hitting_times(cs.g, params, *pol).payoff(eps);
    const auto mc = monte_carlo(cs.g, params, eps, *pol, opt.episodes, ++seed, opt.jobs);
    const double z = std::abs(mc.mean - exact) / mc.se;
    worst_z = std::max(worst_z, z);
    c.expect(z <= 4.0 && mc.censored == 0,
             cs.label + ": MC " + num(mc.mean) + " ± " + num(mc.se) + " vs exact " + num(exact));
    const auto br = best_response_value(cs.g, params, eps);
    worst_residual = std::max(worst_residual, br.residual());
    c.expect(br.residual() <= 1e-9, cs.label + ": best-response residual " + num(br.residual()));
  }
  return {10, "Monte Carlo vs exact evaluation", c.ok(),
          c.summary("max |z| " + num(worst_z) + ", max residual " + num(worst_residual))};
}

}  // namespace

CriterionResult run_criterion(int id, const ReproOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = line_values(); break;
      case 2: r = circle_values(); break;
      case 3: r = simple_tree_values(); break;
      case 4: r = deterministic_extremes(); break;
      case 5: r = ebd_equalization(); break;
      case 6: r = ues_equalization(); break;
      case 7: r = bdfs_equalization(); break;
      case 8: r = counterexamples(); break;
      case 9: r = bound_sandwich(); break;
      case 10: r = oracle_agreement(options); break;
      default: return {id, "unknown", false, "no such criterion"};
    }
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double limit = id == 1 ? 30.0 : (id == 2 || id == 3) ? 60.0 : 0.0;
  if (limit > 0.0 && r.seconds > limit) {
    r.pass = false;
    r.detail += "; too slow (" + num(r.seconds) + " s > " + num(limit) + " s)";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const ReproOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kNumCriteria; ++id) {
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace ssg
