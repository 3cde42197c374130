#include "ssg/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssg/best_response.hpp"
#include "ssg/errors.hpp"
#include "ssg/matrix_game.hpp"
#include "ssg/policy_eval.hpp"

namespace ssg {

namespace {

struct Column {
  PolicyPtr policy;
  Eigen::VectorXd payoff;  // per edge
};

// Best response to eps plus the exact per-edge payoffs of its greedy policy.
Column respond(const RootedGraph& g, const ActivationParams& params, const HiderDistribution& eps,
               double& value, double& consistency) {
  const BestResponse br = best_response_value(g, params, eps);
  const HittingTimes ht = policy_hitting_times(g, params, *br.policy());
  Column col{br.policy(), Eigen::VectorXd(g.num_edges())};
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!ht.edges[e].finite()) {
      throw CoverageError("best response never reaches edge " + g.edge(e).id);
    }
    col.payoff[e] = ht.edges[e].value;
  }
  value = br.value();
  consistency = std::abs(*ht.payoff(eps) - value);
  return col;
}

double worst_edge(const std::vector<Column>& cols, const std::vector<double>& w) {
  Eigen::VectorXd mix = Eigen::VectorXd::Zero(cols.front().payoff.size());
  for (std::size_t j = 0; j < cols.size(); ++j) mix += w[j] * cols[j].payoff;
  return mix.maxCoeff();
}

PolicyPtr witness(const std::vector<Column>& cols, const std::vector<double>& w) {
  std::vector<PolicyPtr> parts;
  std::vector<double> weights;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (w[j] > 0.0) {
      parts.push_back(cols[j].policy);
      weights.push_back(w[j]);
    }
  }
  if (parts.size() == 1) return parts.front();
  return mixture(std::move(parts), std::move(weights));
}

}  // namespace

std::string_view to_string(CertificateMethod m) {
  return m == CertificateMethod::kDoubleOracle ? "double-oracle" : "frank-wolfe";
}

json ValueCertificate::to_json(const RootedGraph& g) const {
  json h = json::object();
  for (int e = 0; e < hider.size(); ++e) h[g.edge(e).id] = hider[e];
  json steps = json::array();
  for (const auto& s : log) steps.push_back({{"iteration", s.iteration}, {"lower", s.lower}, {"upper", s.upper}});
  return {{"lower", lower},
          {"upper", upper},
          {"gap", gap()},
          {"iterations", iterations},
          {"converged", converged},
          {"hider", h},
          {"policy", policy ? policy->descriptor() : json()},
          {"log", steps},
          {"meta",
           {{"lambda_weighting", "tau_edge"},
            {"method", std::string(to_string(method))},
            {"tol", tol},
            {"consistency", consistency}}}};
}

ValueCertificate approximate_value(const RootedGraph& g, const ActivationParams& params,
                                   const CertificateOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (g.num_edges() > kMaxSupport) {
    throw CapacityError("value certificates are limited to " + std::to_string(kMaxSupport) + " edges");
  }
  ValueCertificate cert;
  cert.tol = options.tol;
  cert.method = options.method;
  cert.lower = -std::numeric_limits<double>::infinity();
  cert.upper = std::numeric_limits<double>::infinity();

  HiderDistribution eps = options.initial ? *options.initial : HiderDistribution::uniform(g);
  std::vector<Column> cols;
  std::vector<double> avg;  // Frank–Wolfe searcher average

  for (int k = 0; k < options.iteration_cap; ++k) {
    double value = 0.0, consistency = 0.0;
    cols.push_back(respond(g, params, eps, value, consistency));
    cert.consistency = std::max(cert.consistency, consistency);
    if (value > cert.lower) {
      cert.lower = value;
      cert.hider = eps;
    }

    std::vector<double> next_eps;
    if (options.method == CertificateMethod::kDoubleOracle) {
      Eigen::MatrixXd G(g.num_edges(), static_cast<int>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j) G.col(static_cast<int>(j)) = cols[j].payoff;
      const MatrixGameSolution sol = solve_matrix_game(G);
      const double upper = worst_edge(cols, sol.col);
      if (upper < cert.upper) {
        cert.upper = upper;
        cert.policy = witness(cols, sol.col);
      }
      next_eps = sol.row;
    } else {
      const double step = 2.0 / (k + 2.0);
      for (double& a : avg) a *= 1.0 - step;
      avg.push_back(step);
      const double upper = worst_edge(cols, avg);
      if (upper < cert.upper) {
        cert.upper = upper;
        cert.policy = witness(cols, avg);
      }
      Eigen::Index worst = 0;
      cols.back().payoff.maxCoeff(&worst);  // first maximiser = lowest edge index
      next_eps = eps.masses();
      for (double& x : next_eps) x *= 1.0 - step;
      next_eps[worst] += step;
    }
    cert.iterations = k + 1;
    cert.log.push_back({k + 1, cert.lower, cert.upper});
    if (cert.upper - cert.lower <= options.tol) {
      cert.converged = true;
      break;
    }
    eps = HiderDistribution(g, std::move(next_eps));
  }
  return cert;
}

ValueCertificate deterministic_value(const RootedGraph& g, const CertificateOptions& options) {
  const ActivationParams ones(g, 1.0);
  ValueCertificate cert = approximate_value(g, ones, options);
  const double n = g.num_edges();
  const double slack = options.tol + 1e-9;
  if (cert.lower < (n + 1.0) / 2.0 - slack || cert.upper > n + slack) {
    throw std::logic_error("deterministic value outside [(|E|+1)/2, |E|]");
  }
  const int tour = chinese_postman_length(g);
  const bool tree = classify(g) == GraphClass::kTree;
  if ((tree && tour != 2 * g.num_edges()) || (!tree && tour > 2 * g.num_edges() - 2)) {
    throw std::logic_error("postman tour length violates the covering-walk bound");
  }
  return cert;
}

}  // namespace ssg
