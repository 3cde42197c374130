#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssg/activation.hpp"
#include "ssg/analytic.hpp"
#include "ssg/distribution.hpp"
#include "ssg/graph.hpp"
#include "ssg/strategies.hpp"

namespace ssg {

enum class CertificateMethod { kDoubleOracle, kFrankWolfe };

struct CertificateOptions {
  double tol = 1e-3;
  int iteration_cap = 200;
  CertificateMethod method = CertificateMethod::kDoubleOracle;
  std::optional<HiderDistribution> initial;  // default: uniform on E
};

struct CertificateStep {
  int iteration = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct ValueCertificate {
  double lower = 0.0;  // best-response value of `hider` (exact)
  double upper = 0.0;  // worst-edge payoff of `policy` (exact)
  int iterations = 0;
  bool converged = false;  // gap <= tol
  double tol = 0.0;
  HiderDistribution hider;
  PolicyPtr policy;
  std::vector<CertificateStep> log;
  CertificateMethod method = CertificateMethod::kDoubleOracle;
  // largest |Σ ε g(e,σ) − W| seen between the dynamic program and the exact
  // evaluation of its greedy policy
  double consistency = 0.0;

  double gap() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  json to_json(const RootedGraph& g) const;
};

// Brackets the game value. Both bounds come from exact computations: the lower
// one is an exact best-response value, the upper one the exact worst-edge
// payoff of a mixture of best responses.
ValueCertificate approximate_value(const RootedGraph& g, const ActivationParams& params,
                                   const CertificateOptions& options = {});

// p = 1 everywhere, plus sanity checks against the deterministic bounds and
// the postman tour length (throws std::logic_error if they fail).
ValueCertificate deterministic_value(const RootedGraph& g, const CertificateOptions& options = {});

std::string_view to_string(CertificateMethod m);

}  // namespace ssg
