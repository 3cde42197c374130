#pragma once

#include "ssg/graph.hpp"

namespace ssg {

// The tree on which depth-first searches are not best responses to the EBD:
// a path of five edges e1 … e1' from O to v1, and e2 from O to v2 with a leaf
// edge e21 and a two-edge branch e22, e22' below it.
RootedGraph make_counterexample_tree();

struct CounterexampleResult {
  double p = 0.0;
  double g1 = 0.0;          // exact continuation payoffs
  double g2 = 0.0;
  double difference = 0.0;  // tree: g1 - g2; Eulerian: g2 - g1
  double g1_formula = 0.0;  // the closed forms being reproduced
  double g2_formula = 0.0;
  double reference = 0.0;   // expression whose sign the difference must match
  bool sign_agrees = false;
};

// Sally has searched v22 first and is back at v2 with e2 active and e21 not.
// g1: go up now and search v1 before v21; g2: wait for e21.
CounterexampleResult tree_counterexample_check(double p);

// Four parallel paths of two edges, e41, e42, e12 searched, Sally at v1 with
// e12 active and e11 not, hider uniform on the other five edges.
// g1: wait and keep following the UES; g2: the deviation through D.
CounterexampleResult eulerian_counterexample_check(double p);

}  // namespace ssg
