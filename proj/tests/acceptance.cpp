// Runs the acceptance criteria (all of them, or the ids given on the command
// line) and prints one PASS/FAIL line per criterion. Exit status is 0 only if
// every criterion that ran passed.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "ssg/repro.hpp"

int main(int argc, char** argv) {
  ssg::ReproOptions opts;
  opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  if (const char* s = std::getenv("SSG_SEED")) opts.seed = std::strtoull(s, nullptr, 10);

  int failed = 0, ran = 0;
  auto report = [&](const ssg::CriterionResult& r) {
    ++ran;
    if (!r.pass) ++failed;
    std::printf("[%s] criterion %2d: %s (%.2fs) -- %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
  };
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) report(ssg::run_criterion(std::atoi(argv[i]), opts));
  } else {
    ssg::run_acceptance(opts, report);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
