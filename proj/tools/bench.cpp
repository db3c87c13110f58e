// Benchmark comparing the serial reference kernels against the OpenMP ones:
// level image tables, ball construction and the witness sweep.

#include <omp.h>

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>

#include "selfsim/catalogue.hpp"
#include "selfsim/graph.hpp"

using namespace selfsim;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& fn, int reps) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    fn();
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
  std::printf("%-38s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n",
              name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int depth = 20;
  int reps = 3;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--depth") && i + 1 < argc) depth = std::atoi(argv[++i]);
    if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) reps = std::atoi(argv[++i]);
  }
  std::printf("threads: %d\n", omp_get_max_threads());

  // level image table of a catalogued element
  {
    GroupElement g = catalogue_get(882).witness_element();
    std::vector<std::uint32_t> serial_out, parallel_out;
    double s = run_ms([&] { serial_out = level_images_serial(g, depth); }, reps);
    double p = run_ms(
        [&] { parallel_out = level_images(g, depth, kDefaultLevelBudget, true); }, reps);
    if (serial_out != parallel_out) {
      std::fprintf(stderr, "kernel mismatch in level images\n");
      return 1;
    }
    report("level images (882 witness, depth " + std::to_string(depth) + ")", s, p);
  }

  // ball construction
  {
    MachinePtr m = catalogue_get(861).machine;
    int ball_depth = std::min(depth - 3, 17);
    GraphBall serial_ball, parallel_ball;
    double s = run_ms([&] { serial_ball = build_ball_serial(m, ball_depth); }, reps);
    double p = run_ms([&] { parallel_ball = build_ball(m, ball_depth); }, reps);
    for (std::uint32_t v = 0; v < serial_ball.vertex_count(); ++v)
      if (serial_ball.adj[v] != parallel_ball.adj[v]) {
        std::fprintf(stderr, "kernel mismatch in ball construction\n");
        return 1;
      }
    report("ball construction (861, depth " + std::to_string(ball_depth) + ")", s, p);
  }

  // witness sweep
  {
    MachinePtr m = catalogue_get(882).machine;
    std::vector<WitnessReport> serial_hits, parallel_hits;
    double s = run_ms([&] { serial_hits = search_witness(m, 4, 2, {}, false); }, reps);
    double p = run_ms([&] { parallel_hits = search_witness(m, 4, 2, {}, true); }, reps);
    if (serial_hits.size() != parallel_hits.size()) {
      std::fprintf(stderr, "kernel mismatch in witness sweep\n");
      return 1;
    }
    report("witness sweep (882, lengths 4/2)", s, p);
  }
  return 0;
}
