// Compares the OpenMP kernels against the serial paths and the reference
// transitive-closure partition on growing windows.
//
//   endslab_bench [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "endslab/components.hpp"
#include "endslab/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace endslab;

namespace {

double seconds(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

std::vector<int> active_outside(const Window& w, Dist radius) {
  std::vector<int> active;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Dist d = w.dist_to_origin(static_cast<int>(i));
    if (d == kUnreachable || d > radius) active.push_back(static_cast<int>(i));
  }
  return active;
}

struct Case {
  const char* label;
  const char* descriptor;
  Dist radius;
  Dist k;
  bool with_reference;
};

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) quick = quick || std::strcmp(argv[i], "--quick") == 0;

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif
  std::printf("%-28s %9s %6s %12s %12s %9s %12s\n", "window", "points", "K", "serial[ms]",
              "parallel[ms]", "speedup", "reference");

  std::vector<Case> cases;
  if (quick) {
    cases = {
        {"grid2 r=24", R"({"kind":"integer_grid","dim":2})", 24, 2, true},
        {"binary tree r=10", R"({"kind":"word_tree","alphabet":"ab"})", 10, 1, false},
    };
  } else {
    cases = {
        {"grid2 r=48", R"({"kind":"integer_grid","dim":2})", 48, 2, true},
        {"grid2 r=96", R"({"kind":"integer_grid","dim":2})", 96, 2, false},
        {"grid3 r=16", R"({"kind":"integer_grid","dim":3})", 16, 2, false},
        {"binary tree r=13", R"({"kind":"word_tree","alphabet":"ab"})", 13, 1, false},
        {"free group r=9", R"({"kind":"free_group","rank":2})", 9, 1, false},
        {"comb tree r=160", R"({"kind":"comb_tree"})", 160, 3, true},
    };
  }

  bool all_equal = true;
  for (const auto& c : cases) {
    Space space = Space::parse(c.descriptor);
    Window w = ball(space, space.basepoint(), c.radius);
    auto active = active_outside(w, c.radius / 4);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = kernels::khop_labels(w, active, c.k, kernels::Mode::serial);
    double t_serial = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = kernels::khop_labels(w, active, c.k, kernels::Mode::parallel);
    double t_parallel = seconds(t0);

    bool equal = serial == parallel;
    std::string ref = "-";
    if (c.with_reference) {
      t0 = std::chrono::steady_clock::now();
      auto reference = kernels::khop_labels_reference(w, active, c.k);
      equal = equal && serial == reference;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f ms", seconds(t0) * 1e3);
      ref = buf;
    }
    all_equal = all_equal && equal;

    std::printf("%-28s %9zu %6lld %12.1f %12.1f %8.2fx %12s%s\n", c.label, w.size(),
                static_cast<long long>(c.k), t_serial * 1e3, t_parallel * 1e3,
                t_serial / (t_parallel > 0 ? t_parallel : 1e-9), ref.c_str(),
                equal ? "" : "  MISMATCH");
  }

  // end_profile parallelises across radii on top of the same kernels
  {
    Space grid = Space::parse(R"({"kind":"integer_grid","dim":2})");
    int r_max = quick ? 12 : 32;
    auto t0 = std::chrono::steady_clock::now();
    auto profile = end_profile(grid, "0,0", 1, r_max, 4, {}, kernels::Mode::serial);
    double t_serial = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = end_profile(grid, "0,0", 1, r_max, 4, {}, kernels::Mode::parallel);
    double t_parallel = seconds(t0);
    all_equal = all_equal && profile.counts == parallel.counts;
    std::printf("%-28s %9s %6d %12.1f %12.1f %8.2fx %12s%s\n", "grid2 profile (radii)", "-", 1,
                t_serial * 1e3, t_parallel * 1e3,
                t_serial / (t_parallel > 0 ? t_parallel : 1e-9), "-",
                profile.counts == parallel.counts ? "" : "  MISMATCH");
  }

  if (!all_equal) {
    std::printf("FAILURE: kernel outputs diverged\n");
    return 1;
  }
  return 0;
}
