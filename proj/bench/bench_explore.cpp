// Times serial and OpenMP nd exploration on the same inputs and checks that
// both produce the same graph.
#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "rcalc/explore.hpp"
#include "rcalc/parser.hpp"

using namespace rcalc;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

bool same_graph(const NdGraph& a, const NdGraph& b) {
  if (a.levels != b.levels || a.nodes.size() != b.nodes.size()) return false;
  for (const auto& [k, n] : a.nodes) {
    auto it = b.nodes.find(k);
    if (it == b.nodes.end() || it->second.succ != n.succ) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t depth = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 8;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::vector<std::pair<std::string, Term>> inputs = {
      {"dup", parse_term("(\\x.x[x][x])[(\\a.a)[p],(\\b.b)[q],(\\c.c)[r]]")},
      {"bang", parse_term("(\\x.x[x][!x])[!(\\y.y[y])[!a,!b],(\\w.w)[c]]")},
      {"wide", parse_term("(\\x.x[x][x][x])[(\\a.a)[p],(\\b.b)[!q],(\\c.c[c])[r,s],(\\d.d)[t]]")},
      {"omega", parse_term("(\\x.x[!x][!x])[!\\x.x[!x][!x]]")},
  };

  std::printf("threads %d, depth %zu, best of %d\n", omp_get_max_threads(), depth, reps);
  std::printf("%-8s %8s %10s %10s %8s %s\n", "input", "nodes", "serial_s", "omp_s", "speedup", "equal");
  bool all_equal = true;
  for (const auto& [name, m] : inputs) {
    NdGraph s, p;
    double ts = best_of(reps, [&] { s = explore_nd_serial(m, depth); });
    double tp = best_of(reps, [&] { p = explore_nd(m, depth); });
    bool eq = same_graph(s, p);
    all_equal = all_equal && eq;
    std::printf("%-8s %8zu %10.4f %10.4f %8.2f %s\n", name.c_str(), s.nodes.size(), ts, tp, ts / tp,
                eq ? "yes" : "NO");
  }
  return all_equal ? 0 : 1;
}
