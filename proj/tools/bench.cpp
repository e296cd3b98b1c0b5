// Compares the serial reference scan with the OpenMP scan on a medium
// exhaustive instance and checks that both produce the same verdict.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qstab/kingrep.hpp"

using namespace qstab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QuiverRep bench_rep(std::int64_t p, int d) {
  QuiverRep rep;
  rep.quiver = {2, {{1, 2}}};
  rep.field = FieldSpec::prime(p);
  rep.dims = {d, d};
  Mat<Rat> m(d, d, Rat(0));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m.at(r, c) = Rat((r * d + c) % p);  // mixed-rank map
  rep.mats.push_back(m);
  return rep;
}

void run(const char* label, const QuiverRep& rep, const std::vector<Rat>& b) {
  ScanOptions serial, parallel;
  serial.budget = parallel.budget = 40'000'000;
  serial.parallel = false;
  parallel.parallel = true;

  auto t0 = std::chrono::steady_clock::now();
  Verdict vs = check_semistable(rep, b, CheckMode::ExhaustiveFF, serial);
  const double ts = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  Verdict vp = check_semistable(rep, b, CheckMode::ExhaustiveFF, parallel);
  const double tp = seconds_since(t0);

  const bool same = vs.kind == vp.kind && vs.witness_theta == vp.witness_theta &&
                    vs.witness.has_value() == vp.witness.has_value() &&
                    (!vs.witness || vs.witness->dims() == vp.witness->dims());
  std::cout << label << ": verdict " << to_string(vs.kind) << ", serial " << ts
            << "s, parallel " << tp << "s, speedup " << (tp > 0 ? ts / tp : 0)
            << ", results " << (same ? "identical" : "DIFFER") << "\n";
  if (!same) std::exit(1);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (compiled without OpenMP)\n";
#endif
  run("F5 dims (4,4)", bench_rep(5, 4), {Rat(1)});
  run("F3 dims (5,5)", bench_rep(3, 5), {Rat(1)});
  return 0;
}
