#include "qstab/linalg.hpp"

#include <algorithm>

namespace qstab {

BigInt subspace_count(std::int64_t p, int d) {
  // Gaussian binomial [d choose r]_p summed over r.
  BigInt total(0);
  for (int r = 0; r <= d; ++r) {
    BigInt num(1), den(1);
    for (int i = 0; i < r; ++i) {
      BigInt pd = 1, pr = 1;
      for (int t = 0; t < d - i; ++t) pd *= p;
      for (int t = 0; t < r - i; ++t) pr *= p;
      num *= pd - 1;
      den *= pr - 1;
    }
    total += num / den;
  }
  return total;
}

namespace {

void fill_free_entries(const PrimeField& f, Mat<std::int64_t>& m,
                       const std::vector<std::pair<int, int>>& free_pos,
                       std::vector<Subspace<std::int64_t>>& out) {
  // Mixed-radix counter over the free positions.
  std::vector<std::int64_t> vals(free_pos.size(), 0);
  while (true) {
    for (size_t t = 0; t < free_pos.size(); ++t)
      m.at(free_pos[t].first, free_pos[t].second) = vals[t];
    out.push_back({m});
    size_t t = 0;
    for (; t < vals.size(); ++t) {
      if (++vals[t] < f.p) break;
      vals[t] = 0;
    }
    if (t == vals.size()) break;
  }
}

void pivot_combinations(const PrimeField& f, int d, int r, int start,
                        std::vector<int>& pivots,
                        std::vector<Subspace<std::int64_t>>& out) {
  if (static_cast<int>(pivots.size()) == r) {
    Mat<std::int64_t> m(r, d, 0);
    for (int k = 0; k < r; ++k) m.at(k, pivots[static_cast<size_t>(k)]) = 1;
    std::vector<std::pair<int, int>> free_pos;
    for (int k = 0; k < r; ++k)
      for (int c = pivots[static_cast<size_t>(k)] + 1; c < d; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
          free_pos.emplace_back(k, c);
    fill_free_entries(f, m, free_pos, out);
    return;
  }
  for (int c = start; c < d; ++c) {
    pivots.push_back(c);
    pivot_combinations(f, d, r, c + 1, pivots, out);
    pivots.pop_back();
  }
}

}  // namespace

std::vector<Subspace<std::int64_t>> all_subspaces(const PrimeField& f, int d) {
  std::vector<Subspace<std::int64_t>> out;
  for (int r = 0; r <= d; ++r) {
    std::vector<int> pivots;
    pivot_combinations(f, d, r, 0, pivots, out);
  }
  return out;
}

}  // namespace qstab
