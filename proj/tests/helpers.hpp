#ifndef QSTAB_TESTS_HELPERS_HPP
#define QSTAB_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "qstab/decomp.hpp"
#include "qstab/weights.hpp"

namespace qstab::testing {

inline WeightVector wv(std::vector<long long> v) {
  std::vector<Rat> r;
  for (long long x : v) r.emplace_back(x);
  return WeightVector(std::move(r));
}

// Sorted integer vector with entries in [lo, hi] summing to zero.
inline WeightVector random_weight_vector(std::mt19937_64& rng, int p, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  while (true) {
    std::vector<long long> v(static_cast<size_t>(p));
    long long sum = 0;
    for (int i = 0; i + 1 < p; ++i) {
      v[static_cast<size_t>(i)] = d(rng);
      sum += v[static_cast<size_t>(i)];
    }
    v[static_cast<size_t>(p - 1)] = -sum;
    if (-sum < lo || -sum > hi) continue;
    std::sort(v.begin(), v.end());
    return wv(v);
  }
}

inline HomPoint random_hom(std::mt19937_64& rng, int p, int q, int lo = -1, int hi = 1) {
  std::uniform_int_distribution<int> d(lo, hi);
  while (true) {
    HomPoint f(p, q);
    bool nonzero = false;
    for (int i = 1; i <= p; ++i)
      for (int j = 1; j <= q; ++j) {
        int x = d(rng);
        if (x != 0) nonzero = true;
        f.set(i, j, Rat(x));
      }
    if (nonzero) return f;
  }
}

// Random oriented tree: each vertex > 1 attaches to a uniformly chosen
// earlier vertex, arrow direction coin-flipped.
inline Quiver random_tree(std::mt19937_64& rng, int n) {
  Quiver q;
  q.n = n;
  for (int v = 2; v <= n; ++v) {
    int u = static_cast<int>(rng() % static_cast<std::uint64_t>(v - 1)) + 1;
    if (rng() & 1)
      q.arrows.push_back({u, v});
    else
      q.arrows.push_back({v, u});
  }
  return q;
}

// Exact reconstruction of a weight vector from a pair decomposition side.
inline std::vector<Rat> reconstruct_side(int p, const std::map<int, Rat>& pure,
                                         const std::map<std::pair<int, int>, Rat>& paired,
                                         bool tail_side) {
  std::vector<Rat> acc(static_cast<size_t>(p), Rat(0));
  auto add = [&](int idx, const Rat& coeff) {
    WeightVector sv = WeightVector::step(p, idx);
    for (int t = 0; t < p; ++t) acc[static_cast<size_t>(t)] += coeff * sv[t];
  };
  for (auto& [i, c] : pure) add(i, c);
  for (auto& [ij, e] : paired) add(tail_side ? ij.first : ij.second, e / p);
  return acc;
}

inline bool flag_avoids_kernel(const HomPoint& f, int i) {
  // V^(i) not contained in ker f
  for (auto [s, t] : f.support())
    if (s <= i) return true;
  return false;
}

inline bool flag_misses_image(const HomPoint& f, int j) {
  // W^(j) does not contain Im f
  for (auto [s, t] : f.support())
    if (t > j) return true;
  return false;
}

// Checks every postcondition of the pair decomposition theorem; returns an
// empty string on success, a diagnostic otherwise.
inline std::string verify_pair_decomposition(const HomPoint& f,
                                             const WeightVector& delta,
                                             const WeightVector& gamma,
                                             const PairDecomposition& pd) {
  const int p = pd.p, q = pd.q;
  const Markers m = markers(f);
  const auto [istar, jstar] = pd.witness;

  if (f.at(istar, jstar) == 0) return "witness entry vanishes";
  const Rat mu = mu_hom(f, delta, gamma);
  if (gamma[jstar - 1] - delta[istar - 1] != mu) return "witness does not attain mu";

  for (auto& [i, a] : pd.pure_alpha) {
    if (a < 0) return "negative pure alpha";
    if (a == 0) continue;
    if (!(i < m.i0prime || i >= istar)) return "pure alpha outside allowed range";
  }
  for (auto& [j, b] : pd.pure_beta) {
    if (b < 0) return "negative pure beta";
    if (b == 0) continue;
    if (!(j >= m.j0 || j < jstar)) return "pure beta outside allowed range";
  }
  for (auto& [ij, e] : pd.paired) {
    if (e < 0) return "negative eta";
    if (e == 0) continue;
    auto [i, j] = ij;
    if (i < m.i0prime || i > p - 1 || j < 1 || j > m.j0 - 1)
      return "eta outside the marker box";
    if (i < istar && j >= jstar) return "eta violates quadrant (b)";
    if (i >= istar && j < jstar) return "eta violates quadrant (c)";
    if (!flag_compatible(f, i, j)) return "eta pair incompatible";
    if (!flag_avoids_kernel(f, i)) return "eta pair inside the kernel";
    if (!flag_misses_image(f, j)) return "eta pair contains the image";
  }

  // exact reconstruction
  auto ds = reconstruct_side(p, pd.pure_alpha, pd.paired, true);
  auto gs = reconstruct_side(q, pd.pure_beta, pd.paired, false);
  for (int t = 0; t < p; ++t)
    if (ds[static_cast<size_t>(t)] != delta[t]) return "delta reconstruction failed";
  for (int t = 0; t < q; ++t)
    if (gs[static_cast<size_t>(t)] != gamma[t]) return "gamma reconstruction failed";

  // mu-additivity along the pieces, and the witness attains mu on each piece
  Rat sum(0);
  for (auto& [i, a] : pd.pure_alpha) {
    if (a == 0) continue;
    WeightVector sv = WeightVector::step(p, i);
    Rat piece = mu_hom(f, sv, WeightVector::trivial(q));
    if (piece != -sv[istar - 1]) return "pure alpha piece misses the witness";
    sum += a * piece;
  }
  for (auto& [j, b] : pd.pure_beta) {
    if (b == 0) continue;
    WeightVector sv = WeightVector::step(q, j);
    Rat piece = mu_hom(f, WeightVector::trivial(p), sv);
    if (piece != sv[jstar - 1]) return "pure beta piece misses the witness";
    sum += b * piece;
  }
  for (auto& [ij, e] : pd.paired) {
    if (e == 0) continue;
    WeightVector di = WeightVector::step(p, ij.first).scaled(Rat(1, p));
    WeightVector gj = WeightVector::step(q, ij.second).scaled(Rat(1, q));
    Rat piece = mu_hom(f, di, gj);
    if (piece != gj[jstar - 1] - di[istar - 1]) return "paired piece misses the witness";
    sum += e * piece;
  }
  if (sum != mu) return "mu additivity identity failed";
  return {};
}

// All sorted integer vectors of length p with entries in [lo, hi], sum 0.
inline std::vector<WeightVector> all_sorted_zero_sum(int p, int lo, int hi) {
  std::vector<WeightVector> out;
  std::vector<long long> cur(static_cast<size_t>(p));
  auto rec = [&](auto&& self, int pos, int min, long long sum) -> void {
    if (pos == p) {
      if (sum == 0) out.push_back(wv(cur));
      return;
    }
    for (int v = min; v <= hi; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      self(self, pos + 1, v, sum + v);
    }
  };
  rec(rec, 0, lo, 0);
  return out;
}

// All Hom points with entries in {0,1}, nonzero, as bitmask enumeration.
inline std::vector<HomPoint> all_zero_one_homs(int p, int q) {
  std::vector<HomPoint> out;
  const int bits = p * q;
  for (unsigned mask = 1; mask < (1u << bits); ++mask) {
    HomPoint f(p, q);
    for (int b = 0; b < bits; ++b)
      if (mask & (1u << b)) f.set(b % p + 1, b / p + 1, Rat(1));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace qstab::testing

#endif
