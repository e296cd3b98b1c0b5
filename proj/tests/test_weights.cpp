#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qstab/weights.hpp"

using namespace qstab;
using namespace qstab::testing;

namespace {

// The 3x3 nilpotent conjugation example read as a Hom point: support
// {(2,1),(3,2)} in (source, target) indexing.
HomPoint nilpotent3() {
  HomPoint f(3, 3);
  f.set(2, 1, Rat(1));
  f.set(3, 2, Rat(1));
  return f;
}

HomPoint diag2() {
  HomPoint f(2, 2);
  f.set(1, 1, Rat(1));
  f.set(2, 2, Rat(1));
  return f;
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("step vectors") {
  CHECK(WeightVector::step(3, 1).entries() == std::vector<Rat>{Rat(-2), Rat(1), Rat(1)});
  CHECK(WeightVector::step(3, 2).entries() == std::vector<Rat>{Rat(-1), Rat(-1), Rat(2)});
  CHECK(WeightVector::step(2, 2).is_trivial());
  CHECK(WeightVector::step(2, 0).is_trivial());
  CHECK_THROWS_AS(WeightVector::step(2, 3), PreconditionError);
}

TEST_CASE("weight vector validation") {
  CHECK_THROWS_AS(wv({1, -1}), PreconditionError);       // not ascending
  CHECK_THROWS_AS(wv({-1, 2}), PreconditionError);       // sum != 0
  CHECK_NOTHROW(wv({-5, 1, 4}));
}

TEST_CASE("step_decompose examples") {
  auto c = step_decompose(wv({-1, -1, 2}));
  CHECK(c == std::vector<Rat>{Rat(0), Rat(1)});
  c = step_decompose(wv({-2, 1, 1}));
  CHECK(c == std::vector<Rat>{Rat(1), Rat(0)});
  c = step_decompose(wv({-5, 1, 4}));
  CHECK(c == std::vector<Rat>{Rat(2), Rat(1)});
}

TEST_CASE("step_decompose reconstructs with nonnegative coefficients") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const int p = 2 + static_cast<int>(rng() % 7);
    WeightVector g = random_weight_vector(rng, p, -20, 20);
    auto c = step_decompose(g);
    std::vector<Rat> acc(static_cast<size_t>(p), Rat(0));
    for (int j = 1; j < p; ++j) {
      CHECK(c[static_cast<size_t>(j - 1)] >= 0);
      WeightVector sv = WeightVector::step(p, j);
      for (int i = 0; i < p; ++i)
        acc[static_cast<size_t>(i)] += c[static_cast<size_t>(j - 1)] * sv[i];
    }
    for (int i = 0; i < p; ++i) CHECK(acc[static_cast<size_t>(i)] == g[i]);
  }
}

TEST_CASE("mu_hom on the non-additivity example") {
  HomPoint f = nilpotent3();
  CHECK(mu_hom(f, wv({-2, 1, 1}), wv({-2, 1, 1})) == Rat(0));
  CHECK(mu_hom(f, wv({-1, -1, 2}), wv({-1, -1, 2})) == Rat(0));
  CHECK(mu_hom(f, wv({-3, 0, 3}), wv({-3, 0, 3})) == Rat(-3));
}

TEST_CASE("mu_hom single entry and zero matrix") {
  HomPoint f(2, 2);
  f.set(2, 1, Rat(1));
  CHECK(mu_hom(f, wv({-1, 1}), wv({-1, 1})) == Rat(-2));
  CHECK_THROWS_AS(mu_hom(HomPoint(2, 2), wv({-1, 1}), wv({-1, 1})), DegeneratePointError);
}

TEST_CASE("step-vector weight branches") {
  // mu against (step(p,i), trivial) equals the eigencoordinate weight of a
  // chosen support entry except on the kernel-sensitive index range.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 400; ++t) {
    const int p = 2 + static_cast<int>(rng() % 3);
    const int q = 2 + static_cast<int>(rng() % 3);
    HomPoint f = random_hom(rng, p, q);
    auto sup = f.support();
    auto [s, tt] = sup[rng() % sup.size()];
    int i0prime = p + 1, j0 = 0;
    for (auto [i, j] : sup) {
      i0prime = std::min(i0prime, i);
      j0 = std::max(j0, j);
    }
    for (int i = 1; i < p; ++i) {
      WeightVector ki = WeightVector::step(p, i);
      Rat m_ist = -ki[s - 1];  // weight of the (s,t) eigencoordinate
      Rat mu = mu_hom(f, ki, WeightVector::trivial(q));
      if (i0prime <= i && i < s) {
        CHECK(mu == Rat(p - i));
        CHECK(m_ist == Rat(-i));
      } else {
        CHECK(mu == m_ist);
      }
    }
    for (int j = 1; j < q; ++j) {
      WeightVector lj = WeightVector::step(q, j);
      Rat n_jst = lj[tt - 1];
      Rat mu = mu_hom(f, WeightVector::trivial(p), lj);
      if (tt <= j && j < j0) {
        CHECK(mu == Rat(j));
        CHECK(n_jst == Rat(j - q));
      } else {
        CHECK(mu == n_jst);
      }
    }
  }
}

TEST_CASE("check_additivity on the worked example") {
  AdditivityReport rep = check_additivity(nilpotent3(), wv({-2, 1, 1}), wv({-2, 1, 1}),
                                          wv({-1, -1, 2}), wv({-1, -1, 2}));
  CHECK(rep.mu_first == Rat(0));
  CHECK(rep.mu_second == Rat(0));
  CHECK(rep.mu_product == Rat(-3));
  CHECK_FALSE(rep.additive);
}

TEST_CASE("trivial second subgroup is always additive") {
  AdditivityReport rep = check_additivity(nilpotent3(), wv({-2, 1, 1}), wv({-2, 1, 1}),
                                          WeightVector::trivial(3), WeightVector::trivial(3));
  CHECK(rep.additive);
}

TEST_CASE("diagonal point with common attaining coordinate is additive") {
  AdditivityReport rep =
      check_additivity(diag2(), wv({-1, 1}), wv({-1, 1}), wv({-1, 1}), wv({-1, 1}));
  CHECK(rep.mu_first == Rat(0));
  CHECK(rep.mu_product == Rat(0));
  CHECK(rep.additive);
}

TEST_CASE("unsorted composite is rejected") {
  CHECK_THROWS_AS(check_additivity(diag2(), wv({-1, 1}), wv({-1, 1}), wv({1, -1}),
                                   wv({-1, 1})),
                  PreconditionError);
}

TEST_CASE("subadditivity on random pairs") {
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 500) {
    const int p = 2 + static_cast<int>(rng() % 3);
    const int q = 2 + static_cast<int>(rng() % 3);
    HomPoint f = random_hom(rng, p, q);
    WeightVector d1 = random_weight_vector(rng, p, -4, 4);
    WeightVector g1 = random_weight_vector(rng, q, -4, 4);
    WeightVector d2 = random_weight_vector(rng, p, -4, 4);
    WeightVector g2 = random_weight_vector(rng, q, -4, 4);
    AdditivityReport rep;
    try {
      rep = check_additivity(f, d1, g1, d2, g2);
    } catch (const PreconditionError&) {
      continue;  // entrywise sum not sorted
    }
    CHECK(rep.mu_product <= rep.mu_first + rep.mu_second);
    ++done;
  }
}

TEST_CASE("mu is homogeneous of degree one") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const int p = 2 + static_cast<int>(rng() % 3);
    const int q = 2 + static_cast<int>(rng() % 3);
    HomPoint f = random_hom(rng, p, q);
    WeightVector d = random_weight_vector(rng, p, -5, 5);
    WeightVector g = random_weight_vector(rng, q, -5, 5);
    Rat c(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3));
    CHECK(mu_hom(f, d.scaled(c), g.scaled(c)) == c * mu_hom(f, d, g));
  }
}

TEST_CASE("mu_linearized examples") {
  TuplePoint point;
  point.quiver = {2, {{1, 2}}};
  point.dims = {2, 2};
  point.maps = {diag2()};
  std::vector<std::optional<FactorTable>> no_factors(2);

  // all vertex subgroups trivial
  CHECK(mu_linearized(point, no_factors,
                      {WeightVector::trivial(2), WeightVector::trivial(2)},
                      {Rat(0), Rat(0)}, {Rat(1)}) == Rat(0));

  // scaled step vectors on the diagonal point
  CHECK(mu_linearized(point, no_factors,
                      {WeightVector::step(2, 1).scaled(Rat(1, 2)),
                       WeightVector::step(2, 1).scaled(Rat(1, 2))},
                      {Rat(0), Rat(0)}, {Rat(1)}) == Rat(0));

  // lower-left single entry, lambda_1 trivial
  TuplePoint lower;
  lower.quiver = point.quiver;
  lower.dims = {2, 2};
  HomPoint f(2, 2);
  f.set(1, 2, Rat(1));
  lower.maps = {f};
  CHECK(mu_linearized(lower, no_factors,
                      {WeightVector::trivial(2), WeightVector::step(2, 1)},
                      {Rat(0), Rat(0)}, {Rat(1)}) == Rat(1));

  // nonzero l without a factor table is an error
  CHECK_THROWS_AS(mu_linearized(point, no_factors,
                                {WeightVector::trivial(2), WeightVector::trivial(2)},
                                {Rat(1), Rat(0)}, {Rat(1)}),
                  PreconditionError);

  // with a factor table the vertex factor contributes its max weight
  FactorTable table;
  table.rows.push_back({{Rat(1), Rat(0)}, true});
  table.rows.push_back({{Rat(0), Rat(1)}, false});
  std::vector<std::optional<FactorTable>> factors{table, std::nullopt};
  CHECK(mu_linearized(point, factors,
                      {WeightVector::step(2, 1), WeightVector::trivial(2)},
                      {Rat(2), Rat(0)}, {Rat(1)}) ==
        Rat(2) * Rat(-1) + Rat(1));  // l_1 * delta_1 + b * mu_hom
}

TEST_CASE("flag_weight examples") {
  TuplePoint point;
  point.quiver = {2, {{1, 2}}};
  point.dims = {2, 2};
  point.maps = {diag2()};
  std::vector<Rat> b{Rat(1)};

  FlagWeightReport r = flag_weight(point, MultiIndex{{1, 1}}, b);
  CHECK(r.closed_form == Rat(0));
  CHECK(r.exact_mu == Rat(0));
  CHECK(r.equal);

  r = flag_weight(point, MultiIndex{{0, 1}}, b);
  CHECK(r.closed_form == Rat(1, 2));
  CHECK(r.exact_mu == Rat(1, 2));

  r = flag_weight(point, MultiIndex{{0, 0}}, b);
  CHECK(r.closed_form == Rat(0));
  CHECK(r.exact_mu == Rat(0));
  CHECK(r.equal);

  // (1,0) is not compatible with the diagonal map
  CHECK_THROWS_AS(flag_weight(point, MultiIndex{{1, 0}}, b), PreconditionError);
}

TEST_CASE("flag exact mu never exceeds the closed form") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    TuplePoint point;
    point.quiver = {2, {{1, 2}}};
    const int p = 2 + static_cast<int>(rng() % 2);
    const int q = 2 + static_cast<int>(rng() % 2);
    point.dims = {p, q};
    point.maps = {random_hom(rng, p, q)};
    for (int jt = 0; jt <= p; ++jt)
      for (int jh = 0; jh <= q; ++jh) {
        if (!flag_compatible(point.maps[0], jt, jh)) continue;
        FlagWeightReport r = flag_weight(point, MultiIndex{{jt, jh}}, {Rat(1)});
        CHECK(r.exact_mu <= r.closed_form);
      }
  }
}

}  // TEST_SUITE
