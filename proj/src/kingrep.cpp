#include "qstab/kingrep.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qstab {

namespace {

using FSub = Subspace<std::int64_t>;
using QSub = Subspace<Rat>;

long long to_ll(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<long long>::max() / 4 ||
      v < std::numeric_limits<long long>::min() / 4)
    throw BudgetError(std::string(what) + ": coefficient overflow");
  return static_cast<long long>(v);
}

// theta as an integer linear functional on sub-dimension vectors: s_i scaled
// by the common denominator D.
struct ThetaFunctional {
  std::vector<long long> num;  // per vertex
  BigInt denom;

  static ThetaFunctional build(const Quiver& q, const std::vector<int>& Pbar,
                               const std::vector<Rat>& b) {
    std::vector<Rat> s = character_exponents(q, Pbar, b);
    BigInt d(1);
    for (const Rat& x : s) d = boost::multiprecision::lcm(d, denominator(x));
    ThetaFunctional tf;
    tf.denom = d;
    for (const Rat& x : s) tf.num.push_back(to_ll(BigInt(numerator(x) * (d / denominator(x))), "theta"));
    return tf;
  }

  long long eval(const std::vector<int>& dims_of_tuple) const {
    long long acc = 0;
    for (size_t i = 0; i < num.size(); ++i)
      acc += num[i] * dims_of_tuple[i];
    return acc;
  }

  Rat as_rat(long long v) const { return Rat(BigInt(v)) / Rat(denom); }
};

Mat<std::int64_t> to_ff(const PrimeField& F, const Mat<Rat>& m) {
  Mat<std::int64_t> out(m.rows, m.cols, 0);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      const Rat& x = m.at(r, c);
      if (denominator(x) != 1)
        throw ValidationError("prime-field matrix entry is not an integer");
      out.at(r, c) = F.from_int(to_ll(numerator(x), "field entry"));
    }
  return out;
}

Mat<Rat> lift_ff(const Mat<std::int64_t>& m) {
  Mat<Rat> out(m.rows, m.cols, Rat(0));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out.at(r, c) = Rat(m.at(r, c));
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive prime-field scans.
//
// Per-vertex subspace lists and per-arrow compatibility tables turn the scan
// into a pure table walk over tuple indices; the OpenMP kernel and the
// serial reference share the loop body, and the (max value, min index)
// reduction makes the result independent of the thread count.
// ---------------------------------------------------------------------------

struct FFContext {
  PrimeField F;
  const QuiverRep* rep = nullptr;
  std::vector<std::vector<FSub>> lists;        // per vertex
  std::vector<std::vector<char>> compat;       // per arrow, [ut * Lh + uh]
  std::vector<std::uint64_t> radix;            // list sizes
  std::uint64_t total = 1;

  void decode(std::uint64_t t, std::vector<int>& pick) const {
    for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
      pick[static_cast<size_t>(i)] = static_cast<int>(t % radix[static_cast<size_t>(i)]);
      t /= radix[static_cast<size_t>(i)];
    }
  }

  bool tuple_ok(const std::vector<int>& pick) const {
    for (size_t k = 0; k < rep->quiver.arrows.size(); ++k) {
      const Arrow& a = rep->quiver.arrows[k];
      const auto ut = static_cast<std::uint64_t>(pick[static_cast<size_t>(a.tail - 1)]);
      const auto uh = static_cast<std::uint64_t>(pick[static_cast<size_t>(a.head - 1)]);
      if (!compat[k][ut * radix[static_cast<size_t>(a.head - 1)] + uh]) return false;
    }
    return true;
  }

  bool is_zero_tuple(const std::vector<int>& pick) const {
    for (int v : pick)
      if (v != 0) return false;
    return true;
  }
  bool is_full_tuple(const std::vector<int>& pick) const {
    for (size_t i = 0; i < pick.size(); ++i)
      if (pick[i] != static_cast<int>(radix[i]) - 1) return false;
    return true;
  }

  SubRep subrep_of(const std::vector<int>& pick) const {
    SubRep s;
    for (size_t i = 0; i < pick.size(); ++i)
      s.basis.push_back(lift_ff(lists[i][static_cast<size_t>(pick[i])].basis));
    return s;
  }
};

FFContext make_ff_context(const QuiverRep& rep, std::uint64_t budget,
                          bool flag_route, bool parallel = false) {
  if (!rep.field.is_prime_field())
    throw PreconditionError("exhaustive mode requires a prime field");
  FFContext ctx;
  ctx.F = PrimeField{rep.field.p};
  ctx.rep = &rep;

  BigInt count(1);
  for (int d : rep.dims) count *= subspace_count(ctx.F.p, d);
  if (count > budget)
    throw BudgetError("subspace tuple count " + count.str() +
                      " exceeds budget " + std::to_string(budget));

  for (int d : rep.dims) ctx.lists.push_back(all_subspaces(ctx.F, d));
  for (auto& l : ctx.lists) {
    ctx.radix.push_back(l.size());
    ctx.total *= l.size();
  }

  // Adapted change-of-basis per subspace, used by the flag route.
  std::vector<std::vector<Mat<std::int64_t>>> cob, cob_inv;
  if (flag_route) {
    cob.resize(ctx.lists.size());
    cob_inv.resize(ctx.lists.size());
    for (size_t i = 0; i < ctx.lists.size(); ++i) {
      const int d = rep.dims[i];
      for (const FSub& U : ctx.lists[i]) {
        Mat<std::int64_t> C(d, d, 0);
        std::set<int> pivots;
        for (int r = 0; r < U.basis.rows; ++r) {
          int pc = -1;
          for (int c = 0; c < d; ++c)
            if (U.basis.at(r, c) != 0) { pc = c; break; }
          pivots.insert(pc);
          for (int c = 0; c < d; ++c) C.at(c, r) = U.basis.at(r, c);
        }
        int col = U.basis.rows;
        for (int c = 0; c < d; ++c)
          if (!pivots.count(c)) C.at(c, col++) = 1;
        auto inv = mat_inverse(ctx.F, C);
        if (!inv) throw std::logic_error("adapted basis completion not invertible");
        cob[i].push_back(C);
        cob_inv[i].push_back(*inv);
      }
    }
  }

  for (size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
    const Arrow& a = rep.quiver.arrows[k];
    const size_t it = static_cast<size_t>(a.tail - 1);
    const size_t ih = static_cast<size_t>(a.head - 1);
    const Mat<std::int64_t> f = rep.mat_ff(static_cast<int>(k));
    const size_t lt = ctx.lists[it].size(), lh = ctx.lists[ih].size();
    std::vector<char> table(lt * lh, 0);
    auto entry = [&](size_t ut, size_t uh) -> char {
      if (flag_route) {
        // f in bases adapted to the pair, then the flag containment test.
        Mat<std::int64_t> ft =
            mat_mul(ctx.F, cob_inv[ih][uh], mat_mul(ctx.F, f, cob[it][ut]));
        const int jt = ctx.lists[it][ut].dim();
        const int jh = ctx.lists[ih][uh].dim();
        for (int r = jh; r < ft.rows; ++r)
          for (int c = 0; c < jt; ++c)
            if (ft.at(r, c) != 0) return 0;
        return 1;
      }
      return subspace_leq(ctx.F, map_subspace(ctx.F, f, ctx.lists[it][ut]),
                          ctx.lists[ih][uh])
                 ? 1
                 : 0;
    };
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long long idx = 0; idx < static_cast<long long>(lt * lh); ++idx)
      table[static_cast<size_t>(idx)] =
          entry(static_cast<size_t>(idx) / lh, static_cast<size_t>(idx) % lh);
    ctx.compat.push_back(std::move(table));
  }
  return ctx;
}

struct ScanBest {
  bool found = false;
  long long num = 0;
  std::uint64_t index = 0;
};

bool better(const ScanBest& a, const ScanBest& b) {
  if (!a.found) return false;
  if (!b.found) return true;
  if (a.num != b.num) return a.num > b.num;
  return a.index < b.index;
}

// Max theta numerator over nontrivial proper compatible tuples, smallest
// index first.
ScanBest scan_max_theta(const FFContext& ctx, const ThetaFunctional& tf,
                        bool parallel) {
  const int nv = static_cast<int>(ctx.radix.size());
  auto body = [&](std::uint64_t t, std::vector<int>& pick, std::vector<int>& dims,
                  ScanBest& local) {
    ctx.decode(t, pick);
    if (ctx.is_zero_tuple(pick) || ctx.is_full_tuple(pick)) return;
    if (!ctx.tuple_ok(pick)) return;
    for (int i = 0; i < nv; ++i)
      dims[static_cast<size_t>(i)] = ctx.lists[static_cast<size_t>(i)]
                                         [static_cast<size_t>(pick[static_cast<size_t>(i)])]
                                             .dim();
    ScanBest cand{true, tf.eval(dims), t};
    if (better(cand, local)) local = cand;
  };

  ScanBest best;
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel
    {
      ScanBest local;
      std::vector<int> pick(static_cast<size_t>(nv)), dims(static_cast<size_t>(nv));
#pragma omp for schedule(static) nowait
      for (long long t = 0; t < static_cast<long long>(ctx.total); ++t)
        body(static_cast<std::uint64_t>(t), pick, dims, local);
#pragma omp critical
      {
        if (better(local, best)) best = local;
      }
    }
    return best;
  }
#endif
  std::vector<int> pick(static_cast<size_t>(nv)), dims(static_cast<size_t>(nv));
  for (std::uint64_t t = 0; t < ctx.total; ++t) body(t, pick, dims, best);
  return best;
}

Verdict verdict_from_max(const FFContext& ctx, const ThetaFunctional& tf,
                         const ScanBest& best, Completeness tag) {
  Verdict v;
  v.completeness = tag;
  if (!best.found || best.num < 0) {
    v.kind = Stability::Stable;
    v.witness_theta = Rat(0);
    return v;
  }
  v.kind = best.num == 0 ? Stability::StrictlySemistable : Stability::Unstable;
  v.witness_theta = tf.as_rat(best.num);
  std::vector<int> pick(ctx.radix.size());
  ctx.decode(best.index, pick);
  v.witness = ctx.subrep_of(pick);
  return v;
}

// ---------------------------------------------------------------------------
// Field-generic helpers (lattice and randomized modes, closures).
// ---------------------------------------------------------------------------

template <class F>
std::vector<Mat<typename F::Elem>> rep_mats(const F& f, const QuiverRep& rep);

template <>
std::vector<Mat<Rat>> rep_mats<RatField>(const RatField&, const QuiverRep& rep) {
  return rep.mats;
}
template <>
std::vector<Mat<std::int64_t>> rep_mats<PrimeField>(const PrimeField& f,
                                                    const QuiverRep& rep) {
  std::vector<Mat<std::int64_t>> out;
  for (size_t k = 0; k < rep.mats.size(); ++k) out.push_back(to_ff(f, rep.mats[k]));
  return out;
}

Mat<Rat> lift_any(const Mat<Rat>& m) { return m; }
Mat<Rat> lift_any(const Mat<std::int64_t>& m) { return lift_ff(m); }

template <class F>
std::vector<Subspace<typename F::Elem>> closure_from(
    const F& f, const Quiver& q,
    const std::vector<Mat<typename F::Elem>>& mats,
    std::vector<Subspace<typename F::Elem>> start) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      auto& ut = start[static_cast<size_t>(a.tail - 1)];
      auto& uh = start[static_cast<size_t>(a.head - 1)];
      auto img = map_subspace(f, mats[k], ut);
      if (!subspace_leq(f, img, uh)) {
        uh = subspace_sum(f, uh, img);
        changed = true;
      }
    }
  }
  return start;
}

template <class F>
SubRep subrep_from(const std::vector<Subspace<typename F::Elem>>& spaces) {
  SubRep s;
  for (const auto& u : spaces) s.basis.push_back(lift_any(u.basis));
  return s;
}

// Candidate subspace lattice: kernels and images of all directed path maps,
// closed under sum, intersection and arrow images.
template <class F>
std::vector<std::vector<Subspace<typename F::Elem>>> lattice_candidates(
    const F& f, const Quiver& q, const std::vector<int>& dims,
    const std::vector<Mat<typename F::Elem>>& mats, size_t cap_per_vertex) {
  using Sub = Subspace<typename F::Elem>;
  const int n = q.n;
  std::vector<std::vector<Sub>> cand(static_cast<size_t>(n));
  auto add = [&](int vertex, const Sub& u) -> bool {
    auto& list = cand[static_cast<size_t>(vertex - 1)];
    if (std::find(list.begin(), list.end(), u) != list.end()) return false;
    if (list.size() >= cap_per_vertex)
      throw BudgetError("lattice candidate budget exceeded at vertex " +
                        std::to_string(vertex));
    list.push_back(u);
    return true;
  };
  for (int i = 1; i <= n; ++i) {
    add(i, zero_subspace(f, dims[static_cast<size_t>(i - 1)]));
    add(i, full_subspace(f, dims[static_cast<size_t>(i - 1)]));
  }
  // Directed path maps via closure of composition along arrows.
  std::vector<std::vector<std::optional<Mat<typename F::Elem>>>> path(
      static_cast<size_t>(n) + 1,
      std::vector<std::optional<Mat<typename F::Elem>>>(static_cast<size_t>(n) + 1));
  for (int i = 1; i <= n; ++i)
    path[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        mat_identity(f, dims[static_cast<size_t>(i - 1)]);
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      for (int x = 1; x <= n; ++x) {
        auto& via = path[static_cast<size_t>(x)][static_cast<size_t>(a.tail)];
        auto& dst = path[static_cast<size_t>(x)][static_cast<size_t>(a.head)];
        if (via && !dst) {
          dst = mat_mul(f, mats[k], *via);
          grew = true;
        }
      }
    }
  }
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      if (x == y || !path[static_cast<size_t>(x)][static_cast<size_t>(y)]) continue;
      const auto& g = *path[static_cast<size_t>(x)][static_cast<size_t>(y)];
      add(x, {kernel_basis(f, g)});
      add(y, {image_basis(f, g)});
    }
  // Close under sum, intersection, arrow image.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= n; ++i) {
      auto& list = cand[static_cast<size_t>(i - 1)];
      for (size_t s = 0; s < list.size(); ++s)
        for (size_t t = s + 1; t < list.size(); ++t) {
          changed |= add(i, subspace_sum(f, list[s], list[t]));
          changed |= add(i, subspace_intersection(f, list[s], list[t]));
        }
    }
    for (size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      for (size_t s = 0; s < cand[static_cast<size_t>(a.tail - 1)].size(); ++s)
        changed |= add(a.head, map_subspace(f, mats[k],
                                            cand[static_cast<size_t>(a.tail - 1)][s]));
    }
  }
  return cand;
}

template <class F>
Verdict scan_candidate_tuples(const F& f, const QuiverRep& rep,
                              const std::vector<Rat>& b,
                              const std::vector<std::vector<Subspace<typename F::Elem>>>& cand,
                              const std::vector<Mat<typename F::Elem>>& mats,
                              Completeness tag) {
  const int n = rep.quiver.n;
  Verdict v;
  v.completeness = tag;
  v.kind = Stability::Stable;
  v.witness_theta = Rat(0);
  bool found = false;
  Rat best;
  std::vector<size_t> pick(static_cast<size_t>(n), 0);
  while (true) {
    bool trivial = true, full = true, ok = true;
    std::vector<int> tdims(static_cast<size_t>(n));
    for (int i = 0; i < n && ok; ++i) {
      const auto& u = cand[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]];
      tdims[static_cast<size_t>(i)] = u.dim();
      if (u.dim() != 0) trivial = false;
      if (u.dim() != rep.dims[static_cast<size_t>(i)]) full = false;
    }
    if (!trivial && !full) {
      for (size_t k = 0; k < rep.quiver.arrows.size() && ok; ++k) {
        const Arrow& a = rep.quiver.arrows[k];
        ok = subspace_leq(f, map_subspace(f, mats[k],
                                          cand[static_cast<size_t>(a.tail - 1)]
                                              [pick[static_cast<size_t>(a.tail - 1)]]),
                          cand[static_cast<size_t>(a.head - 1)]
                              [pick[static_cast<size_t>(a.head - 1)]]);
      }
      if (ok) {
        Rat th = theta_king(rep.quiver, rep.dims, b, tdims);
        if (!found || th > best) {
          found = true;
          best = th;
          std::vector<Subspace<typename F::Elem>> spaces;
          for (int i = 0; i < n; ++i)
            spaces.push_back(cand[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]);
          v.witness = subrep_from<F>(spaces);
          v.witness_theta = th;
        }
      }
    }
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++pick[static_cast<size_t>(i)] < cand[static_cast<size_t>(i)].size()) break;
      pick[static_cast<size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  if (!found || v.witness_theta < 0) {
    v.kind = Stability::Stable;
    v.witness.reset();
    v.witness_theta = Rat(0);
  } else {
    v.kind = v.witness_theta == 0 ? Stability::StrictlySemistable : Stability::Unstable;
  }
  return v;
}

template <class F>
Verdict randomized_check(const F& f, const QuiverRep& rep, const std::vector<Rat>& b,
                         const ScanOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const int n = rep.quiver.n;
  auto mats = rep_mats<F>(f, rep);
  Verdict v;
  v.completeness = Completeness::Randomized;
  v.kind = Stability::Stable;
  v.witness_theta = Rat(0);
  bool found = false;
  Rat best;
  for (int trial = 0; trial < opts.trials; ++trial) {
    std::vector<Subspace<typename F::Elem>> start;
    for (int i = 0; i < n; ++i) {
      const int d = rep.dims[static_cast<size_t>(i)];
      const int count = static_cast<int>(rng() % static_cast<std::uint64_t>(d + 1));
      Mat<typename F::Elem> rows(count, d, f.zero());
      for (int r = 0; r < count; ++r)
        for (int c = 0; c < d; ++c)
          rows.at(r, c) = f.from_int(static_cast<long long>(rng() % 5) - 2);
      start.push_back(span_rows(f, std::move(rows)));
    }
    auto closed = closure_from(f, rep.quiver, mats, std::move(start));
    std::vector<int> tdims;
    bool trivial = true, full = true;
    for (int i = 0; i < n; ++i) {
      tdims.push_back(closed[static_cast<size_t>(i)].dim());
      if (tdims.back() != 0) trivial = false;
      if (tdims.back() != rep.dims[static_cast<size_t>(i)]) full = false;
    }
    if (trivial || full) continue;
    Rat th = theta_king(rep.quiver, rep.dims, b, tdims);
    if (!found || th > best) {
      found = true;
      best = th;
      v.witness = subrep_from<F>(closed);
      v.witness_theta = th;
    }
  }
  if (!found || v.witness_theta < 0) {
    v.kind = Stability::Stable;
    v.witness.reset();
    v.witness_theta = Rat(0);
  } else {
    v.kind = v.witness_theta == 0 ? Stability::StrictlySemistable : Stability::Unstable;
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p < 2) throw ValidationError("field characteristic must be >= 2");
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw ValidationError("field order must be prime");
  return {Kind::Prime, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
  if (s == "Q") return rationals();
  if (s.size() >= 2 && s[0] == 'F') {
    try {
      return prime(std::stoll(s.substr(1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw ValidationError("unknown field '" + s + "' (use \"Q\" or \"F<p>\")");
}

std::string FieldSpec::name() const {
  return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p);
}

void QuiverRep::validate() const {
  if (static_cast<int>(dims.size()) != quiver.n)
    throw ValidationError("rep: dims size != vertex count");
  for (int d : dims)
    if (d < 0) throw ValidationError("rep: negative dimension");
  if (mats.size() != quiver.arrows.size())
    throw ValidationError("rep: one matrix per arrow required");
  for (size_t k = 0; k < mats.size(); ++k) {
    const Arrow& a = quiver.arrows[k];
    if (!quiver.has_vertex(a.tail) || !quiver.has_vertex(a.head))
      throw ValidationError("rep: arrow endpoint out of range");
    if (mats[k].rows != dims[static_cast<size_t>(a.head - 1)] ||
        mats[k].cols != dims[static_cast<size_t>(a.tail - 1)])
      throw ValidationError("rep: matrix shape mismatch on arrow (" +
                            std::to_string(a.tail) + "," + std::to_string(a.head) +
                            ")");
    if (field.is_prime_field()) {
      for (const Rat& x : mats[k].a)
        if (denominator(x) != 1 || numerator(x) < 0 || numerator(x) >= field.p)
          throw ValidationError("rep: entries must be 0.." +
                                std::to_string(field.p - 1) + " over " + field.name());
    }
  }
}

Mat<std::int64_t> QuiverRep::mat_ff(int arrow_idx) const {
  return to_ff(PrimeField{field.p}, mats[static_cast<size_t>(arrow_idx)]);
}

std::vector<int> SubRep::dims() const {
  std::vector<int> d;
  for (const auto& b : basis) d.push_back(b.rows);
  return d;
}

int SubRep::total_dim() const {
  int t = 0;
  for (const auto& b : basis) t += b.rows;
  return t;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::StrictlySemistable: return "strictly-semistable";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

std::string to_string(Completeness c) {
  switch (c) {
    case Completeness::Exhaustive: return "exhaustive";
    case Completeness::LatticeOnly: return "lattice-only";
    case Completeness::Randomized: return "randomized";
  }
  return "?";
}

Rat theta_king(const Quiver& q, const std::vector<int>& Pbar,
               const std::vector<Rat>& b, const std::vector<int>& sub_dims) {
  if (static_cast<int>(Pbar.size()) != q.n || static_cast<int>(sub_dims.size()) != q.n ||
      b.size() != q.arrows.size())
    throw PreconditionError("theta_king: shape mismatch");
  for (int p : Pbar)
    if (p <= 0) throw PreconditionError("theta_king: Pbar must be positive");
  Rat theta(0);
  for (size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& a = q.arrows[k];
    theta += b[k] * (Rat(sub_dims[static_cast<size_t>(a.tail - 1)]) /
                         Pbar[static_cast<size_t>(a.tail - 1)] -
                     Rat(sub_dims[static_cast<size_t>(a.head - 1)]) /
                         Pbar[static_cast<size_t>(a.head - 1)]);
  }
  return theta;
}

std::vector<Rat> character_exponents(const Quiver& q, const std::vector<int>& Pbar,
                                     const std::vector<Rat>& b) {
  if (static_cast<int>(Pbar.size()) != q.n || b.size() != q.arrows.size())
    throw PreconditionError("character_exponents: shape mismatch");
  for (int p : Pbar)
    if (p <= 0) throw PreconditionError("character_exponents: Pbar must be positive");
  std::vector<Rat> s(static_cast<size_t>(q.n), Rat(0));
  for (size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& a = q.arrows[k];
    s[static_cast<size_t>(a.tail - 1)] += b[k] / Pbar[static_cast<size_t>(a.tail - 1)];
    s[static_cast<size_t>(a.head - 1)] -= b[k] / Pbar[static_cast<size_t>(a.head - 1)];
  }
  return s;
}

SubRep generated_subrep(const QuiverRep& rep,
                        const std::vector<std::vector<std::vector<Rat>>>& seeds) {
  rep.validate();
  if (static_cast<int>(seeds.size()) != rep.quiver.n)
    throw PreconditionError("generated_subrep: one seed list per vertex");
  auto run = [&](auto field) {
    using F = decltype(field);
    auto mats = rep_mats<F>(field, rep);
    std::vector<Subspace<typename F::Elem>> start;
    for (int i = 0; i < rep.quiver.n; ++i) {
      const int d = rep.dims[static_cast<size_t>(i)];
      const auto& vecs = seeds[static_cast<size_t>(i)];
      Mat<typename F::Elem> rows(static_cast<int>(vecs.size()), d, field.zero());
      for (size_t r = 0; r < vecs.size(); ++r) {
        if (static_cast<int>(vecs[r].size()) != d)
          throw PreconditionError("generated_subrep: seed length mismatch at vertex " +
                                  std::to_string(i + 1));
        for (int c = 0; c < d; ++c) {
          const Rat& x = vecs[r][static_cast<size_t>(c)];
          if constexpr (std::is_same_v<F, PrimeField>) {
            if (denominator(x) != 1)
              throw ValidationError("seed entry is not an integer");
            rows.at(static_cast<int>(r), c) =
                field.from_int(to_ll(numerator(x), "seed"));
          } else {
            rows.at(static_cast<int>(r), c) = x;
          }
        }
      }
      start.push_back(span_rows(field, std::move(rows)));
    }
    return subrep_from<F>(closure_from(field, rep.quiver, mats, std::move(start)));
  };
  if (rep.field.is_prime_field()) return run(PrimeField{rep.field.p});
  return run(RatField{});
}

std::uint64_t for_each_subrep_ff(const QuiverRep& rep, std::uint64_t budget,
                                 const std::function<void(const SubRep&)>& fn) {
  rep.validate();
  FFContext ctx = make_ff_context(rep, budget, /*flag_route=*/false);
  std::vector<int> pick(ctx.radix.size());
  std::uint64_t count = 0;
  for (std::uint64_t t = 0; t < ctx.total; ++t) {
    ctx.decode(t, pick);
    if (!ctx.tuple_ok(pick)) continue;
    ++count;
    if (fn) fn(ctx.subrep_of(pick));
  }
  return count;
}

std::vector<SubRep> enumerate_subreps_ff(const QuiverRep& rep, std::uint64_t budget) {
  std::vector<SubRep> out;
  for_each_subrep_ff(rep, budget, [&](const SubRep& s) { out.push_back(s); });
  return out;
}

Verdict check_semistable(const QuiverRep& rep, const std::vector<Rat>& b,
                         CheckMode mode, const ScanOptions& opts) {
  rep.validate();
  if (b.size() != rep.quiver.arrows.size())
    throw PreconditionError("check_semistable: one b per arrow required");
  for (const Rat& x : b)
    if (x <= 0) throw PreconditionError("check_semistable: b must be positive");
  for (int d : rep.dims)
    if (d <= 0) throw PreconditionError("check_semistable: dims must be positive");

  switch (mode) {
    case CheckMode::ExhaustiveFF: {
      FFContext ctx = make_ff_context(rep, opts.budget, /*flag_route=*/false, opts.parallel);
      ThetaFunctional tf = ThetaFunctional::build(rep.quiver, rep.dims, b);
      ScanBest best = scan_max_theta(ctx, tf, opts.parallel);
      return verdict_from_max(ctx, tf, best, Completeness::Exhaustive);
    }
    case CheckMode::Lattice: {
      if (rep.field.is_prime_field()) {
        PrimeField f{rep.field.p};
        auto mats = rep_mats<PrimeField>(f, rep);
        auto cand = lattice_candidates(f, rep.quiver, rep.dims, mats, 128);
        return scan_candidate_tuples(f, rep, b, cand, mats, Completeness::LatticeOnly);
      }
      RatField f;
      auto mats = rep_mats<RatField>(f, rep);
      auto cand = lattice_candidates(f, rep.quiver, rep.dims, mats, 128);
      return scan_candidate_tuples(f, rep, b, cand, mats, Completeness::LatticeOnly);
    }
    case CheckMode::Randomized: {
      if (rep.field.is_prime_field())
        return randomized_check(PrimeField{rep.field.p}, rep, b, opts);
      return randomized_check(RatField{}, rep, b, opts);
    }
  }
  throw PreconditionError("unknown mode");
}

namespace {

// Representation carried by a subrepresentation, in the basis of the given
// subspaces.
QuiverRep sub_as_rep(const QuiverRep& rep, const std::vector<FSub>& spaces,
                     const PrimeField& F) {
  QuiverRep out;
  out.quiver = rep.quiver;
  out.field = rep.field;
  for (const auto& u : spaces) out.dims.push_back(u.dim());
  for (size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
    const Arrow& a = rep.quiver.arrows[k];
    const FSub& ut = spaces[static_cast<size_t>(a.tail - 1)];
    const FSub& uh = spaces[static_cast<size_t>(a.head - 1)];
    const Mat<std::int64_t> f = rep.mat_ff(static_cast<int>(k));
    std::vector<int> hpiv;
    for (int r = 0; r < uh.basis.rows; ++r)
      for (int c = 0; c < uh.basis.cols; ++c)
        if (uh.basis.at(r, c) != 0) { hpiv.push_back(c); break; }
    Mat<std::int64_t> m(uh.dim(), ut.dim(), 0);
    for (int c = 0; c < ut.dim(); ++c) {
      // image of the c-th basis vector of U_t, in U_h coordinates
      std::vector<std::int64_t> v(static_cast<size_t>(f.rows), 0);
      for (int r = 0; r < f.rows; ++r) {
        std::int64_t acc = 0;
        for (int x = 0; x < f.cols; ++x)
          acc = F.add(acc, F.mul(f.at(r, x), ut.basis.at(c, x)));
        v[static_cast<size_t>(r)] = acc;
      }
      for (int r = 0; r < uh.dim(); ++r) m.at(r, c) = v[static_cast<size_t>(hpiv[static_cast<size_t>(r)])];
      // the image must lie in U_h for the coordinates to be meaningful
      for (int r = 0; r < f.rows; ++r) {
        std::int64_t acc = 0;
        for (int t = 0; t < uh.dim(); ++t)
          acc = F.add(acc, F.mul(m.at(t, c), uh.basis.at(t, r)));
        if (acc != v[static_cast<size_t>(r)])
          throw std::logic_error("sub_as_rep: subspace tuple not closed under the maps");
      }
    }
    out.mats.push_back(lift_ff(m));
  }
  return out;
}

QuiverRep quotient_rep(const QuiverRep& rep, const std::vector<FSub>& spaces,
                       const PrimeField& F) {
  QuiverRep out;
  out.quiver = rep.quiver;
  out.field = rep.field;
  // complement coordinates = non-pivot columns of each subspace basis
  std::vector<std::vector<int>> comp_cols(spaces.size());
  for (size_t i = 0; i < spaces.size(); ++i) {
    std::set<int> piv;
    for (int r = 0; r < spaces[i].basis.rows; ++r)
      for (int c = 0; c < spaces[i].basis.cols; ++c)
        if (spaces[i].basis.at(r, c) != 0) { piv.insert(c); break; }
    for (int c = 0; c < rep.dims[i]; ++c)
      if (!piv.count(c)) comp_cols[i].push_back(c);
    out.dims.push_back(static_cast<int>(comp_cols[i].size()));
  }
  auto project = [&](const std::vector<std::int64_t>& vec, size_t i) {
    // reduce modulo the subspace, then read the complement coordinates
    std::vector<std::int64_t> v = vec;
    const Mat<std::int64_t>& B = spaces[i].basis;
    int r = 0;
    for (int c = 0; c < B.cols && r < B.rows; ++c) {
      if (B.at(r, c) == 0) continue;
      const std::int64_t factor = v[static_cast<size_t>(c)];
      if (factor != 0)
        for (int j = 0; j < B.cols; ++j)
          v[static_cast<size_t>(j)] = F.sub(v[static_cast<size_t>(j)], F.mul(factor, B.at(r, j)));
      ++r;
    }
    std::vector<std::int64_t> out_v;
    for (int c : comp_cols[i]) out_v.push_back(v[static_cast<size_t>(c)]);
    return out_v;
  };
  for (size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
    const Arrow& a = rep.quiver.arrows[k];
    const size_t it = static_cast<size_t>(a.tail - 1);
    const size_t ih = static_cast<size_t>(a.head - 1);
    const Mat<std::int64_t> f = rep.mat_ff(static_cast<int>(k));
    Mat<std::int64_t> m(out.dims[ih], out.dims[it], 0);
    for (size_t c = 0; c < comp_cols[it].size(); ++c) {
      std::vector<std::int64_t> v(static_cast<size_t>(f.rows), 0);
      for (int r = 0; r < f.rows; ++r) v[static_cast<size_t>(r)] = f.at(r, comp_cols[it][c]);
      auto pv = project(v, ih);
      for (size_t r = 0; r < pv.size(); ++r) m.at(static_cast<int>(r), static_cast<int>(c)) = pv[r];
    }
    out.mats.push_back(lift_ff(m));
  }
  return out;
}

// Largest theta = 0 nontrivial proper subrep w.r.t. the ambient functional:
// (total dim, dim vector lex, first in enumeration order).
std::optional<std::vector<FSub>> max_zero_subrep(const QuiverRep& rep,
                                                 const ThetaFunctional& tf,
                                                 std::uint64_t budget) {
  FFContext ctx = make_ff_context(rep, budget, /*flag_route=*/false);
  std::vector<int> pick(ctx.radix.size()), dims(ctx.radix.size());
  bool found = false;
  int best_total = -1;
  std::vector<int> best_dims;
  std::vector<int> best_pick;
  for (std::uint64_t t = 0; t < ctx.total; ++t) {
    ctx.decode(t, pick);
    if (ctx.is_zero_tuple(pick) || ctx.is_full_tuple(pick)) continue;
    if (!ctx.tuple_ok(pick)) continue;
    int total = 0;
    for (size_t i = 0; i < pick.size(); ++i) {
      dims[i] = ctx.lists[i][static_cast<size_t>(pick[i])].dim();
      total += dims[i];
    }
    if (tf.eval(dims) != 0) continue;
    if (!found || total > best_total || (total == best_total && dims > best_dims)) {
      found = true;
      best_total = total;
      best_dims = dims;
      best_pick = pick;
    }
  }
  if (!found) return std::nullopt;
  std::vector<FSub> spaces;
  for (size_t i = 0; i < best_pick.size(); ++i)
    spaces.push_back(ctx.lists[i][static_cast<size_t>(best_pick[i])]);
  return spaces;
}

bool is_stable_under(const QuiverRep& rep, const ThetaFunctional& tf,
                     std::uint64_t budget) {
  // theta < 0 on every nontrivial proper subrep, ambient functional.
  FFContext ctx = make_ff_context(rep, budget, /*flag_route=*/false);
  std::vector<int> pick(ctx.radix.size()), dims(ctx.radix.size());
  for (std::uint64_t t = 0; t < ctx.total; ++t) {
    ctx.decode(t, pick);
    if (ctx.is_zero_tuple(pick) || ctx.is_full_tuple(pick)) continue;
    if (!ctx.tuple_ok(pick)) continue;
    for (size_t i = 0; i < pick.size(); ++i)
      dims[i] = ctx.lists[i][static_cast<size_t>(pick[i])].dim();
    if (tf.eval(dims) >= 0) return false;
  }
  return true;
}

}  // namespace

std::vector<QuiverRep> gr_jordan_holder(const QuiverRep& rep,
                                        const std::vector<Rat>& b,
                                        const ScanOptions& opts) {
  rep.validate();
  if (!rep.field.is_prime_field())
    throw PreconditionError("gr_jordan_holder: prime field required");
  Verdict v = check_semistable(rep, b, CheckMode::ExhaustiveFF, opts);
  if (v.kind == Stability::Unstable)
    throw PreconditionError("gr_jordan_holder: representation is unstable");
  const ThetaFunctional tf = ThetaFunctional::build(rep.quiver, rep.dims, b);
  const PrimeField F{rep.field.p};

  std::vector<QuiverRep> factors;
  QuiverRep current = rep;
  while (true) {
    auto sub = max_zero_subrep(current, tf, opts.budget);
    if (!sub) {
      factors.push_back(current);
      break;
    }
    factors.push_back(quotient_rep(current, *sub, F));
    current = sub_as_rep(current, *sub, F);
  }
  for (const QuiverRep& f : factors)
    if (!is_stable_under(f, tf, opts.budget))
      throw PreconditionError("gr_jordan_holder: factor failed stability check");
  return factors;
}

bool are_equivalent(const QuiverRep& r1, const QuiverRep& r2,
                    const ScanOptions& opts) {
  r1.validate();
  r2.validate();
  if (!(r1.quiver.n == r2.quiver.n && r1.quiver.arrows == r2.quiver.arrows))
    throw PreconditionError("are_equivalent: different quivers");
  if (r1.field != r2.field)
    throw PreconditionError("are_equivalent: different fields");
  if (r1.dims != r2.dims) return false;

  auto run = [&](auto field) -> bool {
    using F = decltype(field);
    using E = typename F::Elem;
    auto m1 = rep_mats<F>(field, r1);
    auto m2 = rep_mats<F>(field, r2);
    const int n = r1.quiver.n;
    std::vector<int> offset(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i)
      offset[static_cast<size_t>(i + 1)] =
          offset[static_cast<size_t>(i)] +
          r1.dims[static_cast<size_t>(i)] * r1.dims[static_cast<size_t>(i)];
    const int nvars = offset[static_cast<size_t>(n)];
    int neqs = 0;
    for (size_t k = 0; k < r1.quiver.arrows.size(); ++k)
      neqs += m1[k].rows * m1[k].cols;
    Mat<E> sys(neqs, nvars, field.zero());
    int row = 0;
    for (size_t k = 0; k < r1.quiver.arrows.size(); ++k) {
      const Arrow& a = r1.quiver.arrows[k];
      const int dt = r1.dims[static_cast<size_t>(a.tail - 1)];
      const int dh = r1.dims[static_cast<size_t>(a.head - 1)];
      for (int r = 0; r < dh; ++r)
        for (int c = 0; c < dt; ++c) {
          // psi_h F1 - F2 psi_t = 0 at entry (r, c)
          for (int x = 0; x < dh; ++x)
            sys.at(row, offset[static_cast<size_t>(a.head - 1)] + r * dh + x) =
                field.add(sys.at(row, offset[static_cast<size_t>(a.head - 1)] + r * dh + x),
                          m1[k].at(x, c));
          for (int x = 0; x < dt; ++x)
            sys.at(row, offset[static_cast<size_t>(a.tail - 1)] + x * dt + c) =
                field.sub(sys.at(row, offset[static_cast<size_t>(a.tail - 1)] + x * dt + c),
                          m2[k].at(r, x));
          ++row;
        }
    }
    Mat<E> K = kernel_basis(field, sys);
    const int kdim = K.rows;
    if (kdim == 0) return false;

    long long grid;  // points per coordinate
    if constexpr (std::is_same_v<F, PrimeField>) {
      grid = field.p;
    } else {
      long long deg = 0;
      for (int d : r1.dims) deg += d;
      grid = deg + 1;
    }
    double combos = 1;
    for (int t = 0; t < kdim; ++t) combos *= static_cast<double>(grid);
    if (combos > static_cast<double>(opts.budget))
      throw BudgetError("are_equivalent: solution space too large to search");

    std::vector<long long> coeff(static_cast<size_t>(kdim), 0);
    while (true) {
      bool all_zero = std::all_of(coeff.begin(), coeff.end(),
                                  [](long long c) { return c == 0; });
      if (!all_zero) {
        std::vector<E> x(static_cast<size_t>(nvars), field.zero());
        for (int t = 0; t < kdim; ++t) {
          const E ct = field.from_int(coeff[static_cast<size_t>(t)]);
          if (field.is_zero(ct)) continue;
          for (int c = 0; c < nvars; ++c)
            x[static_cast<size_t>(c)] =
                field.add(x[static_cast<size_t>(c)], field.mul(ct, K.at(t, c)));
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          const int d = r1.dims[static_cast<size_t>(i)];
          Mat<E> psi(d, d, field.zero());
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
              psi.at(r, c) = x[static_cast<size_t>(offset[static_cast<size_t>(i)] + r * d + c)];
          ok = (mat_rank(field, psi) == d);
        }
        if (ok) return true;
      }
      int t = 0;
      for (; t < kdim; ++t) {
        if (++coeff[static_cast<size_t>(t)] < grid) break;
        coeff[static_cast<size_t>(t)] = 0;
      }
      if (t == kdim) break;
    }
    return false;
  };
  if (r1.field.is_prime_field()) return run(PrimeField{r1.field.p});
  return run(RatField{});
}

namespace {

Mat<Rat> hom_to_mat(const HomPoint& f) {
  Mat<Rat> m(f.q(), f.p(), Rat(0));
  for (int j = 1; j <= f.q(); ++j)
    for (int i = 1; i <= f.p(); ++i) m.at(j - 1, i - 1) = f.at(i, j);
  return m;
}

HomPoint mat_to_hom(const Mat<Rat>& m) {
  HomPoint f(m.cols, m.rows);
  for (int j = 1; j <= m.rows; ++j)
    for (int i = 1; i <= m.cols; ++i) f.set(i, j, m.at(j - 1, i - 1));
  return f;
}

}  // namespace

TuplePoint apply_group(const TuplePoint& point, const std::vector<Mat<Rat>>& g) {
  point.validate();
  if (static_cast<int>(g.size()) != point.quiver.n)
    throw PreconditionError("apply_group: one matrix per vertex required");
  RatField F;
  std::vector<Mat<Rat>> ginv;
  for (int i = 0; i < point.quiver.n; ++i) {
    const int d = point.dims[static_cast<size_t>(i)];
    if (g[static_cast<size_t>(i)].rows != d || g[static_cast<size_t>(i)].cols != d)
      throw PreconditionError("apply_group: shape mismatch at vertex " +
                              std::to_string(i + 1));
    auto inv = mat_inverse(F, g[static_cast<size_t>(i)]);
    if (!inv)
      throw PreconditionError("apply_group: singular matrix at vertex " +
                              std::to_string(i + 1));
    ginv.push_back(*inv);
  }
  TuplePoint out = point;
  for (size_t k = 0; k < point.quiver.arrows.size(); ++k) {
    const Arrow& a = point.quiver.arrows[k];
    Mat<Rat> f = hom_to_mat(point.maps[k]);
    Mat<Rat> fp = mat_mul(F, g[static_cast<size_t>(a.head - 1)],
                          mat_mul(F, f, ginv[static_cast<size_t>(a.tail - 1)]));
    out.maps[k] = mat_to_hom(fp);
  }
  return out;
}

QuiverRep transform_rep(const QuiverRep& rep, const std::vector<Mat<Rat>>& g) {
  rep.validate();
  if (static_cast<int>(g.size()) != rep.quiver.n)
    throw PreconditionError("transform_rep: one matrix per vertex required");
  QuiverRep out = rep;
  if (rep.field.is_prime_field()) {
    PrimeField F{rep.field.p};
    std::vector<Mat<std::int64_t>> gf, gfi;
    for (const auto& m : g) {
      gf.push_back(to_ff(F, m));
      auto inv = mat_inverse(F, gf.back());
      if (!inv) throw PreconditionError("transform_rep: singular matrix");
      gfi.push_back(*inv);
    }
    for (size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
      const Arrow& a = rep.quiver.arrows[k];
      out.mats[k] = lift_ff(mat_mul(F, gf[static_cast<size_t>(a.head - 1)],
                                    mat_mul(F, rep.mat_ff(static_cast<int>(k)),
                                            gfi[static_cast<size_t>(a.tail - 1)])));
    }
    return out;
  }
  RatField F;
  std::vector<Mat<Rat>> gi;
  for (const auto& m : g) {
    auto inv = mat_inverse(F, m);
    if (!inv) throw PreconditionError("transform_rep: singular matrix");
    gi.push_back(*inv);
  }
  for (size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
    const Arrow& a = rep.quiver.arrows[k];
    out.mats[k] = mat_mul(F, g[static_cast<size_t>(a.head - 1)],
                          mat_mul(F, rep.mats[k], gi[static_cast<size_t>(a.tail - 1)]));
  }
  return out;
}

Verdict git_check(const QuiverRep& rep, const std::vector<Rat>& b,
                  FlagSource source, const ScanOptions& opts) {
  rep.validate();
  if (b.size() != rep.quiver.arrows.size())
    throw PreconditionError("git_check: one b per arrow required");
  for (int d : rep.dims)
    if (d <= 0) throw PreconditionError("git_check: dims must be positive");

  if (source == FlagSource::ExhaustiveFF) {
    // Flag route: compatibility evaluated on adapted-basis flags; the
    // linearized weight sum_a b_a (j_h/p_h - j_t/p_t) is minus theta.
    FFContext ctx = make_ff_context(rep, opts.budget, /*flag_route=*/true, opts.parallel);
    ThetaFunctional tf = ThetaFunctional::build(rep.quiver, rep.dims, b);
    ScanBest best = scan_max_theta(ctx, tf, opts.parallel);
    return verdict_from_max(ctx, tf, best, Completeness::Exhaustive);
  }
  // Lattice-adapted flags over the representation's own field.
  if (rep.field.is_prime_field()) {
    PrimeField f{rep.field.p};
    auto mats = rep_mats<PrimeField>(f, rep);
    auto cand = lattice_candidates(f, rep.quiver, rep.dims, mats, 128);
    Verdict v = scan_candidate_tuples(f, rep, b, cand, mats, Completeness::LatticeOnly);
    return v;
  }
  RatField f;
  auto mats = rep_mats<RatField>(f, rep);
  auto cand = lattice_candidates(f, rep.quiver, rep.dims, mats, 128);
  return scan_candidate_tuples(f, rep, b, cand, mats, Completeness::LatticeOnly);
}

QuiverRep restrict_rep(const QuiverRep& rep, const SubQuiver& sub) {
  rep.validate();
  QuiverRep out;
  out.field = rep.field;
  std::vector<int> order(sub.vertices);
  std::sort(order.begin(), order.end());
  out.quiver.n = static_cast<int>(order.size());
  auto relabel = [&](int v) {
    auto it = std::lower_bound(order.begin(), order.end(), v);
    if (it == order.end() || *it != v)
      throw PreconditionError("restrict_rep: arrow endpoint outside subquiver");
    return static_cast<int>(it - order.begin()) + 1;
  };
  for (int v : order) out.dims.push_back(rep.dims[static_cast<size_t>(v - 1)]);
  for (const Arrow& a : sub.arrows) {
    const int k = rep.quiver.arrow_index(a);
    if (k < 0) throw PreconditionError("restrict_rep: arrow not in ambient quiver");
    out.quiver.arrows.push_back({relabel(a.tail), relabel(a.head)});
    out.mats.push_back(rep.mats[static_cast<size_t>(k)]);
  }
  return out;
}

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
  a.validate();
  b.validate();
  if (!(a.quiver.n == b.quiver.n && a.quiver.arrows == b.quiver.arrows) ||
      a.field != b.field)
    throw PreconditionError("direct_sum: incompatible representations");
  QuiverRep out;
  out.quiver = a.quiver;
  out.field = a.field;
  for (int i = 0; i < a.quiver.n; ++i)
    out.dims.push_back(a.dims[static_cast<size_t>(i)] + b.dims[static_cast<size_t>(i)]);
  for (size_t k = 0; k < a.quiver.arrows.size(); ++k) {
    const Arrow& ar = a.quiver.arrows[k];
    const int dt = out.dims[static_cast<size_t>(ar.tail - 1)];
    const int dh = out.dims[static_cast<size_t>(ar.head - 1)];
    Mat<Rat> m(dh, dt, Rat(0));
    for (int r = 0; r < a.mats[k].rows; ++r)
      for (int c = 0; c < a.mats[k].cols; ++c) m.at(r, c) = a.mats[k].at(r, c);
    for (int r = 0; r < b.mats[k].rows; ++r)
      for (int c = 0; c < b.mats[k].cols; ++c)
        m.at(a.mats[k].rows + r, a.mats[k].cols + c) = b.mats[k].at(r, c);
    out.mats.push_back(m);
  }
  return out;
}

}  // namespace qstab
