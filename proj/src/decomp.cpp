#include "qstab/decomp.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace qstab {

namespace {

// Distinct ascending values and the 0-based level of each 1-based position.
struct Levels {
  std::vector<Rat> values;
  std::vector<int> of;  // of[i-1] = level of position i

  static Levels build(const WeightVector& w) {
    Levels lv;
    lv.of.resize(static_cast<size_t>(w.dim()));
    for (int i = 0; i < w.dim(); ++i) {
      if (lv.values.empty() || w[i] != lv.values.back()) lv.values.push_back(w[i]);
      lv.of[static_cast<size_t>(i)] = static_cast<int>(lv.values.size()) - 1;
    }
    return lv;
  }

  // Positions are sorted, so the boundary of level e (the unique index with
  // a positive step coefficient) is the largest position at that level.
  int top(int e) const {
    int t = -1;
    for (size_t i = 0; i < of.size(); ++i)
      if (of[i] == e) t = static_cast<int>(i) + 1;
    return t;
  }
};

struct MassItem {
  int index;
  Rat mass;
};

bool kernel_contains_flag(const HomPoint& f, int jt) {
  // V^(jt) in ker f: no support column <= jt.
  for (int j = 1; j <= f.q(); ++j)
    for (int i = 1; i <= jt; ++i)
      if (f.at(i, j) != 0) return false;
  return true;
}

bool image_contained_in_flag(const HomPoint& f, int jh) {
  // Im f in W^(jh): no support row > jh.
  for (int j = jh + 1; j <= f.q(); ++j)
    for (int i = 1; i <= f.p(); ++i)
      if (f.at(i, j) != 0) return false;
  return true;
}

// Rungs of the ladder as level indices, ascending.
struct Rungs {
  std::vector<int> h;  // delta level indices
  std::vector<int> k;  // gamma level indices
};

Rungs build_rungs(const HomPoint& f, const Levels& dl, const Levels& gl) {
  std::set<std::pair<int, int>> G;  // (delta level, gamma level) of support
  for (auto [i, j] : f.support())
    G.insert({dl.of[static_cast<size_t>(i - 1)], gl.of[static_cast<size_t>(j - 1)]});

  std::vector<std::pair<int, int>> desc;
  int ktop = -1;
  for (auto& [e, s] : G) ktop = std::max(ktop, s);
  int hcur = dl.values.size();  // sentinel above everything
  int kcur = ktop;
  while (true) {
    // minimal delta level paired with gamma level kcur
    int hmin = -1;
    for (auto& [e, s] : G)
      if (s == kcur && (hmin < 0 || e < hmin)) hmin = e;
    assert(hmin >= 0);
    desc.emplace_back(hmin, kcur);
    hcur = hmin;
    // largest gamma level among support columns strictly below hcur
    int knext = -1;
    for (auto& [e, s] : G)
      if (e < hcur) knext = std::max(knext, s);
    if (knext < 0) break;  // f vanishes below this delta level
    kcur = knext;
  }
  Rungs r;
  for (auto it = desc.rbegin(); it != desc.rend(); ++it) {
    r.h.push_back(it->first);
    r.k.push_back(it->second);
  }
  return r;
}

// Boundaries (index, mass) of levels in [from, to); mass is the level gap,
// i.e. dim * step coefficient.
std::vector<MassItem> boundaries_in(const Levels& lv, int from, int to) {
  std::vector<MassItem> out;
  for (int e = std::max(from, 0); e < to && e + 1 < static_cast<int>(lv.values.size()); ++e) {
    Rat gap = lv.values[static_cast<size_t>(e + 1)] - lv.values[static_cast<size_t>(e)];
    if (gap > 0) out.push_back({lv.top(e), gap});
  }
  return out;
}

// Pairs masses in increasing index order.  Consumes as much as possible;
// whatever the shorter side leaves behind stays in place.  Every pair formed
// is recorded in eta after the compat check.
void waterfill(std::vector<MassItem>& alist, std::vector<MassItem>& blist,
               std::map<std::pair<int, int>, Rat>& eta,
               const std::function<bool(int, int)>& compat) {
  size_t ai = 0, bi = 0;
  while (ai < alist.size() && bi < blist.size()) {
    if (alist[ai].mass == 0) { ++ai; continue; }
    if (blist[bi].mass == 0) { ++bi; continue; }
    const Rat m = std::min(alist[ai].mass, blist[bi].mass);
    if (compat && !compat(alist[ai].index, blist[bi].index))
      throw PreconditionError("triv1: incompatible pair (" +
                              std::to_string(alist[ai].index) + "," +
                              std::to_string(blist[bi].index) + ")");
    eta[{alist[ai].index, blist[bi].index}] += m;
    alist[ai].mass -= m;
    blist[bi].mass -= m;
  }
}

void drop_spent(std::vector<MassItem>& v) {
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](const MassItem& it) { return it.mass == 0; }),
          v.end());
}

std::vector<int> component_of(const Quiver& q, const std::set<int>& allowed,
                              int start) {
  std::set<int> seen{start};
  std::vector<int> stack{start}, out{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Arrow& a : q.arrows) {
      int w = -1;
      if (a.tail == v) w = a.head;
      if (a.head == v) w = a.tail;
      if (w < 0 || !allowed.count(w) || seen.count(w)) continue;
      seen.insert(w);
      stack.push_back(w);
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Markers markers(const HomPoint& f) {
  const auto sup = f.support();
  if (sup.empty()) throw DegeneratePointError("markers: zero matrix");
  Markers m;
  for (auto [i, j] : sup) m.j0 = std::max(m.j0, j);
  m.i0 = f.p() + 1;
  for (auto [i, j] : sup)
    if (j == m.j0) m.i0 = std::min(m.i0, i);
  m.i0prime = f.p() + 1;
  for (auto [i, j] : sup) m.i0prime = std::min(m.i0prime, i);
  for (auto [i, j] : sup)
    if (i == m.i0prime) m.j0prime = std::max(m.j0prime, j);
  return m;
}

Ladder ladder(const HomPoint& f, const WeightVector& delta,
              const WeightVector& gamma) {
  if (delta.dim() != f.p() || gamma.dim() != f.q())
    throw PreconditionError("ladder: dimension mismatch");
  if (f.is_zero()) throw DegeneratePointError("ladder: zero matrix");
  const Levels dl = Levels::build(delta);
  const Levels gl = Levels::build(gamma);
  const Rungs r = build_rungs(f, dl, gl);

  Ladder lad;
  for (size_t t = 0; t < r.h.size(); ++t) {
    lad.h_levels.push_back(dl.values[static_cast<size_t>(r.h[t])]);
    lad.k_levels.push_back(gl.values[static_cast<size_t>(r.k[t])]);
  }
  lad.star = 0;
  for (size_t t = 1; t < lad.h_levels.size(); ++t) {
    Rat cur = lad.k_levels[t] - lad.h_levels[t];
    Rat best = lad.k_levels[static_cast<size_t>(lad.star)] -
               lad.h_levels[static_cast<size_t>(lad.star)];
    if (cur >= best) lad.star = static_cast<int>(t);  // ties: topmost rung
  }
  return lad;
}

Triv1Result triv1_split(int p, const std::map<int, Rat>& alpha, int q,
                        const std::map<int, Rat>& beta,
                        const std::function<bool(int, int)>& compat) {
  if (p < 1 || q < 1) throw ValidationError("triv1: dimensions must be positive");
  std::vector<MassItem> alist, blist;
  for (auto& [i, a] : alpha) {
    if (i < 1 || i > p - 1) throw ValidationError("triv1: alpha index out of range");
    if (a < 0) throw ValidationError("triv1: negative alpha");
    if (a > 0) alist.push_back({i, a * p});
  }
  for (auto& [j, b] : beta) {
    if (j < 1 || j > q - 1) throw ValidationError("triv1: beta index out of range");
    if (b < 0) throw ValidationError("triv1: negative beta");
    if (b > 0) blist.push_back({j, b * q});
  }
  Triv1Result res;
  waterfill(alist, blist, res.eta, compat);
  for (auto& it : alist)
    if (it.mass > 0) res.alpha_left[it.index] = it.mass / p;
  for (auto& it : blist)
    if (it.mass > 0) res.beta_left[it.index] = it.mass / q;
  return res;
}

PairDecomposition decompose_pair(const HomPoint& f, const WeightVector& delta,
                                 const WeightVector& gamma) {
  if (delta.dim() != f.p() || gamma.dim() != f.q())
    throw PreconditionError("decompose_pair: dimension mismatch");
  if (f.is_zero()) throw DegeneratePointError("decompose_pair: zero matrix");

  const int p = f.p();
  const int q = f.q();
  const Levels dl = Levels::build(delta);
  const Levels gl = Levels::build(gamma);
  const Rungs rungs = build_rungs(f, dl, gl);
  const int L = static_cast<int>(rungs.h.size());

  int star = 0;
  for (int t = 1; t < L; ++t) {
    Rat cur = gl.values[static_cast<size_t>(rungs.k[static_cast<size_t>(t)])] -
              dl.values[static_cast<size_t>(rungs.h[static_cast<size_t>(t)])];
    Rat best = gl.values[static_cast<size_t>(rungs.k[static_cast<size_t>(star)])] -
               dl.values[static_cast<size_t>(rungs.h[static_cast<size_t>(star)])];
    if (cur >= best) star = t;
  }

  PairDecomposition pd;
  pd.p = p;
  pd.q = q;

  // Witness: smallest support entry on the star rung levels.
  pd.witness = {p + 1, q + 1};
  for (auto [i, j] : f.support()) {
    if (dl.of[static_cast<size_t>(i - 1)] != rungs.h[static_cast<size_t>(star)] ||
        gl.of[static_cast<size_t>(j - 1)] != rungs.k[static_cast<size_t>(star)])
      continue;
    if (std::pair<int, int>{i, j} < pd.witness) pd.witness = {i, j};
  }
  assert(pd.witness.first <= p);

  const auto compat = [&f](int i, int j) { return flag_compatible(f, i, j); };
  const int sentinel_d = static_cast<int>(dl.values.size());
  const int sentinel_g = static_cast<int>(gl.values.size());

  // Forward: climb from the star rung, pairing each delta level band
  // against the gamma band one rung lower, carrying delta leftovers up.
  std::vector<MassItem> carry_a;
  for (int stage = star; stage + 1 < L; ++stage) {
    auto newa = boundaries_in(dl, rungs.h[static_cast<size_t>(stage)],
                              rungs.h[static_cast<size_t>(stage + 1)]);
    carry_a.insert(carry_a.end(), newa.begin(), newa.end());
    auto newb = boundaries_in(gl, rungs.k[static_cast<size_t>(stage)],
                              rungs.k[static_cast<size_t>(stage + 1)]);
    waterfill(carry_a, newb, pd.paired, compat);
    drop_spent(carry_a);
    drop_spent(newb);
    assert(newb.empty());  // cumulative delta mass dominates, by the ladder
  }
  {
    auto resta = boundaries_in(dl, rungs.h[static_cast<size_t>(L - 1)], sentinel_d);
    carry_a.insert(carry_a.end(), resta.begin(), resta.end());
    for (auto& it : carry_a) pd.pure_alpha[it.index] += it.mass / p;
    for (auto& it : boundaries_in(gl, rungs.k[static_cast<size_t>(L - 1)], sentinel_g))
      pd.pure_beta[it.index] += it.mass / q;
  }

  // Backward: descend from the star rung with Triv1 ii), all delta mass of
  // each band absorbed, gamma leftovers carried down and left pure at the
  // bottom.
  std::vector<MassItem> carry_b;
  for (int stage = star - 1; stage >= 0; --stage) {
    auto newb = boundaries_in(gl, rungs.k[static_cast<size_t>(stage)],
                              rungs.k[static_cast<size_t>(stage + 1)]);
    carry_b.insert(carry_b.begin(), newb.begin(), newb.end());
    auto newa = boundaries_in(dl, rungs.h[static_cast<size_t>(stage)],
                              rungs.h[static_cast<size_t>(stage + 1)]);
    waterfill(newa, carry_b, pd.paired, compat);
    drop_spent(carry_b);
    drop_spent(newa);
    assert(newa.empty());  // cumulative gamma mass dominates below the star
  }
  {
    for (auto& it : carry_b) pd.pure_beta[it.index] += it.mass / q;
    for (auto& it : boundaries_in(gl, 0, rungs.k[0]))
      pd.pure_beta[it.index] += it.mass / q;
    for (auto& it : boundaries_in(dl, 0, rungs.h[0]))
      pd.pure_alpha[it.index] += it.mass / p;
  }
  return pd;
}

bool is_basic(const MultiIndex& mi, const TuplePoint& point) {
  point.validate();
  mi.validate(point.dims);
  const int n = point.quiver.n;
  std::set<int> nontrivial;
  for (int i = 1; i <= n; ++i) {
    const int j = mi.j[static_cast<size_t>(i - 1)];
    if (j > 0 && j < point.dims[static_cast<size_t>(i - 1)]) nontrivial.insert(i);
  }
  if (nontrivial.empty()) return false;  // trivial subgroup

  // (1) connected nontrivial support
  std::vector<int> comp = component_of(point.quiver, nontrivial, *nontrivial.begin());
  if (comp.size() != nontrivial.size()) return false;

  for (size_t k = 0; k < point.quiver.arrows.size(); ++k) {
    const Arrow& a = point.quiver.arrows[k];
    const HomPoint& f = point.maps[k];
    const int jt = mi.j[static_cast<size_t>(a.tail - 1)];
    const int jh = mi.j[static_cast<size_t>(a.head - 1)];
    // (2) compatibility on every arrow
    if (!flag_compatible(f, jt, jh)) return false;
    // (3) kernel/image conditions
    const bool kernel_ok = !kernel_contains_flag(f, jt);    // V^(jt) not in ker
    const bool image_ok = !image_contained_in_flag(f, jh);  // W^(jh) not over Im
    if (nontrivial.count(a.tail) && nontrivial.count(a.head)) {
      if (!kernel_ok || !image_ok) return false;
    } else {
      if (!kernel_ok && !image_ok) return false;
    }
  }
  return true;
}

std::map<std::pair<int, int>, Rat> pair_mass_view(const PairDecomposition& pd) {
  std::map<std::pair<int, int>, Rat> m;
  for (auto& [ij, e] : pd.paired)
    if (e != 0) m[ij] += e;
  for (auto& [i, a] : pd.pure_alpha)
    if (a != 0) m[{i, 0}] += a * pd.p;
  for (auto& [j, b] : pd.pure_beta)
    if (b != 0) m[{0, j}] += b * pd.q;
  return m;
}

std::map<std::pair<int, int>, Rat> arrow_marginal(const TreeDecomposition& td,
                                                  const Quiver& q,
                                                  int arrow_idx) {
  const Arrow& a = q.arrows[static_cast<size_t>(arrow_idx)];
  const int pt = td.dims[static_cast<size_t>(a.tail - 1)];
  const int ph = td.dims[static_cast<size_t>(a.head - 1)];
  std::map<std::pair<int, int>, Rat> m;
  for (auto& [j, mass] : td.eta) {
    int x = j[static_cast<size_t>(a.tail - 1)];
    int y = j[static_cast<size_t>(a.head - 1)];
    if (x == pt) x = 0;
    if (y == ph) y = 0;
    m[{x, y}] += mass;
  }
  return m;
}

TreeDecomposition couple_tree(const Quiver& q, const std::vector<int>& dims,
                              const std::vector<PairDecomposition>& per_arrow) {
  TreeVerdict tv = validate_tree(q);
  if (!tv.is_tree) throw PreconditionError("couple_tree: not a tree: " + tv.diagnostic);
  if (q.arrows.empty())
    throw PreconditionError("couple_tree: tree must have at least one arrow");
  if (static_cast<int>(dims.size()) != q.n || per_arrow.size() != q.arrows.size())
    throw PreconditionError("couple_tree: shape mismatch");
  for (size_t k = 0; k < per_arrow.size(); ++k) {
    const Arrow& a = q.arrows[k];
    if (per_arrow[k].p != dims[static_cast<size_t>(a.tail - 1)] ||
        per_arrow[k].q != dims[static_cast<size_t>(a.head - 1)])
      throw PreconditionError("couple_tree: decomposition dims mismatch on arrow (" +
                              std::to_string(a.tail) + "," + std::to_string(a.head) + ")");
  }

  // Per-arrow mass views and per-vertex step-mass marginals.
  std::vector<std::map<std::pair<int, int>, Rat>> mass(per_arrow.size());
  for (size_t k = 0; k < per_arrow.size(); ++k) mass[k] = pair_mass_view(per_arrow[k]);

  auto side_marginal = [&](size_t k, bool tail_side) {
    std::map<int, Rat> m;
    for (auto& [xy, v] : mass[k]) {
      const int s = tail_side ? xy.first : xy.second;
      if (s != 0) m[s] += v;
    }
    return m;
  };

  std::vector<std::map<int, Rat>> vertex_mass(static_cast<size_t>(q.n));
  std::vector<bool> vertex_seen(static_cast<size_t>(q.n), false);
  for (size_t k = 0; k < per_arrow.size(); ++k) {
    const Arrow& a = q.arrows[k];
    for (bool tail_side : {true, false}) {
      const int v = tail_side ? a.tail : a.head;
      auto m = side_marginal(k, tail_side);
      if (!vertex_seen[static_cast<size_t>(v - 1)]) {
        vertex_mass[static_cast<size_t>(v - 1)] = std::move(m);
        vertex_seen[static_cast<size_t>(v - 1)] = true;
      } else if (vertex_mass[static_cast<size_t>(v - 1)] != m) {
        throw PreconditionError("couple_tree: inconsistent marginals at vertex " +
                                std::to_string(v));
      }
    }
  }

  // Common total mass; arrows below it get a fully-trivial padding atom.
  Rat total(0);
  std::vector<Rat> arrow_total(per_arrow.size(), Rat(0));
  for (size_t k = 0; k < per_arrow.size(); ++k) {
    for (auto& [xy, v] : mass[k]) arrow_total[k] += v;
    total = std::max(total, arrow_total[k]);
  }
  for (size_t k = 0; k < per_arrow.size(); ++k)
    if (arrow_total[k] < total) mass[k][{0, 0}] += total - arrow_total[k];

  auto vmass = [&](int v, int value) -> Rat {
    if (value != 0) {
      auto it = vertex_mass[static_cast<size_t>(v - 1)].find(value);
      return it == vertex_mass[static_cast<size_t>(v - 1)].end() ? Rat(0) : it->second;
    }
    Rat nontriv(0);
    for (auto& [s, m] : vertex_mass[static_cast<size_t>(v - 1)]) nontriv += m;
    return total - nontriv;
  };

  // Breadth-first chain of conditionals from the canonical leaf.
  const int root = find_leaf(q);
  std::vector<bool> visited(static_cast<size_t>(q.n) + 1, false);
  visited[static_cast<size_t>(root)] = true;
  std::deque<int> queue{root};
  struct Step { size_t arrow; int from; int to; };
  std::vector<Step> plan;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      int w = -1;
      if (a.tail == u && !visited[static_cast<size_t>(a.head)]) w = a.head;
      if (a.head == u && !visited[static_cast<size_t>(a.tail)]) w = a.tail;
      if (w < 0) continue;
      visited[static_cast<size_t>(w)] = true;
      plan.push_back({k, u, w});
      queue.push_back(w);
    }
  }

  std::vector<std::pair<std::vector<int>, Rat>> elems;
  {
    std::vector<int> base(static_cast<size_t>(q.n), 0);
    for (int v = 0; v < dims[static_cast<size_t>(root - 1)]; ++v) {
      Rat m = vmass(root, v);
      if (m == 0) continue;
      std::vector<int> e = base;
      e[static_cast<size_t>(root - 1)] = v;
      elems.emplace_back(std::move(e), std::move(m));
    }
  }
  for (const Step& st : plan) {
    const Arrow& a = q.arrows[st.arrow];
    const bool from_is_tail = (a.tail == st.from);
    std::vector<std::pair<std::vector<int>, Rat>> next;
    for (auto& [e, m] : elems) {
      const int x = e[static_cast<size_t>(st.from - 1)];
      const Rat mx = vmass(st.from, x);
      for (auto& [xy, joint] : mass[st.arrow]) {
        const int xs = from_is_tail ? xy.first : xy.second;
        const int ys = from_is_tail ? xy.second : xy.first;
        if (xs != x || joint == 0) continue;
        std::vector<int> e2 = e;
        e2[static_cast<size_t>(st.to - 1)] = ys;
        next.emplace_back(std::move(e2), m * joint / mx);
      }
    }
    elems = std::move(next);
  }

  TreeDecomposition td;
  td.dims = dims;
  for (auto& [e, m] : elems)
    if (m != 0) td.eta[e] += m;
  return td;
}

TreeDecomposition normalize_components(const TreeDecomposition& td,
                                       const TuplePoint& point) {
  point.validate();
  TreeDecomposition out;
  out.dims = td.dims;
  const Quiver& q = point.quiver;
  const int n = q.n;

  for (auto& [e, coeff] : td.eta) {
    std::set<int> nontrivial;
    for (int i = 1; i <= n; ++i) {
      const int j = e[static_cast<size_t>(i - 1)];
      if (j > 0 && j < td.dims[static_cast<size_t>(i - 1)]) nontrivial.insert(i);
    }
    if (nontrivial.empty()) continue;  // trivial subgroup, dropped

    MultiIndex mi{e};
    if (is_basic(mi, point)) {
      out.eta[e] += coeff;
      continue;
    }

    // Component restrictions with trivial labels propagated outward so every
    // restriction is compatible and weight-exact on every arrow.
    std::set<int> remaining = nontrivial;
    while (!remaining.empty()) {
      std::vector<int> comp = component_of(q, nontrivial, *remaining.begin());
      for (int v : comp) remaining.erase(v);

      std::vector<int> labeled(static_cast<size_t>(n), -1);
      for (int v : comp) labeled[static_cast<size_t>(v - 1)] = e[static_cast<size_t>(v - 1)];
      bool progress = true;
      while (progress) {
        progress = false;
        for (size_t k = 0; k < q.arrows.size(); ++k) {
          const Arrow& a = q.arrows[k];
          const HomPoint& f = point.maps[k];
          const int pt = point.dims[static_cast<size_t>(a.tail - 1)];
          const int ph = point.dims[static_cast<size_t>(a.head - 1)];
          int& lt = labeled[static_cast<size_t>(a.tail - 1)];
          int& lh = labeled[static_cast<size_t>(a.head - 1)];
          if (lt >= 0 && lh < 0) {
            if (lt > 0 && lt < pt)
              lh = kernel_contains_flag(f, lt) ? 0 : ph;
            else
              lh = (lt == 0) ? 0 : ph;
            progress = true;
          } else if (lh >= 0 && lt < 0) {
            if (lh > 0 && lh < ph)
              lt = image_contained_in_flag(f, lh) ? pt : 0;
            else
              lt = (lh == 0) ? 0 : pt;
            progress = true;
          }
        }
      }
      out.eta[labeled] += coeff;
    }
  }
  return out;
}

}  // namespace qstab
