#include "qstab/quiver.hpp"

#include <algorithm>
#include <set>

namespace qstab {

namespace {

void require_vertex(const Quiver& q, int i, const char* what) {
  if (!q.has_vertex(i))
    throw ValidationError(std::string(what) + ": vertex " + std::to_string(i) +
                          " out of range 1.." + std::to_string(q.n));
}

void require_arrows_in_range(const Quiver& q) {
  for (const Arrow& a : q.arrows) {
    require_vertex(q, a.tail, "arrow tail");
    require_vertex(q, a.head, "arrow head");
  }
}

// Connected components of the underlying graph, optionally with one arrow
// removed.  Returns a component id per vertex (index 0 = vertex 1).
std::vector<int> components(const Quiver& q, int skip_arrow = -1) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(q.n) + 1);
  for (size_t k = 0; k < q.arrows.size(); ++k) {
    if (static_cast<int>(k) == skip_arrow) continue;
    adj[static_cast<size_t>(q.arrows[k].tail)].push_back(q.arrows[k].head);
    adj[static_cast<size_t>(q.arrows[k].head)].push_back(q.arrows[k].tail);
  }
  std::vector<int> comp(static_cast<size_t>(q.n) + 1, -1);
  int next = 0;
  for (int s = 1; s <= q.n; ++s) {
    if (comp[static_cast<size_t>(s)] != -1) continue;
    comp[static_cast<size_t>(s)] = next;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<size_t>(v)])
        if (comp[static_cast<size_t>(w)] == -1) {
          comp[static_cast<size_t>(w)] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  comp.erase(comp.begin());
  return comp;
}

}  // namespace

int Quiver::arrow_index(const Arrow& a) const {
  for (size_t k = 0; k < arrows.size(); ++k)
    if (arrows[k] == a) return static_cast<int>(k);
  return -1;
}

std::vector<int> Quiver::incident_arrows(int i) const {
  std::vector<int> out;
  for (size_t k = 0; k < arrows.size(); ++k)
    if (arrows[k].tail == i || arrows[k].head == i)
      out.push_back(static_cast<int>(k));
  return out;
}

TreeVerdict validate_tree(const Quiver& q) {
  if (q.n < 1) return {false, "empty vertex set"};
  require_arrows_in_range(q);
  std::set<std::pair<int, int>> seen;
  for (const Arrow& a : q.arrows)
    if (!seen.insert({a.tail, a.head}).second)
      return {false, "multiple arrow (" + std::to_string(a.tail) + "," +
                         std::to_string(a.head) + ")"};
  if (static_cast<int>(q.arrows.size()) + 1 != q.n)
    return {false, "#V = " + std::to_string(q.n) + " but #A + 1 = " +
                       std::to_string(q.arrows.size() + 1)};
  std::vector<int> comp = components(q);
  for (int c : comp)
    if (c != 0) return {false, "underlying graph disconnected"};
  return {true, "oriented tree"};
}

SubQuiver star(const Quiver& q, int i) {
  require_vertex(q, i, "star");
  require_arrows_in_range(q);
  SubQuiver s;
  std::set<int> verts;
  for (const Arrow& a : q.arrows)
    if (a.tail == i || a.head == i) {
      s.arrows.push_back(a);
      verts.insert(a.tail);
      verts.insert(a.head);
    }
  if (verts.empty()) verts.insert(i);
  s.vertices.assign(verts.begin(), verts.end());
  return s;
}

std::vector<EndInfo> ends_and_boundary(const Quiver& q, const SubQuiver& sub) {
  require_arrows_in_range(q);
  std::set<int> subv(sub.vertices.begin(), sub.vertices.end());
  std::set<std::pair<int, int>> suba;
  for (const Arrow& a : sub.arrows) {
    if (!subv.count(a.tail) || !subv.count(a.head))
      throw ValidationError("not a subquiver: arrow endpoint outside vertex set");
    if (q.arrow_index(a) < 0)
      throw ValidationError("not a subquiver: arrow not in ambient quiver");
    suba.insert({a.tail, a.head});
  }
  for (int v : subv) require_vertex(q, v, "subquiver vertex");

  std::vector<EndInfo> ends;
  for (int v : subv) {
    EndInfo info;
    info.vertex = v;
    bool star_contained = true;
    for (const Arrow& a : q.arrows) {
      if (a.tail != v && a.head != v) continue;
      if (suba.count({a.tail, a.head})) continue;
      star_contained = false;
      if (a.head == v) info.in.push_back(a);
      if (a.tail == v) info.out.push_back(a);
    }
    // Star(v) contains its endpoint vertices too; an arrow of the star that
    // is in sub's arrow set keeps both endpoints in sub by the check above.
    if (!star_contained) ends.push_back(std::move(info));
  }
  return ends;
}

int find_leaf(const Quiver& q) {
  TreeVerdict v = validate_tree(q);
  if (!v.is_tree) throw PreconditionError("find_leaf: not a tree: " + v.diagnostic);
  if (q.n < 2) throw PreconditionError("find_leaf: need at least two vertices");
  for (int i = 1; i <= q.n; ++i)
    if (q.incident_arrows(i).size() == 1) return i;
  throw PreconditionError("find_leaf: no leaf found");  // unreachable on trees
}

std::pair<std::vector<int>, std::vector<int>> split_at_arrow(const Quiver& q,
                                                             const Arrow& a0) {
  const int idx = q.arrow_index(a0);
  if (idx < 0)
    throw ValidationError("split_at_arrow: (" + std::to_string(a0.tail) + "," +
                          std::to_string(a0.head) + ") is not an arrow");
  std::vector<int> comp = components(q, idx);
  std::vector<int> tside, hside;
  const int tc = comp[static_cast<size_t>(a0.tail - 1)];
  for (int i = 1; i <= q.n; ++i) {
    if (comp[static_cast<size_t>(i - 1)] == tc)
      tside.push_back(i);
    else
      hside.push_back(i);
  }
  return {tside, hside};
}

std::vector<RescaleFlag> rescale_vector(const Quiver& q, const Arrow& a0) {
  auto [tside, hside] = split_at_arrow(q, a0);
  std::vector<RescaleFlag> flags(static_cast<size_t>(q.n), RescaleFlag::Unit);
  for (int i : hside) flags[static_cast<size_t>(i - 1)] = RescaleFlag::Z;
  return flags;
}

std::vector<BoundednessMark> boundedness_split(const Quiver& q, int i0) {
  require_vertex(q, i0, "boundedness_split");
  TreeVerdict v = validate_tree(q);
  if (!v.is_tree)
    throw PreconditionError("boundedness_split: not a tree: " + v.diagnostic);
  std::vector<BoundednessMark> marks(static_cast<size_t>(q.n),
                                     BoundednessMark::Full);
  marks[static_cast<size_t>(i0 - 1)] = BoundednessMark::GSlot;
  // The path from i != i0 to i0 ends with the unique arrow at i0 whose far
  // component contains i.
  for (int k : q.incident_arrows(i0)) {
    const Arrow& a = q.arrows[static_cast<size_t>(k)];
    auto [tside, hside] = split_at_arrow(q, a);
    const std::vector<int>& far = (a.head == i0) ? tside : hside;
    if (a.head == i0)
      for (int i : far) marks[static_cast<size_t>(i - 1)] = BoundednessMark::Zero;
  }
  return marks;
}

}  // namespace qstab
