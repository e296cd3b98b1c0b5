#ifndef QSTAB_QUIVER_HPP
#define QSTAB_QUIVER_HPP

#include <string>
#include <utility>
#include <vector>

#include "qstab/rational.hpp"

namespace qstab {

// Arrows are identified by their (tail, head) pair; quivers here never have
// multiple arrows, so the pair is a valid identity.
struct Arrow {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// Oriented graph with vertices labeled 1..n.
struct Quiver {
  int n = 0;
  std::vector<Arrow> arrows;

  bool has_vertex(int i) const { return i >= 1 && i <= n; }
  int arrow_index(const Arrow& a) const;  // -1 when absent
  std::vector<int> incident_arrows(int i) const;  // indices into arrows
};

struct SubQuiver {
  std::vector<int> vertices;  // sorted
  std::vector<Arrow> arrows;
};

struct TreeVerdict {
  bool is_tree = false;
  std::string diagnostic;
};

// True iff the underlying graph is connected, there are no multiple arrows
// and #V = #A + 1.
TreeVerdict validate_tree(const Quiver& q);

// Subquiver of all arrows with head or tail i, plus their endpoints.
SubQuiver star(const Quiver& q, int i);

struct EndInfo {
  int vertex = 0;
  std::vector<Arrow> in;   // arrows of Star(vertex) outside sub with head = vertex
  std::vector<Arrow> out;  // likewise with tail = vertex
};

// END_Q(sub) together with the per-end In/Out arrow sets.
std::vector<EndInfo> ends_and_boundary(const Quiver& q, const SubQuiver& sub);

// Smallest vertex whose star has exactly one arrow.  Requires a tree with
// n >= 2.
int find_leaf(const Quiver& q);

// Vertex sets of the two components obtained by removing a0: first the one
// containing t(a0), then the one containing h(a0).
std::pair<std::vector<int>, std::vector<int>> split_at_arrow(const Quiver& q,
                                                             const Arrow& a0);

enum class RescaleFlag { Unit, Z };

// Diagonal group element (z_1 id, ..., z_n id) multiplying f_{a0} by z and
// fixing every other arrow map: z on the h(a0)-side component, 1 elsewhere.
// Index 0 of the result corresponds to vertex 1.
std::vector<RescaleFlag> rescale_vector(const Quiver& q, const Arrow& a0);

enum class BoundednessMark { Zero, Full, GSlot };

// Subrepresentation shape used for boundedness bounds at i0: a vertex i is
// Zero iff the unique path from i to i0 enters i0 through an ingoing arrow
// of i0, Full otherwise; i0 itself is the G slot.
std::vector<BoundednessMark> boundedness_split(const Quiver& q, int i0);

}  // namespace qstab

#endif
