#ifndef QSTAB_DECOMP_HPP
#define QSTAB_DECOMP_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qstab/weights.hpp"

namespace qstab {

// Flag markers of a nonzero Hom point (1-based indices):
//   j0  = min { j : Im f in W^(j) }          = largest support row
//   i0  = min { i : f(V^(i)) not in W^(j0-1) }
//   i0p = min { i : V^(i) not in ker f }     = smallest support column
//   j0p = min { j : f(V^(i0p)) in W^(j) }
// j0p is never used by the decomposition statement; it is kept for
// completeness of the marker set.
struct Markers {
  int i0 = 0;
  int j0 = 0;
  int i0prime = 0;
  int j0prime = 0;
};

Markers markers(const HomPoint& f);

// The rung ladder extracted from the eigenlevel structure of (f, delta,
// gamma): delta levels h_1 < ... < h_l and gamma levels k_1 < ... < k_l with
//   f(V^(<h_1)) = 0,  f(V^(<h_i)) in W^(<=k_{i-1}),  f(V) in W^(<=k_l),
// and star the rung maximizing -h + k (ties: topmost rung).
struct Ladder {
  std::vector<Rat> h_levels;
  std::vector<Rat> k_levels;
  int star = 0;  // 0-based rung index
  Rat star_value() const {
    return k_levels[static_cast<size_t>(star)] -
           h_levels[static_cast<size_t>(star)];
  }
};

Ladder ladder(const HomPoint& f, const WeightVector& delta,
              const WeightVector& gamma);

// Decomposition of (delta, gamma) into step vectors and paired normalized
// step vectors.  Pure coefficients multiply raw step vectors delta^(i) /
// gamma^(j); paired coefficients eta multiply ((1/p)delta^(i),
// (1/q)gamma^(j)) and are therefore mass units.
struct PairDecomposition {
  int p = 0;
  int q = 0;
  std::map<int, Rat> pure_alpha;                  // i -> coefficient
  std::map<int, Rat> pure_beta;                   // j -> coefficient
  std::map<std::pair<int, int>, Rat> paired;      // (i, j) -> eta
  std::pair<int, int> witness{0, 0};              // (i*, j*), f_{i*,j*} != 0
};

// Water-filling split of pure step expansions against each other, pairing
// masses p*alpha_i with q*beta_j in increasing index order.  The compat
// predicate is checked on every pair actually formed.
struct Triv1Result {
  std::map<int, Rat> alpha_left;
  std::map<int, Rat> beta_left;
  std::map<std::pair<int, int>, Rat> eta;
};

Triv1Result triv1_split(int p, const std::map<int, Rat>& alpha, int q,
                        const std::map<int, Rat>& beta,
                        const std::function<bool(int, int)>& compat);

// The constructive decomposition: reconstructs (delta, gamma) exactly with
// nonnegative coefficients, support bounded by the markers, every paired
// index compatible, and mu additive along the pieces with the witness
// eigencoordinate attaining mu for the original and every nonzero piece.
PairDecomposition decompose_pair(const HomPoint& f, const WeightVector& delta,
                                 const WeightVector& gamma);

// A multi-index weight vector gamma^j is basic w.r.t. the tuple point when
// (1) the full subquiver on its nontrivial vertices is connected, (2) the
// flags are compatible with every arrow map, and (3) the kernel/image
// conditions hold: both on arrows between nontrivial vertices, at least one
// on the others (that is what makes the closed-form weight exact).  The
// all-trivial index is not basic.
bool is_basic(const MultiIndex& j, const TuplePoint& point);

// Joint coefficients on multi-indices; trivial vertices are encoded as 0 by
// couple_tree and may be re-labeled 0 or p_i by normalize_components.
struct TreeDecomposition {
  std::vector<int> dims;
  std::map<std::vector<int>, Rat> eta;  // multi-index (0-based vertex order) -> mass
};

// Couples per-arrow pair decompositions along the tree into a joint
// decomposition whose per-arrow pairwise marginals reproduce the inputs
// (with 0 and p_i both read as the trivial state).  Requires consistent
// vertex marginals across incident arrows.
TreeDecomposition couple_tree(const Quiver& q,
                              const std::vector<int>& dims,
                              const std::vector<PairDecomposition>& per_arrow);

// Splits every support index with disconnected nontrivial vertex set into
// its per-component restrictions and re-labels trivial vertices (0 vs p_i)
// so that each resulting index is basic; drops all-trivial indices.
// Marginals and all per-arrow weights are preserved exactly.
TreeDecomposition normalize_components(const TreeDecomposition& td,
                                       const TuplePoint& point);

// Per-arrow pairwise marginal of a tree decomposition, with 0 and p both
// projected to the trivial state 0.  Keys are (j_tail, j_head).
std::map<std::pair<int, int>, Rat> arrow_marginal(const TreeDecomposition& td,
                                                  const Quiver& q,
                                                  int arrow_idx);

// The same projection applied to a pair decomposition: paired etas plus the
// pure masses placed at (i, 0) resp. (0, j).
std::map<std::pair<int, int>, Rat> pair_mass_view(const PairDecomposition& pd);

}  // namespace qstab

#endif
