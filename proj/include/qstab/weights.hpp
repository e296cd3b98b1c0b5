#ifndef QSTAB_WEIGHTS_HPP
#define QSTAB_WEIGHTS_HPP

#include <optional>
#include <vector>

#include "qstab/quiver.hpp"
#include "qstab/rational.hpp"

namespace qstab {

// Ascending weight vector summing to zero.  Entries may be rational: formal
// one-parameter subgroups are first class, integrality is never required.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<Rat> ascending_sum_zero);

  static WeightVector trivial(int p);
  // (j-p,...,j-p, j,...,j) with j-p occurring j times; j = 0 and j = p give
  // the trivial vector.
  static WeightVector step(int p, int j);

  int dim() const { return static_cast<int>(entries_.size()); }
  const Rat& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }  // 0-based
  const std::vector<Rat>& entries() const { return entries_; }
  bool is_trivial() const;

  WeightVector scaled(const Rat& c) const;           // c >= 0 keeps order
  WeightVector plus(const WeightVector& o) const;    // entrywise; must stay sorted

 private:
  std::vector<Rat> entries_;
};

// Coefficients of the expansion of a sorted sum-zero vector in step vectors:
// c_j = (gamma_{j+1} - gamma_j)/p, j = 1..p-1 (returned 0-indexed at j-1).
std::vector<Rat> step_decompose(const WeightVector& gamma);

// Point of P(Hom(V,W)^v): entry (i,j) is the coefficient of v_i^v (x) w_j,
// i.e. column i, row j of the q x p matrix mapping V -> W.
class HomPoint {
 public:
  HomPoint() = default;
  HomPoint(int p, int q);  // zero matrix of source dim p, target dim q

  static HomPoint from_rows(const std::vector<std::vector<Rat>>& rows);

  int p() const { return p_; }
  int q() const { return q_; }
  const Rat& at(int i, int j) const;  // 1-based: source column i, target row j
  void set(int i, int j, Rat value);
  bool is_zero() const;
  // Support as (i, j) pairs, row-major in j then i.
  std::vector<std::pair<int, int>> support() const;

 private:
  int p_ = 0, q_ = 0;
  std::vector<Rat> m_;  // row-major, rows = target index j
};

// mu([f], (kappa, lambda)) = max over the support {(i,j) : f_{i,j} != 0} of
// gamma_j - delta_i.  This closed form is pinned by the limit-fibre
// convention: it reproduces both branches of the step-vector weight lemma
// and the non-additivity triple (0, 0, -3).
Rat mu_hom(const HomPoint& f, const WeightVector& delta,
           const WeightVector& gamma);

// One arrow map per quiver arrow; dims gives p_i per vertex.
struct TuplePoint {
  Quiver quiver;
  std::vector<int> dims;          // index 0 = vertex 1
  std::vector<HomPoint> maps;     // parallel to quiver.arrows

  void validate() const;          // shape compatibility + nonzero maps
  const HomPoint& map_of(int arrow_idx) const {
    return maps[static_cast<size_t>(arrow_idx)];
  }
};

struct MultiIndex {
  std::vector<int> j;  // j[i] in 0..p_{i+1}

  void validate(const std::vector<int>& dims) const;
};

// Abstract projective factor P(W^v): one row per eigencoordinate of the
// group action, giving the weight as a linear functional of the vertex
// weight vector plus the flag whether the point's coordinate is nonzero.
// The same max-over-nonvanishing-coordinates convention as mu_hom applies.
struct FactorTable {
  struct Row {
    std::vector<Rat> functional;  // dotted with the weight vector entries
    bool nonzero = false;
  };
  std::vector<Row> rows;
};

Rat factor_mu(const FactorTable& table, const WeightVector& lambda);

// mu(w, lambda) = sum_i l_i mu([w_i], lambda_i) + sum_a b_a mu([f_a], .).
// Factor tables may be omitted at vertices where l_i = 0.
Rat mu_linearized(const TuplePoint& point,
                  const std::vector<std::optional<FactorTable>>& factors,
                  const std::vector<WeightVector>& lambda,
                  const std::vector<Rat>& l, const std::vector<Rat>& b);

struct FlagWeightReport {
  Rat closed_form;  // sum_a b_a (-j_t/p_t + j_h/p_h)
  Rat exact_mu;     // mu of the formal subgroup lambda^j
  bool equal = false;
};

// Requires the flag to be compatible: f_a(V^(j_t)) in V^(j_h) for every
// arrow, where V^(k) is spanned by the first k standard basis vectors.
FlagWeightReport flag_weight(const TuplePoint& point, const MultiIndex& j,
                             const std::vector<Rat>& b);

// Compatibility of the standard flag pair (j_t, j_h) on a single arrow map.
bool flag_compatible(const HomPoint& f, int jt, int jh);

struct AdditivityReport {
  Rat mu_first;
  Rat mu_second;
  Rat mu_product;
  bool additive = false;
};

// mu values of lambda, lambda' and lambda lambda' (entrywise weight sums);
// the sums must remain sorted.  Subadditivity always holds, additivity can
// fail.
AdditivityReport check_additivity(const HomPoint& f, const WeightVector& delta,
                                  const WeightVector& gamma,
                                  const WeightVector& delta2,
                                  const WeightVector& gamma2);

}  // namespace qstab

#endif
