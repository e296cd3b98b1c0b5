#ifndef QSTAB_KINGREP_HPP
#define QSTAB_KINGREP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qstab/linalg.hpp"
#include "qstab/quiver.hpp"
#include "qstab/weights.hpp"

namespace qstab {

struct FieldSpec {
  enum class Kind { Rationals, Prime } kind = Kind::Rationals;
  std::int64_t p = 0;

  static FieldSpec rationals() { return {Kind::Rationals, 0}; }
  static FieldSpec prime(std::int64_t p);
  static FieldSpec parse(const std::string& s);  // "Q", "F2", "F3", ...
  std::string name() const;
  bool is_prime_field() const { return kind == Kind::Prime; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Finite-dimensional representation: one matrix per arrow, shape
// dim_head x dim_tail.  Matrices are stored over Rat; for a prime field the
// entries are the canonical representatives 0..p-1.
struct QuiverRep {
  Quiver quiver;
  FieldSpec field;
  std::vector<int> dims;          // index 0 = vertex 1
  std::vector<Mat<Rat>> mats;     // parallel to quiver.arrows

  void validate() const;
  Mat<std::int64_t> mat_ff(int arrow_idx) const;  // prime-field view
};

// Tuple of subspaces closed under the arrow maps; bases in reduced echelon
// form.
struct SubRep {
  std::vector<Mat<Rat>> basis;  // one row-basis per vertex

  std::vector<int> dims() const;
  int total_dim() const;
};

enum class Stability { Stable, StrictlySemistable, Unstable };
enum class Completeness { Exhaustive, LatticeOnly, Randomized };

struct Verdict {
  Stability kind = Stability::Stable;
  Completeness completeness = Completeness::Exhaustive;
  std::optional<SubRep> witness;  // present for non-stable verdicts
  Rat witness_theta;              // theta of the witness (0 or > 0)
};

std::string to_string(Stability s);
std::string to_string(Completeness c);

enum class CheckMode { ExhaustiveFF, Lattice, Randomized };
enum class FlagSource { ExhaustiveFF, LatticeAdapted };

struct ScanOptions {
  std::uint64_t budget = 4'000'000;  // max number of subspace tuples
  bool parallel = false;             // OpenMP scan; result is identical
  std::uint64_t seed = 1;            // randomized mode only
  int trials = 256;                  // randomized mode only
};

// theta(P, b)(sub) = sum_a b_a (dims_t / P(t) - dims_h / P(h)); linear in
// the sub-dimension vector.
Rat theta_king(const Quiver& q, const std::vector<int>& Pbar,
               const std::vector<Rat>& b, const std::vector<int>& sub_dims);

// Exponents s_i of the character det(m_1)^{s_1}...det(m_n)^{s_n} attached
// to (P, b); sum_i s_i P(i) = 0 on trees.
std::vector<Rat> character_exponents(const Quiver& q,
                                     const std::vector<int>& Pbar,
                                     const std::vector<Rat>& b);

// Smallest subrepresentation containing the given per-vertex seed vectors.
SubRep generated_subrep(const QuiverRep& rep,
                        const std::vector<std::vector<std::vector<Rat>>>& seeds);

// Every compatible subspace tuple of a prime-field representation, zero and
// full included, in a fixed deterministic order.  Throws BudgetError when
// the tuple count exceeds the budget.
std::uint64_t for_each_subrep_ff(const QuiverRep& rep, std::uint64_t budget,
                                 const std::function<void(const SubRep&)>& fn);
std::vector<SubRep> enumerate_subreps_ff(const QuiverRep& rep,
                                         std::uint64_t budget = 4'000'000);

// Semistability of rep w.r.t. P = dims and b.  ExhaustiveFF scans every
// subspace tuple (sound and complete); Lattice scans the candidate lattice
// generated by path-map kernels and images (sound, complete only when the
// destabilizer is lattice-realizable); Randomized grows subreps from random
// seeds (sound instability certificates only).
Verdict check_semistable(const QuiverRep& rep, const std::vector<Rat>& b,
                         CheckMode mode, const ScanOptions& opts = {});

// Jordan-Hoelder factors of a semistable prime-field representation w.r.t.
// the ambient theta functional; each factor is verified stable.  Factors are
// listed top quotient first.
std::vector<QuiverRep> gr_jordan_holder(const QuiverRep& rep,
                                        const std::vector<Rat>& b,
                                        const ScanOptions& opts = {});

// Equivalence via an invertible intertwiner tuple, decided exactly on the
// solution space of the intertwiner equations.
bool are_equivalent(const QuiverRep& r1, const QuiverRep& r2,
                    const ScanOptions& opts = {});

// Left action f'_a = g_h f_a g_t^{-1} on a rational tuple point.
TuplePoint apply_group(const TuplePoint& point,
                       const std::vector<Mat<Rat>>& g);

// Same transformation for a representation over its own field.
QuiverRep transform_rep(const QuiverRep& rep, const std::vector<Mat<Rat>>& g);

// GIT-side test: scans compatible adapted-basis flags and evaluates the
// linearized weight sum b_a (j_h/p_h - j_t/p_t); semistable iff it is >= 0
// on every nontrivial proper flag, stable iff > 0.  Agrees with
// check_semistable.
Verdict git_check(const QuiverRep& rep, const std::vector<Rat>& b,
                  FlagSource source, const ScanOptions& opts = {});

// Restriction of a representation to a subquiver, with vertices relabeled
// 1..k in increasing original order.
QuiverRep restrict_rep(const QuiverRep& rep, const SubQuiver& sub);

// Direct sum, vertexwise block diagonal.
QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b);

}  // namespace qstab

#endif
