#ifndef QSTAB_SHEAFCALC_HPP
#define QSTAB_SHEAFCALC_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qstab/polynomial.hpp"
#include "qstab/quiver.hpp"

namespace qstab {

// Numerical data of a tree-quiver sheaf problem: Hilbert polynomials P_i
// with their ranks r_i supplied explicitly, stability polynomials sigma_i
// (lex-positive, degree <= dimX - 1) and arrow weights b_a > 0.
struct SheafParams {
  Quiver quiver;
  int dimX = 1;
  std::vector<RatPoly> Pbar;    // per vertex, nonzero
  std::vector<RatPoly> sigma;   // per vertex
  std::vector<Rat> ranks;       // per vertex, > 0
  std::vector<Rat> b;           // per arrow, > 0

  void validate() const;
  RatPoly sigma_product() const;           // sigma_1 ... sigma_n
  RatPoly sigma_check(int vertex) const;   // product over the others
};

// Per-vertex numerical profile (P(F_i), rk F_i) of a candidate subobject.
struct SubProfile {
  std::vector<RatPoly> P;
  std::vector<Rat> rk;

  bool is_zero() const;
  bool is_full(const SheafParams& params) const;
  SubProfile plus(const SubProfile& o) const;
};

SubProfile zero_profile(int n);
SubProfile full_profile(const SheafParams& params);

// theta(params)(profile) =
//   sum_a b_a [ sigma^_t {P(F_t) - rk F_t (P_t - sigma_t)/r_t}
//             + sigma^_h {P(F_h) - rk F_h (P_h + sigma_h)/r_h} ].
RatPoly theta_sheaf(const SheafParams& params, const SubProfile& prof);

struct GData {
  RatPoly P;
  Rat rk;
};

SubProfile torsion_profile(const std::vector<RatPoly>& torsion_P);
// F_i = E_i on the t(a0)-side subtree, 0 elsewhere.
SubProfile split_arrow_profile(const SheafParams& params, const Arrow& a0);
// Boundedness shape at i0: zero / full by path orientation, G at i0.
SubProfile boundedness_profile(const SheafParams& params, int i0, const GData& g);

enum class ProfileVerdict { NoViolation, Boundary, StrictViolation };

struct ProfileReport {
  ProfileVerdict verdict = ProfileVerdict::NoViolation;
  RatPoly max_theta;
  int witness = -1;  // index into the supplied list
  // The scan is relative to the supplied subobject profiles; subsheaves are
  // never enumerated.
  std::string scope = "relative to supplied subobject profiles";
};

ProfileReport semistable_profiles(const SheafParams& params,
                                  const std::vector<SubProfile>& profiles);

// Holomorphic-triple form of theta on the two-vertex quiver with b = 1.
RatPoly triple_theta(const RatPoly& sigma1, const RatPoly& sigma2,
                     const RatPoly& P1, const Rat& r1, const RatPoly& P2,
                     const Rat& r2, const RatPoly& PF1, const Rat& rkF1,
                     const RatPoly& PF2, const Rat& rkF2);

// Curve-case bridge tau = mu(E_2) + sigma / rk E_2 and its inverse.
Rat tau_from_sigma(const Rat& mu2, const Rat& r2, const Rat& sigma);
Rat sigma_from_tau(const Rat& mu2, const Rat& r2, const Rat& tau);

struct SectionalData {
  Quiver quiver;
  std::vector<Rat> s;        // per vertex, > 0
  std::vector<Rat> b;        // per arrow, > 0
  std::vector<Rat> chi;      // chi(E_i)
  std::vector<Rat> rkE;      // rk E_i, > 0
  std::vector<Rat> h_dim;    // dim(H_i intersect H^0(F_i))
  std::vector<Rat> rkF;      // rk F_i
};

// The sectional semistability number delta.
Rat sectional_delta(const SectionalData& data);

struct BoundednessBound {
  Rat C;
  bool degenerate = false;  // the degree-(s + dimX - 1) coefficient was zero
  std::string statement;    // mu_max(E_{i0}) <= mu_{i0} + C
};

BoundednessBound boundedness_bound(const SheafParams& params, int i0);

// Le Potier-Simpson right-hand side with C(F) = rk(rk + dimX)/2 and
// [t]_+ = max(t, 0).
Rat lps_bound(int rk, const Rat& mu_max, const Rat& mu, const Rat& m, int dimX);

struct GiesekerData {
  std::vector<Rat> p;        // p_i = P_i(m)
  std::vector<Rat> sigma_m;  // sigma_i(m)
  std::vector<Rat> r;        // r_i
};

struct GiesekerWeights {
  std::vector<Rat> l;                          // per vertex
  std::vector<std::vector<Rat>> alpha;         // alpha[i][k] over incident arrows,
                                               // in quiver arrow order
  std::vector<std::vector<int>> alpha_arrows;  // the arrow indices, parallel
};

// Linearization weights l_i = sum_{Out} b (p_t - sigma_t(m))/(r_t sigma_t(m))
//                          + sum_{In}  b (p_h + sigma_h(m))/(r_h sigma_h(m)),
// together with the positive decomposition l_i = sum b_a alpha_{i,a}.
GiesekerWeights gieseker_l(const Quiver& q, const std::vector<Rat>& b,
                           const GiesekerData& gd);

struct WeightIdentity {
  Rat lhs;
  Rat rhs;
};

struct WeightIdentityReport {
  WeightIdentity tail_ii;   // the tail-side rearrangement identity
  WeightIdentity head_ii;   // the head-side rearrangement identity
  WeightIdentity tail_iv;   // tail side after clearing sigma_i(m)
  WeightIdentity head_iv;   // head side after clearing sigma_i(m)
};

// Both sides of the per-vertex weight identities used to translate the
// Hilbert-Mumford sum into the sectional form.
WeightIdentityReport gieseker_weight_identities(const Rat& p, const Rat& r,
                                                const Rat& sigma_m, int j,
                                                const Rat& rkEj);

}  // namespace qstab

#endif
