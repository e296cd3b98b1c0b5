#include "qstab/sheafcalc.hpp"

#include <algorithm>

namespace qstab {

void SheafParams::validate() const {
  if (static_cast<int>(Pbar.size()) != quiver.n ||
      static_cast<int>(sigma.size()) != quiver.n ||
      static_cast<int>(ranks.size()) != quiver.n ||
      b.size() != quiver.arrows.size())
    throw ValidationError("sheaf params: shape mismatch");
  if (dimX < 1) throw ValidationError("sheaf params: dimX must be >= 1");
  for (int i = 0; i < quiver.n; ++i) {
    if (Pbar[static_cast<size_t>(i)].is_zero())
      throw ValidationError("sheaf params: P must be nonzero at vertex " +
                            std::to_string(i + 1));
    const RatPoly& s = sigma[static_cast<size_t>(i)];
    if (!lex_positive(s))
      throw ValidationError("sheaf params: sigma must be lex-positive at vertex " +
                            std::to_string(i + 1));
    if (s.degree() > dimX - 1)
      throw ValidationError("sheaf params: deg sigma exceeds dimX - 1 at vertex " +
                            std::to_string(i + 1));
    if (ranks[static_cast<size_t>(i)] <= 0)
      throw ValidationError("sheaf params: rank must be positive at vertex " +
                            std::to_string(i + 1));
  }
  for (const Rat& x : b)
    if (x <= 0) throw ValidationError("sheaf params: b must be positive");
}

RatPoly SheafParams::sigma_product() const {
  RatPoly prod{Rat(1)};
  for (const RatPoly& s : sigma) prod = prod * s;
  return prod;
}

RatPoly SheafParams::sigma_check(int vertex) const {
  RatPoly prod{Rat(1)};
  for (int i = 0; i < quiver.n; ++i)
    if (i != vertex - 1) prod = prod * sigma[static_cast<size_t>(i)];
  return prod;
}

bool SubProfile::is_zero() const {
  for (const RatPoly& p : P)
    if (!p.is_zero()) return false;
  for (const Rat& r : rk)
    if (r != 0) return false;
  return true;
}

bool SubProfile::is_full(const SheafParams& params) const {
  return P == params.Pbar && rk == params.ranks;
}

SubProfile SubProfile::plus(const SubProfile& o) const {
  if (P.size() != o.P.size()) throw PreconditionError("profile shape mismatch");
  SubProfile out;
  for (size_t i = 0; i < P.size(); ++i) {
    out.P.push_back(P[i] + o.P[i]);
    out.rk.push_back(rk[i] + o.rk[i]);
  }
  return out;
}

SubProfile zero_profile(int n) {
  SubProfile p;
  p.P.assign(static_cast<size_t>(n), RatPoly());
  p.rk.assign(static_cast<size_t>(n), Rat(0));
  return p;
}

SubProfile full_profile(const SheafParams& params) {
  return {params.Pbar, params.ranks};
}

RatPoly theta_sheaf(const SheafParams& params, const SubProfile& prof) {
  params.validate();
  if (prof.P.size() != static_cast<size_t>(params.quiver.n) ||
      prof.rk.size() != static_cast<size_t>(params.quiver.n))
    throw ValidationError("theta_sheaf: profile shape mismatch");
  RatPoly theta;
  for (size_t k = 0; k < params.quiver.arrows.size(); ++k) {
    const Arrow& a = params.quiver.arrows[k];
    const size_t t = static_cast<size_t>(a.tail - 1);
    const size_t h = static_cast<size_t>(a.head - 1);
    RatPoly tail_brace =
        prof.P[t] - (params.Pbar[t] - params.sigma[t]).scaled(prof.rk[t] / params.ranks[t]);
    RatPoly head_brace =
        prof.P[h] - (params.Pbar[h] + params.sigma[h]).scaled(prof.rk[h] / params.ranks[h]);
    theta = theta + (params.sigma_check(a.tail) * tail_brace +
                     params.sigma_check(a.head) * head_brace)
                        .scaled(params.b[k]);
  }
  return theta;
}

SubProfile torsion_profile(const std::vector<RatPoly>& torsion_P) {
  SubProfile p;
  p.P = torsion_P;
  p.rk.assign(torsion_P.size(), Rat(0));
  return p;
}

SubProfile split_arrow_profile(const SheafParams& params, const Arrow& a0) {
  params.validate();
  auto [tside, hside] = split_at_arrow(params.quiver, a0);
  SubProfile p = zero_profile(params.quiver.n);
  for (int v : tside) {
    p.P[static_cast<size_t>(v - 1)] = params.Pbar[static_cast<size_t>(v - 1)];
    p.rk[static_cast<size_t>(v - 1)] = params.ranks[static_cast<size_t>(v - 1)];
  }
  return p;
}

SubProfile boundedness_profile(const SheafParams& params, int i0, const GData& g) {
  params.validate();
  std::vector<BoundednessMark> marks = boundedness_split(params.quiver, i0);
  SubProfile p = zero_profile(params.quiver.n);
  for (int i = 0; i < params.quiver.n; ++i) {
    switch (marks[static_cast<size_t>(i)]) {
      case BoundednessMark::Zero:
        break;
      case BoundednessMark::Full:
        p.P[static_cast<size_t>(i)] = params.Pbar[static_cast<size_t>(i)];
        p.rk[static_cast<size_t>(i)] = params.ranks[static_cast<size_t>(i)];
        break;
      case BoundednessMark::GSlot:
        p.P[static_cast<size_t>(i)] = g.P;
        p.rk[static_cast<size_t>(i)] = g.rk;
        break;
    }
  }
  return p;
}

ProfileReport semistable_profiles(const SheafParams& params,
                                  const std::vector<SubProfile>& profiles) {
  params.validate();
  if (profiles.empty())
    throw PreconditionError("semistable_profiles: empty profile list");
  ProfileReport rep;
  for (size_t i = 0; i < profiles.size(); ++i) {
    if (profiles[i].is_zero() || profiles[i].is_full(params))
      throw PreconditionError("semistable_profiles: profile " + std::to_string(i) +
                              " is trivial or full");
    RatPoly th = theta_sheaf(params, profiles[i]);
    if (rep.witness < 0 || lex_less(rep.max_theta, th)) {
      rep.witness = static_cast<int>(i);
      rep.max_theta = th;
    }
  }
  if (lex_positive(rep.max_theta))
    rep.verdict = ProfileVerdict::StrictViolation;
  else if (rep.max_theta.is_zero())
    rep.verdict = ProfileVerdict::Boundary;
  else
    rep.verdict = ProfileVerdict::NoViolation;
  return rep;
}

RatPoly triple_theta(const RatPoly& sigma1, const RatPoly& sigma2,
                     const RatPoly& P1, const Rat& r1, const RatPoly& P2,
                     const Rat& r2, const RatPoly& PF1, const Rat& rkF1,
                     const RatPoly& PF2, const Rat& rkF2) {
  if (!lex_positive(sigma1) || !lex_positive(sigma2))
    throw ValidationError("triple_theta: sigma must be lex-positive");
  RatPoly first = PF1 - (P1 - sigma1).scaled(rkF1 / r1);
  RatPoly second = PF2 - (P2 + sigma2).scaled(rkF2 / r2);
  return sigma2 * first + sigma1 * second;
}

Rat tau_from_sigma(const Rat& mu2, const Rat& r2, const Rat& sigma) {
  if (sigma <= 0) throw PreconditionError("tau_from_sigma: sigma must be positive");
  if (r2 <= 0) throw PreconditionError("tau_from_sigma: rank must be positive");
  return mu2 + sigma / r2;
}

Rat sigma_from_tau(const Rat& mu2, const Rat& r2, const Rat& tau) {
  if (r2 <= 0) throw PreconditionError("sigma_from_tau: rank must be positive");
  Rat sigma = (tau - mu2) * r2;
  if (sigma <= 0) throw PreconditionError("sigma_from_tau: tau must exceed mu2");
  return sigma;
}

Rat sectional_delta(const SectionalData& data) {
  const int n = data.quiver.n;
  if (static_cast<int>(data.s.size()) != n || static_cast<int>(data.chi.size()) != n ||
      static_cast<int>(data.rkE.size()) != n || static_cast<int>(data.h_dim.size()) != n ||
      static_cast<int>(data.rkF.size()) != n || data.b.size() != data.quiver.arrows.size())
    throw ValidationError("sectional data: shape mismatch");
  for (const Rat& x : data.s)
    if (x <= 0) throw ValidationError("sectional data: s must be positive");
  for (const Rat& x : data.rkE)
    if (x == 0) throw ValidationError("sectional data: rk E must be nonzero");

  Rat s(1);
  for (const Rat& x : data.s) s *= x;
  auto s_check = [&](int i) { return s / data.s[static_cast<size_t>(i - 1)]; };

  Rat delta(0);
  for (size_t k = 0; k < data.quiver.arrows.size(); ++k) {
    const Arrow& a = data.quiver.arrows[k];
    const size_t t = static_cast<size_t>(a.tail - 1);
    const size_t h = static_cast<size_t>(a.head - 1);
    Rat tail_brace = data.h_dim[t] - data.rkF[t] * (data.chi[t] - data.s[t]) / data.rkE[t];
    Rat head_brace = data.h_dim[h] - data.rkF[h] * (data.chi[h] + data.s[h]) / data.rkE[h];
    delta += data.b[k] * (s_check(a.tail) * tail_brace + s_check(a.head) * head_brace);
  }
  return delta;
}

BoundednessBound boundedness_bound(const SheafParams& params, int i0) {
  params.validate();
  if (!params.quiver.has_vertex(i0))
    throw ValidationError("boundedness_bound: bad vertex");
  std::vector<int> inc = params.quiver.incident_arrows(i0);
  if (inc.empty())
    throw PreconditionError("boundedness_bound: vertex " + std::to_string(i0) +
                            " is isolated");
  Rat b_local(0);
  for (int k : inc) b_local += params.b[static_cast<size_t>(k)];
  RatPoly local = params.sigma_check(i0).scaled(b_local);  // sum_{A(i0)} b sigma^_{i0}
  const Rat lead = local.leading_coeff();
  const int s_check_deg = local.degree();

  Rat b_all(0);
  for (const Rat& x : params.b) b_all += x;
  RatPoly global = params.sigma_product().scaled(b_all);

  BoundednessBound out;
  Rat top = global.coeff(s_check_deg + params.dimX - 1);
  if (top == 0) {
    out.C = Rat(0);
    out.degenerate = true;
  } else {
    out.C = top / lead;
  }
  out.statement = "mu_max(E_" + std::to_string(i0) + ") <= mu_" + std::to_string(i0) +
                  " + " + rat_to_string(out.C);
  return out;
}

Rat lps_bound(int rk, const Rat& mu_max, const Rat& mu, const Rat& m, int dimX) {
  if (rk < 1) throw PreconditionError("lps_bound: rank must be >= 1");
  if (dimX < 1) throw PreconditionError("lps_bound: dimX must be >= 1");
  const Rat C = Rat(rk) * (rk + dimX) / 2;
  Rat fact(1);
  for (int t = 2; t <= dimX; ++t) fact *= t;
  auto plus_pow = [&](Rat t) {
    if (t < 0) return Rat(0);
    Rat acc(1);
    for (int e = 0; e < dimX; ++e) acc *= t;
    return acc;
  };
  return Rat(rk - 1) / (fact * rk) * plus_pow(mu_max + C - 1 + m) +
         Rat(1) / (fact * rk) * plus_pow(mu + C - 1 + m);
}

GiesekerWeights gieseker_l(const Quiver& q, const std::vector<Rat>& b,
                           const GiesekerData& gd) {
  const int n = q.n;
  if (static_cast<int>(gd.p.size()) != n || static_cast<int>(gd.sigma_m.size()) != n ||
      static_cast<int>(gd.r.size()) != n || b.size() != q.arrows.size())
    throw ValidationError("gieseker_l: shape mismatch");
  for (int i = 0; i < n; ++i) {
    if (!(gd.sigma_m[static_cast<size_t>(i)] > 0))
      throw PreconditionError("gieseker_l: sigma_i(m) must be positive at vertex " +
                              std::to_string(i + 1));
    if (!(gd.p[static_cast<size_t>(i)] > gd.sigma_m[static_cast<size_t>(i)]))
      throw PreconditionError("gieseker_l: need p_i > sigma_i(m) at vertex " +
                              std::to_string(i + 1));
    if (gd.r[static_cast<size_t>(i)] <= 0)
      throw PreconditionError("gieseker_l: rank must be positive at vertex " +
                              std::to_string(i + 1));
  }
  GiesekerWeights out;
  out.l.assign(static_cast<size_t>(n), Rat(0));
  out.alpha.resize(static_cast<size_t>(n));
  out.alpha_arrows.resize(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const size_t ii = static_cast<size_t>(i - 1);
    for (int k : q.incident_arrows(i)) {
      const Arrow& a = q.arrows[static_cast<size_t>(k)];
      Rat alpha;
      if (a.tail == i)
        alpha = (gd.p[ii] - gd.sigma_m[ii]) / (gd.r[ii] * gd.sigma_m[ii]);
      else
        alpha = (gd.p[ii] + gd.sigma_m[ii]) / (gd.r[ii] * gd.sigma_m[ii]);
      out.alpha[ii].push_back(alpha);
      out.alpha_arrows[ii].push_back(k);
      out.l[ii] += b[static_cast<size_t>(k)] * alpha;
    }
  }
  // internal identity check: l_i = sum b_a alpha_{i,a} with all alpha > 0
  for (int i = 0; i < n; ++i) {
    Rat acc(0);
    for (size_t t = 0; t < out.alpha[static_cast<size_t>(i)].size(); ++t) {
      if (out.alpha[static_cast<size_t>(i)][t] <= 0)
        throw PreconditionError("gieseker_l: nonpositive alpha at vertex " +
                                std::to_string(i + 1));
      acc += b[static_cast<size_t>(out.alpha_arrows[static_cast<size_t>(i)][t])] *
             out.alpha[static_cast<size_t>(i)][t];
    }
    if (acc != out.l[static_cast<size_t>(i)])
      throw PreconditionError("gieseker_l: alpha decomposition mismatch");
  }
  return out;
}

WeightIdentityReport gieseker_weight_identities(const Rat& p, const Rat& r,
                                                const Rat& sigma_m, int j,
                                                const Rat& rkEj) {
  if (j < 0 || Rat(j) > p)
    throw PreconditionError("gieseker_weight_identities: j out of range 0..p");
  if (sigma_m <= 0 || r <= 0 || p <= 0)
    throw PreconditionError("gieseker_weight_identities: parameters must be positive");
  const Rat mu_step = p * rkEj - Rat(j) * r;  // mu(g, lambda^(j))
  WeightIdentityReport rep;
  rep.tail_ii.lhs = (p - sigma_m) / (r * sigma_m) / p * mu_step - Rat(j) / p;
  rep.tail_ii.rhs = p * rkEj / (r * sigma_m) - rkEj / r - Rat(j) / sigma_m;
  rep.head_ii.lhs = (p + sigma_m) / (r * sigma_m) / p * mu_step + Rat(j) / p;
  rep.head_ii.rhs = p * rkEj / (r * sigma_m) + rkEj / r - Rat(j) / sigma_m;
  // Clearing sigma_i(m) turns the Hilbert-Mumford terms into the sectional
  // braces, up to sign.
  rep.tail_iv.lhs = sigma_m * rep.tail_ii.rhs;
  rep.tail_iv.rhs = rkEj * (p - sigma_m) / r - Rat(j);
  rep.head_iv.lhs = sigma_m * rep.head_ii.rhs;
  rep.head_iv.rhs = rkEj * (p + sigma_m) / r - Rat(j);
  return rep;
}

}  // namespace qstab
