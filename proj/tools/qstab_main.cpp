// Batch front end: parses an instance file, dispatches to the library and
// prints a deterministic report (exact rationals everywhere, no floats).
//
// Exit codes: 0 verdict computed, 1 violation/unstable under
// --expect-semistable, 2 error (parse, validation, budget).

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "qstab/instance.hpp"

using nlohmann::json;
using namespace qstab;

namespace {

struct CommonOpts {
  std::string file;
  std::string mode = "exhaustive-ff";
  std::uint64_t budget = 4'000'000;
  std::uint64_t seed = 1;
  bool expect_semistable = false;
  bool json_out = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_mode = false) {
  cmd->add_option("file", o.file, "instance file (JSON)")->required();
  if (with_mode) cmd->add_option("--mode", o.mode, "search mode");
  cmd->add_option("--budget", o.budget, "enumeration budget");
  cmd->add_option("--seed", o.seed, "seed (randomized mode)");
  cmd->add_flag("--expect-semistable", o.expect_semistable,
                "exit 1 when a violation/unstable verdict is found");
  cmd->add_flag("--json", o.json_out, "machine-readable output");
}

const QuiverRep& need_rep(const Instance& ins) {
  if (!ins.rep)
    throw ValidationError("this subcommand needs \"dims\"/\"matrices\" sections");
  return *ins.rep;
}

const HomPoint& need_hom(const Instance& ins) {
  if (!ins.hom)
    throw ValidationError("this subcommand needs a \"matrix\" section (or \"arrow\")");
  return *ins.hom;
}

ScanOptions scan_opts(const CommonOpts& o) {
  ScanOptions s;
  s.budget = o.budget;
  s.seed = o.seed;
#ifdef _OPENMP
  s.parallel = true;
#endif
  return s;
}

int report_verdict(const CommonOpts& o, const Verdict& v, const char* what) {
  if (o.json_out) {
    json out = verdict_to_json(v);
    out["check"] = what;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << what << ": " << to_string(v.kind) << " [" << to_string(v.completeness)
              << "]\n";
    if (v.witness) {
      std::cout << "witness dims:";
      for (int d : v.witness->dims()) std::cout << " " << d;
      std::cout << "\nwitness theta: " << rat_to_string(v.witness_theta) << "\n";
    }
  }
  if (o.expect_semistable && v.kind == Stability::Unstable) return 1;
  return 0;
}

int run_tree_check(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  TreeVerdict v = validate_tree(ins.quiver);
  if (o.json_out)
    std::cout << json{{"is_oriented_tree", v.is_tree}, {"diagnostic", v.diagnostic}}.dump(2)
              << "\n";
  else
    std::cout << "oriented tree: " << (v.is_tree ? "yes" : "no") << " (" << v.diagnostic
              << ")\n";
  return 0;
}

int run_king_check(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  CheckMode mode;
  if (o.mode == "exhaustive-ff") mode = CheckMode::ExhaustiveFF;
  else if (o.mode == "lattice") mode = CheckMode::Lattice;
  else if (o.mode == "randomized") mode = CheckMode::Randomized;
  else throw ValidationError("king-check mode must be exhaustive-ff, lattice or randomized");
  Verdict v = check_semistable(need_rep(ins), ins.b, mode, scan_opts(o));
  return report_verdict(o, v, "king-check");
}

int run_git_check(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  FlagSource src;
  if (o.mode == "exhaustive-ff") src = FlagSource::ExhaustiveFF;
  else if (o.mode == "lattice-adapted") src = FlagSource::LatticeAdapted;
  else throw ValidationError("git-check mode must be exhaustive-ff or lattice-adapted");
  Verdict v = git_check(need_rep(ins), ins.b, src, scan_opts(o));
  return report_verdict(o, v, "git-check");
}

int run_gr(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  std::vector<QuiverRep> factors = gr_jordan_holder(need_rep(ins), ins.b, scan_opts(o));
  if (o.json_out) {
    json out = json::array();
    for (const QuiverRep& f : factors) {
      json dims = json::array();
      for (int d : f.dims) dims.push_back(d);
      json mats = json::object();
      for (size_t k = 0; k < f.quiver.arrows.size(); ++k) {
        const Arrow& a = f.quiver.arrows[k];
        json rows = json::array();
        for (int r = 0; r < f.mats[k].rows; ++r) {
          json row = json::array();
          for (int c = 0; c < f.mats[k].cols; ++c)
            row.push_back(rat_to_string(f.mats[k].at(r, c)));
          rows.push_back(row);
        }
        mats[std::to_string(a.tail) + "->" + std::to_string(a.head)] = rows;
      }
      out.push_back({{"dims", dims}, {"matrices", mats}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "jordan-hoelder factors: " << factors.size() << "\n";
    for (size_t i = 0; i < factors.size(); ++i) {
      std::cout << "factor " << i + 1 << " dims:";
      for (int d : factors[i].dims) std::cout << " " << d;
      std::cout << "\n";
    }
  }
  return 0;
}

int run_decompose(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  if (!ins.delta || !ins.gamma)
    throw ValidationError("decompose needs \"delta\" and \"gamma\"");
  const HomPoint& f = need_hom(ins);
  PairDecomposition pd = decompose_pair(f, *ins.delta, *ins.gamma);

  // reconstruction check
  std::vector<Rat> dsum(static_cast<size_t>(pd.p), Rat(0));
  std::vector<Rat> gsum(static_cast<size_t>(pd.q), Rat(0));
  auto add_step = [](std::vector<Rat>& acc, int idx, const Rat& coeff) {
    const int p = static_cast<int>(acc.size());
    WeightVector sv = WeightVector::step(p, idx);
    for (int t = 0; t < p; ++t) acc[static_cast<size_t>(t)] += coeff * sv[t];
  };
  for (auto& [i, a] : pd.pure_alpha) add_step(dsum, i, a);
  for (auto& [j2, b] : pd.pure_beta) add_step(gsum, j2, b);
  for (auto& [ij, e] : pd.paired) {
    add_step(dsum, ij.first, e / pd.p);
    add_step(gsum, ij.second, e / pd.q);
  }
  bool ok = true;
  for (int t = 0; t < pd.p; ++t) ok = ok && dsum[static_cast<size_t>(t)] == (*ins.delta)[t];
  for (int t = 0; t < pd.q; ++t) ok = ok && gsum[static_cast<size_t>(t)] == (*ins.gamma)[t];

  if (o.json_out) {
    json out = pair_decomposition_to_json(pd);
    out["reconstruction"] = ok ? "OK" : "FAILED";
    out["mu"] = rat_to_string(mu_hom(f, *ins.delta, *ins.gamma));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << pair_decomposition_to_json(pd).dump(2) << "\n";
    std::cout << "mu: " << rat_to_string(mu_hom(f, *ins.delta, *ins.gamma)) << "\n";
    std::cout << "reconstruction " << (ok ? "OK" : "FAILED") << "\n";
  }
  return ok ? 0 : 2;
}

int run_couple(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  const QuiverRep& rep = need_rep(ins);
  if (!ins.vertex_weights)
    throw ValidationError("couple needs a \"weights\" section (one vector per vertex)");
  TuplePoint point = tuple_point_of(rep);
  std::vector<PairDecomposition> per_arrow;
  for (size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
    const Arrow& a = rep.quiver.arrows[k];
    per_arrow.push_back(decompose_pair(point.maps[k],
                                       (*ins.vertex_weights)[static_cast<size_t>(a.tail - 1)],
                                       (*ins.vertex_weights)[static_cast<size_t>(a.head - 1)]));
  }
  TreeDecomposition joint = couple_tree(rep.quiver, rep.dims, per_arrow);
  TreeDecomposition basic = normalize_components(joint, point);
  if (o.json_out) {
    std::cout << json{{"joint", tree_decomposition_to_json(joint)},
                      {"normalized", tree_decomposition_to_json(basic)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "joint: " << tree_decomposition_to_json(joint).dump() << "\n";
    std::cout << "normalized: " << tree_decomposition_to_json(basic).dump() << "\n";
  }
  return 0;
}

int run_mu(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  if (!ins.delta || !ins.gamma) throw ValidationError("mu needs \"delta\" and \"gamma\"");
  const HomPoint& f = need_hom(ins);
  if (ins.delta2 && ins.gamma2) {
    AdditivityReport rep = check_additivity(f, *ins.delta, *ins.gamma, *ins.delta2, *ins.gamma2);
    if (o.json_out) {
      std::cout << json{{"mu_first", rat_to_string(rep.mu_first)},
                        {"mu_second", rat_to_string(rep.mu_second)},
                        {"mu_product", rat_to_string(rep.mu_product)},
                        {"additive", rep.additive}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "mu(lambda) = " << rat_to_string(rep.mu_first)
                << ", mu(lambda') = " << rat_to_string(rep.mu_second)
                << ", mu(lambda lambda') = " << rat_to_string(rep.mu_product)
                << (rep.additive ? " (additive)" : " (not additive)") << "\n";
    }
  } else {
    Rat mu = mu_hom(f, *ins.delta, *ins.gamma);
    if (o.json_out)
      std::cout << json{{"mu", rat_to_string(mu)}}.dump(2) << "\n";
    else
      std::cout << "mu = " << rat_to_string(mu) << "\n";
  }
  return 0;
}

int run_flag_weight(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  const QuiverRep& rep = need_rep(ins);
  if (!ins.multi_index) throw ValidationError("flag-weight needs \"multi_index\"");
  TuplePoint point = tuple_point_of(rep);
  FlagWeightReport r = flag_weight(point, *ins.multi_index, ins.b);
  const bool basic = is_basic(*ins.multi_index, point);
  if (o.json_out) {
    std::cout << json{{"closed_form", rat_to_string(r.closed_form)},
                      {"exact_mu", rat_to_string(r.exact_mu)},
                      {"equal", r.equal},
                      {"basic", basic}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "closed form: " << rat_to_string(r.closed_form)
              << ", exact mu: " << rat_to_string(r.exact_mu)
              << ", equal: " << (r.equal ? "yes" : "no")
              << ", basic: " << (basic ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_sheaf_theta(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  if (!ins.sheaf) throw ValidationError("sheaf-theta needs a \"sheaf\" section");
  if (ins.profiles.empty() && !ins.sheaf_arrow)
    throw ValidationError("sheaf-theta needs profiles or a split arrow");
  json vals = json::array();
  int exit_code = 0;
  if (ins.sheaf_arrow) {
    SubProfile prof = split_arrow_profile(*ins.sheaf, *ins.sheaf_arrow);
    RatPoly th = theta_sheaf(*ins.sheaf, prof);
    vals.push_back({{"profile", "split-arrow"}, {"theta", poly_to_json(th)}});
    if (!o.json_out) std::cout << "theta(split-arrow) = " << th.to_string() << "\n";
  }
  if (!ins.profiles.empty()) {
    for (size_t i = 0; i < ins.profiles.size(); ++i) {
      RatPoly th = theta_sheaf(*ins.sheaf, ins.profiles[i]);
      vals.push_back({{"profile", i}, {"theta", poly_to_json(th)}});
      if (!o.json_out)
        std::cout << "theta(profile " << i << ") = " << th.to_string() << "\n";
    }
    ProfileReport rep = semistable_profiles(*ins.sheaf, ins.profiles);
    const char* verdict = rep.verdict == ProfileVerdict::NoViolation ? "no-violation"
                          : rep.verdict == ProfileVerdict::Boundary  ? "boundary"
                                                                     : "strict-violation";
    if (o.json_out) {
      json out{{"values", vals},
               {"verdict", verdict},
               {"scope", rep.scope},
               {"max_theta", poly_to_json(rep.max_theta)},
               {"witness", rep.witness}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "verdict: " << verdict << " (" << rep.scope << "), witness profile "
                << rep.witness << "\n";
    }
    if (o.expect_semistable && rep.verdict == ProfileVerdict::StrictViolation)
      exit_code = 1;
  } else if (o.json_out) {
    std::cout << json{{"values", vals}}.dump(2) << "\n";
  }
  return exit_code;
}

int run_triple(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  if (!ins.triple) throw ValidationError("triple needs a \"triple\" section");
  const TripleData& t = *ins.triple;
  RatPoly th = triple_theta(t.sigma1, t.sigma2, t.P1, t.r1, t.P2, t.r2, t.PF1, t.rkF1,
                            t.PF2, t.rkF2);
  json out{{"theta", poly_to_json(th)},
           {"sign", lex_positive(th) ? 1 : (th.is_zero() ? 0 : -1)}};
  if (t.mu2 && t.sigma1.degree() <= 0 && t.sigma1 == t.sigma2)
    out["tau"] = rat_to_string(tau_from_sigma(*t.mu2, t.r2, t.sigma1.coeff(0)));
  if (o.json_out)
    std::cout << out.dump(2) << "\n";
  else {
    std::cout << "triple theta = " << th.to_string() << "\n";
    if (out.contains("tau")) std::cout << "tau = " << out["tau"].get<std::string>() << "\n";
  }
  return 0;
}

int run_sectional(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  if (!ins.sectional) throw ValidationError("sectional needs a \"sectional\" section");
  Rat d = sectional_delta(*ins.sectional);
  if (o.json_out)
    std::cout << json{{"delta", rat_to_string(d)}}.dump(2) << "\n";
  else
    std::cout << "delta = " << rat_to_string(d) << "\n";
  return 0;
}

int run_gieseker(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  if (!ins.gieseker) throw ValidationError("gieseker needs a \"gieseker\" section");
  GiesekerWeights w = gieseker_l(ins.quiver, ins.b, *ins.gieseker);
  json lj = json::array(), aj = json::array();
  for (const Rat& l : w.l) lj.push_back(rat_to_string(l));
  for (size_t i = 0; i < w.alpha.size(); ++i) {
    json row = json::array();
    for (size_t t = 0; t < w.alpha[i].size(); ++t)
      row.push_back({{"arrow", w.alpha_arrows[i][t]}, {"alpha", rat_to_string(w.alpha[i][t])}});
    aj.push_back(row);
  }
  if (o.json_out)
    std::cout << json{{"l", lj}, {"alpha", aj}}.dump(2) << "\n";
  else {
    std::cout << "l:";
    for (const Rat& l : w.l) std::cout << " " << rat_to_string(l);
    std::cout << "\n";
  }
  return 0;
}

int run_bounds(const CommonOpts& o) {
  Instance ins = parse_instance(o.file);
  json out = json::object();
  if (ins.bounds_vertex) {
    if (!ins.sheaf) throw ValidationError("bounds needs a \"sheaf\" section");
    BoundednessBound bb = boundedness_bound(*ins.sheaf, *ins.bounds_vertex);
    out["C"] = rat_to_string(bb.C);
    out["degenerate"] = bb.degenerate;
    out["statement"] = bb.statement;
    if (!o.json_out) std::cout << bb.statement << (bb.degenerate ? " (degenerate)" : "") << "\n";
  }
  if (ins.lps) {
    Rat v = lps_bound(ins.lps->rk, ins.lps->mu_max, ins.lps->mu, ins.lps->m, ins.lps->dimX);
    out["lps"] = rat_to_string(v);
    if (!o.json_out) std::cout << "lps bound = " << rat_to_string(v) << "\n";
  }
  if (!ins.bounds_vertex && !ins.lps)
    throw ValidationError("bounds needs a \"bounds\" or \"lps\" section");
  if (o.json_out) std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact theta-semistability calculus for representations of oriented-tree quivers"};
  app.require_subcommand(1);

  struct Cmd {
    const char* name;
    const char* help;
    bool with_mode;
    int (*fn)(const CommonOpts&);
  };
  const Cmd cmds[] = {
      {"tree-check", "validate the oriented-tree property", false, run_tree_check},
      {"king-check", "semistability of a finite-dimensional representation", true, run_king_check},
      {"git-check", "flag-side linearized weight test", true, run_git_check},
      {"gr", "Jordan-Hoelder factors of a semistable representation", false, run_gr},
      {"decompose", "decompose a weight pair into basic step vectors", false, run_decompose},
      {"couple", "couple per-arrow decompositions along the tree", false, run_couple},
      {"mu", "Hilbert-Mumford weight of a Hom point", false, run_mu},
      {"flag-weight", "closed-form vs exact weight of a flag", false, run_flag_weight},
      {"sheaf-theta", "theta of numerical subobject profiles", false, run_sheaf_theta},
      {"triple", "holomorphic-triple theta and the tau bridge", false, run_triple},
      {"sectional", "sectional semistability number delta", false, run_sectional},
      {"gieseker", "linearization weights l_i and their alpha decomposition", false, run_gieseker},
      {"bounds", "boundedness constant and Le Potier-Simpson bound", false, run_bounds},
  };

  std::vector<CommonOpts> opts(std::size(cmds));
  std::vector<CLI::App*> subs;
  for (size_t i = 0; i < std::size(cmds); ++i) {
    CLI::App* sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    add_common(sub, opts[i], cmds[i].with_mode);
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  for (size_t i = 0; i < std::size(cmds); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return cmds[i].fn(opts[i]);
    } catch (const BudgetError& e) {
      std::cerr << "budget-exceeded: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
