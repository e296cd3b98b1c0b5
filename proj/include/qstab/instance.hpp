#ifndef QSTAB_INSTANCE_HPP
#define QSTAB_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qstab/decomp.hpp"
#include "qstab/kingrep.hpp"
#include "qstab/sheafcalc.hpp"

namespace qstab {

struct LpsData {
  int rk = 1;
  Rat mu_max;
  Rat mu;
  Rat m;
  int dimX = 1;
};

struct TripleData {
  RatPoly sigma1, sigma2, P1, P2, PF1, PF2;
  Rat r1, r2, rkF1, rkF2;
  std::optional<Rat> mu2;  // enables the curve-case tau printout
};

// One instance file, subcommand selects the view.
struct Instance {
  Quiver quiver;
  std::vector<Rat> b;  // per arrow; defaults to all 1
  std::optional<QuiverRep> rep;
  std::optional<HomPoint> hom;  // standalone matrix or selected arrow map
  std::optional<WeightVector> delta, gamma, delta2, gamma2;
  std::optional<std::vector<WeightVector>> vertex_weights;
  std::optional<MultiIndex> multi_index;
  std::optional<SheafParams> sheaf;
  std::vector<SubProfile> profiles;
  std::optional<Arrow> sheaf_arrow;
  std::optional<SectionalData> sectional;
  std::optional<GiesekerData> gieseker;
  std::optional<TripleData> triple;
  std::optional<LpsData> lps;
  std::optional<int> bounds_vertex;
};

Instance parse_instance(const std::string& path);
Instance parse_instance_json(const nlohmann::json& j);

// The representation read as a rational tuple point (requires nonzero maps).
TuplePoint tuple_point_of(const QuiverRep& rep);

// JSON conversion helpers shared by the CLI and tests.
Rat rat_from_json(const nlohmann::json& j);
RatPoly poly_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const RatPoly& p);
nlohmann::json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const nlohmann::json& j);
nlohmann::json subrep_to_json(const SubRep& s);
nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json pair_decomposition_to_json(const PairDecomposition& pd);
nlohmann::json tree_decomposition_to_json(const TreeDecomposition& td);

}  // namespace qstab

#endif
