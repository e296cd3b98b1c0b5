#include "qstab/instance.hpp"

#include <fstream>

namespace qstab {

using nlohmann::json;

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw ValidationError("expected rational (integer or \"a/b\" string), got " +
                        j.dump());
}

RatPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("polynomial must be an array of coefficients");
  std::vector<Rat> c;
  for (const auto& x : j) c.push_back(rat_from_json(x));
  return RatPoly(std::move(c));
}

json poly_to_json(const RatPoly& p) {
  json arr = json::array();
  for (const Rat& c : p.coeffs()) arr.push_back(rat_to_string(c));
  return arr;
}

Quiver quiver_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("arrows"))
    throw ValidationError("quiver needs fields \"n\" and \"arrows\"");
  Quiver q;
  q.n = j.at("n").get<int>();
  for (const auto& a : j.at("arrows")) {
    if (!a.is_array() || a.size() != 2)
      throw ValidationError("arrow must be a [tail, head] pair");
    Arrow arrow{a[0].get<int>(), a[1].get<int>()};
    if (!q.has_vertex(arrow.tail) || !q.has_vertex(arrow.head))
      throw ValidationError("arrow (" + std::to_string(arrow.tail) + "," +
                            std::to_string(arrow.head) + ") references a vertex outside 1.." +
                            std::to_string(q.n));
    q.arrows.push_back(arrow);
  }
  return q;
}

json quiver_to_json(const Quiver& q) {
  json arrows = json::array();
  for (const Arrow& a : q.arrows) arrows.push_back({a.tail, a.head});
  return {{"n", q.n}, {"arrows", arrows}};
}

namespace {

Mat<Rat> matrix_from_json(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ValidationError("matrix for " + where + " must have " + std::to_string(rows) +
                          " rows");
  Mat<Rat> m(rows, cols, Rat(0));
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ValidationError("matrix for " + where + " must have " + std::to_string(cols) +
                            " columns per row");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rat_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

WeightVector weights_from_json(const json& j) {
  std::vector<Rat> v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return WeightVector(std::move(v));
}

std::string arrow_key(const Arrow& a) {
  return std::to_string(a.tail) + "->" + std::to_string(a.head);
}

}  // namespace

TuplePoint tuple_point_of(const QuiverRep& rep) {
  TuplePoint point;
  point.quiver = rep.quiver;
  point.dims = rep.dims;
  for (const auto& m : rep.mats) {
    HomPoint f(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) f.set(c + 1, r + 1, m.at(r, c));
    point.maps.push_back(std::move(f));
  }
  point.validate();
  return point;
}

Instance parse_instance_json(const json& j) {
  Instance ins;
  if (!j.contains("quiver")) throw ValidationError("instance needs a \"quiver\" section");
  ins.quiver = quiver_from_json(j.at("quiver"));

  if (j.contains("b")) {
    for (const auto& x : j.at("b")) ins.b.push_back(rat_from_json(x));
    if (ins.b.size() != ins.quiver.arrows.size())
      throw ValidationError("\"b\" must list one value per arrow");
  } else {
    ins.b.assign(ins.quiver.arrows.size(), Rat(1));
  }

  if (j.contains("dims")) {
    QuiverRep rep;
    rep.quiver = ins.quiver;
    rep.field = j.contains("field") ? FieldSpec::parse(j.at("field").get<std::string>())
                                    : FieldSpec::rationals();
    for (const auto& d : j.at("dims")) rep.dims.push_back(d.get<int>());
    if (static_cast<int>(rep.dims.size()) != ins.quiver.n)
      throw ValidationError("\"dims\" must list one dimension per vertex");
    if (!j.contains("matrices"))
      throw ValidationError("\"dims\" given but \"matrices\" missing");
    const auto& mats = j.at("matrices");
    for (const Arrow& a : ins.quiver.arrows) {
      const std::string key = arrow_key(a);
      if (!mats.contains(key))
        throw ValidationError("matrix for arrow " + key + " missing");
      rep.mats.push_back(matrix_from_json(mats.at(key),
                                          rep.dims[static_cast<size_t>(a.head - 1)],
                                          rep.dims[static_cast<size_t>(a.tail - 1)], key));
    }
    rep.validate();
    ins.rep = std::move(rep);
  }

  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    Mat<Rat> mat = matrix_from_json(m, rows, cols, "\"matrix\"");
    HomPoint f(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) f.set(c + 1, r + 1, mat.at(r, c));
    ins.hom = std::move(f);
  } else if (j.contains("arrow") && ins.rep) {
    Arrow a{j.at("arrow")[0].get<int>(), j.at("arrow")[1].get<int>()};
    const int k = ins.quiver.arrow_index(a);
    if (k < 0) throw ValidationError("\"arrow\" is not an arrow of the quiver");
    const Mat<Rat>& m = ins.rep->mats[static_cast<size_t>(k)];
    HomPoint f(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) f.set(c + 1, r + 1, m.at(r, c));
    ins.hom = std::move(f);
  }

  auto maybe_weights = [&](const char* key) -> std::optional<WeightVector> {
    if (!j.contains(key)) return std::nullopt;
    return weights_from_json(j.at(key));
  };
  ins.delta = maybe_weights("delta");
  ins.gamma = maybe_weights("gamma");
  ins.delta2 = maybe_weights("delta2");
  ins.gamma2 = maybe_weights("gamma2");

  if (j.contains("weights")) {
    std::vector<WeightVector> w;
    for (const auto& x : j.at("weights")) w.push_back(weights_from_json(x));
    if (static_cast<int>(w.size()) != ins.quiver.n)
      throw ValidationError("\"weights\" must list one vector per vertex");
    ins.vertex_weights = std::move(w);
  }

  if (j.contains("multi_index")) {
    MultiIndex mi;
    for (const auto& x : j.at("multi_index")) mi.j.push_back(x.get<int>());
    ins.multi_index = std::move(mi);
  }

  if (j.contains("sheaf")) {
    const auto& sj = j.at("sheaf");
    SheafParams sp;
    sp.quiver = ins.quiver;
    sp.dimX = sj.value("dimX", 1);
    for (const auto& x : sj.at("Pbar")) sp.Pbar.push_back(poly_from_json(x));
    for (const auto& x : sj.at("sigma")) sp.sigma.push_back(poly_from_json(x));
    for (const auto& x : sj.at("ranks")) sp.ranks.push_back(rat_from_json(x));
    sp.b = ins.b;
    sp.validate();
    if (sj.contains("profiles")) {
      for (const auto& pj : sj.at("profiles")) {
        SubProfile prof;
        for (const auto& x : pj.at("P")) prof.P.push_back(poly_from_json(x));
        for (const auto& x : pj.at("rk")) prof.rk.push_back(rat_from_json(x));
        if (static_cast<int>(prof.P.size()) != ins.quiver.n ||
            static_cast<int>(prof.rk.size()) != ins.quiver.n)
          throw ValidationError("profile shape mismatch");
        ins.profiles.push_back(std::move(prof));
      }
    }
    if (sj.contains("arrow"))
      ins.sheaf_arrow = Arrow{sj.at("arrow")[0].get<int>(), sj.at("arrow")[1].get<int>()};
    ins.sheaf = std::move(sp);
  }

  if (j.contains("sectional")) {
    const auto& sj = j.at("sectional");
    SectionalData sd;
    sd.quiver = ins.quiver;
    sd.b = ins.b;
    for (const auto& x : sj.at("s")) sd.s.push_back(rat_from_json(x));
    for (const auto& x : sj.at("chi")) sd.chi.push_back(rat_from_json(x));
    for (const auto& x : sj.at("rkE")) sd.rkE.push_back(rat_from_json(x));
    for (const auto& x : sj.at("h_dim")) sd.h_dim.push_back(rat_from_json(x));
    for (const auto& x : sj.at("rkF")) sd.rkF.push_back(rat_from_json(x));
    ins.sectional = std::move(sd);
  }

  if (j.contains("gieseker")) {
    const auto& gj = j.at("gieseker");
    GiesekerData gd;
    for (const auto& x : gj.at("p")) gd.p.push_back(rat_from_json(x));
    for (const auto& x : gj.at("sigma_m")) gd.sigma_m.push_back(rat_from_json(x));
    for (const auto& x : gj.at("ranks")) gd.r.push_back(rat_from_json(x));
    ins.gieseker = std::move(gd);
  }

  if (j.contains("triple")) {
    const auto& tj = j.at("triple");
    TripleData td;
    td.sigma1 = poly_from_json(tj.at("sigma1"));
    td.sigma2 = poly_from_json(tj.at("sigma2"));
    td.P1 = poly_from_json(tj.at("P1"));
    td.P2 = poly_from_json(tj.at("P2"));
    td.PF1 = poly_from_json(tj.at("PF1"));
    td.PF2 = poly_from_json(tj.at("PF2"));
    td.r1 = rat_from_json(tj.at("r1"));
    td.r2 = rat_from_json(tj.at("r2"));
    td.rkF1 = rat_from_json(tj.at("rkF1"));
    td.rkF2 = rat_from_json(tj.at("rkF2"));
    if (tj.contains("mu2")) td.mu2 = rat_from_json(tj.at("mu2"));
    ins.triple = std::move(td);
  }

  if (j.contains("lps")) {
    const auto& lj = j.at("lps");
    LpsData ld;
    ld.rk = lj.at("rk").get<int>();
    ld.mu_max = rat_from_json(lj.at("mu_max"));
    ld.mu = rat_from_json(lj.at("mu"));
    ld.m = rat_from_json(lj.at("m"));
    ld.dimX = lj.at("dimX").get<int>();
    ins.lps = ld;
  }

  if (j.contains("bounds")) ins.bounds_vertex = j.at("bounds").at("i0").get<int>();

  return ins;
}

Instance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error in '" + path + "': " + e.what());
  }
  try {
    return parse_instance_json(j);
  } catch (const json::exception& e) {
    throw ValidationError("malformed instance '" + path + "': " + e.what());
  }
}

json subrep_to_json(const SubRep& s) {
  json basis = json::array();
  for (const auto& m : s.basis) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
      json row = json::array();
      for (int c = 0; c < m.cols; ++c) row.push_back(rat_to_string(m.at(r, c)));
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  json dims = json::array();
  for (int d : s.dims()) dims.push_back(d);
  return {{"dims", dims}, {"basis", basis}};
}

json verdict_to_json(const Verdict& v) {
  json out{{"verdict", to_string(v.kind)}, {"completeness", to_string(v.completeness)}};
  if (v.witness) {
    out["witness"] = subrep_to_json(*v.witness);
    out["witness_theta"] = rat_to_string(v.witness_theta);
  }
  return out;
}

json pair_decomposition_to_json(const PairDecomposition& pd) {
  json pa = json::object(), pb = json::object(), pr = json::object();
  for (auto& [i, a] : pd.pure_alpha)
    if (a != 0) pa[std::to_string(i)] = rat_to_string(a);
  for (auto& [j2, b] : pd.pure_beta)
    if (b != 0) pb[std::to_string(j2)] = rat_to_string(b);
  for (auto& [ij, e] : pd.paired)
    if (e != 0)
      pr[std::to_string(ij.first) + "," + std::to_string(ij.second)] = rat_to_string(e);
  return {{"p", pd.p},
          {"q", pd.q},
          {"pure_alpha", pa},
          {"pure_beta", pb},
          {"paired", pr},
          {"witness", {pd.witness.first, pd.witness.second}}};
}

json tree_decomposition_to_json(const TreeDecomposition& td) {
  json out = json::object();
  for (auto& [key, mass] : td.eta) {
    std::string s;
    for (size_t i = 0; i < key.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(key[i]);
    }
    out[s] = rat_to_string(mass);
  }
  return out;
}

}  // namespace qstab
