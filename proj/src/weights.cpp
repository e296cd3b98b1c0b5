#include "qstab/weights.hpp"

#include <algorithm>

namespace qstab {

WeightVector::WeightVector(std::vector<Rat> v) : entries_(std::move(v)) {
  Rat sum(0);
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && entries_[i] < entries_[i - 1])
      throw PreconditionError("weight vector not ascending");
    sum += entries_[i];
  }
  if (sum != 0) throw PreconditionError("weight vector does not sum to zero");
}

WeightVector WeightVector::trivial(int p) {
  return WeightVector(std::vector<Rat>(static_cast<size_t>(p), Rat(0)));
}

WeightVector WeightVector::step(int p, int j) {
  if (j < 0 || j > p)
    throw PreconditionError("step vector index out of range 0..p");
  if (j == 0 || j == p) return trivial(p);
  std::vector<Rat> v(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i)
    v[static_cast<size_t>(i)] = (i < j) ? Rat(j - p) : Rat(j);
  return WeightVector(std::move(v));
}

bool WeightVector::is_trivial() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rat& x) { return x == 0; });
}

WeightVector WeightVector::scaled(const Rat& c) const {
  if (c < 0) throw PreconditionError("negative scaling would reverse order");
  std::vector<Rat> v(entries_);
  for (auto& x : v) x *= c;
  return WeightVector(std::move(v));
}

WeightVector WeightVector::plus(const WeightVector& o) const {
  if (dim() != o.dim()) throw PreconditionError("dimension mismatch");
  std::vector<Rat> v(entries_);
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.entries_[i];
  return WeightVector(std::move(v));  // ctor rejects unsorted sums
}

std::vector<Rat> step_decompose(const WeightVector& gamma) {
  const int p = gamma.dim();
  std::vector<Rat> c;
  c.reserve(static_cast<size_t>(std::max(0, p - 1)));
  for (int j = 0; j + 1 < p; ++j) c.push_back((gamma[j + 1] - gamma[j]) / p);
  return c;
}

HomPoint::HomPoint(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0) throw ValidationError("negative dimension");
  m_.assign(static_cast<size_t>(p) * static_cast<size_t>(q), Rat(0));
}

HomPoint HomPoint::from_rows(const std::vector<std::vector<Rat>>& rows) {
  const int q = static_cast<int>(rows.size());
  const int p = q == 0 ? 0 : static_cast<int>(rows[0].size());
  HomPoint f(p, q);
  for (int j = 1; j <= q; ++j) {
    if (static_cast<int>(rows[static_cast<size_t>(j - 1)].size()) != p)
      throw ValidationError("ragged matrix rows");
    for (int i = 1; i <= p; ++i)
      f.set(i, j, rows[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)]);
  }
  return f;
}

const Rat& HomPoint::at(int i, int j) const {
  if (i < 1 || i > p_ || j < 1 || j > q_)
    throw ValidationError("HomPoint index out of range");
  return m_[static_cast<size_t>(j - 1) * static_cast<size_t>(p_) +
            static_cast<size_t>(i - 1)];
}

void HomPoint::set(int i, int j, Rat value) {
  if (i < 1 || i > p_ || j < 1 || j > q_)
    throw ValidationError("HomPoint index out of range");
  m_[static_cast<size_t>(j - 1) * static_cast<size_t>(p_) +
     static_cast<size_t>(i - 1)] = std::move(value);
}

bool HomPoint::is_zero() const {
  return std::all_of(m_.begin(), m_.end(), [](const Rat& x) { return x == 0; });
}

std::vector<std::pair<int, int>> HomPoint::support() const {
  std::vector<std::pair<int, int>> s;
  for (int j = 1; j <= q_; ++j)
    for (int i = 1; i <= p_; ++i)
      if (at(i, j) != 0) s.emplace_back(i, j);
  return s;
}

Rat mu_hom(const HomPoint& f, const WeightVector& delta,
           const WeightVector& gamma) {
  if (delta.dim() != f.p() || gamma.dim() != f.q())
    throw PreconditionError("mu_hom: weight vector dimension mismatch");
  bool first = true;
  Rat best(0);
  for (int j = 1; j <= f.q(); ++j)
    for (int i = 1; i <= f.p(); ++i) {
      if (f.at(i, j) == 0) continue;
      Rat w = gamma[j - 1] - delta[i - 1];
      if (first || w > best) {
        best = std::move(w);
        first = false;
      }
    }
  if (first) throw DegeneratePointError("mu_hom: zero matrix");
  return best;
}

void TuplePoint::validate() const {
  if (static_cast<int>(dims.size()) != quiver.n)
    throw ValidationError("TuplePoint: dims size != vertex count");
  if (maps.size() != quiver.arrows.size())
    throw ValidationError("TuplePoint: one map per arrow required");
  for (size_t k = 0; k < maps.size(); ++k) {
    const Arrow& a = quiver.arrows[k];
    if (maps[k].p() != dims[static_cast<size_t>(a.tail - 1)] ||
        maps[k].q() != dims[static_cast<size_t>(a.head - 1)])
      throw ValidationError("TuplePoint: map shape mismatch on arrow (" +
                            std::to_string(a.tail) + "," +
                            std::to_string(a.head) + ")");
    if (maps[k].is_zero())
      throw DegeneratePointError("TuplePoint: zero map on arrow (" +
                                 std::to_string(a.tail) + "," +
                                 std::to_string(a.head) + ")");
  }
}

void MultiIndex::validate(const std::vector<int>& dims) const {
  if (j.size() != dims.size())
    throw ValidationError("multi-index length != vertex count");
  for (size_t i = 0; i < j.size(); ++i)
    if (j[i] < 0 || j[i] > dims[i])
      throw ValidationError("multi-index entry out of range at vertex " +
                            std::to_string(i + 1));
}

Rat factor_mu(const FactorTable& table, const WeightVector& lambda) {
  bool first = true;
  Rat best(0);
  for (const auto& row : table.rows) {
    if (!row.nonzero) continue;
    if (static_cast<int>(row.functional.size()) != lambda.dim())
      throw PreconditionError("factor table functional dimension mismatch");
    Rat w(0);
    for (int k = 0; k < lambda.dim(); ++k) w += row.functional[static_cast<size_t>(k)] * lambda[k];
    if (first || w > best) {
      best = std::move(w);
      first = false;
    }
  }
  if (first) throw DegeneratePointError("factor table: all coordinates vanish");
  return best;
}

Rat mu_linearized(const TuplePoint& point,
                  const std::vector<std::optional<FactorTable>>& factors,
                  const std::vector<WeightVector>& lambda,
                  const std::vector<Rat>& l, const std::vector<Rat>& b) {
  point.validate();
  const int n = point.quiver.n;
  if (static_cast<int>(lambda.size()) != n ||
      static_cast<int>(l.size()) != n ||
      b.size() != point.quiver.arrows.size())
    throw PreconditionError("mu_linearized: parameter shape mismatch");
  Rat total(0);
  for (int i = 0; i < n; ++i) {
    if (l[static_cast<size_t>(i)] == 0) continue;
    if (static_cast<size_t>(i) >= factors.size() || !factors[static_cast<size_t>(i)])
      throw PreconditionError("mu_linearized: missing factor table at vertex " +
                              std::to_string(i + 1));
    total += l[static_cast<size_t>(i)] *
             factor_mu(*factors[static_cast<size_t>(i)], lambda[static_cast<size_t>(i)]);
  }
  for (size_t k = 0; k < point.quiver.arrows.size(); ++k) {
    const Arrow& a = point.quiver.arrows[k];
    total += b[k] * mu_hom(point.maps[k], lambda[static_cast<size_t>(a.tail - 1)],
                           lambda[static_cast<size_t>(a.head - 1)]);
  }
  return total;
}

bool flag_compatible(const HomPoint& f, int jt, int jh) {
  // f(V^(jt)) in W^(jh) iff no support entry has column <= jt and row > jh.
  for (int j = jh + 1; j <= f.q(); ++j)
    for (int i = 1; i <= jt; ++i)
      if (f.at(i, j) != 0) return false;
  return true;
}

FlagWeightReport flag_weight(const TuplePoint& point, const MultiIndex& mi,
                             const std::vector<Rat>& b) {
  point.validate();
  mi.validate(point.dims);
  if (b.size() != point.quiver.arrows.size())
    throw PreconditionError("flag_weight: one b per arrow required");

  FlagWeightReport rep;
  rep.closed_form = Rat(0);
  rep.exact_mu = Rat(0);
  for (size_t k = 0; k < point.quiver.arrows.size(); ++k) {
    const Arrow& a = point.quiver.arrows[k];
    const int pt = point.dims[static_cast<size_t>(a.tail - 1)];
    const int ph = point.dims[static_cast<size_t>(a.head - 1)];
    const int jt = mi.j[static_cast<size_t>(a.tail - 1)];
    const int jh = mi.j[static_cast<size_t>(a.head - 1)];
    if (!flag_compatible(point.maps[k], jt, jh))
      throw PreconditionError("flag_weight: incompatible flag on arrow (" +
                              std::to_string(a.tail) + "," +
                              std::to_string(a.head) + ")");
    rep.closed_form += b[k] * (Rat(jh) / ph - Rat(jt) / pt);
    WeightVector dt = WeightVector::step(pt, jt).scaled(Rat(1, pt));
    WeightVector dh = WeightVector::step(ph, jh).scaled(Rat(1, ph));
    rep.exact_mu += b[k] * mu_hom(point.maps[k], dt, dh);
  }
  rep.equal = (rep.exact_mu == rep.closed_form);
  return rep;
}

AdditivityReport check_additivity(const HomPoint& f, const WeightVector& delta,
                                  const WeightVector& gamma,
                                  const WeightVector& delta2,
                                  const WeightVector& gamma2) {
  AdditivityReport rep;
  rep.mu_first = mu_hom(f, delta, gamma);
  rep.mu_second = mu_hom(f, delta2, gamma2);
  rep.mu_product = mu_hom(f, delta.plus(delta2), gamma.plus(gamma2));
  rep.additive = (rep.mu_product == rep.mu_first + rep.mu_second);
  return rep;
}

}  // namespace qstab
