#ifndef QSTAB_LINALG_HPP
#define QSTAB_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qstab/rational.hpp"

namespace qstab {

// Field of exact rationals.
struct RatField {
  using Elem = Rat;
  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  Elem from_int(long long v) const { return Rat(v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw PreconditionError("division by zero");
    return Rat(1) / a;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
};

// F_p for a small prime p; elements are canonical representatives 0..p-1.
struct PrimeField {
  std::int64_t p = 2;
  using Elem = std::int64_t;
  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(long long v) const {
    Elem r = v % p;
    return r < 0 ? r + p : r;
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return ((a - b) % p + p) % p; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return (p - a) % p; }
  Elem inv(Elem a) const {
    if (a % p == 0) throw PreconditionError("division by zero in F_p");
    // extended Euclid
    Elem t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      Elem qq = r / newr;
      t = std::exchange(newt, t - qq * newt);
      r = std::exchange(newr, r - qq * newr);
    }
    return from_int(t);
  }
  bool is_zero(Elem a) const { return a % p == 0; }
};

// Dense matrix with 0-based indexing; a map E_t -> E_h is (dim_h x dim_t)
// acting on column vectors.  Subspaces are stored as reduced row echelon
// bases, one basis vector per row.
template <class E>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<E> a;

  Mat() = default;
  Mat(int r, int c, E fill) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), fill) {}
  E& at(int r, int c) { return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)]; }
  const E& at(int r, int c) const { return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)]; }
  friend bool operator==(const Mat&, const Mat&) = default;
};

template <class F>
Mat<typename F::Elem> mat_identity(const F& f, int d) {
  Mat<typename F::Elem> m(d, d, f.zero());
  for (int i = 0; i < d; ++i) m.at(i, i) = f.one();
  return m;
}

template <class F>
Mat<typename F::Elem> mat_mul(const F& f, const Mat<typename F::Elem>& A,
                              const Mat<typename F::Elem>& B) {
  if (A.cols != B.rows) throw PreconditionError("mat_mul: shape mismatch");
  Mat<typename F::Elem> C(A.rows, B.cols, f.zero());
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (f.is_zero(A.at(i, k))) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = f.add(C.at(i, j), f.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

// In-place reduced row echelon form; returns the pivot columns.
template <class F>
std::vector<int> rref(const F& f, Mat<typename F::Elem>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!f.is_zero(m.at(i, c))) { sel = i; break; }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    const auto iv = f.inv(m.at(r, c));
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), iv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      const auto factor = m.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;  // keep only the nonzero rows
  m.a.resize(static_cast<size_t>(r) * static_cast<size_t>(m.cols));
  return pivots;
}

template <class F>
int mat_rank(const F& f, Mat<typename F::Elem> m) {
  return static_cast<int>(rref(f, m).size());
}

// Right null space of A, returned as a row basis (each row a kernel vector).
template <class F>
Mat<typename F::Elem> kernel_basis(const F& f, Mat<typename F::Elem> A) {
  const int n = A.cols;
  std::vector<int> pivots = rref(f, A);
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  Mat<typename F::Elem> K(0, n, f.zero());
  for (int c = 0; c < n; ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    Mat<typename F::Elem> row(1, n, f.zero());
    row.at(0, c) = f.one();
    for (size_t r = 0; r < pivots.size(); ++r)
      row.at(0, pivots[r]) = f.neg(A.at(static_cast<int>(r), c));
    K.a.insert(K.a.end(), row.a.begin(), row.a.end());
    ++K.rows;
  }
  rref(f, K);
  return K;
}

// Column space of A as a row basis.
template <class F>
Mat<typename F::Elem> image_basis(const F& f, const Mat<typename F::Elem>& A) {
  Mat<typename F::Elem> T(A.cols, A.rows, f.zero());
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  rref(f, T);
  return T;
}

template <class F>
std::optional<Mat<typename F::Elem>> mat_inverse(const F& f,
                                                 const Mat<typename F::Elem>& A) {
  if (A.rows != A.cols) return std::nullopt;
  const int d = A.rows;
  Mat<typename F::Elem> aug(d, 2 * d, f.zero());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, d + i) = f.one();
  }
  std::vector<int> piv = rref(f, aug);
  if (static_cast<int>(piv.size()) != d || piv.back() != d - 1) return std::nullopt;
  Mat<typename F::Elem> inv(d, d, f.zero());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv.at(i, j) = aug.at(i, d + j);
  return inv;
}

// Subspaces as canonical RREF row bases.
template <class E>
struct Subspace {
  Mat<E> basis;  // rows span the space; RREF
  int dim() const { return basis.rows; }
  int ambient() const { return basis.cols; }
  friend bool operator==(const Subspace&, const Subspace&) = default;
};

template <class F>
Subspace<typename F::Elem> span_rows(const F& f, Mat<typename F::Elem> rows) {
  rref(f, rows);
  return {rows};
}

template <class F>
Subspace<typename F::Elem> zero_subspace(const F& f, int ambient) {
  return {Mat<typename F::Elem>(0, ambient, f.zero())};
}

template <class F>
Subspace<typename F::Elem> full_subspace(const F& f, int ambient) {
  return {mat_identity(f, ambient)};
}

template <class F>
bool contains_vector(const F& f, const Subspace<typename F::Elem>& U,
                     std::vector<typename F::Elem> v) {
  const Mat<typename F::Elem>& B = U.basis;
  int r = 0;
  for (int c = 0; c < B.cols; ++c) {
    if (r < B.rows && !f.is_zero(B.at(r, c))) {
      // pivot column of row r
      const auto factor = v[static_cast<size_t>(c)];
      if (!f.is_zero(factor))
        for (int j = 0; j < B.cols; ++j)
          v[static_cast<size_t>(j)] = f.sub(v[static_cast<size_t>(j)], f.mul(factor, B.at(r, j)));
      ++r;
    }
  }
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
bool subspace_leq(const F& f, const Subspace<typename F::Elem>& U,
                  const Subspace<typename F::Elem>& W) {
  for (int i = 0; i < U.basis.rows; ++i) {
    std::vector<typename F::Elem> v(static_cast<size_t>(U.basis.cols));
    for (int j = 0; j < U.basis.cols; ++j) v[static_cast<size_t>(j)] = U.basis.at(i, j);
    if (!contains_vector(f, W, std::move(v))) return false;
  }
  return true;
}

// Image of the subspace under the column-vector map A (rows of the result
// live in the target space).
template <class F>
Subspace<typename F::Elem> map_subspace(const F& f, const Mat<typename F::Elem>& A,
                                        const Subspace<typename F::Elem>& U) {
  Mat<typename F::Elem> rows(U.basis.rows, A.rows, f.zero());
  for (int i = 0; i < U.basis.rows; ++i)
    for (int r = 0; r < A.rows; ++r) {
      auto acc = f.zero();
      for (int c = 0; c < A.cols; ++c)
        acc = f.add(acc, f.mul(A.at(r, c), U.basis.at(i, c)));
      rows.at(i, r) = acc;
    }
  return span_rows(f, std::move(rows));
}

template <class F>
Subspace<typename F::Elem> subspace_sum(const F& f,
                                        const Subspace<typename F::Elem>& U,
                                        const Subspace<typename F::Elem>& W) {
  Mat<typename F::Elem> rows(U.basis.rows + W.basis.rows, U.basis.cols, f.zero());
  for (int i = 0; i < U.basis.rows; ++i)
    for (int j = 0; j < U.basis.cols; ++j) rows.at(i, j) = U.basis.at(i, j);
  for (int i = 0; i < W.basis.rows; ++i)
    for (int j = 0; j < W.basis.cols; ++j) rows.at(U.basis.rows + i, j) = W.basis.at(i, j);
  return span_rows(f, std::move(rows));
}

template <class F>
Subspace<typename F::Elem> subspace_intersection(const F& f,
                                                 const Subspace<typename F::Elem>& U,
                                                 const Subspace<typename F::Elem>& W) {
  // Kernel vectors (c, e) of [U^T | W^T] give c.U = -e.W in the intersection.
  const int d = U.basis.cols;
  const int ku = U.basis.rows, kw = W.basis.rows;
  Mat<typename F::Elem> M(d, ku + kw, f.zero());
  for (int i = 0; i < ku; ++i)
    for (int j = 0; j < d; ++j) M.at(j, i) = U.basis.at(i, j);
  for (int i = 0; i < kw; ++i)
    for (int j = 0; j < d; ++j) M.at(j, ku + i) = W.basis.at(i, j);
  Mat<typename F::Elem> K = kernel_basis(f, M);
  Mat<typename F::Elem> rows(K.rows, d, f.zero());
  for (int i = 0; i < K.rows; ++i)
    for (int j = 0; j < d; ++j) {
      auto acc = f.zero();
      for (int t = 0; t < ku; ++t)
        acc = f.add(acc, f.mul(K.at(i, t), U.basis.at(t, j)));
      rows.at(i, j) = acc;
    }
  return span_rows(f, std::move(rows));
}

// Number of subspaces of F_p^d (sum of Gaussian binomials), exact.
BigInt subspace_count(std::int64_t p, int d);

// All subspaces of F_p^d in a fixed deterministic order: by dimension, then
// pivot columns, then free entries.
std::vector<Subspace<std::int64_t>> all_subspaces(const PrimeField& f, int d);

}  // namespace qstab

#endif
