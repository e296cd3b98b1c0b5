#ifndef QSTAB_POLYNOMIAL_HPP
#define QSTAB_POLYNOMIAL_HPP

#include <compare>
#include <string>
#include <vector>

#include "qstab/rational.hpp"

namespace qstab {

// Rational-coefficient polynomial, dense ascending coefficients, trailing
// zeros stripped.  Carries the lexicographic order used for stability
// comparisons: p > q iff the leading coefficient of p - q is positive.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(Rat constant);
  explicit RatPoly(std::vector<Rat> ascending_coeffs);

  static RatPoly x();  // the monomial x

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for 0
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(int k) const;          // 0 beyond the stored range
  Rat leading_coeff() const;       // 0 for the zero polynomial

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator-() const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly scaled(const Rat& c) const;
  bool operator==(const RatPoly& o) const { return coeffs_ == o.coeffs_; }

  Rat eval(const Rat& x0) const;   // exact Horner

  std::string to_string() const;   // e.g. "3x^2 + 1/2"

 private:
  void strip();
  std::vector<Rat> coeffs_;
};

enum class Ordering { Less, Equal, Greater };

// Lexicographic comparison: sign of the leading coefficient of p - q.
Ordering lex_compare(const RatPoly& p, const RatPoly& q);

inline bool lex_less(const RatPoly& p, const RatPoly& q) {
  return lex_compare(p, q) == Ordering::Less;
}
inline bool lex_positive(const RatPoly& p) {
  return !p.is_zero() && p.leading_coeff() > 0;
}
inline bool lex_negative(const RatPoly& p) {
  return !p.is_zero() && p.leading_coeff() < 0;
}

}  // namespace qstab

#endif
