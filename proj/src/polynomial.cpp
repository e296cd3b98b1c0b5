#include "qstab/polynomial.hpp"

#include <algorithm>

namespace qstab {

RatPoly::RatPoly(Rat constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

RatPoly::RatPoly(std::vector<Rat> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
  strip();
}

RatPoly RatPoly::x() { return RatPoly(std::vector<Rat>{Rat(0), Rat(1)}); }

void RatPoly::strip() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat RatPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rat(0);
  return coeffs_[static_cast<size_t>(k)];
}

Rat RatPoly::leading_coeff() const {
  return coeffs_.empty() ? Rat(0) : coeffs_.back();
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> c(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator-() const {
  std::vector<Rat> c(coeffs_);
  for (auto& v : c) v = -v;
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rat> c(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::scaled(const Rat& c) const {
  std::vector<Rat> v(coeffs_);
  for (auto& x : v) x *= c;
  return RatPoly(std::move(v));
}

Rat RatPoly::eval(const Rat& x0) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x0 + *it;
  return acc;
}

std::string RatPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    Rat c = coeff(k);
    if (c == 0) continue;
    if (!out.empty()) {
      out += c > 0 ? " + " : " - ";
      c = rat_abs(c);
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    if (k == 0 || c != 1) out += rat_to_string(c);
    if (k >= 1) {
      if (c != 1 && k >= 1) out += "*";
      out += "x";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

Ordering lex_compare(const RatPoly& p, const RatPoly& q) {
  const int s = sign((p - q).leading_coeff());
  if (s < 0) return Ordering::Less;
  if (s > 0) return Ordering::Greater;
  return Ordering::Equal;
}

}  // namespace qstab
