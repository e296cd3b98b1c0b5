#ifndef QSTAB_RATIONAL_HPP
#define QSTAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qstab {

// Exact arbitrary-precision rational, kept in canonical form (gcd 1,
// positive denominator) by the backend.  Expression templates are switched
// off so Rat behaves as a plain value type in generic code.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign(const Rat& x) { return x.sign(); }

inline Rat rat_from_string(const std::string& s) {
  try {
    Rat r(s);
    return r;
  } catch (const std::exception&) {
    throw ValidationError("malformed rational: '" + s + "'");
  }
}

// "a" when the denominator is 1, "a/b" otherwise.
inline std::string rat_to_string(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace qstab

#endif
