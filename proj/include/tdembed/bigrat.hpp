#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "tdembed/errors.hpp"

namespace tdembed {

using Int = boost::multiprecision::cpp_int;
// cpp_rational keeps lowest terms with positive denominator, which is exactly
// the canonical form the scalar layer relies on.
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rat rat_parse(const std::string& s) {
  if (s.empty()) fail(Errc::FormatError, "empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) fail(Errc::FormatError, "zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::FormatError, "bad rational '" + s + "'");
  }
}

}  // namespace tdembed
