#include "cubecx/rational.hpp"

#include "cubecx/error.hpp"

namespace cubecx {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int q(s.substr(slash + 1));
    if (q == 0) throw PreconditionError("zero denominator in '" + s + "'");
    return Rational(Int(s.substr(0, slash)), q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw PreconditionError("not a rational: '" + s + "'");
  }
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const Int& i) { return i.str(); }

}  // namespace cubecx
