#include "lpa/scalar.hpp"

#include "lpa/graph.hpp"

namespace lpa {

Scalar parse_scalar(const std::string& text) {
  Scalar s;
  if (text.empty() || s.set_str(text, 10) != 0) throw Error("malformed rational literal '" + text + "'");
  if (s.get_den() == 0) throw Error("zero denominator in '" + text + "'");
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) { return s.get_str(10); }

}  // namespace lpa
