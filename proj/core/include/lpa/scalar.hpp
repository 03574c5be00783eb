#pragma once

#include <gmpxx.h>

#include <string>

namespace lpa {

/// Exact rational coefficient, always kept in canonical (reduced) form.
using Scalar = mpq_class;

Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& s);

}  // namespace lpa
