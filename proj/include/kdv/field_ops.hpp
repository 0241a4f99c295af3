#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "kdv/errors.hpp"
#include "kdv/types.hpp"

namespace kdv::ops {

// Small elementwise helpers over grid fields.

inline void require_same_size(FieldView a, FieldView b, const char* what) {
  if (a.size() != b.size())
    throw InvalidArgument(std::string(what) + ": length mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
}

/// alpha*a + beta*b
inline Field lincomb(double alpha, FieldView a, double beta, FieldView b) {
  require_same_size(a, b, "lincomb");
  Field out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = alpha * a[i] + beta * b[i];
  return out;
}

inline Field scaled(double alpha, FieldView a) {
  Field out(a.begin(), a.end());
  for (auto& x : out) x *= alpha;
  return out;
}

inline void add_in_place(Field& a, FieldView b, double beta = 1.0) {
  require_same_size(a, b, "add_in_place");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += beta * b[i];
}

inline double max_abs(FieldView a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(FieldView a, FieldView b) {
  require_same_size(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline bool all_finite(FieldView a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

/// The boundary vector (0, ..., 0, 2c) carrying the potential's jump across
/// the periodic seam.
inline Field mass_vector(int n, double c) {
  Field cv(n, 0.0);
  cv[n - 1] = 2.0 * c;
  return cv;
}

}  // namespace kdv::ops
