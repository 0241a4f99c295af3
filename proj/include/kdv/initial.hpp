#pragma once

#include <iosfwd>
#include <string>

#include "kdv/types.hpp"

namespace kdv {

enum class InitialKind { Soliton, TwoSoliton, Cosine, File };

/// Initial-condition recipe. Amplitude 0 with kind Soliton yields the zero
/// field (the A -> 0 limit).
struct InitialCondition {
  InitialKind kind = InitialKind::Soliton;
  double amplitude = 0.5;
  double center = 0.0;
  double amplitude2 = 0.25;
  double center2 = 10.0;
  std::string path;
};

struct InitialData {
  Field u;
  MassConstant mass;
};

/// u0 on the grid plus c = h*sum(u0), the periodic trapezoid rule.
InitialData make_initial(const InitialCondition& ic, const KdVParams& params,
                         const Discretization& grid);

/// One real per line, exactly n lines. Blank lines count as bad records;
/// ParseError::line() is the 1-based position of the first bad record.
Field read_field(std::istream& in, int n);
Field read_field_file(const std::string& path, int n);

}  // namespace kdv
