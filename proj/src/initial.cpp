#include "kdv/initial.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kdv/errors.hpp"
#include "kdv/soliton.hpp"

namespace kdv {
namespace {

Field soliton_or_zero(const KdVParams& params, double amplitude, double x0,
                      const Discretization& grid) {
  if (amplitude == 0.0) return Field(grid.n(), 0.0);
  return analytic_one_soliton(params, amplitude, x0, 0.0, grid);
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace

InitialData make_initial(const InitialCondition& ic, const KdVParams& params,
                         const Discretization& grid) {
  Field u;
  switch (ic.kind) {
    case InitialKind::Soliton:
      u = soliton_or_zero(params, ic.amplitude, ic.center, grid);
      break;
    case InitialKind::TwoSoliton: {
      u = soliton_or_zero(params, ic.amplitude, ic.center, grid);
      const auto second =
          soliton_or_zero(params, ic.amplitude2, ic.center2, grid);
      for (int i = 0; i < grid.n(); ++i) u[i] += second[i];
      break;
    }
    case InitialKind::Cosine:
      u.resize(grid.n());
      for (int i = 0; i < grid.n(); ++i)
        u[i] = std::cos(std::numbers::pi * grid.x(i));
      break;
    case InitialKind::File:
      u = read_field_file(ic.path, grid.n());
      break;
  }
  return {u, MassConstant{discrete_mass(u, grid.h())}};
}

Field read_field(std::istream& in, int n) {
  Field u;
  u.reserve(n);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno > n)
      throw ParseError("more than " + std::to_string(n) + " records", lineno);
    const auto tok = trim(line);
    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size() ||
        !std::isfinite(value))
      throw ParseError("bad record at line " + std::to_string(lineno) + ": '" +
                           std::string(tok) + "'",
                       lineno);
    u.push_back(value);
  }
  if (static_cast<int>(u.size()) != n)
    throw ParseError("expected " + std::to_string(n) + " records, found " +
                         std::to_string(u.size()),
                     lineno + 1);
  return u;
}

Field read_field_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open initial-condition file " + path, 0);
  return read_field(in, n);
}

}  // namespace kdv
