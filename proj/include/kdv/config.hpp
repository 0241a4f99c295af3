#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kdv/initial.hpp"
#include "kdv/iteration.hpp"
#include "kdv/preissman.hpp"
#include "kdv/reduced_operators.hpp"
#include "kdv/types.hpp"

namespace kdv {

enum class SchemeKind {
  Preissman,
  PreissmanMonolithic,
  Pq,
  PqExplicit,
  Z,
  ZExplicit,
  ZExplicitUnstable,
  Eight,
  EightExplicit,
  Twelve,
  Zk,
};

std::string_view scheme_name(SchemeKind s);
/// Throws ConfigError for an unknown name.
SchemeKind parse_scheme(std::string_view name);
const std::vector<SchemeKind>& all_schemes();
/// Schemes that go through solve_A and therefore need odd n.
bool needs_odd_n(SchemeKind s);

struct RunConfig {
  SchemeKind scheme = SchemeKind::Preissman;
  KdVParams params;
  int n = 99;
  double tau = 0.04;
  long steps = 100;
  InitialCondition ic;
  OperatorVariant variant = OperatorVariant::Exact;
  BoundaryAnchor anchor;
  bool anchored = true;  // monolithic Preissman only
  IterationControl ctl;
  long snapshot_every = 10;
  std::string out;  // output directory; empty disables file output

  Discretization grid() const { return Discretization(params, n, tau); }
  /// Value and compatibility checks; throws ConfigError.
  void validate() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat `key=value` text with `#` comments and blank lines. Keys starting with
/// "run." (written by the manifest) are skipped. Throws ParseError with the
/// 1-based line number of a line without '='.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_value_file(const std::string& path);

/// Sets one kebab-case key. Throws ConfigError naming the key on an unknown
/// key or a malformed value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
void apply_settings(RunConfig& cfg, const KeyValues& kv);

/// All resolved settings in a fixed order, values in round-trip precision.
/// Feeding the result back through apply_settings reproduces the config.
KeyValues to_key_values(const RunConfig& cfg);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace kdv
