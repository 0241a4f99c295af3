#include "kdv/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>

#include "kdv/errors.hpp"

namespace kdv {

namespace {

constexpr std::array<std::pair<SchemeKind, std::string_view>, 11> kSchemes{{
    {SchemeKind::Preissman, "preissman"},
    {SchemeKind::PreissmanMonolithic, "preissman-monolithic"},
    {SchemeKind::Pq, "pq"},
    {SchemeKind::PqExplicit, "pq-explicit"},
    {SchemeKind::Z, "z"},
    {SchemeKind::ZExplicit, "z-explicit"},
    {SchemeKind::ZExplicitUnstable, "z-explicit-unstable"},
    {SchemeKind::Eight, "eight"},
    {SchemeKind::EightExplicit, "eight-explicit"},
    {SchemeKind::Twelve, "twelve"},
    {SchemeKind::Zk, "zk"},
}};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for '" +
                        std::string(key) + "': expected " +
                        std::string(expected),
                    std::string(key));
}

double to_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    bad_value(key, v, "a real number");
  return x;
}

long to_long(std::string_view key, std::string_view v) {
  long x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    bad_value(key, v, "an integer");
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "true or false");
}

BoundaryAnchor to_anchor(std::string_view key, std::string_view v) {
  const auto colon = v.find(':');
  if (colon == std::string_view::npos) bad_value(key, v, "INDEX:VALUE, e.g. 1:0");
  BoundaryAnchor a;
  a.index = static_cast<int>(to_long(key, v.substr(0, colon)));
  a.value = to_double(key, v.substr(colon + 1));
  return a;
}

InitialKind to_ic(std::string_view key, std::string_view v) {
  if (v == "soliton") return InitialKind::Soliton;
  if (v == "two-soliton") return InitialKind::TwoSoliton;
  if (v == "cosine") return InitialKind::Cosine;
  if (v == "file") return InitialKind::File;
  bad_value(key, v, "soliton, two-soliton, cosine or file");
}

std::string_view ic_name(InitialKind k) {
  switch (k) {
    case InitialKind::Soliton: return "soliton";
    case InitialKind::TwoSoliton: return "two-soliton";
    case InitialKind::Cosine: return "cosine";
    case InitialKind::File: return "file";
  }
  return "soliton";
}

[[noreturn]] void invalid(const std::string& what, const char* key) {
  throw ConfigError(what, key);
}

}  // namespace

std::string_view scheme_name(SchemeKind s) {
  for (auto& [k, name] : kSchemes)
    if (k == s) return name;
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  for (auto& [k, n] : kSchemes)
    if (n == name) return k;
  std::string list;
  for (auto& [k, n] : kSchemes) list += (list.empty() ? "" : ", ") + std::string(n);
  throw ConfigError("unknown scheme '" + std::string(name) + "' (one of: " +
                        list + ")",
                    "scheme");
}

const std::vector<SchemeKind>& all_schemes() {
  static const std::vector<SchemeKind> v = [] {
    std::vector<SchemeKind> out;
    for (auto& [k, n] : kSchemes) out.push_back(k);
    return out;
  }();
  return v;
}

bool needs_odd_n(SchemeKind s) {
  switch (s) {
    case SchemeKind::Eight:
    case SchemeKind::EightExplicit:
    case SchemeKind::Twelve:
    case SchemeKind::Zk:
      return false;
    default:
      return true;
  }
}

void RunConfig::validate() const {
  if (params.delta == 0.0) invalid("delta must be nonzero", "delta");
  if (!(params.xmax > params.xmin)) invalid("xmax must exceed xmin", "xmax");
  if (n < 3) invalid("n must be at least 3", "n");
  if (!(tau > 0.0)) invalid("tau must be positive", "tau");
  if (steps < 0) invalid("steps must be non-negative", "steps");
  if (snapshot_every < 1) invalid("snapshot-every must be at least 1", "snapshot-every");
  if (!(ctl.tol > 0.0)) invalid("tol must be positive", "tol");
  if (ctl.max_iter < 1) invalid("max-iter must be at least 1", "max-iter");
  if (!(ctl.divergence_threshold > 0.0))
    invalid("divergence-threshold must be positive", "divergence-threshold");
  if (anchor.index < 1 || anchor.index > n)
    invalid("anchor index must lie in [1, n]", "anchor");
  if (needs_odd_n(scheme) && n % 2 == 0)
    throw ConfigError("scheme '" + std::string(scheme_name(scheme)) +
                          "' needs an odd number of grid points (A is singular "
                          "for even n); got n = " + std::to_string(n),
                      "n");
  if (!needs_odd_n(scheme) && n < (scheme == SchemeKind::Zk ? 5 : 4))
    invalid("n too small for the stencil", "n");
  if ((ic.kind == InitialKind::Soliton || ic.kind == InitialKind::TwoSoliton) &&
      params.eta * ic.amplitude < 0.0)
    invalid("soliton needs eta*amplitude > 0", "amplitude");
  if (ic.kind == InitialKind::TwoSoliton && params.eta * ic.amplitude2 < 0.0)
    invalid("soliton needs eta*amplitude2 > 0", "amplitude2");
  if (ic.kind == InitialKind::File && ic.path.empty())
    invalid("ic=file needs ic-file", "ic-file");
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s(line);
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) +
                           ": expected key=value, got '" + std::string(s) + "'",
                       lineno);
    const auto key = trim(s.substr(0, eq));
    if (key.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty key", lineno);
    if (key.starts_with("run.")) continue;
    out.emplace_back(std::string(key), std::string(trim(s.substr(eq + 1))));
  }
  return out;
}

KeyValues read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", "config");
  return parse_key_values(in);
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view v) {
  if (key == "scheme") c.scheme = parse_scheme(v);
  else if (key == "eta") c.params.eta = to_double(key, v);
  else if (key == "delta") c.params.delta = to_double(key, v);
  else if (key == "xmin") c.params.xmin = to_double(key, v);
  else if (key == "xmax") c.params.xmax = to_double(key, v);
  else if (key == "n") c.n = static_cast<int>(to_long(key, v));
  else if (key == "tau") c.tau = to_double(key, v);
  else if (key == "steps") c.steps = to_long(key, v);
  else if (key == "ic") c.ic.kind = to_ic(key, v);
  else if (key == "amplitude") c.ic.amplitude = to_double(key, v);
  else if (key == "center") c.ic.center = to_double(key, v);
  else if (key == "amplitude2") c.ic.amplitude2 = to_double(key, v);
  else if (key == "center2") c.ic.center2 = to_double(key, v);
  else if (key == "ic-file") c.ic.path = std::string(v);
  else if (key == "variant") {
    if (v == "exact") c.variant = OperatorVariant::Exact;
    else if (v == "printed") c.variant = OperatorVariant::Printed;
    else bad_value(key, v, "exact or printed");
  } else if (key == "anchor") c.anchor = to_anchor(key, v);
  else if (key == "anchored") c.anchored = to_bool(key, v);
  else if (key == "tol") c.ctl.tol = to_double(key, v);
  else if (key == "max-iter") c.ctl.max_iter = static_cast<int>(to_long(key, v));
  else if (key == "divergence-threshold") c.ctl.divergence_threshold = to_double(key, v);
  else if (key == "snapshot-every") c.snapshot_every = to_long(key, v);
  else if (key == "out") c.out = std::string(v);
  else
    throw ConfigError("unknown configuration key '" + std::string(key) + "'",
                      std::string(key));
}

void apply_settings(RunConfig& cfg, const KeyValues& kv) {
  for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
}

std::string format_double(double x) {
  std::array<char, 64> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), p);
}

KeyValues to_key_values(const RunConfig& c) {
  const auto d = format_double;
  KeyValues kv{
      {"scheme", std::string(scheme_name(c.scheme))},
      {"eta", d(c.params.eta)},
      {"delta", d(c.params.delta)},
      {"xmin", d(c.params.xmin)},
      {"xmax", d(c.params.xmax)},
      {"n", std::to_string(c.n)},
      {"tau", d(c.tau)},
      {"steps", std::to_string(c.steps)},
      {"ic", std::string(ic_name(c.ic.kind))},
      {"amplitude", d(c.ic.amplitude)},
      {"center", d(c.ic.center)},
      {"amplitude2", d(c.ic.amplitude2)},
      {"center2", d(c.ic.center2)},
  };
  if (!c.ic.path.empty()) kv.emplace_back("ic-file", c.ic.path);
  kv.emplace_back("variant", c.variant == OperatorVariant::Exact ? "exact" : "printed");
  kv.emplace_back("anchor", std::to_string(c.anchor.index) + ":" + d(c.anchor.value));
  kv.emplace_back("anchored", c.anchored ? "true" : "false");
  kv.emplace_back("tol", d(c.ctl.tol));
  kv.emplace_back("max-iter", std::to_string(c.ctl.max_iter));
  kv.emplace_back("divergence-threshold", d(c.ctl.divergence_threshold));
  kv.emplace_back("snapshot-every", std::to_string(c.snapshot_every));
  if (!c.out.empty()) kv.emplace_back("out", c.out);
  return kv;
}

}  // namespace kdv
