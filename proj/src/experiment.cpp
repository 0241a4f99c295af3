#include "kdv/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "kdv/diagnostics.hpp"
#include "kdv/errors.hpp"
#include "kdv/initial.hpp"
#include "kdv/schemes.hpp"
#include "kdv/soliton.hpp"

namespace kdv {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot write '" + p.string() + "'");
  return f;
}

class RunWriter {
 public:
  RunWriter(const RunConfig& cfg, const Discretization& grid, bool oracle)
      : grid_(grid), oracle_(oracle) {
    if (cfg.out.empty()) return;
    dir_ = cfg.out;
    std::filesystem::create_directories(*dir_);
    snaps_ = open_out(*dir_ / "snapshots.csv");
    diags_ = open_out(*dir_ / "diagnostics.csv");
    snaps_ << "t,x,u\n";
    diags_ << "step,t,mass,linf_vs_oracle,l2_vs_oracle,iterations,residual\n";
  }

  bool enabled() const { return dir_.has_value(); }

  void snapshot(double t, FieldView u) {
    if (!enabled()) return;
    const auto ts = format_double(t);
    for (int i = 0; i < grid_.n(); ++i)
      snaps_ << ts << ',' << format_double(grid_.x(i)) << ','
             << format_double(u[i]) << '\n';
    last_snapshot_t_ = t;
  }

  void diagnostic(long step, double t, double mass,
                  std::optional<FieldDistance> err, const IterationStats& st) {
    if (!enabled()) return;
    diags_ << step << ',' << format_double(t) << ',' << format_double(mass)
           << ',';
    if (err) diags_ << format_double(err->linf) << ',' << format_double(err->l2);
    else diags_ << ',';
    diags_ << ',' << st.iterations << ',' << format_double(st.residual) << '\n';
  }

  std::optional<double> last_snapshot_time() const { return last_snapshot_t_; }

  void truncate(long step, const std::string& why) {
    if (!enabled()) return;
    const std::string line =
        "# truncated after step " + std::to_string(step) + ": " + why + "\n";
    snaps_ << line;
    diags_ << line;
  }

  void manifest(const RunConfig& cfg, const RunResult& r, double mass0,
                double seconds) {
    if (!enabled()) return;
    snaps_.flush();
    diags_.flush();
    auto f = open_out(*dir_ / "manifest.txt");
    for (const auto& [k, v] : to_key_values(cfg)) f << k << '=' << v << '\n';
    f << "run.h=" << format_double(grid_.h()) << '\n'
      << "run.r=" << format_double(grid_.r()) << '\n'
      << "run.mass0=" << format_double(mass0) << '\n'
      << "run.status=" << static_cast<int>(r.status) << '\n'
      << "run.steps-completed=" << r.steps_completed << '\n'
      << "run.final-time=" << format_double(r.final_time) << '\n'
      << "run.max-relative-mass-drift="
      << format_double(r.max_relative_mass_drift) << '\n'
      << "run.truncated=" << (r.truncated ? "true" : "false") << '\n'
      << "run.wall-time-s=" << format_double(seconds) << '\n';
    std::string msg = r.message;
    for (auto& ch : msg)
      if (ch == '\n') ch = ' ';
    f << "run.message=" << msg << '\n';
  }

 private:
  Discretization grid_;
  bool oracle_;
  std::optional<std::filesystem::path> dir_;
  std::ofstream snaps_;
  std::ofstream diags_;
  std::optional<double> last_snapshot_t_;
};

bool has_oracle(const RunConfig& cfg) {
  return cfg.ic.kind == InitialKind::Soliton && cfg.ic.amplitude != 0.0;
}

}  // namespace

RunStatus status_of(const std::exception& e) {
  if (dynamic_cast<const BlowupError*>(&e)) return RunStatus::Blowup;
  if (dynamic_cast<const DivergenceError*>(&e) ||
      dynamic_cast<const DegenerateSystemError*>(&e))
    return RunStatus::Divergence;
  if (dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const SingularityError*>(&e) ||
      dynamic_cast<const SingularLinearSystemError*>(&e))
    return RunStatus::Config;
  return RunStatus::Internal;
}

RunResult run_experiment(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult result;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    return {status_of(e), e.what(), 0, 0.0, 0.0, false};
  }

  const Discretization grid = cfg.grid();
  const bool oracle = has_oracle(cfg);
  std::optional<RunWriter> writer;
  double mass0 = 0.0;
  long step = 0;
  try {
    writer.emplace(cfg, grid, oracle);
    const InitialData init = make_initial(cfg.ic, cfg.params, grid);
    mass0 = init.mass.c;
    auto error_at = [&](FieldView u, double t) -> std::optional<FieldDistance> {
      if (!oracle) return std::nullopt;
      return soliton_error(u, cfg.params, grid, cfg.ic.amplitude, cfg.ic.center, t);
    };
    auto record = [&](FieldView u, const IterationStats& st) {
      const double t = step * cfg.tau;
      const double mass = discrete_mass(u, grid.h());
      const double drift =
          std::abs(mass - mass0) / std::max(std::abs(mass0), 1e-300);
      if (mass0 != 0.0)
        result.max_relative_mass_drift = std::max(result.max_relative_mass_drift, drift);
      writer->diagnostic(step, t, mass, error_at(u, t), st);
      if (step % cfg.snapshot_every == 0 || step == cfg.steps) writer->snapshot(t, u);
    };

    auto stepper = make_stepper(cfg, init);
    record(init.u, {});
    try {
      while (step < cfg.steps) {
        stepper->advance();
        ++step;
        record(stepper->u(), stepper->last_stats());
      }
    } catch (...) {
      // Last good level goes out before the marker.
      const double t = step * cfg.tau;
      if (writer->last_snapshot_time() != t) writer->snapshot(t, stepper->u());
      throw;
    }
  } catch (const std::exception& e) {
    result.status = status_of(e);
    result.message = e.what();
    result.truncated = true;
    if (writer) writer->truncate(step, e.what());
  }
  result.steps_completed = step;
  result.final_time = step * cfg.tau;
  if (writer) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
      writer->manifest(cfg, result, mass0, secs);
    } catch (const std::exception& e) {
      result.status = RunStatus::Internal;
      result.message = e.what();
    }
  }
  return result;
}

CompareResult compare_schemes(const RunConfig& cfg, SchemeKind other,
                              const std::string& out_file) {
  CompareResult result;
  RunConfig cfg_b = cfg;
  cfg_b.scheme = other;
  try {
    cfg.validate();
    cfg_b.validate();
    const Discretization grid = cfg.grid();
    const InitialData init = make_initial(cfg.ic, cfg.params, grid);
    auto a = make_stepper(cfg, init);
    auto b = make_stepper(cfg_b, init);

    std::ofstream f;
    if (!out_file.empty()) {
      const std::filesystem::path p(out_file);
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      f = open_out(p);
      f << "step,t,linf,l2\n";
    }
    auto row = [&](long step) {
      const auto d = compare_fields(a->u(), b->u(), grid.h());
      result.max_linf = std::max(result.max_linf, d.linf);
      if (f.is_open())
        f << step << ',' << format_double(step * cfg.tau) << ','
          << format_double(d.linf) << ',' << format_double(d.l2) << '\n';
    };
    row(0);
    try {
      for (long s = 1; s <= cfg.steps; ++s) {
        a->advance();
        b->advance();
        result.steps_completed = s;
        row(s);
      }
    } catch (const std::exception& e) {
      if (f.is_open())
        f << "# truncated after step " << result.steps_completed << ": "
          << e.what() << '\n';
      throw;
    }
  } catch (const std::exception& e) {
    result.status = status_of(e);
    result.message = e.what();
  }
  return result;
}

}  // namespace kdv
