#include "kdvms/kdvms.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "kdv/config.hpp"
#include "kdv/errors.hpp"
#include "kdv/experiment.hpp"
#include "kdv/initial.hpp"
#include "kdv/preissman.hpp"
#include "kdv/schemes.hpp"

struct kdv_config {
  kdv::RunConfig cfg;
};

struct kdv_session {
  kdv::RunConfig cfg;
  double h = 0.0;
  std::unique_ptr<kdv::Stepper> stepper;
};

namespace {

thread_local std::string g_last_error;

kdv_status fail(kdv_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

kdv_status from_run(kdv::RunStatus s) {
  return static_cast<kdv_status>(static_cast<int>(s));
}

kdv_status classify(const std::exception& e) {
  if (dynamic_cast<const kdv::SingularityError*>(&e)) return KDV_SINGULAR;
  if (dynamic_cast<const std::ios_base::failure*>(&e)) return KDV_IO;
  if (dynamic_cast<const std::bad_alloc*>(&e)) return KDV_INTERNAL;
  return from_run(kdv::status_of(e));
}

template <class F>
kdv_status guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return fail(classify(e), e.what());
  } catch (...) {
    return fail(KDV_INTERNAL, "unknown error");
  }
}

kdv_status null_arg(const char* what) {
  return fail(KDV_ARGUMENT, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* kdv_last_error(void) { return g_last_error.c_str(); }

const char* kdv_version(void) { return "1.0.0"; }

kdv_status kdv_config_create(kdv_config** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new kdv_config{};
    return KDV_OK;
  });
}

void kdv_config_destroy(kdv_config* cfg) { delete cfg; }

kdv_status kdv_config_set(kdv_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_arg("config");
  if (!key || !value) return null_arg("key/value");
  return guarded([&] {
    kdv::apply_setting(cfg->cfg, key, value);
    return KDV_OK;
  });
}

kdv_status kdv_config_load_file(kdv_config* cfg, const char* path) {
  if (!cfg) return null_arg("config");
  if (!path) return null_arg("path");
  return guarded([&] {
    kdv::RunConfig copy = cfg->cfg;
    kdv::apply_settings(copy, kdv::read_key_value_file(path));
    cfg->cfg = std::move(copy);
    return KDV_OK;
  });
}

kdv_status kdv_config_get(const kdv_config* cfg, const char* key, char* buf,
                          size_t buf_size) {
  if (!cfg) return null_arg("config");
  if (!key || !buf) return null_arg("key/buf");
  return guarded([&] {
    for (const auto& [k, v] : kdv::to_key_values(cfg->cfg)) {
      if (k != key) continue;
      if (v.size() + 1 > buf_size)
        return fail(KDV_ARGUMENT, "buffer too small for '" + k + "'");
      std::memcpy(buf, v.c_str(), v.size() + 1);
      return KDV_OK;
    }
    return fail(KDV_CONFIG, std::string("no value for key '") + key + "'");
  });
}

kdv_status kdv_config_validate(const kdv_config* cfg) {
  if (!cfg) return null_arg("config");
  return guarded([&] {
    cfg->cfg.validate();
    return KDV_OK;
  });
}

kdv_status kdv_run_experiment(const kdv_config* cfg, kdv_run_summary* summary) {
  if (!cfg) return null_arg("config");
  return guarded([&] {
    const kdv::RunResult r = kdv::run_experiment(cfg->cfg);
    if (summary) {
      summary->steps_completed = r.steps_completed;
      summary->final_time = r.final_time;
      summary->max_relative_mass_drift = r.max_relative_mass_drift;
      summary->truncated = r.truncated ? 1 : 0;
    }
    if (r.status != kdv::RunStatus::Ok) return fail(from_run(r.status), r.message);
    return KDV_OK;
  });
}

kdv_status kdv_compare_schemes(const kdv_config* cfg, const char* other_scheme,
                               const char* out_path, double* max_linf) {
  if (!cfg) return null_arg("config");
  if (!other_scheme) return null_arg("other_scheme");
  return guarded([&] {
    const auto other = kdv::parse_scheme(other_scheme);
    const auto r = kdv::compare_schemes(cfg->cfg, other, out_path ? out_path : "");
    if (max_linf) *max_linf = r.max_linf;
    if (r.status != kdv::RunStatus::Ok) return fail(from_run(r.status), r.message);
    return KDV_OK;
  });
}

kdv_status kdv_session_create(const kdv_config* cfg, kdv_session** out) {
  if (!cfg) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto s = std::make_unique<kdv_session>();
    s->cfg = cfg->cfg;
    const auto grid = s->cfg.grid();
    s->h = grid.h();
    s->stepper = kdv::make_stepper(
        s->cfg, kdv::make_initial(s->cfg.ic, s->cfg.params, grid));
    *out = s.release();
    return KDV_OK;
  });
}

void kdv_session_destroy(kdv_session* s) { delete s; }

kdv_status kdv_session_step(kdv_session* s, long count) {
  if (!s) return null_arg("session");
  if (count < 0) return fail(KDV_ARGUMENT, "negative step count");
  return guarded([&] {
    for (long k = 0; k < count; ++k) s->stepper->advance();
    return KDV_OK;
  });
}

int kdv_session_size(const kdv_session* s) { return s ? s->cfg.n : 0; }

kdv_status kdv_session_get_u(const kdv_session* s, double* u, size_t len) {
  if (!s) return null_arg("session");
  if (!u) return null_arg("u");
  const auto& f = s->stepper->u();
  if (len != f.size()) return fail(KDV_ARGUMENT, "buffer length differs from n");
  std::memcpy(u, f.data(), len * sizeof(double));
  return KDV_OK;
}

double kdv_session_time(const kdv_session* s) {
  return s ? s->stepper->steps_done() * s->cfg.tau : 0.0;
}

double kdv_session_mass(const kdv_session* s) {
  return s ? kdv::discrete_mass(s->stepper->u(), s->h) : 0.0;
}

long kdv_session_steps(const kdv_session* s) {
  return s ? s->stepper->steps_done() : 0;
}

kdv_status kdv_rank_of_D(const kdv_config* cfg, int anchored, int* rank,
                         int* columns) {
  if (!cfg) return null_arg("config");
  if (!rank || !columns) return null_arg("rank/columns");
  return guarded([&] {
    const auto& c = cfg->cfg;
    const auto grid = c.grid();
    const auto D = kdv::assemble_D(
        c.params, grid,
        anchored ? std::optional<kdv::BoundaryAnchor>(c.anchor) : std::nullopt);
    *rank = kdv::rank_of(D);
    *columns = static_cast<int>(D.cols());
    if (*rank < *columns)
      return fail(KDV_DEGENERATE, "the coefficient matrix is degenerated: rank " +
                                      std::to_string(*rank) + " < " +
                                      std::to_string(*columns));
    return KDV_OK;
  });
}

}  // extern "C"
