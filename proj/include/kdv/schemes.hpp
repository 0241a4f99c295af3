#pragma once

#include <memory>

#include "kdv/config.hpp"
#include "kdv/initial.hpp"
#include "kdv/iteration.hpp"
#include "kdv/types.hpp"

namespace kdv {

/// Uniform stepping interface over every scheme. Multi-level schemes handle
/// their own bootstrap on the first advance().
class Stepper {
 public:
  virtual ~Stepper() = default;

  /// Moves to the next time level. Throws DivergenceError or BlowupError.
  virtual void advance() = 0;
  /// u at the current level.
  virtual const Field& u() const = 0;

  long steps_done() const noexcept { return steps_; }
  /// Iterations and last difference of the latest implicit solve; zero for
  /// explicit updates.
  const IterationStats& last_stats() const noexcept { return stats_; }

 protected:
  long steps_ = 0;
  IterationStats stats_;
};

/// Builds the stepper for cfg.scheme from the initial data. Throws
/// ConfigError, SingularityError or DegenerateSystemError (monolithic
/// Preissman without an anchor).
std::unique_ptr<Stepper> make_stepper(const RunConfig& cfg,
                                      const InitialData& init);

}  // namespace kdv
