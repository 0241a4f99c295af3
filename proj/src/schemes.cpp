#include "kdv/schemes.hpp"

#include <optional>

#include "kdv/baselines.hpp"
#include "kdv/errors.hpp"
#include "kdv/field_ops.hpp"
#include "kdv/preissman.hpp"
#include "kdv/reduced_schemes.hpp"
#include "kdv/stencil_schemes.hpp"

namespace kdv {

namespace {

class PreissmanStepper final : public Stepper {
 public:
  PreissmanStepper(const RunConfig& cfg, const InitialData& init)
      : ops_(build_reduced_operators(cfg.params, cfg.grid())),
        mass_(init.mass),
        anchor_(cfg.anchor),
        ctl_(cfg.ctl),
        state_(initialize_auxiliary(init.u, init.mass, cfg.params, cfg.grid(),
                                    cfg.anchor)) {}

  void advance() override {
    auto s = preissman_step(state_, mass_, ops_, anchor_, ctl_);
    state_ = std::move(s.state);
    stats_ = s.stats;
    ++steps_;
  }
  const Field& u() const override { return state_.u; }

 private:
  ReducedOperators ops_;
  MassConstant mass_;
  BoundaryAnchor anchor_;
  IterationControl ctl_;
  StateField state_;
};

class MonolithicStepper final : public Stepper {
 public:
  MonolithicStepper(const RunConfig& cfg, const InitialData& init)
      : solver_(cfg.params, cfg.grid(),
                cfg.anchored ? std::optional<BoundaryAnchor>(cfg.anchor)
                             : std::nullopt),
        mass_(init.mass),
        ctl_(cfg.ctl),
        state_(initialize_auxiliary(init.u, init.mass, cfg.params, cfg.grid(),
                                    cfg.anchor)) {}

  void advance() override {
    auto s = solver_.step(state_, mass_, ctl_);
    state_ = std::move(s.state);
    stats_ = s.stats;
    ++steps_;
  }
  const Field& u() const override { return state_.u; }

 private:
  MonolithicPreissman solver_;
  MassConstant mass_;
  IterationControl ctl_;
  StateField state_;
};

class PqStepper final : public Stepper {
 public:
  PqStepper(const RunConfig& cfg, const InitialData& init, bool is_explicit)
      : ops_(build_reduced_operators(cfg.params, cfg.grid())),
        mass_(init.mass),
        variant_(cfg.variant),
        ctl_(cfg.ctl),
        explicit_(is_explicit),
        state_(make_reduced_state(init.u, init.mass, cfg.grid().h())),
        u_(init.u) {}

  void advance() override {
    if (explicit_) {
      state_ = pq_step_explicit(state_, mass_, ops_, variant_, steps_ + 1);
      stats_ = {};
    } else {
      auto s = pq_step(state_, mass_, ops_, variant_, ctl_);
      state_ = std::move(s.state);
      stats_ = s.stats;
    }
    u_ = recover_u(state_.q);
    ++steps_;
  }
  const Field& u() const override { return u_; }

 private:
  ReducedOperators ops_;
  MassConstant mass_;
  OperatorVariant variant_;
  IterationControl ctl_;
  bool explicit_;
  ReducedState state_;
  Field u_;
};

class ZStepper final : public Stepper {
 public:
  enum class Kind { Implicit, Explicit, Unstable };

  ZStepper(const RunConfig& cfg, const InitialData& init, Kind kind)
      : ops_(build_reduced_operators(cfg.params, cfg.grid())),
        mass_(init.mass),
        variant_(cfg.variant),
        ctl_(cfg.ctl),
        kind_(kind),
        start_(make_reduced_state(init.u, init.mass, cfg.grid().h())),
        u_(init.u) {}

  void advance() override {
    const long next = steps_ + 1;
    if (steps_ == 0) {
      if (kind_ == Kind::Implicit) {
        auto s = z_bootstrap(start_, mass_, ops_, variant_, ctl_);
        state_ = std::move(s.state);
        stats_ = s.stats;
      } else {
        state_ = z_bootstrap_explicit(start_, mass_, ops_, variant_);
        stats_ = {};
      }
    } else if (kind_ == Kind::Implicit) {
      auto s = z_step(state_, mass_, ops_, variant_, ctl_);
      state_ = std::move(s.state);
      stats_ = s.stats;
    } else if (kind_ == Kind::Explicit) {
      state_ = z_step_explicit(state_, mass_, ops_, variant_, next);
    } else {
      state_ = z_step_explicit_unstable(state_, mass_, ops_, variant_, next);
    }
    u_ = recover_u(state_.q);
    steps_ = next;
  }
  const Field& u() const override { return u_; }

 private:
  ReducedOperators ops_;
  MassConstant mass_;
  OperatorVariant variant_;
  IterationControl ctl_;
  Kind kind_;
  ReducedState start_;
  ZState state_;
  Field u_;
};

class EightStepper final : public Stepper {
 public:
  EightStepper(const RunConfig& cfg, const InitialData& init, bool is_explicit)
      : op_(cfg.params, cfg.grid()), ctl_(cfg.ctl), explicit_(is_explicit),
        u_(init.u) {}

  void advance() override {
    if (explicit_) {
      u_ = op_.explicit_step(u_, steps_ + 1);
      stats_ = {};
    } else {
      auto s = op_.step(u_, ctl_);
      u_ = std::move(s.u);
      stats_ = s.stats;
    }
    ++steps_;
  }
  const Field& u() const override { return u_; }

 private:
  EightPointOperator op_;
  IterationControl ctl_;
  bool explicit_;
  Field u_;
};

class TwelveStepper final : public Stepper {
 public:
  TwelveStepper(const RunConfig& cfg, const InitialData& init)
      : op_(cfg.params, cfg.grid()), ctl_(cfg.ctl), u_(init.u) {}

  void advance() override {
    StencilStep s = steps_ == 0 ? op_.step(u_, ctl_)
                                : op_.twelve_step(prev_, u_, ctl_);
    prev_ = std::move(u_);
    u_ = std::move(s.u);
    stats_ = s.stats;
    ++steps_;
  }
  const Field& u() const override { return u_; }

 private:
  EightPointOperator op_;
  IterationControl ctl_;
  Field prev_;
  Field u_;
};

class ZkStepper final : public Stepper {
 public:
  ZkStepper(const RunConfig& cfg, const InitialData& init)
      : params_(cfg.params), grid_(cfg.grid()), u_(init.u) {}

  void advance() override {
    Field next = steps_ == 0 ? zk_bootstrap(u_, params_, grid_)
                             : zk_step({prev_, u_}, params_, grid_, steps_ + 1);
    prev_ = std::move(u_);
    u_ = std::move(next);
    ++steps_;
  }
  const Field& u() const override { return u_; }

 private:
  KdVParams params_;
  Discretization grid_;
  Field prev_;
  Field u_;
};

}  // namespace

std::unique_ptr<Stepper> make_stepper(const RunConfig& cfg,
                                      const InitialData& init) {
  cfg.validate();
  if (static_cast<int>(init.u.size()) != cfg.n)
    throw InvalidArgument("initial field length differs from n");
  switch (cfg.scheme) {
    case SchemeKind::Preissman:
      return std::make_unique<PreissmanStepper>(cfg, init);
    case SchemeKind::PreissmanMonolithic:
      return std::make_unique<MonolithicStepper>(cfg, init);
    case SchemeKind::Pq:
      return std::make_unique<PqStepper>(cfg, init, false);
    case SchemeKind::PqExplicit:
      return std::make_unique<PqStepper>(cfg, init, true);
    case SchemeKind::Z:
      return std::make_unique<ZStepper>(cfg, init, ZStepper::Kind::Implicit);
    case SchemeKind::ZExplicit:
      return std::make_unique<ZStepper>(cfg, init, ZStepper::Kind::Explicit);
    case SchemeKind::ZExplicitUnstable:
      return std::make_unique<ZStepper>(cfg, init, ZStepper::Kind::Unstable);
    case SchemeKind::Eight:
      return std::make_unique<EightStepper>(cfg, init, false);
    case SchemeKind::EightExplicit:
      return std::make_unique<EightStepper>(cfg, init, true);
    case SchemeKind::Twelve:
      return std::make_unique<TwelveStepper>(cfg, init);
    case SchemeKind::Zk:
      return std::make_unique<ZkStepper>(cfg, init);
  }
  throw InvalidArgument("unhandled scheme");
}

}  // namespace kdv
