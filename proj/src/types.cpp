#include "kdv/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kdv/errors.hpp"

namespace kdv {

void KdVParams::validate() const {
  if (!std::isfinite(eta) || !std::isfinite(delta) || !std::isfinite(xmin) ||
      !std::isfinite(xmax))
    throw InvalidArgument("KdV parameters must be finite");
  if (delta == 0.0) throw InvalidArgument("delta must be nonzero");
  if (!(xmax > xmin)) throw InvalidArgument("xmax must exceed xmin");
}

Discretization::Discretization(const KdVParams& params, int n, double tau)
    : n_(n), tau_(tau), xmin_(params.xmin) {
  if (n < 1) throw InvalidArgument("grid needs at least one point");
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw InvalidArgument("time step must be positive");
  if (!(params.xmax > params.xmin))
    throw InvalidArgument("xmax must exceed xmin");
  h_ = params.length() / n;
  r_ = tau_ / h_;
}

Field Discretization::nodes() const {
  Field x(n_);
  for (int i = 0; i < n_; ++i) x[i] = this->x(i);
  return x;
}

StateField StateField::zeros(int n) {
  return {Field(n, 0.0), Field(n, 0.0), Field(n, 0.0), Field(n, 0.0)};
}

void StateField::validate() const {
  const auto n = u.size();
  if (phi.size() != n || v.size() != n || w.size() != n)
    throw InvalidArgument("state components have unequal lengths");
  auto finite = [](const Field& f) {
    return std::all_of(f.begin(), f.end(),
                       [](double x) { return std::isfinite(x); });
  };
  if (!finite(phi) || !finite(u) || !finite(v) || !finite(w))
    throw InvalidArgument("state contains non-finite entries");
}

double discrete_mass(FieldView u, double h) {
  return h * std::accumulate(u.begin(), u.end(), 0.0);
}

void Trajectory::push_snapshot(double t, Field u) {
  if (!times.empty() && !(t > times.back()))
    throw InvalidArgument("trajectory times must be strictly increasing");
  if (!snapshots.empty() && u.size() != snapshots.front().size())
    throw InvalidArgument("snapshot length differs from the grid size");
  times.push_back(t);
  snapshots.push_back(std::move(u));
}

}  // namespace kdv

#include "kdv/iteration.hpp"

namespace kdv {

void IterationControl::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("iteration tol must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  if (!(divergence_threshold > 0.0))
    throw InvalidArgument("divergence threshold must be positive");
}

}  // namespace kdv
