#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kdv {

using Field = std::vector<double>;
using FieldView = std::span<const double>;

/// Coefficients of u_t + eta*u*u_x + delta^2*u_xxx = 0 on the periodic
/// interval [xmin, xmax).
struct KdVParams {
  double eta = 6.0;
  double delta = 1.0;
  double xmin = -20.0;
  double xmax = 20.0;

  double length() const noexcept { return xmax - xmin; }
  /// Throws InvalidArgument unless delta != 0 and xmax > xmin.
  void validate() const;
};

/// Uniform periodic grid x_i = xmin + i*h, i = 0..n-1 (the point xmax is the
/// periodic image of xmin and is never stored), and a time step tau.
class Discretization {
 public:
  Discretization(const KdVParams& params, int n, double tau);

  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double tau() const noexcept { return tau_; }
  /// tau / h
  double r() const noexcept { return r_; }
  bool odd() const noexcept { return n_ % 2 != 0; }
  double xmin() const noexcept { return xmin_; }
  double x(int i) const noexcept { return xmin_ + h_ * i; }
  Field nodes() const;

 private:
  int n_;
  double h_;
  double tau_;
  double r_;
  double xmin_;
};

/// Grid values of z = (phi, u, v, w): potential, solution, momentum
/// v = delta*u_x and the auxiliary w.
struct StateField {
  Field phi;
  Field u;
  Field v;
  Field w;

  static StateField zeros(int n);
  int size() const noexcept { return static_cast<int>(u.size()); }
  /// Throws InvalidArgument on unequal lengths or non-finite entries.
  void validate() const;
};

/// The conserved integral c = int u dx, fixed by the initial data.
struct MassConstant {
  double c = 0.0;
};

/// Mass h*sum(u) of a grid field (rectangle rule, exact for periodic data).
double discrete_mass(FieldView u, double h);

struct StepRecord {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Sampled u-fields plus per-step records of one run.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> snapshots;
  std::vector<StepRecord> records;

  void push_snapshot(double t, Field u);
};

}  // namespace kdv
