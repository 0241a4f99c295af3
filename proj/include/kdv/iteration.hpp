#pragma once

namespace kdv {

/// Stopping rule shared by every fixed-point solver in the library.
struct IterationControl {
  double tol = 1e-12;  // max-norm of the difference of successive iterates
  int max_iter = 100;
  double divergence_threshold = 1e8;  // max-norm of an iterate

  void validate() const;
};

/// Fixed-point bookkeeping returned with every implicit step.
struct IterationStats {
  int iterations = 0;
  double residual = 0.0;  // last successive-iterate difference
};

}  // namespace kdv
