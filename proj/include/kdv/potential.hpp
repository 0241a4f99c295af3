#pragma once

#include "kdv/types.hpp"

namespace kdv {

// Cubic potential V(u) = eta*u^3/6 of the KdV Hamiltonian and its derivatives.

inline double potential_V(double u, const KdVParams& p) noexcept {
  return p.eta * u * u * u / 6.0;
}

inline double potential_Vprime(double u, const KdVParams& p) noexcept {
  return 0.5 * p.eta * u * u;
}

inline double potential_Vsecond(double u, const KdVParams& p) noexcept {
  return p.eta * u;
}

/// S(z) = v^2/2 - u*w + V(u); phi does not enter.
inline double hamiltonian_S(double /*phi*/, double u, double v, double w,
                            const KdVParams& p) noexcept {
  return 0.5 * v * v - u * w + potential_V(u, p);
}

}  // namespace kdv
