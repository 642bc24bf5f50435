#pragma once

#include <span>

#include "rrb/config.hpp"
#include "rrb/matrix.hpp"
#include "rrb/vec3.hpp"

namespace rrb {

/// Energy of the controlled body:
///   H(x) = 1/2 (a1 x1^2 + a2 x2^2 + a3 x3^2) + a x1 + b x2 + c x3.
double hamiltonian(const SystemConfig& cfg, const State& x);

/// The same energy in completed-square form,
///   H(x) = 1/2 sum_i a_i (x_i + k_i/a_i)^2 - 1/2 sum_i k_i^2/a_i,
/// kept as an independent evaluation route for cross-checking.
double hamiltonian_centered(const SystemConfig& cfg, const State& x);

/// Global minimum value of H: -1/2 (a^2/a1 + b^2/a2 + c^2/a3).
double hamiltonian_minimum(const SystemConfig& cfg);

/// The minimizer of H: (-a/a1, -b/a2, -c/a3).
State hamiltonian_min_point(const SystemConfig& cfg);

/// Casimir C(x) = 1/2 |x|^2.
double casimir(const State& x);

/// Gradient of H: m(x) = (a1 x1 + a, a2 x2 + b, a3 x3 + c).
Vec3 m_vector(const SystemConfig& cfg, const State& x);

/// The rigid-body Poisson matrix; skew by construction and annihilates x.
Matrix3 poisson_matrix(const State& x);

/// Symmetric metric tensor built from the gradient m(x); annihilates m(x).
Matrix3 metric_matrix(const SystemConfig& cfg, const State& x);

/// Dissipative drift v(x) = g(x) * grad C(x) = g(x) * x. Algebraically equal
/// to (x cross m) cross m, which the tests verify against this route.
Vec3 drift_v(const SystemConfig& cfg, const State& x);

/// Generic symmetric-tensor builder for a gradient in dimension n = grad.size():
///   g_ii = -sum_{k != i} grad_k^2,   g_ij = grad_i grad_j  (i != j).
/// The product g * grad vanishes identically. Dimensions 2..16 accepted.
GenericMetric build_metric_generic(std::span<const double> grad_h1);

}  // namespace rrb
