#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rrb/config.hpp"
#include "rrb/vec3.hpp"

namespace rrb {

enum class Family { E1, E2, E3, E4, E5 };

std::string family_name(Family f);

/// An equilibrium point with its family tag, the family parameter (lambda
/// for E2, alpha for the line families, 0 for E1) and the defect |x cross m|.
/// Construction rejects points whose defect exceeds 1e-9 (1 + |x||m|).
struct Equilibrium {
    State point;
    Family family{Family::E1};
    double parameter{0.0};
    double residual{0.0};
};

/// The isolated equilibrium at the origin.
Equilibrium origin_equilibrium(const SystemConfig& cfg);

/// Curve family e2(lambda) = (a/(lambda-a1), b/(lambda-a2), c/(lambda-a3)).
/// Throws PoleProximity when lambda comes within 1e-9 of a pole.
Equilibrium e2_point(const SystemConfig& cfg, double lambda);

/// Line families, each applicable only when its control vanishes:
///   E3 (a=0): (alpha, -b/(a2-a1),  c/(a1-a3))
///   E4 (b=0): (a/(a2-a1), alpha, -c/(a3-a2))
///   E5 (c=0): (a/(a3-a1), b/(a3-a2), alpha)
/// Each is the limit of the e2 pattern as lambda tends to the matching a_i.
Equilibrium line_family_point(const SystemConfig& cfg, Family family, double alpha);

/// True iff |x cross m(x)| <= tol (1 + |x||m|). One test serves both the
/// conservative and the revised system, which share their equilibria.
bool is_equilibrium(const SystemConfig& cfg, const State& x, double tol);

/// Squared norm of e2(lambda); strictly increasing on (-inf, a1).
double scalar_g(const SystemConfig& cfg, double lambda);

/// Energy along the curve family, h(sigma) = H(e2(sigma)), evaluated in the
/// completed-square based form
///   sigma^2/2 [a^2/(a1 (s-a1)^2) + ...] - 1/2 (a^2/a1 + b^2/a2 + c^2/a3).
double scalar_h(const SystemConfig& cfg, double sigma);

/// d/dsigma of scalar_h: -sigma [a^2/(s-a1)^3 + b^2/(s-a2)^3 + c^2/(s-a3)^3].
double scalar_h_derivative(const SystemConfig& cfg, double sigma);

/// p(lambda) = (h(lambda) - k) prod_i (lambda - a_i)^2, coefficients in
/// ascending order. Degree <= 6 with leading coefficient exactly -k.
struct LevelPolynomial {
    std::array<double, 7> coeff{};  // c0..c6
    double level{0.0};

    double evaluate(double lambda) const;
    int degree() const;        // index of last nonzero coefficient, -1 if p == 0
    bool identically_zero() const;
};

LevelPolynomial level_polynomial(const SystemConfig& cfg, double k);

/// All equilibria on the ellipsoid H = k: real roots of the level polynomial
/// (companion-matrix eigenvalues, Newton-polished) mapped through e2, the
/// <= 2 intersections of each applicable line family, and the origin when
/// k = 0. Throws EmptyLevel for k below the minimum of H.
struct LevelSet {
    std::vector<Equilibrium> points;
    bool e2_degenerate{false};  // controls all zero: the curve family collapses
};

LevelSet equilibria_on_level(const SystemConfig& cfg, double k);

/// Distance from x to the full equilibrium set: the origin, the e2 curve
/// (atan-parameterized grid scan plus golden-section refinement) and the
/// applicable lines (exact point-to-line distance).
double distance_to_E(const SystemConfig& cfg, const State& x);

/// Real eigenvalues machinery used by equilibria_on_level, exposed for tests:
/// eigenvalues of the companion matrix of a polynomial given by ascending
/// coefficients (leading zeros trimmed internally).
std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending_coeffs);

}  // namespace rrb
