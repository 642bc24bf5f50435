#include "rrb/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rrb/model.hpp"

namespace rrb {
namespace {

constexpr double kPolePre = 1e-9;       // construction-time pole guard
constexpr double kPoleFilter = 1e-7;    // root filter pole distance
constexpr double kRootResidual = 1e-9;  // |h(root) - k| <= this * (1 + |k|)

double pole_distance(const SystemConfig& cfg, double lambda) {
    return std::min({std::fabs(lambda - cfg.a1), std::fabs(lambda - cfg.a2),
                     std::fabs(lambda - cfg.a3)});
}

Vec3 e2_raw(const SystemConfig& cfg, double lambda) {
    return {cfg.ctrl_a / (lambda - cfg.a1), cfg.ctrl_b / (lambda - cfg.a2),
            cfg.ctrl_c / (lambda - cfg.a3)};
}

Equilibrium make_checked(const SystemConfig& cfg, const State& point, Family family,
                         double parameter) {
    const Vec3 m = m_vector(cfg, point);
    const double residual = cross(point, m).norm();
    if (!(residual <= 1e-9 * (1.0 + point.norm() * m.norm())))
        throw InvariantViolation("equilibrium residual exceeds its bound");
    return {point, family, parameter, residual};
}

// Ascending-coefficient convolution of small dense polynomials.
std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

using Complex = std::complex<double>;

Complex givens_apply(Complex& f, Complex& g, Complex c, Complex s) {
    const Complex f2 = c * f + s * g;
    const Complex g2 = -std::conj(s) * f + std::conj(c) * g;
    f = f2;
    return g = g2;
}

// Eigenvalues of a complex upper Hessenberg matrix by shifted QR with Givens
// rotations. Sizes here never exceed 6, so rotations sweep full rows/columns.
std::vector<Complex> hessenberg_eigenvalues(std::vector<std::vector<Complex>> H) {
    const int n = static_cast<int>(H.size());
    std::vector<Complex> eig(static_cast<std::size_t>(n));
    int hi = n - 1;
    int stuck = 0;
    const double eps = std::numeric_limits<double>::epsilon();

    // Each sweep leaves roundoff of order eps * ||H|| in the subdiagonal, so
    // deflation must accept that floor alongside the locally relative test.
    double hnorm = 0.0;
    for (const auto& row : H)
        for (const Complex& v : row) hnorm += std::norm(v);
    hnorm = std::sqrt(hnorm) + 1e-300;
    const auto negligible = [&](int m) {
        const double local = std::abs(H[m - 1][m - 1]) + std::abs(H[m][m]);
        return std::abs(H[m][m - 1]) <= eps * std::max(local, hnorm);
    };

    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = H[0][0];
            break;
        }
        // Deflate converged trailing entries.
        if (negligible(hi)) {
            eig[static_cast<std::size_t>(hi)] = H[hi][hi];
            --hi;
            stuck = 0;
            continue;
        }
        // Active block [lo..hi].
        int lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;

        // Wilkinson shift from the trailing 2x2, with an occasional
        // exceptional shift to break symmetric stalls.
        Complex mu;
        if (++stuck % 12 == 0) {
            mu = H[hi][hi] + std::abs(H[hi][hi - 1]) * Complex{0.75, 0.25};
        } else {
            const Complex t00 = H[hi - 1][hi - 1], t01 = H[hi - 1][hi];
            const Complex t10 = H[hi][hi - 1], t11 = H[hi][hi];
            const Complex tr = t00 + t11;
            const Complex disc = std::sqrt(tr * tr * 0.25 - (t00 * t11 - t01 * t10));
            const Complex mu1 = tr * 0.5 + disc, mu2 = tr * 0.5 - disc;
            mu = std::abs(mu1 - t11) < std::abs(mu2 - t11) ? mu1 : mu2;
        }
        if (stuck > 400) throw Error("polynomial_roots: eigenvalue iteration stalled");

        // One implicit single-shift QR sweep on [lo..hi].
        Complex x = H[lo][lo] - mu;
        Complex y = H[lo + 1][lo];
        for (int k = lo; k < hi; ++k) {
            // Complex Givens zeroing y against x.
            Complex c, s;
            const double ax = std::abs(x), ay = std::abs(y);
            if (ay == 0.0) {
                c = 1.0;
                s = 0.0;
            } else if (ax == 0.0) {
                c = 0.0;
                s = std::conj(y) / ay;
            } else {
                const double r = std::hypot(ax, ay);
                const Complex phase = x / ax;
                c = ax / r;
                s = phase * std::conj(y) / r;
            }
            for (int j = 0; j < n; ++j) givens_apply(H[k][j], H[k + 1][j], c, s);
            for (int i = 0; i < n; ++i) {
                const Complex f2 = H[i][k] * std::conj(c) + H[i][k + 1] * std::conj(s);
                const Complex g2 = -H[i][k] * s + H[i][k + 1] * c;
                H[i][k] = f2;
                H[i][k + 1] = g2;
            }
            if (k < hi - 1) {
                x = H[k + 1][k];
                y = H[k + 2][k];
            }
        }
    }
    return eig;
}

struct GoldenResult {
    double t;
    double value;
};

template <typename F>
GoldenResult golden_minimize(F&& f, double a, double b, double width) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > width) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double mid = 0.5 * (a + b);
    return {mid, f(mid)};
}

struct LineFamily {
    Family family;
    double axis_a;  // a_i of the free axis
    int axis;       // index of the free coordinate
};

std::vector<LineFamily> applicable_lines(const SystemConfig& cfg) {
    std::vector<LineFamily> out;
    if (cfg.ctrl_a == 0.0) out.push_back({Family::E3, cfg.a1, 0});
    if (cfg.ctrl_b == 0.0) out.push_back({Family::E4, cfg.a2, 1});
    if (cfg.ctrl_c == 0.0) out.push_back({Family::E5, cfg.a3, 2});
    return out;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::E1: return "E1";
        case Family::E2: return "E2";
        case Family::E3: return "E3";
        case Family::E4: return "E4";
        case Family::E5: return "E5";
    }
    return "?";
}

Equilibrium origin_equilibrium(const SystemConfig& cfg) {
    return make_checked(cfg, {0.0, 0.0, 0.0}, Family::E1, 0.0);
}

Equilibrium e2_point(const SystemConfig& cfg, double lambda) {
    cfg.validate();
    if (!(pole_distance(cfg, lambda) > kPolePre))
        throw PoleProximity("e2_point: lambda within 1e-9 of a pole");
    return make_checked(cfg, e2_raw(cfg, lambda), Family::E2, lambda);
}

Equilibrium line_family_point(const SystemConfig& cfg, Family family, double alpha) {
    cfg.validate();
    State p;
    switch (family) {
        case Family::E3:
            if (cfg.ctrl_a != 0.0)
                throw FamilyNotApplicable("E3 requires control a = 0");
            p = {alpha, -cfg.ctrl_b / (cfg.a2 - cfg.a1), cfg.ctrl_c / (cfg.a1 - cfg.a3)};
            break;
        case Family::E4:
            if (cfg.ctrl_b != 0.0)
                throw FamilyNotApplicable("E4 requires control b = 0");
            p = {cfg.ctrl_a / (cfg.a2 - cfg.a1), alpha, -cfg.ctrl_c / (cfg.a3 - cfg.a2)};
            break;
        case Family::E5:
            if (cfg.ctrl_c != 0.0)
                throw FamilyNotApplicable("E5 requires control c = 0");
            p = {cfg.ctrl_a / (cfg.a3 - cfg.a1), cfg.ctrl_b / (cfg.a3 - cfg.a2), alpha};
            break;
        default:
            throw FamilyNotApplicable("line_family_point accepts E3, E4 or E5");
    }
    return make_checked(cfg, p, family, alpha);
}

bool is_equilibrium(const SystemConfig& cfg, const State& x, double tol) {
    if (!(tol > 0.0)) throw InvariantViolation("is_equilibrium requires tol > 0");
    const Vec3 m = m_vector(cfg, x);
    return cross(x, m).norm() <= tol * (1.0 + x.norm() * m.norm());
}

double scalar_g(const SystemConfig& cfg, double lambda) {
    if (!(pole_distance(cfg, lambda) > kPolePre))
        throw PoleProximity("scalar_g: lambda within 1e-9 of a pole");
    const Vec3 p = e2_raw(cfg, lambda);
    return p.norm2();
}

double scalar_h(const SystemConfig& cfg, double sigma) {
    if (!(pole_distance(cfg, sigma) > kPolePre))
        throw PoleProximity("scalar_h: sigma within 1e-9 of a pole");
    // sigma^2 / (sigma - a)^2 evaluated as a squared ratio so huge sigma
    // tends to the finite limit instead of overflowing
    const double r1 = sigma / (sigma - cfg.a1);
    const double r2 = sigma / (sigma - cfg.a2);
    const double r3 = sigma / (sigma - cfg.a3);
    const double s = cfg.ctrl_a * cfg.ctrl_a / cfg.a1 * r1 * r1 +
                     cfg.ctrl_b * cfg.ctrl_b / cfg.a2 * r2 * r2 +
                     cfg.ctrl_c * cfg.ctrl_c / cfg.a3 * r3 * r3;
    return 0.5 * s + hamiltonian_minimum(cfg);
}

double scalar_h_derivative(const SystemConfig& cfg, double sigma) {
    const double d1 = sigma - cfg.a1, d2 = sigma - cfg.a2, d3 = sigma - cfg.a3;
    return -sigma * (cfg.ctrl_a * cfg.ctrl_a / (d1 * d1 * d1) +
                     cfg.ctrl_b * cfg.ctrl_b / (d2 * d2 * d2) +
                     cfg.ctrl_c * cfg.ctrl_c / (d3 * d3 * d3));
}

double LevelPolynomial::evaluate(double lambda) const {
    double acc = 0.0;
    for (int i = 6; i >= 0; --i) acc = acc * lambda + coeff[static_cast<std::size_t>(i)];
    return acc;
}

int LevelPolynomial::degree() const {
    for (int i = 6; i >= 0; --i)
        if (coeff[static_cast<std::size_t>(i)] != 0.0) return i;
    return -1;
}

bool LevelPolynomial::identically_zero() const { return degree() < 0; }

LevelPolynomial level_polynomial(const SystemConfig& cfg, double k) {
    cfg.validate();
    const double as[3] = {cfg.a1, cfg.a2, cfg.a3};
    const double ks[3] = {cfg.ctrl_a, cfg.ctrl_b, cfg.ctrl_c};
    std::vector<double> sq[3];
    for (int i = 0; i < 3; ++i) sq[i] = {as[i] * as[i], -2.0 * as[i], 1.0};

    std::vector<double> p(7, 0.0);
    for (int i = 0; i < 3; ++i) {
        // kappa_i^2 (lambda - a_i/2) prod_{j != i} (lambda - a_j)^2
        const std::vector<double> others = poly_mul(sq[(i + 1) % 3], sq[(i + 2) % 3]);
        std::vector<double> term = poly_mul(others, {-0.5 * as[i], 1.0});
        const double w = ks[i] * ks[i];
        for (std::size_t c = 0; c < term.size(); ++c) p[c] += w * term[c];
    }
    const std::vector<double> denom = poly_mul(sq[0], poly_mul(sq[1], sq[2]));
    for (std::size_t c = 0; c < denom.size(); ++c) p[c] -= k * denom[c];

    LevelPolynomial out;
    out.level = k;
    for (std::size_t c = 0; c < 7; ++c) out.coeff[c] = p[c];
    return out;
}

std::vector<Complex> polynomial_roots(std::span<const double> ascending_coeffs) {
    double top = 0.0;
    for (double c : ascending_coeffs) top = std::max(top, std::fabs(c));
    if (top == 0.0) return {};
    int deg = static_cast<int>(ascending_coeffs.size()) - 1;
    while (deg > 0 && std::fabs(ascending_coeffs[static_cast<std::size_t>(deg)]) <= 1e-14 * top)
        --deg;
    if (deg < 1) return {};

    const double lead = ascending_coeffs[static_cast<std::size_t>(deg)];
    std::vector<std::vector<Complex>> H(
        static_cast<std::size_t>(deg), std::vector<Complex>(static_cast<std::size_t>(deg), 0.0));
    for (int i = 1; i < deg; ++i) H[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1.0;
    for (int i = 0; i < deg; ++i)
        H[static_cast<std::size_t>(i)][static_cast<std::size_t>(deg - 1)] =
            -ascending_coeffs[static_cast<std::size_t>(i)] / lead;
    return hessenberg_eigenvalues(std::move(H));
}

LevelSet equilibria_on_level(const SystemConfig& cfg, double k) {
    cfg.validate();
    const double h_min = hamiltonian_minimum(cfg);
    if (k < h_min - 1e-12 * (1.0 + std::fabs(h_min)))
        throw EmptyLevel("equilibria_on_level: level below the minimum of H");

    LevelSet out;
    out.e2_degenerate = cfg.controls_zero();

    if (!out.e2_degenerate) {
        if (k <= h_min + 1e-12 * (1.0 + std::fabs(h_min))) {
            out.points.push_back(e2_point(cfg, 0.0));  // degenerate ellipsoid: the minimizer
        } else {
            const LevelPolynomial p = level_polynomial(cfg, k);
            std::vector<double> lambdas;
            for (const Complex& root :
                 polynomial_roots(std::span<const double>(p.coeff.data(), p.coeff.size()))) {
                if (std::fabs(root.imag()) > 1e-9 * (1.0 + std::fabs(root.real()))) continue;
                double lam = root.real();
                // Newton polish on h(lambda) - k.
                for (int it = 0; it < 60; ++it) {
                    if (pole_distance(cfg, lam) <= kPolePre) break;
                    if (!(std::fabs(lam) < 1e12)) break;  // diverging: let the filter drop it
                    const double q = scalar_h(cfg, lam) - k;
                    const double dq = scalar_h_derivative(cfg, lam);
                    if (std::fabs(dq) < 1e-300) break;
                    const double step = q / dq;
                    lam -= step;
                    if (std::fabs(step) <= 1e-13 * (1.0 + std::fabs(lam))) break;
                }
                if (!(pole_distance(cfg, lam) > kPoleFilter)) continue;
                // NaN-safe: only a finite residual within the bound passes.
                const double level_resid = std::fabs(scalar_h(cfg, lam) - k);
                if (!(level_resid <= kRootResidual * (1.0 + std::fabs(k)))) continue;
                bool dup = false;
                for (double seen : lambdas)
                    if (std::fabs(seen - lam) <= 1e-8 * (1.0 + std::fabs(lam))) dup = true;
                if (dup) continue;
                lambdas.push_back(lam);
            }
            std::sort(lambdas.begin(), lambdas.end());
            for (double lam : lambdas) out.points.push_back(e2_point(cfg, lam));
        }
    }

    for (const LineFamily& lf : applicable_lines(cfg)) {
        const State base = line_family_point(cfg, lf.family, 0.0).point;
        const double h_base = hamiltonian(cfg, base);
        const double disc = 2.0 * (k - h_base) / lf.axis_a;
        if (disc < -1e-12 * (1.0 + std::fabs(k))) continue;
        const double alpha = std::sqrt(std::max(0.0, disc));
        out.points.push_back(line_family_point(cfg, lf.family, alpha));
        if (alpha > 0.0) out.points.push_back(line_family_point(cfg, lf.family, -alpha));
    }

    if (std::fabs(k) <= 1e-12) out.points.push_back(origin_equilibrium(cfg));

    // Drop coincident points (family intersections, degenerate alphas).
    std::vector<Equilibrium> unique;
    for (const Equilibrium& e : out.points) {
        bool dup = false;
        for (const Equilibrium& u : unique)
            if ((e.point - u.point).norm() <= 1e-8 * (1.0 + u.point.norm())) dup = true;
        if (!dup) unique.push_back(e);
    }
    out.points = std::move(unique);
    return out;
}

double distance_to_E(const SystemConfig& cfg, const State& x) {
    cfg.validate();
    if (!x.is_finite()) throw InvariantViolation("distance_to_E: non-finite state");
    double best = x.norm();  // the origin e1

    if (!cfg.controls_zero()) {
        constexpr int kGrid = 2001;
        const double half_pi = 0.5 * std::numbers::pi;
        const auto dist_at = [&](double t) {
            const double lam = std::tan(t);
            if (!(pole_distance(cfg, lam) > 1e-6))
                return std::numeric_limits<double>::infinity();
            return (x - e2_raw(cfg, lam)).norm();
        };
        int best_i = -1;
        double best_grid = std::numeric_limits<double>::infinity();
        std::array<double, kGrid> ts{};
        for (int i = 0; i < kGrid; ++i) {
            ts[static_cast<std::size_t>(i)] =
                -half_pi + std::numbers::pi * (i + 0.5) / kGrid;
            const double d = dist_at(ts[static_cast<std::size_t>(i)]);
            if (d < best_grid) {
                best_grid = d;
                best_i = i;
            }
        }
        if (best_i >= 0) {
            const double lo = ts[static_cast<std::size_t>(std::max(0, best_i - 1))];
            const double hi = ts[static_cast<std::size_t>(std::min(kGrid - 1, best_i + 1))];
            // 1e-13 bracket width: near the poles the curve moves ~1e2 per
            // unit lambda, and the distance still has to resolve to ~1e-10
            const GoldenResult g = golden_minimize(dist_at, lo, hi, 1e-13);
            best = std::min({best, best_grid, g.value});
        }
    }

    for (const LineFamily& lf : applicable_lines(cfg)) {
        const State base = line_family_point(cfg, lf.family, 0.0).point;
        const Vec3 d = x - base;
        const double along = d[lf.axis];
        best = std::min(best, std::sqrt(std::max(0.0, d.norm2() - along * along)));
    }
    return best;
}

}  // namespace rrb
