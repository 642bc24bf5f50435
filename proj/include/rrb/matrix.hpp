#pragma once

#include <array>
#include <span>
#include <vector>

#include "rrb/errors.hpp"
#include "rrb/vec3.hpp"

namespace rrb {

/// Dense 3x3 matrix carrying a structural role tag. Skew and symmetric
/// matrices are assembled from their independent entries, so the tagged
/// structure holds exactly; the checked factory rejects near-misses instead
/// of trusting the caller.
class Matrix3 {
  public:
    enum class Role { General, Skew, Symmetric };

    Matrix3() = default;

    /// Skew matrix with upper triangle (m01, m02, m12); lower is the negation.
    static Matrix3 skew(double m01, double m02, double m12);

    /// Symmetric matrix from diagonal (d0,d1,d2) and upper triangle (m01,m02,m12).
    static Matrix3 symmetric(double d0, double d1, double d2,
                             double m01, double m02, double m12);

    static Matrix3 general(const std::array<std::array<double, 3>, 3>& rows);

    /// Tags a full matrix after checking the claimed structure exactly;
    /// throws InvariantViolation on mismatch.
    static Matrix3 tagged(const std::array<std::array<double, 3>, 3>& rows, Role role);

    double operator()(int i, int j) const { return m_[i][j]; }
    Role role() const { return role_; }

    Vec3 operator*(const Vec3& v) const;
    Matrix3 transposed() const;

    bool operator==(const Matrix3& o) const { return m_ == o.m_; }

  private:
    std::array<std::array<double, 3>, 3> m_{};
    Role role_{Role::General};
};

/// Symmetric n x n metric tensor produced by the generic builder; dense
/// row-major storage, n in [2, 16].
class GenericMetric {
  public:
    explicit GenericMetric(int n);

    int dimension() const { return n_; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }

    std::vector<double> apply(std::span<const double> v) const;
    bool is_symmetric() const;

  private:
    int n_;
    std::vector<double> data_;
};

}  // namespace rrb
