#include "rrb/matrix.hpp"

namespace rrb {

Matrix3 Matrix3::skew(double m01, double m02, double m12) {
    Matrix3 out;
    out.m_ = {{{0.0, m01, m02}, {-m01, 0.0, m12}, {-m02, -m12, 0.0}}};
    out.role_ = Role::Skew;
    return out;
}

Matrix3 Matrix3::symmetric(double d0, double d1, double d2,
                           double m01, double m02, double m12) {
    Matrix3 out;
    out.m_ = {{{d0, m01, m02}, {m01, d1, m12}, {m02, m12, d2}}};
    out.role_ = Role::Symmetric;
    return out;
}

Matrix3 Matrix3::general(const std::array<std::array<double, 3>, 3>& rows) {
    Matrix3 out;
    out.m_ = rows;
    out.role_ = Role::General;
    return out;
}

Matrix3 Matrix3::tagged(const std::array<std::array<double, 3>, 3>& rows, Role role) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (role == Role::Skew && rows[i][j] != -rows[j][i])
                throw InvariantViolation("matrix is not exactly skew-symmetric");
            if (role == Role::Symmetric && rows[i][j] != rows[j][i])
                throw InvariantViolation("matrix is not exactly symmetric");
        }
    }
    Matrix3 out;
    out.m_ = rows;
    out.role_ = role;
    return out;
}

Vec3 Matrix3::operator*(const Vec3& v) const {
    return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
            m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
            m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
}

Matrix3 Matrix3::transposed() const {
    Matrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.m_[i][j] = m_[j][i];
    out.role_ = role_;
    return out;
}

GenericMetric::GenericMetric(int n) : n_{n} {
    if (n < 2 || n > 16)
        throw DimensionOutOfRange("metric dimension must lie in [2, 16]");
    data_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

std::vector<double> GenericMetric::apply(std::span<const double> v) const {
    std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += at(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

bool GenericMetric::is_symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

}  // namespace rrb
