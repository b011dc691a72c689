#pragma once

#include <array>
#include <memory>
#include <vector>

namespace mighty
{

// Bernstein weights binom(n,i) u^i (1-u)^(n-i), i = 0..n, for n in 2..5.
// Throws DomainError for u outside [0,1] or an unsupported degree.
std::vector<double> bernstein_basis(int degree, double u);

// Unchecked fixed-degree variants used on hot paths.
template <int N>
inline std::array<double, N + 1> bernstein(double u)
{
    static_assert(N >= 0 && N <= 5);
    const double w = 1.0 - u;
    std::array<double, N + 1> up{}, wp{};
    up[0] = 1.0;
    wp[0] = 1.0;
    for (int i = 1; i <= N; ++i)
    {
        up[i] = up[i - 1] * u;
        wp[i] = wp[i - 1] * w;
    }
    constexpr std::array<std::array<double, 6>, 6> binom{{{1, 0, 0, 0, 0, 0},
                                                          {1, 1, 0, 0, 0, 0},
                                                          {1, 2, 1, 0, 0, 0},
                                                          {1, 3, 3, 1, 0, 0},
                                                          {1, 4, 6, 4, 1, 0},
                                                          {1, 5, 10, 10, 5, 1}}};
    std::array<double, N + 1> b{};
    for (int i = 0; i <= N; ++i)
        b[i] = binom[N][i] * up[i] * wp[N - i];
    return b;
}

// Bernstein weights of degrees 5..2 on a uniform grid tau_j = j/(kappa-1),
// plus the trapezoidal weights of that grid (they sum to 1).
class BasisTable
{
public:
    explicit BasisTable(int kappa);

    // Tables are immutable; one instance per kappa is cached process-wide.
    static std::shared_ptr<const BasisTable> shared(int kappa);

    int size() const { return static_cast<int>(tau_.size()); }
    double tau(int j) const { return tau_[j]; }
    double weight(int j) const { return weight_[j]; }
    const std::array<double, 6> &b5(int j) const { return b5_[j]; }
    const std::array<double, 5> &b4(int j) const { return b4_[j]; }
    const std::array<double, 4> &b3(int j) const { return b3_[j]; }
    const std::array<double, 3> &b2(int j) const { return b2_[j]; }

private:
    std::vector<double> tau_;
    std::vector<double> weight_;
    std::vector<std::array<double, 6>> b5_;
    std::vector<std::array<double, 5>> b4_;
    std::vector<std::array<double, 4>> b3_;
    std::vector<std::array<double, 3>> b2_;
};

} // namespace mighty
