#include <mighty/bernstein.hpp>
#include <mighty/types.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace mighty
{

std::vector<double> bernstein_basis(int degree, double u)
{
    if (!(u >= 0.0 && u <= 1.0))
        throw DomainError("bernstein_basis: u = " + std::to_string(u) + " outside [0,1]");
    switch (degree)
    {
    case 2: { auto b = bernstein<2>(u); return {b.begin(), b.end()}; }
    case 3: { auto b = bernstein<3>(u); return {b.begin(), b.end()}; }
    case 4: { auto b = bernstein<4>(u); return {b.begin(), b.end()}; }
    case 5: { auto b = bernstein<5>(u); return {b.begin(), b.end()}; }
    default:
        throw DomainError("bernstein_basis: degree " + std::to_string(degree) + " not in 2..5");
    }
}

BasisTable::BasisTable(int kappa)
{
    if (kappa < 2)
        throw ConfigError("quadrature needs kappa >= 2 samples per segment, got " + std::to_string(kappa));
    const int n = kappa;
    const double h = 1.0 / (n - 1);
    tau_.resize(n);
    weight_.assign(n, h);
    weight_.front() = weight_.back() = 0.5 * h;
    b5_.resize(n);
    b4_.resize(n);
    b3_.resize(n);
    b2_.resize(n);
    for (int j = 0; j < n; ++j)
    {
        // exact endpoints
        const double u = (j == n - 1) ? 1.0 : j * h;
        tau_[j] = u;
        b5_[j] = bernstein<5>(u);
        b4_[j] = bernstein<4>(u);
        b3_[j] = bernstein<3>(u);
        b2_[j] = bernstein<2>(u);
    }
}

std::shared_ptr<const BasisTable> BasisTable::shared(int kappa)
{
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const BasisTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(kappa);
    if (it != cache.end())
        return it->second;
    auto table = std::make_shared<const BasisTable>(kappa);
    cache.emplace(kappa, table);
    return table;
}

} // namespace mighty
