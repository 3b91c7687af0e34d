#include "sgk/tridiagonal.hpp"

#include <limits>

namespace sgk {

Field SymTridiagonal::apply(const Eigen::Ref<const Field>& x) const {
    const long n = size();
    Field y = diag.cwiseProduct(x);
    y.head(n - 1) += off.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += off.cwiseProduct(x.head(n - 1));
    return y;
}

long sturm_count(const SymTridiagonal& T, double x) {
    const long n = T.size();
    const double tiny = std::numeric_limits<double>::min() * 1e10;
    long count = 0;
    double q = T.diag[0] - x;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    for (long i = 1; i < n; ++i) {
        q = T.diag[i] - x - T.off[i - 1] * T.off[i - 1] / q;
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin(const SymTridiagonal& T) {
    const long n = T.size();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (long i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(T.off[i - 1]) : 0.0) + (i < n - 1 ? std::abs(T.off[i]) : 0.0);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    return {lo, hi};
}

std::vector<double> eigenvalues_below(const SymTridiagonal& T, double upper, double tol) {
    const auto [lo0, hi0] = gershgorin(T);
    const long m = sturm_count(T, upper);
    std::vector<double> out;
    for (long k = 0; k < m; ++k) {
        double lo = lo0, hi = std::min(upper, hi0);
        while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
            double mid = 0.5 * (lo + hi);
            if (sturm_count(T, mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

Field tridiagonal_solve(const SymTridiagonal& T, double shift, const Eigen::Ref<const Field>& b) {
    const long n = T.size();
    Field dl = T.off, d = T.diag.array() - shift, du = T.off, du2 = Field::Zero(std::max<long>(n - 2, 1));
    Field x = b;
    const double tiny = std::numeric_limits<double>::epsilon() * (std::abs(shift) + 1.0) * 1e-3;
    for (long i = 0; i < n - 1; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            double f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            x[i + 1] -= f * x[i];
            if (i < n - 2) du2[i] = 0.0;
        } else {
            double f = d[i] / dl[i];
            d[i] = dl[i];
            double tmp = d[i + 1];
            d[i + 1] = du[i] - f * tmp;
            du[i] = tmp;
            if (i < n - 2) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du2[i];
            }
            std::swap(x[i], x[i + 1]);
            x[i + 1] -= f * x[i];
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;
    x[n - 1] /= d[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (long i = n - 3; i >= 0; --i) x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    return x;
}

Field inverse_iteration(const SymTridiagonal& T, double lambda, int iterations) {
    const long n = T.size();
    Field x(n);
    for (long i = 0; i < n; ++i) x[i] = 1.0 + 0.25 * std::sin(0.37 * double(i));
    const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    for (int k = 0; k < iterations; ++k) {
        x = tridiagonal_solve(T, shift, x);
        x /= x.norm();
    }
    return x;
}

}  // namespace sgk
