#include "quadsum/local_arith.hpp"

#include <cmath>
#include <numeric>

namespace quadsum {

std::int64_t content(const VecI& xi) {
    std::int64_t g = 0;
    for (int i = 0; i < xi.size(); ++i) g = std::gcd(g, std::llabs(xi(i)));
    return g;
}

double basic_weight(const QuadFamily& fam, int i, const VecI& xi, std::int64_t dilation) {
    if (xi.size() != fam.dim(i)) throw std::invalid_argument("basic_weight: dimension mismatch");
    std::int64_t ct = content(xi);
    if (ct == 0) throw std::invalid_argument("basic_weight: xi must be nonzero");
    if (fam.quad_value(i, xi) != 0) throw std::invalid_argument("basic_weight: Q(xi) != 0");
    if (dilation < 1) throw std::invalid_argument("basic_weight: dilation must be positive");
    double expo = fam.dim(i) / 2.0 - 2.0;
    if (dilation == 1) {
        // multiplicative: product over p | ct of sum_{k<=v_p} (chi(p) p^expo)^k
        double w = 1.0;
        std::int64_t n = ct;
        for (std::int64_t p = 2; p * p <= n; ++p) {
            if (n % p != 0) continue;
            int v = 0;
            while (n % p == 0) {
                n /= p;
                ++v;
            }
            double r = fam.chi(p) * std::pow(static_cast<double>(p), expo);
            double s = 1.0, pk = 1.0;
            for (int k = 1; k <= v; ++k) {
                pk *= r;
                s += pk;
            }
            w *= s;
        }
        if (n > 1) w *= 1.0 + fam.chi(n) * std::pow(static_cast<double>(n), expo);
        return w;
    }
    // congruence-restricted variant: divisors that are multiples of `dilation`
    if (ct % dilation != 0) return 0.0;
    double w = 0.0;
    for (std::int64_t m = dilation; m <= ct; m += dilation) {
        if (ct % m != 0) continue;
        w += fam.chi(m) * std::pow(static_cast<double>(m), expo);
    }
    return w;
}

std::int64_t local_density_count(const QuadFamily& fam, int i, std::int64_t p, int k) {
    int d = fam.dim(i);
    if (p < 2 || k < 1) throw std::invalid_argument("local_density_count: bad p or k");
    double cells = std::pow(static_cast<double>(p), static_cast<double>(k) * d);
    if (cells > 1e7) throw guard_error("local_density_count: p^{k dim} exceeds the 1e7 guard");

    std::int64_t mod = 1;
    for (int j = 0; j < k; ++j) mod *= p;
    MatI J = fam.J(i);

    // odometer over (Z/mod)^d with incremental quadratic value
    std::vector<std::int64_t> x(d, 0);
    std::int64_t count = 0;
    std::int64_t total = 1;
    for (int j = 0; j < d; ++j) total *= mod;

    // Q(x) = sum_j (J_jj/2) x_j^2 + sum_{j<l} J_jl x_j x_l  (diagonal is even)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rem = idx;
        for (int j = 0; j < d; ++j) {
            x[j] = rem % mod;
            rem /= mod;
        }
        std::int64_t q = 0;
        for (int j = 0; j < d; ++j) {
            q += (J(j, j) / 2) * x[j] % mod * x[j] % mod;
            for (int l = j + 1; l < d; ++l) q += J(j, l) * x[j] % mod * x[l] % mod;
            q %= mod;
        }
        if (((q % mod) + mod) % mod == 0) ++count;
    }
    return count;
}

DensityRow local_density_row(const QuadFamily& fam, int i, std::int64_t p, int k) {
    DensityRow row;
    row.p = p;
    row.k = k;
    row.count = local_density_count(fam, i, p, k);
    std::int64_t den = 1;
    for (int j = 0; j < k * (fam.dim(i) - 1); ++j) den *= p;
    std::int64_t g = std::gcd(row.count, den);
    row.num = row.count / g;
    row.den = den / g;
    return row;
}

void write_density_csv(std::ostream& os, const QuadFamily& fam, int i,
                       const std::vector<std::int64_t>& primes, int kmax) {
    os << "p,k,count,density\n";
    for (std::int64_t p : primes) {
        for (int k = 1; k <= kmax; ++k) {
            double cells = std::pow(static_cast<double>(p), static_cast<double>(k) * fam.dim(i));
            if (cells > 1e7) break;
            DensityRow row = local_density_row(fam, i, p, k);
            os << row.p << ',' << row.k << ',' << row.count << ',' << row.num << '/' << row.den
               << '\n';
        }
    }
}

}  // namespace quadsum
