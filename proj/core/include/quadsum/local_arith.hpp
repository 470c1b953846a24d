#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "quadsum/quad_family.hpp"

namespace quadsum {

class guard_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Largest m with xi/m integral.
std::int64_t content(const VecI& xi);

// Finite-adelic weight attached to a nonzero integral point xi on the level-i
// quadric with unramified lattice data:
//     sum over m | content(xi), dilation | m of chi(m) m^{dim/2 - 2}.
// Computed as a product of prime-power geometric sums; dilation restricts the
// divisor sum to multiples of the lattice scale.
double basic_weight(const QuadFamily& fam, int i, const VecI& xi, std::int64_t dilation = 1);

// Exact count of solutions of Q_i(x) = 0 in (Z/p^k)^dim by direct
// enumeration; guarded by p^{k dim} <= 1e7.
std::int64_t local_density_count(const QuadFamily& fam, int i, std::int64_t p, int k);

struct DensityRow {
    std::int64_t p;
    int k;
    std::int64_t count;
    std::int64_t num;  // reduced count / p^{k(dim-1)}
    std::int64_t den;
};

DensityRow local_density_row(const QuadFamily& fam, int i, std::int64_t p, int k);

// CSV: p,k,count,density with density as an exact rational string.
void write_density_csv(std::ostream& os, const QuadFamily& fam, int i,
                       const std::vector<std::int64_t>& primes, int kmax);

}  // namespace quadsum
