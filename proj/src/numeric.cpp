#include "qsb/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "qsb/errors.hpp"

namespace qsb {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact at every step
    }
    return result;
}

double stable_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    double sum = 0.0, carry = 0.0;
    for (double t : terms) {
        const double y = t - carry;
        const double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
    return sum;
}

PurityPowers::PurityPowers(double r, int max_exponent) : r_(r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw domain_error("PurityPowers: r must lie in [0, 1]");
    const double rp = 0.5 * (1.0 + r);
    const double rm = 0.5 * (1.0 - r);
    plus_.resize(static_cast<std::size_t>(max_exponent) + 1);
    minus_.resize(static_cast<std::size_t>(max_exponent) + 1);
    plus_[0] = minus_[0] = 1.0;
    for (int k = 1; k <= max_exponent; ++k) {
        plus_[static_cast<std::size_t>(k)] = plus_[static_cast<std::size_t>(k) - 1] * rp;
        minus_[static_cast<std::size_t>(k)] = minus_[static_cast<std::size_t>(k) - 1] * rm;
    }
}

}  // namespace qsb
