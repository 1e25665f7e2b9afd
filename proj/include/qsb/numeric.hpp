#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsb {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

/// Kahan summation in descending-magnitude order. Consumes its input.
double stable_sum(std::vector<double> terms);

/// Tables of r_+^k and r_-^k with r_± = (1 ± r)/2, built by running products
/// so the endpoints r = 0, 1 stay exact (convention 0^0 = 1).
class PurityPowers {
  public:
    PurityPowers(double r, int max_exponent);

    double r() const { return r_; }
    double plus(int k) const { return plus_[static_cast<std::size_t>(k)]; }
    double minus(int k) const { return minus_[static_cast<std::size_t>(k)]; }
    /// r_+^{kp} * r_-^{km}
    double paired(int kp, int km) const { return plus(kp) * minus(km); }

  private:
    double r_;
    std::vector<double> plus_, minus_;
};

}  // namespace qsb
