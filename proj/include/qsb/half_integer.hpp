#pragma once

#include <compare>
#include <string>

#include "qsb/errors.hpp"

namespace qsb {

/// Spin label j >= 0 stored as the integer 2j, so half-integer bookkeeping
/// never touches floating point.
class HalfInteger {
  public:
    constexpr HalfInteger() = default;

    static HalfInteger from_twice(int twice_value) {
        if (twice_value < 0)
            throw domain_error("HalfInteger: negative spin label");
        HalfInteger j;
        j.twice_ = twice_value;
        return j;
    }

    static HalfInteger from_int(int value) { return from_twice(2 * value); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    /// Dimension 2j+1 of the spin-j irrep.
    constexpr int dim() const { return twice_ + 1; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    /// j occurs in the decomposition of N qubits iff 2j <= N and 2j == N (mod 2).
    constexpr bool admissible_for(int num_qubits) const {
        return twice_ <= num_qubits && (num_qubits - twice_) % 2 == 0;
    }

    std::string str() const {
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    friend constexpr auto operator<=>(HalfInteger a, HalfInteger b) = default;

  private:
    int twice_ = 0;
};

}  // namespace qsb
