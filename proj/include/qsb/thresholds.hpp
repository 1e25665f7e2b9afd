#pragma once

#include <optional>

#include "qsb/scaling.hpp"

namespace qsb {

/// Largest r in (0,1) with p(r) = 1 when sup_r p(r) > 1, else nullopt.
/// Located by scanning a 1e-3 grid for the last sign change of p - 1, then
/// bisecting (with a short secant polish).
std::optional<double> critical_purity(int n_in, int m_out, CovarianceClass c);

/// Same root for the M -> infinity limit formula.
std::optional<double> critical_purity_limit(int n_in, CovarianceClass c);

/// M*(N): the largest output count that still superbroadcasts.
struct MaxCopies {
    enum class Kind { Finite, Infinite, None };
    Kind kind = Kind::None;
    int value = 0;  // meaningful for Kind::Finite only

    bool is_infinite() const { return kind == Kind::Infinite; }
    bool is_none() const { return kind == Kind::None; }
};

/// Infinity is detected from the analytic M -> infinity limit of the scaling
/// formulas; otherwise M in [N, search_cap] is scanned for the largest value
/// with critical_purity present. detect_infinite = false forces the scan
/// (used to cross-check the two paths).
MaxCopies max_output_copies(int n_in, CovarianceClass c, int search_cap = 2000,
                            bool detect_infinite = true);

enum class ThresholdMode { NPlusOne, MStar };

struct ThresholdRecord {
    int n_in = 0;
    CovarianceClass covariance = CovarianceClass::Universal;
    std::optional<double> m_out;   // +infinity when M*(N) is unbounded
    std::optional<double> r_star;  // absent when no superbroadcasting
};

ThresholdRecord threshold_record(int n_in, CovarianceClass c, ThresholdMode mode,
                                 int search_cap = 2000);

struct PowerFit {
    double coefficient = 0.0;
    double exponent = 0.0;
};

/// Least-squares fit of 1 - r*(N, ·) = c N^a on log-log data over
/// N in [n_min, n_max]. Mode NPlusOne uses M = N + 1; mode MStar uses
/// M = M*(N) (the limit formula when M* is unbounded).
PowerFit asymptotic_fit(CovarianceClass c, ThresholdMode which, int n_min, int n_max);

}  // namespace qsb
