#include "qsb/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "qsb/errors.hpp"

namespace qsb {

namespace {

constexpr int kGridPoints = 1000;  // r = 0.001 .. 1.000

// Strictness margin for "p > 1". Identity-channel cases sit at p = 1 exactly
// and must not register as superbroadcasting through rounding noise; genuine
// superbroadcasting clears 1 by orders of magnitude more than this.
constexpr double kExistenceTol = 1e-9;

double grid_r(int k) { return 1e-3 * k; }

// Largest root of p(r) = 1 in (0, 1]: last sign change of p - 1 on the grid,
// bisection to 1e-13 interval width, then a short secant polish so the
// residual |p(r*) - 1| reaches rounding level even where p is steep.
std::optional<double> largest_root(const std::function<double(double)>& p) {
    std::vector<double> vals(kGridPoints + 1, 0.0);
    double vmax = -1.0;
    for (int k = 1; k <= kGridPoints; ++k) {
        vals[static_cast<std::size_t>(k)] = p(grid_r(k));
        vmax = std::max(vmax, vals[static_cast<std::size_t>(k)]);
    }
    if (!(vmax > 1.0 + kExistenceTol)) return std::nullopt;
    for (int k = kGridPoints - 1; k >= 1; --k) {
        const double a = vals[static_cast<std::size_t>(k)] - 1.0;
        const double b = vals[static_cast<std::size_t>(k) + 1] - 1.0;
        if ((a > 0.0) == (b > 0.0)) continue;
        double lo = grid_r(k), hi = grid_r(k + 1);
        double glo = a, ghi = b;
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            const double g = p(mid) - 1.0;
            if ((g > 0.0) == (glo > 0.0)) {
                lo = mid;
                glo = g;
            } else {
                hi = mid;
                ghi = g;
            }
        }
        double best = 0.5 * (lo + hi);
        double gbest = p(best) - 1.0;
        double x0 = lo, g0 = glo, x1 = hi, g1 = ghi;
        for (int it = 0; it < 4 && g1 != g0; ++it) {
            const double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
            if (!(x2 > 0.0 && x2 <= 1.0)) break;
            const double g2 = p(x2) - 1.0;
            if (std::abs(g2) < std::abs(gbest)) {
                best = x2;
                gbest = g2;
            }
            x0 = x1;
            g0 = g1;
            x1 = x2;
            g1 = g2;
        }
        return best;
    }
    return std::nullopt;
}

}  // namespace

std::optional<double> critical_purity(int n_in, int m_out, CovarianceClass c) {
    if (n_in < 1 || m_out < n_in)
        throw domain_error("critical_purity: need 1 <= N <= M");
    return largest_root([&](double r) { return scaling(n_in, m_out, r, c); });
}

std::optional<double> critical_purity_limit(int n_in, CovarianceClass c) {
    if (n_in < 1) throw domain_error("critical_purity_limit: N must be positive");
    return largest_root([&](double r) { return scaling_limit(n_in, r, c); });
}

MaxCopies max_output_copies(int n_in, CovarianceClass c, int search_cap,
                            bool detect_infinite) {
    if (n_in < 1) throw domain_error("max_output_copies: N must be positive");
    if (search_cap < n_in)
        throw domain_error("max_output_copies: search cap below N");

    if (detect_infinite) {
        for (int k = 1; k <= kGridPoints; ++k)
            if (scaling_limit(n_in, grid_r(k), c) > 1.0 + kExistenceTol)
                return {MaxCopies::Kind::Infinite, 0};
    }

    if (c == CovarianceClass::Universal) {
        // p = (M+2)/M * f_N(r): the prefactor is strictly decreasing in M, so
        // the first M without superbroadcasting ends the scan.
        double fmax = -1.0;
        for (int k = 1; k <= kGridPoints; ++k)
            fmax = std::max(fmax, scaling_universal_limit(n_in, grid_r(k)));
        int last = 0;
        bool any = false;
        for (int m = n_in; m <= search_cap; ++m) {
            if (fmax * (m + 2.0) / m > 1.0 + kExistenceTol) {
                any = true;
                last = m;
            } else {
                break;
            }
        }
        return any ? MaxCopies{MaxCopies::Kind::Finite, last}
                   : MaxCopies{MaxCopies::Kind::None, 0};
    }

    // Phase covariance: the inner sum per grid point is independent of M;
    // cache it and rescan cheaply. Grid points are visited in descending
    // order of the limit value so existing superbroadcasting is found early.
    std::vector<std::vector<detail::PhaseTerm>> terms(kGridPoints + 1);
    std::vector<double> limit_vals(kGridPoints + 1, 0.0);
    for (int k = 1; k <= kGridPoints; ++k) {
        terms[static_cast<std::size_t>(k)] = detail::phase_terms(n_in, grid_r(k));
        double s = 0.0;
        for (const auto& t : terms[static_cast<std::size_t>(k)]) s += t.coeff;
        limit_vals[static_cast<std::size_t>(k)] = s / grid_r(k);
    }
    std::vector<int> order(kGridPoints);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return limit_vals[static_cast<std::size_t>(a)] >
               limit_vals[static_cast<std::size_t>(b)];
    });

    const auto exists = [&](int m) {
        const bool odd = (m - n_in) % 2 != 0;
        for (int k : order) {
            double s = 0.0;
            for (const auto& t : terms[static_cast<std::size_t>(k)])
                s += t.coeff * detail::phase_jx_factor(m, odd ? t.twice_n + 1 : t.twice_n);
            if (s / grid_r(k) > 1.0 + kExistenceTol) return true;
        }
        return false;
    };

    // Every term of p decreases with M (same parity) once M > N(N+2), so two
    // consecutive failures past that point close both parity chains.
    const int monotone_from = n_in * (n_in + 2);
    int last = 0, consecutive_failures = 0;
    bool any = false;
    for (int m = n_in; m <= search_cap; ++m) {
        if (exists(m)) {
            any = true;
            last = m;
            consecutive_failures = 0;
        } else if (++consecutive_failures >= 2 && m - 1 >= monotone_from) {
            break;
        }
    }
    return any ? MaxCopies{MaxCopies::Kind::Finite, last}
               : MaxCopies{MaxCopies::Kind::None, 0};
}

ThresholdRecord threshold_record(int n_in, CovarianceClass c, ThresholdMode mode,
                                 int search_cap) {
    ThresholdRecord rec;
    rec.n_in = n_in;
    rec.covariance = c;
    if (mode == ThresholdMode::NPlusOne) {
        rec.m_out = n_in + 1.0;
        rec.r_star = critical_purity(n_in, n_in + 1, c);
        return rec;
    }
    const MaxCopies mc = max_output_copies(n_in, c, search_cap);
    switch (mc.kind) {
        case MaxCopies::Kind::Infinite:
            rec.m_out = std::numeric_limits<double>::infinity();
            rec.r_star = critical_purity_limit(n_in, c);
            break;
        case MaxCopies::Kind::Finite:
            rec.m_out = static_cast<double>(mc.value);
            rec.r_star = critical_purity(n_in, mc.value, c);
            break;
        case MaxCopies::Kind::None:
            break;
    }
    return rec;
}

PowerFit asymptotic_fit(CovarianceClass c, ThresholdMode which, int n_min, int n_max) {
    const int floor = c == CovarianceClass::Universal ? 4 : 3;
    if (n_min < floor || n_max > 100 || n_min > n_max)
        throw domain_error("asymptotic_fit: N range must lie within [" +
                           std::to_string(floor) + ", 100]");
    std::vector<double> xs, ys;
    for (int n = n_min; n <= n_max; ++n) {
        std::optional<double> r_star;
        if (which == ThresholdMode::NPlusOne) {
            r_star = critical_purity(n, n + 1, c);
        } else {
            r_star = critical_purity_limit(n, c);
            if (!r_star) {
                const MaxCopies mc = max_output_copies(n, c, 2000, false);
                if (mc.kind == MaxCopies::Kind::Finite)
                    r_star = critical_purity(n, mc.value, c);
            }
        }
        if (!r_star) continue;
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(1.0 - *r_star));
    }
    if (xs.size() < 3)
        throw domain_error("asymptotic_fit: fewer than 3 data points");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    return PowerFit{std::exp(intercept), slope};
}

}  // namespace qsb
