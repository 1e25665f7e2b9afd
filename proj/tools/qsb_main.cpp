#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsb/correlations.hpp"
#include "qsb/errors.hpp"
#include "qsb/scaling.hpp"
#include "qsb/simulator.hpp"
#include "qsb/table.hpp"
#include "qsb/thresholds.hpp"
#include "qsb/version.hpp"

namespace {

using qsb::CovarianceClass;

// min:max:steps (steps = point count; steps == 1 emits min and requires
// min == max).
struct RangeSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
    std::string text;

    std::vector<double> points() const {
        std::vector<double> pts;
        if (steps == 1) {
            pts.push_back(min);
            return pts;
        }
        for (int i = 0; i < steps; ++i)
            pts.push_back(min + i * (max - min) / (steps - 1));
        return pts;
    }
};

RangeSpec parse_range(const std::string& text) {
    RangeSpec spec;
    spec.text = text;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> spec.min >> c1 >> spec.max >> c2 >> spec.steps) || c1 != ':' ||
        c2 != ':' || !in.eof())
        throw CLI::ValidationError("--r", "expected min:max:steps, got '" + text + "'");
    if (spec.steps < 1 || spec.min > spec.max ||
        (spec.steps == 1 && spec.min != spec.max))
        throw CLI::ValidationError("--r", "invalid range '" + text + "'");
    return spec;
}

// Either a single value "4" or a range "4:10" (step 1).
struct IntRange {
    int lo = 0;
    int hi = 0;
    std::string text;
};

IntRange parse_int_range(const std::string& text) {
    IntRange range;
    range.text = text;
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            range.lo = range.hi = std::stoi(text);
        } else {
            range.lo = std::stoi(text.substr(0, colon));
            range.hi = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("-N", "expected an integer or lo:hi, got '" + text + "'");
    }
    if (range.lo > range.hi)
        throw CLI::ValidationError("-N", "empty range '" + text + "'");
    return range;
}

CovarianceClass parse_covariance(const std::string& text) {
    if (text == "universal") return CovarianceClass::Universal;
    if (text == "phase") return CovarianceClass::Phase;
    throw CLI::ValidationError("--cov", "expected 'universal' or 'phase'");
}

void emit(const qsb::OutputTable& table, const std::string& out_path) {
    if (out_path.empty()) {
        table.write_csv(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw qsb::domain_error("cannot open output file '" + out_path + "'");
    table.write_csv(out);
}

std::vector<std::string> metadata_lines(const std::string& command,
                                        const std::string& parameters) {
    return {std::string("qsb ") + qsb::kVersion, "command: " + command,
            "parameters: " + parameters};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal N->M qubit superbroadcasting: scaling factors, thresholds, "
                 "simulation, and output correlations"};
    app.require_subcommand(1);

    std::string cov_text = "universal";
    std::string r_text;
    std::string n_text;
    std::string out_path;
    int n_in = 0, m_out = 0, cap = 2000;
    double tolerance = 1e-9;
    std::string mode_text = "n+1";

    auto* scaling_cmd =
        app.add_subcommand("scaling", "Tabulate the scaling factor p(r) = r'/r");
    scaling_cmd->add_option("--cov", cov_text, "Covariance class (universal|phase)");
    scaling_cmd->add_option("-N", n_in, "Number of input copies")->required();
    scaling_cmd->add_option("-M", m_out, "Number of output copies")->required();
    scaling_cmd->add_option("--r", r_text, "Purity grid min:max:steps")->required();
    scaling_cmd->add_option("--out", out_path, "Write CSV to a file instead of stdout");

    auto* threshold_cmd = app.add_subcommand(
        "threshold", "Critical purity r*(N, M) over a range of N");
    threshold_cmd->add_option("--cov", cov_text, "Covariance class (universal|phase)");
    threshold_cmd->add_option("-N", n_text, "Input copies, single value or lo:hi")
        ->required();
    threshold_cmd->add_option("--mode", mode_text, "Output count rule (n+1|mstar)");
    threshold_cmd->add_option("--cap", cap, "Search cap for M* (default 2000)");
    threshold_cmd->add_option("--out", out_path, "Write CSV to a file instead of stdout");

    auto* mstar_cmd = app.add_subcommand(
        "mstar", "Largest output count M*(N) that still superbroadcasts");
    mstar_cmd->add_option("--cov", cov_text, "Covariance class (universal|phase)");
    mstar_cmd->add_option("-N", n_in, "Number of input copies")->required();
    mstar_cmd->add_option("--cap", cap, "Search cap for M* (default 2000)");
    mstar_cmd->add_option("--out", out_path, "Write the report to a file");

    auto* simulate_cmd = app.add_subcommand(
        "simulate", "Density-matrix realization of the universal channel vs the "
                    "closed form");
    simulate_cmd->add_option("-N", n_in, "Number of input copies")->required();
    simulate_cmd->add_option("-M", m_out, "Number of output copies")->required();
    simulate_cmd->add_option("--r", r_text, "Purity, single value or min:max:steps")
        ->required();
    simulate_cmd->add_option("--tol", tolerance,
                             "Oracle tolerance on |p_sim - p| (default 1e-9)");
    simulate_cmd->add_option("--out", out_path, "Write CSV to a file instead of stdout");

    auto* correlations_cmd = app.add_subcommand(
        "correlations", "Two-site (beta, alpha) coordinates and concurrence of the "
                        "broadcast output");
    correlations_cmd->add_option("-N", n_in, "Number of input copies")->required();
    correlations_cmd->add_option("-M", m_out, "Number of output copies")->required();
    correlations_cmd->add_option("--r", r_text, "Purity grid min:max:steps")->required();
    correlations_cmd->add_option("--out", out_path,
                                 "Write CSV to a file instead of stdout");

    scaling_cmd->callback([&] {
        const CovarianceClass cov = parse_covariance(cov_text);
        const RangeSpec range = parse_range(r_text);
        qsb::OutputTable table;
        table.metadata = metadata_lines(
            "scaling", "cov=" + cov_text + " N=" + std::to_string(n_in) +
                           " M=" + std::to_string(m_out) + " r=" + range.text);
        table.header = {"r", "p", "r_prime"};
        for (double r : range.points()) {
            const qsb::ScalingResult res = qsb::scaling_result(n_in, m_out, r, cov);
            table.rows.push_back({res.r, res.p, res.r_prime});
        }
        emit(table, out_path);
    });

    threshold_cmd->callback([&] {
        const CovarianceClass cov = parse_covariance(cov_text);
        const IntRange range = parse_int_range(n_text);
        if (mode_text != "n+1" && mode_text != "mstar")
            throw CLI::ValidationError("--mode", "expected 'n+1' or 'mstar'");
        const qsb::ThresholdMode mode = mode_text == "n+1"
                                            ? qsb::ThresholdMode::NPlusOne
                                            : qsb::ThresholdMode::MStar;
        qsb::OutputTable table;
        table.metadata = metadata_lines(
            "threshold", "cov=" + cov_text + " N=" + range.text +
                             " mode=" + mode_text + " cap=" + std::to_string(cap));
        table.header = {"N", "M", "r_star", "one_minus_r_star"};
        for (int n = range.lo; n <= range.hi; ++n) {
            const qsb::ThresholdRecord rec = qsb::threshold_record(n, cov, mode, cap);
            std::vector<std::optional<double>> row(4);
            row[0] = static_cast<double>(n);
            row[1] = rec.m_out;
            row[2] = rec.r_star;
            if (rec.r_star) row[3] = 1.0 - *rec.r_star;
            table.rows.push_back(std::move(row));
        }
        emit(table, out_path);
    });

    mstar_cmd->callback([&] {
        const CovarianceClass cov = parse_covariance(cov_text);
        const qsb::MaxCopies mc = qsb::max_output_copies(n_in, cov, cap);
        std::ostringstream body;
        for (const auto& line :
             metadata_lines("mstar", "cov=" + cov_text + " N=" + std::to_string(n_in) +
                                         " cap=" + std::to_string(cap)))
            body << "# " << line << '\n';
        switch (mc.kind) {
            case qsb::MaxCopies::Kind::Finite: body << mc.value << '\n'; break;
            case qsb::MaxCopies::Kind::Infinite: body << "inf\n"; break;
            case qsb::MaxCopies::Kind::None: body << "none\n"; break;
        }
        if (out_path.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream out(out_path);
            if (!out)
                throw qsb::domain_error("cannot open output file '" + out_path + "'");
            out << body.str();
        }
    });

    simulate_cmd->callback([&] {
        const RangeSpec range = r_text.find(':') == std::string::npos
                                    ? parse_range(r_text + ":" + r_text + ":1")
                                    : parse_range(r_text);
        qsb::OutputTable table;
        table.metadata = metadata_lines(
            "simulate", "N=" + std::to_string(n_in) + " M=" + std::to_string(m_out) +
                            " r=" + range.text + " tol=" +
                            qsb::format_significant(tolerance));
        table.header = {"r", "r_prime", "p_formula", "p_simulated", "abs_delta"};
        double worst = 0.0;
        for (double r : range.points()) {
            const double p_formula = qsb::scaling_universal(n_in, m_out, r);
            const qsb::BlockDiagonalState out =
                qsb::superbroadcast_universal(n_in, m_out, r);
            const double r_prime = qsb::single_site_bloch(out, qsb::BlochAxis::Z);
            const double p_sim = r_prime / r;
            const double delta = std::abs(p_sim - p_formula);
            worst = std::max(worst, delta);
            table.rows.push_back({r, r_prime, p_formula, p_sim, delta});
        }
        emit(table, out_path);
        if (worst > tolerance)
            throw qsb::contract_error(
                "simulated scaling deviates from the closed form by " +
                qsb::format_significant(worst) + " (tolerance " +
                qsb::format_significant(tolerance) + ")");
    });

    correlations_cmd->callback([&] {
        const RangeSpec range = parse_range(r_text);
        const std::vector<double> grid = range.points();
        qsb::OutputTable table;
        table.metadata = metadata_lines(
            "correlations", "N=" + std::to_string(n_in) +
                                " M=" + std::to_string(m_out) + " r=" + range.text);
        table.header = {"r", "beta", "alpha", "C"};
        for (const qsb::ConcurrencePoint& pt :
             qsb::concurrence_curve(n_in, m_out, grid))
            table.rows.push_back({pt.r, pt.beta, pt.alpha, pt.concurrence});
        emit(table, out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qsb::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const qsb::contract_error& e) {
        std::cerr << "numerical contract violation: " << e.what() << '\n';
        return 4;
    } catch (const qsb::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
