#include "aeqsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace aeqsim {

const char* const kTrajectoryCsvHeader =
    "t,psi_d_rad,psi_rad,qw,qx,qy,qz,wx,wy,wz,tau_x,tau_y,tau_z,sigma,delta_gamma";

std::string format_sig12(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        return "0";
    }
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
    int decimals = 11 - exponent;
    if (decimals < 0) {
        decimals = 0;
    }
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const RunRecord& rec) {
    os << kTrajectoryCsvHeader << '\n';
    for (std::size_t i = 0; i < rec.size(); ++i) {
        os << format_sig12(rec.t[i]) << ',' << format_sig12(rec.psi_d[i]) << ','
           << format_sig12(rec.psi[i]) << ',' << format_sig12(rec.q[i].w) << ','
           << format_sig12(rec.q[i].v.x()) << ',' << format_sig12(rec.q[i].v.y()) << ','
           << format_sig12(rec.q[i].v.z()) << ',' << format_sig12(rec.omega[i].x()) << ','
           << format_sig12(rec.omega[i].y()) << ',' << format_sig12(rec.omega[i].z()) << ','
           << format_sig12(rec.tau[i].x()) << ',' << format_sig12(rec.tau[i].y()) << ','
           << format_sig12(rec.tau[i].z()) << ',' << rec.sigma[i] << ','
           << format_sig12(rec.delta_gamma[i]) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const SweepSummary& summary) {
    os << "spec_id,controller,trials,gamma_mean,gamma_esd,switch_count_max\n";
    for (const SweepCell& cell : summary.cells) {
        os << cell.spec_id << ',' << to_string(cell.controller) << ',' << cell.trials << ',';
        if (cell.failed) {
            os << "failed,failed,failed\n";
        } else {
            os << format_sig12(cell.gamma_mean) << ',' << format_sig12(cell.gamma_esd) << ','
               << cell.switch_count_max << '\n';
        }
    }
}

std::string comparison_table(const SweepSummary& summary) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-14s %-11s %7s %14s %14s %9s\n", "maneuver", "controller",
                  "trials", "gamma_mean", "gamma_esd", "switches");
    out << line;
    for (const SweepCell& cell : summary.cells) {
        if (cell.failed) {
            std::snprintf(line, sizeof(line), "%-14s %-11s %7d %14s %14s %9s  FAILED: %s\n",
                          cell.spec_id.c_str(), to_string(cell.controller), cell.trials, "-", "-",
                          "-", cell.error.c_str());
        } else {
            std::snprintf(line, sizeof(line), "%-14s %-11s %7d %14.6e %14.6e %9d\n",
                          cell.spec_id.c_str(), to_string(cell.controller), cell.trials,
                          cell.gamma_mean, cell.gamma_esd, cell.switch_count_max);
        }
        out << line;
    }
    out << '\n';
    std::snprintf(line, sizeof(line), "%-14s %14s %14s %11s %12s\n", "maneuver", "first_mean",
                  "second_mean", "reduction", "equilibria");
    out << line;
    for (const SweepPair& pair : summary.pairs) {
        if (!pair.valid) {
            std::snprintf(line, sizeof(line), "%-14s %14s %14s %11s %12s\n", pair.spec_id.c_str(),
                          "-", "-", "-", "-");
        } else {
            std::snprintf(line, sizeof(line), "%-14s %14.6e %14.6e %10.2f%% %12s\n",
                          pair.spec_id.c_str(), pair.first_mean, pair.second_mean,
                          100.0 * pair.reduction, pair.equilibria_differ ? "differ" : "same");
        }
        out << line;
    }
    if (std::isnan(summary.aggregate_reduction)) {
        out << "\naggregate average reduction: n/a\n";
    } else {
        std::snprintf(line, sizeof(line), "\naggregate average reduction: %.2f%%\n",
                      100.0 * summary.aggregate_reduction);
        out << line;
    }
    return out.str();
}

}  // namespace aeqsim
