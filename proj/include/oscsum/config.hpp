#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace oscsum {

inline constexpr const char* kVersion = "oscsum 0.1.0";

// Global run configuration: seed, the free analytic parameters, frozen
// calibration constants, and enumeration budgets.  Every CLI report embeds
// it so results are reproducible from the output alone.
struct RunConfig {
    std::uint64_t seed = 20250810;

    // analytic knobs (defaults recorded in every output)
    double A0 = 4.0;
    double rho = 0.1;
    double eps0 = 0.0009765625;  // 2^-10
    int C_max = 6;
    std::optional<double> theta_override;

    // calibrated constants, frozen at twice the maximum observed ratio of
    // the fixed-seed calibration run (`calibrate --cases 200`, seed 20250810;
    // observed maxima: 1.027, 0.0484, 1.448, 2.781, 0.607, 0.500)
    double C_vdc = 2.06;
    double C_nonconc = 0.10;
    double C_osc = 2.90;
    double C_cont_sublevel = 5.57;
    double C_taylor = 1.22;
    double C_condense = 1.0;
    double C_meanvalue = 4.0;   // fixed, not calibrated
    double c_expoly = 0.25;     // fixed lower-bound constant

    // budgets
    long long max_lattice = 1LL << 23;
    long long max_Q = 1LL << 21;
    long long max_quad = 1LL << 22;
    int s_enum_max = 6;
    int partitions = 16;

    std::string format = "json";  // json | csv

    double theta(int d) const { return theta_override ? *theta_override : 1.0 / (2.0 * d); }

    // flat key=value file; '#' comments
    static RunConfig from_file(const std::string& path);
    void apply_kv(const std::string& key, const std::string& value);
    std::string provenance_json() const;
};

}  // namespace oscsum
