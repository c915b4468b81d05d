#pragma once

#include "json.hpp"
#include "oscsum/config.hpp"
#include "oscsum/rng.hpp"

namespace oscsum {

// Fixed-seed measurement suites behind the frozen constants.  Each suite
// is a pure function of its Rng, so the acceptance run reproduces the
// calibration run exactly.
struct SuiteStat {
    double max_ratio = 0.0;
    int cases = 0;
    int skipped = 0;
};

SuiteStat vdc_suite(int cases, Rng rng);
SuiteStat nonconc_suite(int cases, Rng rng);
SuiteStat osc_suite(int cases, Rng rng);
SuiteStat cont_sublevel_suite(int cases, Rng rng);
SuiteStat taylor_suite(int cases, Rng rng);
SuiteStat condense_suite(int cases, Rng rng);

// Runs every suite and reports observed maxima plus suggested freezes
// (twice the observed maximum).
nlohmann::ordered_json run_calibration(int cases, const RunConfig& cfg);

}  // namespace oscsum
