#pragma once

// Monte Carlo survey over separable states: sample, optimize angles for
// D_dif, record distances and information measures, persist as CSV.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qspeed/angleopt.hpp"

namespace qspeed {

struct SurveyConfig {
    long samples = 0;
    std::uint64_t seed = 0;
    int shards = 1;
    int opt_budget = 200;
    int max_terms = 8;
};

struct SurveyRecord {
    std::uint64_t seed;
    std::uint64_t index;
    int num_terms;
    double mutual_info;
    double entropy_ab;
    double entropy_a;
    double entropy_b;
    double d_quarter;
    double d_half;
    double d_dif;  // exactly d_quarter - d_half
    double theta_a, phi_a, theta_b, phi_b;
};

// Record i is fully determined by (seed, i); shard partitioning affects
// scheduling only, never the result. Throws std::invalid_argument on a bad
// config.
std::vector<SurveyRecord> run_survey(const SurveyConfig& config);

// Regenerates one record.
SurveyRecord survey_record(std::uint64_t seed, std::uint64_t index, int opt_budget, int max_terms);

struct SurveySummary {
    long count;
    double mean_x, median_x, std_x;  // mutual information axis
    double mean_y, median_y, std_y;  // d_dif axis
    double max_d_quarter;
};

// Median of an even count is the lower-middle value; std is the population
// standard deviation. Throws std::invalid_argument on an empty list.
SurveySummary summarize(std::span<const SurveyRecord> records);

// Fixed header, 12 significant digits, newline-terminated rows.
void write_survey_csv(std::ostream& out, std::span<const SurveyRecord> records);

}  // namespace qspeed
