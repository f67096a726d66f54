#include "qspeed/survey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qspeed/quantify.hpp"

namespace qspeed {

SurveyRecord survey_record(std::uint64_t seed, std::uint64_t index, int opt_budget, int max_terms) {
    const SeparableSample sample = sample_separable(seed, index, max_terms);
    const OptimizationResult opt = optimize_angles(sample.state, ObjectiveKind::period_ddif, opt_budget);
    if (!std::isfinite(opt.value)) throw std::runtime_error("survey: non-finite optimization value");

    const double dq = trace_distance(sample.state, evolve(sample.state, opt.config, M_PI / 4.0));
    const double dh = trace_distance(sample.state, evolve(sample.state, opt.config, M_PI / 2.0));
    const MeasureReport m = measure_report(sample.state);

    SurveyRecord r{};
    r.seed = seed;
    r.index = index;
    r.num_terms = sample.num_terms;
    r.mutual_info = m.mutual_info;
    r.entropy_ab = m.entropy_ab;
    r.entropy_a = m.entropy_a;
    r.entropy_b = m.entropy_b;
    r.d_quarter = dq;
    r.d_half = dh;
    r.d_dif = dq - dh;
    r.theta_a = opt.config.dir_a.theta;
    r.phi_a = opt.config.dir_a.phi;
    r.theta_b = opt.config.dir_b.theta;
    r.phi_b = opt.config.dir_b.phi;
    return r;
}

std::vector<SurveyRecord> run_survey(const SurveyConfig& config) {
    if (config.samples < 1) throw std::invalid_argument("survey: samples must be >= 1");
    if (config.shards < 1) throw std::invalid_argument("survey: shards must be >= 1");
    if (config.opt_budget < 1) throw std::invalid_argument("survey: opt_budget must be >= 1");
    if (config.max_terms < 1 || config.max_terms > 16) throw std::invalid_argument("survey: max_terms must be in [1,16]");

    const long n = config.samples;
    std::vector<SurveyRecord> records(static_cast<std::size_t>(n));
    const int shards = static_cast<int>(std::min<long>(config.shards, n));

    // Contiguous index ranges per shard; merge order is index order either way.
    auto work = [&](int shard) {
        const long lo = n * shard / shards;
        const long hi = n * (shard + 1) / shards;
        for (long i = lo; i < hi; ++i)
            records[static_cast<std::size_t>(i)] =
                survey_record(config.seed, static_cast<std::uint64_t>(i), config.opt_budget, config.max_terms);
    };

    if (shards == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(shards));
        for (int s = 0; s < shards; ++s) pool.emplace_back(work, s);
        for (std::thread& t : pool) t.join();
    }
    return records;
}

namespace {

double median_lower(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

}  // namespace

SurveySummary summarize(std::span<const SurveyRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize: empty record list");
    const double n = static_cast<double>(records.size());
    std::vector<double> xs, ys;
    xs.reserve(records.size());
    ys.reserve(records.size());
    double sx = 0.0, sy = 0.0, maxdq = -1.0;
    for (const SurveyRecord& r : records) {
        xs.push_back(r.mutual_info);
        ys.push_back(r.d_dif);
        sx += r.mutual_info;
        sy += r.d_dif;
        maxdq = std::max(maxdq, r.d_quarter);
    }
    const double mx = sx / n, my = sy / n;
    double vx = 0.0, vy = 0.0;
    for (const SurveyRecord& r : records) {
        vx += (r.mutual_info - mx) * (r.mutual_info - mx);
        vy += (r.d_dif - my) * (r.d_dif - my);
    }
    SurveySummary s{};
    s.count = static_cast<long>(records.size());
    s.mean_x = mx;
    s.median_x = median_lower(std::move(xs));
    s.std_x = std::sqrt(vx / n);
    s.mean_y = my;
    s.median_y = median_lower(std::move(ys));
    s.std_y = std::sqrt(vy / n);
    s.max_d_quarter = maxdq;
    return s;
}

void write_survey_csv(std::ostream& out, std::span<const SurveyRecord> records) {
    out << "seed,index,num_terms,mutual_info,entropy_ab,entropy_a,entropy_b,"
           "d_quarter,d_half,d_dif,theta_a,phi_a,theta_b,phi_b\n";
    char buf[512];
    for (const SurveyRecord& r : records) {
        std::snprintf(buf, sizeof buf,
                      "%llu,%llu,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      static_cast<unsigned long long>(r.seed), static_cast<unsigned long long>(r.index), r.num_terms,
                      r.mutual_info, r.entropy_ab, r.entropy_a, r.entropy_b, r.d_quarter, r.d_half, r.d_dif,
                      r.theta_a, r.phi_a, r.theta_b, r.phi_b);
        out << buf;
    }
}

}  // namespace qspeed
