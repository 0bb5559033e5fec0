// SPDX-License-Identifier: Apache-2.0
#include "ttdhp/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ttdhp/channel.hpp"

namespace ttdhp {

namespace {

std::string format_sig12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Runs job(i) for i in [0, count) on `workers` threads. Each job writes only
// its own result slot, so the output order never depends on scheduling.
void parallel_for(int count, int workers, const std::function<void(int)> &job) {
    if (workers < 1)
        throw std::invalid_argument("sweep: worker count must be positive");
    if (workers == 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int spawn = std::min(workers, count);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int w = 0; w < spawn; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                job(i);
        });
    for (std::thread &t : pool)
        t.join();
}

double mean(const std::vector<double> &values) {
    double acc = 0.0;
    for (double v : values)
        acc += v;
    return acc / static_cast<double>(values.size());
}

std::string point_id(Designer d, int chain, int num_chains) {
    std::string id = designer_name(d);
    if (num_chains > 1)
        id += "." + std::to_string(chain + 1);
    return id;
}

std::vector<double> designer_profile(Designer d, const ScenarioParams &sc, int chain) {
    switch (d) {
    case Designer::closed_form:
        return gain_profile(optimal_design(sc), sc, chain);
    case Designer::baseline:
        return gain_profile(baseline_design(sc), sc, chain);
    case Designer::fully_digital: {
        FullyDigitalPrecoder reference(sc.geom.num_antennas(), sc.directions);
        std::vector<double> out(static_cast<std::size_t>(sc.grid.subcarrier_count()));
        for (int k = 0; k < sc.grid.subcarrier_count(); ++k)
            out[static_cast<std::size_t>(k)] = array_gain(
                reference.column(sc.grid, k, chain), sc.grid, k,
                sc.directions[static_cast<std::size_t>(chain)]);
        return out;
    }
    }
    throw std::invalid_argument("sweep: unknown designer");
}

std::vector<SweepPoint> run_designer_sweep(const ScenarioParams &base, const std::string &var,
                                           std::span<const double> values,
                                           const std::function<ScenarioParams(double)> &at,
                                           std::span<const Designer> designers,
                                           const SweepOptions &opt) {
    if (designers.empty())
        throw std::invalid_argument("sweep: at least one designer required");
    const int chains = base.geom.num_chains();
    const int per_value = static_cast<int>(designers.size()) * chains;
    std::vector<SweepPoint> points(values.size() * static_cast<std::size_t>(per_value));
    parallel_for(static_cast<int>(values.size()), opt.workers, [&](int vi) {
        const ScenarioParams sc = at(values[static_cast<std::size_t>(vi)]);
        for (int di = 0; di < static_cast<int>(designers.size()); ++di)
            for (int l = 0; l < chains; ++l) {
                SweepPoint &p = points[static_cast<std::size_t>(vi * per_value + di * chains + l)];
                p.designer = point_id(designers[static_cast<std::size_t>(di)], l, chains);
                p.swept_var = var;
                p.swept_value = values[static_cast<std::size_t>(vi)];
                p.per_subcarrier_gains =
                    designer_profile(designers[static_cast<std::size_t>(di)], sc, l);
                p.average_gain = mean(p.per_subcarrier_gains);
            }
    });
    return points;
}

} // namespace

std::string designer_name(Designer d) {
    switch (d) {
    case Designer::closed_form:
        return "closed_form";
    case Designer::baseline:
        return "baseline";
    case Designer::fully_digital:
        return "fully_digital";
    }
    throw std::invalid_argument("sweep: unknown designer");
}

Designer parse_designer(const std::string &name) {
    if (name == "closed_form")
        return Designer::closed_form;
    if (name == "baseline")
        return Designer::baseline;
    if (name == "fully_digital")
        return Designer::fully_digital;
    throw std::invalid_argument("sweep: unknown designer '" + name + "'");
}

std::vector<double> gain_profile(const HybridDesign &design, const ScenarioParams &sc, int chain) {
    std::vector<double> out(static_cast<std::size_t>(sc.grid.subcarrier_count()));
    for (int k = 0; k < sc.grid.subcarrier_count(); ++k)
        out[static_cast<std::size_t>(k)] =
            array_gain(effective_beam(design, sc.grid, k, chain), sc.grid, k,
                       sc.directions[static_cast<std::size_t>(chain)]);
    return out;
}

double average_gain(const HybridDesign &design, const ScenarioParams &sc, int chain) {
    return mean(gain_profile(design, sc, chain));
}

std::vector<SweepPoint> run_gain_pattern(const OfdmGrid &grid, double direction,
                                         std::span<const int> antenna_counts,
                                         const SweepOptions &opt) {
    if (antenna_counts.empty())
        throw std::invalid_argument("sweep: at least one antenna count required");
    std::vector<SweepPoint> points(antenna_counts.size());
    parallel_for(static_cast<int>(antenna_counts.size()), opt.workers, [&](int i) {
        SweepPoint &p = points[static_cast<std::size_t>(i)];
        p.designer = "matched";
        p.swept_var = "nt";
        p.swept_value = antenna_counts[static_cast<std::size_t>(i)];
        p.per_subcarrier_gains =
            squint_profile(grid, antenna_counts[static_cast<std::size_t>(i)], direction);
        p.average_gain = mean(p.per_subcarrier_gains);
    });
    return points;
}

std::vector<SweepPoint> run_nt_sweep(const ScenarioParams &base, std::span<const int> antenna_counts,
                                     std::span<const Designer> designers, const SweepOptions &opt) {
    std::vector<double> values;
    values.reserve(antenna_counts.size());
    for (int nt : antenna_counts) {
        if (nt < 1 || nt % base.geom.ttd_per_chain() != 0)
            throw std::invalid_argument(
                "sweep: antenna counts must be positive multiples of the device count");
        values.push_back(static_cast<double>(nt));
    }
    return run_designer_sweep(
        base, "nt", values, [&](double v) { return base.with_antennas(static_cast<int>(v)); },
        designers, opt);
}

std::vector<SweepPoint> run_tmax_sweep(const ScenarioParams &base, std::span<const double> bounds_s,
                                       std::span<const Designer> designers,
                                       const SweepOptions &opt) {
    std::vector<double> values;
    values.reserve(bounds_s.size());
    for (double b : bounds_s) {
        if (!(b >= 0.0))
            throw std::invalid_argument("sweep: delay bounds must be non-negative");
        // The swept value matches its column name and is reported in ps.
        values.push_back(b * 1e12);
    }
    return run_designer_sweep(
        base, "tmax_ps", values, [&](double v) { return base.with_delay_bound(v * 1e-12); },
        designers, opt);
}

void write_csv(std::ostream &out, std::span<const SweepPoint> points, bool per_subcarrier) {
    out << "designer,swept_var,swept_value,avg_gain,k,gain_k\n";
    for (const SweepPoint &p : points) {
        const std::string value = format_sig12(p.swept_value);
        out << p.designer << ',' << p.swept_var << ',' << value << ','
            << format_sig12(p.average_gain) << ",,\n";
        if (!per_subcarrier)
            continue;
        for (std::size_t k = 0; k < p.per_subcarrier_gains.size(); ++k)
            out << p.designer << ',' << p.swept_var << ',' << value << ','
                << format_sig12(p.average_gain) << ',' << (k + 1) << ','
                << format_sig12(p.per_subcarrier_gains[k]) << '\n';
    }
}

} // namespace ttdhp
