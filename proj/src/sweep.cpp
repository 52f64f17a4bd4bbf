#include "qbsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qbsim/csv.hpp"
#include "qbsim/errors.hpp"

namespace qbsim {

namespace {

ScenarioConfig apply_value(const ScenarioFile& base, SweepParam param, double value) {
    ScenarioConfig scenario = base.scenario;
    switch (param) {
    case SweepParam::gamma_up:
        scenario.gamma_up = value;
        break;
    case SweepParam::nbar:
        scenario.nbar = value;
        break;
    case SweepParam::n_charger: {
        if (value < 1.0 || value != std::floor(value))
            throw std::invalid_argument("n_charger sweep values must be positive integers");
        scenario.n_charger = static_cast<int>(value);
        break;
    }
    case SweepParam::m_reservoirs: {
        if (value < 1.0 || value != std::floor(value))
            throw std::invalid_argument("m_reservoirs sweep values must be positive integers");
        const auto m = static_cast<std::size_t>(value);
        const int size = base.scenario.battery_sizes.front();
        const Level charger_level = base.scenario.level(0);
        scenario.battery_sizes.assign(m, size);
        scenario.initial_levels.assign(m + 1, Level::ground);
        scenario.initial_levels[0] = charger_level;
        break;
    }
    }
    return scenario;
}

SweepRow run_row(const ScenarioFile& base, SweepParam param, double value) {
    SweepRow row;
    row.value = value;
    try {
        const ScenarioConfig scenario = apply_value(base, param, value);
        scenario.validate();
        const TrajectoryResult trajectory = integrate_to_steady(scenario, base.method);
        for (std::size_t mu = 0; mu < scenario.ensemble_count(); ++mu)
            row.steady.push_back(steady_state_value(trajectory, mu));
        row.charging_tau = charging_time(trajectory, 1);
    } catch (const std::exception& err) {
        row.steady.clear();
        row.error = err.what();
    }
    return row;
}

} // namespace

SweepParam parse_sweep_param(const std::string& name) {
    if (name == "gamma_up") return SweepParam::gamma_up;
    if (name == "n_charger") return SweepParam::n_charger;
    if (name == "nbar") return SweepParam::nbar;
    if (name == "m_reservoirs") return SweepParam::m_reservoirs;
    throw SchemaError("param: must be one of gamma_up, n_charger, nbar, m_reservoirs");
}

std::vector<SweepRow> run_sweep(const ScenarioFile& base, SweepParam param,
                                std::span<const double> values, unsigned jobs) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<SweepRow> rows(values.size());

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(values.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= values.size()) return;
            rows[k] = run_row(base, param, values[k]);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& param_name,
                     std::span<const SweepRow> rows) {
    std::size_t max_batteries = 0;
    for (const SweepRow& row : rows)
        if (row.steady.size() > 1) max_batteries = std::max(max_batteries, row.steady.size() - 1);

    out << "param,value,steady_E_C";
    for (std::size_t m = 1; m <= max_batteries; ++m) out << ",steady_E_B" << m;
    out << ",charging_tau,error\n";
    for (const SweepRow& row : rows) {
        out << param_name << "," << format_value(row.value);
        out << "," << (row.steady.empty() ? "NA" : format_value(row.steady[0]));
        for (std::size_t m = 1; m <= max_batteries; ++m)
            out << ","
                << (m < row.steady.size() ? format_value(row.steady[m]) : std::string("NA"));
        out << "," << (row.charging_tau ? format_value(*row.charging_tau) : std::string("NA"));
        std::string error = row.error;
        for (char& c : error)
            if (c == ',' || c == '\n') c = ';';
        out << "," << error << "\n";
    }
}

} // namespace qbsim
