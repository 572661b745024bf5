#include "mig/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include <json.hpp>

namespace mig {

namespace {

using nlohmann::json;

/// Round-trip-safe text form of a double ('.' decimal, C locale).
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw UsageError("cannot open output file '" + path + "'");
    out << content;
    if (!out.flush())
        throw UsageError("failed writing output file '" + path + "'");
}

std::string csv_of(const OffsetErrorResult& r) {
    std::string s = "interference_count,estimator,l_error,stderr,trials\n";
    for (const OffsetErrorRow& row : r.rows)
        s += std::to_string(row.interference_count) + "," + row.estimator + "," +
             fmt(row.l_error) + "," + fmt(row.std_error) + "," + std::to_string(row.trials) +
             "\n";
    return s;
}

std::string csv_of(const SampleCountResult& r) {
    std::string s = "k,estimator,t_error,stderr,trials\n";
    for (const SampleCountRow& row : r.rows)
        s += std::to_string(row.k) + "," + row.estimator + "," + fmt(row.t_error) + "," +
             fmt(row.std_error) + "," + std::to_string(row.trials) + "\n";
    return s;
}

std::string csv_of(const ProfileResult& r) {
    std::string s = "cell,measure,filtered,m,h,statistic,stderr,trials\n";
    for (const ProfileRow& row : r.rows)
        s += std::to_string(row.cell) + "," + row.measure + "," + (row.filtered ? "1" : "0") +
             "," + std::to_string(row.m) + "," + fmt(row.h) + "," + fmt(row.statistic) + "," +
             fmt(row.std_error) + "," + std::to_string(row.trials) + "\n";
    return s;
}

std::string csv_of(const AdResult& r) {
    std::string s = "measure,filtered,m,h,ad,stderr,trials\n";
    for (const AdRow& row : r.rows)
        s += row.measure + "," + (row.filtered ? "1" : "0") + "," + std::to_string(row.m) + "," +
             fmt(row.h) + "," + fmt(row.ad) + "," + fmt(row.std_error) + "," +
             std::to_string(row.trials) + "\n";
    return s;
}

std::string csv_of(const PdCurveResult& r) {
    std::string s = "scnr_db,detector_id,measure,filtered,p_d,stderr,trials\n";
    for (const PdPoint& row : r.rows)
        s += fmt(row.scnr_db) + "," + row.detector_id + "," + row.measure + "," +
             (row.filtered ? "1" : "0") + "," + fmt(row.p_d) + "," + fmt(row.std_error) + "," +
             std::to_string(row.trials) + "\n";
    return s;
}

std::string csv_of(const CalibrateResult& r) {
    std::string s = "detector_id,measure,filtered,p_fa,calibration_trials,gamma,fa_trials,"
                    "fa_rate\n";
    for (const CalibrateRow& row : r.rows)
        s += row.detector_id + "," + row.measure + "," + (row.filtered ? "1" : "0") + "," +
             fmt(row.p_fa) + "," + std::to_string(row.calibration_trials) + "," +
             fmt(row.gamma) + "," + std::to_string(row.fa_trials) + "," + fmt(row.fa_rate) +
             "\n";
    return s;
}

json stderr_array(const OffsetErrorResult& r) {
    json a = json::array();
    for (const OffsetErrorRow& row : r.rows)
        a.push_back(row.std_error);
    return a;
}
json stderr_array(const SampleCountResult& r) {
    json a = json::array();
    for (const SampleCountRow& row : r.rows)
        a.push_back(row.std_error);
    return a;
}
json stderr_array(const ProfileResult& r) {
    json a = json::array();
    for (const ProfileRow& row : r.rows)
        a.push_back(row.std_error);
    return a;
}
json stderr_array(const AdResult& r) {
    json a = json::array();
    for (const AdRow& row : r.rows)
        a.push_back(row.std_error);
    return a;
}
json stderr_array(const PdCurveResult& r) {
    json a = json::array();
    for (const PdPoint& row : r.rows)
        a.push_back(row.std_error);
    return a;
}

json base_sidecar(const ResolvedConfig& config) {
    return json{{"config", json::parse(resolved_json_text(config))},
                {"seed", config.seed()}};
}

template <typename Params, typename Result, typename RunFn, typename Extra>
void run_and_write(const ResolvedConfig& config, const RunPaths& paths, const Params& params,
                   RunFn run, Extra extra) {
    Result result;
    try {
        run(params, result);
    } catch (...) {
        write_text_file(paths.csv + ".partial", csv_of(result));
        throw;
    }
    json sidecar = base_sidecar(config);
    extra(result, sidecar);
    write_text_file(paths.csv, csv_of(result));
    write_text_file(paths.sidecar, sidecar.dump(2) + "\n");
}

} // namespace

RunPaths run_paths(const std::string& out_dir, const ResolvedConfig& config) {
    const std::string stem =
        (std::filesystem::path(out_dir) / config.basename).string();
    return {stem + ".csv", stem + ".json"};
}

void run_experiment(const ResolvedConfig& config, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const RunPaths paths = run_paths(out_dir, config);
    std::visit(
        [&](const auto& params) {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, OffsetErrorParams>) {
                run_and_write<T, OffsetErrorResult>(
                    config, paths, params, run_offset_error,
                    [](const OffsetErrorResult& r, json& sc) { sc["row_stderr"] = stderr_array(r); });
            } else if constexpr (std::is_same_v<T, SampleCountParams>) {
                run_and_write<T, SampleCountResult>(
                    config, paths, params, run_sample_count,
                    [](const SampleCountResult& r, json& sc) { sc["row_stderr"] = stderr_array(r); });
            } else if constexpr (std::is_same_v<T, ProfileParams>) {
                run_and_write<T, ProfileResult>(
                    config, paths, params, run_statistic_profile,
                    [](const ProfileResult& r, json& sc) { sc["row_stderr"] = stderr_array(r); });
            } else if constexpr (std::is_same_v<T, AdParams>) {
                run_and_write<T, AdResult>(
                    config, paths, params, run_ad,
                    [](const AdResult& r, json& sc) { sc["row_stderr"] = stderr_array(r); });
            } else if constexpr (std::is_same_v<T, PdCurveParams>) {
                run_and_write<T, PdCurveResult>(
                    config, paths, params, run_pd_curve, [](const PdCurveResult& r, json& sc) {
                        sc["row_stderr"] = stderr_array(r);
                        json thresholds = json::object();
                        for (std::size_t d = 0; d < r.detector_ids.size(); ++d)
                            thresholds[r.detector_ids[d]] = r.thresholds[d];
                        sc["thresholds"] = std::move(thresholds);
                    });
            } else {
                static_assert(std::is_same_v<T, CalibrateParams>);
                run_and_write<T, CalibrateResult>(
                    config, paths, params, run_calibrate, [](const CalibrateResult& r, json& sc) {
                        json thresholds = json::object();
                        for (const CalibrateRow& row : r.rows)
                            thresholds[row.detector_id] = row.gamma;
                        sc["thresholds"] = std::move(thresholds);
                    });
            }
        },
        config.params);
}

int run_cli(const std::string& subcommand, const std::string& config_path,
            const std::string& out_dir, std::optional<std::uint64_t> seed_override,
            std::optional<int> threads_override, std::ostream& out, std::ostream& err) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        err << "error: cannot read config file '" << config_path << "'\n";
        return kExitConfigError;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    ResolvedConfig config;
    try {
        config = parse_config(buffer.str(), seed_override);
        if (threads_override) {
            if (*threads_override < 1)
                throw ConfigError("config: threads: must be at least 1");
            std::visit([&](auto& p) { p.threads = *threads_override; }, config.params);
        }
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kExitConfigError;
    }

    if (subcommand == "validate") {
        out << resolved_json_text(config);
        return kExitOk;
    }
    if (subcommand != config.experiment) {
        err << "error: config declares experiment '" << config.experiment
            << "' but the subcommand is '" << subcommand << "'\n";
        return kExitConfigError;
    }

    try {
        run_experiment(config, out_dir);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        err << "note: partial results, if any, carry the suffix .partial\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

} // namespace mig
