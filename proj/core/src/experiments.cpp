#include "mig/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "mig/parallel.hpp"
#include "mig/rng.hpp"

namespace mig {

namespace {

constexpr std::array<Measure, 3> kMedianMeasures = {Measure::lem, Measure::jbld, Measure::skld};

struct MeanStderr {
    double mean;
    double se;
};

MeanStderr mean_stderr(const std::vector<double>& v) {
    const auto n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= n;
    if (v.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double relative_error(const CMatrix& estimate, const CMatrix& reference) {
    return (estimate - reference).norm() / reference.norm();
}

std::vector<HpdMatrix> toeplitz_all(const std::vector<SampleVector>& samples) {
    std::vector<HpdMatrix> mats;
    mats.reserve(samples.size());
    for (const SampleVector& x : samples)
        mats.push_back(toeplitz_estimate(x));
    return mats;
}

std::vector<HpdMatrix> take_indices(const std::vector<HpdMatrix>& mats,
                                    const std::vector<int>& indices) {
    std::vector<HpdMatrix> out;
    out.reserve(indices.size());
    for (int i : indices)
        out.push_back(mats[i]);
    return out;
}

void require(bool ok, const char* message) {
    if (!ok)
        throw UsageError(message);
}

} // namespace

// ---------------------------------------------------------------- offset

void run_offset_error(const OffsetErrorParams& params, OffsetErrorResult& out) {
    params.scenario.validate();
    params.median_cfg.validate();
    require(params.k >= 2, "offset_error: k must be at least 2");
    require(!params.interference_counts.empty(), "offset_error: empty interference count grid");
    require(params.trials >= 1, "offset_error: trials must be at least 1");
    for (int c : params.interference_counts)
        require(c >= 0 && c <= params.k, "offset_error: interference count out of [0, k]");

    const ScenarioSampler sampler(params.scenario);
    const double alpha =
        sampler.amplitude(params.interference_f_d, params.interference_scnr_db);
    const CVector wave =
        alpha * steering_vector(params.scenario.n, params.interference_f_d);

    const std::size_t n_counts = params.interference_counts.size();
    const std::size_t n_est = 1 + kMedianMeasures.size();
    const auto trials = static_cast<std::size_t>(params.trials);
    // values[(count_idx * n_est + est) * trials + t]
    std::vector<double> values(n_counts * n_est * trials);
    const int max_count =
        *std::max_element(params.interference_counts.begin(), params.interference_counts.end());

    parallel_for(trials, params.threads, [&](std::size_t t) {
        std::mt19937_64 rng =
            make_stream(params.seed, {phase::offset_error, 0, static_cast<std::uint64_t>(t)});
        std::vector<SampleVector> clean(static_cast<std::size_t>(params.k));
        for (SampleVector& x : clean)
            x = sampler.draw_cell(rng);
        const std::vector<HpdMatrix> clean_mats = toeplitz_all(clean);

        std::vector<int> order(clean.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);
        std::shuffle(order.begin(), order.end(), rng);

        // Interference sets are nested: count c contaminates the first c
        // cells of the shuffled order, so c = 0 reproduces R0 exactly.
        std::vector<SampleVector> dirty(static_cast<std::size_t>(max_count));
        std::vector<HpdMatrix> dirty_mats;
        dirty_mats.reserve(static_cast<std::size_t>(max_count));
        for (int i = 0; i < max_count; ++i) {
            dirty[i] = clean[order[i]] + wave;
            dirty_mats.push_back(toeplitz_estimate(dirty[i]));
        }

        const CMatrix scm0 = scm(clean).m();
        std::array<CMatrix, 3> med0;
        for (std::size_t mi = 0; mi < kMedianMeasures.size(); ++mi)
            med0[mi] =
                geometric_median(kMedianMeasures[mi], clean_mats, params.median_cfg).estimate.m();

        for (std::size_t ci = 0; ci < n_counts; ++ci) {
            const int count = params.interference_counts[ci];
            std::vector<SampleVector> samples = clean;
            std::vector<HpdMatrix> mats = clean_mats;
            for (int i = 0; i < count; ++i) {
                samples[order[i]] = dirty[i];
                mats[order[i]] = dirty_mats[i];
            }
            const auto slot = [&](std::size_t est) { return (ci * n_est + est) * trials + t; };
            values[slot(0)] = relative_error(scm(samples).m(), scm0);
            for (std::size_t mi = 0; mi < kMedianMeasures.size(); ++mi) {
                const CMatrix med =
                    geometric_median(kMedianMeasures[mi], mats, params.median_cfg).estimate.m();
                values[slot(mi + 1)] = relative_error(med, med0[mi]);
            }
        }
    });

    for (std::size_t ci = 0; ci < n_counts; ++ci) {
        for (std::size_t est = 0; est < n_est; ++est) {
            const auto begin = values.begin() + static_cast<std::ptrdiff_t>((ci * n_est + est) * trials);
            const MeanStderr ms = mean_stderr({begin, begin + static_cast<std::ptrdiff_t>(trials)});
            out.rows.push_back({params.interference_counts[ci],
                                est == 0 ? "scm" : to_string(kMedianMeasures[est - 1]), ms.mean,
                                ms.se, params.trials});
        }
    }
}

// ---------------------------------------------------------------- sample count

void run_sample_count(const SampleCountParams& params, SampleCountResult& out) {
    params.scenario.validate();
    params.median_cfg.validate();
    require(!params.k_values.empty(), "sample_count: empty K grid");
    require(params.trials >= 1, "sample_count: trials must be at least 1");
    for (int k : params.k_values)
        require(k >= 1, "sample_count: K values must be positive");

    const ScenarioSampler sampler(params.scenario);
    const CMatrix sigma = sampler.covariance().m();
    const std::size_t n_k = params.k_values.size();
    const std::size_t n_est = 1 + kMedianMeasures.size();
    const auto trials = static_cast<std::size_t>(params.trials);
    std::vector<double> values(n_k * n_est * trials);

    parallel_for(n_k * trials, params.threads, [&](std::size_t item) {
        const std::size_t ki = item / trials;
        const std::size_t t = item % trials;
        std::mt19937_64 rng = make_stream(
            params.seed,
            {phase::sample_count, static_cast<std::uint64_t>(ki), static_cast<std::uint64_t>(t)});
        std::vector<SampleVector> samples(static_cast<std::size_t>(params.k_values[ki]));
        for (SampleVector& x : samples)
            x = sampler.draw_cell(rng);
        const auto slot = [&](std::size_t est) { return (ki * n_est + est) * trials + t; };
        values[slot(0)] = relative_error(scm(samples).m(), sigma);
        const std::vector<HpdMatrix> mats = toeplitz_all(samples);
        for (std::size_t mi = 0; mi < kMedianMeasures.size(); ++mi) {
            const CMatrix med =
                geometric_median(kMedianMeasures[mi], mats, params.median_cfg).estimate.m();
            values[slot(mi + 1)] = relative_error(med, sigma);
        }
    });

    for (std::size_t ki = 0; ki < n_k; ++ki) {
        for (std::size_t est = 0; est < n_est; ++est) {
            const auto begin = values.begin() + static_cast<std::ptrdiff_t>((ki * n_est + est) * trials);
            const MeanStderr ms = mean_stderr({begin, begin + static_cast<std::ptrdiff_t>(trials)});
            out.rows.push_back({params.k_values[ki],
                                est == 0 ? "scm" : to_string(kMedianMeasures[est - 1]), ms.mean,
                                ms.se, params.trials});
        }
    }
}

// ---------------------------------------------------------------- profile

namespace {

/// Leave-one-out statistics over already-filtered matrices; matches
/// mig_statistic cell by cell because the filter stage does not depend on
/// which cell is under test.
std::vector<double> per_cell_statistics(const std::vector<HpdMatrix>& mats, Measure measure,
                                        const MedianSolverConfig& median_cfg, int guard_cells) {
    std::vector<double> stats(mats.size());
    for (std::size_t c = 0; c < mats.size(); ++c) {
        const std::vector<int> sec =
            secondary_indices(static_cast<int>(mats.size()), static_cast<int>(c), guard_cells);
        const MedianResult med = geometric_median(measure, take_indices(mats, sec), median_cfg);
        stats[c] = dist(measure, mats[c], med.estimate);
    }
    return stats;
}

void max_normalize(std::vector<double>& stats) {
    const double peak = *std::max_element(stats.begin(), stats.end());
    if (peak > 0.0)
        for (double& s : stats)
            s /= peak;
}

} // namespace

void run_statistic_profile(const ProfileParams& params, ProfileResult& out) {
    params.scenario.validate();
    params.median_cfg.validate();
    require(params.num_cells >= 2, "statistic_profile: need at least two cells");
    require(params.target_cell >= 0 && params.target_cell < params.num_cells,
            "statistic_profile: target_cell out of range");
    require(!params.measures.empty(), "statistic_profile: empty measure list");
    require(params.trials >= 1, "statistic_profile: trials must be at least 1");

    const ScenarioSampler sampler(params.scenario);
    const double alpha = sampler.amplitude(params.target.f_d, params.target.scnr_db);
    const CVector wave = alpha * steering_vector(params.scenario.n, params.target.f_d);

    // Variants per measure: unfiltered first, then each (m, h) of the grid.
    const std::size_t variants_per_measure = 1 + params.filter_grid.size();
    const std::size_t n_variants = params.measures.size() * variants_per_measure;
    const auto n_cells = static_cast<std::size_t>(params.num_cells);
    const auto trials = static_cast<std::size_t>(params.trials);
    std::vector<double> values(n_variants * n_cells * trials);

    parallel_for(trials, params.threads, [&](std::size_t t) {
        std::mt19937_64 rng = make_stream(
            params.seed, {phase::statistic_profile, 0, static_cast<std::uint64_t>(t)});
        std::vector<SampleVector> cells(n_cells);
        for (SampleVector& x : cells)
            x = sampler.draw_cell(rng);
        cells[params.target_cell] += wave;
        const std::vector<HpdMatrix> mats = toeplitz_all(cells);

        for (std::size_t mi = 0; mi < params.measures.size(); ++mi) {
            const Measure measure = params.measures[mi];
            for (std::size_t vi = 0; vi < variants_per_measure; ++vi) {
                std::vector<double> stats;
                if (vi == 0) {
                    stats = per_cell_statistics(mats, measure, params.median_cfg,
                                                params.guard_cells);
                } else {
                    const FilterGridEntry& fg = params.filter_grid[vi - 1];
                    const std::vector<HpdMatrix> filtered =
                        manifold_filter(mats, FilterParams{fg.m, fg.h, measure});
                    stats = per_cell_statistics(filtered, measure, params.median_cfg,
                                                params.guard_cells);
                }
                max_normalize(stats);
                const std::size_t variant = mi * variants_per_measure + vi;
                for (std::size_t c = 0; c < n_cells; ++c)
                    values[(variant * n_cells + c) * trials + t] = stats[c];
            }
        }
    });

    for (std::size_t mi = 0; mi < params.measures.size(); ++mi) {
        for (std::size_t vi = 0; vi < variants_per_measure; ++vi) {
            const std::size_t variant = mi * variants_per_measure + vi;
            const bool filtered = vi > 0;
            const int m = filtered ? params.filter_grid[vi - 1].m : 0;
            const double h = filtered ? params.filter_grid[vi - 1].h : 0.0;
            for (std::size_t c = 0; c < n_cells; ++c) {
                const auto begin =
                    values.begin() + static_cast<std::ptrdiff_t>((variant * n_cells + c) * trials);
                const MeanStderr ms =
                    mean_stderr({begin, begin + static_cast<std::ptrdiff_t>(trials)});
                out.rows.push_back({static_cast<int>(c), to_string(params.measures[mi]), filtered,
                                    m, h, ms.mean, ms.se, params.trials});
            }
        }
    }
}

// ---------------------------------------------------------------- AD

std::vector<AdMeasureSpec> default_ad_measures() {
    return {{Measure::lem, {11, 1.5}}, {Measure::jbld, {11, 0.5}}, {Measure::skld, {11, 1.5}}};
}

void run_ad(const AdParams& params, AdResult& out) {
    params.scenario.validate();
    require(params.num_cells >= 2, "ad: need at least two cells");
    require(params.target_cell >= 0 && params.target_cell < params.num_cells,
            "ad: target_cell out of range");
    require(!params.measures.empty(), "ad: empty measure list");
    require(params.trials >= 1, "ad: trials must be at least 1");
    for (const AdMeasureSpec& spec : params.measures)
        FilterParams{spec.filter.m, spec.filter.h, spec.measure}.validate();

    const ScenarioSampler sampler(params.scenario);
    const double alpha = sampler.amplitude(params.target.f_d, params.target.scnr_db);
    const CVector wave = alpha * steering_vector(params.scenario.n, params.target.f_d);

    const std::size_t n_variants = params.measures.size() * 2; // unfiltered, filtered
    const auto trials = static_cast<std::size_t>(params.trials);
    std::vector<double> values(n_variants * trials);
    const std::vector<int> sec =
        secondary_indices(params.num_cells, params.target_cell, params.guard_cells);

    parallel_for(trials, params.threads, [&](std::size_t t) {
        std::mt19937_64 rng =
            make_stream(params.seed, {phase::ad, 0, static_cast<std::uint64_t>(t)});
        std::vector<SampleVector> cells(static_cast<std::size_t>(params.num_cells));
        for (SampleVector& x : cells)
            x = sampler.draw_cell(rng);
        cells[params.target_cell] += wave;
        const std::vector<HpdMatrix> mats = toeplitz_all(cells);

        for (std::size_t mi = 0; mi < params.measures.size(); ++mi) {
            const AdMeasureSpec& spec = params.measures[mi];
            for (int filtered = 0; filtered < 2; ++filtered) {
                const std::vector<HpdMatrix>& working =
                    filtered ? manifold_filter(mats, FilterParams{spec.filter.m, spec.filter.h,
                                                                  spec.measure})
                             : mats;
                const double ai_signal =
                    anisotropy(spec.measure, working[params.target_cell]).index;
                double ai_ccm = 0.0;
                for (int c : sec)
                    ai_ccm += anisotropy(spec.measure, working[static_cast<std::size_t>(c)]).index;
                ai_ccm /= static_cast<double>(sec.size());
                values[(mi * 2 + static_cast<std::size_t>(filtered)) * trials + t] =
                    ad_ratio(ai_signal, ai_ccm);
            }
        }
    });

    for (std::size_t mi = 0; mi < params.measures.size(); ++mi) {
        const AdMeasureSpec& spec = params.measures[mi];
        for (int filtered = 0; filtered < 2; ++filtered) {
            const auto begin =
                values.begin() +
                static_cast<std::ptrdiff_t>((mi * 2 + static_cast<std::size_t>(filtered)) * trials);
            const MeanStderr ms = mean_stderr({begin, begin + static_cast<std::ptrdiff_t>(trials)});
            out.rows.push_back({to_string(spec.measure), filtered != 0,
                                filtered ? spec.filter.m : 0, filtered ? spec.filter.h : 0.0,
                                ms.mean, ms.se, params.trials});
        }
    }
}

// ---------------------------------------------------------------- detection

FilterGridEntry default_detection_filter(Measure measure) {
    switch (measure) {
    case Measure::jbld:
        return {11, 1.5};
    case Measure::skld:
        return {11, 6.0};
    default:
        return {11, 4.5};
    }
}

std::vector<PdDetectorSpec> default_detector_bank(const std::vector<Measure>& measures) {
    std::vector<PdDetectorSpec> bank;
    bank.reserve(measures.size() * 2);
    for (Measure m : measures) {
        bank.push_back({to_string(m), m, std::nullopt, {}, 0});
        bank.push_back({to_string(m) + "_filtered", m, default_detection_filter(m), {}, 0});
    }
    return bank;
}

CellMapBuilder::CellMapBuilder(const ClutterScenario& scenario, int k, int cut_index,
                               const InterferenceSpec& interference, const TargetSpec& target)
    : sampler_(scenario), k_(k), cut_(cut_index < 0 ? k / 2 : cut_index),
      interference_(interference), target_(target) {
    require(k_ >= 1, "CellMapBuilder: need at least one secondary cell");
    require(cut_ >= 0 && cut_ <= k_, "CellMapBuilder: cut_index out of range");
    interference_.validate();

    target_dir_ = steering_vector(scenario.n, target_.f_d);
    if (interference_.count > 0)
        interference_wave_ = sampler_.amplitude(interference_.f_d, interference_.scnr_db) *
                             steering_vector(scenario.n, interference_.f_d);

    secondary_.reserve(static_cast<std::size_t>(k_));
    for (int i = 0; i <= k_; ++i)
        if (i != cut_)
            secondary_.push_back(i);
    if (interference_.placement == Placement::fixed) {
        for (int idx : interference_.fixed_indices)
            require(idx >= 0 && idx <= k_ && idx != cut_,
                    "CellMapBuilder: fixed interference index must name a secondary cell");
    } else {
        require(interference_.count <= k_,
                "CellMapBuilder: more interferences than secondary cells");
    }
}

CellMap CellMapBuilder::build(std::mt19937_64& rng, const double* target_scnr_db) const {
    CellMap map;
    map.cut_index = cut_;
    map.cells.reserve(static_cast<std::size_t>(k_) + 1);
    for (int i = 0; i <= k_; ++i)
        map.cells.push_back(sampler_.draw_cell(rng));

    if (interference_.count > 0) {
        if (interference_.placement == Placement::fixed) {
            for (int i = 0; i < interference_.count; ++i)
                map.cells[interference_.fixed_indices[i]] += interference_wave_;
        } else {
            // Partial Fisher-Yates: the first `count` entries are a uniform
            // sample of secondary cells without replacement.
            std::vector<int> pool = secondary_;
            for (int i = 0; i < interference_.count; ++i) {
                std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                                pool.size() - 1);
                std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
                map.cells[pool[static_cast<std::size_t>(i)]] += interference_wave_;
            }
        }
    }
    if (target_scnr_db) {
        const double alpha = sampler_.amplitude(target_.f_d, *target_scnr_db);
        map.cells[cut_] += alpha * target_dir_;
    }
    return map;
}

CellMap CellMapBuilder::h0(std::mt19937_64& rng) const { return build(rng, nullptr); }

CellMap CellMapBuilder::h1(std::mt19937_64& rng, double scnr_db) const {
    return build(rng, &scnr_db);
}

namespace {

struct DetectorBank {
    std::vector<std::string> ids;
    std::vector<std::string> measures; ///< "amf" for the baseline
    std::vector<bool> filtered;
    std::vector<StatisticFn> statistics;
};

DetectorBank build_bank(const std::vector<PdDetectorSpec>& specs, bool include_amf, double p_fa,
                        const TargetSpec& target, int n) {
    require(!specs.empty() || include_amf, "detection experiment: no detectors configured");
    DetectorBank bank;
    for (const PdDetectorSpec& spec : specs) {
        DetectorConfig cfg;
        cfg.measure = spec.measure;
        if (spec.filter)
            cfg.filter = FilterParams{spec.filter->m, spec.filter->h, spec.measure};
        cfg.median_cfg = spec.median_cfg;
        cfg.guard_cells = spec.guard_cells;
        cfg.p_fa = p_fa;
        cfg.validate();
        std::string id = spec.id.empty()
                             ? to_string(spec.measure) + (spec.filter ? "_filtered" : "")
                             : spec.id;
        for (const std::string& existing : bank.ids)
            require(existing != id, "detection experiment: duplicate detector id");
        bank.ids.push_back(std::move(id));
        bank.measures.push_back(to_string(spec.measure));
        bank.filtered.push_back(spec.filter.has_value());
        bank.statistics.push_back(
            [cfg](const CellMap& map) { return mig_statistic(map, cfg); });
    }
    if (include_amf) {
        const CVector p = steering_vector(n, target.f_d);
        bank.ids.emplace_back("amf");
        bank.measures.emplace_back("amf");
        bank.filtered.push_back(false);
        bank.statistics.push_back([p](const CellMap& map) {
            const std::vector<int> sec =
                secondary_indices(static_cast<int>(map.cells.size()), map.cut_index, 0);
            std::vector<SampleVector> samples;
            samples.reserve(sec.size());
            for (int i : sec)
                samples.push_back(map.cells[i]);
            return amf_statistic(map.cells[map.cut_index], p, scm(samples));
        });
    }
    return bank;
}

std::int64_t resolve_calibration_trials(std::int64_t requested, double p_fa) {
    if (requested > 0)
        return requested;
    return static_cast<std::int64_t>(std::ceil(100.0 / p_fa));
}

} // namespace

void run_pd_curve(const PdCurveParams& params, PdCurveResult& out) {
    params.scenario.validate();
    require(!params.scnr_grid_db.empty(), "pd_curve: empty SCNR grid");
    require(params.trials >= 1, "pd_curve: trials must be at least 1");
    require(params.p_fa > 0.0 && params.p_fa < 1.0, "pd_curve: p_fa must lie in (0, 1)");

    const CellMapBuilder builder(params.scenario, params.k, params.cut_index,
                                 params.interference, params.target);
    const DetectorBank bank = build_bank(params.detectors, params.include_amf, params.p_fa,
                                         params.target, params.scenario.n);
    const std::size_t n_det = bank.ids.size();
    out.detector_ids = bank.ids;

    const std::int64_t cal_trials =
        resolve_calibration_trials(params.calibration_trials, params.p_fa);
    const CellMapGenerator h0 = [&builder](std::mt19937_64& rng) { return builder.h0(rng); };
    const std::uint64_t cal_seed = derive_seed(params.seed, phase::pd_calibration);
    out.thresholds.clear();
    for (const StatisticFn& stat : bank.statistics)
        out.thresholds.push_back(
            calibrate_threshold(stat, h0, params.p_fa, cal_trials, cal_seed, params.threads));

    const auto trials = static_cast<std::size_t>(params.trials);
    for (std::size_t g = 0; g < params.scnr_grid_db.size(); ++g) {
        const double scnr = params.scnr_grid_db[g];
        std::vector<std::uint8_t> hits(trials * n_det);
        parallel_for(trials, params.threads, [&](std::size_t t) {
            std::mt19937_64 rng = make_stream(
                params.seed,
                {phase::pd_h1, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(t)});
            const CellMap map = builder.h1(rng, scnr);
            for (std::size_t d = 0; d < n_det; ++d)
                hits[t * n_det + d] =
                    detect(bank.statistics[d](map), out.thresholds[d]) ? 1 : 0;
        });
        for (std::size_t d = 0; d < n_det; ++d) {
            std::int64_t sum = 0;
            for (std::size_t t = 0; t < trials; ++t)
                sum += hits[t * n_det + d];
            const double p_d = static_cast<double>(sum) / static_cast<double>(trials);
            const double se = std::sqrt(p_d * (1.0 - p_d) / static_cast<double>(trials));
            out.rows.push_back(
                {scnr, bank.ids[d], bank.measures[d], bank.filtered[d], p_d, se, params.trials});
        }
    }
}

void run_calibrate(const CalibrateParams& params, CalibrateResult& out) {
    params.scenario.validate();
    require(params.fa_trials >= 1, "calibrate: fa_trials must be at least 1");
    require(params.p_fa > 0.0 && params.p_fa < 1.0, "calibrate: p_fa must lie in (0, 1)");

    const CellMapBuilder builder(params.scenario, params.k, params.cut_index,
                                 params.interference, params.target);
    const DetectorBank bank = build_bank(params.detectors, params.include_amf, params.p_fa,
                                         params.target, params.scenario.n);
    const std::size_t n_det = bank.ids.size();

    const std::int64_t cal_trials =
        resolve_calibration_trials(params.calibration_trials, params.p_fa);
    const CellMapGenerator h0 = [&builder](std::mt19937_64& rng) { return builder.h0(rng); };
    const std::uint64_t cal_seed = derive_seed(params.seed, phase::pd_calibration);
    std::vector<double> thresholds;
    thresholds.reserve(n_det);
    for (const StatisticFn& stat : bank.statistics)
        thresholds.push_back(
            calibrate_threshold(stat, h0, params.p_fa, cal_trials, cal_seed, params.threads));

    const auto fa_trials = static_cast<std::size_t>(params.fa_trials);
    std::vector<std::uint8_t> hits(fa_trials * n_det);
    parallel_for(fa_trials, params.threads, [&](std::size_t t) {
        std::mt19937_64 rng =
            make_stream(params.seed, {phase::fa_check, 0, static_cast<std::uint64_t>(t)});
        const CellMap map = builder.h0(rng);
        for (std::size_t d = 0; d < n_det; ++d)
            hits[t * n_det + d] = detect(bank.statistics[d](map), thresholds[d]) ? 1 : 0;
    });

    for (std::size_t d = 0; d < n_det; ++d) {
        std::int64_t sum = 0;
        for (std::size_t t = 0; t < fa_trials; ++t)
            sum += hits[t * n_det + d];
        out.rows.push_back({bank.ids[d], bank.measures[d], bank.filtered[d], params.p_fa,
                            cal_trials, thresholds[d], params.fa_trials,
                            static_cast<double>(sum) / static_cast<double>(fa_trials)});
    }
}

} // namespace mig
