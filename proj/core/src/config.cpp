#include "mig/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace mig {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

std::string leaf(const std::string& path) {
    const auto pos = path.find_last_of('.');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

/// Best-effort location hint: line of the first occurrence of the leaf key.
std::string location_suffix(const std::string& text, const std::string& path) {
    const std::string needle = "\"" + leaf(path) + "\"";
    const auto pos = text.find(needle);
    if (pos == std::string::npos)
        return "";
    return " (line " + std::to_string(line_of_offset(text, pos)) + ")";
}

[[noreturn]] void fail(const std::string& text, const std::string& path,
                       const std::string& message) {
    throw ConfigError("config: " + path + ": " + message + location_suffix(text, path));
}

/// One JSON object with consumed-key tracking; done() rejects leftovers.
class Block {
public:
    Block(const json& j, std::string path, const std::string& text)
        : j_(j), path_(std::move(path)), text_(text) {
        if (!j_.is_object())
            fail(text_, path_.empty() ? "<config>" : path_, "expected an object");
    }

    std::string key_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json* child(const std::string& key) {
        if (!j_.contains(key))
            return nullptr;
        consumed_.insert(key);
        return &j_.at(key);
    }

    const json& require(const std::string& key) {
        const json* v = child(key);
        if (!v)
            fail(text_, key_path(key), "required field is missing");
        return *v;
    }

    std::string get_string(const std::string& key, const std::string& fallback) {
        const json* v = child(key);
        if (!v)
            return fallback;
        if (!v->is_string())
            fail(text_, key_path(key), "expected a string");
        return v->get<std::string>();
    }

    double get_double(const std::string& key, double fallback) {
        const json* v = child(key);
        if (!v)
            return fallback;
        if (!v->is_number())
            fail(text_, key_path(key), "expected a number");
        return v->get<double>();
    }

    std::int64_t get_i64(const std::string& key, std::int64_t fallback) {
        const json* v = child(key);
        if (!v)
            return fallback;
        if (!v->is_number_integer())
            fail(text_, key_path(key), "expected an integer");
        return v->get<std::int64_t>();
    }

    int get_int(const std::string& key, int fallback) {
        return static_cast<int>(get_i64(key, fallback));
    }

    bool get_bool(const std::string& key, bool fallback) {
        const json* v = child(key);
        if (!v)
            return fallback;
        if (!v->is_boolean())
            fail(text_, key_path(key), "expected a boolean");
        return v->get<bool>();
    }

    void done() {
        for (const auto& item : j_.items())
            if (consumed_.find(item.key()) == consumed_.end())
                fail(text_, key_path(item.key()), "unknown field");
    }

    const std::string& text() const { return text_; }

private:
    const json& j_;
    std::string path_;
    const std::string& text_;
    std::set<std::string> consumed_;
};

void check(bool ok, const std::string& text, const std::string& path, const std::string& message) {
    if (!ok)
        fail(text, path, message);
}

Measure parse_median_measure(const json& v, const std::string& path, const std::string& text) {
    if (!v.is_string())
        fail(text, path, "expected a string");
    const std::string s = v.get<std::string>();
    if (s == "lem")
        return Measure::lem;
    if (s == "jbld")
        return Measure::jbld;
    if (s == "skld")
        return Measure::skld;
    fail(text, path, "unknown measure '" + s + "' (expected lem, jbld, or skld)");
}

ClutterScenario parse_scenario(Block& top) {
    ClutterScenario s;
    const json* v = top.child("scenario");
    if (!v)
        return s;
    Block b(*v, "scenario", top.text());
    s.n = b.get_int("n", s.n);
    check(s.n >= 1, b.text(), "scenario.n", "must be a positive integer");
    s.rho = b.get_double("rho", s.rho);
    check(s.rho > 0.0 && s.rho < 1.0, b.text(), "scenario.rho", "must lie in (0, 1)");
    s.f_c = b.get_double("f_c", s.f_c);
    s.sigma_n2 = b.get_double("sigma_n2", s.sigma_n2);
    check(s.sigma_n2 > 0.0, b.text(), "scenario.sigma_n2", "must be positive");
    s.cnr_db = b.get_double("cnr_db", s.cnr_db);
    const std::string texture = b.get_string("texture", "gaussian");
    if (texture == "gaussian")
        s.texture = TextureModel::gaussian;
    else if (texture == "compound_gaussian")
        s.texture = TextureModel::compound_gaussian;
    else
        fail(b.text(), "scenario.texture",
             "unknown texture '" + texture + "' (expected gaussian or compound_gaussian)");
    s.nu = b.get_double("nu", s.nu);
    check(s.nu > 0.0, b.text(), "scenario.nu", "must be positive");
    b.done();
    return s;
}

MedianSolverConfig parse_median(Block& parent, const std::string& key) {
    MedianSolverConfig m;
    const json* v = parent.child(key);
    if (!v)
        return m;
    Block b(*v, key, parent.text());
    m.tol = b.get_double("tol", m.tol);
    check(m.tol > 0.0, b.text(), key + ".tol", "must be positive");
    m.max_iter = b.get_int("max_iter", m.max_iter);
    check(m.max_iter >= 1, b.text(), key + ".max_iter", "must be at least 1");
    m.weiszfeld_floor = b.get_double("weiszfeld_floor", m.weiszfeld_floor);
    check(m.weiszfeld_floor > 0.0, b.text(), key + ".weiszfeld_floor", "must be positive");
    b.done();
    return m;
}

TargetSpec parse_target(Block& parent, TargetSpec fallback, bool with_scnr) {
    const json* v = parent.child("target");
    if (!v)
        return fallback;
    Block b(*v, "target", parent.text());
    TargetSpec t = fallback;
    t.f_d = b.get_double("f_d", t.f_d);
    if (with_scnr)
        t.scnr_db = b.get_double("scnr_db", t.scnr_db);
    b.done();
    return t;
}

FilterGridEntry parse_filter_entry(const json& v, const std::string& path,
                                   const std::string& text,
                                   FilterGridEntry fallback = FilterGridEntry{}) {
    Block b(v, path, text);
    FilterGridEntry f = fallback;
    f.m = b.get_int("m", f.m);
    check(f.m >= 1 && f.m % 2 == 1, text, path + ".m", "must be an odd positive integer");
    f.h = b.get_double("h", f.h);
    check(f.h > 0.0, text, path + ".h", "must be positive");
    b.done();
    return f;
}

std::vector<Measure> parse_measures(Block& top) {
    const json* v = top.child("measures");
    if (!v)
        return {Measure::lem, Measure::jbld, Measure::skld};
    if (!v->is_array() || v->empty())
        fail(top.text(), "measures", "expected a nonempty array of measure names");
    std::vector<Measure> out;
    for (std::size_t i = 0; i < v->size(); ++i)
        out.push_back(parse_median_measure((*v)[i], "measures[" + std::to_string(i) + "]",
                                           top.text()));
    return out;
}

/// "filters" object keyed by measure name, or "filter" (one entry for every
/// measure in "measures"); the two forms are mutually exclusive.
std::vector<AdMeasureSpec> parse_ad_measures(Block& top) {
    const json* filters = top.child("filters");
    const json* filter = top.child("filter");
    if (filters && filter)
        fail(top.text(), "filters", "cannot be combined with 'filter'");
    if (filters) {
        if (top.child("measures"))
            fail(top.text(), "measures", "cannot be combined with 'filters' (keys select measures)");
        if (!filters->is_object() || filters->empty())
            fail(top.text(), "filters", "expected a nonempty object keyed by measure name");
        Block b(*filters, "filters", top.text());
        std::vector<AdMeasureSpec> out;
        for (const AdMeasureSpec& dflt : default_ad_measures()) {
            const std::string name = to_string(dflt.measure);
            if (const json* v = b.child(name))
                out.push_back({dflt.measure,
                               parse_filter_entry(*v, "filters." + name, top.text(), dflt.filter)});
        }
        b.done();
        return out;
    }
    // Normalize to the canonical lem/jbld/skld order (dropping duplicates) so
    // a run and its sidecar rerun emit rows in the same order.
    const std::vector<Measure> requested = parse_measures(top);
    std::vector<AdMeasureSpec> out;
    for (const AdMeasureSpec& dflt : default_ad_measures()) {
        if (std::find(requested.begin(), requested.end(), dflt.measure) == requested.end())
            continue;
        FilterGridEntry entry = dflt.filter;
        if (filter)
            entry = parse_filter_entry(*filter, "filter", top.text(), entry);
        out.push_back({dflt.measure, entry});
    }
    return out;
}

std::vector<int> parse_int_array(Block& top, const std::string& key, std::vector<int> fallback,
                                 int min_value, const char* constraint) {
    const json* v = top.child(key);
    if (!v)
        return fallback;
    if (!v->is_array() || v->empty())
        fail(top.text(), key, "expected a nonempty array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        const std::string path = key + "[" + std::to_string(i) + "]";
        if (!e.is_number_integer())
            fail(top.text(), path, "expected an integer");
        const int x = e.get<int>();
        check(x >= min_value, top.text(), path, constraint);
        out.push_back(x);
    }
    return out;
}

std::vector<double> parse_double_array(Block& top, const std::string& key,
                                       std::vector<double> fallback) {
    const json* v = top.child(key);
    if (!v)
        return fallback;
    if (!v->is_array() || v->empty())
        fail(top.text(), key, "expected a nonempty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        if (!e.is_number())
            fail(top.text(), key + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<PdDetectorSpec> parse_detectors(Block& top) {
    const json* v = top.child("detectors");
    if (!v)
        return default_detector_bank({Measure::lem, Measure::jbld, Measure::skld});
    if (!v->is_array() || v->empty())
        fail(top.text(), "detectors", "expected a nonempty array of detector objects");
    std::vector<PdDetectorSpec> out;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string path = "detectors[" + std::to_string(i) + "]";
        Block b((*v)[i], path, top.text());
        PdDetectorSpec spec;
        spec.measure = parse_median_measure(b.require("measure"), path + ".measure", top.text());
        if (const json* f = b.child("filter"))
            spec.filter = parse_filter_entry(*f, path + ".filter", top.text(),
                                             default_detection_filter(spec.measure));
        spec.median_cfg = parse_median(b, "median");
        spec.guard_cells = b.get_int("guard_cells", 0);
        check(spec.guard_cells >= 0, top.text(), path + ".guard_cells", "must be nonnegative");
        spec.id = b.get_string(
            "id", to_string(spec.measure) + (spec.filter ? "_filtered" : ""));
        check(!spec.id.empty(), top.text(), path + ".id", "must be nonempty");
        check(ids.insert(spec.id).second, top.text(), path + ".id",
              "duplicate detector id '" + spec.id + "'");
        b.done();
        out.push_back(std::move(spec));
    }
    return out;
}

InterferenceSpec parse_interference(Block& top, InterferenceSpec fallback, bool detection_form) {
    const json* v = top.child("interference");
    if (!v)
        return fallback;
    Block b(*v, "interference", top.text());
    InterferenceSpec spec = fallback;
    spec.f_d = b.get_double("f_d", spec.f_d);
    spec.scnr_db = b.get_double("scnr_db", spec.scnr_db);
    if (detection_form) {
        spec.count = b.get_int("count", spec.count);
        check(spec.count >= 0, b.text(), "interference.count", "must be nonnegative");
        const std::string placement = b.get_string(
            "placement", spec.placement == Placement::fixed ? "fixed" : "uniform_random");
        if (placement == "uniform_random")
            spec.placement = Placement::uniform_random;
        else if (placement == "fixed")
            spec.placement = Placement::fixed;
        else
            fail(b.text(), "interference.placement",
                 "unknown placement '" + placement + "' (expected uniform_random or fixed)");
        if (spec.placement == Placement::fixed) {
            spec.fixed_indices =
                parse_int_array(b, "fixed_indices", spec.fixed_indices, 0, "must be nonnegative");
            check(static_cast<int>(spec.fixed_indices.size()) >= spec.count, b.text(),
                  "interference.fixed_indices", "needs at least `count` entries");
        }
    }
    b.done();
    return spec;
}

std::int64_t parse_trials(Block& top, std::int64_t fallback) {
    const std::int64_t trials = top.get_i64("trials", fallback);
    check(trials >= 1, top.text(), "trials", "must be at least 1");
    return trials;
}

// ----------------------------------------------------------- serialization

json scenario_json(const ClutterScenario& s) {
    return json{{"n", s.n},
                {"rho", s.rho},
                {"f_c", s.f_c},
                {"sigma_n2", s.sigma_n2},
                {"cnr_db", s.cnr_db},
                {"texture",
                 s.texture == TextureModel::gaussian ? "gaussian" : "compound_gaussian"},
                {"nu", s.nu}};
}

json median_json(const MedianSolverConfig& m) {
    return json{{"tol", m.tol}, {"max_iter", m.max_iter}, {"weiszfeld_floor", m.weiszfeld_floor}};
}

json filter_json(const FilterGridEntry& f) { return json{{"m", f.m}, {"h", f.h}}; }

json target_json(const TargetSpec& t, bool with_scnr) {
    json j{{"f_d", t.f_d}};
    if (with_scnr)
        j["scnr_db"] = t.scnr_db;
    return j;
}

json measures_json(const std::vector<Measure>& measures) {
    json arr = json::array();
    for (Measure m : measures)
        arr.push_back(to_string(m));
    return arr;
}

json detectors_json(const std::vector<PdDetectorSpec>& detectors) {
    json arr = json::array();
    for (const PdDetectorSpec& d : detectors) {
        json j{{"id", d.id},
               {"measure", to_string(d.measure)},
               {"median", median_json(d.median_cfg)},
               {"guard_cells", d.guard_cells}};
        if (d.filter)
            j["filter"] = filter_json(*d.filter);
        arr.push_back(std::move(j));
    }
    return arr;
}

json interference_json(const InterferenceSpec& spec, bool detection_form) {
    json j{{"f_d", spec.f_d}, {"scnr_db", spec.scnr_db}};
    if (detection_form) {
        j["count"] = spec.count;
        j["placement"] = spec.placement == Placement::fixed ? "fixed" : "uniform_random";
        if (spec.placement == Placement::fixed)
            j["fixed_indices"] = spec.fixed_indices;
    }
    return j;
}

struct ResolvedJsonVisitor {
    json operator()(const OffsetErrorParams& p) const {
        return json{{"scenario", scenario_json(p.scenario)},
                    {"k", p.k},
                    {"interference_counts", p.interference_counts},
                    {"interference",
                     json{{"f_d", p.interference_f_d}, {"scnr_db", p.interference_scnr_db}}},
                    {"median", median_json(p.median_cfg)},
                    {"trials", p.trials},
                    {"seed", p.seed},
                    {"threads", p.threads}};
    }
    json operator()(const SampleCountParams& p) const {
        return json{{"scenario", scenario_json(p.scenario)},
                    {"k_values", p.k_values},
                    {"median", median_json(p.median_cfg)},
                    {"trials", p.trials},
                    {"seed", p.seed},
                    {"threads", p.threads}};
    }
    json operator()(const ProfileParams& p) const {
        json grid = json::array();
        for (const FilterGridEntry& f : p.filter_grid)
            grid.push_back(filter_json(f));
        return json{{"scenario", scenario_json(p.scenario)},
                    {"num_cells", p.num_cells},
                    {"target_cell", p.target_cell},
                    {"target", target_json(p.target, true)},
                    {"measures", measures_json(p.measures)},
                    {"filter_grid", std::move(grid)},
                    {"median", median_json(p.median_cfg)},
                    {"guard_cells", p.guard_cells},
                    {"trials", p.trials},
                    {"seed", p.seed},
                    {"threads", p.threads}};
    }
    json operator()(const AdParams& p) const {
        json filters = json::object();
        for (const AdMeasureSpec& spec : p.measures)
            filters[to_string(spec.measure)] = filter_json(spec.filter);
        return json{{"scenario", scenario_json(p.scenario)},
                    {"num_cells", p.num_cells},
                    {"target_cell", p.target_cell},
                    {"target", target_json(p.target, true)},
                    {"filters", std::move(filters)},
                    {"guard_cells", p.guard_cells},
                    {"trials", p.trials},
                    {"seed", p.seed},
                    {"threads", p.threads}};
    }
    json operator()(const PdCurveParams& p) const {
        return json{{"scenario", scenario_json(p.scenario)},
                    {"detectors", detectors_json(p.detectors)},
                    {"include_amf", p.include_amf},
                    {"scnr_grid_db", p.scnr_grid_db},
                    {"k", p.k},
                    {"cut_index", p.cut_index},
                    {"target", target_json(p.target, false)},
                    {"interference", interference_json(p.interference, true)},
                    {"p_fa", p.p_fa},
                    {"calibration_trials", p.calibration_trials},
                    {"trials", p.trials},
                    {"seed", p.seed},
                    {"threads", p.threads}};
    }
    json operator()(const CalibrateParams& p) const {
        return json{{"scenario", scenario_json(p.scenario)},
                    {"detectors", detectors_json(p.detectors)},
                    {"include_amf", p.include_amf},
                    {"k", p.k},
                    {"cut_index", p.cut_index},
                    {"target", target_json(p.target, false)},
                    {"interference", interference_json(p.interference, true)},
                    {"p_fa", p.p_fa},
                    {"calibration_trials", p.calibration_trials},
                    {"fa_trials", p.fa_trials},
                    {"seed", p.seed},
                    {"threads", p.threads}};
    }
};

} // namespace

std::uint64_t ResolvedConfig::seed() const {
    return std::visit([](const auto& p) { return p.seed; }, params);
}

int ResolvedConfig::threads() const {
    return std::visit([](const auto& p) { return p.threads; }, params);
}

ResolvedConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann's message already carries line/column information.
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    // Result sidecars embed the resolved config under "config".
    if (root.is_object() && root.contains("config") && !root.contains("experiment"))
        root = root.at("config");

    Block top(root, "", text);

    const json& exp_v = top.require("experiment");
    if (!exp_v.is_string())
        fail(text, "experiment", "expected a string");
    const std::string experiment = exp_v.get<std::string>();
    static const std::set<std::string> kExperiments = {
        "offset_error", "sample_count", "statistic_profile", "ad", "pd_curve", "calibrate"};
    if (kExperiments.find(experiment) == kExperiments.end())
        fail(text, "experiment",
             "unknown experiment '" + experiment +
                 "' (expected offset_error, sample_count, statistic_profile, ad, pd_curve, or "
                 "calibrate)");

    std::optional<std::uint64_t> seed;
    if (const json* v = top.child("seed")) {
        if (!v->is_number_unsigned())
            fail(text, "seed", "expected a nonnegative integer");
        seed = v->get<std::uint64_t>();
    }
    if (seed_override)
        seed = seed_override;
    if (!seed)
        fail(text, "seed", "required field is missing; set it in the config or pass --seed");

    const int threads = top.get_int("threads", 1);
    check(threads >= 1, text, "threads", "must be at least 1");

    ResolvedConfig out;
    out.experiment = experiment;
    out.basename = experiment;
    if (const json* v = top.child("output")) {
        Block b(*v, "output", text);
        out.basename = b.get_string("basename", out.basename);
        check(!out.basename.empty() && out.basename.find('/') == std::string::npos, text,
              "output.basename", "must be a nonempty file stem without '/'");
        b.done();
    }

    const ClutterScenario scenario = parse_scenario(top);

    if (experiment == "offset_error") {
        OffsetErrorParams p;
        p.scenario = scenario;
        p.k = top.get_int("k", p.k);
        check(p.k >= 2, text, "k", "must be at least 2");
        p.interference_counts = parse_int_array(top, "interference_counts", p.interference_counts,
                                                0, "must be nonnegative");
        for (int c : p.interference_counts)
            check(c <= p.k, text, "interference_counts", "entries must not exceed k");
        const InterferenceSpec spec = parse_interference(
            top, InterferenceSpec{0, p.interference_f_d, p.interference_scnr_db,
                                  Placement::uniform_random, {}},
            false);
        p.interference_f_d = spec.f_d;
        p.interference_scnr_db = spec.scnr_db;
        p.median_cfg = parse_median(top, "median");
        p.trials = parse_trials(top, p.trials);
        p.seed = *seed;
        p.threads = threads;
        out.params = std::move(p);
    } else if (experiment == "sample_count") {
        SampleCountParams p;
        p.scenario = scenario;
        p.k_values = parse_int_array(top, "k_values", p.k_values, 1, "must be positive");
        p.median_cfg = parse_median(top, "median");
        p.trials = parse_trials(top, p.trials);
        p.seed = *seed;
        p.threads = threads;
        out.params = std::move(p);
    } else if (experiment == "statistic_profile") {
        ProfileParams p;
        p.scenario = scenario;
        p.num_cells = top.get_int("num_cells", p.num_cells);
        check(p.num_cells >= 2, text, "num_cells", "must be at least 2");
        p.target_cell = top.get_int("target_cell", p.target_cell);
        check(p.target_cell >= 0 && p.target_cell < p.num_cells, text, "target_cell",
              "must lie in [0, num_cells)");
        p.target = parse_target(top, p.target, true);
        p.measures = parse_measures(top);
        if (const json* v = top.child("filter_grid")) {
            if (!v->is_array() || v->empty())
                fail(text, "filter_grid", "expected a nonempty array of {m, h} objects");
            p.filter_grid.clear();
            for (std::size_t i = 0; i < v->size(); ++i)
                p.filter_grid.push_back(parse_filter_entry(
                    (*v)[i], "filter_grid[" + std::to_string(i) + "]", text));
        }
        p.median_cfg = parse_median(top, "median");
        p.guard_cells = top.get_int("guard_cells", p.guard_cells);
        check(p.guard_cells >= 0, text, "guard_cells", "must be nonnegative");
        p.trials = parse_trials(top, p.trials);
        p.seed = *seed;
        p.threads = threads;
        out.params = std::move(p);
    } else if (experiment == "ad") {
        AdParams p;
        p.scenario = scenario;
        p.num_cells = top.get_int("num_cells", p.num_cells);
        check(p.num_cells >= 2, text, "num_cells", "must be at least 2");
        p.target_cell = top.get_int("target_cell", p.target_cell);
        check(p.target_cell >= 0 && p.target_cell < p.num_cells, text, "target_cell",
              "must lie in [0, num_cells)");
        p.target = parse_target(top, p.target, true);
        p.measures = parse_ad_measures(top);
        p.guard_cells = top.get_int("guard_cells", p.guard_cells);
        check(p.guard_cells >= 0, text, "guard_cells", "must be nonnegative");
        p.trials = parse_trials(top, p.trials);
        p.seed = *seed;
        p.threads = threads;
        out.params = std::move(p);
    } else if (experiment == "pd_curve") {
        PdCurveParams p;
        p.scenario = scenario;
        p.detectors = parse_detectors(top);
        p.include_amf = top.get_bool("include_amf", p.include_amf);
        p.scnr_grid_db = parse_double_array(top, "scnr_grid_db", p.scnr_grid_db);
        p.k = top.get_int("k", p.k);
        check(p.k >= 1, text, "k", "must be at least 1");
        p.cut_index = top.get_int("cut_index", -1);
        if (p.cut_index < 0)
            p.cut_index = p.k / 2;
        check(p.cut_index <= p.k, text, "cut_index", "must lie in [0, k]");
        p.target = parse_target(top, p.target, false);
        p.interference = parse_interference(top, p.interference, true);
        p.p_fa = top.get_double("p_fa", p.p_fa);
        check(p.p_fa > 0.0 && p.p_fa < 1.0, text, "p_fa", "must lie in (0, 1)");
        p.calibration_trials = top.get_i64("calibration_trials", p.calibration_trials);
        check(p.calibration_trials >= 0, text, "calibration_trials",
              "must be nonnegative (0 selects ceil(100/p_fa))");
        if (p.calibration_trials == 0)
            p.calibration_trials = static_cast<std::int64_t>(std::ceil(100.0 / p.p_fa));
        p.trials = parse_trials(top, p.trials);
        p.seed = *seed;
        p.threads = threads;
        out.params = std::move(p);
    } else { // calibrate
        CalibrateParams p;
        p.scenario = scenario;
        p.detectors = parse_detectors(top);
        p.include_amf = top.get_bool("include_amf", p.include_amf);
        p.k = top.get_int("k", p.k);
        check(p.k >= 1, text, "k", "must be at least 1");
        p.cut_index = top.get_int("cut_index", -1);
        if (p.cut_index < 0)
            p.cut_index = p.k / 2;
        check(p.cut_index <= p.k, text, "cut_index", "must lie in [0, k]");
        p.target = parse_target(top, p.target, false);
        p.interference = parse_interference(top, p.interference, true);
        p.p_fa = top.get_double("p_fa", p.p_fa);
        check(p.p_fa > 0.0 && p.p_fa < 1.0, text, "p_fa", "must lie in (0, 1)");
        p.calibration_trials = top.get_i64("calibration_trials", p.calibration_trials);
        check(p.calibration_trials >= 0, text, "calibration_trials",
              "must be nonnegative (0 selects ceil(100/p_fa))");
        if (p.calibration_trials == 0)
            p.calibration_trials = static_cast<std::int64_t>(std::ceil(100.0 / p.p_fa));
        p.fa_trials = top.get_i64("fa_trials", p.fa_trials);
        check(p.fa_trials >= 1, text, "fa_trials", "must be at least 1");
        p.seed = *seed;
        p.threads = threads;
        out.params = std::move(p);
    }

    top.done();
    return out;
}

std::string resolved_json_text(const ResolvedConfig& config) {
    json j = std::visit(ResolvedJsonVisitor{}, config.params);
    j["experiment"] = config.experiment;
    j["output"] = json{{"basename", config.basename}};
    return j.dump(2) + "\n";
}

bool operator==(const ResolvedConfig& a, const ResolvedConfig& b) {
    return resolved_json_text(a) == resolved_json_text(b);
}

} // namespace mig
