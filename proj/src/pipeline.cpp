#include "dyntda/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "dyntda/boids.hpp"
#include "dyntda/dms_io.hpp"
#include "dyntda/erosion.hpp"
#include "dyntda/errors.hpp"
#include "dyntda/parallel.hpp"
#include "dyntda/rips_small.hpp"
#include "dyntda/rng.hpp"

namespace dyntda {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (flocks_per_preset < 1 || n_boids < 1 || steps < 1 || record_every < 1 ||
        subsets_per_flock < 1 || kcenter_target < 1 || one_nn_trials < 1 || threads < 1)
        throw std::invalid_argument("ExperimentConfig: counts must be positive");
    if (k_list.empty()) throw std::invalid_argument("ExperimentConfig: k_list must be nonempty");
    for (int k : k_list)
        if (k < 0) throw std::invalid_argument("ExperimentConfig: degrees must be nonnegative");
    if (grid.T < 1 || grid.S < 1 || grid.delta_weight <= 0.0 || grid.h < 0.0)
        throw std::invalid_argument("ExperimentConfig: bad grid");
    if (dt <= 0.0 || torus_size <= 0.0)
        throw std::invalid_argument("ExperimentConfig: bad simulation parameters");
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed config ") + path + ": " + e.what());
    }
    ExperimentConfig cfg;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("presets", cfg.presets);
    get("flocks_per_preset", cfg.flocks_per_preset);
    get("n_boids", cfg.n_boids);
    get("steps", cfg.steps);
    get("record_every", cfg.record_every);
    get("dt", cfg.dt);
    get("torus_size", cfg.torus_size);
    get("k_list", cfg.k_list);
    get("subsets_per_flock", cfg.subsets_per_flock);
    get("kcenter_target", cfg.kcenter_target);
    get("one_nn_trials", cfg.one_nn_trials);
    get("master_seed", cfg.master_seed);
    get("output_dir", cfg.output_dir);
    get("threads", cfg.threads);
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("h")) cfg.grid.h = g.at("h").get<double>();
        if (g.contains("T")) cfg.grid.T = g.at("T").get<int>();
        if (g.contains("S")) cfg.grid.S = g.at("S").get<int>();
        if (g.contains("delta_weight")) cfg.grid.delta_weight = g.at("delta_weight").get<double>();
    }
    cfg.validate();
    return cfg;
}

namespace {

std::vector<BehaviorPreset> selected_presets(const ExperimentConfig& cfg) {
    const auto all = presets();
    if (cfg.presets.empty()) return all;
    std::vector<BehaviorPreset> out;
    for (const std::string& name : cfg.presets) {
        bool found = false;
        for (const auto& p : all)
            if (p.name == name) {
                out.push_back(p);
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("unknown preset: " + name);
    }
    return out;
}

std::string flock_path(const ExperimentConfig& cfg, const std::string& preset, int flock) {
    return (fs::path(cfg.output_dir) / "flocks" / (preset + "_" + std::to_string(flock) + ".json"))
        .string();
}

// Seed streams: 1 = simulation, 2 = subset sampling, 3 = k-center.
constexpr std::uint64_t kSimStream = 1, kSampleStream = 2, kCenterStream = 3;

} // namespace

std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    fs::create_directories(fs::path(cfg.output_dir) / "flocks");
    const auto chosen = selected_presets(cfg);

    std::vector<std::string> paths;
    std::vector<BoidsParams> params;
    for (std::size_t p = 0; p < chosen.size(); ++p)
        for (int f = 0; f < cfg.flocks_per_preset; ++f) {
            BoidsParams bp = chosen[p].params;
            bp.n_boids = cfg.n_boids;
            bp.steps = cfg.steps;
            bp.record_every = cfg.record_every;
            bp.dt = cfg.dt;
            bp.torus_size = cfg.torus_size;
            bp.seed = derive_seed(cfg.master_seed, {kSimStream, p, static_cast<std::uint64_t>(f)});
            params.push_back(bp);
            paths.push_back(flock_path(cfg, chosen[p].name, f));
        }

    parallel_for(params.size(), cfg.threads, [&](std::size_t i) {
        save_dms(simulate(params[i]), paths[i]);
    });
    return paths;
}

namespace {

struct FlockInputs {
    std::vector<std::string> names;  // preset_flock labels
    std::vector<DynamicMetricSpace> dms;
    DynGrid grid;
};

FlockInputs load_and_regrid(const ExperimentConfig& cfg) {
    const auto chosen = selected_presets(cfg);
    FlockInputs in;
    for (const auto& preset : chosen)
        for (int f = 0; f < cfg.flocks_per_preset; ++f) {
            const std::string path = flock_path(cfg, preset.name, f);
            if (!fs::exists(path)) throw io_error("missing flock file (run simulate): " + path);
            DynamicMetricSpace dms = load_dms(path);
            int stride;
            if (cfg.grid.h > 0.0)
                stride = std::max(1, (int)std::llround(cfg.grid.h / dms.time_grid().step));
            else
                stride = std::max(1, dms.time_grid().count / cfg.grid.T);
            in.dms.push_back(subsample_time(dms, stride, cfg.grid.T));
            in.names.push_back(preset.name + "_" + std::to_string(f));
        }
    for (const auto& d : in.dms)
        if (!(d.time_grid() == in.dms.front().time_grid()))
            throw io_error("flock files disagree on the time grid");
    in.grid = DynGrid(in.dms.front().time_grid(), cfg.grid.S, cfg.grid.delta_weight);
    return in;
}

std::string dist_path(const ExperimentConfig& cfg, const std::string& stem) {
    return (fs::path(cfg.output_dir) / stem).string();
}

} // namespace

void cmd_distances(const ExperimentConfig& cfg) {
    cfg.validate();
    FlockInputs in = load_and_regrid(cfg);
    const std::size_t n_flocks = in.dms.size();

    std::vector<DistanceMatrix> per_k;
    for (std::size_t ki = 0; ki < cfg.k_list.size(); ++ki) {
        const int k = cfg.k_list[ki];

        // reduced persistence set per flock; parallel across flocks
        std::vector<PersistenceSet> reduced(n_flocks);
        parallel_for(n_flocks, cfg.threads, [&](std::size_t i) {
            PersistenceSet ps = sample_persistence_set(
                in.dms[i], k, cfg.subsets_per_flock, in.grid,
                derive_seed(cfg.master_seed, {kSampleStream, static_cast<std::uint64_t>(k), i}));
            const int target = std::min<int>(cfg.kcenter_target, (int)ps.size());
            reduced[i] = kcenter_reduce(
                ps, target,
                derive_seed(cfg.master_seed, {kCenterStream, static_cast<std::uint64_t>(k), i}));
        });

        DistanceMatrix dm;
        dm.labels = in.names;
        dm.values = SquareMatrix(static_cast<int>(n_flocks));
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t a = 0; a < n_flocks; ++a)
            for (std::size_t b = a + 1; b < n_flocks; ++b) pairs.push_back({(int)a, (int)b});
        std::vector<double> results(pairs.size());
        parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
            results[i] = hausdorff_erosion(reduced[pairs[i].first], reduced[pairs[i].second]);
        });
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            dm.values.at(pairs[i].first, pairs[i].second) = results[i];
            dm.values.at(pairs[i].second, pairs[i].first) = results[i];
        }
        save_distance_matrix(dm, dist_path(cfg, "dist_k" + std::to_string(k) + ".csv"));
        per_k.push_back(std::move(dm));
    }

    save_distance_matrix(combine_max(per_k), dist_path(cfg, "dist_combined.csv"));
}

OneNnReport cmd_analyze(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::string combined = dist_path(cfg, "dist_combined.csv");
    if (!fs::exists(combined)) throw io_error("missing combined matrix (run distances): " + combined);
    DistanceMatrix dm = load_distance_matrix(combined);

    const Dendrogram den = single_linkage(dm);
    {
        std::ofstream out(dist_path(cfg, "dendrogram.json"));
        if (!out) throw io_error("cannot write dendrogram.json");
        out << den.to_json().dump(2) << "\n";
    }

    const MdsEmbedding mds = classical_mds(dm, 2);
    save_mds_csv(mds, dm.labels, dist_path(cfg, "mds.csv"));

    // class of a flock = its preset name (label format preset_index)
    std::vector<std::string> classes;
    for (const auto& label : dm.labels) classes.push_back(label.substr(0, label.rfind('_')));
    const std::uint64_t seed = derive_seed(cfg.master_seed, {4});
    const OneNnReport report =
        one_nn_protocol(dm, classes, cfg.one_nn_trials, seed, cfg.threads);
    {
        std::ofstream out(dist_path(cfg, "one_nn.json"));
        if (!out) throw io_error("cannot write one_nn.json");
        nlohmann::json j{{"accuracy", report.accuracy},
                         {"trials", report.trials},
                         {"seed", report.seed}};
        out << j.dump(2) << "\n";
    }
    return report;
}

double erode_files(const std::string& path_a, const std::string& path_b) {
    auto read = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open for reading: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw io_error(std::string("malformed module file ") + path + ": " + e.what());
        }
        return j;
    };
    const nlohmann::json ja = read(path_a);
    const nlohmann::json jb = read(path_b);
    const bool dyn_a = ja.contains("entries");
    const bool dyn_b = jb.contains("entries");
    if (dyn_a != dyn_b) throw std::invalid_argument("erode: mixed module file kinds");
    if (dyn_a)
        return erosion_distance_dyn(ThinDynModule::from_json(ja), ThinDynModule::from_json(jb));
    return erosion_distance(GridModule::from_json(ja), GridModule::from_json(jb));
}

namespace {

bool report(const char* name, bool ok, int& failures) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++failures;
    return ok;
}

} // namespace

int run_selftest(std::uint64_t seed, bool quick) {
    int failures = 0;

    // sweep-line vs definition on random convex modules
    {
        const int pairs_2d = quick ? 100 : 500;
        bool ok = true;
        for (int t = 0; t < pairs_2d && ok; ++t) {
            const GridModule v = random_acd_module({10, 10}, derive_seed(seed, {10, (unsigned)t}));
            const GridModule w = random_acd_module({10, 10}, derive_seed(seed, {11, (unsigned)t}));
            ok = erosion_distance(v, w) == erosion_distance_oracle(v, w);
        }
        const int pairs_3d = quick ? 20 : 100;
        for (int t = 0; t < pairs_3d && ok; ++t) {
            const GridModule v = random_acd_module({6, 6, 6}, derive_seed(seed, {12, (unsigned)t}));
            const GridModule w = random_acd_module({6, 6, 6}, derive_seed(seed, {13, (unsigned)t}));
            ok = erosion_distance(v, w) == erosion_distance_oracle(v, w);
        }
        report("erosion sweep equals brute-force definition", ok, failures);
    }

    // at most one diagram point on 2k+2 points
    {
        bool ok = true;
        const int reps = quick ? 500 : 3000;
        for (int k = 0; k <= 2 && ok; ++k) {
            const int n = 2 * k + 2;
            for (int t = 0; t < reps && ok; ++t) {
                SplitMix64 rng(derive_seed(seed, {20, (unsigned)k, (unsigned)t}));
                SquareMatrix m(n);
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) m.at(a, b) = m.at(b, a) = rng.uniform();
                ok = rips_pairs(m, k).size() <= 1;
            }
        }
        report("small Rips diagrams have at most one point", ok, failures);
    }

    // modules of random small DMSs decompose into incomparable components
    {
        bool ok = true;
        const int reps = quick ? 20 : 100;
        for (int t = 0; t < reps && ok; ++t) {
            SplitMix64 rng(derive_seed(seed, {30, (unsigned)t}));
            const int k = t % 2;
            const int n = 2 * k + 2;
            const int frames = 8;
            TimeGrid tg(0.0, 0.4, frames);
            std::vector<double> tensor(static_cast<std::size_t>(frames) * n * n, 0.0);
            std::vector<double> base(n * n), amp(n * n), freq(n * n), phase(n * n);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    base[a * n + b] = rng.uniform(0.5, 2.0);
                    amp[a * n + b] = rng.uniform(0.0, 1.2);
                    freq[a * n + b] = rng.uniform(0.5, 4.0);
                    phase[a * n + b] = rng.uniform(0.0, 6.28318530717958648);
                }
            for (int f = 0; f < frames; ++f)
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) {
                        const double d = std::fabs(
                            base[a * n + b] +
                            amp[a * n + b] * std::sin(freq[a * n + b] * tg.time(f) + phase[a * n + b]));
                        tensor[(static_cast<std::size_t>(f) * n + a) * n + b] = d;
                        tensor[(static_cast<std::size_t>(f) * n + b) * n + a] = d;
                    }
            std::vector<std::string> labels;
            for (int a = 0; a < n; ++a) labels.push_back("p" + std::to_string(a));
            const auto dms = DynamicMetricSpace::from_distances(labels, tg, tensor);
            const auto mod = build_dyn_module(dms, k, DynGrid(tg, 8, 1.0));
            ok = verify_acd(decompose(mod));
            if (ok) dyn_to_poset_coords(mod).validate();
        }
        report("random DMS modules are antichain-decomposable", ok, failures);
    }

    return failures;
}

} // namespace dyntda
