#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "microde/benchmarks.hpp"
#include "microde/engine.hpp"
#include "microde/errors.hpp"
#include "microde/stats.hpp"
#include "microde/strategy.hpp"

namespace microde {

/// A full experiment: every (variant, function, dimension) cell runs
/// `trials` independent seeded trials. The shift seed for benchmark
/// problems is base_seed, so all variants of a cell face the identical
/// problem instance.
struct ExperimentConfig {
    std::vector<VariantPreset> variants;
    std::vector<std::string> functions;
    std::vector<std::size_t> dimensions = {10, 30}; // desk-scale default
    std::size_t trials = 30;
    std::uint64_t base_seed = 1;
    double alpha = 0.05;
    std::filesystem::path output_dir;
    VariantPreset reference = VariantPreset::OEMDE;
    std::size_t workers = 0; // 0 = hardware concurrency
};

/// Stable per-trial seed: every cell is reproducible in isolation.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view variant,
                                 std::string_view function, std::size_t dimension,
                                 std::size_t trial) {
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ fnv1a64(variant));
    h = splitmix64(h ^ fnv1a64(function));
    h = splitmix64(h ^ static_cast<std::uint64_t>(dimension));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
    return h;
}

/// Best error at a given nfc under step semantics: the value of the last
/// record at or before nfc, and the initialization value before the
/// first record.
inline double trace_error_at(const ConvergenceTrace& trace, std::uint64_t nfc) {
    if (trace.empty()) throw ContractViolation("trace_error_at: empty trace");
    double value = trace.front().best_error;
    for (const auto& point : trace) {
        if (point.nfc > nfc) break;
        value = point.best_error;
    }
    return value;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Write-temp-then-rename so concurrent workers never expose a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

inline std::string trim(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
}

} // namespace detail

inline std::string trace_to_csv(const ConvergenceTrace& trace) {
    std::string out = "nfc,best_error\n";
    for (const auto& point : trace) {
        out += std::to_string(point.nfc);
        out += ',';
        out += detail::format_double(point.best_error);
        out += '\n';
    }
    return out;
}

inline ConvergenceTrace trace_from_csv(std::istream& in) {
    ConvergenceTrace trace;
    std::string line;
    if (!std::getline(in, line) || line != "nfc,best_error")
        throw std::runtime_error("trace CSV: missing 'nfc,best_error' header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split(line, ',');
        if (fields.size() != 2) throw std::runtime_error("trace CSV: malformed row '" + line + "'");
        trace.push_back({std::stoull(fields[0]), std::stod(fields[1])});
    }
    return trace;
}

/// Run body(i) for i in [0, count) on up to `workers` threads; the first
/// exception wins and is rethrown after all workers drain.
inline void parallel_for(std::size_t count, std::size_t workers,
                         const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count); // stop handing out work
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Independent seeded runs of one configuration, in parallel.
inline std::vector<RunResult> run_trials(const Problem& problem, const StrategyConfig& config,
                                         std::span<const std::uint64_t> seeds,
                                         std::size_t workers = 0) {
    std::vector<RunResult> results(seeds.size());
    parallel_for(seeds.size(), workers,
                 [&](std::size_t i) { results[i] = run(problem, config, seeds[i]); });
    return results;
}

/// One row of results.csv.
struct RunRecord {
    std::string variant;
    std::string function;
    std::size_t dimension = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double final_error = 0.0;
    std::uint64_t nfc_used = 0;
    std::uint64_t generations = 0;
    std::string terminated_by;
};

inline std::filesystem::path trace_path(const std::filesystem::path& output_dir,
                                        std::string_view variant, std::string_view function,
                                        std::size_t dimension, std::size_t trial) {
    return output_dir / "traces" / std::string(variant) /
           (std::string(function) + "_d" + std::to_string(dimension) + "_t" +
            std::to_string(trial) + ".csv");
}

namespace detail {

inline void validate_experiment(const ExperimentConfig& config) {
    if (config.variants.empty()) throw ConfigError("experiment: no variants");
    if (config.functions.empty()) throw ConfigError("experiment: no functions");
    if (config.dimensions.empty()) throw ConfigError("experiment: no dimensions");
    if (config.trials == 0) throw ConfigError("experiment: trials must be at least 1");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw ConfigError("experiment: alpha must be in (0, 1)");
    if (config.output_dir.empty()) throw ConfigError("experiment: output_dir is required");
    for (const auto& f : config.functions) find_benchmark(f); // throws on unknown id
    for (auto d : config.dimensions)
        if (d == 0) throw ConfigError("experiment: dimensions must be at least 1");
    auto unique = [](auto list, const char* what) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw ConfigError(std::string("experiment: duplicate ") + what);
    };
    unique(config.variants, "variant");
    unique(config.functions, "function");
    unique(config.dimensions, "dimension");
}

} // namespace detail

/// Execute every cell and persist results.csv, summary.csv, summary.json,
/// verdicts.csv (when a reference comparison is possible) and one trace
/// CSV per trial. Rerunning an identical config reproduces every file
/// byte for byte.
inline void run_experiment(const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    detail::validate_experiment(config);

    fs::create_directories(config.output_dir / "traces");
    for (auto variant : config.variants)
        fs::create_directories(config.output_dir / "traces" / std::string(to_string(variant)));

    const std::size_t n_units = config.variants.size() * config.functions.size() *
                                config.dimensions.size() * config.trials;
    std::vector<RunRecord> records(n_units);

    parallel_for(n_units, config.workers, [&](std::size_t unit) {
        std::size_t rest = unit;
        const std::size_t trial = rest % config.trials;
        rest /= config.trials;
        const std::size_t di = rest % config.dimensions.size();
        rest /= config.dimensions.size();
        const std::size_t fi = rest % config.functions.size();
        rest /= config.functions.size();
        const VariantPreset variant = config.variants[rest];

        const std::string& function = config.functions[fi];
        const std::size_t dim = config.dimensions[di];
        const std::string variant_name(to_string(variant));

        const Problem problem = make_problem({function, dim, config.base_seed});
        const StrategyConfig strategy = expand_preset(variant, dim);
        const std::uint64_t seed = derive_seed(config.base_seed, variant_name, function, dim, trial);

        RunResult result = run(problem, strategy, seed);
        detail::write_file_atomic(trace_path(config.output_dir, variant_name, function, dim, trial),
                                  trace_to_csv(result.trace));

        RunRecord& record = records[unit];
        record.variant = variant_name;
        record.function = function;
        record.dimension = dim;
        record.trial = trial;
        record.seed = seed;
        record.final_error = result.final_error;
        record.nfc_used = result.nfc_used;
        record.generations = result.generations;
        record.terminated_by = std::string(to_string(result.terminated_by));
    });

    // results.csv: one row per run, in config order
    std::string results_csv =
        "variant,function,dim,trial,seed,final_error,nfc_used,generations,terminated_by\n";
    for (const auto& r : records) {
        results_csv += r.variant + ',' + r.function + ',' + std::to_string(r.dimension) + ',' +
                       std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' +
                       detail::format_double(r.final_error) + ',' + std::to_string(r.nfc_used) +
                       ',' + std::to_string(r.generations) + ',' + r.terminated_by + '\n';
    }
    detail::write_file_atomic(config.output_dir / "results.csv", results_csv);

    // per-cell summaries (CSV + JSON document)
    std::string summary_csv = "variant,function,dim,trials,mean_error,std_error,summary\n";
    nlohmann::json doc;
    doc["base_seed"] = config.base_seed;
    doc["alpha"] = config.alpha;
    doc["trials"] = config.trials;
    doc["reference"] = std::string(to_string(config.reference));
    doc["cells"] = nlohmann::json::array();

    const std::size_t cell_stride = config.trials;
    for (std::size_t cell = 0; cell < n_units / cell_stride; ++cell) {
        const RunRecord& head = records[cell * cell_stride];
        std::vector<double> errors;
        errors.reserve(config.trials);
        for (std::size_t t = 0; t < config.trials; ++t)
            errors.push_back(records[cell * cell_stride + t].final_error);
        const RunSummary s = summarize(errors);
        summary_csv += head.variant + ',' + head.function + ',' + std::to_string(head.dimension) +
                       ',' + std::to_string(s.n_runs) + ',' + detail::format_double(s.mean_error) +
                       ',' + detail::format_double(s.std_error) + ',' + format_summary(s) + '\n';
        nlohmann::json jcell;
        jcell["variant"] = head.variant;
        jcell["function"] = head.function;
        jcell["dim"] = head.dimension;
        jcell["mean_error"] = s.mean_error;
        jcell["std_error"] = s.std_error;
        jcell["summary"] = format_summary(s);
        jcell["final_errors"] = errors;
        doc["cells"].push_back(jcell);
    }
    detail::write_file_atomic(config.output_dir / "summary.csv", summary_csv);
    detail::write_file_atomic(config.output_dir / "summary.json", doc.dump(2) + "\n");

    // verdict matrix vs the reference variant
    const bool have_reference =
        std::find(config.variants.begin(), config.variants.end(), config.reference) !=
        config.variants.end();
    if (have_reference && config.variants.size() >= 2) {
        auto cell_errors = [&](VariantPreset variant, const std::string& function,
                               std::size_t dim) {
            std::vector<double> errors;
            for (const auto& r : records)
                if (r.variant == to_string(variant) && r.function == function &&
                    r.dimension == dim)
                    errors.push_back(r.final_error);
            return errors;
        };
        std::string verdict_csv = "function,dim,reference,competitor,sign,p_value\n";
        for (const auto& function : config.functions) {
            for (auto dim : config.dimensions) {
                const auto ref_errors = cell_errors(config.reference, function, dim);
                for (auto variant : config.variants) {
                    if (variant == config.reference) continue;
                    const auto other = cell_errors(variant, function, dim);
                    const ComparisonVerdict v =
                        wilcoxon_rank_sum(ref_errors, other, config.alpha);
                    verdict_csv += function + ',' + std::to_string(dim) + ',' +
                                   std::string(to_string(config.reference)) + ',' +
                                   std::string(to_string(variant)) + ',' + to_char(v.sign) +
                                   ',' + detail::format_double(v.p_value) + '\n';
                }
            }
        }
        detail::write_file_atomic(config.output_dir / "verdicts.csv", verdict_csv);
    }
}

/// Parse the flat key = value config format. Lists are comma separated;
/// '#' starts a comment.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig config;
    bool have_variants = false, have_functions = false, have_out = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        auto list_of = [&](auto parse_item) {
            using Item = decltype(parse_item(std::string{}));
            std::vector<Item> items;
            for (auto& piece : detail::split(value, ',')) {
                const std::string item = detail::trim(piece);
                if (!item.empty()) items.push_back(parse_item(item));
            }
            if (items.empty())
                throw ConfigError("config: '" + key + "' needs at least one entry");
            return items;
        };
        try {
            if (key == "variants") {
                config.variants = list_of([](const std::string& s) { return variant_from_string(s); });
                have_variants = true;
            } else if (key == "functions") {
                config.functions = list_of([](const std::string& s) { return s; });
                have_functions = true;
            } else if (key == "dimensions") {
                config.dimensions = list_of(
                    [](const std::string& s) { return static_cast<std::size_t>(std::stoull(s)); });
            } else if (key == "trials") {
                config.trials = static_cast<std::size_t>(std::stoull(value));
            } else if (key == "base_seed") {
                config.base_seed = std::stoull(value);
            } else if (key == "alpha") {
                config.alpha = std::stod(value);
            } else if (key == "output_dir") {
                config.output_dir = value;
                have_out = true;
            } else if (key == "reference") {
                config.reference = variant_from_string(value);
            } else if (key == "workers") {
                config.workers = static_cast<std::size_t>(std::stoull(value));
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": value out of range for '" + key + "'");
        }
    }
    if (!have_variants || !have_functions || !have_out)
        throw ConfigError("config: variants, functions and output_dir are required");
    return config;
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_experiment_config(in);
}

/// Rows of a previously written results.csv.
inline std::vector<RunRecord> load_results(const std::filesystem::path& output_dir) {
    std::ifstream in(output_dir / "results.csv");
    if (!in) throw ConfigError("no results.csv under " + output_dir.string());
    std::string line;
    if (!std::getline(in, line) ||
        line != "variant,function,dim,trial,seed,final_error,nfc_used,generations,terminated_by")
        throw std::runtime_error("results.csv: unexpected header");
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 9) throw std::runtime_error("results.csv: malformed row '" + line + "'");
        RunRecord r;
        r.variant = f[0];
        r.function = f[1];
        r.dimension = std::stoull(f[2]);
        r.trial = std::stoull(f[3]);
        r.seed = std::stoull(f[4]);
        r.final_error = std::stod(f[5]);
        r.nfc_used = std::stoull(f[6]);
        r.generations = std::stoull(f[7]);
        r.terminated_by = f[8];
        records.push_back(std::move(r));
    }
    return records;
}

/// One verdict-matrix cell as recomputed by `compare`.
struct VerdictCell {
    std::string function;
    std::size_t dimension = 0;
    std::string competitor;
    ComparisonVerdict verdict;
};

/// Recompute the verdict matrix from stored per-run errors.
inline std::vector<VerdictCell> compare_results(const std::vector<RunRecord>& records,
                                                std::string_view reference, double alpha) {
    std::vector<std::string> functions;
    std::vector<std::size_t> dims;
    std::vector<std::string> variants;
    auto remember = [](auto& list, const auto& value) {
        if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
    };
    for (const auto& r : records) {
        remember(functions, r.function);
        remember(dims, r.dimension);
        remember(variants, r.variant);
    }
    if (std::find(variants.begin(), variants.end(), std::string(reference)) == variants.end())
        throw ConfigError("reference variant '" + std::string(reference) + "' not present in results");

    auto cell_errors = [&](const std::string& variant, const std::string& function,
                           std::size_t dim) {
        std::vector<double> errors;
        for (const auto& r : records)
            if (r.variant == variant && r.function == function && r.dimension == dim)
                errors.push_back(r.final_error);
        return errors;
    };

    std::vector<VerdictCell> cells;
    for (const auto& function : functions) {
        for (auto dim : dims) {
            const auto ref_errors = cell_errors(std::string(reference), function, dim);
            for (const auto& variant : variants) {
                if (variant == reference) continue;
                const auto other = cell_errors(variant, function, dim);
                if (ref_errors.size() < 2 || other.size() < 2) continue;
                cells.push_back(
                    {function, dim, variant, wilcoxon_rank_sum(ref_errors, other, alpha)});
            }
        }
    }
    return cells;
}

/// Raw + median-aggregated convergence CSVs for one (function, dim) cell,
/// read back from the trace files of an experiment directory.
///
/// The median file evaluates every trace on a common nfc grid using the
/// held-constant step semantics of trace_error_at.
inline std::pair<std::filesystem::path, std::filesystem::path> emit_convergence_csv(
    const std::filesystem::path& output_dir, const std::string& function, std::size_t dimension,
    std::size_t grid_points = 201) {
    if (grid_points < 2) throw ConfigError("emit_convergence_csv: need at least 2 grid points");
    const auto records = load_results(output_dir);

    std::vector<std::string> variants;
    std::size_t max_trial = 0;
    for (const auto& r : records) {
        if (r.function != function || r.dimension != dimension) continue;
        if (std::find(variants.begin(), variants.end(), r.variant) == variants.end())
            variants.push_back(r.variant);
        max_trial = std::max(max_trial, r.trial);
    }
    if (variants.empty())
        throw ConfigError("no results for function '" + function + "' at dim " +
                          std::to_string(dimension));

    std::map<std::string, std::vector<ConvergenceTrace>> traces;
    std::uint64_t max_nfc = 0;
    for (const auto& variant : variants) {
        auto& list = traces[variant];
        for (std::size_t t = 0; t <= max_trial; ++t) {
            const auto path = trace_path(output_dir, variant, function, dimension, t);
            std::ifstream in(path);
            if (!in) throw ConfigError("missing trace file " + path.string());
            list.push_back(trace_from_csv(in));
            if (!list.back().empty()) max_nfc = std::max(max_nfc, list.back().back().nfc);
        }
    }

    const std::string stem = "curves_" + function + "_d" + std::to_string(dimension);
    const auto raw_path = output_dir / (stem + ".csv");
    const auto median_path = output_dir / (stem + "_median.csv");

    std::string raw = "variant,trial,nfc,best_error\n";
    for (const auto& variant : variants)
        for (std::size_t t = 0; t < traces[variant].size(); ++t)
            for (const auto& point : traces[variant][t])
                raw += variant + ',' + std::to_string(t) + ',' + std::to_string(point.nfc) + ',' +
                       detail::format_double(point.best_error) + '\n';
    detail::write_file_atomic(raw_path, raw);

    std::string med = "variant,nfc,median_error\n";
    for (const auto& variant : variants) {
        for (std::size_t g = 0; g < grid_points; ++g) {
            const std::uint64_t nfc = static_cast<std::uint64_t>(
                static_cast<double>(max_nfc) * static_cast<double>(g) /
                static_cast<double>(grid_points - 1));
            std::vector<double> values;
            for (const auto& trace : traces[variant]) values.push_back(trace_error_at(trace, nfc));
            med += variant + ',' + std::to_string(nfc) + ',' +
                   detail::format_double(median(values)) + '\n';
        }
    }
    detail::write_file_atomic(median_path, med);
    return {raw_path, median_path};
}

} // namespace microde
