// Command line front end: single runs, config-driven experiments,
// statistical comparison and convergence-curve export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "microde/microde.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_runtime_fault = 3;

std::string short_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string full_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string pool_names(const std::vector<microde::MutationScheme>& pool) {
    std::string out;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i) out += ',';
        out += microde::to_string(pool[i]);
    }
    return out;
}

struct SolveOptions {
    std::string variant = "OEMDE";
    std::string function;
    std::size_t dim = 0;
    std::uint64_t seed = 1;
    std::uint64_t shift_seed = 1;
    std::uint64_t nfc_max = 0; // 0 = preset default
    double cr = -1.0;          // <0 = preset default
    std::size_t np = 0;        // 0 = preset default
    std::string trace_file;
};

int cmd_solve(const SolveOptions& opt) {
    const auto preset = microde::variant_from_string(opt.variant);
    const auto problem = microde::make_problem({opt.function, opt.dim, opt.shift_seed});
    auto config = microde::expand_preset(preset, opt.dim);
    if (opt.nfc_max != 0) config.nfc_max = opt.nfc_max;
    if (opt.cr >= 0.0) config.cr = opt.cr;
    if (opt.np != 0) config.np = opt.np;

    const auto result = microde::run(problem, config, opt.seed);

    std::cout << "variant: " << microde::to_string(preset) << '\n'
              << "function: " << problem.name() << '\n'
              << "dim: " << problem.dimension() << '\n'
              << "seed: " << opt.seed << '\n'
              << "shift_seed: " << opt.shift_seed << '\n'
              << "np: " << config.np << '\n'
              << "cr: " << short_double(config.cr) << '\n'
              << "scale_factor: " << microde::describe(config.scale_factor_mode) << '\n'
              << "scheme_pool: " << pool_names(config.scheme_pool) << '\n'
              << "opposition: " << microde::describe(config.opposition) << '\n'
              << "nfc_max: " << config.nfc_max << '\n'
              << "evtr: " << short_double(config.evtr) << '\n'
              << "terminated_by: " << microde::to_string(result.terminated_by) << '\n'
              << "best_fitness: " << full_double(result.best_fitness) << '\n'
              << "final_error: " << full_double(result.final_error) << '\n'
              << "nfc_used: " << result.nfc_used << '\n'
              << "generations: " << result.generations << '\n';
    std::cout << "best_position: ";
    for (std::size_t d = 0; d < result.best_position.size(); ++d) {
        if (d) std::cout << ',';
        std::cout << full_double(result.best_position[d]);
    }
    std::cout << '\n';

    const std::string csv = microde::trace_to_csv(result.trace);
    if (opt.trace_file.empty()) {
        std::cout << '\n' << csv;
    } else {
        std::ofstream out(opt.trace_file, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write trace file " + opt.trace_file);
        out << csv;
        std::cout << "trace: " << opt.trace_file << '\n';
    }
    return exit_ok;
}

int cmd_run(const std::string& config_path) {
    const auto config = microde::load_experiment_config(config_path);
    microde::run_experiment(config);
    std::cout << "experiment complete: " << config.variants.size() << " variants x "
              << config.functions.size() << " functions x " << config.dimensions.size()
              << " dimensions x " << config.trials << " trials\n"
              << "output: " << config.output_dir.string() << '\n';
    return exit_ok;
}

int cmd_compare(const std::string& dir, double alpha, const std::string& reference) {
    const auto records = microde::load_results(dir);
    const auto cells = microde::compare_results(records, reference, alpha);
    std::cout << "reference: " << reference << "  alpha: " << short_double(alpha) << '\n';

    std::map<std::string, std::vector<microde::ComparisonVerdict>> by_competitor;
    for (const auto& cell : cells) {
        std::cout << cell.function << " d" << cell.dimension << " vs " << cell.competitor << ": "
                  << microde::to_char(cell.verdict.sign)
                  << "  (p=" << short_double(cell.verdict.p_value) << ")\n";
        by_competitor[cell.competitor].push_back(cell.verdict);
    }
    std::cout << '\n';
    for (const auto& [competitor, verdicts] : by_competitor) {
        const auto tally = microde::tally_verdicts(verdicts);
        std::cout << "tally vs " << competitor << ": +" << tally.plus << " =" << tally.equal
                  << " -" << tally.minus << '\n';
    }
    return exit_ok;
}

int cmd_curves(const std::string& dir, const std::string& function, std::size_t dim) {
    const auto [raw, med] = microde::emit_convergence_csv(dir, function, dim);
    std::cout << "curves: " << raw.string() << '\n' << "median: " << med.string() << '\n';
    return exit_ok;
}

int cmd_list_functions() {
    for (const auto& info : microde::benchmark_registry())
        std::cout << info.id << "  [" << microde::to_string(info.fclass) << "]  " << info.summary
                  << '\n';
    return exit_ok;
}

int cmd_list_variants() {
    for (auto preset : microde::all_variants()) {
        const auto config = microde::expand_preset(preset, 1);
        std::cout << microde::to_string(preset) << "  scale_factor="
                  << microde::describe(config.scale_factor_mode)
                  << " pool=" << pool_names(config.scheme_pool)
                  << " opposition=" << microde::describe(config.opposition) << '\n';
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"micro differential evolution toolkit"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "execute a config-driven experiment");
    std::string config_path;
    run_cmd->add_option("--config", config_path, "experiment config file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "single optimization run");
    SolveOptions solve;
    solve_cmd->add_option("--variant", solve.variant, "algorithm variant")->capture_default_str();
    solve_cmd->add_option("--function", solve.function, "benchmark function id")->required();
    solve_cmd->add_option("--dim", solve.dim, "problem dimension")->required();
    solve_cmd->add_option("--seed", solve.seed, "run seed")->required();
    solve_cmd->add_option("--shift-seed", solve.shift_seed, "optimum shift seed")
        ->capture_default_str();
    solve_cmd->add_option("--nfc-max", solve.nfc_max, "override evaluation budget");
    solve_cmd->add_option("--cr", solve.cr, "override crossover rate");
    solve_cmd->add_option("--np", solve.np, "override population size");
    solve_cmd->add_option("--trace", solve.trace_file, "write trace CSV here instead of stdout");

    auto* compare_cmd = app.add_subcommand("compare", "verdict matrix from an experiment dir");
    std::string compare_dir;
    double alpha = 0.05;
    std::string reference = "OEMDE";
    compare_cmd->add_option("--dir", compare_dir, "experiment output dir")->required();
    compare_cmd->add_option("--alpha", alpha, "significance level")->capture_default_str();
    compare_cmd->add_option("--reference", reference, "reference variant")->capture_default_str();

    auto* curves_cmd = app.add_subcommand("curves", "convergence CSVs for one cell");
    std::string curves_dir, curves_function;
    std::size_t curves_dim = 0;
    curves_cmd->add_option("--dir", curves_dir, "experiment output dir")->required();
    curves_cmd->add_option("--function", curves_function, "benchmark function id")->required();
    curves_cmd->add_option("--dim", curves_dim, "problem dimension")->required();

    auto* list_f = app.add_subcommand("list-functions", "bundled benchmark functions");
    auto* list_v = app.add_subcommand("list-variants", "algorithm variant presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(config_path);
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (compare_cmd->parsed()) return cmd_compare(compare_dir, alpha, reference);
        if (curves_cmd->parsed()) return cmd_curves(curves_dir, curves_function, curves_dim);
        if (list_f->parsed()) return cmd_list_functions();
        if (list_v->parsed()) return cmd_list_variants();
    } catch (const microde::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime_fault;
    }
    return exit_ok;
}
