#include <CLI11.hpp>

#include <fracpath/harness.hpp>

#include <fstream>
#include <iostream>

namespace fp = fracpath;

namespace {

int config_error(const std::string& msg) {
    std::cout << "error,config," << fp::CsvWriter::escape(msg) << '\n';
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracpath: occupation measures, potentials and fractional calculus on sampled paths"};
    app.require_subcommand(1);

    std::string config_file, out_dir, filter = "*", oracle_out;
    std::uint64_t seed = 1;
    int threads = 0;
    bool seed_given = false;

    std::vector<CLI::App*> runs;
    for (const auto& name : fp::experiment_names()) {
        if (name == "verify") continue;
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_file, "config file")->required();
        sub->add_option("--seed", seed, "single seed, replaces the config list")->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--threads", threads, "worker threads (results do not depend on it)");
        sub->add_option("--out", out_dir, "output directory, replaces output_dir");
        runs.push_back(sub);
    }
    auto* verify = app.add_subcommand("verify", "run named checks");
    verify->add_option("--filter", filter, "check name pattern, * matches anything");
    verify->add_option("--seed", seed, "seed for random checks");
    verify->add_option("--threads", threads, "worker threads");
    verify->add_option("--out", out_dir, "also write verify.csv here");
    verify->add_option("--config", config_file, "verify config; writes verify.csv and manifest.txt");
    auto* build = app.add_subcommand("oracle-build", "write the pinned oracle corpus");
    build->add_option("--out", oracle_out, "oracle file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return config_error(e.what());
    }
    if (threads > 0) fp::set_thread_count(threads);

    try {
        if (build->parsed()) {
            std::ofstream f(oracle_out, std::ios::binary);
            if (!f) return config_error("cannot write " + oracle_out);
            fp::write_oracles(f);
            return 0;
        }
        if (verify->parsed() && !config_file.empty()) {
            fp::ExperimentConfig c;
            try {
                c = fp::load_config(config_file);
                if (c.experiment != "verify") throw fp::ConfigError("config experiment '" + c.experiment + "' differs from command 'verify'");
                if (verify->count("--seed")) c.seeds = {seed};
                if (verify->count("--filter")) c.filter = filter;
                if (!out_dir.empty()) c.output_dir = out_dir;
            } catch (const fp::ConfigError& e) {
                return config_error(e.what());
            }
            const auto s = fp::run_experiment(c, c.output_dir);
            for (const auto& f : s.files) std::cout << f << '\n';
            return s.checks_passed ? 0 : 1;
        }
        if (verify->parsed()) {
            const auto rows = fp::verify_suite(filter, seed);
            fp::write_check_table(std::cout, rows, true);
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream f(std::filesystem::path(out_dir) / "verify.csv", std::ios::binary);
                fp::write_check_table(f, rows, false);
            }
            return fp::all_passed(rows) ? 0 : 1;
        }
        for (auto* sub : runs) {
            if (!sub->parsed()) continue;
            fp::ExperimentConfig c;
            try {
                c = fp::load_config(config_file);
                if (c.experiment != sub->get_name())
                    throw fp::ConfigError("config experiment '" + c.experiment + "' differs from command '" + sub->get_name() + "'");
                if (seed_given) c.seeds = {seed};
                if (!out_dir.empty()) c.output_dir = out_dir;
                fp::validate_config(c);
            } catch (const fp::ConfigError& e) {
                return config_error(e.what());
            }
            const auto s = fp::run_experiment(c, c.output_dir);
            for (const auto& f : s.files) std::cout << f << '\n';
            return s.checks_passed ? 0 : 1;
        }
    } catch (const fp::ConfigError& e) {
        return config_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error,runtime," << e.what() << '\n';
        return 1;
    }
    return 0;
}
