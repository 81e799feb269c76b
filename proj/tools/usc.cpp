// usc: run simulation experiments described by JSON configs.
#include <iostream>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "usc/cli.hpp"

int main(int argc, char** argv)
{
    namespace cli = usc::cli;

    CLI::App app{"Ultrastrong-coupling simulation toolkit"};
    app.set_version_flag("--version", std::string(cli::library_version));
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    std::size_t jobs = 0;

    auto* run = app.add_subcommand("run", "run one experiment");
    run->add_option("config", config, "experiment config (JSON)")->required();
    run->add_option("-o,--out", out_dir, "output directory");

    auto* sweep = app.add_subcommand("sweep", "run the sweep block of a config");
    sweep->add_option("config", config, "experiment config (JSON)")->required();
    sweep->add_option("-o,--out", out_dir, "output directory");
    sweep->add_option("-j,--jobs", jobs, "worker threads (default: USC_NUM_THREADS or 1)")->check(CLI::PositiveNumber);

    app.add_subcommand("list", "list models and schemes with their parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::ExitCode::ConfigFailure;
    }

    cli::RunOptions opt;
    opt.out_dir = out_dir;
    try {
        const auto env = cli::env_threads();
        opt.jobs = jobs ? jobs : env.value_or(1);
        // Dense kernels get the environment's thread budget; sweep workers get --jobs.
        Eigen::setNbThreads(static_cast<int>(env.value_or(1)));
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::ExitCode::ConfigFailure;
    }

    if (*run) return cli::run(config, opt, std::cout, std::cerr);
    if (*sweep) return cli::sweep(config, opt, std::cout, std::cerr);
    return cli::list(std::cout);
}
