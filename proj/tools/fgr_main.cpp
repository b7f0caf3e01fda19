// fgr: generalised decay rate curves, onset times and figure data

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fgr/commands.hpp"
#include "fgr/config.hpp"
#include "fgr/quadrature.hpp"

namespace {

constexpr const char* kFooter = R"(Exit codes:
  0  success
  1  invalid configuration or arguments
  2  partial convergence (some points flagged)
  3  onset not found within the time grid
  4  verification failure

Environment:
  FGR_THREADS         worker threads for rate curves (0 or unset = all cores)
  FGR_VERIFY_REL_TOL  rel_tol used by `fgr verify` (default 1e-10))";

}  // namespace

int main(int argc, char** argv)
{
    namespace cli = fgr::cli;

    CLI::App app{"Generalised decay rate of a two-level system beyond the golden rule", "fgr"};
    app.footer(kFooter);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<double> epsilon;
    std::string figure_id;
    std::string out_dir = ".";
    std::optional<double> verify_tol;

    auto* rate = app.add_subcommand("rate", "Compute Gamma(t)/Gamma0 on the configured time grid");
    rate->add_option("-c,--config", config_path, "JSON run configuration")->required();

    auto* onset = app.add_subcommand("onset", "Analytic and empirical onset time of the golden rule");
    onset->add_option("-c,--config", config_path, "JSON run configuration")->required();
    onset->add_option("--epsilon", epsilon, "tolerance on |Gamma/Gamma0 - 1| (overrides the config)");

    auto* figure = app.add_subcommand("figure", "Write the curves of fig1, fig2 or fig3 as CSV plus markers.json");
    figure->add_option("figure", figure_id, "fig1 | fig2 | fig3")->required()->check(
        CLI::IsMember({"fig1", "fig2", "fig3"}));
    figure->add_option("-o,--output", out_dir, "output directory");

    auto* verify = app.add_subcommand("verify", "Cross-check the quadrature against an independent scheme");
    verify->add_option("--rel-tol", verify_tol, "quadrature rel_tol (overrides FGR_VERIFY_REL_TOL)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitConfig;
    }

    const unsigned threads = fgr::threads_from_env();
    try {
        if (*rate) return cli::cmd_rate(cli::load_config(config_path), threads, std::cout, std::cerr);
        if (*onset) return cli::cmd_onset(cli::load_config(config_path), epsilon, threads, std::cout, std::cerr);
        if (*figure) return cli::cmd_figure(figure_id, out_dir, threads, std::cout, std::cerr);
        if (*verify) return cli::cmd_verify(verify_tol, std::cout, std::cerr);
    } catch (const cli::ConfigError& e) {
        std::cerr << "fgr: config error: " << e.what() << '\n';
        return cli::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "fgr: " << e.what() << '\n';
        return cli::kExitConfig;
    }
    return cli::kExitConfig;
}
