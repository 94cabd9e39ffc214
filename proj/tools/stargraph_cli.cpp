// Command-line front end: constructs, verifies and enumerates the
// two-particle eigensolutions on a star graph with a delta interaction on
// the diagonal. All substantive work happens in the library; this file only
// wires flags and an optional JSON config file into a RunConfig.

#include <stargraph/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

// The config file must be applied before CLI11 binds option defaults, so
// sweep argv for it first. Values given on the command line still win:
// CLI11 only writes bound variables for options actually present.
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    stargraph::RunConfig cfg;

    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) {
        try {
            stargraph::apply_config_file(cfg, config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"Exact two-particle eigensolutions on a star graph"};
    app.require_subcommand(1);

    std::string range_str;
    std::string config_unused;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "number of edges")->capture_default_str();
        sub->add_option("--k1", cfg.k1, "first momentum, as a rational p/q")->capture_default_str();
        sub->add_option("--k2", cfg.k2, "second momentum, as a rational p/q")->capture_default_str();
        sub->add_option("--c", cfg.c, "interaction strength, as a rational p/q")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format: json, tsv or pretty");
        sub->add_option("--config", config_unused, "JSON config file; keys mirror the flags");
    };

    CLI::App* basis = app.add_subcommand("basis", "emit a product subbasis");
    add_common(basis);
    basis->add_option("--kind", cfg.kind,
                      "smooth-symmetric, smooth-antisymmetric, nonsmooth-symmetric, "
                      "nonsmooth-antisymmetric, cbas or dbas")
        ->capture_default_str();

    CLI::App* families = app.add_subcommand("families", "emit the three solution families");
    add_common(families);

    CLI::App* enumerate = app.add_subcommand("enumerate", "solve the constraint system exhaustively");
    add_common(enumerate);

    CLI::App* certify = app.add_subcommand("certify", "run the full certificate at one n or a range");
    add_common(certify);
    certify->add_option("--n-range", range_str, "inclusive range A..B of edge counts");

    CLI::App* check = app.add_subcommand("check", "verify waves read from a coefficient table");
    add_common(check);
    check->add_option("--input", cfg.input, "TSV file of coefficients, or - for stdin")->capture_default_str();

    CLI::App* defects = app.add_subcommand("defects", "print the defects of the continuous non-smooth combinations");
    add_common(defects);

    CLI::App* numeric = app.add_subcommand("numeric-check", "floating-point cross check of the families");
    add_common(numeric);
    // --h is the step flag here, so help keeps only its long spelling
    numeric->set_help_flag("--help", "print help");
    numeric->add_option("--h", cfg.h, "finite-difference step for boundary sampling")->capture_default_str();
    numeric->add_option("--samples", cfg.samples, "sample positions per edge")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!range_str.empty()) {
        try {
            cfg.n_range = stargraph::parse_n_range(range_str);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    const stargraph::RunResult result = stargraph::run(cfg, &std::cin);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
