#include "zenochain/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ParamFlags
{
    std::size_t m = 0;
    std::size_t n = 0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    bool blocks = false;
    bool balanced = false;
};

struct OutputFlags
{
    zenochain::OutputFormat format = zenochain::OutputFormat::csv;
    std::string out;
};

const std::map<std::string, zenochain::OutputFormat> kFormats = {{"csv", zenochain::OutputFormat::csv},
                                                                 {"json", zenochain::OutputFormat::json}};

void add_output_flags(CLI::App* cmd, OutputFlags& flags)
{
    cmd->add_option("--format", flags.format, "Output format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    cmd->add_option("--out", flags.out, "Output file (default: standard output)");
}

void add_kappa_flags(CLI::App* cmd, ParamFlags& flags)
{
    const auto fraction = CLI::Range(0.0, 1.0);
    cmd->add_option("--kappa1", flags.kappa1, "Left-group (outer chain) dissipation")->check(fraction);
    cmd->add_option("--kappa2", flags.kappa2, "Middle-group (inner chain) dissipation")->check(fraction);
    cmd->add_option("--kappa3", flags.kappa3, "Right-group (channel) dissipation")->check(fraction);
}

std::string render_rows(const std::vector<zenochain::ReportRow>& rows, zenochain::OutputFormat format)
{
    std::ostringstream os;
    zenochain::write_rows(os, rows, format);
    return os.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nested Mach-Zehnder chain simulator for counterfactual communication with dissipation"};
    app.require_subcommand(1);

    const auto positive = CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max());
    ParamFlags params;
    OutputFlags output;
    std::string config_path;
    std::string figures_dir = ".";

    auto* eval = app.add_subcommand("eval", "Evaluate a single parameter set");
    eval->add_option("--m", params.m, "Outer chain splitters M")->required()->check(positive);
    eval->add_option("--n", params.n, "Inner chain splitters N")->required()->check(positive);
    add_kappa_flags(eval, params);
    eval->add_flag("--blocks", params.blocks, "Bob inserts his blocks");
    eval->add_flag("--balanced", params.balanced, "Set kappa1 to the balanced value for N and kappa2");
    add_output_flags(eval, output);

    auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid from a JSON config");
    sweep->add_option("--config", config_path, "Sweep config (JSON)")->required();
    auto* sweep_format = sweep->add_option("--format", output.format, "Output format (overrides config)")
                             ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    auto* sweep_out = sweep->add_option("--out", output.out, "Output file (overrides config)");

    auto* table1 = app.add_subcommand("table1", "Reproduce the with-blocks efficiency / channel-exposure table");
    add_output_flags(table1, output);

    auto* balance = app.add_subcommand("balance", "Balanced kappa1 and the resulting with-blocks evaluation");
    params.m = 6;
    balance->add_option("--n", params.n, "Inner chain splitters N")->required()->check(positive);
    balance->add_option("--m", params.m, "Outer chain splitters M")->check(positive);
    balance->add_option("--kappa2", params.kappa2, "Inner chain dissipation (kappa3 = kappa2)")
        ->check(CLI::Range(0.0, 1.0));
    add_output_flags(balance, output);

    auto* figures = app.add_subcommand("figures", "Write every figure sweep into a directory");
    figures->add_option("--out", figures_dir, "Output directory");
    figures->add_option("--format", output.format, "Output format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval) {
            zenochain::ProtocolParams p;
            p.outer_count = params.m;
            p.inner_count = params.n;
            p.kappa1 = params.kappa1;
            p.kappa2 = params.kappa2;
            p.kappa3 = params.kappa3;
            p.bob_blocks = params.blocks;
            if (params.balanced)
                p.kappa1 = zenochain::balanced_kappa1(p.inner_count, p.kappa2);
            zenochain::write_output(output.out, render_rows({zenochain::make_row(p)}, output.format));
        } else if (*sweep) {
            auto spec = zenochain::load_sweep_spec(config_path);
            if (*sweep_format)
                spec.format = output.format;
            if (*sweep_out)
                spec.out = output.out;
            zenochain::write_output(spec.out, render_rows(zenochain::run_sweep(spec), spec.format));
        } else if (*table1) {
            std::ostringstream os;
            zenochain::write_table1(os, zenochain::run_table1(), output.format);
            zenochain::write_output(output.out, os.str());
        } else if (*balance) {
            const auto row = zenochain::balance_row(params.m, params.n, params.kappa2);
            zenochain::write_output(output.out, render_rows({row}, output.format));
        } else if (*figures) {
            std::error_code ec;
            std::filesystem::create_directories(figures_dir, ec);
            if (ec)
                throw zenochain::IoError("cannot create directory '" + figures_dir + "': " + ec.message());
            for (auto& fig : zenochain::figure_specs()) {
                const auto ext = output.format == zenochain::OutputFormat::csv ? ".csv" : ".json";
                const auto path = (std::filesystem::path(figures_dir) / (fig.name + ext)).string();
                zenochain::write_output(path, render_rows(zenochain::run_sweep(fig.spec), output.format));
                std::cerr << "wrote " << path << '\n';
            }
        }
    } catch (const zenochain::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
