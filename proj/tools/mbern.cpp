// Command-line front end: mbern <command> --input problem.json [options]

#include "mbern/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

int emit(const mbern::cli::Outcome& out, const std::string& output_path)
{
    const std::string text = out.report.dump(2) + "\n";
    if (output_path.empty())
        std::cout << text;
    else
        mbern::cli::write_atomically(output_path, text);
    if (out.exit_code == mbern::cli::kInvalidInput || out.exit_code == mbern::cli::kCapExceeded)
        std::cerr << "mbern: " << out.report.value("error", std::string("error")) << '\n';
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multivariate Bernoulli distributions with given margins and pair correlations"};
    app.require_subcommand(1);

    std::string input, output, mode, csv, density;
    bool paper_order = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    unsigned precision = 12;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"rays", "enumerate the ray densities of the class"},
        {"bounds", "attainable range of every pair correlation"},
        {"fit", "a density with the target correlations, or an infeasibility certificate"},
        {"nearest", "feasible correlations closest to the target"},
        {"minimize", "fit while minimizing the higher-order moments"},
        {"sample", "draw a sample from a fitted or given density"},
        {"theta", "polynomial coefficients of a density"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-i,--input", input, "problem JSON file (- for stdin)")->required();
        sub->add_option("-o,--output", output, "report file; stdout when omitted");
        sub->add_option("--mode", mode, "rays or direct")->check(CLI::IsMember({"rays", "direct"}));
        sub->add_flag("--paper-order", paper_order, "print densities with x = (1,...,1) first");
        sub->add_option("--precision", precision, "digits after the decimal point")->check(CLI::Range(0U, 200U));
        if (name == "rays" || name == "sample") sub->add_option("--csv", csv, "also write a CSV file");
        if (name == "sample") {
            sub->add_option("--seed", seed, "generator seed");
            sub->add_option("--n", n, "number of draws")->check(CLI::PositiveNumber);
        }
        if (name == "theta") sub->add_option("--density", density, "report or JSON array holding the density");
    }
    CLI11_PARSE(app, argc, argv);

    const CLI::App* sub = app.get_subcommands().front();
    mbern::cli::RunOptions opts;
    if (!mode.empty()) opts.mode = mode == "rays" ? mbern::cli::Mode::Rays : mbern::cli::Mode::Direct;
    opts.paper_order = paper_order;
    opts.precision = precision;
    opts.seed = seed;
    opts.n = n;
    if (!csv.empty()) opts.csv_path = csv;
    if (!density.empty()) opts.density_path = density;

    nlohmann::json spec;
    try {
        std::stringstream buf;
        if (input == "-") {
            buf << std::cin.rdbuf();
        } else {
            std::ifstream in(input);
            if (!in) {
                std::cerr << "mbern: cannot open " << input << '\n';
                return mbern::cli::kInvalidInput;
            }
            buf << in.rdbuf();
        }
        spec = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "mbern: " << input << ": " << e.what() << '\n';
        return mbern::cli::kInvalidInput;
    }

    try {
        return emit(mbern::cli::run(sub->get_name(), spec, opts), output);
    } catch (const std::exception& e) {
        std::cerr << "mbern: " << e.what() << '\n';
        return 1;
    }
}
