#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

void write_output(const bktool::Report& report, const bktool::RunConfig& cfg, const std::string& text)
{
    std::string path = cfg.outPath;
    if (path.empty()) {
        if (const char* dir = std::getenv("BKTOOL_OUT_DIR"); dir && *dir) {
            std::string ext = cfg.format == "text" ? "txt" : cfg.format;
            path = (std::filesystem::path(dir) / (report.command + "-p" + std::to_string(report.ctx.p) + "-f" +
                                                  std::to_string(report.ctx.f) + "-e" + std::to_string(report.ctx.e) +
                                                  "." + ext))
                       .string();
        }
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv)
{
    bktool::RunConfig cfg;
    std::string replayPath;

    CLI::App app{"Rank-one Breuil-Kisin modules with tame descent data: shapes, Serre weights, Breuil-Mezard cycles"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-p", cfg.p, "residue characteristic (odd prime)")->capture_default_str();
        sub->add_option("-f", cfg.f, "residue degree")->capture_default_str();
        sub->add_option("-e", cfg.e, "ramification index")->capture_default_str();
        sub->add_option("--type", cfg.typeSelector, "ps:<k0>,<k0p> | cusp:<k0> | scalar:<k0>");
        sub->add_flag("--ordered", cfg.ordered, "list ordered principal series pairs");
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.outPath, "output file (default: stdout or $BKTOOL_OUT_DIR)");
        sub->add_flag("--timing", cfg.timing, "record wall-clock milliseconds in the summary");
    };

    auto* types = app.add_subcommand("types", "list tame inertial types with gamma digits");
    auto* ptau = app.add_subcommand("ptau", "shapes, P_tau and refined-shape family dimensions");
    auto* weights = app.add_subcommand("weights", "Jordan-Holder factors and characters of T(N)");
    auto* oracle = app.add_subcommand("oracle", "formula versus brute-force oracle sweeps");
    auto* bm = app.add_subcommand("bm", "Breuil-Mezard system, solutions and cycle checks");
    auto* components = app.add_subcommand("components", "Dieudonne patterns, divisor supports, components");
    for (auto* sub : {types, ptau, weights, oracle, bm, components}) add_common(sub);
    oracle->add_flag("--exhaustive", cfg.exhaustive, "sweep every rank-one pair for the context");
    oracle->add_option("--samples", cfg.samples, "number of random pairs (default 200 unless --exhaustive)");
    oracle->add_option("--trunc", cfg.trunc, "oracle truncation override");
    oracle->add_option("--replay", replayPath, "re-evaluate the items of an earlier JSON oracle report");

    CLI11_PARSE(app, argc, argv);

    try {
        bktool::Report report;
        if (types->parsed()) report = bktool::cmd_types(cfg);
        else if (ptau->parsed()) report = bktool::cmd_ptau(cfg);
        else if (weights->parsed()) report = bktool::cmd_weights(cfg);
        else if (bm->parsed()) report = bktool::cmd_bm(cfg);
        else if (components->parsed()) report = bktool::cmd_components(cfg);
        else if (!replayPath.empty()) {
            std::ifstream in(replayPath, std::ios::binary);
            if (!in) throw std::runtime_error("cannot read " + replayPath);
            report = bktool::replay_oracle(bktool::Json::parse(in), cfg);
        } else report = bktool::cmd_oracle(cfg);
        write_output(report, cfg, bktool::render(report, cfg.format));
        return report.fail == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
