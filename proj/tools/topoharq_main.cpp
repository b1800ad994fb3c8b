// Command line front end for the topoharq pipeline.
#include "CLI11.hpp"

#include "topoharq/config.hpp"
#include "topoharq/runner.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

struct CommonArgs {
    std::string config_path;
    // Flag overrides, applied on top of the config file.
    std::vector<std::pair<std::string, std::string>> overrides;
};

constexpr std::pair<const char*, const char*> kOverrideFlags[] = {
    {"corpus", "image corpus directory"},
    {"model", "detector model json path"},
    {"channel", "awgn or rayleigh"},
    {"snr-db", "comma list of snr points in dB"},
    {"rate", "comma list of channel usage rates"},
    {"embedding-dim", "comma list of embedding dims, mapped to rates via stages"},
    {"stages", "downsampling stages used by the embedding-dim mapping"},
    {"nu", "binarization threshold in [0,255]"},
    {"n-max", "maximum transmissions per session"},
    {"seed", "base rng seed"},
    {"select-count", "number of features kept by selection"},
    {"quality-target-db", "psnr target used during calibration"},
    {"calibration-snr-db", "snr used for the noisy calibration pass"},
    {"workers", "worker threads, 0 uses all cores"},
    {"betti-samples", "betti curve samples per diagram"},
    {"landscape-samples", "landscape quadrature samples"},
    {"heat-grid", "heat kernel quadrature grid size"},
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key=value config file");
    for (const auto& [key, help] : kOverrideFlags) {
        cmd->add_option_function<std::string>(
            std::string("--") + key,
            [&args, key = key](const std::string& v) { args.overrides.emplace_back(key, v); },
            help);
    }
}

// Applies --config first, then the flag overrides.
topoharq::ExperimentConfig resolve_config(const CommonArgs& args) {
    topoharq::ExperimentConfig cfg;
    if (!args.config_path.empty()) cfg = topoharq::load_config(args.config_path);
    for (const auto& [key, value] : args.overrides) topoharq::apply_override(cfg, key, value);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological feature HARQ simulator"};
    app.require_subcommand(1);

    CommonArgs extract_args;
    std::string extract_dir = ".";
    CLI::App* extract = app.add_subcommand("extract", "extract feature vectors for a corpus");
    add_common(extract, extract_args);
    extract->add_option("--out", extract_dir, "output directory for features.csv");

    CommonArgs calibrate_args;
    std::string calibrate_dir = ".";
    CLI::App* calibrate = app.add_subcommand("calibrate", "fit detector statistics and threshold");
    add_common(calibrate, calibrate_args);
    calibrate->add_option("--out", calibrate_dir,
                          "output directory for detector.json and selection_mask.json");

    CommonArgs sweep_args;
    std::string sweep_dir = ".";
    CLI::App* sweep = app.add_subcommand("sweep", "run transmission sessions over an snr and rate grid");
    add_common(sweep, sweep_args);
    sweep->add_option("--out", sweep_dir, "output directory for results.jsonl and summary.csv");

    CommonArgs dump_args;
    std::string dump_image;
    std::string dump_filtration = "grayscale";
    std::string dump_out;
    CLI::App* dump = app.add_subcommand("dump-pd", "print persistence intervals for one image");
    add_common(dump, dump_args);
    dump->add_option("--image", dump_image, "input image path")->required();
    dump->add_option("--filtration", dump_filtration,
                     "grayscale, height(du,dv), or radial(u,v)");
    dump->add_option("--out", dump_out, "output path, stdout when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (extract->parsed()) {
            topoharq::run_extract(resolve_config(extract_args), extract_dir);
        } else if (calibrate->parsed()) {
            topoharq::run_calibrate(resolve_config(calibrate_args), calibrate_dir);
        } else if (sweep->parsed()) {
            topoharq::run_sweep(resolve_config(sweep_args), sweep_dir);
        } else if (dump->parsed()) {
            topoharq::ExperimentConfig cfg = resolve_config(dump_args);
            if (dump_out.empty()) {
                topoharq::run_dump_pd(dump_image, dump_filtration, cfg.nu, std::cout);
            } else {
                std::ofstream out(dump_out);
                if (!out) throw std::runtime_error("cannot open " + dump_out);
                topoharq::run_dump_pd(dump_image, dump_filtration, cfg.nu, out);
            }
        }
    } catch (const topoharq::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
