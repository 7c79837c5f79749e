#include "hazekit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "hazekit/image_io.hpp"
#include "hazekit/kernels.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace hazekit::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

// Raw flag values; defaults are the built-in parameter set and may be
// overridden first by a JSON config file, then by explicit flags.
struct RawArgs {
    std::string out = ".";
    std::string method = "kmap";
    std::string format = "json";
    double omega = 0.95;
    int patch = 9;  // window side; 1 selects the per-pixel channel minimum
    double k0 = 0.8;
    double t_floor = 0.1;
    int avg_radius = 15;
    int gf_radius = 30;
    double gf_eps = 1e-3;
    int directions = 1000;
    int min_cluster = 20;
    double edge_threshold = 0.05;
    double t = 0.5;
    double k = 0.9;
    std::string depth;
    double scatter = 1.0;
    std::string config_path;
    bool dump_config = false;
    std::vector<std::string> inputs;
};

using OptionMap = std::map<std::string, CLI::Option*>;

OptionMap add_common_options(CLI::App* sub, RawArgs& raw) {
    OptionMap opts;
    opts["out"] = sub->add_option("--out", raw.out, "Output directory");
    opts["method"] = sub->add_option("--method", raw.method, "Dehazing method")
                         ->check(CLI::IsMember({"kmap", "dcp"}));
    opts["omega"] = sub->add_option("--omega", raw.omega, "Haze-retention factor");
    opts["patch"] = sub->add_option("--patch", raw.patch, "Patch window side (odd; 1 = per-pixel)");
    opts["k0"] = sub->add_option("--k0", raw.k0, "Lower bound on the K map");
    opts["t-floor"] = sub->add_option("--t-floor", raw.t_floor, "Recovery lower bound on t");
    opts["avg-radius"] = sub->add_option("--avg-radius", raw.avg_radius,
                                         "Haze-intensity averaging window half-width");
    opts["gf-radius"] = sub->add_option("--gf-radius", raw.gf_radius, "Guided filter radius");
    opts["gf-eps"] = sub->add_option("--gf-eps", raw.gf_eps, "Guided filter regularizer");
    opts["directions"] =
        sub->add_option("--directions", raw.directions, "Haze-line sphere directions");
    opts["min-cluster"] =
        sub->add_option("--min-cluster", raw.min_cluster, "Smallest scored haze-line cluster");
    opts["edge-threshold"] =
        sub->add_option("--edge-threshold", raw.edge_threshold, "Visible-edge contrast threshold");
    opts["format"] = sub->add_option("--format", raw.format, "Report format")
                         ->check(CLI::IsMember({"json", "csv"}));
    opts["config"] = sub->add_option("--config", raw.config_path, "JSON config file");
    opts["dump-config"] =
        sub->add_flag("--dump-config", raw.dump_config, "Print the effective parameter set");
    sub->add_option("inputs", raw.inputs, "Input files or directory");
    return opts;
}

json effective_config_json(const RawArgs& raw) {
    return json{{"out", raw.out},
                {"method", raw.method},
                {"format", raw.format},
                {"omega", raw.omega},
                {"patch", raw.patch},
                {"k0", raw.k0},
                {"t-floor", raw.t_floor},
                {"avg-radius", raw.avg_radius},
                {"gf-radius", raw.gf_radius},
                {"gf-eps", raw.gf_eps},
                {"directions", raw.directions},
                {"min-cluster", raw.min_cluster},
                {"edge-threshold", raw.edge_threshold},
                {"t", raw.t},
                {"k", raw.k},
                {"depth", raw.depth},
                {"scatter", raw.scatter}};
}

// Applies config-file values for every flag the command line left untouched.
void merge_config_file(const json& file, RawArgs& raw, const OptionMap& opts) {
    auto untouched = [&](const char* name) {
        auto it = opts.find(name);
        return it == opts.end() || it->second->count() == 0;
    };
    for (const auto& [key, value] : file.items()) {
        if (key == "out" && untouched("out")) raw.out = value.get<std::string>();
        else if (key == "method" && untouched("method")) raw.method = value.get<std::string>();
        else if (key == "format" && untouched("format")) raw.format = value.get<std::string>();
        else if (key == "omega" && untouched("omega")) raw.omega = value.get<double>();
        else if (key == "patch" && untouched("patch")) raw.patch = value.get<int>();
        else if (key == "k0" && untouched("k0")) raw.k0 = value.get<double>();
        else if (key == "t-floor" && untouched("t-floor")) raw.t_floor = value.get<double>();
        else if (key == "avg-radius" && untouched("avg-radius")) raw.avg_radius = value.get<int>();
        else if (key == "gf-radius" && untouched("gf-radius")) raw.gf_radius = value.get<int>();
        else if (key == "gf-eps" && untouched("gf-eps")) raw.gf_eps = value.get<double>();
        else if (key == "directions" && untouched("directions")) raw.directions = value.get<int>();
        else if (key == "min-cluster" && untouched("min-cluster"))
            raw.min_cluster = value.get<int>();
        else if (key == "edge-threshold" && untouched("edge-threshold"))
            raw.edge_threshold = value.get<double>();
        else if (key == "t" && untouched("t")) raw.t = value.get<double>();
        else if (key == "k" && untouched("k")) raw.k = value.get<double>();
        else if (key == "depth" && untouched("depth")) raw.depth = value.get<std::string>();
        else if (key == "scatter" && untouched("scatter")) raw.scatter = value.get<double>();
        else if (key == "out" || key == "method" || key == "format" || key == "omega" ||
                 key == "patch" || key == "k0" || key == "t-floor" || key == "avg-radius" ||
                 key == "gf-radius" || key == "gf-eps" || key == "directions" ||
                 key == "min-cluster" || key == "edge-threshold" || key == "t" || key == "k" ||
                 key == "depth" || key == "scatter") {
            // flag given on the command line wins; nothing to do
        } else {
            throw std::invalid_argument("config file: unknown key '" + key + "'");
        }
    }
}

JobConfig make_job_config(const RawArgs& raw, const std::string& subcommand) {
    if (raw.patch < 1 || raw.patch % 2 == 0)
        throw std::invalid_argument("--patch must be an odd window side >= 1");
    JobConfig cfg;
    cfg.subcommand = subcommand;
    cfg.inputs = raw.inputs;
    cfg.out_dir = raw.out;
    cfg.method = raw.method;
    cfg.format = raw.format;
    if (raw.patch == 1) {
        cfg.dehaze.patch_minimum = false;
    } else {
        const int radius = (raw.patch - 1) / 2;
        cfg.dehaze.patch_radius = radius;
        cfg.dcp.patch_radius = radius;
        cfg.metrics.dc_patch_radius = radius;
    }
    cfg.dehaze.omega = raw.omega;
    cfg.dcp.omega = raw.omega;
    cfg.dehaze.k_floor = raw.k0;
    cfg.dehaze.t_floor = raw.t_floor;
    cfg.dcp.t_floor = raw.t_floor;
    cfg.dehaze.avg_radius = raw.avg_radius;
    cfg.dehaze.guided = FilterParams{raw.gf_radius, raw.gf_eps};
    cfg.dcp.guided = FilterParams{raw.gf_radius, raw.gf_eps};
    cfg.metrics.n_directions = raw.directions;
    cfg.metrics.min_cluster = raw.min_cluster;
    cfg.metrics.edge_threshold = raw.edge_threshold;
    cfg.synth_t = raw.t;
    cfg.synth_k = raw.k;
    cfg.depth_path = raw.depth;
    cfg.scatter = raw.scatter;
    return cfg;
}

json params_json(const JobConfig& cfg) {
    return json{{"method", cfg.method},
                {"omega", cfg.dehaze.omega},
                {"patch", cfg.dehaze.patch_minimum ? 2 * cfg.dehaze.patch_radius + 1 : 1},
                {"k0", cfg.dehaze.k_floor},
                {"t-floor", cfg.dehaze.t_floor},
                {"avg-radius", cfg.dehaze.avg_radius},
                {"gf-radius", cfg.dehaze.guided.radius},
                {"gf-eps", cfg.dehaze.guided.epsilon},
                {"top-fraction", cfg.dcp.top_fraction},
                {"directions", cfg.metrics.n_directions},
                {"min-cluster", cfg.metrics.min_cluster},
                {"edge-threshold", cfg.metrics.edge_threshold}};
}

bool has_image_ext(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// A path argument may be a file or a directory of images; directories are
// expanded in lexicographic order so batch reports are order-stable.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const std::string& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(in))
                if (entry.is_regular_file() && has_image_ext(entry.path()))
                    found.push_back(entry.path().string());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// One serializer for both report formats so CSV and JSON carry byte-identical
// numeric text.
std::string cell(double v) { return json(v).dump(); }
std::string cell(const std::optional<double>& v) { return v ? cell(*v) : "null"; }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << content;
    if (!out) throw IoError(path + ": write failed");
}

std::string report_path(const JobConfig& cfg) {
    return (fs::path(cfg.out_dir) / ("report." + cfg.format)).string();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int cmd_run(const JobConfig& cfg) {
    try {
        cfg.dehaze.validate();
        cfg.dcp.validate();
        fs::create_directories(cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "hazekit run: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::vector<std::string> files = expand_inputs(cfg.inputs);
    if (files.empty()) {
        std::cerr << "hazekit run: no input images given\n";
        return kExitUsage;
    }

    std::vector<RunRecord> records;
    for (const std::string& file : files) {
        RunRecord rec;
        rec.input = file;
        rec.method = cfg.method;
        const auto start = std::chrono::steady_clock::now();
        try {
            const RgbImage img = load_image(file);
            const DehazeResult res =
                cfg.method == "dcp" ? dcp_dehaze(img, cfg.dcp) : dehaze_pipeline(img, cfg.dehaze);
            const std::string stem = stem_of(file);
            rec.dehazed_path = (fs::path(cfg.out_dir) / (stem + ".dehazed.png")).string();
            rec.transmission_path = (fs::path(cfg.out_dir) / (stem + ".t.png")).string();
            rec.k_map_path = (fs::path(cfg.out_dir) / (stem + ".k.png")).string();
            save_image(res.radiance, rec.dehazed_path);
            save_gray(res.transmission, rec.transmission_path);
            save_gray(res.k_map, rec.k_map_path);
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.reason = e.what();
        }
        rec.wall_ms = elapsed_ms(start);
        std::cout << (rec.failed ? "failed  " : "done    ") << file
                  << (rec.failed ? "  (" + rec.reason + ")" : "") << "\n";
        records.push_back(std::move(rec));
    }

    const json params = params_json(cfg);
    try {
        if (cfg.format == "json") {
            json out;
            out["records"] = json::array();
            for (const RunRecord& r : records) {
                json jr{{"input", r.input}, {"method", r.method}, {"params", params},
                        {"wall_ms", r.wall_ms}};
                if (r.failed) {
                    jr["failed"] = true;
                    jr["reason"] = r.reason;
                } else {
                    jr["outputs"] = json{{"dehazed", r.dehazed_path},
                                         {"transmission", r.transmission_path},
                                         {"k_map", r.k_map_path}};
                }
                out["records"].push_back(jr);
            }
            write_text_file(report_path(cfg), out.dump(2) + "\n");
        } else {
            std::string out =
                "input,method,omega,patch,k0,t_floor,avg_radius,gf_radius,gf_eps,wall_ms,"
                "dehazed,transmission,k_map,failed,reason\n";
            for (const RunRecord& r : records) {
                out += csv_escape(r.input) + ',' + r.method + ',' + cell(cfg.dehaze.omega) + ',' +
                       params["patch"].dump() + ',' + cell(cfg.dehaze.k_floor) + ',' +
                       cell(cfg.dehaze.t_floor) + ',' + std::to_string(cfg.dehaze.avg_radius) +
                       ',' + std::to_string(cfg.dehaze.guided.radius) + ',' +
                       cell(cfg.dehaze.guided.epsilon) + ',' + cell(r.wall_ms) + ',' +
                       csv_escape(r.dehazed_path) + ',' + csv_escape(r.transmission_path) + ',' +
                       csv_escape(r.k_map_path) + ',' + (r.failed ? "true" : "false") + ',' +
                       csv_escape(r.reason) + '\n';
            }
            write_text_file(report_path(cfg), out);
        }
    } catch (const std::exception& e) {
        std::cerr << "hazekit run: " << e.what() << "\n";
        return kExitUsage;
    }
    const bool any_failed =
        std::any_of(records.begin(), records.end(), [](const RunRecord& r) { return r.failed; });
    return any_failed ? kExitPartial : kExitOk;
}

int cmd_assess(const JobConfig& cfg) {
    try {
        cfg.metrics.validate();
        fs::create_directories(cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "hazekit assess: " << e.what() << "\n";
        return kExitUsage;
    }
    if (cfg.inputs.empty() || cfg.inputs.size() % 2 != 0) {
        std::cerr << "hazekit assess: expects hazy/dehazed image pairs\n";
        return kExitUsage;
    }

    struct PairResult {
        std::string hazy, dehazed;
        MetricReport metrics;
        bool failed = false;
        std::string reason;
    };
    std::vector<PairResult> results;
    for (size_t i = 0; i + 1 < cfg.inputs.size(); i += 2) {
        PairResult pr;
        pr.hazy = cfg.inputs[i];
        pr.dehazed = cfg.inputs[i + 1];
        try {
            const RgbImage hazy = load_image(pr.hazy);
            const RgbImage dehazed = load_image(pr.dehazed);
            pr.metrics = assess_pair(hazy, dehazed, cfg.metrics);
        } catch (const std::exception& e) {
            pr.failed = true;
            pr.reason = e.what();
        }
        std::cout << (pr.failed ? "failed  " : "scored  ") << pr.hazy << " vs " << pr.dehazed
                  << (pr.failed ? "  (" + pr.reason + ")" : "") << "\n";
        results.push_back(std::move(pr));
    }

    try {
        if (cfg.format == "json") {
            json out;
            out["pairs"] = json::array();
            for (const PairResult& pr : results) {
                json jp{{"hazy", pr.hazy}, {"dehazed", pr.dehazed}};
                if (pr.failed) {
                    jp["failed"] = true;
                    jp["reason"] = pr.reason;
                } else {
                    const MetricReport& m = pr.metrics;
                    json jm;
                    jm["e"] = m.e ? json(*m.e) : json(nullptr);
                    jm["r_bar"] = m.r_bar ? json(*m.r_bar) : json(nullptr);
                    jm["sigma"] = m.sigma;
                    jm["alpha_dc"] = m.alpha_dc;
                    jm["beta_hl"] = m.beta_hl ? json(*m.beta_hl) : json(nullptr);
                    jp["metrics"] = jm;
                }
                out["pairs"].push_back(jp);
            }
            write_text_file(report_path(cfg), out.dump(2) + "\n");
        } else {
            std::string out = "hazy,dehazed,e,r_bar,sigma,alpha_dc,beta_hl,failed,reason\n";
            for (const PairResult& pr : results) {
                const MetricReport& m = pr.metrics;
                out += csv_escape(pr.hazy) + ',' + csv_escape(pr.dehazed) + ',';
                if (pr.failed)
                    out += ",,,,," + std::string("true,") + csv_escape(pr.reason) + '\n';
                else
                    out += cell(m.e) + ',' + cell(m.r_bar) + ',' + cell(m.sigma) + ',' +
                           cell(m.alpha_dc) + ',' + cell(m.beta_hl) + ",false,\n";
            }
            write_text_file(report_path(cfg), out);
        }
    } catch (const std::exception& e) {
        std::cerr << "hazekit assess: " << e.what() << "\n";
        return kExitUsage;
    }
    const bool any_failed =
        std::any_of(results.begin(), results.end(), [](const auto& r) { return r.failed; });
    return any_failed ? kExitPartial : kExitOk;
}

int cmd_synth(const JobConfig& cfg) {
    if (cfg.inputs.size() != 1) {
        std::cerr << "hazekit synth: expects exactly one clean input image\n";
        return kExitUsage;
    }
    try {
        fs::create_directories(cfg.out_dir);
        const RgbImage clean = load_image(cfg.inputs[0]);

        HazeSynthesisParams params;
        if (!cfg.depth_path.empty()) {
            if (!(cfg.scatter >= 0.0))
                throw std::invalid_argument("--scatter must be >= 0");
            GrayMap depth = load_gray(cfg.depth_path);
            require_same_size(clean, depth, "synth depth map");
            GrayMap t(depth.width, depth.height);
            for (size_t i = 0; i < depth.data.size(); ++i)
                t.data[i] = std::exp(-cfg.scatter * depth.data[i]);
            params.transmission = std::move(t);
        } else {
            params.transmission = cfg.synth_t;
        }
        params.airlight_k = cfg.synth_k;

        const RgbImage hazy = synthesize_haze(clean, params);
        const std::string stem = stem_of(cfg.inputs[0]);
        const std::string hazy_path = (fs::path(cfg.out_dir) / (stem + ".hazy.png")).string();
        const std::string t_path = (fs::path(cfg.out_dir) / (stem + ".t.png")).string();
        save_image(hazy, hazy_path);
        save_gray(std::holds_alternative<GrayMap>(params.transmission)
                      ? std::get<GrayMap>(params.transmission)
                      : GrayMap(clean.width, clean.height, cfg.synth_t),
                  t_path);
        std::cout << "wrote " << hazy_path << " and " << t_path << "\n";
    } catch (const std::exception& e) {
        std::cerr << "hazekit synth: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_validate(const JobConfig& cfg) {
    try {
        cfg.dcp.validate();
        fs::create_directories(cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "hazekit validate: " << e.what() << "\n";
        return kExitUsage;
    }
    if (cfg.inputs.size() != 1 || !fs::is_directory(cfg.inputs[0])) {
        std::cerr << "hazekit validate: expects one directory of NAME.hazy.png / "
                     "NAME.clean.png pairs\n";
        return kExitUsage;
    }

    // Pair discovery by the .hazy. / .clean. infix convention.
    std::map<std::string, std::string> hazy_files, clean_files;
    for (const auto& entry : fs::directory_iterator(cfg.inputs[0])) {
        if (!entry.is_regular_file() || !has_image_ext(entry.path())) continue;
        const std::string stem = entry.path().stem().string();  // NAME.hazy or NAME.clean
        if (stem.size() > 5 && stem.ends_with(".hazy"))
            hazy_files[stem.substr(0, stem.size() - 5)] = entry.path().string();
        else if (stem.size() > 6 && stem.ends_with(".clean"))
            clean_files[stem.substr(0, stem.size() - 6)] = entry.path().string();
    }
    for (const auto& [name, path] : hazy_files)
        if (!clean_files.count(name))
            std::cerr << "hazekit validate: warning: " << path << " has no clean pair, skipped\n";
    for (const auto& [name, path] : clean_files)
        if (!hazy_files.count(name))
            std::cerr << "hazekit validate: warning: " << path << " has no hazy pair, skipped\n";

    struct PairScore {
        std::string name;
        double score = 0.0;
    };
    std::vector<PairScore> scores;
    bool any_failed = false;
    for (const auto& [name, hazy_path] : hazy_files) {
        const auto clean_it = clean_files.find(name);
        if (clean_it == clean_files.end()) continue;
        try {
            const RgbImage hazy = load_image(hazy_path);
            const RgbImage clean = load_image(clean_it->second);
            require_same_size(hazy, clean, "validate pair");
            const GrayMap dark = dark_channel(hazy, cfg.dcp.patch_radius);
            const Airlight a = estimate_airlight_dcp(hazy, dark, cfg.dcp.top_fraction);
            const GrayMap t = dcp_transmission(hazy, a, cfg.dcp);
            scores.push_back({name, neglected_term_score(clean, t)});
            std::cout << name << " " << cell(scores.back().score) << "\n";
        } catch (const std::exception& e) {
            std::cerr << "hazekit validate: " << name << " failed: " << e.what() << "\n";
            any_failed = true;
        }
    }

    double mean = 0.0;
    for (const PairScore& s : scores) mean += s.score;
    if (!scores.empty()) mean /= double(scores.size());
    std::cout << "mean " << cell(mean) << "\n";

    try {
        if (cfg.format == "json") {
            json out;
            out["pairs"] = json::array();
            for (const PairScore& s : scores)
                out["pairs"].push_back(json{{"pair_name", s.name}, {"score", s.score}});
            out["mean"] = mean;
            write_text_file(report_path(cfg), out.dump(2) + "\n");
        } else {
            std::string out = "pair_name,score\n";
            for (const PairScore& s : scores)
                out += csv_escape(s.name) + ',' + cell(s.score) + '\n';
            write_text_file(report_path(cfg), out);
        }
    } catch (const std::exception& e) {
        std::cerr << "hazekit validate: " << e.what() << "\n";
        return kExitUsage;
    }
    return any_failed ? kExitPartial : kExitOk;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("hazekit");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(int(argv.size()), argv.data());
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Single-image dehazing, haze synthesis and no-reference assessment"};
    app.require_subcommand(1);
    RawArgs raw;

    CLI::App* run = app.add_subcommand("run", "Dehaze images and write result maps");
    CLI::App* assess = app.add_subcommand("assess", "Score hazy/dehazed pairs");
    CLI::App* synth = app.add_subcommand("synth", "Synthesize haze over a clean image");
    CLI::App* validate =
        app.add_subcommand("validate", "Neglected-term scores over a pair directory");

    std::map<CLI::App*, OptionMap> option_maps;
    for (CLI::App* sub : {run, assess, synth, validate}) option_maps[sub] = add_common_options(sub, raw);
    option_maps[synth]["t"] = synth->add_option("--t", raw.t, "Constant transmission");
    option_maps[synth]["k"] = synth->add_option("--k", raw.k, "Airlight coefficient");
    option_maps[synth]["depth"] =
        synth->add_option("--depth", raw.depth, "Depth map (overrides --t)");
    option_maps[synth]["scatter"] =
        synth->add_option("--scatter", raw.scatter, "Scattering coefficient for --depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!raw.config_path.empty()) {
            std::ifstream in(raw.config_path);
            if (!in) throw std::invalid_argument("cannot read config file " + raw.config_path);
            json file = json::parse(in, nullptr, true, true);
            merge_config_file(file, raw, option_maps[sub]);
        }
        if (raw.dump_config) {
            std::cout << effective_config_json(raw).dump(2) << "\n";
            return kExitOk;
        }
        const JobConfig cfg = make_job_config(raw, sub->get_name());
        if (sub == run) return cmd_run(cfg);
        if (sub == assess) return cmd_assess(cfg);
        if (sub == synth) return cmd_synth(cfg);
        return cmd_validate(cfg);
    } catch (const std::exception& e) {
        std::cerr << "hazekit: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace hazekit::cli
