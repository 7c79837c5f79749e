#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hazekit/cli.hpp"
#include "hazekit/image_io.hpp"
#include "testutil.hpp"

using namespace hazekit;
using hazekit::cli::run_cli;
using nlohmann::json;
using testutil::TempDir;

namespace {

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) { return json::parse(read_bytes(path)); }

struct CaptureStdout {
    CaptureStdout() : old_(std::cout.rdbuf(buffer_.rdbuf())) {}
    ~CaptureStdout() { std::cout.rdbuf(old_); }
    std::string str() const { return buffer_.str(); }

private:
    std::ostringstream buffer_;
    std::streambuf* old_;
};

// Minimal split of one CSV line; no embedded commas in these fixtures.
std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

}  // namespace

TEST_CASE("run writes the three maps and a report") {
    TempDir dir("cli_run");
    const RgbImage scene = testutil::make_scene(701, 80, 60);
    save_image(scene, dir.file("in.png"));

    const int rc = run_cli({"run", dir.file("in.png"), "--out", dir.file("out"), "--method",
                            "kmap", "--k0", "0.8", "--omega", "0.95", "--patch", "9"});
    CHECK(rc == 0);
    CHECK(load_image(dir.file("out/in.dehazed.png")).width == 80);
    CHECK(load_gray(dir.file("out/in.t.png")).height == 60);
    CHECK(load_gray(dir.file("out/in.k.png")).width == 80);

    const json report = read_json(dir.file("out/report.json"));
    REQUIRE(report["records"].size() == 1);
    const json& rec = report["records"][0];
    CHECK(rec["method"] == "kmap");
    CHECK(rec["params"]["omega"] == 0.95);
    CHECK(rec["params"]["patch"] == 9);
    CHECK(rec["params"]["k0"] == 0.8);
    CHECK(rec.contains("wall_ms"));
    CHECK(rec["outputs"]["dehazed"].get<std::string>().ends_with("in.dehazed.png"));
}

TEST_CASE("run over a directory keeps input order and continues past failures") {
    TempDir dir("cli_batch");
    std::filesystem::create_directories(dir.file("imgs"));
    for (int i = 0; i < 3; ++i)
        save_image(testutil::make_scene(702 + i, 32, 24),
                   dir.file("imgs/scene" + std::to_string(i) + ".png"));
    std::ofstream(dir.file("imgs/broken.png")) << "junk";

    const int rc = run_cli({"run", dir.file("imgs"), "--out", dir.file("out")});
    CHECK(rc == 1);  // one failed record
    const json report = read_json(dir.file("out/report.json"));
    REQUIRE(report["records"].size() == 4);
    CHECK(report["records"][0]["input"].get<std::string>().ends_with("broken.png"));
    CHECK(report["records"][0]["failed"] == true);
    for (int i = 1; i < 4; ++i) {
        CHECK(report["records"][i]["input"].get<std::string>().ends_with(
            "scene" + std::to_string(i - 1) + ".png"));
        CHECK_FALSE(report["records"][i].contains("failed"));
    }
}

TEST_CASE("run with the dcp baseline writes the same trio of maps") {
    TempDir dir("cli_dcp");
    save_image(testutil::make_scene(720, 48, 36), dir.file("in.png"));
    const int rc = run_cli({"run", dir.file("in.png"), "--out", dir.file("out"), "--method",
                            "dcp"});
    CHECK(rc == 0);
    CHECK(load_image(dir.file("out/in.dehazed.png")).width == 48);
    // the baseline's K image is its broadcast airlight intensity: constant
    const GrayMap k = load_gray(dir.file("out/in.k.png"));
    for (double v : k.data) CHECK(v == k.data[0]);
    const json report = read_json(dir.file("out/report.json"));
    CHECK(report["records"][0]["method"] == "dcp");
}

TEST_CASE("assess compares two methods on one image side by side") {
    TempDir dir("cli_two_methods");
    const RgbImage clean = testutil::make_scene(721, 64, 48);
    HazeSynthesisParams sp;
    sp.transmission = 0.5;
    sp.airlight_k = 0.9;
    save_image(synthesize_haze(clean, sp), dir.file("hazy.png"));
    REQUIRE(run_cli({"run", dir.file("hazy.png"), "--out", dir.file("km"), "--method",
                     "kmap"}) == 0);
    REQUIRE(run_cli({"run", dir.file("hazy.png"), "--out", dir.file("dc"), "--method",
                     "dcp"}) == 0);

    const int rc = run_cli({"assess", dir.file("hazy.png"), dir.file("km/hazy.dehazed.png"),
                            dir.file("hazy.png"), dir.file("dc/hazy.dehazed.png"), "--out",
                            dir.file("out")});
    CHECK(rc == 0);
    const json report = read_json(dir.file("out/report.json"));
    REQUIRE(report["pairs"].size() == 2);
    for (const auto& p : report["pairs"]) {
        CHECK(p["hazy"].get<std::string>().ends_with("hazy.png"));
        for (const char* key : {"e", "r_bar", "sigma", "alpha_dc", "beta_hl"})
            CHECK(p["metrics"].contains(key));
    }
}

TEST_CASE("run twice produces byte-identical images") {
    TempDir dir("cli_det");
    save_image(testutil::make_scene(705, 48, 48), dir.file("in.png"));
    REQUIRE(run_cli({"run", dir.file("in.png"), "--out", dir.file("a")}) == 0);
    REQUIRE(run_cli({"run", dir.file("in.png"), "--out", dir.file("b")}) == 0);
    for (const char* name : {"in.dehazed.png", "in.t.png", "in.k.png"})
        CHECK(read_bytes(dir.file(std::string("a/") + name)) ==
              read_bytes(dir.file(std::string("b/") + name)));
}

TEST_CASE("assess identity pair reports the identity scores") {
    TempDir dir("cli_assess");
    testutil::Rng rng(706);
    save_image(testutil::random_image(rng, 96, 96), dir.file("i.png"));

    const int rc = run_cli({"assess", dir.file("i.png"), dir.file("i.png"), "--out",
                            dir.file("out")});
    CHECK(rc == 0);
    const json report = read_json(dir.file("out/report.json"));
    REQUIRE(report["pairs"].size() == 1);
    const json& m = report["pairs"][0]["metrics"];
    CHECK(m["e"] == 0.0);
    CHECK(std::abs(m["r_bar"].get<double>() - 1.0) < 1e-9);
    CHECK(m["sigma"] == 0.0);
    CHECK(m["alpha_dc"] == 0.0);
    CHECK(std::abs(m["beta_hl"].get<double>()) < 1e-12);
}

TEST_CASE("assess csv and json agree value for value") {
    TempDir dir("cli_formats");
    const RgbImage clean = testutil::make_scene(707, 64, 64);
    HazeSynthesisParams sp;
    sp.transmission = 0.5;
    sp.airlight_k = 0.9;
    save_image(clean, dir.file("clean.png"));
    save_image(synthesize_haze(clean, sp), dir.file("hazy.png"));

    REQUIRE(run_cli({"assess", dir.file("hazy.png"), dir.file("clean.png"), "--out",
                     dir.file("j"), "--format", "json"}) == 0);
    REQUIRE(run_cli({"assess", dir.file("hazy.png"), dir.file("clean.png"), "--out",
                     dir.file("c"), "--format", "csv"}) == 0);

    const json jm = read_json(dir.file("j/report.json"))["pairs"][0]["metrics"];
    std::ifstream csv(dir.file("c/report.csv"));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    CHECK(header == "hazy,dehazed,e,r_bar,sigma,alpha_dc,beta_hl,failed,reason");
    const auto fields = csv_fields(row);
    REQUIRE(fields.size() >= 8);
    CHECK(fields[2] == jm["e"].dump());
    CHECK(fields[3] == jm["r_bar"].dump());
    CHECK(fields[4] == jm["sigma"].dump());
    CHECK(fields[5] == jm["alpha_dc"].dump());
    CHECK(fields[6] == jm["beta_hl"].dump());
}

TEST_CASE("assess flags dimension mismatches and keeps going") {
    TempDir dir("cli_mismatch");
    testutil::Rng rng(708);
    save_image(testutil::random_image(rng, 20, 20), dir.file("a.png"));
    save_image(testutil::random_image(rng, 24, 20), dir.file("b.png"));
    save_image(testutil::random_image(rng, 16, 16), dir.file("c.png"));

    const int rc = run_cli({"assess", dir.file("a.png"), dir.file("b.png"), dir.file("c.png"),
                            dir.file("c.png"), "--out", dir.file("out")});
    CHECK(rc == 1);
    const json report = read_json(dir.file("out/report.json"));
    REQUIRE(report["pairs"].size() == 2);
    CHECK(report["pairs"][0]["failed"] == true);
    CHECK(report["pairs"][0]["reason"].get<std::string>().find("dimension") !=
          std::string::npos);
    CHECK_FALSE(report["pairs"][1].contains("failed"));
}

TEST_CASE("synth with t=1 reproduces the input bytes") {
    TempDir dir("cli_synth_id");
    save_image(testutil::make_scene(709, 40, 30), dir.file("clean.png"));
    REQUIRE(run_cli({"synth", dir.file("clean.png"), "--t", "1.0", "--k", "0.9", "--out",
                     dir.file("out")}) == 0);
    CHECK(read_bytes(dir.file("out/clean.hazy.png")) == read_bytes(dir.file("clean.png")));
}

TEST_CASE("synth from a depth map applies exponential attenuation") {
    TempDir dir("cli_synth_depth");
    save_image(testutil::make_scene(710, 32, 32), dir.file("clean.png"));
    save_gray(GrayMap(32, 32, 0.5), dir.file("depth.png"));
    REQUIRE(run_cli({"synth", dir.file("clean.png"), "--depth", dir.file("depth.png"),
                     "--scatter", "1.2", "--out", dir.file("out")}) == 0);
    const GrayMap t = load_gray(dir.file("out/clean.t.png"));
    const double depth_quantized = 128.0 / 255.0;  // depth.png stores 0.5 as byte 128
    const double expected = std::exp(-1.2 * depth_quantized);
    for (double v : t.data) CHECK(std::abs(v - expected) <= 1.0 / 255.0);
}

TEST_CASE("synth rejects out-of-range haze parameters") {
    TempDir dir("cli_synth_bad");
    save_image(testutil::make_scene(711, 16, 16), dir.file("clean.png"));
    CHECK(run_cli({"synth", dir.file("clean.png"), "--t", "0.0", "--out", dir.file("out")}) == 2);
    CHECK(run_cli({"synth", dir.file("clean.png"), "--t", "1.5", "--out", dir.file("out")}) == 2);
    CHECK(run_cli({"synth", dir.file("clean.png"), "--k", "-0.1", "--out", dir.file("out")}) == 2);
}

TEST_CASE("validate scores pairs and reports the mean") {
    TempDir dir("cli_validate");
    std::filesystem::create_directories(dir.file("pairs"));
    const RgbImage black(48, 48, 0.0, 0.0, 0.0);
    save_image(black, dir.file("pairs/dark.clean.png"));
    HazeSynthesisParams sp;
    sp.transmission = 0.5;
    sp.airlight_k = 0.9;
    save_image(synthesize_haze(black, sp), dir.file("pairs/dark.hazy.png"));
    // an unpaired file must only produce a warning
    save_image(black, dir.file("pairs/lonely.hazy.png"));

    const int rc = run_cli({"validate", dir.file("pairs"), "--out", dir.file("out"), "--format",
                            "csv"});
    CHECK(rc == 0);
    std::ifstream csv(dir.file("out/report.csv"));
    std::string header, row;
    std::getline(csv, header);
    CHECK(header == "pair_name,score");
    REQUIRE(std::getline(csv, row));
    const auto fields = csv_fields(row);
    REQUIRE(fields.size() == 2);
    CHECK(fields[0] == "dark");
    CHECK(std::stod(fields[1]) == 0.0);

    REQUIRE(run_cli({"validate", dir.file("pairs"), "--out", dir.file("outj"), "--format",
                     "json"}) == 0);
    const json report = read_json(dir.file("outj/report.json"));
    CHECK(report["mean"] == 0.0);
    REQUIRE(report["pairs"].size() == 1);
    CHECK(report["pairs"][0]["pair_name"] == "dark");
    CHECK(report["pairs"][0]["score"] == 0.0);
}

TEST_CASE("invalid invocations exit with code 2") {
    TempDir dir("cli_invalid");
    save_image(testutil::make_scene(712, 16, 16), dir.file("in.png"));
    CHECK(run_cli({"run", dir.file("in.png"), "--omega", "1.5", "--out", dir.file("out")}) == 2);
    CHECK(run_cli({"run", dir.file("in.png"), "--patch", "8", "--out", dir.file("out")}) == 2);
    CHECK(run_cli({"nonsense"}) == 2);
    CHECK(run_cli({"run", "--no-such-flag"}) == 2);
    CHECK(run_cli({"run"}) == 2);  // no inputs
    CHECK(run_cli({"assess", dir.file("in.png")}) == 2);  // odd pair count
}

TEST_CASE("config file merges under explicit flags") {
    TempDir dir("cli_config");
    std::ofstream(dir.file("cfg.json")) << R"({"omega": 0.8, "k0": 0.85, "patch": 7})";

    {
        CaptureStdout cap;
        REQUIRE(run_cli({"run", "--config", dir.file("cfg.json"), "--dump-config"}) == 0);
        const json dumped = json::parse(cap.str());
        CHECK(dumped["omega"] == 0.8);
        CHECK(dumped["k0"] == 0.85);
        CHECK(dumped["patch"] == 7);
        CHECK(dumped["t-floor"] == 0.1);  // untouched default
    }
    {
        CaptureStdout cap;
        REQUIRE(run_cli({"run", "--config", dir.file("cfg.json"), "--omega", "0.9",
                         "--dump-config"}) == 0);
        const json dumped = json::parse(cap.str());
        CHECK(dumped["omega"] == 0.9);  // flag beats file
        CHECK(dumped["k0"] == 0.85);    // file beats default
    }

    std::ofstream(dir.file("bad.json")) << R"({"omege": 0.8})";
    CHECK(run_cli({"run", "--config", dir.file("bad.json"), "--dump-config"}) == 2);
}
