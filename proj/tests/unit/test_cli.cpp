#include "oracles.hpp"
#include "wavematch/errors.hpp"
#include "wavematch_cli/commands.hpp"
#include "wavematch_cli/config.hpp"
#include "wavematch_cli/recording.hpp"
#include "wavematch_cli/synth.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wavematch;
using namespace wavematch::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("wavematch_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_cli(std::move(args), out, err);
    if (out_text != nullptr) {
        *out_text = out.str();
    }
    if (err_text != nullptr) {
        *err_text = err.str();
    }
    return status;
}

} // namespace

TEST_CASE("two channel csv") {
    std::istringstream in("# subject=dog7\n# species=canine\nch1,ch2\n1,2\n3,4\n5,6\n7,8\n");
    const auto rec = parse_recording_csv(in);
    CHECK(rec.subject_id == "dog7");
    CHECK(rec.species == Species::Canine);
    REQUIRE(rec.channels.size() == 2);
    CHECK(rec.channels[1].name == "ch2");
    CHECK(rec.channels[0].signal.samples == std::vector<double>{1, 3, 5, 7});
    CHECK(rec.length() == 4);
}

TEST_CASE("malformed csv is reported with its position") {
    const auto error_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_recording_csv(in, "r.csv");
        } catch (const ParseError& e) {
            return std::pair{e.line(), std::string(e.what())};
        }
        return std::pair{std::size_t{0}, std::string()};
    };
    auto [line, msg] = error_of("a,b\n1,2\n3,nan\n");
    CHECK(line == 3);
    CHECK(msg.find("r.csv:3:2") != std::string::npos);
    CHECK(error_of("a,b\n1,2\n3\n").first == 3);
    CHECK(error_of("a,b\n1,x\n").first == 2);
    CHECK(error_of("").second.find("r.csv") != std::string::npos);
    CHECK(error_of("a,b\n").second.find("no samples") != std::string::npos);
}

TEST_CASE("centre trim") {
    const auto w = center_trim_window(6000);
    CHECK(w.begin == 952);
    CHECK(w.end == 5048);
    CHECK(w.size() == 4096);
    CHECK(center_trim_window(4096).begin == 0);
    Signal x{std::vector<double>(6000)};
    for (std::size_t i = 0; i < 6000; ++i) {
        x.samples[i] = static_cast<double>(i);
    }
    const auto t = center_trim(x);
    CHECK(t.size() == 4096);
    CHECK(t.samples.front() == 952.0);
}

TEST_CASE("segments and channel selection") {
    std::istringstream in("x,y,z\n1,2,3\n4,5,6\n7,8,9\n");
    const auto rec = parse_recording_csv(in);
    const auto cut = cut_segment(rec, 1, 3);
    CHECK(cut.channels[2].signal.samples == std::vector<double>{6, 9});
    CHECK(cut.segment_begin == 1);
    CHECK_THROWS_AS(cut_segment(rec, 2, 5), ShapeError);
    const std::vector<std::string> sel{"z", "0"};
    const auto picked = select_channels(rec, sel);
    REQUIRE(picked.channels.size() == 2);
    CHECK(picked.channels[0].name == "z");
    CHECK(picked.channels[1].name == "x");
    const std::vector<std::string> bad{"w"};
    CHECK_THROWS(select_channels(rec, bad));
}

TEST_CASE("synthetic signals") {
    SyntheticSpec spec;
    CHECK(synthesize(spec).samples == synthesize(spec).samples);
    CHECK(synthesize(spec).size() >= 4096);
    spec.harmonics.clear();
    spec.noise_level = 0.0;
    const auto x = synthesize(spec);
    CHECK(std::abs(oracles::periodogram_peak_cpm(x.samples, 0.1, 1 << 15) - 5.0) < 0.2);
    CHECK(std::abs(dominant_cpm_estimate(x) - 5.0) < 0.05);
    spec.duration_s = 10.0;
    CHECK_THROWS_AS(validate(spec), InvalidParameter);
}

TEST_CASE("config file") {
    std::istringstream in("# defaults\ngrid = 17\nrefine=false\n\nspecies=human\n");
    const auto cfg = parse_config(in);
    CHECK(cfg.at("grid") == "17");
    const auto extra = config_arguments(cfg, {"match", "--grid", "9"});
    CHECK(std::find(extra.begin(), extra.end(), "17") == extra.end());
    CHECK(std::find(extra.begin(), extra.end(), "--refine=false") != extra.end());
    CHECK(std::find(extra.begin(), extra.end(), "human") != extra.end());
    const auto none = config_arguments(cfg, {"--no-refine", "--species=canine", "--grid=5"});
    CHECK(none.empty());
    std::istringstream bad("grid 17\n");
    CHECK_THROWS_AS(parse_config(bad), ParseError);
}

TEST_CASE("scales command") {
    std::string out;
    CHECK(run({"scales", "--wavelet", "haar", "--species", "canine"}, &out) == 0);
    CHECK(out.find("haar: J0=7") != std::string::npos);
    CHECK(run({"scales", "--species", "human"}, &out) == 0);
    CHECK(out.find("haar: J0=8") != std::string::npos);
    CHECK(out.find("db2: J0=7") != std::string::npos);
    CHECK(run({"scales", "--fc-cpm", "5"}, &out) == 0);
    CHECK(out.find("db2: J0=6") != std::string::npos);
}

TEST_CASE("gen, compress and surface commands") {
    const auto dir = scratch("cmds");
    std::string out;
    std::string err;
    REQUIRE(run({"gen", "--count", "2", "--num-channels", "2", "--duration", "205", "--out-dir", dir.string()},
                &out) == 0);
    const auto file = (dir / "syn01.csv").string();
    REQUIRE(std::filesystem::exists(file));
    const auto rec = load_recording(file);
    CHECK(rec.channels.size() == 2);
    CHECK(rec.length() == 2050);

    REQUIRE(run({"compress", file, "--cr", "3,10", "--channels", "ch2", "--dump-coeffs",
                 (dir / "c.csv").string()}, &out, &err) == 0);
    CHECK(err.find("trimmed to samples [1, 2049)") != std::string::npos);
    CHECK(out.find("cr_requested,cr_actual,M,prd_percent") != std::string::npos);
    CHECK(out.find("\n3,3.002932551319648,682,") != std::string::npos);
    CHECK(out.find("\n10,10.03921568627451,204,") != std::string::npos);
    CHECK(slurp(dir / "c.csv").rfind("level,index,value\n", 0) == 0);

    REQUIRE(run({"surface", file, "--cr", "5", "--grid", "5", "--no-refine", "--segment", "0:1024",
                 "--out-dir", dir.string()}, &out) == 0);
    CHECK(out.find("minimum a=") != std::string::npos);
    const auto csv = slurp(dir / "surface_cr5.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
}

TEST_CASE("match command writes the report") {
    const auto dir = scratch("match");
    REQUIRE(run({"match", "--synthetic", "2", "--cr", "3,5", "--grid", "5", "--no-refine", "--out-dir",
                 dir.string()}) == 0);
    for (const char* name : {"surface_cr3.csv", "surface_cr3.json", "surface_cr5.csv", "match.json",
                             "summary.txt"}) {
        CHECK(std::filesystem::exists(dir / name));
    }
    const auto report = slurp(dir / "match.json");
    CHECK(report.find("\"interpretation\": \"pi_normalized\"") != std::string::npos);
    CHECK(report.find("\"correlation_vs\"") != std::string::npos);
}

TEST_CASE("config file values yield to flags") {
    const auto dir = scratch("config");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "species=human\nwavelet=haar\nunknown_key=1\n";
    }
    std::string out;
    std::string err;
    CHECK(run({"--config", (dir / "run.cfg").string(), "scales"}, &out, &err) == 0);
    CHECK(out.find("haar: J0=8") != std::string::npos);
    CHECK(err.find("unknown_key") != std::string::npos);
    CHECK(run({"--config", (dir / "run.cfg").string(), "scales", "--species", "canine"}, &out) == 0);
    CHECK(out.find("haar: J0=7") != std::string::npos);
}

TEST_CASE("failures exit nonzero") {
    std::string err;
    CHECK(run({"compress", "/nonexistent/file.csv"}, nullptr, &err) != 0);
    CHECK(run({"scales", "--species", "feline"}, nullptr, &err) != 0);
    CHECK(run({"bogus"}, nullptr, &err) != 0);
    CHECK(run({"surface", "--synthetic", "1", "--cr", "3,5"}, nullptr, &err) != 0);
}

TEST_CASE("worker count from the environment") {
    ::setenv(kWorkersEnv, "3", 1);
    CHECK(workers_from_env() == 3);
    ::setenv(kWorkersEnv, "zero", 1);
    CHECK(workers_from_env() >= 1);
    ::unsetenv(kWorkersEnv);
}
