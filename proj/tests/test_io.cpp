#include "doctest.h"
#include "wildcantor/io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wildcantor;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& out) {
    const std::string cmd = std::string(WILDCANTOR_CLI) + " " + args + " --out " + out.string() + " > " +
                            (out / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("wildcantor_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("json helpers") {
    CHECK(io::number(0.1 + 0.2).get<double>() == 0.3);
    CHECK(io::number(-0.0).dump() == "0.0");
    CHECK(io::number(1.0 / 0.0) == "inf");
    const auto j = io::seq_json(make_sequence(6));
    CHECK(j["schema"] == 1);
    CHECK(j["a"] == std::vector<int>{1, 2, 1, 1, 2, 1});
    CHECK(j["C"].back() == 10);
    CHECK(io::dump(j, -1).find("\"a\":[1,2,1,1,2,1]") != std::string::npos);
    CHECK(io::seq_json(make_sequence(1))["N"] == 529);
    CHECK(io::export_name("level", 1, 9, 2, "obj") == "level_g1_N9_d2.obj");
}

TEST_CASE("certificate json is deterministic apart from timing") {
    const auto c = construct(1, 9);
    auto a = io::certificate_json(certify_tau_separation(c));
    auto b = io::certificate_json(certify_tau_separation(c));
    CHECK(a["figure_mode"] == true);
    CHECK(a.contains("mode_label"));
    CHECK(a["status"] == "pass");
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    CHECK(io::dump(a) == io::dump(b));
}

TEST_CASE("curves, levels and csv") {
    const auto curves = io::curves_json(build_ladder(2, 9));
    REQUIRE(curves["loops"].size() == 2);
    for (const auto& loop : curves["loops"]) CHECK(loop.size() == 4);

    const auto ifs = build_ifs(1, 9);
    const auto level = io::level_json(ifs, 1, {}, 100);
    CHECK(level["components"].size() == 36);
    CHECK(level["components"][0]["word"] == std::vector<int>{1});
    CHECK_THROWS_AS(io::level_json(ifs, 2, {}, 100), LevelCapExceeded);

    const auto [cert, M] = certify_linking(construct(1, 9), {}, {});
    std::ostringstream csv;
    io::write_linking_csv(csv, M);
    const std::string s = csv.str();
    CHECK(s.rfind("row,col,value\r\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 37);

    std::ostringstream obj;
    io::write_level_obj(obj, ifs, 1, {}, 100, 8);
    const std::string o = obj.str();
    std::size_t objects = 0;
    for (std::size_t p = o.find("\no "); p != std::string::npos; p = o.find("\no ", p + 1)) ++objects;
    CHECK(objects + (o.rfind("o ", 0) == 0 ? 1 : 0) == 36);
}

TEST_CASE("command line contract") {
    const auto out = scratch("cli");
    CHECK(run_cli("seq --genus 6", out) == 0);
    CHECK(slurp(out / "stdout.txt").find("\"a\":[1,2,1,1,2,1]") != std::string::npos);
    CHECK(run_cli("seq --genus 1", out) == 0);
    CHECK(slurp(out / "stdout.txt").find("\"N\":529") != std::string::npos);
    CHECK(run_cli("seq --genus 0", out) == 2);
    CHECK(slurp(out / "stdout.txt").find("error") != std::string::npos);

    CHECK(run_cli("certify --genus 1 --lemmas sigma,tau-sep", out) == 0);
    CHECK(fs::exists(out / "cert_sigma_g1_N529.json"));
    CHECK(fs::exists(out / "cert_tau-sep_g1_N529.json"));
    CHECK(run_cli("certify --genus 1 --N 9 --lemmas nesting --sample-step 1e-3", out) == 1);
    const std::string table = slurp(out / "stdout.txt");
    CHECK(table.find("FIGURE MODE") != std::string::npos);
    CHECK(table.find("(1,") != std::string::npos);
    CHECK(run_cli("certify --genus 1 --lemmas nonsense", out) == 2);
    CHECK(run_cli("certify --genus 1 --N 9 --lemmas conjugation,folding", out) == 0);

    CHECK(run_cli("export --genus 2 --what curves", out) == 0);
    const auto curves = io::Json::parse(slurp(out / "curves_g2_N625_d1.json"));
    CHECK(curves["loops"].size() == 2);
    CHECK(run_cli("export --genus 1 --N 9 --what level --depth 1", out) == 0);
    CHECK(io::Json::parse(slurp(out / "level_g1_N9_d1.json"))["components"].size() == 36);
    CHECK(run_cli("export --genus 1 --what tubes", out) == 0);
    CHECK(slurp(out / "stdout.txt").find("euler_characteristic=0") != std::string::npos);
    CHECK(run_cli("export --genus 1 --N 9 --what level --depth 3", out) == 2);
    CHECK(run_cli("export --genus 1 --what nothing", out) == 2);
    CHECK(run_cli("export --genus 2 --N 25 --what deformation --frames 3", out) == 0);
    CHECK(fs::exists(out / "deformation_t002_g2_N25_d1.obj"));
    CHECK(run_cli("export --genus 1 --what deformation", out) == 2);

    // Identical runs give byte-identical files.
    const auto first = slurp(out / "level_g1_N9_d1.json");
    CHECK(run_cli("export --genus 1 --N 9 --what level --depth 1", out) == 0);
    CHECK(slurp(out / "level_g1_N9_d1.json") == first);
    fs::remove_all(out);
}
