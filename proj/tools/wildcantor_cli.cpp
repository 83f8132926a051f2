#include "wildcantor/deformation.hpp"
#include "wildcantor/io.hpp"
#include "wildcantor/maps.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace wildcantor;

namespace {

struct RunConfig {
    int genus = 0;
    std::int64_t N = 0;
    int depth = 1;
    std::string prefix;
    std::string out = ".";
    double sample_step = 1e-4;
    std::int64_t pair_budget = 100000;
    std::int64_t cap = 5000;
    int frames = 11;
    int jobs = 1;
    std::vector<std::string> lemmas;
    std::string what;
};

const std::vector<std::string> kLemmas{"sigma", "tau-sep", "tau-prox", "linking", "nesting", "genus-structure", "folding", "conjugation"};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t resolved_N(const RunConfig& cfg) { return cfg.N ? cfg.N : min_scaffold_density(cfg.genus); }

std::ofstream open_output(const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

void write_file(const fs::path& path, const std::string& content) { open_output(path) << content; }

Word parse_prefix(const std::string& s) {
    Word w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) w.push_back(std::stoi(tok));
    return w;
}

void figure_banner(std::ostream& os, int g, std::int64_t N) {
    if (!is_admissible_density(N, g))
        os << "FIGURE MODE: N=" << N << " is below the scaffold density N_" << g << "=" << min_scaffold_density(g)
           << "; bounds are not expected to hold.\n";
}

int cmd_seq(const RunConfig& cfg) {
    const auto s = make_sequence(cfg.genus, cfg.N);
    const std::string text = io::dump(io::seq_json(s), -1);
    std::cout << text;
    if (cfg.out != ".") write_file(fs::path(cfg.out) / ("seq_g" + std::to_string(cfg.genus) + ".json"), text);
    return 0;
}

int cmd_certify(const RunConfig& cfg) {
    std::vector<std::string> lemmas = cfg.lemmas.empty() ? kLemmas : cfg.lemmas;
    for (const auto& l : lemmas)
        if (std::find(kLemmas.begin(), kLemmas.end(), l) == kLemmas.end()) throw UsageError("unknown lemma '" + l + "'");
    const std::int64_t N = resolved_N(cfg);
    VerifyOptions opt;
    opt.jobs = cfg.jobs;
    opt.sample_step = cfg.sample_step;
    opt.pair_budget = cfg.pair_budget;

    std::optional<Construction> c;
    auto construction = [&]() -> const Construction& {
        if (!c) c = construct(cfg.genus, N);
        return *c;
    };
    figure_banner(std::cout, cfg.genus, N);
    std::vector<Certificate> certs;
    for (const auto& l : lemmas) {
        Certificate cert;
        if (l == "sigma") {
            cert = certify_sigma_dichotomy(construction(), opt);
        } else if (l == "tau-sep") {
            cert = certify_tau_separation(construction(), opt);
        } else if (l == "tau-prox") {
            cert = certify_tau_proximity(construction(), opt);
        } else if (l == "linking") {
            auto [lc, M] = certify_linking(construction(), LinkingPlan{}, opt);
            cert = lc;
            std::ostringstream csv;
            io::write_linking_csv(csv, M);
            write_file(fs::path(cfg.out) / io::export_name("linking", cfg.genus, N, 1, "csv"), csv.str());
        } else if (l == "nesting") {
            cert = certify_nesting(construction(), opt);
        } else if (l == "genus-structure") {
            cert = genus_structure_certificate(construction(), std::min(cfg.depth, 2), opt);
        } else if (l == "folding") {
            if (cfg.genus % 2 == 0) {
                cert = check_folding_invariance(cfg.genus, N).certificate;
            } else {
                cert.lemma = "folding";
                cert.g = cfg.genus;
                cert.N = N;
                cert.status = Status::NotApplicable;
                cert.notes.push_back("folding invariance applies to even genus");
            }
        } else if (l == "conjugation") {
            cert = check_conjugation(1000, opt.seed);
            cert.g = cfg.genus;
            cert.N = N;
        }
        write_file(fs::path(cfg.out) / ("cert_" + l + "_g" + std::to_string(cfg.genus) + "_N" + std::to_string(N) + ".json"),
                   io::dump(io::certificate_json(cert)));
        certs.push_back(cert);
    }

    std::cout << std::left << std::setw(17) << "lemma" << std::setw(14) << "status" << std::setw(14) << "margin"
              << "witness\n";
    bool ok = true;
    for (const auto& cert : certs) {
        std::ostringstream w;
        if (!cert.witness.first.empty()) w << cert.witness.first;
        if (!cert.witness.second.empty()) w << " " << cert.witness.second;
        if (!cert.witness.note.empty()) w << (w.str().empty() ? "" : ": ") << cert.witness.note;
        if (cert.witness.required != 0 || cert.witness.achieved != 0)
            w << " (achieved " << cert.witness.achieved << ", required " << cert.witness.required << ")";
        std::cout << std::setw(17) << cert.lemma << std::setw(14) << to_string(cert.status) << std::setw(14)
                  << std::setprecision(6) << cert.margin << w.str() << "\n";
        ok = ok && (cert.status == Status::Pass || cert.status == Status::NotApplicable);
    }
    return ok ? 0 : 1;
}

int cmd_export(const RunConfig& cfg) {
    if (cfg.depth < 0 || cfg.depth > 3) throw UsageError("--depth must be between 0 and 3");
    const std::int64_t N = resolved_N(cfg);
    figure_banner(std::cerr, cfg.genus, N);
    const fs::path out(cfg.out);
    if (cfg.what == "curves") {
        const auto L = build_ladder(cfg.genus, N);
        const auto name = out / io::export_name("curves", cfg.genus, N, cfg.depth, "json");
        write_file(name, io::dump(io::curves_json(L)));
        std::cout << name.string() << "\n";
    } else if (cfg.what == "tubes") {
        const auto L = build_ladder(cfg.genus, N);
        const TriMesh m = io::torus_mesh(L);
        if (!m.is_closed_oriented()) throw std::runtime_error("torus mesh is not watertight");
        std::ostringstream os;
        write_obj(os, m, "torus");
        const auto name = out / io::export_name("tubes", cfg.genus, N, cfg.depth, "obj");
        write_file(name, os.str());
        std::cout << name.string() << " euler_characteristic=" << m.euler_characteristic() << "\n";
    } else if (cfg.what == "level") {
        const IFS ifs = build_ifs(cfg.genus, N);
        const Word prefix = parse_prefix(cfg.prefix);
        const auto cap = static_cast<std::uint64_t>(cfg.cap);
        const auto name = out / io::export_name("level", cfg.genus, N, cfg.depth, "obj");
        try {
            const LevelStream probe(ifs, cfg.depth, prefix, cap);  // throws before the file is created
            auto obj = open_output(name);
            io::write_level_obj(obj, ifs, cfg.depth, prefix, cap);
        } catch (const LevelCapExceeded& e) {
            throw UsageError(std::string(e.what()) + " (raise --cap or give --prefix)");
        }
        const auto jname = out / io::export_name("level", cfg.genus, N, cfg.depth, "json");
        write_file(jname, io::dump(io::level_json(ifs, cfg.depth, prefix, cap)));
        std::cout << name.string() << "\n" << jname.string() << "\n";
    } else if (cfg.what == "deformation") {
        if (cfg.genus < 2) throw UsageError("deformation export needs --genus >= 2");
        if (cfg.frames < 2) throw UsageError("--frames must be at least 2");
        const Deformation d = build_deformation(cfg.genus - 1, cfg.N);
        const auto surf = deformation_surface(d);
        const std::int64_t dN = d.construction.ladder.N();
        for (int f = 0; f < cfg.frames; ++f) {
            const double t = static_cast<double>(f) / (cfg.frames - 1);
            std::ostringstream tag;
            tag << "deformation_t" << std::setw(3) << std::setfill('0') << f;
            const auto name = out / io::export_name(tag.str(), cfg.genus, dN, 1, "obj");
            auto obj = open_output(name);
            write_obj(obj, deformation_snapshot(d, surf, t), "H_t");
            std::cout << name.string() << " t=" << t << "\n";
        }
    } else {
        throw UsageError("--what must be curves, tubes, level or deformation");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genus-g wild Cantor sets: construction, certificates and exports"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--genus", cfg.genus, "genus g >= 1")->required();
        sub->add_option("--N", cfg.N, "scaffold density override (default: N_g)");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--jobs", cfg.jobs, "worker threads");
    };
    auto* seq = app.add_subcommand("seq", "print the folding sequence data as JSON");
    add_common(seq);
    auto* cert = app.add_subcommand("certify", "run certificates and write one JSON file each");
    add_common(cert);
    cert->add_option("--lemmas", cfg.lemmas, "comma-separated subset of: sigma, tau-sep, tau-prox, linking, nesting, "
                                              "genus-structure, folding, conjugation")
        ->delimiter(',');
    cert->add_option("--depth", cfg.depth, "genus-structure depth (1 or 2)");
    cert->add_option("--sample-step", cfg.sample_step, "certified sampling step h");
    cert->add_option("--pair-budget", cfg.pair_budget, "pair budget for sampled sweeps");
    auto* exp = app.add_subcommand("export", "write curves, tube meshes or level meshes");
    add_common(exp);
    exp->add_option("--what", cfg.what, "curves | tubes | level | deformation")->required();
    exp->add_option("--depth", cfg.depth, "level depth (0..3)");
    exp->add_option("--prefix", cfg.prefix, "comma-separated word restricting the level");
    exp->add_option("--cap", cfg.cap, "largest number of level components to export");
    exp->add_option("--frames", cfg.frames, "deformation snapshots on a uniform grid of t in [0, 1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cfg.genus < 1) throw UsageError("--genus must be at least 1");
        if (cfg.N != 0 && cfg.N < 4) throw UsageError("--N must be at least 4");
        if (!(cfg.sample_step > 0)) throw UsageError("--sample-step must be positive");
        if (cfg.pair_budget < 1) throw UsageError("--pair-budget must be positive");
        if (cfg.jobs < 1) throw UsageError("--jobs must be positive");
        if (cfg.cap < 1) throw UsageError("--cap must be positive");
        if (*seq) return cmd_seq(cfg);
        if (*cert) return cmd_certify(cfg);
        return cmd_export(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
