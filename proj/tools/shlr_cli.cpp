#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shlr/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) shlr::fail(shlr::ErrorCode::Argument, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// flag > environment > file config > default
void apply_overrides(shlr::ModelFile& model, const std::string& cutoff, const std::string& window,
                     const std::string& seed, const std::string& length_cap) {
    auto env_or = [](const char* name, const std::string& flag) {
        if (!flag.empty()) return flag;
        const char* e = std::getenv(name);
        return e ? std::string(e) : std::string();
    };
    std::string w = env_or("SHLR_WEIGHT_CUTOFF", cutoff);
    if (!w.empty()) model.config.weight_cutoff = std::stoi(w);
    std::string dw = env_or("SHLR_DEGREE_WINDOW", window);
    if (!dw.empty()) {
        auto colon = dw.find(':');
        if (colon == std::string::npos)
            shlr::fail(shlr::ErrorCode::Argument, "degree window must be LO:HI");
        model.config.window = shlr::DegreeWindow(std::stoi(dw.substr(0, colon)),
                                                 std::stoi(dw.substr(colon + 1)));
    }
    std::string s = env_or("SHLR_SEED", seed);
    if (!s.empty()) model.config.seed = std::stoull(s);
    std::string lc = env_or("SHLR_LENGTH_CAP", length_cap);
    if (!lc.empty()) model.config.length_cap = std::stoi(lc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic engine for strong-homotopy Lie-Rinehart pairs and their "
                 "Chevalley-Eilenberg complexes"};
    app.require_subcommand(1);

    std::string file, cutoff, window, seed, length_cap;
    std::string output = "json";
    bool timing = false;
    shlr::CommandOptions opts;
    app.add_option("--weight-cutoff", cutoff, "weight cutoff W");
    app.add_option("--degree-window", window, "degree window LO:HI");
    app.add_option("--seed", seed, "seed for sampled checks");
    app.add_option("--length-cap", length_cap, "monomial length cap");
    app.add_option("--output", output, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", timing, "include wall-clock timing in the report");

    std::vector<std::string> names{"check-d2", "ce", "extract-brackets", "linear-part",
                                   "cohomology", "weq", "coproduct", "pushout",
                                   "cylinder", "dualize", "lift"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& n : names) {
        CLI::App* s = app.add_subcommand(n);
        s->fallthrough(); // global flags may follow the subcommand
        s->add_option("file", file, "model file")->required();
        s->add_option("--pair", opts.pair, "module whose pair to use");
        if (n == "weq" || n == "linear-part") s->add_option("--morphism", opts.morphism, "morphism name");
        if (n == "coproduct") {
            s->add_option("--left", opts.left, "left pair");
            s->add_option("--right", opts.right, "right pair");
        }
        if (n == "pushout") {
            s->add_option("--f", opts.f, "the map to push out");
            s->add_option("--g", opts.g, "the cofibration");
        }
        if (n == "lift") s->add_option("--p", opts.p, "base morphism to lift along");
        subs[n] = s;
    }

    std::string envout;
    if (const char* e = std::getenv("SHLR_OUTPUT")) envout = e;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string cmd;
        for (const auto& [n, s] : subs)
            if (s->parsed()) cmd = n;
        shlr::ModelFile model = shlr::parse_model(read_file(file));
        apply_overrides(model, cutoff, window, seed, length_cap);
        opts.timing = timing;
        shlr::Report rep = shlr::run_command(cmd, model, opts);
        std::string fmt = output;
        if (output == "json" && !envout.empty()) fmt = envout;
        std::cout << (fmt == "text" ? rep.to_text() : rep.to_json());
        return rep.exit_code;
    } catch (const shlr::Error& e) {
        std::cerr << "error (" << shlr::error_code_str(e.code) << "): " << e.what() << "\n";
        switch (e.code) {
            case shlr::ErrorCode::Window: return 3;
            default: return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
