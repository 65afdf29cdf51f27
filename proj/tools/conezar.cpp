#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conezar/io.hpp"
#include "conezar/presets.hpp"
#include "conezar/verify.hpp"

namespace {

using namespace conezar;

struct RunConfig {
    std::string preset;
    std::string model;
    std::string alpha;
    std::string beta;
    std::string dir;
    std::string format;
    std::string out;
    std::string suite;
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 20;
    double tol = 1e-6;
    std::uint64_t seed = PolarOptions{}.seed;
    bool seed_given = false;
    int multistart = PolarOptions{}.multistart;
};

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--preset", cfg.preset, "built-in model name");
    cmd->add_option("--model", cfg.model, "path to a model file");
}

void add_solver_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--tol", cfg.tol, "membership tolerance");
    cmd->add_option("--seed", cfg.seed, "optimizer seed")
        ->each([&cfg](const std::string&) { cfg.seed_given = true; });
    cmd->add_option("--multistart", cfg.multistart, "optimizer restarts");
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "json, csv or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd->add_option("--out", cfg.out, "write the artifact to a file");
}

PolarOptions solver_options(const RunConfig& cfg) {
    PolarOptions opts;
    opts.tol = cfg.tol;
    opts.multistart = cfg.multistart;
    opts.seed = cfg.seed;
    if (!cfg.seed_given) {
        if (const char* env = std::getenv("CONEZAR_SEED")) {
            try {
                std::size_t used = 0;
                opts.seed = std::stoull(env, &used);
                if (used != std::string(env).size())
                    throw std::invalid_argument(env);
            } catch (const std::exception&) {
                throw ConfigError("CONEZAR_SEED is not an unsigned integer");
            }
        }
    }
    return opts;
}

ChowModel load_model(const RunConfig& cfg) {
    if (!cfg.preset.empty() && !cfg.model.empty())
        throw ConfigError("give either --preset or --model, not both");
    if (!cfg.preset.empty()) return make_preset(cfg.preset);
    if (cfg.model.empty())
        throw ConfigError("a model is required: pass --preset or --model");
    Json j = load_json_file(cfg.model);
    if (j.contains("mode")) return to_chow(quadratic_from_json(j).model);
    if (j.contains("max_cones")) return build_chow(fan_from_json(j));
    return chow_from_json(j);
}

RatVec required_vector(const std::string& text, const char* flag, int rho) {
    if (text.empty())
        throw ConfigError(std::string("missing required ") + flag);
    RatVec v = parse_vector(text);
    if (int(v.size()) != rho)
        throw ConfigError(std::string(flag) + " has " +
                          std::to_string(v.size()) + " coordinates, model has " +
                          std::to_string(rho));
    return v;
}

void emit_text(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
    f << text;
}

std::string pretty_lines(const Json& j, const std::string& prefix = "") {
    std::string text;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            text += pretty_lines(value, prefix + key + ".");
        } else {
            text += prefix + key + " = " + value.dump() + "\n";
        }
    }
    return text;
}

void emit_json(const RunConfig& cfg, const Json& j) {
    if (cfg.format == "csv")
        throw ConfigError("csv output is only available for sweep");
    if (cfg.format == "pretty")
        emit_text(cfg, pretty_lines(j));
    else
        emit_text(cfg, j.dump(2) + "\n");
}

int cmd_fan2chow(const RunConfig& cfg) {
    if (cfg.model.empty())
        throw ConfigError("fan2chow requires --model with a fan file");
    Fan f = fan_from_json(load_json_file(cfg.model));
    ChowModel m = build_chow(f);
    emit_json(cfg, chow_to_json(m));
    return 0;
}

int cmd_volume(const RunConfig& cfg) {
    ChowModel m = load_model(cfg);
    RatVec alpha = required_vector(cfg.alpha, "--alpha", m.rho);
    PolarOptions opts = solver_options(cfg);
    PolarValue pv = vol_curve(m, to_vec(alpha), opts);
    Json j;
    j["alpha"] = json_rat_vec(alpha);
    j["value"] = pv.value;
    j["minimizer"] = json_vec(pv.minimizer);
    j["restarts"] = pv.restarts;
    j["seed"] = opts.seed;
    emit_json(cfg, j);
    return 0;
}

int cmd_zariski(const RunConfig& cfg) {
    ChowModel m = load_model(cfg);
    RatVec alpha = required_vector(cfg.alpha, "--alpha", m.rho);
    PolarOptions opts = solver_options(cfg);
    ZariskiResult z = zariski(m, alpha, opts);
    emit_json(cfg, result_to_json(z));
    return 0;
}

int cmd_derivative(const RunConfig& cfg) {
    ChowModel m = load_model(cfg);
    RatVec alpha = required_vector(cfg.alpha, "--alpha", m.rho);
    RatVec beta = required_vector(cfg.beta, "--beta", m.rho);
    PolarOptions opts = solver_options(cfg);
    DerivativeCheck dc =
        derivative_check(m, to_vec(alpha), to_vec(beta), opts);
    Json j;
    j["alpha"] = json_rat_vec(alpha);
    j["beta"] = json_rat_vec(beta);
    j["derivative"] = dc.closed;
    Json fd = Json::array();
    for (const auto& [h, value] : dc.finite_diffs) {
        Json row;
        row["h"] = h;
        row["value"] = value;
        fd.push_back(row);
    }
    j["finite_diffs"] = fd;
    j["pass"] = dc.pass;
    emit_json(cfg, j);
    return 0;
}

int cmd_morse(const RunConfig& cfg) {
    ChowModel m = load_model(cfg);
    RatVec alpha = required_vector(cfg.alpha, "--alpha", m.rho);
    RatVec beta = required_vector(cfg.beta, "--beta", m.rho);
    PolarOptions opts = solver_options(cfg);
    MorseReport r = morse_check(m, to_vec(alpha), to_vec(beta), opts);
    Json j;
    j["alpha"] = json_rat_vec(alpha);
    j["beta"] = json_rat_vec(beta);
    j["alpha_big"] = r.alpha_big;
    j["beta_movable"] = r.beta_movable;
    j["criterion"] = r.criterion;
    j["criterion_positive"] = r.criterion_positive;
    j["big_certificate"] = r.big_certificate;
    j["lower_bound"] = r.lower_bound;
    j["vol_diff"] = r.vol_diff;
    j["diff_big"] = r.diff_big;
    emit_json(cfg, j);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    if (!cfg.format.empty() && cfg.format != "csv")
        throw ConfigError("sweep emits csv; drop --format or pass csv");
    ChowModel m = load_model(cfg);
    RatVec alpha = required_vector(cfg.alpha, "--alpha", m.rho);
    RatVec dir = required_vector(cfg.dir, "--dir", m.rho);
    if (cfg.steps < 1) throw ConfigError("--steps must be positive");
    if (!(cfg.t1 > cfg.t0)) throw ConfigError("--t1 must exceed --t0");
    PolarOptions opts = solver_options(cfg);

    Vec a0 = to_vec(alpha), d = to_vec(dir);
    std::string csv = "t,volhat";
    for (int i = 0; i < m.rho; ++i) csv += ",B_" + std::to_string(i + 1);
    csv += ",derivative\n";
    for (int i = 0; i <= cfg.steps; ++i) {
        double t = cfg.t0 + (cfg.t1 - cfg.t0) * double(i) / double(cfg.steps);
        Vec at = a0 + t * d;
        ZariskiResult z = zariski(m, at, opts);
        double deriv =
            double(m.n) / double(m.n - 1) * pair_classes(m, z.B, d);
        std::vector<double> cells;
        cells.push_back(t);
        cells.push_back(z.volhat);
        for (int k = 0; k < m.rho; ++k) cells.push_back(z.B[k]);
        cells.push_back(deriv);
        csv += csv_row(cells);
    }
    emit_text(cfg, csv);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<SuiteResult> results;
    if (!cfg.suite.empty()) {
        results.push_back(verify::run_suite(cfg.suite));
    } else {
        for (const auto& entry : verify::registry()) {
            results.push_back(entry.run());
            if (cfg.format != "json" && cfg.out.empty()) {
                const SuiteResult& r = results.back();
                std::printf("%s  %-24s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL",
                            r.name.c_str(), r.seconds, r.detail.c_str());
                std::fflush(stdout);
            }
        }
    }
    bool all_pass = true;
    for (const auto& r : results) all_pass = all_pass && r.pass;

    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& r : results) {
            Json row;
            row["name"] = r.name;
            row["pass"] = r.pass;
            row["seconds"] = r.seconds;
            row["detail"] = r.detail;
            arr.push_back(row);
        }
        emit_text(cfg, arr.dump(2) + "\n");
    } else if (!cfg.suite.empty() || !cfg.out.empty()) {
        std::string text;
        for (const auto& r : results) {
            char line[512];
            std::snprintf(line, sizeof(line), "%s  %-24s %7.2fs  %s\n",
                          r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                          r.detail.c_str());
            text += line;
        }
        emit_text(cfg, text);
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positivity computations on cones of divisor and curve classes"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* fan2chow = app.add_subcommand(
        "fan2chow", "derive the intersection model of a fan file");
    fan2chow->add_option("--model", cfg.model, "path to a fan file");
    add_output_flags(fan2chow, cfg);

    CLI::App* volume =
        app.add_subcommand("volume", "curve volume of a big class");
    add_model_flags(volume, cfg);
    volume->add_option("--alpha", cfg.alpha, "curve class");
    add_solver_flags(volume, cfg);
    add_output_flags(volume, cfg);

    CLI::App* zar = app.add_subcommand(
        "zariski", "decompose a big curve class into positive and negative parts");
    add_model_flags(zar, cfg);
    zar->add_option("--alpha", cfg.alpha, "curve class");
    add_solver_flags(zar, cfg);
    add_output_flags(zar, cfg);

    CLI::App* deriv = app.add_subcommand(
        "derivative", "directional derivative of the curve volume");
    add_model_flags(deriv, cfg);
    deriv->add_option("--alpha", cfg.alpha, "curve class");
    deriv->add_option("--beta", cfg.beta, "direction");
    add_solver_flags(deriv, cfg);
    add_output_flags(deriv, cfg);

    CLI::App* morse = app.add_subcommand(
        "morse", "bigness criterion for a difference of curve classes");
    add_model_flags(morse, cfg);
    morse->add_option("--alpha", cfg.alpha, "curve class");
    morse->add_option("--beta", cfg.beta, "class to subtract");
    add_solver_flags(morse, cfg);
    add_output_flags(morse, cfg);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "volumes and minimizers along a segment, as csv");
    add_model_flags(sweep, cfg);
    sweep->add_option("--alpha", cfg.alpha, "starting curve class");
    sweep->add_option("--dir", cfg.dir, "sweep direction");
    sweep->add_option("--t0", cfg.t0, "segment start");
    sweep->add_option("--t1", cfg.t1, "segment end");
    sweep->add_option("--steps", cfg.steps, "number of subdivisions");
    add_solver_flags(sweep, cfg);
    add_output_flags(sweep, cfg);

    CLI::App* verify_cmd = app.add_subcommand(
        "verify-paper", "run the acceptance suites and report pass or fail");
    verify_cmd->add_option("--suite", cfg.suite, "run a single suite by name");
    add_output_flags(verify_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (fan2chow->parsed()) return cmd_fan2chow(cfg);
        if (volume->parsed()) return cmd_volume(cfg);
        if (zar->parsed()) return cmd_zariski(cfg);
        if (deriv->parsed()) return cmd_derivative(cfg);
        if (morse->parsed()) return cmd_morse(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (verify_cmd->parsed()) return cmd_verify(cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const MathError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
