#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "semnoma/experiment.hpp"
#include "semnoma/validate.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string seed;
    std::string realizations;
    std::string pmax_db;
    std::string eps_th;
    std::string sigma2_db;
    std::string threads;
    std::string axis;
    bool quick = false;
    bool inject_fault = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "key=value configuration file");
    sub->add_option("--out", f.out, "output CSV path (default stdout)");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--realizations", f.realizations, "fading realizations per point");
    sub->add_option("--pmax-db", f.pmax_db, "comma-separated P_max values in dB");
    sub->add_option("--eps-th", f.eps_th, "similarity threshold(s), comma-separated");
    sub->add_option("--sigma2-db", f.sigma2_db, "noise power in dB");
    sub->add_option("--threads", f.threads, "worker cap (0 = all cores)");
    sub->add_flag("--quick", f.quick, "reduced run size");
}

std::map<std::string, std::string> overrides(const Flags& f) {
    std::map<std::string, std::string> m;
    auto put = [&m](const char* key, const std::string& v) {
        if (!v.empty()) m[key] = v;
    };
    put("out", f.out);
    put("seed", f.seed);
    put("realizations", f.realizations);
    put("pmax_db", f.pmax_db);
    put("eps_th", f.eps_th);
    put("sigma2_db", f.sigma2_db);
    put("threads", f.threads);
    put("axis", f.axis);
    if (f.quick) m["quick"] = "true";
    return m;
}

int run_validate(const semnoma::ExperimentSpec& spec, bool inject_fault) {
    semnoma::ValidateOptions opt;
    const semnoma::RunConfig run = spec.run_config();
    opt.seed = spec.seed;
    opt.slots_per_mode = spec.quick ? 100 : 1000;
    opt.model = run.model();
    opt.solver = spec.solver;
    opt.threads = spec.threads;
    if (inject_fault) opt.solver.mutation = semnoma::ResidualMutation::flipped_semantic_sign;

    const semnoma::ValidationReport report = semnoma::run_validation(opt);
    for (const auto& c : report.checks) {
        std::printf("%-4s %-22s worst=%.3e bound=%.3e n=%zu\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.worst, c.bound, c.samples);
    }
    std::printf("%s (%zu slots per mode)\n", report.passed() ? "all checks passed" : "validation FAILED",
                opt.slots_per_mode);
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid semantic/bit NOMA power allocation simulator"};
    app.require_subcommand(1);

    Flags flags;
    std::map<CLI::App*, semnoma::Command> commands;
    for (semnoma::Command c : {semnoma::Command::fig2, semnoma::Command::fig3, semnoma::Command::fig4,
                               semnoma::Command::fig5, semnoma::Command::fig6, semnoma::Command::custom,
                               semnoma::Command::validate}) {
        CLI::App* sub = app.add_subcommand(semnoma::to_string(c));
        add_common(sub, flags);
        if (c == semnoma::Command::custom) {
            sub->add_option("--axis", flags.axis, "swept axis: pmax_db or eps_th");
        }
        if (c == semnoma::Command::validate) {
            sub->add_flag("--inject-fault", flags.inject_fault, "flip the semantic residual sign (self-test)");
        }
        commands[sub] = c;
    }

    CLI11_PARSE(app, argc, argv);

    semnoma::Command command = semnoma::Command::custom;
    for (const auto& [sub, c] : commands) {
        if (sub->parsed()) command = c;
    }

    try {
        std::optional<std::filesystem::path> file;
        if (!flags.config.empty()) file = flags.config;
        const semnoma::ExperimentSpec spec = semnoma::parse_config(command, file, overrides(flags));
        if (command == semnoma::Command::validate) return run_validate(spec, flags.inject_fault);

        const semnoma::ExperimentResult result = semnoma::run_experiment(spec);
        for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
        return 0;
    } catch (const semnoma::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
