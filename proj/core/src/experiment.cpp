#include "semnoma/experiment.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace semnoma {

const char* to_string(Command command) {
    switch (command) {
        case Command::fig2: return "fig2";
        case Command::fig3: return "fig3";
        case Command::fig4: return "fig4";
        case Command::fig5: return "fig5";
        case Command::fig6: return "fig6";
        case Command::custom: return "custom";
        case Command::validate: return "validate";
    }
    return "?";
}

std::optional<Command> command_from_string(std::string_view name) {
    for (Command c : {Command::fig2, Command::fig3, Command::fig4, Command::fig5, Command::fig6,
                      Command::custom, Command::validate}) {
        if (name == to_string(c)) return c;
    }
    return std::nullopt;
}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

RunConfig ExperimentSpec::run_config() const {
    RunConfig run;
    run.master_seed = seed;
    run.n_realizations = realizations;
    run.p_max = db_to_linear(pmax_db.empty() ? 10.0 : pmax_db.front());
    run.geometry.cell_radius = cell_radius;
    run.geometry.ref_pathloss = db_to_linear(ref_pathloss_db);
    run.geometry.pathloss_exp = pathloss_exp;
    run.geometry.noise_power = db_to_linear(sigma2_db);
    run.geometry.min_distance = min_distance;
    run.logistic = logistic;
    run.semantics.k_symbols = k_symbols;
    run.semantics.mu_bits = mu_bits;
    run.semantics.info_per_word = info_per_word;
    run.semantics.eps_th = eps_th.empty() ? 0.9 : eps_th.front();
    run.solver = solver;
    run.max_threads = threads;
    return run;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(key, "malformed number '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_u64(const std::string& key, std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, "malformed non-negative integer '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_list(const std::string& key, std::string_view text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        values.push_back(parse_double(key, text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

bool parse_bool(const std::string& key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(key, message);
}

double positive(const std::string& key, std::string_view text) {
    const double v = parse_double(key, text);
    require(v > 0.0, key, "must be positive");
    return v;
}

struct Field {
    std::string key;
    bool echoed;
    std::function<void(ExperimentSpec&, std::string_view)> set;
    std::function<std::string(const ExperimentSpec&)> get;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        auto num = [&f](std::string key, double ExperimentSpec::*member, bool must_be_positive) {
            f.push_back({key, true,
                         [key, member, must_be_positive](ExperimentSpec& s, std::string_view v) {
                             s.*member = must_be_positive ? positive(key, v) : parse_double(key, v);
                         },
                         [member](const ExperimentSpec& s) { return format_double(s.*member); }});
        };
        f.push_back({"experiment", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         const auto c = command_from_string(trim(v));
                         require(c.has_value(), "experiment", "unknown experiment '" + std::string(v) + "'");
                         s.command = *c;
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.command)); }});
        f.push_back({"axis", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         v = trim(v);
                         if (v == "pmax_db") {
                             s.axis = SweepAxisKind::p_max_db;
                         } else if (v == "eps_th") {
                             s.axis = SweepAxisKind::eps_th;
                         } else {
                             throw ConfigError("axis", "expected pmax_db or eps_th, got '" + std::string(v) + "'");
                         }
                     },
                     [](const ExperimentSpec& s) { return std::string(to_string(s.axis)); }});
        f.push_back({"pmax_db", true,
                     [](ExperimentSpec& s, std::string_view v) { s.pmax_db = parse_list("pmax_db", v); },
                     [](const ExperimentSpec& s) { return join(s.pmax_db); }});
        f.push_back({"eps_th", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         s.eps_th = parse_list("eps_th", v);
                         for (double e : s.eps_th) require(e > 0.0 && e < 1.0, "eps_th", "values must lie in (0, 1)");
                     },
                     [](const ExperimentSpec& s) { return join(s.eps_th); }});
        f.push_back({"seed", true, [](ExperimentSpec& s, std::string_view v) { s.seed = parse_u64("seed", v); },
                     [](const ExperimentSpec& s) { return std::to_string(s.seed); }});
        f.push_back({"realizations", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         s.realizations = parse_u64("realizations", v);
                         require(s.realizations >= 1, "realizations", "must be at least 1");
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.realizations); }});
        num("sigma2_db", &ExperimentSpec::sigma2_db, false);
        num("ref_pathloss_db", &ExperimentSpec::ref_pathloss_db, false);
        num("cell_radius", &ExperimentSpec::cell_radius, true);
        num("pathloss_exp", &ExperimentSpec::pathloss_exp, true);
        num("min_distance", &ExperimentSpec::min_distance, true);
        num("k_symbols", &ExperimentSpec::k_symbols, true);
        num("mu_bits", &ExperimentSpec::mu_bits, true);
        num("info_per_word", &ExperimentSpec::info_per_word, true);
        auto logistic = [&f](std::string key, double LogisticParams::*member) {
            f.push_back({key, true,
                         [key, member](ExperimentSpec& s, std::string_view v) { s.logistic.*member = parse_double(key, v); },
                         [member](const ExperimentSpec& s) { return format_double(s.logistic.*member); }});
        };
        logistic("logistic_a1", &LogisticParams::a1);
        logistic("logistic_a2", &LogisticParams::a2);
        logistic("logistic_c1", &LogisticParams::c1);
        logistic("logistic_c2", &LogisticParams::c2);
        f.push_back({"power_tol", true,
                     [](ExperimentSpec& s, std::string_view v) { s.solver.power_tol = positive("power_tol", v); },
                     [](const ExperimentSpec& s) { return format_double(s.solver.power_tol); }});
        f.push_back({"residual_tol", true,
                     [](ExperimentSpec& s, std::string_view v) { s.solver.residual_tol = positive("residual_tol", v); },
                     [](const ExperimentSpec& s) { return format_double(s.solver.residual_tol); }});
        f.push_back({"grid_points", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         s.solver.grid_points = parse_u64("grid_points", v);
                         require(s.solver.grid_points >= 1, "grid_points", "must be at least 1");
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.solver.grid_points); }});
        f.push_back({"max_iter", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         const auto n = parse_u64("max_iter", v);
                         require(n >= 1 && n <= 100'000, "max_iter", "must lie in [1, 100000]");
                         s.solver.max_iter = int(n);
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.solver.max_iter); }});
        f.push_back({"scan_intervals", true,
                     [](ExperimentSpec& s, std::string_view v) {
                         const auto n = parse_u64("scan_intervals", v);
                         require(n >= 1 && n <= (1u << 24), "scan_intervals", "must lie in [1, 2^24]");
                         s.solver.scan_intervals = int(n);
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.solver.scan_intervals); }});
        f.push_back({"quick", true, [](ExperimentSpec& s, std::string_view v) { s.quick = parse_bool("quick", v); },
                     [](const ExperimentSpec& s) { return std::string(s.quick ? "true" : "false"); }});
        f.push_back({"out", false, [](ExperimentSpec& s, std::string_view v) { s.out_path = std::string(trim(v)); },
                     [](const ExperimentSpec& s) { return s.out_path; }});
        f.push_back({"threads", false,
                     [](ExperimentSpec& s, std::string_view v) {
                         const auto n = parse_u64("threads", v);
                         require(n <= 4096, "threads", "must be at most 4096");
                         s.threads = unsigned(n);
                     },
                     [](const ExperimentSpec& s) { return std::to_string(s.threads); }});
        return f;
    }();
    return table;
}

const Field& field(const std::string& key) {
    for (const Field& f : fields()) {
        if (f.key == key) return f;
    }
    throw ConfigError(key, "unknown key");
}

std::vector<double> default_pmax_grid() { return {0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0}; }

ExperimentSpec defaults_for(Command command) {
    ExperimentSpec spec;
    spec.command = command;
    spec.pmax_db = default_pmax_grid();
    spec.eps_th = {0.9};
    switch (command) {
        case Command::fig3:
            spec.pmax_db = {5.0, 10.0, 20.0};
            spec.eps_th = {0.8, 0.825, 0.85, 0.875, 0.9, 0.925, 0.95, 0.975, 0.99};
            break;
        case Command::fig6: spec.eps_th = {0.85, 0.9, 0.95}; break;
        default: break;
    }
    return spec;
}

// Ordered key=value pairs from text; later duplicates win when applied.
std::vector<std::pair<std::string, std::string>> read_pairs(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = trim(text.substr(pos, nl == text.npos ? text.npos : nl - pos));
        pos = nl == text.npos ? text.size() + 1 : nl + 1;
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), "expected key=value");
        }
        pairs.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    }
    return pairs;
}

void check_consistency(ExperimentSpec& spec) {
    require(!spec.pmax_db.empty(), "pmax_db", "needs at least one value");
    require(!spec.eps_th.empty(), "eps_th", "needs at least one value");
    require(spec.cell_radius > spec.min_distance, "cell_radius", "must exceed min_distance");
    require(spec.ref_pathloss_db <= 0.0, "ref_pathloss_db", "must be at most 0 dB");
    require(spec.logistic.a1 >= 0.0 && spec.logistic.a1 < spec.logistic.a2, "logistic_a1",
            "must satisfy 0 <= a1 < a2");
    require(spec.logistic.a2 <= 1.0, "logistic_a2", "must be at most 1");
    require(spec.logistic.c1 > 0.0, "logistic_c1", "must be positive");
    for (double p : spec.pmax_db) require(p < 300.0, "pmax_db", "values must be below 300 dB");
    require(spec.sigma2_db > -300.0 && spec.sigma2_db < 300.0, "sigma2_db", "must lie in (-300, 300) dB");

    switch (spec.command) {
        case Command::fig2:
        case Command::fig4:
        case Command::fig5:
            require(spec.eps_th.size() == 1, "eps_th", std::string(to_string(spec.command)) + " takes a single value");
            break;
        case Command::custom:
            if (spec.axis == SweepAxisKind::p_max_db) {
                require(spec.eps_th.size() == 1, "eps_th", "custom sweep over pmax_db takes a single eps_th");
            } else {
                require(spec.pmax_db.size() == 1, "pmax_db", "custom sweep over eps_th takes a single pmax_db");
            }
            break;
        default: break;
    }
}

}  // namespace

ExperimentSpec parse_config_text(std::optional<Command> command, std::string_view text,
                                 const std::map<std::string, std::string>& overrides) {
    auto pairs = read_pairs(text);
    for (const auto& [key, value] : overrides) pairs.emplace_back(key, value);

    // The command decides the defaults; it comes from the caller, else the text.
    if (!command) {
        command = Command::custom;
        for (const auto& [key, value] : pairs) {
            if (key == "experiment") {
                const auto c = command_from_string(trim(value));
                require(c.has_value(), "experiment", "unknown experiment '" + value + "'");
                command = c;
            }
        }
    }

    ExperimentSpec spec = defaults_for(*command);
    for (const auto& [key, value] : pairs) {
        if (key == "experiment") continue;
        field(key).set(spec, value);
    }
    spec.command = *command;
    check_consistency(spec);
    return spec;
}

ExperimentSpec parse_config(Command command, const std::optional<std::filesystem::path>& file,
                            const std::map<std::string, std::string>& overrides) {
    std::string text;
    if (file) {
        std::ifstream in(*file);
        if (!in) throw ConfigError("config", "cannot read '" + file->string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return parse_config_text(command, text, overrides);
}

std::string provenance_header(const ExperimentSpec& spec) {
    std::string out;
    for (const Field& f : fields()) {
        if (!f.echoed) continue;
        out += "# " + f.key + "=" + f.get(spec) + "\n";
    }
    return out;
}

ExperimentSpec config_from_header(std::string_view csv_text) {
    std::string text;
    std::size_t pos = 0;
    while (pos < csv_text.size() && csv_text[pos] == '#') {
        const std::size_t nl = csv_text.find('\n', pos);
        std::string_view line = csv_text.substr(pos + 1, nl == csv_text.npos ? csv_text.npos : nl - pos - 1);
        text += std::string(trim(line)) + "\n";
        pos = nl == csv_text.npos ? csv_text.size() : nl + 1;
    }
    return parse_config_text(std::nullopt, text);
}

namespace {

std::string db_label(double v) { return format_double(v) + "db"; }

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

void collect_warnings(const std::string& context, const ErgodicStats& stats, std::vector<std::string>& warnings) {
    if (stats.diagnostic_count == 0) return;
    std::string msg = context + ": " + std::to_string(stats.diagnostic_count) + " solver diagnostic(s)";
    for (const SlotDiagnostic& d : stats.diagnostics) {
        msg += "; realization " + std::to_string(d.realization) + " " + to_string(d.status);
    }
    warnings.push_back(std::move(msg));
}

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxisKind kind, const std::vector<double>& values,
                                std::initializer_list<Scheme> schemes, const std::string& context,
                                std::vector<std::string>& warnings) {
    const std::vector<Scheme> list(schemes);
    auto rows = sweep(base, SweepAxis{kind, values}, list);
    for (const SweepRow& row : rows) {
        collect_warnings(context + " " + to_string(kind) + "=" + format_double(row.axis_value) + " " +
                             to_string(row.scheme),
                         row.stats, warnings);
    }
    return rows;
}

const ErgodicStats& pick(const std::vector<SweepRow>& rows, std::size_t point, Scheme scheme) {
    for (const SweepRow& r : rows) {
        if (r.scheme == scheme) {
            if (point == 0) return r.stats;
            --point;
        }
    }
    throw std::logic_error("sweep row missing");
}

std::vector<std::string> stats_cells(const ErgodicStats& s) {
    return {format_double(s.mean_se),          format_double(s.mean_se_b_suts),
            format_double(s.mean_se_s1),       format_double(s.mean_se_s2),
            format_double(s.mean_rate_b_bits), format_double(s.mean_power_b),
            format_double(s.mean_power_s1),    format_double(s.mean_power_s2),
            format_double(s.participation_b),  format_double(s.participation_s1),
            format_double(s.participation_s2), std::to_string(s.n_realizations),
            std::to_string(s.mode_counts.oma_bit),       std::to_string(s.mode_counts.hetero_noma),
            std::to_string(s.mode_counts.semantic_noma), std::to_string(s.mode_counts.time_shared),
            std::to_string(s.semantic_invalid_slots),    std::to_string(s.diagnostic_count)};
}

}  // namespace

std::vector<std::string> csv_columns(const ExperimentSpec& spec) {
    switch (spec.command) {
        case Command::fig2: return {"pmax_db", "hybrid_se", "oma_se"};
        case Command::fig3: {
            std::vector<std::string> cols{"eps_th"};
            for (double p : spec.pmax_db) cols.push_back("hybrid_se_at_" + db_label(p));
            for (double p : spec.pmax_db) cols.push_back("oma_se_at_" + db_label(p));
            return cols;
        }
        case Command::fig4: return {"pmax_db", "hybrid_bit_se_bits", "oma_bit_se_bits"};
        case Command::fig5: return {"pmax_db", "mean_power_b", "mean_power_s1", "mean_power_s2"};
        case Command::fig6: {
            std::vector<std::string> cols{"pmax_db"};
            for (double e : spec.eps_th) cols.push_back("bit_se_suts_eps_" + format_double(e));
            return cols;
        }
        case Command::custom:
            return {to_string(spec.axis), "scheme", "mean_se", "mean_se_b_suts", "mean_se_s1", "mean_se_s2",
                    "mean_rate_b_bits", "mean_power_b", "mean_power_s1", "mean_power_s2",
                    "participation_b", "participation_s1", "participation_s2", "n_realizations",
                    "count_oma_bit", "count_hetero_noma", "count_semantic_noma", "count_time_shared",
                    "semantic_invalid_slots", "diagnostic_count"};
        case Command::validate: break;
    }
    throw std::invalid_argument("validate does not produce a CSV table");
}

ExperimentResult write_experiment(const ExperimentSpec& spec, std::ostream& out) {
    const std::vector<std::string> columns = csv_columns(spec);
    ExperimentSpec checked = spec;
    check_consistency(checked);
    const RunConfig base = spec.run_config();
    base.validate();

    ExperimentResult result;
    auto& warn = result.warnings;
    std::vector<std::vector<std::string>> rows;
    const std::string name = to_string(spec.command);

    switch (spec.command) {
        case Command::fig2:
        case Command::fig4:
        case Command::fig5: {
            const bool with_oma = spec.command != Command::fig5;
            const auto sw = with_oma ? run_sweep(base, SweepAxisKind::p_max_db, spec.pmax_db,
                                                 {Scheme::hybrid, Scheme::oma}, name, warn)
                                     : run_sweep(base, SweepAxisKind::p_max_db, spec.pmax_db, {Scheme::hybrid},
                                                 name, warn);
            for (std::size_t i = 0; i < spec.pmax_db.size(); ++i) {
                const ErgodicStats& h = pick(sw, i, Scheme::hybrid);
                std::vector<std::string> row{format_double(spec.pmax_db[i])};
                if (spec.command == Command::fig2) {
                    row.push_back(format_double(h.mean_se));
                    row.push_back(format_double(pick(sw, i, Scheme::oma).mean_se));
                } else if (spec.command == Command::fig4) {
                    row.push_back(format_double(h.mean_rate_b_bits));
                    row.push_back(format_double(pick(sw, i, Scheme::oma).mean_rate_b_bits));
                } else {
                    row.push_back(format_double(h.mean_power_b));
                    row.push_back(format_double(h.mean_power_s1));
                    row.push_back(format_double(h.mean_power_s2));
                }
                rows.push_back(std::move(row));
            }
            break;
        }
        case Command::fig3: {
            std::vector<std::vector<SweepRow>> per_pmax;
            for (double p : spec.pmax_db) {
                RunConfig cfg = base;
                cfg.p_max = db_to_linear(p);
                per_pmax.push_back(run_sweep(cfg, SweepAxisKind::eps_th, spec.eps_th, {Scheme::hybrid, Scheme::oma},
                                             name + " pmax_db=" + format_double(p), warn));
            }
            for (std::size_t i = 0; i < spec.eps_th.size(); ++i) {
                std::vector<std::string> row{format_double(spec.eps_th[i])};
                for (const auto& sw : per_pmax) row.push_back(format_double(pick(sw, i, Scheme::hybrid).mean_se));
                for (const auto& sw : per_pmax) row.push_back(format_double(pick(sw, i, Scheme::oma).mean_se));
                rows.push_back(std::move(row));
            }
            break;
        }
        case Command::fig6: {
            std::vector<std::vector<SweepRow>> per_eps;
            for (double e : spec.eps_th) {
                RunConfig cfg = base;
                cfg.semantics.eps_th = e;
                per_eps.push_back(run_sweep(cfg, SweepAxisKind::p_max_db, spec.pmax_db, {Scheme::hybrid},
                                            name + " eps_th=" + format_double(e), warn));
            }
            for (std::size_t i = 0; i < spec.pmax_db.size(); ++i) {
                std::vector<std::string> row{format_double(spec.pmax_db[i])};
                for (const auto& sw : per_eps) row.push_back(format_double(pick(sw, i, Scheme::hybrid).mean_se_b_suts));
                rows.push_back(std::move(row));
            }
            break;
        }
        case Command::custom: {
            const auto& values = spec.axis == SweepAxisKind::p_max_db ? spec.pmax_db : spec.eps_th;
            for (const SweepRow& r :
                 run_sweep(base, spec.axis, values, {Scheme::hybrid, Scheme::oma}, name, warn)) {
                std::vector<std::string> row{format_double(r.axis_value), to_string(r.scheme)};
                for (auto& cell : stats_cells(r.stats)) row.push_back(std::move(cell));
                rows.push_back(std::move(row));
            }
            break;
        }
        case Command::validate: break;
    }

    out << provenance_header(spec);
    write_row(out, columns);
    for (const auto& row : rows) write_row(out, row);
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.out_path.empty()) return write_experiment(spec, std::cout);
    std::ofstream file(spec.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output '" + spec.out_path + "' for writing");
    // Render in memory first so a failed run leaves no half-written table.
    std::ostringstream buf;
    ExperimentResult result = write_experiment(spec, buf);
    file << buf.str();
    file.flush();
    if (!file) throw std::runtime_error("failed writing '" + spec.out_path + "'");
    return result;
}

}  // namespace semnoma
