#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semnoma/allocator.hpp"
#include "semnoma/montecarlo.hpp"
#include "semnoma/semantic_model.hpp"

namespace semnoma {

enum class Command { fig2, fig3, fig4, fig5, fig6, custom, validate };

const char* to_string(Command command);
std::optional<Command> command_from_string(std::string_view name);

/// Configuration problem tied to one key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Fully resolved experiment description. dB quantities are kept as given so
/// the echoed header round-trips exactly; run_config() converts to linear.
struct ExperimentSpec {
    Command command = Command::custom;
    SweepAxisKind axis = SweepAxisKind::p_max_db;  // custom only
    std::vector<double> pmax_db;
    std::vector<double> eps_th;
    std::uint64_t seed = 42;
    std::size_t realizations = 100'000;
    double sigma2_db = -90.0;
    double ref_pathloss_db = -30.0;
    double cell_radius = 100.0;
    double pathloss_exp = 4.0;
    double min_distance = 1.0;
    double k_symbols = 5.0;
    double mu_bits = 40.0;
    double info_per_word = 1.0;
    LogisticParams logistic;
    SolverConfig solver;
    bool quick = false;

    // Execution-only settings; not echoed, never change results.
    std::string out_path;  // empty: stdout
    unsigned threads = 0;

    /// RunConfig at the first P_max and eps_th of the lists.
    RunConfig run_config() const;

    bool operator==(const ExperimentSpec&) const = default;
};

/// Resolves defaults < config file < overrides. Keys in `overrides` use the
/// config-file spelling (flag name with underscores). Throws ConfigError.
ExperimentSpec parse_config(Command command, const std::optional<std::filesystem::path>& file,
                            const std::map<std::string, std::string>& overrides = {});

/// Same, from in-memory key=value text. Lines starting with '#' are comments.
/// Without `command`, the text's `experiment` key decides (default custom).
ExperimentSpec parse_config_text(std::optional<Command> command, std::string_view text,
                                 const std::map<std::string, std::string>& overrides = {});

/// '#'-prefixed key=value provenance lines for a CSV file.
std::string provenance_header(const ExperimentSpec& spec);

/// Re-parses the provenance lines at the top of a CSV produced by
/// run_experiment.
ExperimentSpec config_from_header(std::string_view csv_text);

/// Column names for the experiment's CSV, in order.
std::vector<std::string> csv_columns(const ExperimentSpec& spec);

struct ExperimentResult {
    /// Solver diagnostics with the realization indices that raised them.
    std::vector<std::string> warnings;
};

/// Runs the sweep(s) for a figure experiment and writes the CSV to `out`.
ExperimentResult write_experiment(const ExperimentSpec& spec, std::ostream& out);

/// As above, to spec.out_path (stdout when empty). Throws std::runtime_error
/// if the output cannot be opened, before any simulation runs.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace semnoma
