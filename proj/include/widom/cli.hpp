#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "widom/errors.hpp"
#include "widom/format.hpp"
#include "widom/modelsets.hpp"
#include "widom/productnd.hpp"
#include "widom/sets1d.hpp"

namespace widom::cli {

/// Malformed configuration; `field` names the offending setting.
class UsageError : public Error {
public:
    UsageError(std::string field, const std::string& what) : Error(field + ": " + what), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

inline const std::vector<std::string> kCommands{"cap",    "eqmeasure", "chebyshev", "orthopoly", "widom",
                                                "tau",    "profile",   "mahler",    "verify"};
inline const std::vector<std::string> kSuites{"sets1d", "extremal1d", "productnd", "modelsets", "mahler"};

/// Everything a run depends on. Strings hold descriptors verbatim:
/// `set` is a model-set name, a JSON set descriptor or a JSON array of them;
/// `weight` is a JSON weight descriptor or array (empty means w = 1);
/// `degree` is an integer or a comma-separated multi-index.
struct RunConfig {
    std::string command;
    std::string set;
    std::string weight;
    std::string degree;
    int max_total_degree = -1;
    int grid = 0;
    int nodes = 0;
    double tol = 1e-12;
    std::uint64_t seed = 42;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> suites;
    std::string poly;
    std::string fault;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

[[nodiscard]] nlohmann::json to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are a UsageError.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j);
/// Throws UsageError naming the first invalid field.
void validate(const RunConfig& c);

using SetSpec = std::variant<ProductSet, ModelSet>;

[[nodiscard]] CompactSet1D parse_set1d(const nlohmann::json& j);
[[nodiscard]] Weight1D parse_weight1d(const nlohmann::json& j);
/// Model-set name, single descriptor (a one-factor product) or array.
[[nodiscard]] SetSpec parse_set(const std::string& text);
/// Empty text gives w = 1; a single descriptor is applied to every factor.
[[nodiscard]] ProductWeight parse_weight(const std::string& text, int dim);
/// {"terms":[{"alpha":[..],"re":..,"im":..}]}; "im" may be omitted.
[[nodiscard]] SparsePolyND parse_poly(const std::string& text);
[[nodiscard]] MultiIndex parse_degree(const std::string& text);

struct CommandOutput {
    fmt::Table table;
    nlohmann::json summary;  ///< verify only
    int exit_code = 0;
};

/// Runs a validated configuration.
[[nodiscard]] CommandOutput run(const RunConfig& c);

/// CSV: the table. JSON: {"config", "result"} with the table (or the verify
/// summary) as result. Output depends only on the configuration.
[[nodiscard]] std::string render(const CommandOutput& out, const RunConfig& c);

// Verification suites.

struct InvariantResult {
    std::string suite;
    std::string name;
    long long checks = 0;
    long long failures = 0;
    std::string witness;  ///< first failing instance
};

struct Diagnostic {
    std::string name;
    std::vector<double> values;
    std::string note;
};

struct VerifyReport {
    std::vector<InvariantResult> invariants;
    std::vector<Diagnostic> diagnostics;
    [[nodiscard]] bool passed() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Runs the named suites (all when empty) with the given seed. A nonempty
/// `fault` corrupts one ingredient on purpose: "frostman" inflates every
/// capacity used by the Frostman checks.
[[nodiscard]] VerifyReport verify(const std::vector<std::string>& suites, std::uint64_t seed,
                                  const std::string& fault = {});

}  // namespace widom::cli
