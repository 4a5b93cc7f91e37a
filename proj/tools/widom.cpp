#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "widom/cli.hpp"

namespace {

using widom::cli::RunConfig;
using widom::cli::UsageError;

/// Flags given on the command line, applied over an optional --config file.
struct Flags {
    std::string config;
    RunConfig c;
    std::vector<std::string> suites;
};

void bind(CLI::App& sub, Flags& f) {
    sub.add_option("--config", f.config, "JSON RunConfig file; other flags override it");
    sub.add_option("--set", f.c.set, "model-set name or JSON set descriptor(s)");
    sub.add_option("--weight", f.c.weight, "JSON weight descriptor(s)");
    sub.add_option("--degree", f.c.degree, "degree or comma-separated multi-index");
    sub.add_option("--max-total-degree", f.c.max_total_degree, "largest total degree in a sweep");
    sub.add_option("--grid", f.c.grid, "grid size");
    sub.add_option("--nodes", f.c.nodes, "quadrature nodes");
    sub.add_option("--tol", f.c.tol, "solver tolerance");
    sub.add_option("--seed", f.c.seed, "RNG seed");
    sub.add_option("--out", f.c.out, "output file (stdout when absent)");
    sub.add_option("--format", f.c.format, "csv or json");
    sub.add_option("--suite", f.suites, "verification suite; repeatable");
    sub.add_option("--poly", f.c.poly, "JSON polynomial");
    sub.add_option("--inject-fault", f.c.fault, "corrupt one ingredient on purpose (frostman)");
}

const char* describe(const std::string& command) {
    static const std::map<std::string, const char*> text{
        {"cap", "capacity of a set, or the capacity chain of a model set"},
        {"eqmeasure", "equilibrium measure nodes and weights"},
        {"chebyshev", "weighted Chebyshev polynomial of a given degree"},
        {"orthopoly", "orthonormal polynomials in w dmu_K"},
        {"widom", "Widom factors and lower bounds up to a total degree"},
        {"tau", "directional Chebyshev constants"},
        {"profile", "directional constant along a grid of directions"},
        {"mahler", "Mahler measure of a polynomial"},
        {"verify", "run invariant suites"}};
    const auto it = text.find(command);
    return it == text.end() ? "" : it->second;
}

RunConfig assemble(const CLI::App& sub, const Flags& f) {
    RunConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw UsageError("config", "cannot open " + f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config", e.what());
        }
        c = widom::cli::config_from_json(j);
    }
    c.command = sub.get_name();
    const auto given = [&](const char* flag) { return sub.count(flag) > 0; };
    if (given("--set")) c.set = f.c.set;
    if (given("--weight")) c.weight = f.c.weight;
    if (given("--degree")) c.degree = f.c.degree;
    if (given("--max-total-degree")) c.max_total_degree = f.c.max_total_degree;
    if (given("--grid")) c.grid = f.c.grid;
    if (given("--nodes")) c.nodes = f.c.nodes;
    if (given("--tol")) c.tol = f.c.tol;
    if (given("--seed")) c.seed = f.c.seed;
    if (given("--out")) c.out = f.c.out;
    if (given("--format")) c.format = f.c.format;
    if (given("--suite")) c.suites = f.suites;
    if (given("--poly")) c.poly = f.c.poly;
    if (given("--inject-fault")) c.fault = f.c.fault;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacities, extremal polynomials, Widom factors and Mahler measures"};
    app.require_subcommand(1);
    Flags flags;
    for (const auto& name : widom::cli::kCommands) bind(*app.add_subcommand(name, describe(name)), flags);
    CLI11_PARSE(app, argc, argv);

    const CLI::App* sub = app.get_subcommands().front();
    try {
        const RunConfig c = assemble(*sub, flags);
        const auto result = widom::cli::run(c);
        const std::string text = widom::cli::render(result, c);
        if (c.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(c.out, std::ios::binary);
            if (!out) throw UsageError("out", "cannot write " + c.out);
            out << text;
        }
        return result.exit_code;
    } catch (const UsageError& e) {
        std::cerr << "usage error [" << e.field() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
