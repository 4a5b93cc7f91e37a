#include <cmath>
#include <limits>

#include "doctest.h"
#include "widom/cli.hpp"

using namespace widom;
using namespace widom::cli;

namespace {

const char* kSquare = R"([{"type":"intervals","data":[[-1,1]]},{"type":"intervals","data":[[-1,1]]}])";

RunConfig widom_config(const std::string& set, int d) {
    RunConfig c;
    c.command = "widom";
    c.set = set;
    c.max_total_degree = d;
    return c;
}

size_t column(const fmt::Table& t, const std::string& name) {
    for (size_t j = 0; j < t.columns.size(); ++j)
        if (t.columns[j] == name) return j;
    FAIL("missing column " << name);
    return 0;
}

double real_cell(const fmt::Cell& c) { return std::get<double>(c); }

std::string field_of(const RunConfig& c) {
    try {
        (void)run(c);
    } catch (const UsageError& e) {
        return e.field();
    }
    return {};
}

}  // namespace

TEST_CASE("config round trip") {
    RunConfig c;
    c.command = "verify";
    c.set = "ball2";
    c.weight = R"({"type":"constant","c":2})";
    c.degree = "2,1";
    c.max_total_degree = 4;
    c.grid = 101;
    c.nodes = 64;
    c.tol = 1e-9;
    c.seed = 7;
    c.out = "x.csv";
    c.format = "json";
    c.suites = {"mahler", "sets1d"};
    c.poly = R"({"terms":[]})";
    c.fault = "frostman";
    CHECK(config_from_json(to_json(c)) == c);
    CHECK(config_from_json(nlohmann::json::parse(fmt::dump(to_json(c)))) == c);
    CHECK(config_from_json(to_json(RunConfig{})) == RunConfig{});
    CHECK(config_from_json(nlohmann::json::object()) == RunConfig{});
}

TEST_CASE("usage errors name the failing field") {
    auto base = widom_config(kSquare, 2);
    auto c = base;
    c.format = "xml";
    CHECK(field_of(c) == "format");
    c = base;
    c.tol = 0.0;
    CHECK(field_of(c) == "tol");
    c = base;
    c.tol = -1e-3;
    CHECK(field_of(c) == "tol");
    c = base;
    c.set = "";
    CHECK(field_of(c) == "set");
    c = base;
    c.set = "[{";
    CHECK(field_of(c) == "set");
    c = base;
    c.set = "polydisk:0";
    CHECK(field_of(c) == "set");
    c = base;
    c.command = "plot";
    CHECK(field_of(c) == "command");
    c = base;
    c.max_total_degree = -1;
    CHECK(field_of(c) == "max_total_degree");
    c = base;
    c.weight = R"({"type":"constant","c":-1})";
    CHECK(field_of(c) == "weight");
    c = base;
    c.command = "verify";
    c.suites = {"everything"};
    CHECK(field_of(c) == "suites");
    c = base;
    c.command = "mahler";
    CHECK(field_of(c) == "poly");
    c = base;
    c.command = "chebyshev";
    c.degree = "1,x";
    CHECK(field_of(c) == "degree");
    CHECK_THROWS_AS((void)config_from_json(nlohmann::json{{"colour", "red"}}), UsageError);
    try {
        (void)config_from_json(nlohmann::json{{"seed", "abc"}});
        FAIL("expected a usage error");
    } catch (const UsageError& e) {
        CHECK(e.field() == "seed");
    }
}

TEST_CASE("number formatting") {
    CHECK(fmt::real(0.1) == "0.10000000000000001");
    CHECK(fmt::real(1.0) == "1");
    CHECK(fmt::real(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(fmt::dump(nlohmann::json{{"x", std::nan("")}}, -1) == R"({"x":null})");
    fmt::Table t;
    t.columns = {"a", "b"};
    t.meta.emplace_back("k", 0.5);
    t.add_row({std::string("x,y"), std::int64_t{3}});
    t.add_row({std::monostate{}, std::string("q\"")});
    CHECK(fmt::to_csv(t) == "# k,0.5\na,b\n\"x,y\",3\n,\"q\"\"\"\n");
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidInput);
}

TEST_CASE("widom tables") {
    SUBCASE("square, total degree 3") {
        const auto out = run(widom_config(kSquare, 3));
        REQUIRE(out.table.rows.size() == 10);
        const size_t alpha = column(out.table, "alpha");
        const size_t winf = column(out.table, "Winf");
        const size_t w2 = column(out.table, "W2sq");
        CHECK(std::get<std::string>(out.table.rows[0][alpha]) == "0;0");
        CHECK(std::get<std::string>(out.table.rows[1][alpha]) == "1;0");
        CHECK(std::get<std::string>(out.table.rows[2][alpha]) == "0;1");
        CHECK(real_cell(out.table.rows[0][winf]) == 1.0);
        for (size_t i = 1; i < out.table.rows.size(); ++i) {
            CHECK(real_cell(out.table.rows[i][winf]) >= 2.0 - 1e-9);
            CHECK(real_cell(out.table.rows[i][w2]) >= 2.0 - 1e-9);
        }
        // (1,1) doubles in both variables.
        CHECK(real_cell(out.table.rows[4][winf]) == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("polydisk") {
        const auto out = run(widom_config("polydisk:2", 2));
        REQUIRE(out.table.rows.size() == 6);
        for (const auto& row : out.table.rows) CHECK(real_cell(row[column(out.table, "Winf")]) == 1.0);
    }
    SUBCASE("degree zero") {
        const auto out = run(widom_config(kSquare, 0));
        REQUIRE(out.table.rows.size() == 1);
        CHECK(real_cell(out.table.rows[0][column(out.table, "Winf")]) == 1.0);
        CHECK(real_cell(out.table.rows[0][column(out.table, "W2sq")]) == 1.0);
    }
}

TEST_CASE("determinism") {
    for (const std::string format : {"csv", "json"}) {
        auto c = widom_config(R"([{"type":"intervals","data":[[-1,-0.3],[0.2,1]]},{"type":"unit_circle"}])", 2);
        c.command = "orthopoly";
        c.format = format;
        CHECK(render(run(c), c) == render(run(c), c));
        c = widom_config(kSquare, 3);
        c.weight = R"({"type":"abs_power","x0":0.25,"p":1.5})";
        c.format = format;
        CHECK(render(run(c), c) == render(run(c), c));
    }
    RunConfig v;
    v.command = "verify";
    v.suites = {"modelsets"};
    v.format = "json";
    const std::string first = render(run(v), v);
    CHECK(first == render(run(v), v));
    // The embedded config reloads to the one that produced it.
    CHECK(config_from_json(nlohmann::json::parse(first).at("config")) == v);
}

TEST_CASE("directional profiles") {
    RunConfig c;
    c.command = "profile";
    auto meta = [](const fmt::Table& t, const std::string& key) {
        for (const auto& [k, v] : t.meta)
            if (k == key) return std::get<double>(v);
        FAIL("missing meta " << key);
        return 0.0;
    };
    c.set = "realball2";
    c.grid = 1001;
    auto out = run(c);
    CHECK(out.table.rows.size() == 1001);
    CHECK(std::abs(meta(out.table, "theta1_min") - 0.4) <= 1e-3);
    CHECK(std::abs(meta(out.table, "tau_minus") - 0.4) <= 1e-6);
    c.set = "ball2";
    out = run(c);
    CHECK(std::abs(meta(out.table, "theta1_min") - 0.5) <= 1e-3);
    CHECK(std::abs(meta(out.table, "tau_minus") - std::sqrt(0.5)) <= 1e-6);
    c.grid = 1;
    out = run(c);
    REQUIRE(out.table.rows.size() == 1);
    CHECK(real_cell(out.table.rows[0][column(out.table, "theta1")]) == 1.0);
    CHECK(real_cell(out.table.rows[0][column(out.table, "tau")]) == 1.0);
}

TEST_CASE("verify suites") {
    RunConfig c;
    c.command = "verify";
    c.suites = {"mahler"};
    auto out = run(c);
    CHECK(out.exit_code == 0);
    for (const auto& row : out.table.rows) CHECK(std::get<std::string>(row[0]) == "mahler");
    CHECK(out.summary.at("pass").get<bool>());

    c.fault = "frostman";
    out = run(c);
    CHECK(out.exit_code != 0);
    const auto failed = out.summary.at("failed").get<std::vector<std::string>>();
    REQUIRE(failed.size() == 1);
    CHECK(failed[0] == "frostman");
    bool witnessed = false;
    for (const auto& inv : out.summary.at("invariants"))
        if (inv.at("name") == "frostman") witnessed = !inv.at("witness").get<std::string>().empty();
    CHECK(witnessed);
}

TEST_CASE("other commands") {
    RunConfig c;
    c.command = "cap";
    c.set = R"({"type":"preimage","coeffs":[-2,0,1]})";
    auto out = run(c);
    CHECK(real_cell(out.table.rows[0][column(out.table, "capacity")]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    c.set = "realball2";
    out = run(c);
    CHECK(real_cell(out.table.rows[0][column(out.table, "c")]) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
    CHECK(real_cell(out.table.rows[0][column(out.table, "C")]) == doctest::Approx(0.5));

    c.command = "mahler";
    c.set = R"({"type":"intervals","data":[[-1,1]]})";
    c.poly = R"({"terms":[{"alpha":[2],"re":1},{"alpha":[0],"re":-0.5}]})";
    out = run(c);
    const size_t ratio = column(out.table, "ratio");
    CHECK(real_cell(out.table.rows[2][ratio]) == doctest::Approx(1.0).epsilon(1e-8));

    c.command = "chebyshev";
    c.set = R"({"type":"intervals","data":[[-1,1]]})";
    c.poly.clear();
    c.degree = "4";
    out = run(c);
    double norm = -1.0;
    for (const auto& [k, v] : out.table.meta)
        if (k == "norm") norm = std::get<double>(v);
    CHECK(norm == doctest::Approx(std::pow(2.0, -3)).epsilon(1e-10));
}
