#include "widom/cli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "widom/extremal1d.hpp"
#include "widom/mahler.hpp"

namespace widom::cli {

namespace {

using fmt::Cell;
using fmt::Table;
using nlohmann::json;

Cell num(double x) { return x; }
Cell integer(long long x) { return static_cast<std::int64_t>(x); }
Cell text(std::string s) { return s; }

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

json parse_json(const std::string& field, const std::string& textv) {
    try {
        return json::parse(textv);
    } catch (const json::parse_error& e) {
        throw UsageError(field, std::string("invalid JSON: ") + e.what());
    }
}

template <class T>
T get_field(const json& j, const char* key, const std::string& field) {
    if (!j.contains(key)) throw UsageError(field, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(field, std::string("bad value for '") + key + "': " + e.what());
    }
}

const ProductSet& require_product(const SetSpec& s, const std::string& command) {
    if (const auto* p = std::get_if<ProductSet>(&s)) return *p;
    throw UsageError("set", command + " needs interval, circle or preimage factors, not a model set");
}

const ModelSet& require_model(const SetSpec& s, const std::string& command) {
    if (const auto* m = std::get_if<ModelSet>(&s)) return *m;
    throw UsageError("set", command + " needs a model set name");
}

int max_degree_of(const RunConfig& c) {
    if (c.max_total_degree >= 0) return c.max_total_degree;
    if (!c.degree.empty()) {
        const auto d = parse_degree(c.degree);
        if (d.size() != 1) throw UsageError("degree", "expected a single total degree");
        return d[0];
    }
    throw UsageError("max_total_degree", "a degree bound is required");
}

MultiIndex alpha_of(const RunConfig& c, int dim) {
    if (c.degree.empty()) throw UsageError("degree", "a degree or multi-index is required");
    auto a = parse_degree(c.degree);
    if (static_cast<int>(a.size()) != dim) throw UsageError("degree", "multi-index length must equal the set dimension");
    return a;
}

std::string joined(const std::vector<double>& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + fmt::real(xs[i]);
    return s;
}

Table cmd_cap(const RunConfig& c, const SetSpec& spec) {
    Table t;
    if (const auto* m = std::get_if<ModelSet>(&spec)) {
        t.columns = {"set", "c", "C", "c_numeric", "tau_minus", "T_lo", "T_hi"};
        const auto cc = capacities_cC(*m);
        const auto tm = tau_minus_model(*m);
        const auto ti = transfinite_interval(*m);
        t.add_row({text(m->name()), num(cc.c), num(cc.C), text(cc.c_numeric ? "true" : "false"),
                   tm ? num(*tm) : Cell{}, num(ti.lo), num(ti.hi)});
        return t;
    }
    const auto& k = std::get<ProductSet>(spec);
    t.columns = {"factor", "set", "capacity"};
    for (int j = 0; j < k.dim(); ++j)
        t.add_row({integer(j), text(k.factors[static_cast<size_t>(j)].describe()),
                   num(capacity(k.factors[static_cast<size_t>(j)]))});
    t.meta.emplace_back("tau_minus", num(tau_minus_product(k)));
    (void)c;
    return t;
}

Table cmd_eqmeasure(const RunConfig& c, const SetSpec& spec) {
    const auto& k = require_product(spec, "eqmeasure");
    Table t;
    t.columns = {"factor", "re", "im", "weight"};
    for (int j = 0; j < k.dim(); ++j) {
        const auto mu = equilibrium_measure(k.factors[static_cast<size_t>(j)], c.nodes > 0 ? c.nodes : kDefaultNodes);
        for (size_t i = 0; i < mu.nodes.size(); ++i)
            t.add_row({integer(j), num(mu.nodes[i].real()), num(mu.nodes[i].imag()), num(mu.weights[i])});
        t.meta.emplace_back("capacity_" + std::to_string(j), num(capacity(k.factors[static_cast<size_t>(j)])));
        t.meta.emplace_back("total_mass_" + std::to_string(j), num(mu.total_mass));
    }
    return t;
}

Table cmd_chebyshev(const RunConfig& c, const SetSpec& spec) {
    Table t;
    t.columns = {"alpha", "re", "im"};
    if (const auto* m = std::get_if<ModelSet>(&spec)) {
        if (!c.weight.empty()) throw UsageError("weight", "model sets take w = 1 only");
        const auto a = alpha_of(c, m->dim());
        (void)model_widom_sup(*m, a);  // refuses sets whose Chebyshev polynomials are not monomials
        t.add_row({text(fmt::alpha_text(a)), num(1.0), num(0.0)});
        t.meta.emplace_back("norm", num(monomial_sup_norm(*m, a)));
        t.meta.emplace_back("widom_sup", num(model_widom_sup(*m, a)));
        return t;
    }
    const auto& k = std::get<ProductSet>(spec);
    const auto w = parse_weight(c.weight, k.dim());
    const auto a = alpha_of(c, k.dim());
    ChebyshevOptions opt;
    if (c.grid > 0) opt.grid_per_interval = c.grid;
    opt.rel_tol = c.tol;
    const auto q = product_chebyshev(k, w, a, opt);
    for (const auto& [b, v] : q.poly.terms()) t.add_row({text(fmt::alpha_text(b)), num(v.real()), num(v.imag())});
    t.meta.emplace_back("norm", num(q.norm));
    t.meta.emplace_back("widom_sup", num(q.norm / std::pow(tau_minus_product(k), total_degree(a))));
    for (size_t j = 0; j < q.factors.size(); ++j)
        if (!q.factors[j].extreme_points.empty())
            t.meta.emplace_back("extreme_points_" + std::to_string(j), text(joined(q.factors[j].extreme_points)));
    return t;
}

Table cmd_orthopoly(const RunConfig& c, const SetSpec& spec) {
    const auto& k = require_product(spec, "orthopoly");
    const auto w = parse_weight(c.weight, k.dim());
    Table t;
    if (k.dim() == 1) {
        const int n = max_degree_of(c);
        const auto& set = k.factors[0];
        const auto basis = monic_orthogonal(set, w.factors[0], n, c.nodes);
        t.columns = {"k", "monic_norm", "W2sq", "b", "a2", "verblunsky_re", "verblunsky_im"};
        const double cap = capacity(set);
        for (int i = 0; i <= n; ++i) {
            const auto u = static_cast<size_t>(i);
            const double nk = basis.monic_norms[u];
            const double w2 = nk / std::pow(cap, i);
            Cell b, a2, vr, vi;
            if (u < basis.b.size()) b = num(basis.b[u]);
            if (u < basis.a2.size()) a2 = num(basis.a2[u]);
            if (u < basis.verblunsky.size()) {
                vr = num(basis.verblunsky[u].real());
                vi = num(basis.verblunsky[u].imag());
            }
            t.add_row({integer(i), num(nk), num(w2 * w2), b, a2, vr, vi});
        }
        return t;
    }
    t.columns = {"alpha", "degree", "norm", "W2sq"};
    const double tau = tau_minus_product(k);
    for (const auto& a : indices_up_to(k.dim(), max_degree_of(c))) {
        const auto v = product_orthogonal(k, w, a);
        const double w2 = v.norm / std::pow(tau, total_degree(a));
        t.add_row({text(fmt::alpha_text(a)), integer(total_degree(a)), num(v.norm), num(w2 * w2)});
    }
    return t;
}

Table cmd_widom(const RunConfig& c, const SetSpec& spec) {
    Table t;
    t.columns = fmt::widom_columns();
    const int d = max_degree_of(c);
    if (const auto* m = std::get_if<ModelSet>(&spec)) {
        if (!c.weight.empty()) throw UsageError("weight", "model sets take w = 1 only");
        const double tau = *tau_minus_model(*m);
        for (const auto& a : indices_up_to(m->dim(), d)) {
            // Monomials are orthogonal and extremal on the polydisk and ball2;
            // ||z^a||^2 is 1 on the torus and a! / (|a| + 1)! on the sphere.
            const double winf = model_widom_sup(*m, a);
            const double l2 = m->kind == ModelSet::Kind::Polydisk
                                  ? 1.0
                                  : sphere_l2_norm_squared(SparsePolyND::monomial(a));
            const int deg = total_degree(a);
            const double w2sq = l2 / std::pow(tau, 2 * deg);
            // L^2 floors: Mahler's binomial bound on the torus, the radial bound on the sphere.
            const double floor_l2 = m->kind == ModelSet::Kind::Polydisk
                                        ? mahler_polydisk_l2_floor(a, 1.0)
                                        : ball_l2_floor(deg, 1.0) / std::pow(tau, 2 * deg);
            t.add_row({text(fmt::alpha_text(a)), integer(deg), num(w2sq), num(winf), num(1.0), num(tau),
                       num(floor_l2), num(1.0), Cell{}, Cell{}, text(""),
                       text(w2sq >= floor_l2 - 1e-6 && winf >= 1.0 - 1e-6 ? "true" : "false")});
        }
        return t;
    }
    const auto& k = std::get<ProductSet>(spec);
    const auto w = parse_weight(c.weight, k.dim());
    for (const auto& a : indices_up_to(k.dim(), d)) t.add_row(fmt::widom_row(widom_report(k, w, a)));
    return t;
}

Table cmd_tau(const RunConfig& c, const SetSpec& spec) {
    if (std::holds_alternative<ModelSet>(spec)) return cmd_cap(c, spec);
    const auto& k = std::get<ProductSet>(spec);
    Table t;
    t.columns = {"factor", "set", "capacity"};
    for (int j = 0; j < k.dim(); ++j)
        t.add_row({integer(j), text(k.factors[static_cast<size_t>(j)].describe()),
                   num(capacity(k.factors[static_cast<size_t>(j)]))});
    t.meta.emplace_back("tau_minus", num(tau_minus_product(k)));
    return t;
}

Table cmd_profile(const RunConfig& c, const SetSpec& spec) {
    const auto& m = require_model(spec, "profile");
    const auto p = profile_minimum(m, c.grid > 0 ? c.grid : 1001);
    const auto cc = capacities_cC(m);
    Table t;
    t.columns = {"theta1", "theta2", "tau", "marker"};
    const auto best = static_cast<size_t>(std::min_element(p.values.begin(), p.values.end()) - p.values.begin());
    for (size_t i = 0; i < p.values.size(); ++i)
        t.add_row({num(p.theta_grid[i][0]), num(p.theta_grid[i][1]), num(p.values[i]), text(i == best ? "min" : "")});
    t.meta.emplace_back("theta1_min", num(p.theta_min[0]));
    t.meta.emplace_back("tau_minus", num(p.tau_minus));
    t.meta.emplace_back("c", num(cc.c));
    t.meta.emplace_back("C", num(cc.C));
    return t;
}

Table cmd_mahler(const RunConfig& c, const SetSpec& spec) {
    if (c.poly.empty()) throw UsageError("poly", "mahler needs a polynomial");
    const auto p = parse_poly(c.poly);
    ProductSet k;
    bool polydisk = false;
    if (const auto* m = std::get_if<ModelSet>(&spec)) {
        if (m->kind != ModelSet::Kind::Polydisk) throw UsageError("set", "Mahler measure needs a product set or a polydisk");
        k.factors.assign(static_cast<size_t>(m->dim()), CompactSet1D::unit_circle());
        polydisk = true;
    } else {
        k = std::get<ProductSet>(spec);
    }
    if (p.dim() != k.dim()) throw UsageError("poly", "polynomial dimension must equal the set dimension");
    Table t;
    t.columns = {"alpha", "abs_coeff", "bound", "ratio", "holds"};
    if (k.dim() == 1) {
        ComplexCoeffs cs(static_cast<size_t>(p.degree_in(0) + 1));
        for (const auto& [a, v] : p.terms()) cs[static_cast<size_t>(a[0])] = v;
        const auto r = mahler_1d(cs, k.factors[0], MahlerMethod::RootsPotential);
        const auto q = mahler_1d(cs, k.factors[0], MahlerMethod::Quadrature, c.tol);
        for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
            const auto b = coeff_bound_1d(cs, k.factors[0], i);
            t.add_row({text(std::to_string(i)), num(b.coeff), num(b.bound), num(b.ratio()), text(b.holds ? "true" : "false")});
        }
        t.meta.emplace_back("mahler", num(r.value));
        t.meta.emplace_back("method", text(to_string(r.method)));
        t.meta.emplace_back("crosscheck", num(q.value));
        t.meta.emplace_back("crosscheck_method", text(to_string(q.method)));
        if (r.certified_floor) t.meta.emplace_back("certified_floor", num(*r.certified_floor));
        return t;
    }
    const auto r = mahler_nd(p, k, MahlerMethod::Recursive, c.tol);
    for (const auto& [a, v] : p.terms()) {
        const auto b = coeff_bound_nd(p, k, a);
        t.add_row({text(fmt::alpha_text(a)), num(b.coeff), num(b.bound), num(b.ratio()), text(b.holds ? "true" : "false")});
    }
    t.meta.emplace_back("mahler", num(r.value));
    t.meta.emplace_back("method", text(to_string(r.method)));
    if (polydisk) t.meta.emplace_back("polydisk_floor", num(mahler_polydisk_floor(p.leading_index())));
    return t;
}

}  // namespace

json to_json(const RunConfig& c) {
    return {{"command", c.command}, {"set", c.set},     {"weight", c.weight}, {"degree", c.degree},
            {"max_total_degree", c.max_total_degree}, {"grid", c.grid}, {"nodes", c.nodes},
            {"tol", c.tol},         {"seed", c.seed},   {"out", c.out},       {"format", c.format},
            {"suites", c.suites},   {"poly", c.poly},   {"fault", c.fault}};
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("config", "expected a JSON object");
    RunConfig c;
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "command") c.command = v.get<std::string>();
            else if (key == "set") c.set = v.get<std::string>();
            else if (key == "weight") c.weight = v.get<std::string>();
            else if (key == "degree") c.degree = v.get<std::string>();
            else if (key == "max_total_degree") c.max_total_degree = v.get<int>();
            else if (key == "grid") c.grid = v.get<int>();
            else if (key == "nodes") c.nodes = v.get<int>();
            else if (key == "tol") c.tol = v.get<double>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "out") c.out = v.get<std::string>();
            else if (key == "format") c.format = v.get<std::string>();
            else if (key == "suites") c.suites = v.get<std::vector<std::string>>();
            else if (key == "poly") c.poly = v.get<std::string>();
            else if (key == "fault") c.fault = v.get<std::string>();
            else throw UsageError(key, "unknown configuration key");
        } catch (const json::exception& e) {
            throw UsageError(key, e.what());
        }
    }
    return c;
}

void validate(const RunConfig& c) {
    if (!contains(kCommands, c.command)) throw UsageError("command", "unknown command '" + c.command + "'");
    if (c.format != "csv" && c.format != "json") throw UsageError("format", "expected csv or json");
    if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw UsageError("tol", "tolerance must be positive");
    if (c.grid < 0) throw UsageError("grid", "must be >= 0");
    if (c.nodes != 0 && c.nodes < 8) throw UsageError("nodes", "must be >= 8");
    if (c.max_total_degree < -1) throw UsageError("max_total_degree", "must be >= 0");
    for (const auto& s : c.suites)
        if (!contains(kSuites, s)) throw UsageError("suites", "unknown suite '" + s + "'");
    if (!c.fault.empty() && c.fault != "frostman") throw UsageError("fault", "unknown fault '" + c.fault + "'");
    if (c.command != "verify" && c.set.empty()) throw UsageError("set", "required for " + c.command);
    if (c.command == "mahler" && c.poly.empty()) throw UsageError("poly", "required for mahler");
    if ((c.command == "widom" || c.command == "orthopoly") && c.degree.empty() && c.max_total_degree < 0)
        throw UsageError("max_total_degree", "required for " + c.command);
    if (c.command == "chebyshev" && c.degree.empty()) throw UsageError("degree", "required for chebyshev");
    if (!c.degree.empty()) (void)parse_degree(c.degree);
}

CompactSet1D parse_set1d(const json& j) {
    if (!j.is_object()) throw UsageError("set", "descriptor must be a JSON object");
    const auto type = get_field<std::string>(j, "type", "set");
    try {
        if (type == "intervals") {
            std::vector<Interval> parts;
            for (const auto& p : get_field<std::vector<std::vector<double>>>(j, "data", "set")) {
                if (p.size() != 2) throw UsageError("set", "each interval needs two endpoints");
                parts.push_back({p[0], p[1]});
            }
            return CompactSet1D::intervals(std::move(parts));
        }
        if (type == "unit_circle") return CompactSet1D::unit_circle();
        if (type == "circle") {
            const auto c = get_field<std::vector<double>>(j, "center", "set");
            if (c.size() != 2) throw UsageError("set", "center must be [re, im]");
            return CompactSet1D::circle({c[0], c[1]}, get_field<double>(j, "radius", "set"));
        }
        if (type == "preimage")
            return CompactSet1D::preimage(RealPolynomial(get_field<std::vector<double>>(j, "coeffs", "set")));
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError("set", e.what());
    }
    throw UsageError("set", "unknown set type '" + type + "'");
}

Weight1D parse_weight1d(const json& j) {
    if (!j.is_object()) throw UsageError("weight", "descriptor must be a JSON object");
    const auto type = get_field<std::string>(j, "type", "weight");
    try {
        if (type == "constant") return Weight1D::constant(get_field<double>(j, "c", "weight"));
        if (type == "abs_power")
            return Weight1D::abs_power(get_field<double>(j, "x0", "weight"), get_field<double>(j, "p", "weight"),
                                       j.contains("s") ? get_field<double>(j, "s", "weight") : 1.0);
        if (type == "piecewise_constant")
            return Weight1D::piecewise_constant(get_field<std::vector<double>>(j, "breakpoints", "weight"),
                                                get_field<std::vector<double>>(j, "values", "weight"));
        if (type == "product") {
            std::vector<Weight1D> fs;
            for (const auto& f : get_field<json>(j, "factors", "weight")) fs.push_back(parse_weight1d(f));
            return Weight1D::product(std::move(fs));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError("weight", e.what());
    }
    throw UsageError("weight", "unknown weight type '" + type + "'");
}

SetSpec parse_set(const std::string& t) {
    const auto first = t.find_first_not_of(" \t\n");
    if (first == std::string::npos) throw UsageError("set", "empty descriptor");
    if (t[first] != '{' && t[first] != '[') {
        try {
            return ModelSet::parse(t);
        } catch (const Error& e) {
            throw UsageError("set", e.what());
        }
    }
    const json j = parse_json("set", t);
    ProductSet k;
    if (j.is_array()) {
        if (j.empty()) throw UsageError("set", "empty product");
        for (const auto& f : j) k.factors.push_back(parse_set1d(f));
    } else {
        k.factors.push_back(parse_set1d(j));
    }
    return k;
}

ProductWeight parse_weight(const std::string& t, int dim) {
    if (t.empty()) return ProductWeight::unit(dim);
    const json j = parse_json("weight", t);
    ProductWeight w;
    if (j.is_array()) {
        if (static_cast<int>(j.size()) != dim) throw UsageError("weight", "one weight per factor is required");
        for (const auto& f : j) w.factors.push_back(parse_weight1d(f));
    } else {
        w.factors.assign(static_cast<size_t>(dim), parse_weight1d(j));
    }
    return w;
}

SparsePolyND parse_poly(const std::string& t) {
    const json j = parse_json("poly", t);
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        throw UsageError("poly", "expected {\"terms\":[...]} with at least one term");
    int n = -1;
    SparsePolyND p;
    for (const auto& term : j["terms"]) {
        const auto a = get_field<MultiIndex>(term, "alpha", "poly");
        if (a.empty() || std::any_of(a.begin(), a.end(), [](int v) { return v < 0; }))
            throw UsageError("poly", "alpha must be a nonempty list of nonnegative integers");
        if (n < 0) {
            n = static_cast<int>(a.size());
            p = SparsePolyND(n);
        } else if (static_cast<int>(a.size()) != n) {
            throw UsageError("poly", "all terms need the same number of variables");
        }
        const double re = term.contains("re") ? get_field<double>(term, "re", "poly") : 0.0;
        const double im = term.contains("im") ? get_field<double>(term, "im", "poly") : 0.0;
        p.add(a, {re, im});
    }
    if (p.is_zero()) throw UsageError("poly", "zero polynomial");
    return p;
}

MultiIndex parse_degree(const std::string& t) {
    MultiIndex a;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || v < 0) throw UsageError("degree", "expected nonnegative integers, got '" + t + "'");
        a.push_back(v);
    }
    if (a.empty()) throw UsageError("degree", "empty degree");
    return a;
}

CommandOutput run(const RunConfig& c) {
    validate(c);
    CommandOutput out;
    if (c.command == "verify") {
        const auto rep = verify(c.suites, c.seed, c.fault);
        out.summary = rep.to_json();
        out.table.columns = {"suite", "invariant", "checks", "failures", "witness"};
        for (const auto& r : rep.invariants)
            out.table.add_row({text(r.suite), text(r.name), integer(r.checks), integer(r.failures), text(r.witness)});
        out.table.meta.emplace_back("pass", text(rep.passed() ? "true" : "false"));
        out.exit_code = rep.passed() ? 0 : 1;
        return out;
    }
    const SetSpec spec = parse_set(c.set);
    if (c.command == "cap") out.table = cmd_cap(c, spec);
    else if (c.command == "eqmeasure") out.table = cmd_eqmeasure(c, spec);
    else if (c.command == "chebyshev") out.table = cmd_chebyshev(c, spec);
    else if (c.command == "orthopoly") out.table = cmd_orthopoly(c, spec);
    else if (c.command == "widom") out.table = cmd_widom(c, spec);
    else if (c.command == "tau") out.table = cmd_tau(c, spec);
    else if (c.command == "profile") out.table = cmd_profile(c, spec);
    else if (c.command == "mahler") out.table = cmd_mahler(c, spec);
    return out;
}

std::string render(const CommandOutput& out, const RunConfig& c) {
    if (c.format == "csv") return fmt::to_csv(out.table);
    const json result = c.command == "verify" ? out.summary : fmt::to_json(out.table);
    return fmt::dump(json{{"config", to_json(c)}, {"result", result}}) + "\n";
}

}  // namespace widom::cli
