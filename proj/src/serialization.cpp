#include "nabla/serialization.hpp"

#include <sstream>
#include <string>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

const json& require_key(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw usage_error(std::string("missing key '") + key + "' in document");
    }
    return *it;
}

json term_to_json(const ExpPowerTerm& t) {
    return json{{"kappa", t.kappa}, {"c", t.c}, {"p", t.p}};
}

ExpPowerTerm term_from_json(const json& j) {
    ExpPowerTerm t;
    t.kappa = require_key(j, "kappa").get<double>();
    t.c = require_key(j, "c").get<double>();
    t.p = require_key(j, "p").get<double>();
    return t;
}

json form_to_json(const FractionalForm& f) {
    return json{{"prefactor", term_to_json(f.prefactor)},
                {"operand", term_to_json(f.operand)},
                {"order", f.order}};
}

FractionalForm form_from_json(const json& j) {
    FractionalForm f;
    f.prefactor = term_from_json(require_key(j, "prefactor"));
    f.operand = term_from_json(require_key(j, "operand"));
    f.order = require_key(j, "order").get<double>();
    return f;
}

}  // namespace

json grid_to_json(const GridFunction& u) {
    return json{{"base", u.base}, {"values", u.values}};
}

GridFunction grid_from_json(const json& j) {
    GridFunction u;
    u.base = require_key(j, "base").get<std::int64_t>();
    u.values = require_key(j, "values").get<std::vector<double>>();
    if (u.values.empty()) {
        throw usage_error("grid function must have at least one value");
    }
    return u;
}

json structured_to_json(const StructuredFunction& f) {
    json terms = json::array();
    for (const ExpPowerTerm& t : f.terms) {
        terms.push_back(term_to_json(t));
    }
    json out{{"terms", std::move(terms)}};
    if (f.f1f1) {
        out["f1f1"] = json{
            {"a", f.f1f1->a}, {"b", f.f1f1->b}, {"scale", f.f1f1->scale}};
    } else {
        out["f1f1"] = nullptr;
    }
    return out;
}

StructuredFunction structured_from_json(const json& j) {
    StructuredFunction f;
    for (const json& t : require_key(j, "terms")) {
        f.terms.push_back(term_from_json(t));
    }
    if (f.terms.empty()) {
        throw usage_error("structured function must have at least one term");
    }
    const auto it = j.find("f1f1");
    if (it != j.end() && !it->is_null()) {
        ConfluentFactor h;
        h.a = require_key(*it, "a").get<double>();
        h.b = require_key(*it, "b").get<double>();
        h.scale = require_key(*it, "scale").get<double>();
        f.f1f1 = h;
        if (f.terms.size() != 1) {
            throw usage_error(
                "structured function with confluent factor must have exactly "
                "one term");
        }
    }
    return f;
}

json equation_to_json(const EquationParams& ep) {
    return json{{"alpha_sq", ep.alpha_sq},
                {"beta", ep.beta},
                {"gamma", ep.gamma},
                {"delta", ep.delta},
                {"rho", ep.rho}};
}

EquationParams equation_from_json(const json& j) {
    EquationParams ep;
    ep.alpha_sq = require_key(j, "alpha_sq").get<double>();
    ep.beta = require_key(j, "beta").get<double>();
    ep.gamma = require_key(j, "gamma").get<double>();
    ep.delta = require_key(j, "delta").get<double>();
    ep.rho = require_key(j, "rho").get<int>();
    return ep;
}

json solution_to_json(const SolutionRecord& sr) {
    json ff = form_to_json(sr.fractional_form);
    ff["rewrite_applied"] = sr.rewrite_applied;
    ff["literal"] = form_to_json(sr.literal_form);
    ff["order_display"] = sr.order_display;
    return json{{"equation", equation_to_json(sr.equation)},
                {"branch", to_string(sr.branch)},
                {"constant_symbol", sr.arbitrary_constant_symbol},
                {"derivation",
                 json{{"tau", sr.derivation.tau},
                      {"rate", sr.derivation.rate},
                      {"constants",
                       json{{"a", sr.derivation.const_a},
                            {"b", sr.derivation.const_b},
                            {"c", sr.derivation.const_c},
                            {"d", sr.derivation.const_d}}}}},
                {"fractional_form", std::move(ff)},
                {"closed_form", structured_to_json(sr.closed_form)}};
}

SolutionRecord solution_from_json(const json& j) {
    SolutionRecord sr;
    sr.equation = equation_from_json(require_key(j, "equation"));
    sr.branch = branch_from_string(require_key(j, "branch").get<std::string>());
    sr.derivation = derive_branches(sr.equation);
    const json& ff = require_key(j, "fractional_form");
    sr.fractional_form = form_from_json(ff);
    if (const auto it = ff.find("rewrite_applied"); it != ff.end()) {
        sr.rewrite_applied = it->get<bool>();
    }
    if (const auto it = ff.find("literal"); it != ff.end()) {
        sr.literal_form = form_from_json(*it);
    } else {
        sr.literal_form = sr.fractional_form;
    }
    if (const auto it = ff.find("order_display"); it != ff.end()) {
        sr.order_display = it->get<std::string>();
    }
    if (const auto it = j.find("constant_symbol"); it != j.end()) {
        sr.arbitrary_constant_symbol = it->get<std::string>();
    }
    sr.closed_form = structured_from_json(require_key(j, "closed_form"));
    return sr;
}

json report_to_json(const SuiteReport& rep) {
    json checks = json::array();
    for (const CheckResult& c : rep.checks) {
        checks.push_back(json{{"name", c.name},
                              {"max_error", c.max_error},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
    }
    return json{{"checks", std::move(checks)},
                {"seed", rep.seed},
                {"trials", rep.trials}};
}

GridFunction parse_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw usage_error("CSV input is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "t,value") {
        throw usage_error("CSV header must be exactly 't,value'");
    }
    GridFunction u;
    bool first = true;
    std::int64_t expected = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw usage_error("CSV row missing comma: " + line);
        }
        std::int64_t t = 0;
        double v = 0.0;
        try {
            std::size_t used = 0;
            t = std::stoll(line.substr(0, comma), &used);
            if (used != comma) {
                throw std::invalid_argument("trailing characters");
            }
            const std::string vs = line.substr(comma + 1);
            v = std::stod(vs, &used);
            if (used != vs.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw usage_error("CSV row is not '<int>,<real>': " + line);
        }
        if (first) {
            u.base = t;
            expected = t;
            first = false;
        }
        if (t != expected) {
            std::ostringstream os;
            os << "CSV t values must be ascending and contiguous; expected "
               << expected << ", got " << t;
            throw usage_error(os.str());
        }
        u.values.push_back(v);
        ++expected;
    }
    if (u.values.empty()) {
        throw usage_error("CSV input has no data rows");
    }
    return u;
}

}  // namespace nabla
