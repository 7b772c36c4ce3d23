#include "hyperaff/io.hpp"

#include <cctype>

#include "json.hpp"

namespace hyperaff {

namespace {

using nlohmann::json;

struct ScalarParser {
    const std::string& s;
    const SymbolRegistry& reg;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("scalar literal, position " + std::to_string(pos) +
                                    ": " + what + " in '" + s + "'");
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            fail("expected integer");
        return Int(s.substr(start, pos - start));
    }

    Rational rational() {
        Int num = integer();
        if (!eat('/')) return Rational(num);
        Int den = integer();
        if (den == 0) fail("zero denominator");
        return Rational(num, den);
    }

    SymScalar atom() {
        skip_ws();
        if (pos >= s.size()) fail("expected atom");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-')
            return SymScalar(rational());
        // identifier: sqrt keyword or a declared symbol name
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name.empty()) fail("expected atom");
        if (name == "sqrt") {
            if (!eat('(')) fail("expected '(' after sqrt");
            Rational d = rational();
            if (!eat(')')) fail("expected ')'");
            if (d <= 0) fail("sqrt of non-positive rational");
            return SymScalar::sqrt(d);
        }
        if (!reg.has(name)) fail("unknown symbol '" + name + "'");
        auto [sym, exp] = reg.resolve(name);
        return SymScalar(Rational(1), symbol_monomial(sym, exp));
    }

    SymScalar term() {
        SymScalar out = atom();
        while (eat('*')) out = out * atom();
        return out;
    }

    SymScalar scalar() {
        SymScalar out;
        skip_ws();
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        for (;;) {
            SymScalar t = term();
            out += sign < 0 ? -t : t;
            skip_ws();
            if (eat('+')) sign = 1;
            else if (eat('-')) sign = -1;
            else break;
        }
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return out;
    }
};

std::string monomial_to_grammar(const Monomial& m, const SymbolRegistry& reg) {
    std::string out;
    auto append = [&](const std::string& f) {
        if (!out.empty()) out += "*";
        out += f;
    };
    if (m.radicand != 1) append("sqrt(" + m.radicand.str() + ")");
    for (const auto& [sym, exp] : m.trans) {
        std::string factor = sym.name;
        if (exp < 0) {
            factor.clear();
            for (const auto& [name, base] : reg.reciprocals())
                if (base == sym.name) { factor = name; break; }
            if (factor.empty())
                throw std::invalid_argument("no reciprocal name declared for symbol '" +
                                            sym.name + "'");
        }
        int count = exp < 0 ? -exp : exp;
        for (int k = 0; k < count; ++k) append(factor);
    }
    return out;
}

CNumber entry_from_json(const json& j, const SymbolRegistry& reg) {
    if (j.is_number()) return CNumber::from_double({j.get<double>(), 0.0});
    if (j.is_string()) return CNumber(parse_scalar(j.get<std::string>(), reg), SymScalar());
    if (j.is_object()) {
        const json& re = j.at("re");
        const json& im = j.value("im", json(0.0));
        if (re.is_string() && im.is_string())
            return CNumber(parse_scalar(re.get<std::string>(), reg),
                           parse_scalar(im.get<std::string>(), reg));
        auto part = [&](const json& p) {
            if (p.is_string()) return static_cast<double>(parse_scalar(p.get<std::string>(), reg).approx());
            return p.get<double>();
        };
        return CNumber::from_double({part(re), part(im)});
    }
    throw std::invalid_argument("matrix entry must be a number, string, or {re, im} object");
}

json entry_to_json(const CNumber& c, const SymbolRegistry& reg) {
    if (c.is_exact()) {
        if (c.im().is_zero()) return scalar_to_grammar(c.re(), reg);
        return json{{"re", scalar_to_grammar(c.re(), reg)},
                    {"im", scalar_to_grammar(c.im(), reg)}};
    }
    std::complex<double> z = c.approx();
    if (z.imag() == 0.0) return z.real();
    return json{{"re", z.real()}, {"im", z.imag()}};
}

AffineMap map_from_json(const json& j, std::size_t n, const SymbolRegistry& reg) {
    const json& ja = j.at("A");
    const json& jb = j.at("a");
    if (ja.size() != n || jb.size() != n)
        throw std::invalid_argument("affine map blocks must have n rows/entries");
    CMatrix A(n, n);
    CVector a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ja[i].size() != n) throw std::invalid_argument("A must be n x n");
        for (std::size_t k = 0; k < n; ++k) A.at(i, k) = entry_from_json(ja[i][k], reg);
        a[i] = entry_from_json(jb[i], reg);
    }
    return AffineMap(std::move(A), std::move(a));
}

json map_to_json(const AffineMap& f, const SymbolRegistry& reg) {
    json ja = json::array(), jb = json::array();
    for (std::size_t i = 0; i < f.n; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < f.n; ++k) row.push_back(entry_to_json(f.A.at(i, k), reg));
        ja.push_back(std::move(row));
        jb.push_back(entry_to_json(f.a[i], reg));
    }
    return json{{"A", std::move(ja)}, {"a", std::move(jb)}};
}

}  // namespace

SymScalar parse_scalar(const std::string& text, const SymbolRegistry& registry) {
    ScalarParser p{text, registry};
    return p.scalar();
}

std::string scalar_to_grammar(const SymScalar& x, const SymbolRegistry& registry) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : x.terms()) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        std::string mono = m.is_one() ? "" : monomial_to_grammar(m, registry);
        if (mono.empty()) {
            out += to_string(ac);
        } else if (ac == 1) {
            out += mono;
        } else {
            out += to_string(ac) + "*" + mono;
        }
    }
    return out;
}

ProblemFile parse_problem(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("problem file: ") + e.what());
    }
    ProblemFile pf;
    pf.n = j.at("n").get<std::size_t>();
    pf.mode = j.value("mode", std::string("auto"));
    if (pf.mode != "exact" && pf.mode != "numeric" && pf.mode != "auto")
        throw std::invalid_argument("mode must be exact, numeric, or auto");

    if (j.contains("symbols")) {
        const json& js = j.at("symbols");
        pf.independence_declared = js.value("independent", false);
        for (const json& d : js.value("declarations", json::array())) {
            SymbolDecl decl;
            decl.name = d.at("name").get<std::string>();
            if (d.contains("reciprocal_of")) {
                decl.reciprocal_of = d.at("reciprocal_of").get<std::string>();
            } else {
                decl.value = d.at("value").get<double>();
            }
            pf.symbol_decls.push_back(std::move(decl));
        }
    }
    for (const auto& d : pf.symbol_decls) {
        if (d.reciprocal_of.empty())
            pf.registry.declare_transcendental(d.name, static_cast<long double>(d.value));
        else
            pf.registry.declare_reciprocal(d.name, d.reciprocal_of);
    }
    pf.registry.set_independence_declared(pf.independence_declared);

    for (const json& g : j.at("generators"))
        pf.generators.push_back(map_from_json(g, pf.n, pf.registry));
    if (pf.generators.empty()) throw std::invalid_argument("at least one generator required");

    for (const json& w : j.value("witnesses", json::array()))
        pf.witnesses.push_back(map_from_json(w, pf.n, pf.registry));

    if (j.contains("normal_form")) {
        const json& nf = j.at("normal_form");
        Partition eta;
        for (const json& b : nf.at("eta")) eta.eta.push_back(b.get<std::size_t>());
        if (eta.total() != pf.n + 1)
            throw std::invalid_argument("eta must partition n + 1");
        const json& jp = nf.at("P");
        CMatrix P(pf.n + 1, pf.n + 1);
        if (jp.size() != pf.n + 1) throw std::invalid_argument("P must be (n+1) x (n+1)");
        for (std::size_t i = 0; i <= pf.n; ++i) {
            if (jp[i].size() != pf.n + 1)
                throw std::invalid_argument("P must be (n+1) x (n+1)");
            for (std::size_t k = 0; k <= pf.n; ++k)
                P.at(i, k) = entry_from_json(jp[i][k], pf.registry);
        }
        pf.normal_form_P = std::move(P);
        pf.normal_form_eta = std::move(eta);
    }
    return pf;
}

std::string serialize_problem(const ProblemFile& pf) {
    json j;
    j["schema"] = 1;
    j["n"] = pf.n;
    j["mode"] = pf.mode;
    json decls = json::array();
    for (const auto& d : pf.symbol_decls) {
        json e{{"name", d.name}};
        if (d.reciprocal_of.empty())
            e["value"] = d.value;
        else
            e["reciprocal_of"] = d.reciprocal_of;
        decls.push_back(std::move(e));
    }
    j["symbols"] = json{{"independent", pf.independence_declared},
                        {"declarations", std::move(decls)}};
    json gens = json::array();
    for (const auto& g : pf.generators) gens.push_back(map_to_json(g, pf.registry));
    j["generators"] = std::move(gens);
    if (!pf.witnesses.empty()) {
        json ws = json::array();
        for (const auto& w : pf.witnesses) ws.push_back(map_to_json(w, pf.registry));
        j["witnesses"] = std::move(ws);
    }
    if (pf.normal_form_P) {
        json rows = json::array();
        for (std::size_t i = 0; i < pf.normal_form_P->rows(); ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < pf.normal_form_P->cols(); ++k)
                row.push_back(entry_to_json(pf.normal_form_P->at(i, k), pf.registry));
            rows.push_back(std::move(row));
        }
        j["normal_form"] = json{{"P", std::move(rows)},
                                {"eta", pf.normal_form_eta->eta}};
    }
    return j.dump(2) + "\n";
}

}  // namespace hyperaff
