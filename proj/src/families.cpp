#include "lrtriple/families.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace lrt {

namespace {

const char* const kRhoKeys[3] = {"r0", "r1", "r2"};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t p = s.find(sep, start);
        out.push_back(trim(s.substr(start, p == std::string::npos ? std::string::npos : p - start)));
        if (p == std::string::npos) return out;
        start = p + 1;
    }
}

std::uint64_t parse_unsigned(const std::string& s, const std::string& what) {
    if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw InvalidSpec(what + " must be a nonnegative integer, got '" + s + "'");
    }
    return std::stoull(s);
}

// rho_0 rho'_0 rho''_0 required by the family; t must be nonzero for Bdt.
Element rho_product_target(const FamilySpec& s) {
    if (s.family == Family::Bdt) {
        const Element& t = *s.param;
        return -t.pow(1 - static_cast<long long>(s.d / 2));
    }
    return -s.field.one();
}

Element phi_unchecked(const FamilySpec& s, int which, std::size_t i) {
    const Field& f = s.field;
    const long long d = static_cast<long long>(s.d);
    const long long n = static_cast<long long>(i);
    const bool even = i % 2 == 0;
    switch (s.family) {
        case Family::NBGq: {
            const Element& q = *s.param;
            return q * (q.pow(n) - 1) * (q.pow(n - d - 1) - 1) / ((q - 1) * (q - 1));
        }
        case Family::NBG1: return f.from_int(n * (n - d - 1));
        case Family::NBNG: {
            const Element& t = *s.param;
            return even ? t.pow(n / 2) - 1 : t.pow((n - d - 1) / 2) - 1;
        }
        case Family::Bdt: {
            const Element& t = *s.param;
            const Element& rho = *s.rho[static_cast<std::size_t>(which)];
            if (even) return rho * (1 - t.pow(n / 2)) / (1 - t);
            return t / rho * (1 - t.pow((n - d - 1) / 2)) / (1 - t);
        }
        case Family::Bd1: {
            const Element& rho = *s.rho[static_cast<std::size_t>(which)];
            if (even) return f.from_int(n) * rho / 2;
            return f.from_int(n - d - 1) / (2 * rho);
        }
        case Family::B2: {
            const Element& rho = *s.rho[static_cast<std::size_t>(which)];
            return i == 1 ? -rho.inv() : rho;
        }
    }
    throw InvalidSpec("unknown family");
}

void require_valid(const FamilySpec& s) {
    const auto v = validate_spec(s);
    if (!v.empty()) throw InvalidSpec(s.str() + ": violated constraint " + v.front());
}

void require_which(int which) {
    if (which < 0 || which > 2) throw InvalidSpec("which must be 0, 1 or 2");
}

}  // namespace

std::string family_keyword(Family f) {
    switch (f) {
        case Family::NBGq: return "nbg";
        case Family::NBG1: return "nbg1";
        case Family::NBNG: return "nbng";
        case Family::Bdt: return "bdt";
        case Family::Bd1: return "bd1";
        case Family::B2: return "b2";
    }
    return "?";
}

std::string FamilySpec::str() const {
    std::string s = family_keyword(family) + ":";
    std::vector<std::string> parts;
    if (family != Family::B2) parts.push_back("d=" + std::to_string(d));
    if (param) parts.push_back(std::string(family == Family::NBGq ? "q=" : "t=") + param->str());
    for (int k = 0; k < 3; ++k) {
        if (rho[k]) parts.push_back(std::string(kRhoKeys[k]) + "=" + rho[k]->str());
    }
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "," : "") + parts[k];
    return s;
}

std::string FamilySpec::display_name() const {
    const std::string F = field.name();
    auto rhos = [&] {
        std::string r;
        for (int k = 0; k < 3; ++k) r += "," + (rho[k] ? rho[k]->str() : std::string("?"));
        return r;
    };
    const std::string p = param ? param->str() : "?";
    const std::string ds = std::to_string(d);
    switch (family) {
        case Family::NBGq: return "NBG_" + ds + "(" + F + ";" + p + ")";
        case Family::NBG1: return "NBG_" + ds + "(" + F + ";1)";
        case Family::NBNG: return "NBNG_" + ds + "(" + F + ";" + p + ")";
        case Family::Bdt: return "B_" + ds + "(" + F + ";" + p + rhos() + ")";
        case Family::Bd1: return "B_" + ds + "(" + F + ";1" + rhos() + ")";
        case Family::B2: return "B_2(" + F + rhos().replace(0, 1, ";") + ")";
    }
    return "?";
}

Field parse_field(const std::string& raw) {
    const std::string text = trim(raw);
    try {
        if (text == "q" || text == "Q") return Field::rationals();
        if (text.rfind("gf:", 0) == 0) return Field::prime(parse_unsigned(text.substr(3), "prime"));
        if (text.rfind("ratfunc:", 0) == 0) {
            const std::string rest = text.substr(8);
            const std::size_t slash = rest.find('/');
            if (slash == std::string::npos) return Field::rational_functions(Field::rationals(), rest);
            return Field::rational_functions(parse_field(rest.substr(slash + 1)), rest.substr(0, slash));
        }
    } catch (const InvalidContext& e) {
        throw InvalidSpec(std::string("invalid field '") + text + "': " + e.what());
    }
    throw InvalidSpec("invalid field '" + text + "'; expected q, gf:P, ratfunc:VAR or ratfunc:VAR/gf:P");
}

std::string field_descriptor(const Field& f) {
    switch (f.kind()) {
        case FieldKind::rationals: return "q";
        case FieldKind::prime_field: return "gf:" + std::to_string(f.characteristic());
        case FieldKind::rational_functions: {
            const Field b = f.base();
            return "ratfunc:" + f.variable_name() + (b.kind() == FieldKind::rationals ? "" : "/" + field_descriptor(b));
        }
    }
    return "?";
}

FamilySpec parse_spec(const std::string& raw, const Field& field) {
    const std::string text = trim(raw);
    const std::size_t colon = text.find(':');
    const std::string keyword = trim(text.substr(0, colon));
    FamilySpec s;
    s.field = field;
    static const std::map<std::string, Family> names{{"nbg", Family::NBGq}, {"nbg1", Family::NBG1}, {"nbng", Family::NBNG},
                                                     {"bdt", Family::Bdt},  {"bd1", Family::Bd1},   {"b2", Family::B2}};
    const auto it = names.find(keyword);
    if (it == names.end()) throw InvalidSpec("unknown family '" + keyword + "'; expected nbg, nbg1, nbng, bdt, bd1 or b2");
    s.family = it->second;

    std::map<std::string, std::string> kv;
    if (colon != std::string::npos && !trim(text.substr(colon + 1)).empty()) {
        for (const auto& item : split(text.substr(colon + 1), ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) throw InvalidSpec("expected key=value, got '" + item + "'");
            const std::string key = trim(item.substr(0, eq));
            if (kv.count(key)) throw InvalidSpec("duplicate key '" + key + "'");
            kv[key] = trim(item.substr(eq + 1));
        }
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto f = kv.find(key);
        if (f == kv.end()) return std::nullopt;
        std::string v = f->second;
        kv.erase(f);
        return v;
    };

    const auto d = take("d");
    if (s.family == Family::B2) {
        if (d && parse_unsigned(*d, "d") != 2) throw InvalidSpec("b2 has d = 2");
        s.d = 2;
    } else {
        if (!d) throw InvalidSpec(keyword + " needs d");
        s.d = parse_unsigned(*d, "d");
    }
    const char* param_key = s.family == Family::NBGq ? "q" : (s.family == Family::NBNG || s.family == Family::Bdt ? "t" : nullptr);
    if (param_key) {
        const auto v = take(param_key);
        if (!v) throw InvalidSpec(keyword + " needs " + param_key);
        s.param = field.parse(*v);
    }
    if (s.bipartite()) {
        int missing = 0;
        for (int k = 0; k < 3; ++k) {
            const auto v = take(kRhoKeys[k]);
            if (v) s.rho[k] = field.parse(*v); else ++missing;
        }
        if (s.family == Family::Bdt && s.param->is_zero()) throw InvalidSpec("t must be nonzero");
        const Element target = rho_product_target(s);
        if (missing == 3) {
            s.rho[0] = field.one();
            s.rho[1] = field.one();
            s.rho[2] = target;
        } else if (missing == 1) {
            Element known = field.one();
            int hole = 0;
            for (int k = 0; k < 3; ++k) {
                if (s.rho[k]) known *= *s.rho[k]; else hole = k;
            }
            if (known.is_zero()) throw InvalidSpec("rho values must be nonzero");
            s.rho[hole] = target / known;
        } else if (missing == 2) {
            throw InvalidSpec("give all of r0, r1, r2, all but one, or none");
        }
    }
    if (!kv.empty()) throw InvalidSpec("unexpected key '" + kv.begin()->first + "' for " + keyword);
    return s;
}

std::vector<std::string> validate_spec(const FamilySpec& s) {
    std::vector<std::string> v;
    const Field& f = s.field;
    const long long d = static_cast<long long>(s.d);
    const std::uint64_t ch = f.characteristic();
    auto need_param = [&](const char* name) {
        if (!s.param) {
            v.push_back(std::string("parameter ") + name + " is given");
            return false;
        }
        if (s.param->field() != f) {
            v.push_back(std::string("parameter ") + name + " lies in " + f.name());
            return false;
        }
        return true;
    };
    auto need_rho = [&] {
        for (int k = 0; k < 3; ++k) {
            if (!s.rho[k] || s.rho[k]->field() != f) {
                v.push_back(std::string(kRhoKeys[k]) + " is given in " + f.name());
                return false;
            }
        }
        return true;
    };
    auto rho_product = [&]() { return *s.rho[0] * *s.rho[1] * *s.rho[2]; };
    auto powers_not_one = [&](const Element& x, long long upto, const std::string& label) {
        for (long long i = 1; i <= upto; ++i) {
            if (x.pow(i).is_one()) {
                v.push_back(label);
                return;
            }
        }
    };

    switch (s.family) {
        case Family::NBGq:
            if (d < 2) v.push_back("d >= 2");
            if (need_param("q")) {
                const Element& q = *s.param;
                if (q.is_zero()) {
                    v.push_back("q != 0");
                    break;
                }
                powers_not_one(q, d, "q^i != 1 (1 <= i <= d)");
                if (q.pow(d + 1) == -f.one()) v.push_back("q^{d+1} != -1");
            }
            break;
        case Family::NBG1:
            if (d < 2) v.push_back("d >= 2");
            if (ch != 0 && ch <= static_cast<std::uint64_t>(d)) v.push_back("Char(F) is 0 or greater than d");
            break;
        case Family::NBNG:
            if (d < 4) v.push_back("d >= 4");
            if (d % 2 != 0) v.push_back("d is even");
            if (need_param("t")) {
                const Element& t = *s.param;
                if (t.is_zero()) {
                    v.push_back("t != 0");
                    break;
                }
                powers_not_one(t, d / 2, "t^i != 1 (1 <= i <= d/2)");
                if (t.pow(d + 1).is_one()) v.push_back("t^{d+1} != 1");
            }
            break;
        case Family::Bdt:
            if (d < 4) v.push_back("d >= 4");
            if (d % 2 != 0) v.push_back("d is even");
            if (need_param("t") && need_rho()) {
                const Element& t = *s.param;
                if (t.is_zero()) {
                    v.push_back("t != 0");
                    break;
                }
                powers_not_one(t, d / 2, "t^i != 1 (1 <= i <= d/2)");
                if (rho_product() != rho_product_target(s)) v.push_back("rho_0 rho'_0 rho''_0 = -t^{1-d/2}");
            }
            break;
        case Family::Bd1:
            if (d < 4) v.push_back("d >= 4");
            if (d % 2 != 0) v.push_back("d is even");
            if (ch != 0 && ch <= static_cast<std::uint64_t>(d / 2)) v.push_back("Char(F) is 0 or greater than d/2");
            if (need_rho() && rho_product() != -f.one()) v.push_back("rho_0 rho'_0 rho''_0 = -1");
            break;
        case Family::B2:
            if (d != 2) v.push_back("d = 2");
            if (need_rho() && rho_product() != -f.one()) v.push_back("rho_0 rho'_0 rho''_0 = -1");
            break;
    }
    // Every parameter must be nonzero for the triple to exist; the constraints
    // above imply this, so a zero here means a denominator vanished.
    if (v.empty()) {
        for (std::size_t i = 1; i <= s.d; ++i) {
            for (int w = 0; w < 3; ++w) {
                if (phi_unchecked(s, w, i).is_zero()) {
                    v.push_back("phi_i != 0 (1 <= i <= d)");
                    return v;
                }
            }
        }
    }
    return v;
}

Element closed_form_phi(const FamilySpec& s, int which, std::size_t i) {
    require_which(which);
    require_valid(s);
    if (i < 1 || i > s.d) throw InvalidSpec("phi_i needs 1 <= i <= d");
    return phi_unchecked(s, which, i);
}

Element closed_form_alpha(const FamilySpec& s, int which, std::size_t i) {
    require_which(which);
    require_valid(s);
    if (i > s.d) throw InvalidSpec("alpha_i needs 0 <= i <= d");
    const Field& f = s.field;
    const unsigned n = static_cast<unsigned>(i);
    switch (s.family) {
        case Family::NBGq: {
            const Element& q = *s.param;
            return (1 - q).pow(n) / q_pochhammer(q, q, n);
        }
        case Family::NBG1: return factorial(f, n).inv();
        case Family::NBNG: {
            const Element& t = *s.param;
            return q_pochhammer(t, t, n % 2 == 0 ? n / 2 : (n - 1) / 2).inv();
        }
        case Family::Bdt: {
            if (n % 2) return f.zero();
            const Element& t = *s.param;
            return (1 - t).pow(n / 2) / q_pochhammer(t, t, n / 2);
        }
        case Family::Bd1:
            if (n % 2) return f.zero();
            return factorial(f, n / 2).inv();
        case Family::B2: return n % 2 ? f.zero() : f.one();
    }
    throw InvalidSpec("unknown family");
}

bool has_closed_form_beta(const FamilySpec& s) { return s.family == Family::Bdt || s.family == Family::Bd1; }

Element closed_form_beta(const FamilySpec& s, int which, std::size_t i) {
    require_which(which);
    require_valid(s);
    if (i > s.d) throw InvalidSpec("beta_i needs 0 <= i <= d");
    if (!has_closed_form_beta(s)) throw NoClosedForm("no closed form for beta of " + family_keyword(s.family));
    const Field& f = s.field;
    const unsigned n = static_cast<unsigned>(i);
    if (n % 2) return f.zero();
    const long long m = n / 2;
    const Element sign = m % 2 ? -f.one() : f.one();
    if (s.family == Family::Bd1) return sign / factorial(f, static_cast<unsigned>(m));
    const Element& t = *s.param;
    return sign * t.pow(m * (m - 1) / 2) * (1 - t).pow(m) / q_pochhammer(t, t, static_cast<unsigned>(m));
}

std::array<Matrix, 3> family_matrices(const FamilySpec& s) {
    require_valid(s);
    const Field& f = s.field;
    const std::size_t d = s.d;
    std::array<Vector, 3> phi;
    for (int w = 0; w < 3; ++w) {
        phi[w].push_back(f.zero());
        for (std::size_t i = 1; i <= d; ++i) phi[w].push_back(phi_unchecked(s, w, i));
        phi[w].push_back(f.zero());
    }
    Matrix A(f, d + 1, d + 1), B(f, d + 1, d + 1), C(f, d + 1, d + 1);
    for (std::size_t i = 1; i <= d; ++i) {
        A(i - 1, i) = f.one();
        B(i, i - 1) = phi[0][i];
        C(i, i - 1) = phi[2][d - i + 1];
        C(i - 1, i) = phi[1][d - i + 1] / phi[0][i];
    }
    if (!s.bipartite()) {
        for (std::size_t i = 0; i <= d; ++i) C(i, i) = phi[0][d - i + 1] - phi[0][d - i];
    }
    return {A, B, C};
}

LRTripleData construct(const FamilySpec& s) {
    const auto m = family_matrices(s);
    LRTripleData t;
    try {
        t = analyze_triple(m[0], m[1], m[2]);
    } catch (const NotLRTriple& e) {
        throw ConstructionInconsistent(s.str() + ": " + e.what());
    }
    auto fail = [&](const std::string& what) { throw ConstructionInconsistent(s.str() + ": " + what); };
    if (t.pairs[0].basis.P != t.I()) fail("the standard basis is not the (A,B)-basis");
    for (int w = 0; w < 3; ++w) {
        for (std::size_t i = 1; i <= s.d; ++i) {
            if (t.phi(w, static_cast<long>(i)) != phi_unchecked(s, w, i)) {
                fail("parameter sequence " + std::to_string(w) + " differs at i = " + std::to_string(i));
            }
        }
    }
    if (t.bipartite != s.bipartite()) fail("bipartite flag differs");
    if (!is_normalized(t)) fail("triple is not normalized");
    for (std::size_t i = 0; i <= s.d; ++i) {
        if (t.a(0, i) != m[2](i, i)) fail("trace data differs at i = " + std::to_string(i));
    }
    return t;
}

}  // namespace lrt
