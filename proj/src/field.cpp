#include "lrtriple/field.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <mutex>

namespace lrt {

namespace detail {

struct FieldData {
    FieldKind kind = FieldKind::rationals;
    std::uint64_t p = 0;
    std::string var;
    const FieldData* base = nullptr;

    static const FieldData* intern(FieldKind kind, std::uint64_t p, const std::string& var,
                                   const FieldData* base) {
        static std::mutex mutex;
        static std::deque<FieldData> registry;
        std::lock_guard lock(mutex);
        for (const auto& f : registry) {
            if (f.kind == kind && f.p == p && f.var == var && f.base == base) return &f;
        }
        registry.push_back(FieldData{kind, p, var, base});
        return &registry.back();
    }
};

}  // namespace detail

using detail::FieldData;

namespace {

const FieldData* rationals_data() {
    static const FieldData* q = FieldData::intern(FieldKind::rationals, 0, "", nullptr);
    return q;
}

using u128 = unsigned __int128;

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t r = a + b;
    if (r < a || r >= p) r -= p;
    return r;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p) + ")");
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t mpz_mod_u64(const mpz_class& n, std::uint64_t p) {
    mpz_class m(std::to_string(p));
    mpz_class r = n % m;
    if (r < 0) r += m;
    return std::stoull(r.get_str());
}

void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_mpz(const mpz_srcptr z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z) + 1);
    const std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z, i)));
    return h;
}

// ---- polynomials over a base field ------------------------------------------

using Coeffs = std::vector<Element>;

void trim(Polynomial& a) {
    while (!a.coeffs.empty() && a.coeffs.back().is_zero()) a.coeffs.pop_back();
}

Polynomial poly_constant(const Element& c) {
    Polynomial p;
    if (!c.is_zero()) p.coeffs.push_back(c);
    return p;
}

bool poly_equal(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs.size() != b.coeffs.size()) return false;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] != b.coeffs[i]) return false;
    }
    return true;
}

bool poly_is_one(const Polynomial& a) { return a.coeffs.size() == 1 && a.coeffs[0].is_one(); }

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    const Polynomial& lo = a.coeffs.size() < b.coeffs.size() ? a : b;
    const Polynomial& hi = a.coeffs.size() < b.coeffs.size() ? b : a;
    Polynomial r = hi;
    for (std::size_t i = 0; i < lo.coeffs.size(); ++i) r.coeffs[i] += lo.coeffs[i];
    trim(r);
    return r;
}

Polynomial poly_neg(Polynomial a) {
    for (auto& c : a.coeffs) c = -c;
    return a;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const Element zero = a.coeffs[0].field().zero();
    Polynomial r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, zero);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    trim(r);
    return r;
}

Polynomial poly_scale(Polynomial a, const Element& c) {
    if (c.is_zero()) return {};
    for (auto& x : a.coeffs) x *= c;
    return a;
}

// a = q*b + r with deg r < deg b.
void poly_divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    r = a;
    q = {};
    if (a.coeffs.size() < b.coeffs.size()) return;
    const Element lead_inv = b.coeffs.back().inv();
    const std::size_t bn = b.coeffs.size();
    q.coeffs.assign(a.coeffs.size() - bn + 1, a.coeffs[0].field().zero());
    for (std::size_t k = a.coeffs.size(); k-- >= bn;) {
        if (k >= r.coeffs.size() || r.coeffs[k].is_zero()) continue;
        const Element f = r.coeffs[k] * lead_inv;
        q.coeffs[k - bn + 1] = f;
        for (std::size_t j = 0; j < bn; ++j) r.coeffs[k - bn + 1 + j] -= f * b.coeffs[j];
    }
    trim(q);
    trim(r);
}

Polynomial poly_monic(Polynomial a) {
    if (a.is_zero() || a.coeffs.back().is_one()) return a;
    const Element lc_inv = a.coeffs.back().inv();
    return poly_scale(std::move(a), lc_inv);
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = poly_monic(std::move(r));
    }
    return poly_monic(std::move(a));
}

Polynomial poly_exact_div(const Polynomial& a, const Polynomial& b) {
    if (poly_is_one(b)) return a;
    Polynomial q, r;
    poly_divmod(a, b, q, r);
    return q;
}

std::string poly_str(const Polynomial& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = a.coeffs.size(); k-- > 0;) {
        const Element& c = a.coeffs[k];
        if (c.is_zero()) continue;
        const bool neg = c.is_negative_rational();
        const Element mag = neg ? -c : c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        if (k >= 1) mono = var + (k > 1 ? "^" + std::to_string(k) : "");
        if (k == 0) {
            out += mag.str();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.str() + "*" + mono;
        }
    }
    return out;
}

}  // namespace

// ---- Field --------------------------------------------------------------------

Field::Field() : data_(rationals_data()) {}

Field Field::rationals() { return Field(rationals_data()); }

Field Field::prime(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidContext("GF(p) requires a prime p, got " + std::to_string(p));
    return Field(FieldData::intern(FieldKind::prime_field, p, "", nullptr));
}

Field Field::rational_functions(const Field& base, std::string variable) {
    if (base.kind() == FieldKind::rational_functions) {
        throw InvalidContext("rational functions of rational functions are not supported");
    }
    if (variable.empty() || !(std::isalpha(static_cast<unsigned char>(variable[0])) || variable[0] == '_')) {
        throw InvalidContext("invalid variable name '" + variable + "'");
    }
    for (char ch : variable) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) {
            throw InvalidContext("invalid variable name '" + variable + "'");
        }
    }
    return Field(FieldData::intern(FieldKind::rational_functions, 0, variable, base.data_));
}

FieldKind Field::kind() const { return data_->kind; }

std::uint64_t Field::characteristic() const {
    switch (data_->kind) {
        case FieldKind::rationals: return 0;
        case FieldKind::prime_field: return data_->p;
        case FieldKind::rational_functions: return Field(data_->base).characteristic();
    }
    return 0;
}

Field Field::base() const { return data_->base ? Field(data_->base) : *this; }

const std::string& Field::variable_name() const { return data_->var; }

std::string Field::name() const {
    switch (data_->kind) {
        case FieldKind::rationals: return "Q";
        case FieldKind::prime_field: return "GF(" + std::to_string(data_->p) + ")";
        case FieldKind::rational_functions: return Field(data_->base).name() + "(" + data_->var + ")";
    }
    return "?";
}

Element Field::zero() const { return from_int(0); }
Element Field::one() const { return from_int(1); }

Element Field::from_int(long long n) const {
    switch (data_->kind) {
        case FieldKind::rationals: return Element(data_, mpq_class(static_cast<long>(n)));
        case FieldKind::prime_field: {
            const std::uint64_t p = data_->p;
            __int128 r = static_cast<__int128>(n) % static_cast<__int128>(p);
            if (r < 0) r += p;
            return Element(data_, static_cast<std::uint64_t>(r));
        }
        case FieldKind::rational_functions:
            return make_rational_function(*this, poly_constant(base().from_int(n)),
                                          poly_constant(base().one()));
    }
    throw InvalidContext("unknown field kind");
}

Element Field::from_integer(const mpz_class& n) const {
    switch (data_->kind) {
        case FieldKind::rationals: return Element(data_, mpq_class(n));
        case FieldKind::prime_field: return Element(data_, mpz_mod_u64(n, data_->p));
        case FieldKind::rational_functions:
            return make_rational_function(*this, poly_constant(base().from_integer(n)),
                                          poly_constant(base().one()));
    }
    throw InvalidContext("unknown field kind");
}

Element Field::from_rational(const mpq_class& x) const {
    if (data_->kind == FieldKind::rationals) return Element(data_, x);
    return from_integer(x.get_num()) / from_integer(x.get_den());
}

Element Field::variable() const {
    if (data_->kind != FieldKind::rational_functions) {
        throw InvalidContext(name() + " has no variable");
    }
    Polynomial num;
    num.coeffs = {base().zero(), base().one()};
    return make_rational_function(*this, std::move(num), poly_constant(base().one()));
}

// ---- Element ------------------------------------------------------------------

Element::Element() : field_(rationals_data()), payload_(mpq_class(0)) {}

Element make_rational_function(const Field& field, Polynomial num, Polynomial den) {
    if (field.kind() != FieldKind::rational_functions) {
        throw InvalidContext("make_rational_function needs a rational function field");
    }
    trim(num);
    trim(den);
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    const Field base = field.base();
    for (const auto& c : num.coeffs) {
        if (c.field() != base) throw ContextMismatch("coefficient outside " + base.name());
    }
    for (const auto& c : den.coeffs) {
        if (c.field() != base) throw ContextMismatch("coefficient outside " + base.name());
    }
    if (num.is_zero()) {
        den = poly_constant(base.one());
    } else if (den.degree() > 0) {
        const Polynomial g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = poly_exact_div(num, g);
            den = poly_exact_div(den, g);
        }
    }
    if (!den.coeffs.back().is_one()) {
        const Element lc_inv = den.coeffs.back().inv();
        num = poly_scale(std::move(num), lc_inv);
        den = poly_scale(std::move(den), lc_inv);
    }
    auto rf = std::make_shared<const RationalFunction>(RationalFunction{std::move(num), std::move(den)});
    return Element(field.data_, std::move(rf));
}

namespace {

void require_same(const Element& x, const Element& y) {
    if (x.field() != y.field()) {
        throw ContextMismatch("elements of " + x.field().name() + " and " + y.field().name());
    }
}

}  // namespace

bool Element::is_zero() const {
    switch (field_->kind) {
        case FieldKind::rationals: return sgn(std::get<mpq_class>(payload_)) == 0;
        case FieldKind::prime_field: return std::get<std::uint64_t>(payload_) == 0;
        case FieldKind::rational_functions:
            return std::get<std::shared_ptr<const RationalFunction>>(payload_)->num.is_zero();
    }
    return false;
}

bool Element::is_one() const {
    switch (field_->kind) {
        case FieldKind::rationals: return std::get<mpq_class>(payload_) == 1;
        case FieldKind::prime_field: return std::get<std::uint64_t>(payload_) == 1;
        case FieldKind::rational_functions: {
            const auto& rf = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            return poly_is_one(rf.num) && poly_is_one(rf.den);
        }
    }
    return false;
}

Element Element::operator-() const {
    switch (field_->kind) {
        case FieldKind::rationals: return Element(field_, mpq_class(-std::get<mpq_class>(payload_)));
        case FieldKind::prime_field: {
            const std::uint64_t v = std::get<std::uint64_t>(payload_);
            return Element(field_, v == 0 ? 0 : field_->p - v);
        }
        case FieldKind::rational_functions: {
            if (is_zero()) return *this;
            const auto& rf = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            auto out = std::make_shared<const RationalFunction>(RationalFunction{poly_neg(rf.num), rf.den});
            return Element(field_, std::move(out));
        }
    }
    return *this;
}

Element Element::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field().name());
    switch (field_->kind) {
        case FieldKind::rationals: return Element(field_, mpq_class(1 / std::get<mpq_class>(payload_)));
        case FieldKind::prime_field: return Element(field_, mod_inv(std::get<std::uint64_t>(payload_), field_->p));
        case FieldKind::rational_functions: {
            const auto& rf = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            Polynomial num = rf.den;
            Polynomial den = rf.num;
            const Element lc_inv = den.coeffs.back().inv();
            auto out = std::make_shared<const RationalFunction>(
                RationalFunction{poly_scale(std::move(num), lc_inv), poly_scale(std::move(den), lc_inv)});
            return Element(field_, std::move(out));
        }
    }
    return *this;
}

Element Element::pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    Element result = field().one();
    Element base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

Element& Element::operator+=(const Element& y) {
    require_same(*this, y);
    switch (field_->kind) {
        case FieldKind::rationals: std::get<mpq_class>(payload_) += std::get<mpq_class>(y.payload_); break;
        case FieldKind::prime_field: {
            auto& v = std::get<std::uint64_t>(payload_);
            v = mod_add(v, std::get<std::uint64_t>(y.payload_), field_->p);
            break;
        }
        case FieldKind::rational_functions: {
            if (y.is_zero()) break;
            if (is_zero()) {
                payload_ = y.payload_;
                break;
            }
            const auto& a = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            const auto& b = *std::get<std::shared_ptr<const RationalFunction>>(y.payload_);
            if (poly_equal(a.den, b.den)) {
                *this = make_rational_function(field(), poly_add(a.num, b.num), a.den);
            } else {
                const Polynomial g = poly_gcd(a.den, b.den);
                const Polynomial ad = poly_exact_div(a.den, g);
                const Polynomial bd = poly_exact_div(b.den, g);
                Polynomial num = poly_add(poly_mul(a.num, bd), poly_mul(b.num, ad));
                Polynomial den = poly_mul(a.den, bd);
                *this = make_rational_function(field(), std::move(num), std::move(den));
            }
            break;
        }
    }
    return *this;
}

Element& Element::operator-=(const Element& y) { return *this += -y; }

Element& Element::operator*=(const Element& y) {
    require_same(*this, y);
    switch (field_->kind) {
        case FieldKind::rationals: std::get<mpq_class>(payload_) *= std::get<mpq_class>(y.payload_); break;
        case FieldKind::prime_field: {
            auto& v = std::get<std::uint64_t>(payload_);
            v = mod_mul(v, std::get<std::uint64_t>(y.payload_), field_->p);
            break;
        }
        case FieldKind::rational_functions: {
            if (is_zero()) break;
            if (y.is_zero()) {
                payload_ = y.payload_;
                break;
            }
            const auto& a = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            const auto& b = *std::get<std::shared_ptr<const RationalFunction>>(y.payload_);
            // gcd(a.num, a.den) = gcd(b.num, b.den) = 1, so cancelling the cross
            // gcds leaves a reduced fraction.
            const Polynomial g1 = poly_gcd(a.num, b.den);
            const Polynomial g2 = poly_gcd(b.num, a.den);
            Polynomial num = poly_mul(poly_exact_div(a.num, g1), poly_exact_div(b.num, g2));
            Polynomial den = poly_mul(poly_exact_div(a.den, g2), poly_exact_div(b.den, g1));
            if (!den.coeffs.back().is_one()) {
                const Element lc_inv = den.coeffs.back().inv();
                num = poly_scale(std::move(num), lc_inv);
                den = poly_scale(std::move(den), lc_inv);
            }
            payload_ = std::make_shared<const RationalFunction>(RationalFunction{std::move(num), std::move(den)});
            break;
        }
    }
    return *this;
}

Element& Element::operator/=(const Element& y) {
    require_same(*this, y);
    if (y.is_zero()) throw DivisionByZero("division by zero in " + field().name());
    if (field_->kind == FieldKind::rationals) {
        std::get<mpq_class>(payload_) /= std::get<mpq_class>(y.payload_);
        return *this;
    }
    return *this *= y.inv();
}

bool operator==(const Element& x, const Element& y) {
    require_same(x, y);
    switch (x.field_->kind) {
        case FieldKind::rationals: return std::get<mpq_class>(x.payload_) == std::get<mpq_class>(y.payload_);
        case FieldKind::prime_field:
            return std::get<std::uint64_t>(x.payload_) == std::get<std::uint64_t>(y.payload_);
        case FieldKind::rational_functions: {
            const auto& a = *std::get<std::shared_ptr<const RationalFunction>>(x.payload_);
            const auto& b = *std::get<std::shared_ptr<const RationalFunction>>(y.payload_);
            return poly_equal(a.num, b.num) && poly_equal(a.den, b.den);
        }
    }
    return false;
}

std::string Element::str() const {
    switch (field_->kind) {
        case FieldKind::rationals: return std::get<mpq_class>(payload_).get_str();
        case FieldKind::prime_field: return std::to_string(std::get<std::uint64_t>(payload_));
        case FieldKind::rational_functions: {
            const auto& rf = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            const std::string num = poly_str(rf.num, field_->var);
            if (poly_is_one(rf.den)) return num;
            auto terms = [](const Polynomial& a) {
                return std::count_if(a.coeffs.begin(), a.coeffs.end(), [](const Element& c) { return !c.is_zero(); });
            };
            const std::string den = poly_str(rf.den, field_->var);
            return (terms(rf.num) > 1 || num.find('/') != std::string::npos ? "(" + num + ")" : num) + "/" + (terms(rf.den) > 1 ? "(" + den + ")" : den);
        }
    }
    return "?";
}

std::size_t Element::hash() const {
    switch (field_->kind) {
        case FieldKind::rationals: {
            const auto& q = std::get<mpq_class>(payload_);
            std::size_t h = hash_mpz(q.get_num_mpz_t());
            hash_combine(h, hash_mpz(q.get_den_mpz_t()));
            return h;
        }
        case FieldKind::prime_field: return std::hash<std::uint64_t>{}(std::get<std::uint64_t>(payload_));
        case FieldKind::rational_functions: {
            const auto& rf = *std::get<std::shared_ptr<const RationalFunction>>(payload_);
            std::size_t h = rf.num.coeffs.size();
            for (const auto& c : rf.num.coeffs) hash_combine(h, c.hash());
            hash_combine(h, rf.den.coeffs.size());
            for (const auto& c : rf.den.coeffs) hash_combine(h, c.hash());
            return h;
        }
    }
    return 0;
}

const mpq_class& Element::rational() const {
    if (field_->kind != FieldKind::rationals) throw InvalidContext("not a rational: " + field().name());
    return std::get<mpq_class>(payload_);
}

std::uint64_t Element::residue() const {
    if (field_->kind != FieldKind::prime_field) throw InvalidContext("not a residue: " + field().name());
    return std::get<std::uint64_t>(payload_);
}

const RationalFunction& Element::rational_function() const {
    if (field_->kind != FieldKind::rational_functions) {
        throw InvalidContext("not a rational function: " + field().name());
    }
    return *std::get<std::shared_ptr<const RationalFunction>>(payload_);
}

bool Element::is_negative_rational() const {
    return field_->kind == FieldKind::rationals && sgn(std::get<mpq_class>(payload_)) < 0;
}

// ---- helpers -----------------------------------------------------------------

Element q_pochhammer(const Element& a, const Element& q, unsigned n) {
    require_same(a, q);
    Element result = a.field().one();
    Element aq = a;
    for (unsigned k = 0; k < n; ++k) {
        result *= 1 - aq;
        aq *= q;
    }
    return result;
}

Element factorial(const Field& field, unsigned n) {
    Element r = field.one();
    for (unsigned k = 2; k <= n; ++k) r *= field.from_int(k);
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : small) {
        std::uint64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mod_mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// ---- parser -------------------------------------------------------------------
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-' | '+'] integer)?
//   primary := integer | identifier | '(' expr ')'

namespace {

class Parser {
public:
    Parser(const Field& field, std::string_view text) : field_(field), text_(text) {}

    Element parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty expression");
        Element x = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
        return x;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static bool starts_primary(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '_' || c == '(';
    }

    Element expr() {
        Element x = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            Element y = term();
            if (c == '+') x += y; else x -= y;
        }
        return x;
    }

    Element term() {
        Element x = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                x *= unary();
            } else if (c == '/') {
                ++pos_;
                const std::size_t at = pos_;
                Element y = unary();
                if (y.is_zero()) throw ParseError("division by zero", at);
                x /= y;
            } else if (starts_primary(c)) {
                x *= unary();
            } else {
                return x;
            }
        }
    }

    Element unary() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Element power() {
        Element x = primary();
        if (peek() == '^') {
            ++pos_;
            bool negative = false;
            char c = peek();
            if (c == '-' || c == '+') {
                negative = c == '-';
                ++pos_;
                c = peek();
            }
            if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected integer exponent");
            const mpz_class e = integer();
            if (e > 1000000) fail("exponent too large");
            const long n = e.get_si();
            if (negative && x.is_zero()) fail("zero to a negative power");
            x = x.pow(negative ? -n : n);
        }
        return x;
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Element primary() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return field_.from_integer(integer());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            if (!field_.is_function_field() || name != field_.variable_name()) {
                pos_ = start;
                fail("unknown identifier '" + std::string(name) + "' for " + field_.name());
            }
            return field_.variable();
        }
        if (c == '(') {
            ++pos_;
            Element x = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return x;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    Field field_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Element Field::parse(std::string_view text) const { return Parser(*this, text).parse(); }

}  // namespace lrt
