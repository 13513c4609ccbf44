#pragma once

// Exact scalar fields: the rationals, prime fields GF(p), and univariate
// rational functions over either of them.
//
// A Field is a cheap handle to an interned, immutable context; two handles
// compare equal iff they describe the same field. An Element always carries
// its field and is kept in canonical form:
//
//   rationals           reduced fraction, positive denominator
//   prime_field         residue in [0, p)
//   rational_functions  gcd(num, den) = 1, den monic, 0 = 0/1
//
// so equality of payloads is equality of values.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "lrtriple/errors.hpp"

namespace lrt {

enum class FieldKind { rationals, prime_field, rational_functions };

namespace detail {
struct FieldData;
}

class Element;
struct Polynomial;
struct RationalFunction;

class Field {
public:
    // The rationals.
    Field();

    static Field rationals();
    // Throws InvalidContext unless p is prime.
    static Field prime(std::uint64_t p);
    // base must be the rationals or a prime field; nesting depth is one.
    static Field rational_functions(const Field& base, std::string variable);

    FieldKind kind() const;
    // 0 for Q and Q(x), p for GF(p) and GF(p)(x).
    std::uint64_t characteristic() const;
    // Coefficient field of a rational function field; the field itself otherwise.
    Field base() const;
    const std::string& variable_name() const;
    bool is_function_field() const { return kind() == FieldKind::rational_functions; }

    // Short human-readable name: "Q", "GF(7)", "Q(t)", "GF(101)(q)".
    std::string name() const;

    Element zero() const;
    Element one() const;
    Element from_int(long long n) const;
    Element from_integer(const mpz_class& n) const;
    Element from_rational(const mpq_class& x) const;
    // The generator of a rational function field.
    Element variable() const;
    // Parse an element in the grammar described in README (integers, a/b,
    // polynomial expressions in the field variable, parenthesised ratios).
    Element parse(std::string_view text) const;

    friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.data_ != b.data_; }

private:
    explicit Field(const detail::FieldData* data) : data_(data) {}
    const detail::FieldData* data_;

    friend class Element;
    friend struct detail::FieldData;
    friend Element make_rational_function(const Field& field, Polynomial num, Polynomial den);
};

class Element {
public:
    // Rational zero.
    Element();

    Field field() const { return Field(field_); }

    bool is_zero() const;
    bool is_one() const;

    Element operator-() const;
    Element inv() const;
    Element pow(long long n) const;

    Element& operator+=(const Element& y);
    Element& operator-=(const Element& y);
    Element& operator*=(const Element& y);
    Element& operator/=(const Element& y);

    friend Element operator+(Element x, const Element& y) { return x += y; }
    friend Element operator-(Element x, const Element& y) { return x -= y; }
    friend Element operator*(Element x, const Element& y) { return x *= y; }
    friend Element operator/(Element x, const Element& y) { return x /= y; }

    friend Element operator+(const Element& x, long long n) { return x + x.field().from_int(n); }
    friend Element operator-(const Element& x, long long n) { return x - x.field().from_int(n); }
    friend Element operator*(const Element& x, long long n) { return x * x.field().from_int(n); }
    friend Element operator/(const Element& x, long long n) { return x / x.field().from_int(n); }
    friend Element operator+(long long n, const Element& x) { return x.field().from_int(n) + x; }
    friend Element operator-(long long n, const Element& x) { return x.field().from_int(n) - x; }
    friend Element operator*(long long n, const Element& x) { return x.field().from_int(n) * x; }
    friend Element operator/(long long n, const Element& x) { return x.field().from_int(n) / x; }

    // Throws ContextMismatch when the fields differ.
    friend bool operator==(const Element& x, const Element& y);
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

    std::string str() const;
    std::size_t hash() const;

    // Payload access; each throws InvalidContext for the wrong kind.
    const mpq_class& rational() const;
    std::uint64_t residue() const;
    const RationalFunction& rational_function() const;

    // True for a rational with negative sign; false in every other field.
    bool is_negative_rational() const;

private:
    using Payload = std::variant<mpq_class, std::uint64_t, std::shared_ptr<const RationalFunction>>;

    Element(const detail::FieldData* field, Payload payload)
        : field_(field), payload_(std::move(payload)) {}

    const detail::FieldData* field_;
    Payload payload_;

    friend class Field;
    friend struct detail::FieldData;
    friend Element make_rational_function(const Field& field, Polynomial num, Polynomial den);
};

// Dense univariate polynomial over the base field of a rational function
// field; coeffs[k] multiplies x^k and the leading coefficient is nonzero.
struct Polynomial {
    std::vector<Element> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

inline std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.str(); }

// Build num/den in canonical form. num and den hold base-field coefficients.
Element make_rational_function(const Field& field, Polynomial num, Polynomial den);

// (a; q)_n = (1 - a)(1 - a q) ... (1 - a q^{n-1}); (a; q)_0 = 1.
Element q_pochhammer(const Element& a, const Element& q, unsigned n);

// n! as a field element (zero when the characteristic divides it).
Element factorial(const Field& field, unsigned n);

// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

struct ElementHash {
    std::size_t operator()(const Element& x) const { return x.hash(); }
};

}  // namespace lrt
