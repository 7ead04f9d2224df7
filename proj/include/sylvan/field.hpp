#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "sylvan/errors.hpp"

namespace sylvan {

/// Coefficient field: the rationals (characteristic 0) or a prime field F_p
/// with p below 2^63.
class Field {
public:
    constexpr Field() = default;

    static constexpr Field rationals() { return Field{}; }
    /// Throws FieldError unless p is a prime below 2^63.
    static Field prime(std::uint64_t p);
    /// Accepts "Q", "QQ", "F<p>", "Fp:<p>" and "GF(<p>)".
    static Field parse(std::string_view text);

    constexpr std::uint64_t characteristic() const { return p_; }
    constexpr bool is_rational() const { return p_ == 0; }
    std::string name() const;

    friend constexpr bool operator==(Field, Field) = default;

private:
    friend class Scalar;
    constexpr explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_ = 0;
};

/// An exact field element: either a rational in lowest terms or a residue
/// in [0, p).  Immutable value type.
class Scalar {
public:
    /// Rational zero.
    Scalar() = default;
    explicit Scalar(mpq_class q);

    static Scalar zero(Field f);
    static Scalar one(Field f);
    static Scalar from_integer(Field f, long value);
    static Scalar from_integer(Field f, const mpz_class& value);
    /// Maps a rational into f; throws FieldError if the denominator vanishes mod p.
    static Scalar from_rational(Field f, const mpq_class& value);
    static Scalar rational(long num, long den = 1);
    static Scalar residue(std::int64_t k, std::uint64_t p);

    /// Parses "num/den", an integer, or "k mod p".
    static Scalar parse(std::string_view text);

    Field field() const;
    bool is_zero() const;
    bool is_one() const;

    /// Throws FieldError for residues.
    const mpq_class& rational_value() const;
    /// Throws FieldError for rationals.
    std::uint64_t residue_value() const;

    Scalar inverse() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Exact equality; elements of different fields compare unequal.
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Serialised form: "num/den" for rationals (denominator always present),
    /// "k mod p" for residues.
    std::string to_string() const;
    /// Display form: like to_string but integers and residues print bare.
    std::string pretty() const;

private:
    struct Residue {
        std::uint64_t value;
        std::uint64_t modulus;
        friend bool operator==(const Residue&, const Residue&) = default;
    };

    explicit Scalar(Residue r) : value_(r) {}
    static Scalar reduced(std::int64_t k, std::uint64_t p);
    void require_same_field(const Scalar& other) const;

    std::variant<mpq_class, Residue> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace sylvan
