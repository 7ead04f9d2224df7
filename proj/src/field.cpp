#include "sylvan/field.hpp"

#include <charconv>
#include <ostream>

namespace sylvan {

namespace {

using u128 = unsigned __int128;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
    };
    auto powmod = [&](std::uint64_t base, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(v.get_mpz_t(), p);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid on signed 128-bit values.
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

}  // namespace

Field Field::prime(std::uint64_t p) {
    if (p >= (1ULL << 63) || !is_prime(p)) {
        throw FieldError("characteristic " + std::to_string(p) + " is not a supported prime");
    }
    return Field{p};
}

Field Field::parse(std::string_view text) {
    text = trim(text);
    if (text == "Q" || text == "QQ" || text == "0") return rationals();
    if (text.starts_with("Fp:")) return prime(parse_u64(text.substr(3), "prime"));
    if (text.starts_with("GF(") && text.ends_with(")")) return prime(parse_u64(text.substr(3, text.size() - 4), "prime"));
    if (text.starts_with("F")) return prime(parse_u64(text.substr(1), "prime"));
    throw ParseError("unknown field '" + std::string(text) + "' (expected Q, F<p> or Fp:<p>)");
}

std::string Field::name() const {
    return is_rational() ? "Q" : "F" + std::to_string(p_);
}

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
    std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::zero(Field f) { return from_integer(f, 0L); }
Scalar Scalar::one(Field f) { return from_integer(f, 1L); }

Scalar Scalar::from_integer(Field f, long value) {
    if (f.is_rational()) return Scalar(mpq_class(value));
    return reduced(value, f.characteristic());
}

Scalar Scalar::from_integer(Field f, const mpz_class& value) {
    if (f.is_rational()) return Scalar(mpq_class(value));
    return Scalar(Residue{reduce_mpz(value, f.characteristic()), f.characteristic()});
}

Scalar Scalar::from_rational(Field f, const mpq_class& value) {
    if (f.is_rational()) return Scalar(value);
    const std::uint64_t p = f.characteristic();
    const std::uint64_t den = reduce_mpz(value.get_den(), p);
    if (den == 0) {
        throw FieldError("denominator of " + value.get_str() + " vanishes in " + f.name());
    }
    const std::uint64_t num = reduce_mpz(value.get_num(), p);
    return Scalar(Residue{static_cast<std::uint64_t>(static_cast<u128>(num) * inverse_mod(den, p) % p), p});
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw FieldError("zero denominator");
    return Scalar(mpq_class(num, den));
}

Scalar Scalar::residue(std::int64_t k, std::uint64_t p) {
    Field::prime(p);
    return reduced(k, p);
}

Scalar Scalar::reduced(std::int64_t k, std::uint64_t p) {
    __int128 r = static_cast<__int128>(k) % static_cast<__int128>(p);
    if (r < 0) r += p;
    return Scalar(Residue{static_cast<std::uint64_t>(r), p});
}

Scalar Scalar::parse(std::string_view text) {
    text = trim(text);
    if (auto pos = text.find(" mod "); pos != std::string_view::npos) {
        auto lhs = trim(text.substr(0, pos));
        const std::uint64_t p = parse_u64(trim(text.substr(pos + 5)), "modulus");
        Field f = Field::prime(p);
        bool negative = false;
        if (!lhs.empty() && lhs.front() == '-') {
            negative = true;
            lhs.remove_prefix(1);
        }
        Scalar s = from_integer(f, mpz_class(std::string(lhs)));
        return negative ? -s : s;
    }
    std::string owned(text);
    if (owned.empty() || owned.find_first_not_of("+-0123456789/") != std::string::npos) {
        throw ParseError("cannot parse scalar '" + owned + "'");
    }
    if (owned.front() == '+') owned.erase(0, 1);
    mpq_class q;
    if (q.set_str(owned, 10) != 0) throw ParseError("cannot parse scalar '" + owned + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + owned + "'");
    return Scalar(q);
}

Field Scalar::field() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return Field{r->modulus};
    return Field::rationals();
}

bool Scalar::is_zero() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
    return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::rational_value() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
    throw FieldError("residue " + to_string() + " is not a rational");
}

std::uint64_t Scalar::residue_value() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->value;
    throw FieldError("rational " + to_string() + " is not a residue");
}

void Scalar::require_same_field(const Scalar& other) const {
    if (value_.index() != other.value_.index()) {
        throw FieldError("mixed-field operands: " + to_string() + " and " + other.to_string());
    }
    if (const auto* r = std::get_if<Residue>(&value_)) {
        if (r->modulus != std::get<Residue>(other.value_).modulus) {
            throw FieldError("mixed-field operands: " + to_string() + " and " + other.to_string());
        }
    }
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    if (const auto* r = std::get_if<Residue>(&value_)) {
        return Scalar(Residue{inverse_mod(r->value, r->modulus), r->modulus});
    }
    mpq_class inv = 1 / std::get<mpq_class>(value_);
    return Scalar(inv);
}

Scalar Scalar::operator-() const {
    if (const auto* r = std::get_if<Residue>(&value_)) {
        return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
    }
    return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    require_same_field(rhs);
    if (auto* r = std::get_if<Residue>(&value_)) {
        const std::uint64_t b = std::get<Residue>(rhs.value_).value;
        r->value = static_cast<std::uint64_t>((static_cast<u128>(r->value) + b) % r->modulus);
    } else {
        std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    return *this += -rhs;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    require_same_field(rhs);
    if (auto* r = std::get_if<Residue>(&value_)) {
        const std::uint64_t b = std::get<Residue>(rhs.value_).value;
        r->value = static_cast<std::uint64_t>(static_cast<u128>(r->value) * b % r->modulus);
    } else {
        std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    require_same_field(rhs);
    return *this *= rhs.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
}

std::string Scalar::to_string() const {
    if (const auto* r = std::get_if<Residue>(&value_)) {
        return std::to_string(r->value) + " mod " + std::to_string(r->modulus);
    }
    const auto& q = std::get<mpq_class>(value_);
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::pretty() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
    return std::get<mpq_class>(value_).get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.pretty();
}

}  // namespace sylvan
