#include "cutspan/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cutspan {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::size_t hash_mpz(mpz_srcptr z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
    const std::size_t limbs = mpz_size(z);
    for (std::size_t i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty number");

    bool negative = false;
    std::string_view body = s;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    mpq_class value;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        value = mpq_class(mpz_class(std::string(num), 10), d);
    } else {
        const auto dot = body.find('.');
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
        const bool whole_ok = whole.empty() || all_digits(whole);
        const bool frac_ok = frac.empty() || all_digits(frac);
        if (!whole_ok || !frac_ok || (whole.empty() && frac.empty())) {
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        }
        std::string digits(whole);
        digits += frac;
        mpz_class num(digits.empty() ? std::string("0") : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        value = mpq_class(num, den);
    }
    value.canonicalize();
    if (negative) value = -value;
    return Rational(value);
}

std::string Rational::approx(int digits) const {
    // Fixed-point rendering with `digits` decimals, trailing zeros trimmed.
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class scaled = mpq_class(::abs(q_)) * scale;
    mpz_class rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string s = rounded.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (sign() < 0 && s != "0") s.insert(0, "-");
    return s;
}

std::size_t Rational::hash() const {
    const std::size_t hn = hash_mpz(q_.get_num_mpz_t());
    const std::size_t hd = hash_mpz(q_.get_den_mpz_t());
    return hn ^ (hd + 0x9e3779b97f4a7c15ULL + (hn << 6) + (hn >> 2));
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace cutspan
