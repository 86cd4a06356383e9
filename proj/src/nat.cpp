#include "wcross/nat.hpp"

#include <ostream>
#include <stdexcept>

namespace wcross {

Nat::Nat(std::uint64_t v) {
    // mpz_class has no portable uint64_t constructor on every platform.
    mpz_import(value_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

Nat::Nat(const mpz_class& v) : value_(v) {
    if (sgn(v) < 0) throw std::domain_error("Nat: negative value " + v.get_str());
}

Nat Nat::parse(std::string_view decimal) {
    if (decimal.empty()) throw std::invalid_argument("Nat: empty string");
    for (char c : decimal) {
        if (c < '0' || c > '9') throw std::invalid_argument("Nat: not a decimal integer: " + std::string(decimal));
    }
    return Nat(mpz_class(std::string(decimal), 10));
}

bool Nat::fits_u64() const {
    return mpz_sizeinbase(value_.get_mpz_t(), 2) <= 64;
}

std::uint64_t Nat::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Nat: value does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, value_.get_mpz_t());
    return out;
}

Nat& Nat::operator-=(const Nat& o) {
    if (cmp(value_, o.value_) < 0) {
        throw std::domain_error("Nat: subtraction " + value_.get_str() + " - " + o.value_.get_str() + " underflows");
    }
    value_ -= o.value_;
    return *this;
}

Nat operator/(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("Nat: division by zero");
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.value_.get_mpz_t(), b.value_.get_mpz_t());
    return Nat(q);
}

Nat operator%(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("Nat: division by zero");
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.value_.get_mpz_t(), b.value_.get_mpz_t());
    return Nat(r);
}

std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.str(); }

Nat pow(const Nat& base, std::uint64_t exponent) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.mpz().get_mpz_t(), exponent);
    return Nat(r);
}

Nat divide_exact(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("Nat: division by zero");
    if (!mpz_divisible_p(a.mpz().get_mpz_t(), b.mpz().get_mpz_t())) {
        throw std::logic_error("Nat: " + b.str() + " does not divide " + a.str());
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Nat(q);
}

Nat gcd(const Nat& a, const Nat& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Nat(g);
}

}  // namespace wcross
