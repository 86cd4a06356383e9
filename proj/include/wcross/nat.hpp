#ifndef WCROSS_NAT_HPP
#define WCROSS_NAT_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wcross {

/// Arbitrary-precision nonnegative integer.
///
/// Every count and bound in the library is a Nat. Arithmetic is exact; the
/// only operation that can leave the naturals, subtraction, throws
/// std::domain_error instead of wrapping.
class Nat {
public:
    Nat() = default;
    Nat(std::uint64_t v);  // NOLINT(google-explicit-constructor)
    explicit Nat(const mpz_class& v);

    static Nat parse(std::string_view decimal);

    std::string str() const { return value_.get_str(); }
    const mpz_class& mpz() const { return value_; }

    bool fits_u64() const;
    std::uint64_t to_u64() const;  // throws std::overflow_error if it does not fit
    bool is_zero() const { return sgn(value_) == 0; }

    Nat& operator+=(const Nat& o) { value_ += o.value_; return *this; }
    Nat& operator*=(const Nat& o) { value_ *= o.value_; return *this; }
    Nat& operator-=(const Nat& o);

    friend Nat operator+(Nat a, const Nat& b) { return a += b; }
    friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
    friend Nat operator-(Nat a, const Nat& b) { return a -= b; }

    /// Floor division; throws std::domain_error on a zero divisor.
    friend Nat operator/(const Nat& a, const Nat& b);
    friend Nat operator%(const Nat& a, const Nat& b);

    friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Nat& n);

private:
    mpz_class value_{0};
};

Nat pow(const Nat& base, std::uint64_t exponent);

/// Quotient of a by b; throws std::logic_error when b does not divide a.
Nat divide_exact(const Nat& a, const Nat& b);

Nat gcd(const Nat& a, const Nat& b);

}  // namespace wcross

#endif  // WCROSS_NAT_HPP
