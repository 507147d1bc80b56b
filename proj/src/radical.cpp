#include "algres/radical.hpp"
#include "algres/error.hpp"

#include <numeric>

namespace algres {

namespace {

Q qpow(const Q& b, long e) {
    Q r = 1;
    Q base = e < 0 ? Q(1) / b : b;
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return r;
}

Z zpow(const Z& b, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

bool exact_root(const Z& m, unsigned long k, Z& out) {
    return mpz_root(out.get_mpz_t(), m.get_mpz_t(), k) != 0;
}

// |v|^l as a rational, l a multiple of root.
Q abs_power(const Radical& v, long l) {
    Q c = abs(v.coeff());
    return qpow(c, l) * Q(zpow(v.radicand(), static_cast<unsigned long>(l / v.root())));
}

} // namespace

Radical Radical::power(const Q& coeff, const Q& base, long p, long q) {
    if (q <= 0) throw CheckError("radical: root must be positive");
    Radical r;
    if (coeff == 0) return r;
    if (base <= 0) throw CheckError("radical: base must be positive");
    long g = std::gcd(std::labs(p), q);
    p /= g;
    q /= g;
    long k = p >= 0 ? p / q : -((-p + q - 1) / q);
    long pr = p - k * q;
    r.c_ = coeff * qpow(base, k);
    if (pr != 0) {
        Z n = zpow(base.get_num(), static_cast<unsigned long>(pr));
        Z d = zpow(base.get_den(), static_cast<unsigned long>(pr));
        // (n/d)^(1/q) = (n·d^(q-1))^(1/q) / d
        r.c_ /= Q(d);
        r.r_ = n * zpow(d, static_cast<unsigned long>(q - 1));
        r.root_ = q;
    }
    r.c_.canonicalize();
    r.canonicalize();
    return r;
}

void Radical::canonicalize() {
    if (c_ == 0 || r_ == 1) {
        r_ = 1;
        root_ = 1;
        return;
    }
    bool changed = true;
    while (changed && root_ > 1) {
        changed = false;
        for (long d = root_; d >= 2; --d) {
            if (root_ % d) continue;
            Z rt;
            if (exact_root(r_, static_cast<unsigned long>(d), rt)) {
                r_ = rt;
                root_ /= d;
                changed = true;
                break;
            }
        }
    }
    // Pull out small prime powers.
    for (unsigned long pr = 2; pr < 1000 && root_ > 1 && r_ > 1; ++pr) {
        bool prime = true;
        for (unsigned long f = 2; f * f <= pr; ++f)
            if (pr % f == 0) prime = false;
        if (!prime) continue;
        Z pk = zpow(Z(pr), static_cast<unsigned long>(root_));
        while (r_ % pk == 0) {
            r_ /= pk;
            c_ *= Q(Z(pr));
        }
    }
    if (r_ == 1) root_ = 1;
}

Q Radical::rational() const {
    if (!is_rational()) throw CheckError("radical " + str() + " is irrational");
    return c_;
}

Radical Radical::operator-() const {
    Radical r = *this;
    r.c_ = -r.c_;
    return r;
}

Radical Radical::operator*(const Q& k) const {
    Radical r = *this;
    r.c_ *= k;
    if (r.c_ == 0) r = Radical();
    return r;
}

std::string Radical::str() const {
    if (root_ == 1) return to_string(c_);
    return to_string(c_) + "*" + r_.get_str() + "^(1/" + std::to_string(root_) + ")";
}

bool operator==(const Radical& a, const Radical& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Radical& a, const Radical& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    long l = std::lcm(a.root(), b.root());
    Q pa = abs_power(a, l), pb = abs_power(b, l);
    if (pa == pb) return std::strong_ordering::equal;
    bool less = pa < pb;
    if (sa < 0) less = !less;
    return less ? std::strong_ordering::less : std::strong_ordering::greater;
}

} // namespace algres
