#pragma once
#include "algres/rational.hpp"

#include <compare>
#include <string>

namespace algres {

// Real number coeff · radicand^(1/root) with an integer radicand ≥ 1.
// Torus normalization of moduli produces these; rational inputs scaled by
// rational factors always come back rational.
class Radical {
public:
    Radical() : c_(0) {}
    Radical(const Q& q) : c_(q) {}

    // coeff · base^(p/q), base > 0, q > 0.
    static Radical power(const Q& coeff, const Q& base, long p, long q);

    int sign() const { return algres::sgn(c_); }
    bool is_rational() const { return root_ == 1; }
    // Throws CheckError when irrational.
    Q rational() const;
    const Q& coeff() const { return c_; }
    const Z& radicand() const { return r_; }
    long root() const { return root_; }

    Radical operator-() const;
    Radical operator*(const Q& k) const;

    // "p/q", or "p/q*R^(1/n)".
    std::string str() const;

    friend bool operator==(const Radical& a, const Radical& b);
    friend std::strong_ordering operator<=>(const Radical& a, const Radical& b);

private:
    Q c_;
    Z r_ = 1;
    long root_ = 1;
    void canonicalize();
};

} // namespace algres
