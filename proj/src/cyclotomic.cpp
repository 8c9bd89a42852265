#include "weilsum/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "weilsum/finite_field.hpp"

namespace weilsum {

namespace {

void check_same_prime(const CycInt& a, const CycInt& b) {
    if (a.p() != b.p()) throw MixedPrimeError("cyclotomic operands over different primes");
}

std::string bigint_str(const BigInt& x) {
    return fits_int64(x) ? std::to_string(to_int64(x)) : x.str();
}

}  // namespace

CycInt CycInt::from_integer(std::int64_t p, BigInt r) {
    CycInt a(p);
    a.c_[0] = std::move(r);
    return a;
}

CycInt CycInt::zeta_power(std::int64_t p, std::int64_t e) {
    e = (e % p + p) % p;
    CycInt a(p);
    if (e < p - 1) {
        a.c_[static_cast<std::size_t>(e)] = 1;
    } else {
        for (auto& c : a.c_) c = -1;
    }
    return a;
}

CycInt CycInt::from_reduced(std::int64_t p, std::vector<BigInt> coeffs) {
    if (static_cast<std::int64_t>(coeffs.size()) != p - 1) {
        throw Error("reduced form needs exactly p-1 coefficients");
    }
    CycInt a(p);
    a.c_ = std::move(coeffs);
    return a;
}

CycInt CycInt::from_exponents(std::int64_t p, const std::vector<BigInt>& w) {
    if (static_cast<std::int64_t>(w.size()) != p) {
        throw Error("exponent form needs exactly p coefficients");
    }
    CycInt a(p);
    const BigInt& top = w[static_cast<std::size_t>(p - 1)];
    for (std::int64_t i = 0; i < p - 1; ++i) {
        a.c_[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] - top;
    }
    return a;
}

bool CycInt::is_zero() const {
    for (const auto& c : c_) {
        if (c != 0) return false;
    }
    return true;
}

CycInt& CycInt::operator+=(const CycInt& rhs) {
    check_same_prime(*this, rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs) {
    check_same_prime(*this, rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

CycInt operator-(const CycInt& a) {
    CycInt out(a.p_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = -a.c_[i];
    return out;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    check_same_prime(a, b);
    const std::int64_t p = a.p_;
    std::vector<BigInt> w(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p - 1; ++i) {
        const BigInt& ai = a.c_[static_cast<std::size_t>(i)];
        if (ai == 0) continue;
        for (std::int64_t j = 0; j < p - 1; ++j) {
            const BigInt& bj = b.c_[static_cast<std::size_t>(j)];
            if (bj == 0) continue;
            w[static_cast<std::size_t>((i + j) % p)] += ai * bj;
        }
    }
    return CycInt::from_exponents(p, w);
}

CycInt CycInt::scaled(const BigInt& k) const {
    CycInt out(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * k;
    return out;
}

bool operator<(const CycInt& a, const CycInt& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    return a.c_ < b.c_;
}

CycInt galois_apply(const CycInt& a, std::int64_t j) {
    const std::int64_t p = a.p();
    j = (j % p + p) % p;
    if (j == 0) throw BadGaloisIndexError("galois index must be coprime to p");
    std::vector<BigInt> w(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p - 1; ++i) {
        const BigInt& ci = a.coeffs()[static_cast<std::size_t>(i)];
        if (ci == 0) continue;
        w[static_cast<std::size_t>(i * j % p)] += ci;
    }
    return CycInt::from_exponents(p, w);
}

CycInt conj(const CycInt& a) { return galois_apply(a, a.p() - 1); }

std::optional<BigInt> is_rational(const CycInt& a) {
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] != 0) return std::nullopt;
    }
    return a.coeffs()[0];
}

std::optional<QuadDecomp> quad_decompose(const CycInt& a) {
    const std::int64_t p = a.p();
    if (p % 4 != 1) throw WrongResidueError("quadratic subfield decomposition needs p = 1 (mod 4)");

    // Lift to the exponent representation with w_{p-1} = 0. The element lies
    // in Q(sqrt(p)) precisely when the lifted coefficients are constant on
    // quadratic residues and constant on non-residues (lifts differ only by
    // the all-ones vector, which preserves that property).
    std::vector<char> residue(static_cast<std::size_t>(p), 0);
    for (std::int64_t i = 1; i < p; ++i) residue[static_cast<std::size_t>(i * i % p)] = 1;

    auto lifted = [&](std::int64_t i) -> BigInt {
        return i < p - 1 ? a.coeffs()[static_cast<std::size_t>(i)] : BigInt(0);
    };
    std::optional<BigInt> w_plus, w_minus;
    for (std::int64_t i = 1; i < p; ++i) {
        auto& slot = residue[static_cast<std::size_t>(i)] ? w_plus : w_minus;
        if (!slot) {
            slot = lifted(i);
        } else if (*slot != lifted(i)) {
            return std::nullopt;
        }
    }
    // w_0 + w_+ * (sum over residues of z^i) + w_- * (sum over non-residues):
    // with sum_{i != 0} z^i = -1 and the quadratic Gauss sum equal to sqrt(p),
    // this is (w_0 - (w_+ + w_-)/2) + ((w_+ - w_-)/2) sqrt(p).
    QuadDecomp d;
    d.I = 2 * a.coeffs()[0] - (*w_plus + *w_minus);
    d.J = *w_plus - *w_minus;
    return d;
}

std::optional<std::int64_t> vp_int(const BigInt& x, std::int64_t p) {
    if (x == 0) return std::nullopt;
    BigInt y = x;
    std::int64_t v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

std::complex<double> complex_embed(const CycInt& a) {
    const double p = static_cast<double>(a.p());
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / p;
        acc += to_double(a.coeffs()[i]) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
}

CycInt reduce(const Histogram& h) {
    std::vector<BigInt> w(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i) w[i] = h.counts[i];
    return CycInt::from_exponents(h.p, w);
}

std::string to_string(const CycInt& a) {
    std::string out;
    out.reserve(8 * a.coeffs().size());
    bool first = true;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const BigInt& c = a.coeffs()[i];
        if (c == 0) continue;
        const bool negative = c < 0;
        if (first) {
            if (negative) out += '-';
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        const BigInt mag = negative ? BigInt(-c) : c;
        if (i == 0) {
            out += bigint_str(mag);
        } else {
            if (mag != 1) {
                out += bigint_str(mag);
                out += '*';
            }
            out += 'z';
            if (i > 1) {
                out += '^';
                out += std::to_string(i);
            }
        }
    }
    if (first) out += '0';
    out += " (p=";
    out += std::to_string(a.p());
    out += ')';
    return out;
}

std::string to_string(const QuadDecomp& d, std::int64_t p) {
    const BigInt jmag = d.J < 0 ? BigInt(-d.J) : d.J;
    std::string out = "(";
    out += bigint_str(d.I);
    out += d.J < 0 ? '-' : '+';
    out += bigint_str(jmag);
    out += "*sqrt(";
    out += std::to_string(p);
    out += "))/2";
    return out;
}

}  // namespace weilsum
