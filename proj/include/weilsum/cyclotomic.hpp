#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weilsum/bigint.hpp"
#include "weilsum/errors.hpp"

namespace weilsum {

/// An element of Z[zeta_p], zeta_p a primitive p-th root of unity, stored in
/// canonical reduced form: the unique expansion c_0 + c_1*z + ... + c_{p-2}*z^{p-2}
/// over the basis {1, z, ..., z^{p-2}}. Equality and ordering are coefficient-wise,
/// which is what makes value multisets well-defined.
///
/// For p = 2 the ring collapses to Z (z = -1) and the coefficient vector has
/// length one.
class CycInt {
public:
    explicit CycInt(std::int64_t p) : p_(p), c_(static_cast<std::size_t>(p - 1)) {}

    static CycInt from_integer(std::int64_t p, BigInt r);
    // z^e with e taken mod p; z^{p-1} is rewritten as -(1 + z + ... + z^{p-2}).
    static CycInt zeta_power(std::int64_t p, std::int64_t e);
    static CycInt from_reduced(std::int64_t p, std::vector<BigInt> coeffs);
    // Collapses a length-p exponent vector (coefficients of z^0..z^{p-1})
    // into reduced form.
    static CycInt from_exponents(std::int64_t p, const std::vector<BigInt>& w);

    std::int64_t p() const { return p_; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    bool is_zero() const;

    CycInt& operator+=(const CycInt& rhs);
    CycInt& operator-=(const CycInt& rhs);
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator-(const CycInt& a);
    friend CycInt operator*(const CycInt& a, const CycInt& b);

    CycInt scaled(const BigInt& k) const;
    CycInt scaled(std::int64_t k) const { return scaled(BigInt(k)); }

    friend bool operator==(const CycInt&, const CycInt&) = default;
    friend bool operator<(const CycInt& a, const CycInt& b);

private:
    std::int64_t p_;
    std::vector<BigInt> c_;
};

// Ring automorphism z -> z^j; requires gcd(j, p) = 1 (BadGaloisIndexError).
CycInt galois_apply(const CycInt& a, std::int64_t j);

// Complex conjugation, z -> z^{-1}.
CycInt conj(const CycInt& a);

// The integer r when a = r in reduced form, i.e. all higher coefficients
// vanish; nullopt otherwise.
std::optional<BigInt> is_rational(const CycInt& a);

// An algebraic integer (I + J*sqrt(p))/2 of Q(sqrt(p)); I and J have the
// same parity.
struct QuadDecomp {
    BigInt I;
    BigInt J;

    friend bool operator==(const QuadDecomp&, const QuadDecomp&) = default;
};

// Writes a as (I + J*sqrt(p))/2 when a lies in the quadratic subfield
// Q(sqrt(p)), i.e. when a is fixed by the squared Galois generator;
// nullopt otherwise. Requires p = 1 (mod 4), else WrongResidueError.
// Uses the classical evaluation sum_i eta(i) z^i = sqrt(p) of the quadratic
// Gauss sum, eta the Legendre symbol.
std::optional<QuadDecomp> quad_decompose(const CycInt& a);

// p-adic valuation of a rational integer; nullopt encodes v_p(0) = infinity.
std::optional<std::int64_t> vp_int(const BigInt& x, std::int64_t p);

// Floating evaluation at z = exp(2*pi*i/p). For magnitude and consistency
// checks only; exact paths never consult it.
std::complex<double> complex_embed(const CycInt& a);

/// Nonnegative expansion W = sum w_i z^i with sum w_i = total, as produced by
/// a character-sum tally over a field of order `total`.
struct Histogram {
    std::int64_t p = 0;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

CycInt reduce(const Histogram& h);

std::string to_string(const CycInt& a);
std::string to_string(const QuadDecomp& d, std::int64_t p);

}  // namespace weilsum
