#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weilsum/errors.hpp"

namespace weilsum {

// Element of F_{p^n} as a reduced polynomial representative,
// constant term first. Equality is coefficient-wise.
struct FieldElement {
    std::vector<std::int32_t> coeffs;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// Exact arithmetic in F_{p^n} with a fixed monic irreducible modulus.
///
/// Elements are addressed either as FieldElement values or as "codes":
/// the index of an element in the canonical enumeration, which orders
/// coefficient vectors lexicographically with the constant term most
/// significant. Code 0 is the zero element, so units are codes 1..q-1.
///
/// The constructor precomputes discrete log / antilog tables for the first
/// primitive element in enumeration order, one O(q) table each, plus a
/// trace table. Instances are immutable after construction and safe to
/// share between threads.
class Field {
public:
    Field(std::int64_t p, int n, std::vector<std::int32_t> modulus);

    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    std::int64_t q() const { return q_; }
    const std::vector<std::int32_t>& modulus() const { return modulus_; }

    std::uint32_t zero_code() const { return 0; }
    std::uint32_t one_code() const { return one_; }
    std::uint32_t generator_code() const { return generator_; }

    std::uint32_t encode(const FieldElement& x) const;
    FieldElement decode(std::uint32_t code) const;

    // Embeds the residue a mod p as the constant polynomial.
    std::uint32_t from_prime_subfield(std::int64_t a) const;

    std::uint32_t add_code(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub_code(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_code(std::uint32_t a) const;
    std::uint32_t mul_code(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_code(std::uint32_t a) const;  // throws DivisionByZeroError on 0
    std::uint32_t pow_code(std::uint32_t x, std::uint64_t e) const;  // pow(0,0) = 1

    // Trace to the prime subfield, as a residue in [0,p).
    std::int32_t trace_code(std::uint32_t x) const { return trace_[x]; }

    // Discrete log base the canonical generator; defined for codes 1..q-1.
    std::uint32_t log_code(std::uint32_t x) const;
    // generator^(k mod (q-1))
    std::uint32_t exp_code(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
    // Raw antilog table of length q-1 (exp_table()[k] = generator^k).
    const std::vector<std::uint32_t>& exp_table() const { return exp_; }

    bool same_field(const Field& other) const {
        return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
    }

private:
    std::int64_t p_;
    int n_;
    std::int64_t q_;
    std::vector<std::int32_t> modulus_;
    std::uint32_t one_;
    std::uint32_t generator_;
    std::vector<std::int32_t> digits_;       // q*n, base-p digits of each code
    std::vector<std::int64_t> weights_;      // positional weights for encode
    std::vector<std::int32_t> trace_;        // q
    std::vector<std::uint32_t> exp_;         // q-1
    std::vector<std::uint32_t> log_;         // q (log_[0] unused)
};

using FieldHandle = std::shared_ptr<const Field>;

// Builds F_{p^n}. When no modulus is given, the lexicographically smallest
// monic irreducible of degree n is selected (constant term compared first),
// so the construction is deterministic. Throws NotPrimeError,
// ReducibleModulusError or TooLargeError (q is capped at 2^20).
FieldHandle make_field(std::int64_t p, int n,
                       std::optional<std::vector<std::int32_t>> modulus = std::nullopt);

// Parses "p^n" or "p^n:c0,c1,...,cn" (modulus coefficients constant first),
// e.g. "5", "2^3", "2^3:1,1,0,1".
FieldHandle parse_field_spec(const std::string& spec);

std::int64_t trace(const Field& K, const FieldElement& x);
FieldElement add(const Field& K, const FieldElement& a, const FieldElement& b);
FieldElement sub(const Field& K, const FieldElement& a, const FieldElement& b);
FieldElement neg(const Field& K, const FieldElement& a);
FieldElement mul(const Field& K, const FieldElement& a, const FieldElement& b);
FieldElement inv(const Field& K, const FieldElement& a);
FieldElement pow(const Field& K, const FieldElement& x, std::uint64_t e);

// First generator of K^x in enumeration order.
FieldElement primitive_element(const Field& K);
// Smallest primitive root mod p (1 for p = 2).
std::int64_t primitive_root_mod_p(std::int64_t p);

std::vector<FieldElement> enumerate(const Field& K);
std::vector<FieldElement> units(const Field& K);

bool is_prime(std::int64_t m);
bool is_invertible_exponent(std::int64_t q, std::uint64_t s);

// Unique t in [1,m) with s*t = 1 (mod m); throws NotCoprimeError when
// gcd(s,m) != 1. By convention returns 0 for m = 1.
std::uint64_t mod_inverse(std::uint64_t s, std::uint64_t m);

std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::int64_t m);

}  // namespace weilsum
