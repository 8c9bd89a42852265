#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weilsum/cyclotomic.hpp"
#include "weilsum/finite_field.hpp"

namespace weilsum {

/// One Weil sum W_u = sum over x in K of psi(x^s - u*x), kept both in
/// canonical reduced form and as the nonnegative tally w_i = #{x : Tr(x^s - u x) = i}.
/// When p = 1 (mod 4) and the value lies in Q(sqrt(p)), `quad` holds its
/// (I + J*sqrt(p))/2 decomposition.
struct WeilValue {
    CycInt value;
    Histogram histogram;
    std::optional<QuadDecomp> quad;
};

/// The multiset {W_u : u in K^x} with frequencies, plus the per-unit map.
/// Distinct values are kept sorted in canonical coefficient order, so all
/// derived renderings are deterministic.
class WeilSpectrum {
public:
    WeilSpectrum(FieldHandle field, std::uint64_t s, std::vector<WeilValue> distinct,
                 std::vector<std::int64_t> frequencies, std::vector<std::uint32_t> index_by_unit);

    const Field& field() const { return *field_; }
    const FieldHandle& field_handle() const { return field_; }
    std::uint64_t s() const { return s_; }

    std::size_t num_values() const { return distinct_.size(); }
    const std::vector<WeilValue>& distinct() const { return distinct_; }
    const std::vector<std::int64_t>& frequencies() const { return frequencies_; }

    // Index into distinct() for the unit with the given code.
    std::uint32_t index_of_unit(std::uint32_t unit_code) const {
        return index_by_unit_[unit_code - 1];
    }
    const WeilValue& value_of_unit(std::uint32_t unit_code) const {
        return distinct_[index_of_unit(unit_code)];
    }

private:
    FieldHandle field_;
    std::uint64_t s_;
    std::vector<WeilValue> distinct_;
    std::vector<std::int64_t> frequencies_;
    std::vector<std::uint32_t> index_by_unit_;  // unit code u -> distinct index, slot u-1
};

// Single Weil sum; u may be zero (the monomial sum, which is always 0).
// Throws NotInvertibleExponentError unless gcd(s, q-1) = 1.
WeilValue weil_sum(const Field& K, std::uint64_t s, const FieldElement& u);

// Full spectrum over K^x in one O(q^2) pass.
WeilSpectrum spectrum(FieldHandle K, std::uint64_t s);

// True when s is a power of p modulo q-1 (all exponents over fields with
// q <= 4 are degenerate; degenerate spectra are {0,q}, or {q} when q = 2).
bool is_degenerate(std::int64_t q, std::int64_t p, std::uint64_t s);

// Orbit representatives (least member, ascending) of the invertible
// exponents under s -> p*s and s -> s^{-1}, both mod q-1. Equivalent
// exponents produce the same spectrum.
std::vector<std::uint64_t> exponent_classes(std::int64_t q, std::int64_t p);

// Least member of the equivalence class of s.
std::uint64_t canonical_exponent(std::int64_t q, std::int64_t p, std::uint64_t s);

/// The Galois action on the value set: the generator of Gal(Q(z)/Q) sends
/// W_u to W_{lambda*u} with lambda = gamma^{1 - 1/s}, 1/s inverted mod p-1
/// (distinct from the mod q-1 inverse used for exponent orbits).
struct TauAction {
    std::int64_t lambda = 1;              // unit of the prime subfield
    // The permutation of the value set, as indices into the spectrum's
    // sorted distinct() list: value i maps to value mapping[i].
    std::vector<std::uint32_t> mapping;
    std::vector<int> cycle_type;          // sorted ascending, sums to |value set|
    int order = 1;                        // lcm of the cycle type
};

TauAction tau_action(const WeilSpectrum& spec);

struct ClassificationRecord {
    std::int64_t q = 0;
    std::int64_t p = 0;
    int n = 1;
    std::uint64_t s = 1;
    std::uint64_t s_canonical = 1;
    int num_values = 0;
    bool is_degenerate = false;
    bool is_rational = false;
    int tau_order = 1;
    std::vector<int> cycle_type;
    bool helleseth_predicate = false;  // s = 1 (mod p-1), the classical rationality criterion
    std::vector<std::string> values_rendered;
    std::vector<std::int64_t> frequencies;
};

// Computes the spectrum and classifies it. Cross-checks the classical
// criteria (rationality iff s = 1 mod p-1; at least 3 values iff
// nondegenerate; tau order = (p-1)/gcd(p-1, s-1)) and throws
// CheckFailedError if any fails.
ClassificationRecord classify(FieldHandle K, std::uint64_t s);
ClassificationRecord classify(const WeilSpectrum& spec, const TauAction& tau);

// Rendering: integers as decimals, quadratic values as (I+J*sqrt(p))/2,
// anything else in reduced coefficient form.
std::string render_value(const WeilValue& v);

std::string classification_csv_header();
std::string to_csv_row(const ClassificationRecord& rec);

}  // namespace weilsum
