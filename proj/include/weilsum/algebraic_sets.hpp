#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weilsum/finite_field.hpp"
#include "weilsum/report.hpp"

namespace weilsum {

/// The system t.v = a, v_1^s + ... + v_k^s = b^s over K^k. Since x -> x^s
/// permutes K, the second equation is the fractional-power constraint
/// <v> = b with all arithmetic kept polynomial.
struct QQuery {
    std::vector<FieldElement> t;  // k unit coefficients
    FieldElement a;
    FieldElement b;
};

// Number of solutions v in K^k, computed in O(q^{k-1}) by solving the
// hyperplane equation for the last coordinate. Throws ZeroCoefficientError
// if some t_i = 0 and TooLargeKError for k > 4.
std::int64_t q_count(const Field& K, std::uint64_t s, const QQuery& query);

/// The table V^[t], coefficients V^[t]_u = Q^t_{1,u} - Q^t_{1,0} on units u.
struct VBracket {
    std::vector<std::uint32_t> t_codes;
    std::vector<std::int64_t> coeffs;  // slot u-1 for unit code u

    std::int64_t at_unit(std::uint32_t u) const { return coeffs[u - 1]; }
    std::int64_t total() const;
};

VBracket v_bracket(const Field& K, std::uint64_t s, const std::vector<FieldElement>& t);
VBracket v_bracket_codes(const Field& K, std::uint64_t s, const std::vector<std::uint32_t>& t_codes);

// U = V^[1,-1] and V = V^[1,1].
VBracket u_table(const Field& K, std::uint64_t s);
VBracket v_table(const Field& K, std::uint64_t s);

// Exhaustive / seeded-sample verification of the counting identities
// (row sums, scaling, zero-argument symmetry, homogenization, the k <= 2
// closed forms, and the reflection/shift/parity facts). Exhausts t for
// k <= 2 and samples 20 seeded t-vectors for k = 3.
CheckReport verify_q_lemmas(const Field& K, std::uint64_t s, int k_max, std::uint64_t seed);

}  // namespace weilsum
