#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "weilsum/algebraic_sets.hpp"
#include "weilsum/cyclotomic.hpp"
#include "weilsum/report.hpp"
#include "weilsum/weil_spectrum.hpp"

namespace weilsum {

/// Element of the group algebra over K^x with coefficients in Z[zeta_p]:
/// a formal sum over units with convolution as the product. Stored densely,
/// slot u-1 for the unit with code u; the elements that matter here
/// (the additive character vector, Weil sum vectors, their products) are
/// dense by nature.
class GroupAlgebraElement {
public:
    explicit GroupAlgebraElement(FieldHandle field);

    const Field& field() const { return *field_; }
    const FieldHandle& field_handle() const { return field_; }

    const CycInt& at_unit(std::uint32_t u) const { return coeffs_[u - 1]; }
    CycInt& at_unit(std::uint32_t u) { return coeffs_[u - 1]; }
    const std::vector<CycInt>& coeffs() const { return coeffs_; }

    GroupAlgebraElement& operator+=(const GroupAlgebraElement& rhs);
    GroupAlgebraElement& operator-=(const GroupAlgebraElement& rhs);
    friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) {
        return a += b;
    }
    friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) {
        return a -= b;
    }

    GroupAlgebraElement scaled(const CycInt& k) const;
    GroupAlgebraElement scaled(const BigInt& k) const;
    GroupAlgebraElement scaled(std::int64_t k) const;

    bool operator==(const GroupAlgebraElement& rhs) const {
        return field_->same_field(*rhs.field_) && coeffs_ == rhs.coeffs_;
    }

private:
    FieldHandle field_;
    std::vector<CycInt> coeffs_;
};

// (S*T)_w = sum over uv = w of S_u T_v; the direct O(q^2) double loop,
// keeping the exact path free of any transform round-off.
GroupAlgebraElement convolve(const GroupAlgebraElement& S, const GroupAlgebraElement& T);

// conj(S) = sum conj(S_u) [u^{-1}].
GroupAlgebraElement conj_elem(const GroupAlgebraElement& S);

// S^{(t)} = sum S_u [u^t]; coefficients merge when t is not invertible mod q-1.
GroupAlgebraElement twist(const GroupAlgebraElement& S, std::int64_t t);

// |S| = sum of coefficients.
CycInt total(const GroupAlgebraElement& S);

// coeff * [u]
GroupAlgebraElement basis_element(FieldHandle K, std::uint32_t unit_code, CycInt coeff);
GroupAlgebraElement basis_element(FieldHandle K, std::uint32_t unit_code);
// K^x as a group algebra element (all coefficients 1).
GroupAlgebraElement units_element(FieldHandle K);
// Integer coefficient table, e.g. a V-table, lifted to the group algebra.
GroupAlgebraElement from_int_table(FieldHandle K, const std::vector<std::int64_t>& coeffs);

// Psi = sum psi(u) [u], the additive character vector; |Psi| = -1.
GroupAlgebraElement psi_element(FieldHandle K);
// W = sum W_u [u]; |W| = q and W conj(W) = q^2 [1].
GroupAlgebraElement weil_element(const WeilSpectrum& spec);
// W^[t] = sum W_{t_1 u} ... W_{t_k u} [u], k <= 4.
GroupAlgebraElement w_bracket(const WeilSpectrum& spec, const std::vector<std::uint32_t>& t_codes);

/// Multiplicative characters chi_j(g^a) = exp(2*pi*i*j*a/(q-1)) over the
/// canonical generator g, evaluated as complex floats. Used only for
/// tolerance-checked properties (Gauss sum magnitudes, Fourier inversion);
/// every identity with both sides in Z[zeta_p] is checked exactly instead.
class CharacterTable {
public:
    explicit CharacterTable(FieldHandle field);

    const Field& field() const { return *field_; }
    std::complex<double> chi(std::int64_t j, std::uint32_t unit_code) const;
    std::complex<double> psi(std::uint32_t code) const;  // additive character

private:
    FieldHandle field_;
};

// G(chi_j) = sum psi(u) chi_j(u); equals -1 at j = 0 and has magnitude
// sqrt(q) otherwise.
std::complex<double> gauss_sum(const CharacterTable& table, std::int64_t j);

// chi_j(S) = sum S_u chi_j(u).
std::complex<double> fourier_coefficient(const CharacterTable& table, const GroupAlgebraElement& S,
                                         std::int64_t j);

// Exact verification of the group algebra identities tying W to Psi, the
// V-tables, and the symmetrized sums (factorizations, autocorrelations,
// totals, and power moments).
CheckReport verify_identities(FieldHandle K, std::uint64_t s, std::uint64_t seed);

// Float-tolerance character checks: principal and non-principal Gauss sums,
// character orthogonality, multiplicativity of Fourier coefficients, and
// Fourier inversion of seeded random elements. Tolerance 1e-6.
CheckReport verify_characters(FieldHandle K, std::uint64_t seed);

}  // namespace weilsum
