#include "weilsum/group_algebra.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace weilsum {

namespace {

void require_same_field(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    if (!a.field().same_field(b.field())) {
        throw MixedFieldError("group algebra operands over different fields");
    }
}

BigInt bigint_pow(std::int64_t base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

GroupAlgebraElement::GroupAlgebraElement(FieldHandle field)
    : field_(std::move(field)),
      coeffs_(static_cast<std::size_t>(field_->q() - 1), CycInt(field_->p())) {}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const CycInt& k) const {
    GroupAlgebraElement out(field_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * k;
    return out;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const BigInt& k) const {
    GroupAlgebraElement out(field_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i].scaled(k);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::scaled(std::int64_t k) const { return scaled(BigInt(k)); }

GroupAlgebraElement convolve(const GroupAlgebraElement& S, const GroupAlgebraElement& T) {
    require_same_field(S, T);
    const Field& K = S.field();
    const std::int64_t q = K.q();
    GroupAlgebraElement out(S.field_handle());
    for (std::int64_t u = 1; u < q; ++u) {
        const CycInt& su = S.at_unit(static_cast<std::uint32_t>(u));
        if (su.is_zero()) continue;
        for (std::int64_t v = 1; v < q; ++v) {
            const CycInt& tv = T.at_unit(static_cast<std::uint32_t>(v));
            if (tv.is_zero()) continue;
            out.at_unit(K.mul_code(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v))) +=
                su * tv;
        }
    }
    return out;
}

GroupAlgebraElement conj_elem(const GroupAlgebraElement& S) {
    const Field& K = S.field();
    GroupAlgebraElement out(S.field_handle());
    for (std::int64_t u = 1; u < K.q(); ++u) {
        out.at_unit(K.inv_code(static_cast<std::uint32_t>(u))) =
            conj(S.at_unit(static_cast<std::uint32_t>(u)));
    }
    return out;
}

GroupAlgebraElement twist(const GroupAlgebraElement& S, std::int64_t t) {
    const Field& K = S.field();
    const std::int64_t N = K.q() - 1;
    const std::uint64_t t_red = static_cast<std::uint64_t>((t % N + N) % N);
    GroupAlgebraElement out(S.field_handle());
    for (std::int64_t u = 1; u < K.q(); ++u) {
        out.at_unit(K.pow_code(static_cast<std::uint32_t>(u), t_red)) +=
            S.at_unit(static_cast<std::uint32_t>(u));
    }
    return out;
}

CycInt total(const GroupAlgebraElement& S) {
    CycInt sum(S.field().p());
    for (const auto& c : S.coeffs()) sum += c;
    return sum;
}

GroupAlgebraElement basis_element(FieldHandle K, std::uint32_t unit_code, CycInt coeff) {
    GroupAlgebraElement out(std::move(K));
    out.at_unit(unit_code) = std::move(coeff);
    return out;
}

GroupAlgebraElement basis_element(FieldHandle K, std::uint32_t unit_code) {
    const std::int64_t p = K->p();
    return basis_element(std::move(K), unit_code, CycInt::from_integer(p, 1));
}

GroupAlgebraElement units_element(FieldHandle K) {
    GroupAlgebraElement out(K);
    for (std::int64_t u = 1; u < K->q(); ++u) {
        out.at_unit(static_cast<std::uint32_t>(u)) = CycInt::from_integer(K->p(), 1);
    }
    return out;
}

GroupAlgebraElement from_int_table(FieldHandle K, const std::vector<std::int64_t>& coeffs) {
    GroupAlgebraElement out(K);
    for (std::int64_t u = 1; u < K->q(); ++u) {
        out.at_unit(static_cast<std::uint32_t>(u)) =
            CycInt::from_integer(K->p(), coeffs[static_cast<std::size_t>(u - 1)]);
    }
    return out;
}

GroupAlgebraElement psi_element(FieldHandle K) {
    GroupAlgebraElement out(K);
    for (std::int64_t u = 1; u < K->q(); ++u) {
        out.at_unit(static_cast<std::uint32_t>(u)) =
            CycInt::zeta_power(K->p(), K->trace_code(static_cast<std::uint32_t>(u)));
    }
    return out;
}

GroupAlgebraElement weil_element(const WeilSpectrum& spec) {
    GroupAlgebraElement out(spec.field_handle());
    for (std::int64_t u = 1; u < spec.field().q(); ++u) {
        out.at_unit(static_cast<std::uint32_t>(u)) =
            spec.value_of_unit(static_cast<std::uint32_t>(u)).value;
    }
    return out;
}

GroupAlgebraElement w_bracket(const WeilSpectrum& spec, const std::vector<std::uint32_t>& t_codes) {
    if (t_codes.empty()) throw Error("coefficient vector t must be nonempty");
    if (t_codes.size() > 4) throw TooLargeKError("k is capped at 4");
    const Field& K = spec.field();
    for (auto t : t_codes) {
        if (t == 0) throw ZeroCoefficientError("t entries must be units");
    }
    GroupAlgebraElement out(spec.field_handle());
    for (std::int64_t u = 1; u < K.q(); ++u) {
        CycInt prod = spec.value_of_unit(K.mul_code(t_codes[0], static_cast<std::uint32_t>(u))).value;
        for (std::size_t i = 1; i < t_codes.size(); ++i) {
            prod = prod * spec.value_of_unit(K.mul_code(t_codes[i], static_cast<std::uint32_t>(u))).value;
        }
        out.at_unit(static_cast<std::uint32_t>(u)) = std::move(prod);
    }
    return out;
}

CharacterTable::CharacterTable(FieldHandle field) : field_(std::move(field)) {}

std::complex<double> CharacterTable::chi(std::int64_t j, std::uint32_t unit_code) const {
    const std::int64_t N = field_->q() - 1;
    const std::int64_t jr = (j % N + N) % N;
    const std::int64_t a = field_->log_code(unit_code);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(jr * a % N) / static_cast<double>(N);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> CharacterTable::psi(std::uint32_t code) const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(field_->trace_code(code)) /
                         static_cast<double>(field_->p());
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> gauss_sum(const CharacterTable& table, std::int64_t j) {
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t u = 1; u < table.field().q(); ++u) {
        acc += table.psi(static_cast<std::uint32_t>(u)) * table.chi(j, static_cast<std::uint32_t>(u));
    }
    return acc;
}

std::complex<double> fourier_coefficient(const CharacterTable& table, const GroupAlgebraElement& S,
                                         std::int64_t j) {
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t u = 1; u < table.field().q(); ++u) {
        const CycInt& c = S.at_unit(static_cast<std::uint32_t>(u));
        if (c.is_zero()) continue;
        acc += complex_embed(c) * table.chi(j, static_cast<std::uint32_t>(u));
    }
    return acc;
}

namespace {

// Exhaustive t-vectors of length k over K^x for small q, else `samples`
// seeded draws.
std::vector<std::vector<std::uint32_t>> sample_t_vectors(const Field& K, int k, int samples,
                                                         std::mt19937_64& rng) {
    const std::int64_t q = K.q();
    std::vector<std::vector<std::uint32_t>> out;
    if (q <= 7) {
        std::vector<std::uint32_t> t(static_cast<std::size_t>(k), 1);
        while (true) {
            out.push_back(t);
            int i = 0;
            while (i < k && ++t[static_cast<std::size_t>(i)] == static_cast<std::uint32_t>(q)) {
                t[static_cast<std::size_t>(i++)] = 1;
            }
            if (i == k) break;
        }
    } else {
        for (int i = 0; i < samples; ++i) {
            std::vector<std::uint32_t> t(static_cast<std::size_t>(k));
            for (auto& e : t) e = static_cast<std::uint32_t>(rng() % (q - 1) + 1);
            out.push_back(t);
        }
    }
    return out;
}

std::string render_t(const std::vector<std::uint32_t>& t_codes) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < t_codes.size(); ++i) {
        if (i > 0) out << ",";
        out << t_codes[i];
    }
    out << ")";
    return out.str();
}

}  // namespace

CheckReport verify_identities(FieldHandle K, std::uint64_t s, std::uint64_t seed) {
    CheckReport report;
    const std::int64_t p = K->p();
    const std::int64_t q = K->q();
    const std::int64_t N = q - 1;
    std::mt19937_64 rng(seed);

    const auto sp = spectrum(K, s);
    const auto W = weil_element(sp);
    const auto Psi = psi_element(K);
    const auto Kx = units_element(K);
    const std::uint32_t one = K->one_code();
    auto constant = [&](const BigInt& x) { return CycInt::from_integer(p, x); };

    report.add("psi-total", total(Psi) == constant(-1));

    {  // Psi^{(t)} conj(Psi^{(t)}) = q[1] - K^x for every t invertible mod q-1
        GroupAlgebraElement expected = basis_element(K, one).scaled(q) - Kx;
        bool pass = true;
        std::string witness;
        std::vector<std::int64_t> ts;
        for (std::int64_t t = 1; t <= N; ++t) {
            if (std::gcd(t, N) == 1) ts.push_back(t);
        }
        if (ts.size() > 16) {
            std::vector<std::int64_t> sampled;
            for (int i = 0; i < 8; ++i) sampled.push_back(ts[rng() % ts.size()]);
            ts = std::move(sampled);
        }
        for (std::int64_t t : ts) {
            const auto tw = twist(Psi, t);
            if (convolve(tw, conj_elem(tw)) != expected) {
                pass = false;
                witness = "t=" + std::to_string(t);
                break;
            }
        }
        report.add("psi-autocorrelation", pass, witness);
    }

    report.add("weil-total", total(W) == constant(q));
    report.add("weil-autocorrelation",
               convolve(W, conj_elem(W)) == basis_element(K, one).scaled(BigInt(q) * q));

    {  // W = Psi conj(Psi^{(1/s)}) + K^x, with 1/s taken mod q-1
        const std::uint64_t s_inv =
            mod_inverse(s % static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(N));
        const auto rhs =
            convolve(Psi, conj_elem(twist(Psi, static_cast<std::int64_t>(s_inv)))) + Kx;
        report.add("weil-factorization", W == rhs);
    }

    const auto pows_ctx = [&] {  // Q^t_{a,b} helper on codes
        return [&, handle = K](const std::vector<std::uint32_t>& t_codes, std::uint32_t a,
                               std::uint32_t b) {
            QQuery query;
            for (auto t : t_codes) query.t.push_back(handle->decode(t));
            query.a = handle->decode(a);
            query.b = handle->decode(b);
            return q_count(*handle, s, query);
        };
    }();

    {  // |W^[t]| = (q^2 Q^t_{0,0} - q^k) / (q-1)
        bool pass = true;
        std::string witness;
        for (int k = 1; k <= 3 && pass; ++k) {
            for (const auto& t : sample_t_vectors(*K, k, 20, rng)) {
                const BigInt expected =
                    (BigInt(q) * q * pows_ctx(t, 0, 0) - bigint_pow(q, k)) / N;
                if (total(w_bracket(sp, t)) != constant(expected)) {
                    pass = false;
                    witness = "t=" + render_t(t);
                    break;
                }
            }
        }
        report.add("w-bracket-total", pass, witness);
    }

    {  // |W^[t1,t2]| = q^2 if t1 = t2, else 0
        bool pass = true;
        std::string witness;
        for (const auto& t : sample_t_vectors(*K, 2, 20, rng)) {
            const BigInt expected = t[0] == t[1] ? BigInt(q) * q : BigInt(0);
            if (total(w_bracket(sp, t)) != constant(expected)) {
                pass = false;
                witness = "t=" + render_t(t);
                break;
            }
        }
        report.add("w-bracket-pair-total", pass, witness);
    }

    {  // |W^[t1,t2,t3]| = q^2 V^[t1,t2]_{1/t3}
        bool pass = true;
        std::string witness;
        for (const auto& t : sample_t_vectors(*K, 3, 20, rng)) {
            const auto vb = v_bracket_codes(*K, s, {t[0], t[1]});
            const BigInt expected = BigInt(q) * q * vb.at_unit(K->inv_code(t[2]));
            if (total(w_bracket(sp, t)) != constant(expected)) {
                pass = false;
                witness = "t=" + render_t(t);
                break;
            }
        }
        report.add("w-bracket-triple-total", pass, witness);
    }

    {  // |W^[1,1,1,1]| = q^2 * sum of squared V-table coefficients
        const auto vt = v_table(*K, s);
        BigInt sum_sq = 0;
        for (auto c : vt.coeffs) sum_sq += BigInt(c) * c;
        report.add("w-bracket-fourth-moment",
                   total(w_bracket(sp, {one, one, one, one})) == constant(BigInt(q) * q * sum_sq));
    }

    {  // W^[t] = W V^[t]
        bool pass = true;
        std::string witness;
        for (int k = 1; k <= 3 && pass; ++k) {
            for (const auto& t : sample_t_vectors(*K, k, 20, rng)) {
                const auto vb = v_bracket_codes(*K, s, t);
                if (w_bracket(sp, t) != convolve(W, from_int_table(K, vb.coeffs))) {
                    pass = false;
                    witness = "t=" + render_t(t);
                    break;
                }
            }
        }
        report.add("w-bracket-factorization", pass, witness);
    }

    // Laterally symmetrized sums for each k with a primitive k-th root of
    // unity in the prime subfield, i.e. k dividing p-1 (k = 1 is trivial).
    for (std::int64_t k = 1; k <= p - 1; ++k) {
        if ((p - 1) % k != 0) continue;
        const std::int64_t gamma = p == 2 ? 1 : primitive_root_mod_p(p);
        const std::int64_t lambda = pow_mod(gamma, static_cast<std::uint64_t>((p - 1) / k), p);
        const std::uint32_t lambda_code = K->from_prime_subfield(lambda);

        GroupAlgebraElement T(K);
        GroupAlgebraElement Omega(K);
        {
            std::uint32_t li = one;
            for (std::int64_t i = 0; i < k; ++i) {
                T.at_unit(li) += CycInt::from_integer(p, 1);
                li = K->mul_code(li, lambda_code);
            }
        }
        for (std::int64_t u = 1; u < q; ++u) {
            CycInt acc(p);
            std::uint32_t v = static_cast<std::uint32_t>(u);
            for (std::int64_t i = 0; i < k; ++i) {
                acc += sp.value_of_unit(v).value;
                v = K->mul_code(v, lambda_code);
            }
            Omega.at_unit(static_cast<std::uint32_t>(u)) = std::move(acc);
        }
        const std::string suffix = "-k" + std::to_string(k);
        report.add("symmetrized-factorization" + suffix, Omega == convolve(W, T));

        CycInt m1(p), m2(p), m3(p);
        for (const auto& c : Omega.coeffs()) {
            m1 += c;
            m2 += c * c;
            if (k == 2) m3 += c * c * c;
        }
        report.add("omega-first-moment" + suffix, m1 == constant(BigInt(k) * q));
        report.add("omega-second-moment" + suffix, m2 == constant(BigInt(k) * q * q));
        if (k == 2) {
            const auto vt = v_table(*K, s);
            const BigInt expected =
                BigInt(2) * q * q * (vt.at_unit(one) + 3 * vt.at_unit(K->neg_code(one)));
            report.add("omega-third-moment", m3 == constant(expected));
        }
    }

    if (p > 2) {  // bilateral symmetry: Phi, Upsilon, and the U/V tables
        const std::uint32_t minus_one = K->neg_code(one);
        const auto ut = u_table(*K, s);
        const auto vt = v_table(*K, s);
        const auto U = from_int_table(K, ut.coeffs);
        const auto V = from_int_table(K, vt.coeffs);
        const auto S_elem = basis_element(K, one) - basis_element(K, minus_one);
        const auto T_elem = basis_element(K, one) + basis_element(K, minus_one);

        GroupAlgebraElement Phi(K), Upsilon(K);
        for (std::int64_t u = 1; u < q; ++u) {
            const auto uc = static_cast<std::uint32_t>(u);
            CycInt d = sp.value_of_unit(uc).value - sp.value_of_unit(K->neg_code(uc)).value;
            Upsilon.at_unit(uc) = d * d;
            Phi.at_unit(uc) = std::move(d);
        }

        report.add("phi-factorization", Phi == convolve(W, S_elem));
        report.add("upsilon-factorization",
                   Upsilon == convolve(W, convolve(T_elem, V) - U.scaled(2)));

        {  // U_u = Q^{(1,-1)}_{1,u} - 1 and V_u = Q^{(1,1)}_{1,u}
            bool pass = true;
            std::string witness;
            for (std::int64_t u = 1; u < q; ++u) {
                const auto uc = static_cast<std::uint32_t>(u);
                if (ut.at_unit(uc) != pows_ctx({one, minus_one}, one, uc) - 1 ||
                    vt.at_unit(uc) != pows_ctx({one, one}, one, uc)) {
                    pass = false;
                    witness = "u=" + std::to_string(u);
                    break;
                }
            }
            report.add("uv-count-identities", pass, witness);
        }
        {  // U_u = U_{-u}
            bool pass = true;
            for (std::int64_t u = 1; u < q; ++u) {
                const auto uc = static_cast<std::uint32_t>(u);
                if (ut.at_unit(uc) != ut.at_unit(K->neg_code(uc))) {
                    pass = false;
                    break;
                }
            }
            report.add("uv-reflection", pass);
        }
        report.add("uv-corner", ut.at_unit(one) == ut.at_unit(minus_one) &&
                                    ut.at_unit(minus_one) == vt.at_unit(minus_one));
        report.add("uv-totals", ut.total() == 0 && vt.total() == q);

        CycInt f1(p), f2(p), f3(p), f4(p);
        for (std::int64_t u = 1; u < q; ++u) {
            const auto uc = static_cast<std::uint32_t>(u);
            const CycInt& phi = Phi.at_unit(uc);
            const CycInt phi2 = phi * phi;
            f1 += phi;
            f2 += phi2;
            f3 += phi2 * (sp.value_of_unit(uc).value + sp.value_of_unit(K->neg_code(uc)).value);
            f4 += phi2 * phi2;
        }
        report.add("phi-first-moment", f1 == constant(0));
        report.add("phi-second-moment", f2 == constant(BigInt(2) * q * q));
        report.add("phi-omega-moment",
                   f3 == constant(BigInt(2) * q * q * (vt.at_unit(one) - vt.at_unit(minus_one))));
        {
            BigInt rhs = 0;
            for (std::int64_t u = 1; u < q; ++u) {
                const auto uc = static_cast<std::uint32_t>(u);
                const BigInt term =
                    BigInt(vt.at_unit(uc)) + vt.at_unit(K->neg_code(uc)) - 2 * ut.at_unit(uc);
                rhs += term * term;
            }
            report.add("phi-fourth-moment", f4 == constant(BigInt(q) * q * rhs));
        }
    }

    return report;
}

CheckReport verify_characters(FieldHandle K, std::uint64_t seed) {
    CheckReport report;
    const std::int64_t q = K->q();
    const std::int64_t N = q - 1;
    const double tol = 1e-6;
    std::mt19937_64 rng(seed);
    CharacterTable table(K);

    report.add("gauss-principal", std::abs(gauss_sum(table, 0) - std::complex<double>(-1.0, 0.0)) < tol);

    {
        bool pass = true;
        std::string witness;
        for (std::int64_t j = 1; j < N; ++j) {
            if (std::abs(std::norm(gauss_sum(table, j)) - static_cast<double>(q)) >= tol) {
                pass = false;
                witness = "j=" + std::to_string(j);
                break;
            }
        }
        report.add("gauss-magnitude", pass, witness);
    }

    {  // conj(G(chi)) = chi(-1) G(conj(chi))
        bool pass = true;
        std::string witness;
        const std::uint32_t minus_one = K->neg_code(K->one_code());
        for (std::int64_t j = 0; j < N; ++j) {
            const auto lhs = std::conj(gauss_sum(table, j));
            const auto rhs = table.chi(j, minus_one) * gauss_sum(table, -j);
            if (std::abs(lhs - rhs) >= tol) {
                pass = false;
                witness = "j=" + std::to_string(j);
                break;
            }
        }
        report.add("gauss-conjugation", pass, witness);
    }

    {  // character orthogonality
        bool pass = true;
        std::string witness;
        for (std::int64_t j = 0; j < N; ++j) {
            std::complex<double> sum(0.0, 0.0);
            for (std::int64_t u = 1; u < q; ++u) sum += table.chi(j, static_cast<std::uint32_t>(u));
            const std::complex<double> expect(j == 0 ? static_cast<double>(N) : 0.0, 0.0);
            if (std::abs(sum - expect) >= tol) {
                pass = false;
                witness = "j=" + std::to_string(j);
                break;
            }
        }
        report.add("character-orthogonality", pass, witness);
    }

    auto random_element = [&] {
        GroupAlgebraElement S(K);
        for (std::int64_t u = 1; u < q; ++u) {
            S.at_unit(static_cast<std::uint32_t>(u)) =
                CycInt::from_integer(K->p(), static_cast<std::int64_t>(rng() % 7) - 3);
        }
        return S;
    };

    {  // Fourier coefficients are multiplicative over convolution
        bool pass = true;
        std::string witness;
        const auto S = random_element();
        const auto T = random_element();
        const auto ST = convolve(S, T);
        for (std::int64_t j = 0; j < std::min<std::int64_t>(N, 16); ++j) {
            const auto lhs = fourier_coefficient(table, ST, j);
            const auto rhs = fourier_coefficient(table, S, j) * fourier_coefficient(table, T, j);
            if (std::abs(lhs - rhs) >= tol * (1.0 + std::abs(lhs) + std::abs(rhs))) {
                pass = false;
                witness = "j=" + std::to_string(j);
                break;
            }
        }
        report.add("fourier-multiplicativity", pass, witness);
    }

    {  // a group algebra element is recovered from its Fourier transform
        bool pass = true;
        std::string witness;
        const auto S = random_element();
        std::vector<std::complex<double>> transform(static_cast<std::size_t>(N));
        for (std::int64_t j = 0; j < N; ++j) {
            transform[static_cast<std::size_t>(j)] = fourier_coefficient(table, S, j);
        }
        for (std::int64_t u = 1; u < q && pass; ++u) {
            std::complex<double> acc(0.0, 0.0);
            for (std::int64_t j = 0; j < N; ++j) {
                acc += transform[static_cast<std::size_t>(j)] *
                       std::conj(table.chi(j, static_cast<std::uint32_t>(u)));
            }
            acc /= static_cast<double>(N);
            if (std::abs(acc - complex_embed(S.at_unit(static_cast<std::uint32_t>(u)))) >= tol) {
                pass = false;
                witness = "u=" + std::to_string(u);
            }
        }
        report.add("fourier-inversion", pass, witness);
    }

    return report;
}

}  // namespace weilsum
