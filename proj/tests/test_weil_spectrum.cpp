#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <numeric>
#include <set>

#include "weilsum/weil_spectrum.hpp"

using namespace weilsum;

namespace {

// Oracle Weil sum tally, written against the definition with its own
// polynomial arithmetic (no log tables, no trace table).
struct OracleField {
    std::int64_t p;
    int n;
    std::vector<std::int32_t> modulus;

    using Elem = std::vector<std::int32_t>;

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<std::int64_t> prod(2 * n - 1, 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::int64_t{a[i]} * b[j]) % p;
        }
        for (int d = 2 * n - 2; d >= n; --d) {
            const std::int64_t lead = prod[d];
            if (lead == 0) continue;
            for (int i = 0; i <= n; ++i) {
                prod[d - n + i] = ((prod[d - n + i] - lead * modulus[i]) % p + p) % p;
            }
        }
        Elem out(n);
        for (int i = 0; i < n; ++i) out[i] = static_cast<std::int32_t>(prod[i]);
        return out;
    }

    Elem pow(Elem base, std::uint64_t e) const {
        Elem acc(n, 0);
        acc[0] = 1;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem out(n);
        for (int i = 0; i < n; ++i) out[i] = static_cast<std::int32_t>(((a[i] - b[i]) % p + p) % p);
        return out;
    }

    std::int32_t trace(const Elem& x) const {
        Elem acc = x;
        Elem frob = x;
        for (int k = 1; k < n; ++k) {
            frob = pow(frob, static_cast<std::uint64_t>(p));
            for (int i = 0; i < n; ++i) acc[i] = static_cast<std::int32_t>((acc[i] + frob[i]) % p);
        }
        for (int i = 1; i < n; ++i) REQUIRE(acc[i] == 0);
        return acc[0];
    }

    std::vector<Elem> all_elements() const {
        std::vector<Elem> out;
        Elem cur(n, 0);
        while (true) {
            out.push_back(cur);
            int i = n - 1;
            while (i >= 0 && cur[i] == p - 1) cur[i--] = 0;
            if (i < 0) break;
            ++cur[i];
        }
        return out;
    }
};

std::vector<std::int64_t> oracle_weil_histogram(const OracleField& F, std::uint64_t s,
                                                const OracleField::Elem& u) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(F.p), 0);
    for (const auto& x : F.all_elements()) {
        const auto diff = F.sub(F.pow(x, s), F.mul(u, x));
        ++counts[static_cast<std::size_t>(F.trace(diff))];
    }
    return counts;
}

CycInt cyc(std::int64_t p, std::vector<std::int64_t> c) {
    std::vector<BigInt> coeffs(c.begin(), c.end());
    return CycInt::from_reduced(p, std::move(coeffs));
}

}  // namespace

TEST_CASE("Weil sums over F_5 with s = 3") {
    const auto K = make_field(5, 1);
    struct Expected {
        std::int64_t u;
        std::vector<std::int64_t> hist;
        std::vector<std::int64_t> value;
        std::int64_t I, J;
    };
    // x^3 - ux represents the histograms tallied below; the four values are
    // (5+sqrt5)/2, sqrt5, -sqrt5, (5-sqrt5)/2
    const std::vector<Expected> table{
        {1, {3, 1, 0, 0, 1}, {2, 0, -1, -1}, 5, 1},
        {2, {1, 2, 0, 0, 2}, {-1, 0, -2, -2}, 0, 2},
        {3, {1, 0, 2, 2, 0}, {1, 0, 2, 2}, 0, -2},
        {4, {3, 0, 1, 1, 0}, {3, 0, 1, 1}, 5, -1},
    };
    for (const auto& row : table) {
        const auto w = weil_sum(*K, 3, K->decode(static_cast<std::uint32_t>(row.u)));
        CHECK(w.histogram.counts == row.hist);
        CHECK(w.histogram.total == 5);
        CHECK(w.value == cyc(5, row.value));
        REQUIRE(w.quad.has_value());
        CHECK(w.quad->I == row.I);
        CHECK(w.quad->J == row.J);
    }
    CHECK_THROWS_AS(weil_sum(*K, 2, K->decode(1)), NotInvertibleExponentError);
}

TEST_CASE("the monomial sum at u = 0 vanishes") {
    for (auto [p, n, s] : std::vector<std::tuple<std::int64_t, int, std::uint64_t>>{
             {2, 1, 1}, {5, 1, 3}, {7, 1, 5}, {2, 3, 3}, {3, 2, 5}}) {
        const auto K = make_field(p, n);
        const auto w = weil_sum(*K, s, K->decode(0));
        CHECK(w.value.is_zero());
    }
}

TEST_CASE("weil_sum matches the definitional oracle") {
    for (auto [p, n, s] : std::vector<std::tuple<std::int64_t, int, std::uint64_t>>{
             {5, 1, 3}, {7, 1, 5}, {2, 3, 3}, {3, 2, 5}, {11, 1, 3}, {13, 1, 5}}) {
        const auto K = make_field(p, n);
        const OracleField F{p, n, K->modulus()};
        const auto elements = F.all_elements();
        for (std::int64_t u = 0; u < K->q(); ++u) {
            const auto got = weil_sum(*K, s, K->decode(static_cast<std::uint32_t>(u)));
            // oracle element: same coefficient vector as the decoded element
            const auto& u_elem = K->decode(static_cast<std::uint32_t>(u)).coeffs;
            CHECK(got.histogram.counts == oracle_weil_histogram(F, s, u_elem));
        }
    }
}

TEST_CASE("spectrum frequencies and known value sets") {
    {
        const auto sp = spectrum(make_field(5, 1), 3);
        REQUIRE(sp.num_values() == 4);
        CHECK(sp.frequencies() == std::vector<std::int64_t>{1, 1, 1, 1});
        CHECK(sp.distinct()[0].value == cyc(5, {-1, 0, -2, -2}));  // sqrt 5
        CHECK(sp.distinct()[1].value == cyc(5, {1, 0, 2, 2}));    // -sqrt 5
        CHECK(sp.distinct()[2].value == cyc(5, {2, 0, -1, -1}));  // (5+sqrt5)/2
        CHECK(sp.distinct()[3].value == cyc(5, {3, 0, 1, 1}));    // (5-sqrt5)/2
    }
    {
        const auto sp = spectrum(make_field(7, 1), 1);
        REQUIRE(sp.num_values() == 2);
        CHECK(is_rational(sp.distinct()[0].value) == BigInt(0));
        CHECK(is_rational(sp.distinct()[1].value) == BigInt(7));
        CHECK(sp.frequencies() == std::vector<std::int64_t>{5, 1});
    }
    {
        const auto sp = spectrum(make_field(2, 1), 1);
        REQUIRE(sp.num_values() == 1);
        CHECK(is_rational(sp.distinct()[0].value) == BigInt(2));
        CHECK(sp.frequencies() == std::vector<std::int64_t>{1});
    }
    {
        // frequencies over K^x always sum to q-1
        for (auto [p, n, s] : std::vector<std::tuple<std::int64_t, int, std::uint64_t>>{
                 {13, 1, 5}, {3, 3, 5}, {2, 5, 3}}) {
            const auto sp = spectrum(make_field(p, n), s);
            CHECK(std::accumulate(sp.frequencies().begin(), sp.frequencies().end(), std::int64_t{0}) ==
                  sp.field().q() - 1);
        }
    }
}

TEST_CASE("degeneracy") {
    CHECK(is_degenerate(8, 2, 2));
    CHECK(is_degenerate(8, 2, 1));
    CHECK_FALSE(is_degenerate(5, 5, 3));
    CHECK(is_degenerate(2, 2, 1));
    // all invertible exponents over F_4 are powers of 2 mod 3
    for (std::uint64_t s : {1, 2, 4, 5}) {
        if (is_invertible_exponent(4, s)) CHECK(is_degenerate(4, 2, s));
    }
    CHECK(is_degenerate(9, 3, 3));
    CHECK_FALSE(is_degenerate(9, 3, 5));
}

TEST_CASE("exponent classes") {
    CHECK(exponent_classes(5, 5) == std::vector<std::uint64_t>{1, 3});
    CHECK(exponent_classes(8, 2) == std::vector<std::uint64_t>{1, 3});
    CHECK(exponent_classes(2, 2) == std::vector<std::uint64_t>{1});
    CHECK(exponent_classes(4, 2) == std::vector<std::uint64_t>{1});

    // orbits over F_8: {1,2,4} and {3,5,6}
    CHECK(canonical_exponent(8, 2, 5) == 3);
    CHECK(canonical_exponent(8, 2, 6) == 3);
    CHECK(canonical_exponent(8, 2, 4) == 1);

    // class representatives cover the invertible exponents exactly once
    for (auto [q, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {9, 3}, {16, 2}, {25, 5}, {27, 3}, {31, 31}, {64, 2}}) {
        std::set<std::uint64_t> covered;
        std::uint64_t count = 0;
        for (std::uint64_t s = 1; s < static_cast<std::uint64_t>(q - 1); ++s) {
            if (std::gcd(s, static_cast<std::uint64_t>(q - 1)) == 1) {
                ++count;
                covered.insert(canonical_exponent(q, p, s));
            }
        }
        const auto reps = exponent_classes(q, p);
        CHECK(covered == std::set<std::uint64_t>(reps.begin(), reps.end()));
        (void)count;
    }
}

TEST_CASE("equivalent exponents share a spectrum") {
    for (auto [q, p, n] : std::vector<std::tuple<std::int64_t, std::int64_t, int>>{
             {8, 2, 3}, {9, 3, 2}, {16, 2, 4}, {13, 13, 1}, {25, 5, 2}}) {
        const auto K = make_field(p, n);
        for (std::uint64_t srep : exponent_classes(q, p)) {
            const auto base = spectrum(K, srep);
            for (std::uint64_t s = 1; s < static_cast<std::uint64_t>(q - 1); ++s) {
                if (std::gcd(s, static_cast<std::uint64_t>(q - 1)) != 1) continue;
                if (canonical_exponent(q, p, s) != srep) continue;
                const auto other = spectrum(K, s);
                REQUIRE(other.num_values() == base.num_values());
                for (std::size_t i = 0; i < base.num_values(); ++i) {
                    CHECK(other.distinct()[i].value == base.distinct()[i].value);
                    CHECK(other.frequencies()[i] == base.frequencies()[i]);
                }
            }
        }
    }
}

TEST_CASE("tau action on the exceptional spectrum is two transpositions") {
    const auto sp = spectrum(make_field(5, 1), 3);
    const auto tau = tau_action(sp);
    CHECK(tau.lambda == 4);  // gamma^{1 - 1/s} = 2^{-2} = -1 mod 5
    CHECK(tau.cycle_type == std::vector<int>{2, 2});
    CHECK(tau.order == 2);
    // sqrt5 <-> -sqrt5 and (5+sqrt5)/2 <-> (5-sqrt5)/2 (indices 0<->1, 2<->3)
    CHECK(tau.mapping == std::vector<std::uint32_t>{1, 0, 3, 2});
}

TEST_CASE("tau is the identity on rational spectra") {
    for (auto [p, n, s] : std::vector<std::tuple<std::int64_t, int, std::uint64_t>>{
             {7, 1, 1}, {2, 3, 3}, {3, 2, 5}, {2, 1, 1}}) {
        const auto sp = spectrum(make_field(p, n), s);
        const auto tau = tau_action(sp);
        CHECK(tau.order == 1);
        for (std::size_t i = 0; i < sp.num_values(); ++i) CHECK(tau.mapping[i] == i);
        CHECK(tau.cycle_type == std::vector<int>(sp.num_values(), 1));
    }
}

TEST_CASE("Galois generator translates the unit index for every power") {
    for (auto [p, n, s] : std::vector<std::tuple<std::int64_t, int, std::uint64_t>>{
             {5, 1, 3}, {7, 1, 5}, {11, 1, 7}, {13, 1, 5}, {5, 2, 7}, {3, 2, 5}}) {
        const auto K = make_field(p, n);
        const auto sp = spectrum(K, s);
        const auto tau = tau_action(sp);
        const std::int64_t gamma = primitive_root_mod_p(p);
        std::int64_t lam_pow = 1;
        std::int64_t gam_pow = 1;
        for (std::int64_t j = 0; j < p - 1; ++j) {
            for (std::int64_t u = 1; u < K->q(); ++u) {
                const auto uc = static_cast<std::uint32_t>(u);
                const auto translated =
                    K->mul_code(K->from_prime_subfield(lam_pow), uc);
                CHECK(galois_apply(sp.value_of_unit(uc).value, gam_pow == 0 ? 1 : gam_pow % p) ==
                      sp.value_of_unit(translated).value);
            }
            lam_pow = lam_pow * tau.lambda % p;
            gam_pow = gam_pow * gamma % p;
        }
    }
}

TEST_CASE("classification records") {
    {
        const auto rec = classify(make_field(5, 1), 3);
        CHECK(rec.num_values == 4);
        CHECK_FALSE(rec.is_rational);
        CHECK_FALSE(rec.is_degenerate);
        CHECK(rec.cycle_type == std::vector<int>{2, 2});
        CHECK(rec.tau_order == 2);
        CHECK(rec.s_canonical == 3);
        CHECK_FALSE(rec.helleseth_predicate);
    }
    {
        const auto rec = classify(make_field(7, 1), 1);
        CHECK(rec.num_values == 2);
        CHECK(rec.is_rational);
        CHECK(rec.is_degenerate);
        CHECK(rec.tau_order == 1);
        CHECK(rec.helleseth_predicate);
    }
    {
        // (3-1)/gcd(2, 4) = 1, so the spectrum is rational
        const auto rec = classify(make_field(3, 2), 5);
        CHECK(rec.tau_order == 1);
        CHECK(rec.is_rational);
        CHECK_FALSE(rec.is_degenerate);
        CHECK(rec.num_values >= 3);
    }
    {
        const auto rec = classify(make_field(2, 3), 3);
        CHECK(rec.num_values == 3);
        CHECK(rec.is_rational);
    }
}

TEST_CASE("csv rendering is stable") {
    CHECK(classification_csv_header() ==
          "q,p,n,s,num_values,is_degenerate,is_rational,tau_order,cycle_type,values,frequencies");
    const auto rec = classify(make_field(5, 1), 3);
    CHECK(to_csv_row(rec) ==
          "5,5,1,3,4,false,false,2,2+2,"
          "(0+2*sqrt(5))/2;(0-2*sqrt(5))/2;(5+1*sqrt(5))/2;(5-1*sqrt(5))/2,1;1;1;1");
    const auto deg = classify(make_field(7, 1), 1);
    CHECK(to_csv_row(deg) == "7,7,1,1,2,true,true,1,1+1,0;7,5;1");
}

TEST_CASE("value rendering picks the simplest faithful form") {
    const auto sp5 = spectrum(make_field(5, 1), 3);
    CHECK(render_value(sp5.distinct()[2]) == "(5+1*sqrt(5))/2");
    const auto sp7deg = spectrum(make_field(7, 1), 1);
    CHECK(render_value(sp7deg.distinct()[1]) == "7");
    const auto sp7 = spectrum(make_field(7, 1), 5);  // order-3 action, full cyclotomic form
    bool saw_long_form = false;
    for (const auto& v : sp7.distinct()) {
        if (render_value(v).find("z") != std::string::npos) saw_long_form = true;
    }
    CHECK(saw_long_form);
}
