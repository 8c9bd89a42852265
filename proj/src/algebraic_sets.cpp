#include "weilsum/algebraic_sets.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace weilsum {

namespace {

void validate_query(const Field& K, std::uint64_t s, const std::vector<std::uint32_t>& t_codes) {
    if (!is_invertible_exponent(K.q(), s)) {
        throw NotInvertibleExponentError("gcd(s, q-1) != 1");
    }
    if (t_codes.empty()) throw Error("coefficient vector t must be nonempty");
    if (t_codes.size() > 4) throw TooLargeKError("k is capped at 4");
    for (auto t : t_codes) {
        if (t == 0) throw ZeroCoefficientError("t entries must be units");
    }
}

std::vector<std::uint32_t> pow_table(const Field& K, std::uint64_t s) {
    std::vector<std::uint32_t> pows(static_cast<std::size_t>(K.q()));
    for (std::int64_t x = 0; x < K.q(); ++x) {
        pows[x] = K.pow_code(static_cast<std::uint32_t>(x), s);
    }
    return pows;
}

// Solutions of t.v = a, sum v_i^s = target_pow, walking the k-1 free
// coordinates and solving the hyperplane equation for the last one.
std::int64_t count_impl(const Field& K, const std::vector<std::uint32_t>& pows,
                        const std::vector<std::uint32_t>& t_codes, std::uint32_t a,
                        std::uint32_t target_pow) {
    const std::size_t k = t_codes.size();
    const std::int64_t q = K.q();
    const std::uint32_t tk_inv = K.inv_code(t_codes[k - 1]);
    if (k == 1) {
        const std::uint32_t vk = K.mul_code(a, tk_inv);
        return pows[vk] == target_pow ? 1 : 0;
    }
    std::int64_t count = 0;
    std::vector<std::uint32_t> v(k - 1, 0);
    while (true) {
        std::uint32_t dot = 0;
        std::uint32_t psum = 0;
        for (std::size_t i = 0; i < k - 1; ++i) {
            dot = K.add_code(dot, K.mul_code(t_codes[i], v[i]));
            psum = K.add_code(psum, pows[v[i]]);
        }
        const std::uint32_t vk = K.mul_code(K.sub_code(a, dot), tk_inv);
        if (K.add_code(psum, pows[vk]) == target_pow) ++count;

        std::size_t i = 0;
        while (i < k - 1 && ++v[i] == static_cast<std::uint32_t>(q)) v[i++] = 0;
        if (i == k - 1) break;
    }
    return count;
}

std::int64_t count_codes(const Field& K, const std::vector<std::uint32_t>& pows,
                         const std::vector<std::uint32_t>& t_codes, std::uint32_t a, std::uint32_t b) {
    return count_impl(K, pows, t_codes, a, pows[b]);
}

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
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

std::int64_t q_count(const Field& K, std::uint64_t s, const QQuery& query) {
    std::vector<std::uint32_t> t_codes;
    t_codes.reserve(query.t.size());
    for (const auto& t : query.t) t_codes.push_back(K.encode(t));
    validate_query(K, s, t_codes);
    const auto pows = pow_table(K, s);
    return count_codes(K, pows, t_codes, K.encode(query.a), K.encode(query.b));
}

std::int64_t VBracket::total() const {
    std::int64_t sum = 0;
    for (auto c : coeffs) sum += c;
    return sum;
}

VBracket v_bracket_codes(const Field& K, std::uint64_t s, const std::vector<std::uint32_t>& t_codes) {
    validate_query(K, s, t_codes);
    const std::int64_t q = K.q();
    const std::size_t k = t_codes.size();
    const auto pows = pow_table(K, s);
    const std::uint64_t s_inv = mod_inverse(s % static_cast<std::uint64_t>(q - 1),
                                            static_cast<std::uint64_t>(q - 1));

    // One sweep over the hyperplane t.v = 1 tallies every Q^t_{1,u} at once:
    // u = <v> is the s-th root of the power sum.
    std::vector<std::int64_t> tally(static_cast<std::size_t>(q), 0);
    const std::uint32_t tk_inv = K.inv_code(t_codes[k - 1]);
    const std::uint32_t one = K.one_code();
    std::vector<std::uint32_t> v(k > 1 ? k - 1 : 0, 0);
    while (true) {
        std::uint32_t dot = 0;
        std::uint32_t psum = 0;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            dot = K.add_code(dot, K.mul_code(t_codes[i], v[i]));
            psum = K.add_code(psum, pows[v[i]]);
        }
        const std::uint32_t vk = K.mul_code(K.sub_code(one, dot), tk_inv);
        const std::uint32_t z = K.add_code(psum, pows[vk]);
        ++tally[K.pow_code(z, s_inv)];
        if (k == 1) break;
        std::size_t i = 0;
        while (i + 1 < k && ++v[i] == static_cast<std::uint32_t>(q)) v[i++] = 0;
        if (i + 1 == k) break;
    }

    VBracket out;
    out.t_codes = t_codes;
    out.coeffs.resize(static_cast<std::size_t>(q - 1));
    const std::int64_t at_zero = tally[0];  // Q^t_{1,0}
    for (std::int64_t u = 1; u < q; ++u) out.coeffs[u - 1] = tally[u] - at_zero;
    return out;
}

VBracket v_bracket(const Field& K, std::uint64_t s, const std::vector<FieldElement>& t) {
    std::vector<std::uint32_t> t_codes;
    t_codes.reserve(t.size());
    for (const auto& e : t) t_codes.push_back(K.encode(e));
    return v_bracket_codes(K, s, t_codes);
}

VBracket u_table(const Field& K, std::uint64_t s) {
    return v_bracket_codes(K, s, {K.one_code(), K.neg_code(K.one_code())});
}

VBracket v_table(const Field& K, std::uint64_t s) {
    return v_bracket_codes(K, s, {K.one_code(), K.one_code()});
}

CheckReport verify_q_lemmas(const Field& K, std::uint64_t s, int k_max, std::uint64_t seed) {
    if (!is_invertible_exponent(K.q(), s)) {
        throw NotInvertibleExponentError("gcd(s, q-1) != 1");
    }
    CheckReport report;
    const std::int64_t q = K.q();
    const std::int64_t p = K.p();
    const auto pows = pow_table(K, s);
    std::mt19937_64 rng(seed);
    auto random_unit = [&] { return static_cast<std::uint32_t>(rng() % (q - 1) + 1); };

    // t-vectors to exercise: exhaustive for k <= 2, 20 seeded samples for k = 3+
    auto t_vectors = [&](int k) {
        std::vector<std::vector<std::uint32_t>> out;
        if (k <= 2) {
            std::vector<std::uint32_t> t(k, 1);
            while (true) {
                out.push_back(t);
                int i = 0;
                while (i < k && ++t[i] == static_cast<std::uint32_t>(q)) t[i++] = 1;
                if (i == k) break;
            }
        } else {
            for (int i = 0; i < 20; ++i) {
                std::vector<std::uint32_t> t(k);
                for (auto& e : t) e = random_unit();
                out.push_back(t);
            }
        }
        return out;
    };

    {  // row sums: both one-variable marginals of Q^t equal q^{k-1}
        bool pass = true;
        std::string witness;
        for (int k = 1; k <= k_max && pass; ++k) {
            const std::int64_t expect = ipow(q, k - 1);
            for (const auto& t : t_vectors(k)) {
                for (std::int64_t b = 0; b < q && pass; ++b) {
                    std::int64_t sum_a = 0, sum_b = 0;
                    for (std::int64_t a = 0; a < q; ++a) {
                        sum_a += count_codes(K, pows, t, static_cast<std::uint32_t>(a),
                                             static_cast<std::uint32_t>(b));
                        sum_b += count_codes(K, pows, t, static_cast<std::uint32_t>(b),
                                             static_cast<std::uint32_t>(a));
                    }
                    if (sum_a != expect || sum_b != expect) {
                        pass = false;
                        witness = "t=" + render_t(t) + " b=" + std::to_string(b);
                    }
                }
                if (!pass) break;
            }
        }
        report.add("qcount-row-sums", pass, witness);
    }

    {  // scaling: Q^{ut}_{a,b} = Q^t_{a/u,b} and Q^t_{ua,ub} = Q^t_{a,b}
        bool pass = true;
        std::string witness;
        auto run_scaling = [&](const std::vector<std::uint32_t>& t, std::uint32_t uc, std::uint32_t ac,
                               std::uint32_t bc) {
            std::vector<std::uint32_t> ut(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) ut[i] = K.mul_code(uc, t[i]);
            const std::uint32_t u_inv = K.inv_code(uc);
            const std::int64_t base = count_codes(K, pows, t, ac, bc);
            if (count_codes(K, pows, ut, ac, bc) !=
                    count_codes(K, pows, t, K.mul_code(ac, u_inv), bc) ||
                count_codes(K, pows, t, K.mul_code(uc, ac), K.mul_code(uc, bc)) != base) {
                pass = false;
                witness = "t=" + render_t(t) + " u=" + std::to_string(uc) + " a=" + std::to_string(ac) +
                          " b=" + std::to_string(bc);
            }
        };
        for (int k = 1; k <= k_max && pass; ++k) {
            for (const auto& t : t_vectors(k)) {
                if (k <= 2) {
                    for (std::int64_t u = 1; u < q && pass; ++u) {
                        for (std::int64_t a = 0; a < q && pass; ++a) {
                            for (std::int64_t b = 0; b < q && pass; ++b) {
                                run_scaling(t, static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(a),
                                            static_cast<std::uint32_t>(b));
                            }
                        }
                    }
                } else {
                    for (int i = 0; i < 10 && pass; ++i) {
                        run_scaling(t, random_unit(), static_cast<std::uint32_t>(rng() % q),
                                    static_cast<std::uint32_t>(rng() % q));
                    }
                }
                if (!pass) break;
            }
        }
        report.add("qcount-scaling", pass, witness);
    }

    {  // zero cases: Q^t_{a,0} = Q^t_{0,a} = (q^{k-1} - Q^t_{0,0})/(q-1), plus unit row sums
        bool pass = true;
        std::string witness;
        for (int k = 1; k <= k_max && pass; ++k) {
            for (const auto& t : t_vectors(k)) {
                const std::int64_t q00 = count_codes(K, pows, t, 0, 0);
                const std::int64_t qk1 = ipow(q, k - 1);
                if ((qk1 - q00) % (q - 1) != 0) {
                    pass = false;
                    witness = "t=" + render_t(t) + " (divisibility)";
                    break;
                }
                const std::int64_t expect = (qk1 - q00) / (q - 1);
                for (std::int64_t a = 1; a < q; ++a) {
                    const auto ac = static_cast<std::uint32_t>(a);
                    if (count_codes(K, pows, t, ac, 0) != expect ||
                        count_codes(K, pows, t, 0, ac) != expect) {
                        pass = false;
                        witness = "t=" + render_t(t) + " a=" + std::to_string(a);
                        break;
                    }
                }
                if (!pass) break;
                for (std::int64_t b = 0; b < q; ++b) {
                    std::int64_t sum_a = 0, sum_b = 0;
                    for (std::int64_t a = 1; a < q; ++a) {
                        sum_a += count_codes(K, pows, t, static_cast<std::uint32_t>(a),
                                             static_cast<std::uint32_t>(b));
                        sum_b += count_codes(K, pows, t, static_cast<std::uint32_t>(b),
                                             static_cast<std::uint32_t>(a));
                    }
                    const std::int64_t expect_sum =
                        b == 0 ? qk1 - q00 : (ipow(q, k) - 2 * qk1 + q00) / (q - 1);
                    if (sum_a != expect_sum || sum_b != expect_sum) {
                        pass = false;
                        witness = "t=" + render_t(t) + " b=" + std::to_string(b) + " (unit row sum)";
                        break;
                    }
                }
                if (!pass) break;
            }
        }
        report.add("qcount-zero-cases", pass, witness);
    }

    {  // homogenization: (q-1) Q^t_{a,b} = Q^{(a/b,t)}_{0,0} - Q^t_{0,0} for unit a, b
        bool pass = true;
        std::string witness;
        for (int k = 1; k + 1 <= std::min(k_max + 1, 4) && pass; ++k) {
            for (const auto& t : t_vectors(k)) {
                const std::int64_t q00 = count_codes(K, pows, t, 0, 0);
                const bool exhaust = k <= 2;
                const int samples = exhaust ? 0 : 10;
                auto run_pair = [&](std::uint32_t ac, std::uint32_t bc) {
                    std::vector<std::uint32_t> ext;
                    ext.push_back(K.mul_code(ac, K.inv_code(bc)));
                    ext.insert(ext.end(), t.begin(), t.end());
                    const std::int64_t lhs = (q - 1) * count_codes(K, pows, t, ac, bc);
                    const std::int64_t rhs = count_codes(K, pows, ext, 0, 0) - q00;
                    if (lhs != rhs) {
                        pass = false;
                        witness = "t=" + render_t(t) + " a=" + std::to_string(ac) +
                                  " b=" + std::to_string(bc);
                    }
                };
                if (exhaust) {
                    for (std::int64_t a = 1; a < q && pass; ++a) {
                        for (std::int64_t b = 1; b < q && pass; ++b) {
                            run_pair(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
                        }
                    }
                } else {
                    for (int i = 0; i < samples && pass; ++i) run_pair(random_unit(), random_unit());
                }
                if (!pass) break;
            }
        }
        report.add("qcount-homogenization", pass, witness);
    }

    {  // closed form k = 1: Q^{(t1)}_{a,b} is the Kronecker delta of a and t1*b
        bool pass = true;
        std::string witness;
        for (std::int64_t t1 = 1; t1 < q && pass; ++t1) {
            for (std::int64_t a = 0; a < q && pass; ++a) {
                for (std::int64_t b = 0; b < q; ++b) {
                    const auto tc = static_cast<std::uint32_t>(t1);
                    const auto ac = static_cast<std::uint32_t>(a);
                    const auto bc = static_cast<std::uint32_t>(b);
                    const std::int64_t expect = (ac == K.mul_code(tc, bc)) ? 1 : 0;
                    if (count_codes(K, pows, {tc}, ac, bc) != expect) {
                        pass = false;
                        witness = "t1=" + std::to_string(t1) + " a=" + std::to_string(a) +
                                  " b=" + std::to_string(b);
                        break;
                    }
                }
            }
        }
        report.add("qcount-k1-closed-form", pass, witness);
    }

    if (k_max >= 2) {  // closed form k = 2 with at least one of a, b zero
        bool pass = true;
        std::string witness;
        for (std::int64_t t1 = 1; t1 < q && pass; ++t1) {
            for (std::int64_t t2 = 1; t2 < q && pass; ++t2) {
                const std::vector<std::uint32_t> t{static_cast<std::uint32_t>(t1),
                                                   static_cast<std::uint32_t>(t2)};
                const std::int64_t delta = t1 == t2 ? 1 : 0;
                if (count_codes(K, pows, t, 0, 0) != 1 + (q - 1) * delta) {
                    pass = false;
                    witness = "t=" + render_t(t) + " a=b=0";
                    break;
                }
                for (std::int64_t a = 1; a < q; ++a) {
                    const auto ac = static_cast<std::uint32_t>(a);
                    if (count_codes(K, pows, t, ac, 0) != 1 - delta ||
                        count_codes(K, pows, t, 0, ac) != 1 - delta) {
                        pass = false;
                        witness = "t=" + render_t(t) + " a=" + std::to_string(a);
                        break;
                    }
                }
            }
        }
        report.add("qcount-k2-closed-form", pass, witness);
    }

    if (k_max >= 2) {  // reflection: Q^{(1,-1)}_{1,w} = Q^{(1,-1)}_{1,-w}
        bool pass = true;
        std::string witness;
        const std::uint32_t one = K.one_code();
        const std::vector<std::uint32_t> t{one, K.neg_code(one)};
        for (std::int64_t w = 0; w < q; ++w) {
            const auto wc = static_cast<std::uint32_t>(w);
            if (count_codes(K, pows, t, one, wc) != count_codes(K, pows, t, one, K.neg_code(wc))) {
                pass = false;
                witness = "w=" + std::to_string(w);
                break;
            }
        }
        report.add("qcount-reflection", pass, witness);
    }

    if (k_max >= 2 && p > 2) {  // diagonal shift in odd characteristic
        const std::uint32_t one = K.one_code();
        const std::uint32_t minus_one = K.neg_code(one);
        const std::vector<std::uint32_t> tu{one, minus_one};
        const std::vector<std::uint32_t> tv{one, one};
        const std::int64_t a1 = count_codes(K, pows, tu, one, one) - 1;
        const std::int64_t a2 = count_codes(K, pows, tu, one, minus_one) - 1;
        const std::int64_t a3 = count_codes(K, pows, tv, one, minus_one);
        const bool pass = a1 == a2 && a2 == a3;
        report.add("qcount-shift", pass,
                   pass ? "" : std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3));
    }

    if (k_max >= 2) {  // parity: Q^{(1,1)}_{1,w} is odd exactly at w = 2^{1/s - 1} (odd p)
        bool pass = true;
        std::string witness;
        const std::uint32_t one = K.one_code();
        const std::vector<std::uint32_t> t{one, one};
        std::uint32_t odd_w = 0;
        bool has_odd_w = false;
        if (p > 2) {
            const std::uint64_t s_inv = mod_inverse(s % static_cast<std::uint64_t>(q - 1),
                                                    static_cast<std::uint64_t>(q - 1));
            const std::uint64_t e = (s_inv + static_cast<std::uint64_t>(q - 1) - 1) %
                                    static_cast<std::uint64_t>(q - 1);
            odd_w = K.pow_code(K.from_prime_subfield(2), e);
            has_odd_w = true;
        }
        for (std::int64_t w = 0; w < q; ++w) {
            const auto wc = static_cast<std::uint32_t>(w);
            const bool odd = count_codes(K, pows, t, one, wc) % 2 != 0;
            const bool expect_odd = has_odd_w && wc == odd_w;
            if (odd != expect_odd) {
                pass = false;
                witness = "w=" + std::to_string(w);
                break;
            }
        }
        report.add("qcount-parity", pass, witness);
    }

    {  // V-table totals against both closed forms, plus the k = 2 lower bounds
        bool pass = true;
        std::string witness;
        for (int k = 1; k <= k_max && pass; ++k) {
            for (const auto& t : t_vectors(k)) {
                const auto vb = v_bracket_codes(K, s, t);
                const std::int64_t q00 = count_codes(K, pows, t, 0, 0);
                const std::int64_t q10 = count_codes(K, pows, t, K.one_code(), 0);
                const std::int64_t total = vb.total();
                if (total != ipow(q, k - 1) - q * q10 ||
                    total * (q - 1) != q * q00 - ipow(q, k - 1)) {
                    pass = false;
                    witness = "t=" + render_t(t) + " (total)";
                    break;
                }
                if (k == 2) {
                    const std::int64_t expect = t[0] == t[1] ? q : 0;
                    if (total != expect) {
                        pass = false;
                        witness = "t=" + render_t(t) + " (pair total)";
                        break;
                    }
                    for (auto c : vb.coeffs) {
                        if (c < -1 || (t[0] == t[1] && c < 0)) {
                            pass = false;
                            witness = "t=" + render_t(t) + " (coefficient bound)";
                            break;
                        }
                    }
                    if (!pass) break;
                }
            }
        }
        report.add("vbracket-totals", pass, witness);
    }

    return report;
}

}  // namespace weilsum
