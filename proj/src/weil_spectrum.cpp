#include "weilsum/weil_spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace weilsum {

namespace {

WeilValue make_weil_value(std::int64_t p, std::int64_t q, std::vector<std::int64_t> counts) {
    WeilValue v{CycInt(p), Histogram{p, std::move(counts), q}, std::nullopt};
    v.value = reduce(v.histogram);
    if (p % 4 == 1) v.quad = quad_decompose(v.value);
    return v;
}

void require_invertible(std::int64_t q, std::uint64_t s) {
    if (!is_invertible_exponent(q, s)) {
        throw NotInvertibleExponentError("s = " + std::to_string(s) + " is not invertible: gcd(s, " +
                                         std::to_string(q - 1) + ") != 1");
    }
}

}  // namespace

WeilSpectrum::WeilSpectrum(FieldHandle field, std::uint64_t s, std::vector<WeilValue> distinct,
                           std::vector<std::int64_t> frequencies,
                           std::vector<std::uint32_t> index_by_unit)
    : field_(std::move(field)),
      s_(s),
      distinct_(std::move(distinct)),
      frequencies_(std::move(frequencies)),
      index_by_unit_(std::move(index_by_unit)) {}

WeilValue weil_sum(const Field& K, std::uint64_t s, const FieldElement& u) {
    require_invertible(K.q(), s);
    const std::int64_t p = K.p();
    const std::uint32_t u_code = K.encode(u);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
    for (std::int64_t x = 0; x < K.q(); ++x) {
        const auto code = static_cast<std::uint32_t>(x);
        std::int32_t d = K.trace_code(K.pow_code(code, s)) - K.trace_code(K.mul_code(u_code, code));
        if (d < 0) d += static_cast<std::int32_t>(p);
        ++counts[static_cast<std::size_t>(d)];
    }
    return make_weil_value(p, K.q(), std::move(counts));
}

WeilSpectrum spectrum(FieldHandle K, std::uint64_t s) {
    require_invertible(K->q(), s);
    const std::int64_t p = K->p();
    const std::int64_t q = K->q();
    const std::int64_t N = q - 1;
    const auto& exp = K->exp_table();

    // trace of x^s and of x, indexed by the discrete log of x; the second
    // table is doubled so the inner loop can slide without reducing mod N
    std::vector<std::int32_t> trace_pow(static_cast<std::size_t>(N));
    std::vector<std::int32_t> trace_exp(static_cast<std::size_t>(2 * N));
    const std::uint64_t s_red = s % static_cast<std::uint64_t>(N);
    for (std::int64_t l = 0; l < N; ++l) {
        trace_pow[l] = K->trace_code(exp[static_cast<std::size_t>(
            (static_cast<std::uint64_t>(l) * s_red) % static_cast<std::uint64_t>(N))]);
        trace_exp[l] = K->trace_code(exp[l]);
        trace_exp[N + l] = trace_exp[l];
    }

    std::map<std::vector<std::int64_t>, std::uint32_t> seen;  // histogram -> distinct slot
    std::vector<WeilValue> distinct;
    std::vector<std::int64_t> freq;
    std::vector<std::uint32_t> index_by_unit(static_cast<std::size_t>(N));

    std::vector<std::int64_t> counts(static_cast<std::size_t>(p));
    for (std::int64_t lu = 0; lu < N; ++lu) {
        std::fill(counts.begin(), counts.end(), 0);
        counts[0] = 1;  // the x = 0 term contributes psi(0) = 1
        const std::int32_t* tu = trace_exp.data() + lu;
        for (std::int64_t lx = 0; lx < N; ++lx) {
            std::int32_t d = trace_pow[lx] - tu[lx];
            if (d < 0) d += static_cast<std::int32_t>(p);
            ++counts[static_cast<std::size_t>(d)];
        }
        auto [it, inserted] = seen.try_emplace(counts, static_cast<std::uint32_t>(distinct.size()));
        if (inserted) {
            distinct.push_back(make_weil_value(p, q, counts));
            freq.push_back(0);
        }
        ++freq[it->second];
        index_by_unit[exp[lu] - 1] = it->second;
    }

    {  // postconditions: frequencies cover K^x and the values sum to q
        std::int64_t total_freq = 0;
        std::vector<std::int64_t> acc(static_cast<std::size_t>(p), 0);
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            total_freq += freq[i];
            for (std::int64_t e = 0; e < p; ++e) {
                acc[static_cast<std::size_t>(e)] +=
                    freq[i] * distinct[i].histogram.counts[static_cast<std::size_t>(e)];
            }
        }
        bool sum_ok = total_freq == N;
        for (std::int64_t e = 0; e < p - 1; ++e) {
            if (acc[static_cast<std::size_t>(e)] - acc[static_cast<std::size_t>(p - 1)] !=
                (e == 0 ? q : 0)) {
                sum_ok = false;
            }
        }
        if (!sum_ok) {
            throw CheckFailedError("spectrum-global-sum",
                                   "values do not sum to q at q=" + std::to_string(q) +
                                       " s=" + std::to_string(s));
        }
    }

    // reorder by canonical value order so downstream output is deterministic
    std::vector<std::uint32_t> order(distinct.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return distinct[a].value < distinct[b].value; });
    std::vector<std::uint32_t> rank(distinct.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    std::vector<WeilValue> distinct_sorted;
    distinct_sorted.reserve(distinct.size());
    std::vector<std::int64_t> freq_sorted(distinct.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        distinct_sorted.push_back(std::move(distinct[order[i]]));
        freq_sorted[i] = freq[order[i]];
    }
    for (auto& idx : index_by_unit) idx = rank[idx];

    return WeilSpectrum(std::move(K), s, std::move(distinct_sorted), std::move(freq_sorted),
                        std::move(index_by_unit));
}

bool is_degenerate(std::int64_t q, std::int64_t p, std::uint64_t s) {
    if (q <= 2) return true;
    const std::uint64_t N = static_cast<std::uint64_t>(q - 1);
    const std::uint64_t target = s % N;
    std::uint64_t pk = 1 % N;
    // p^n = q = 1 (mod q-1), so the powers of p cycle within n steps
    for (std::int64_t k = 0;; ++k) {
        if (pk == target) return true;
        pk = pk * (static_cast<std::uint64_t>(p) % N) % N;
        if (pk == 1 % N || k > 64) return false;
    }
}

namespace {

std::vector<std::uint64_t> exponent_orbit(std::int64_t q, std::int64_t p, std::uint64_t s) {
    const std::uint64_t N = static_cast<std::uint64_t>(q - 1);
    std::set<std::uint64_t> orbit;
    std::vector<std::uint64_t> frontier{s % N};
    while (!frontier.empty()) {
        const std::uint64_t cur = frontier.back();
        frontier.pop_back();
        if (!orbit.insert(cur).second) continue;
        frontier.push_back(cur * (static_cast<std::uint64_t>(p) % N) % N);
        frontier.push_back(mod_inverse(cur, N));
    }
    return {orbit.begin(), orbit.end()};
}

}  // namespace

std::vector<std::uint64_t> exponent_classes(std::int64_t q, std::int64_t p) {
    if (q <= 2) return {1};
    const std::uint64_t N = static_cast<std::uint64_t>(q - 1);
    std::vector<char> done(N, 0);
    std::vector<std::uint64_t> reps;
    for (std::uint64_t s = 1; s < N; ++s) {
        if (done[s] || std::gcd(s, N) != 1) continue;
        reps.push_back(s);
        for (std::uint64_t member : exponent_orbit(q, p, s)) done[member] = 1;
    }
    return reps;
}

std::uint64_t canonical_exponent(std::int64_t q, std::int64_t p, std::uint64_t s) {
    if (q <= 2) return 1;
    const auto orbit = exponent_orbit(q, p, s);
    return *std::min_element(orbit.begin(), orbit.end());
}

TauAction tau_action(const WeilSpectrum& spec) {
    const Field& K = spec.field();
    const std::int64_t p = K.p();
    const std::int64_t q = K.q();

    TauAction tau;
    if (p == 2) {
        tau.lambda = 1;
    } else {
        const std::int64_t gamma = primitive_root_mod_p(p);
        const std::uint64_t s_inv = mod_inverse(spec.s() % static_cast<std::uint64_t>(p - 1),
                                                static_cast<std::uint64_t>(p - 1));
        const std::uint64_t e =
            static_cast<std::uint64_t>(((1 - static_cast<std::int64_t>(s_inv)) % (p - 1) + (p - 1)) % (p - 1));
        tau.lambda = pow_mod(gamma, e, p);
    }
    const std::uint32_t lambda_code = K.from_prime_subfield(tau.lambda);

    // image of each distinct value under u -> lambda*u, with a
    // well-definedness sweep over every unit
    const std::size_t m = spec.num_values();
    std::vector<std::uint32_t> perm(m, 0);
    std::vector<char> set(m, 0);
    for (std::int64_t u = 1; u < q; ++u) {
        const std::uint32_t from = spec.index_of_unit(static_cast<std::uint32_t>(u));
        const std::uint32_t to = spec.index_of_unit(K.mul_code(lambda_code, static_cast<std::uint32_t>(u)));
        if (!set[from]) {
            perm[from] = to;
            set[from] = 1;
        } else if (perm[from] != to) {
            throw InconsistentError("value-set action is not well-defined");
        }
    }
    tau.mapping = std::move(perm);

    std::vector<char> visited(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (visited[i]) continue;
        int len = 0;
        for (std::size_t j = i; !visited[j]; j = tau.mapping[j]) {
            visited[j] = 1;
            ++len;
        }
        tau.cycle_type.push_back(len);
    }
    std::sort(tau.cycle_type.begin(), tau.cycle_type.end());
    tau.order = 1;
    for (int len : tau.cycle_type) tau.order = std::lcm(tau.order, len);
    return tau;
}

std::string render_value(const WeilValue& v) {
    if (auto r = is_rational(v.value)) return r->str();
    if (v.quad) return to_string(*v.quad, v.value.p());
    return to_string(v.value);
}

ClassificationRecord classify(FieldHandle K, std::uint64_t s) {
    const auto spec = spectrum(std::move(K), s);
    return classify(spec, tau_action(spec));
}

ClassificationRecord classify(const WeilSpectrum& spec, const TauAction& tau) {
    const Field& K = spec.field();
    const std::uint64_t s = spec.s();
    const std::int64_t p = K.p();
    const std::int64_t q = K.q();

    ClassificationRecord rec;
    rec.q = q;
    rec.p = p;
    rec.n = K.n();
    rec.s = s;
    rec.s_canonical = canonical_exponent(q, p, s);
    rec.num_values = static_cast<int>(spec.num_values());
    rec.is_degenerate = is_degenerate(q, p, s);
    rec.is_rational = true;
    for (const auto& v : spec.distinct()) {
        if (!is_rational(v.value)) {
            rec.is_rational = false;
            break;
        }
    }
    rec.tau_order = tau.order;
    rec.cycle_type = tau.cycle_type;
    rec.helleseth_predicate = ((s - 1) % static_cast<std::uint64_t>(p - 1)) == 0;
    for (const auto& v : spec.distinct()) rec.values_rendered.push_back(render_value(v));
    rec.frequencies = spec.frequencies();

    if (rec.is_rational != rec.helleseth_predicate) {
        throw CheckFailedError("rationality-criterion",
                               "rationality disagrees with s = 1 (mod p-1) at q=" + std::to_string(q) +
                                   " s=" + std::to_string(s));
    }
    if ((rec.num_values >= 3) != !rec.is_degenerate) {
        throw CheckFailedError("value-count-criterion",
                               "3-valuedness disagrees with nondegeneracy at q=" + std::to_string(q) +
                                   " s=" + std::to_string(s));
    }
    const std::int64_t expected_order =
        (p - 1) / std::gcd<std::int64_t>(p - 1, static_cast<std::int64_t>((s - 1) % static_cast<std::uint64_t>(p - 1)));
    if (rec.tau_order != expected_order) {
        throw CheckFailedError("tau-order-formula",
                               "permutation order != (p-1)/gcd(p-1,s-1) at q=" + std::to_string(q) +
                                   " s=" + std::to_string(s));
    }
    return rec;
}

std::string classification_csv_header() {
    return "q,p,n,s,num_values,is_degenerate,is_rational,tau_order,cycle_type,values,frequencies";
}

std::string to_csv_row(const ClassificationRecord& rec) {
    std::ostringstream out;
    out << rec.q << ',' << rec.p << ',' << rec.n << ',' << rec.s << ',' << rec.num_values << ','
        << (rec.is_degenerate ? "true" : "false") << ',' << (rec.is_rational ? "true" : "false") << ','
        << rec.tau_order << ',';
    for (std::size_t i = 0; i < rec.cycle_type.size(); ++i) {
        if (i > 0) out << '+';
        out << rec.cycle_type[i];
    }
    out << ',';
    for (std::size_t i = 0; i < rec.values_rendered.size(); ++i) {
        if (i > 0) out << ';';
        out << rec.values_rendered[i];
    }
    out << ',';
    for (std::size_t i = 0; i < rec.frequencies.size(); ++i) {
        if (i > 0) out << ';';
        out << rec.frequencies[i];
    }
    return out.str();
}

}  // namespace weilsum
