#include "weilsum/survey.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "weilsum/algebraic_sets.hpp"
#include "weilsum/group_algebra.hpp"

namespace weilsum {

namespace {

std::string pair_label(std::int64_t q, std::uint64_t s) {
    return "q=" + std::to_string(q) + " s=" + std::to_string(s);
}

// The four quadratic values of the exceptional class over F_5.
bool is_exceptional_value_set(const WeilSpectrum& spec) {
    if (spec.num_values() != 4) return false;
    std::vector<QuadDecomp> want{{BigInt(0), BigInt(-2)},
                                 {BigInt(0), BigInt(2)},
                                 {BigInt(5), BigInt(-1)},
                                 {BigInt(5), BigInt(1)}};
    std::vector<QuadDecomp> got;
    for (const auto& v : spec.distinct()) {
        if (!v.quad || spec.frequencies()[got.size()] != 1) return false;
        got.push_back(*v.quad);
    }
    auto key = [](const QuadDecomp& d) { return std::pair<BigInt, BigInt>(d.I, d.J); };
    auto cmp = [&](const QuadDecomp& a, const QuadDecomp& b) { return key(a) < key(b); };
    std::sort(want.begin(), want.end(), cmp);
    std::sort(got.begin(), got.end(), cmp);
    return want == got;
}

}  // namespace

CheckReport verify_spectrum_invariants(const WeilSpectrum& spec) {
    TauAction tau;
    try {
        tau = tau_action(spec);
    } catch (const InconsistentError&) {
        tau.mapping.clear();  // flags the action as undefined downstream
    }
    return verify_spectrum_invariants(spec, tau);
}

CheckReport verify_spectrum_invariants(const WeilSpectrum& spec, const TauAction& tau) {
    CheckReport report;
    const Field& K = spec.field();
    const std::int64_t p = K.p();
    const std::int64_t q = K.q();
    const int n = K.n();
    const std::uint64_t s = spec.s();
    const bool degenerate = is_degenerate(q, p, s);
    const std::size_t m = spec.num_values();
    const std::int64_t gamma = p == 2 ? 1 : primitive_root_mod_p(p);
    const bool tau_defined = tau.mapping.size() == m;

    {  // sum of W_u over units is q, in exact histogram arithmetic
        std::vector<std::int64_t> acc(static_cast<std::size_t>(p), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& h = spec.distinct()[i].histogram.counts;
            for (std::int64_t e = 0; e < p; ++e) {
                acc[static_cast<std::size_t>(e)] += spec.frequencies()[i] * h[static_cast<std::size_t>(e)];
            }
        }
        bool pass = true;
        for (std::int64_t e = 0; e < p - 1; ++e) {
            const std::int64_t reduced = acc[static_cast<std::size_t>(e)] - acc[static_cast<std::size_t>(p - 1)];
            if (reduced != (e == 0 ? q : 0)) pass = false;
        }
        report.add("global-sum-linear", pass);
    }

    bool galois_ok = tau_defined;
    {  // the Galois generator acts on values as u -> lambda u; by uniqueness
       // of the total-q representation this is an exact histogram statement:
       // the image histogram is the source one with exponents scaled by gamma
        if (galois_ok) {
            for (std::size_t i = 0; i < m && galois_ok; ++i) {
                const auto& h = spec.distinct()[i].histogram.counts;
                const auto& img = spec.distinct()[tau.mapping[i]].histogram.counts;
                for (std::int64_t e = 0; e < p; ++e) {
                    if (img[static_cast<std::size_t>(e * gamma % p)] != h[static_cast<std::size_t>(e)]) {
                        galois_ok = false;
                        break;
                    }
                }
            }
        }
        report.add("galois-translate", galois_ok);
    }

    {  // sum of W_u conj(W_u) is q^2, via histogram autocorrelation. When the
       // Galois translation holds, values on one tau-cycle have permuted
       // histograms, so one correlation per cycle serves the whole cycle.
        std::vector<std::int64_t> acc(static_cast<std::size_t>(p), 0);
        auto accumulate_direct = [&](std::size_t i) {
            const auto& h = spec.distinct()[i].histogram.counts;
            for (std::int64_t d = 0; d < p; ++d) {
                std::int64_t corr = 0;
                for (std::int64_t e = 0; e < p; ++e) {
                    corr += h[static_cast<std::size_t>(e)] * h[static_cast<std::size_t>((e + d) % p)];
                }
                acc[static_cast<std::size_t>(d)] += spec.frequencies()[i] * corr;
            }
        };
        if (galois_ok) {
            const std::int64_t gamma_inv =
                p == 2 ? 1 : static_cast<std::int64_t>(mod_inverse(static_cast<std::uint64_t>(gamma % p),
                                                                   static_cast<std::uint64_t>(p)));
            std::vector<char> visited(m, 0);
            std::vector<std::int64_t> corr(static_cast<std::size_t>(p));
            for (std::size_t i = 0; i < m; ++i) {
                if (visited[i]) continue;
                const auto& h = spec.distinct()[i].histogram.counts;
                for (std::int64_t d = 0; d < p; ++d) {
                    std::int64_t c = 0;
                    for (std::int64_t e = 0; e < p; ++e) {
                        c += h[static_cast<std::size_t>(e)] * h[static_cast<std::size_t>((e + d) % p)];
                    }
                    corr[static_cast<std::size_t>(d)] = c;
                }
                std::int64_t scale = 1;  // gamma^{-j} for the j-th cycle element
                for (std::size_t j = i; !visited[j]; j = tau.mapping[j]) {
                    visited[j] = 1;
                    for (std::int64_t d = 0; d < p; ++d) {
                        acc[static_cast<std::size_t>(d)] +=
                            spec.frequencies()[j] * corr[static_cast<std::size_t>(scale * d % p)];
                    }
                    scale = scale * gamma_inv % p;
                }
            }
        } else {
            for (std::size_t i = 0; i < m; ++i) accumulate_direct(i);
        }
        bool pass = true;
        for (std::int64_t d = 0; d < p - 1; ++d) {
            const std::int64_t reduced = acc[static_cast<std::size_t>(d)] - acc[static_cast<std::size_t>(p - 1)];
            if (reduced != (d == 0 ? q * q : 0)) pass = false;
        }
        report.add("global-sum-quadratic", pass);
    }

    {  // values are real within 1e-9 under the complex embedding
        std::vector<double> sin_table(static_cast<std::size_t>(p));
        for (std::int64_t e = 0; e < p; ++e) {
            sin_table[static_cast<std::size_t>(e)] =
                std::sin(2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p));
        }
        bool pass = true;
        for (const auto& v : spec.distinct()) {
            double imag = 0.0;
            for (std::int64_t e = 0; e < p; ++e) {
                imag += static_cast<double>(v.histogram.counts[static_cast<std::size_t>(e)]) *
                        sin_table[static_cast<std::size_t>(e)];
            }
            if (std::abs(imag) > 1e-9) {
                pass = false;
                break;
            }
        }
        report.add("real-values", pass);
    }

    {  // order of the action: (p-1)/gcd(p-1, s-1), also the order of lambda mod p
        bool pass = tau_defined;
        if (pass) {
            const std::int64_t expected =
                (p - 1) /
                std::gcd<std::int64_t>(p - 1, static_cast<std::int64_t>((s - 1) % static_cast<std::uint64_t>(p - 1)));
            std::int64_t lambda_order = 1;
            std::int64_t x = tau.lambda % p;
            while (x != 1) {
                x = x * tau.lambda % p;
                ++lambda_order;
            }
            pass = tau.order == expected && lambda_order == expected;
        }
        report.add("tau-order", pass);
    }

    {  // frequencies constant on each cycle and divisible by m/k
        bool pass = tau_defined;
        if (pass) {
            std::vector<char> visited(m, 0);
            for (std::size_t i = 0; i < m && pass; ++i) {
                if (visited[i]) continue;
                std::vector<std::size_t> cycle;
                for (std::size_t j = i; !visited[j]; j = tau.mapping[j]) {
                    visited[j] = 1;
                    cycle.push_back(j);
                }
                const std::int64_t freq = spec.frequencies()[cycle.front()];
                for (std::size_t j : cycle) {
                    if (spec.frequencies()[j] != freq) pass = false;
                }
                if (tau.order % static_cast<int>(cycle.size()) != 0) {
                    pass = false;
                } else {
                    const int quotient = tau.order / static_cast<int>(cycle.size());
                    if (freq % quotient != 0) pass = false;
                }
            }
        }
        report.add("cycle-frequencies", pass);
    }

    {  // cycle lengths: all 1 for p = 2, at most (p-1)/2 for odd p,
       // and a single cycle happens only over F_2
        bool pass = tau_defined;
        if (pass) {
            for (int len : tau.cycle_type) {
                if (p == 2 && len != 1) pass = false;
                if (p > 2 && len > (p - 1) / 2) pass = false;
            }
            if (tau.cycle_type.size() == 1 && q != 2) pass = false;
        }
        report.add("cycle-structure", pass);
    }

    {  // at least 3 values iff nondegenerate; degenerate value sets are exact
        bool pass = ((m >= 3) == !degenerate);
        if (degenerate && pass) {
            if (q == 2) {
                pass = m == 1 && is_rational(spec.distinct()[0].value) == BigInt(2) &&
                       spec.frequencies()[0] == 1;
            } else {
                pass = m == 2 && is_rational(spec.distinct()[0].value) == BigInt(0) &&
                       is_rational(spec.distinct()[1].value) == BigInt(q) &&
                       spec.frequencies()[0] == q - 2 && spec.frequencies()[1] == 1;
            }
        }
        report.add("value-count", pass);
    }

    bool rational = true;
    for (const auto& v : spec.distinct()) {
        if (!is_rational(v.value)) {
            rational = false;
            break;
        }
    }
    report.add("rationality", rational == (((s - 1) % static_cast<std::uint64_t>(p - 1)) == 0));

    report.add("three-valued-rational", m != 3 || rational);

    {  // four-valued spectra are rational away from the exceptional class
        bool pass = true;
        if (m == 4 && !rational) {
            pass = q == 5 && s % 4 == 3 && is_exceptional_value_set(spec);
        }
        report.add("four-valued-rational", pass);
    }

    {  // histogram bounds: w_0 >= 1 always; every w_i < q when nondegenerate
        bool pass = true;
        for (const auto& v : spec.distinct()) {
            if (v.histogram.total != q || v.histogram.counts[0] < 1) pass = false;
            std::int64_t sum = 0;
            for (auto w : v.histogram.counts) {
                sum += w;
                if (w < 0 || (!degenerate && w >= q)) pass = false;
            }
            if (sum != q) pass = false;
        }
        report.add("histogram-bounds", pass);
    }

    {  // p-adic bounds for rational values: positive valuation, below v_p(q)
        bool pass = true;
        if (!degenerate) {
            for (const auto& v : spec.distinct()) {
                if (auto r = is_rational(v.value)) {
                    const auto val = vp_int(*r, p);
                    if (val && (*val < 1 || *val >= n)) pass = false;
                }
            }
        }
        report.add("rational-valuation", pass);
    }

    {  // quadratic-subfield bounds on (I + J sqrt(p))/2 values
        bool pass = true;
        if (!degenerate && p % 4 == 1) {
            if (!(BigInt(q) * (p - 1) > 2 * BigInt(q - 1))) pass = false;  // -q < -2(q-1)/(p-1)
            for (const auto& v : spec.distinct()) {
                if (!v.quad) continue;
                const BigInt& I = v.quad->I;
                const BigInt& J = v.quad->J;
                if ((I - J) % 2 != 0) pass = false;
                const auto val = vp_int(I, p);
                if (val && *val < 1) pass = false;
                if (!(I * (p - 1) > -2 * BigInt(q - 1)) || !(I < 2 * BigInt(q))) pass = false;
                const BigInt jabs = J < 0 ? BigInt(-J) : J;
                if (!(jabs * (p - 1) <= 2 * BigInt(q - 1))) pass = false;
            }
        }
        report.add("quadratic-bounds", pass);
    }

    return report;
}

namespace {

bool report_flag(const CheckReport& report, const std::string& name) {
    for (const auto& c : report.checks) {
        if (c.name == name) return c.pass;
    }
    return false;
}

TheoremFlags flags_from_report(const CheckReport& report) {
    TheoremFlags f;
    f.sums_ok = report_flag(report, "global-sum-linear") && report_flag(report, "global-sum-quadratic");
    f.galois_ok = report_flag(report, "real-values") && report_flag(report, "galois-translate");
    f.tau_order_ok = report_flag(report, "tau-order");
    f.frequency_ok = report_flag(report, "cycle-frequencies");
    f.cycle_ok = report_flag(report, "cycle-structure");
    f.value_count_ok = report_flag(report, "value-count");
    f.rationality_ok = report_flag(report, "rationality");
    f.three_valued_ok = report_flag(report, "three-valued-rational");
    f.four_valued_ok = report_flag(report, "four-valued-rational");
    f.bounds_ok = report_flag(report, "histogram-bounds") &&
                  report_flag(report, "rational-valuation") &&
                  report_flag(report, "quadratic-bounds");
    return f;
}

struct FieldParams {
    std::int64_t q;
    std::int64_t p;
    int n;
};

std::optional<FieldParams> prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return FieldParams{q, q, 1};
    std::int64_t rest = q;
    int n = 0;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    if (rest != 1) return std::nullopt;
    return FieldParams{q, p, n};
}

}  // namespace

SurveyResult survey(const SurveyConfig& config) {
    struct Task {
        FieldHandle field;
        std::uint64_t s;
    };
    std::vector<Task> tasks;
    for (std::int64_t q = 2; q <= config.q_max; ++q) {
        const auto params = prime_power(q);
        if (!params) continue;
        if (params->n > 1 && !config.include_prime_powers) continue;
        FieldHandle field = make_field(params->p, params->n);
        for (std::uint64_t s : exponent_classes(params->q, params->p)) {
            tasks.push_back({field, s});
        }
    }

    SurveyResult result;
    result.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};

    auto run_task = [&](std::size_t i) {
        const auto& task = tasks[i];
        SurveyRow& row = result.rows[i];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto spec = spectrum(task.field, task.s);
            const auto tau = tau_action(spec);
            row.rec = classify(spec, tau);
            row.flags = flags_from_report(verify_spectrum_invariants(spec, tau));
            if (config.lemma_suite && task.field->q() <= 16) {
                const int k_max = task.field->q() <= 13 ? 3 : 2;
                auto lemmas = verify_q_lemmas(*task.field, task.s, k_max, config.seed);
                lemmas.merge(verify_identities(task.field, task.s, config.seed));
                lemmas.merge(verify_characters(task.field, config.seed));
                if (const auto* fail = lemmas.first_failure()) {
                    row.error = "identity suite failed: " + fail->name +
                                (fail->detail.empty() ? "" : " (" + fail->detail + ")");
                }
            }
        } catch (const std::exception& e) {
            row.error = e.what();
            row.rec.q = task.field->q();
            row.rec.p = task.field->p();
            row.rec.n = task.field->n();
            row.rec.s = task.s;
        }
        row.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    const int workers = std::max(1, std::min<int>(config.parallelism, static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
                    run_task(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    auto& summary = result.summary;
    summary.pairs = static_cast<std::int64_t>(result.rows.size());
    summary.ok = true;
    for (const auto& row : result.rows) {
        const std::string label = pair_label(row.rec.q, row.rec.s);
        if (!row.error.empty()) {
            summary.failures.push_back(label + ": " + row.error);
            summary.ok = false;
            continue;
        }
        if (!row.flags.all_ok()) {
            summary.failures.push_back(label + ": invariant check failed");
            summary.ok = false;
        }
        if (row.rec.num_values == 3) summary.three_valued.push_back(label);
        if (row.rec.num_values == 4) {
            if (row.rec.is_rational) {
                summary.four_valued_rational.push_back(label);
            } else {
                summary.four_valued_irrational.push_back(label);
                std::string values;
                for (std::size_t i = 0; i < row.rec.values_rendered.size(); ++i) {
                    if (i > 0) values += ", ";
                    values += row.rec.values_rendered[i];
                }
                summary.exceptional_values = values;
            }
        }
    }
    return result;
}

std::string render_csv(const SurveyResult& result) {
    std::ostringstream out;
    out << classification_csv_header() << '\n';
    for (const auto& row : result.rows) out << to_csv_row(row.rec) << '\n';
    return out.str();
}

nlohmann::json to_json(const ClassificationRecord& rec) {
    return nlohmann::json{{"q", rec.q},
                          {"p", rec.p},
                          {"n", rec.n},
                          {"s", rec.s},
                          {"s_canonical", rec.s_canonical},
                          {"num_values", rec.num_values},
                          {"is_degenerate", rec.is_degenerate},
                          {"is_rational", rec.is_rational},
                          {"tau_order", rec.tau_order},
                          {"cycle_type", rec.cycle_type},
                          {"helleseth_predicate", rec.helleseth_predicate},
                          {"values", rec.values_rendered},
                          {"frequencies", rec.frequencies}};
}

nlohmann::json to_json(const CycInt& value) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : value.coeffs()) {
        if (fits_int64(c)) {
            coeffs.push_back(to_int64(c));
        } else {
            coeffs.push_back(c.str());
        }
    }
    return nlohmann::json{{"p", value.p()}, {"coeffs", std::move(coeffs)}};
}

nlohmann::json render_json(const SurveyResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json r = to_json(row.rec);
        r["flags_ok"] = row.flags.all_ok();
        if (!row.error.empty()) r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"rows", std::move(rows)},
                          {"summary",
                           {{"pairs", result.summary.pairs},
                            {"three_valued", result.summary.three_valued},
                            {"four_valued_rational", result.summary.four_valued_rational},
                            {"four_valued_irrational", result.summary.four_valued_irrational},
                            {"exceptional_values", result.summary.exceptional_values},
                            {"failures", result.summary.failures},
                            {"ok", result.summary.ok}}}};
}

std::string render_summary(const SurveyResult& result) {
    const auto& s = result.summary;
    std::ostringstream out;
    out << "pairs surveyed: " << s.pairs << '\n';
    out << "3-valued classes (" << s.three_valued.size() << ", all rational):";
    for (const auto& label : s.three_valued) out << ' ' << label << ';';
    out << '\n';
    out << "4-valued rational classes (" << s.four_valued_rational.size() << "):";
    for (const auto& label : s.four_valued_rational) out << ' ' << label << ';';
    out << '\n';
    out << "4-valued irrational classes (" << s.four_valued_irrational.size() << "):";
    for (const auto& label : s.four_valued_irrational) out << ' ' << label << ';';
    out << '\n';
    if (!s.exceptional_values.empty()) {
        out << "exceptional value set: {" << s.exceptional_values << "}\n";
    }
    for (const auto& f : s.failures) out << "FAILURE " << f << '\n';
    out << (s.ok ? "survey OK" : "survey FAILED") << '\n';
    return out.str();
}

SpectrumReport spectrum_report(FieldHandle K, std::uint64_t s) {
    SpectrumReport rep;
    const auto spec = spectrum(K, s);
    const auto tau = tau_action(spec);
    const auto rec = classify(spec, tau);
    const auto checks = verify_spectrum_invariants(spec, tau);
    rep.all_checks_pass = checks.all_pass();

    std::ostringstream out;
    out << "q=" << rec.q << " p=" << rec.p << " n=" << rec.n << " s=" << rec.s
        << " (canonical " << rec.s_canonical << ")\n";
    out << (rec.is_degenerate ? "degenerate" : "nondegenerate") << ", "
        << (rec.is_rational ? "rational" : "irrational") << ", " << rec.num_values << " values\n";
    out << "per-unit values (units indexed by enumeration order):\n";
    for (std::int64_t u = 1; u < K->q(); ++u) {
        out << "  W_" << u << " = " << render_value(spec.value_of_unit(static_cast<std::uint32_t>(u)))
            << '\n';
    }
    out << "value multiset:\n";
    for (std::size_t i = 0; i < spec.num_values(); ++i) {
        out << "  " << rec.values_rendered[i] << "  x" << rec.frequencies[i] << '\n';
    }
    out << "action on values: lambda=" << tau.lambda << " order=" << tau.order << " cycle type ";
    for (std::size_t i = 0; i < tau.cycle_type.size(); ++i) {
        if (i > 0) out << '+';
        out << tau.cycle_type[i];
    }
    out << '\n';
    for (const auto& c : checks.checks) {
        out << (c.pass ? "  ok   " : "  FAIL ") << c.name;
        if (!c.pass && !c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
    }

    rep.text = out.str();
    rep.json = to_json(rec);
    nlohmann::json per_u = nlohmann::json::array();
    for (std::int64_t u = 1; u < K->q(); ++u) {
        const auto& value = spec.value_of_unit(static_cast<std::uint32_t>(u));
        per_u.push_back(nlohmann::json{
            {"u", u}, {"rendered", render_value(value)}, {"value", to_json(value.value)}});
    }
    rep.json["per_unit"] = std::move(per_u);
    nlohmann::json check_list = nlohmann::json::array();
    for (const auto& c : checks.checks) {
        check_list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    rep.json["checks"] = std::move(check_list);
    rep.json["all_checks_pass"] = rep.all_checks_pass;
    return rep;
}

int verify_all(FieldHandle K, std::uint64_t s, std::uint64_t seed, std::ostream& out) {
    CheckReport all;
    const int k_max = K->q() <= 13 ? 3 : 2;
    all.merge(verify_q_lemmas(*K, s, k_max, seed));
    all.merge(verify_identities(K, s, seed));
    all.merge(verify_characters(K, seed));
    all.merge(verify_spectrum_invariants(spectrum(K, s)));
    for (const auto& c : all.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
    }
    if (const auto* fail = all.first_failure()) {
        out << "first failing check: " << fail->name << '\n';
        return 1;
    }
    out << "all " << all.checks.size() << " checks passed\n";
    return 0;
}

}  // namespace weilsum
