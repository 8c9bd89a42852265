// Command line driver: spectrum reports, exhaustive surveys, algebraic-set
// counts, and the identity verification suites.
//
// Exit codes: 0 success, 1 check failure, 2 usage or validation error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "weilsum/algebraic_sets.hpp"
#include "weilsum/group_algebra.hpp"
#include "weilsum/survey.hpp"

namespace {

using namespace weilsum;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::uint32_t> parse_code_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

int run_spectrum(const std::string& field_spec, std::uint64_t s, bool as_json) {
    const auto K = parse_field_spec(field_spec);
    const auto report = spectrum_report(K, s);
    if (as_json) {
        std::cout << report.json.dump(2) << '\n';
    } else {
        std::cout << report.text;
    }
    return report.all_checks_pass ? kExitOk : kExitCheckFailure;
}

int run_survey(const SurveyConfig& config) {
    const auto result = survey(config);
    std::string rendered;
    if (config.format == OutputFormat::Csv) {
        rendered = render_csv(result);
    } else {
        rendered = render_json(result).dump(2) + "\n";
    }
    if (config.output_path.empty()) {
        std::cout << rendered;
        std::cerr << render_summary(result);
    } else {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << config.output_path << '\n';
            return kExitUsage;
        }
        out << rendered;
        std::cout << render_summary(result);
    }
    return result.summary.ok ? kExitOk : kExitCheckFailure;
}

int run_qcount(const std::string& field_spec, std::uint64_t s, const std::string& t_csv,
               std::uint32_t a, std::uint32_t b) {
    const auto K = parse_field_spec(field_spec);
    const auto t_codes = parse_code_list(t_csv);
    QQuery query;
    for (auto t : t_codes) query.t.push_back(K->decode(t));
    query.a = K->decode(a);
    query.b = K->decode(b);
    const std::int64_t count = q_count(*K, s, query);
    std::cout << "count = " << count << '\n';

    // closed-form cross-checks that apply to this query shape
    const std::int64_t q = K->q();
    const std::size_t k = t_codes.size();
    bool ok = true;
    if (k == 1) {
        const std::int64_t expect = a == K->mul_code(t_codes[0], b) ? 1 : 0;
        ok = count == expect;
        std::cout << "k=1 delta form: expect " << expect << (ok ? " (agrees)" : " (MISMATCH)") << '\n';
    }
    if (k == 2 && (a == 0 || b == 0)) {
        const std::int64_t delta = t_codes[0] == t_codes[1] ? 1 : 0;
        const std::int64_t expect = (a == 0 && b == 0) ? 1 + (q - 1) * delta : 1 - delta;
        ok = ok && count == expect;
        std::cout << "k=2 zero-argument form: expect " << expect
                  << (count == expect ? " (agrees)" : " (MISMATCH)") << '\n';
    }
    if (a != 0 && b != 0) {
        QQuery ext;
        ext.t.push_back(K->decode(K->mul_code(a, K->inv_code(b))));
        for (auto t : t_codes) ext.t.push_back(K->decode(t));
        ext.a = K->decode(0);
        ext.b = K->decode(0);
        QQuery zero = query;
        zero.a = K->decode(0);
        zero.b = K->decode(0);
        const std::int64_t homog = (q_count(*K, s, ext) - q_count(*K, s, zero)) / (q - 1);
        ok = ok && homog == count;
        std::cout << "homogenized form: expect " << homog
                  << (homog == count ? " (agrees)" : " (MISMATCH)") << '\n';
    }
    return ok ? kExitOk : kExitCheckFailure;
}

int run_algebra_check(const std::string& field_spec, std::uint64_t s, const std::string& filter,
                      std::uint64_t seed) {
    const auto K = parse_field_spec(field_spec);
    CheckReport report = verify_identities(K, s, seed);
    report.merge(verify_characters(K, seed));
    bool any = false;
    bool all_pass = true;
    for (const auto& c : report.checks) {
        if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
        any = true;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << '\n';
        all_pass = all_pass && c.pass;
    }
    if (!any) {
        std::cerr << "no check matches filter '" << filter << "'\n";
        return kExitUsage;
    }
    return all_pass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Weil sums of binomials over small finite fields"};
    app.require_subcommand(1);

    std::string field_spec;
    std::uint64_t s = 1;
    bool as_json = false;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "Weil spectrum report for one field and exponent");
    cmd_spectrum->add_option("field", field_spec, "field spec, e.g. 5 or 2^3 or 2^3:1,1,0,1")->required();
    cmd_spectrum->add_option("s", s, "invertible exponent")->required();
    cmd_spectrum->add_flag("--json", as_json, "emit JSON instead of text");

    SurveyConfig config;
    bool primes_only = false;
    std::string format = "csv";
    auto* cmd_survey = app.add_subcommand("survey", "classify all spectra with q <= q-max");
    cmd_survey->add_option("--q-max", config.q_max, "largest field order")->required();
    cmd_survey->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd_survey->add_option("--out", config.output_path, "output file (default stdout)");
    cmd_survey->add_option("--jobs", config.parallelism, "worker threads")->check(CLI::PositiveNumber);
    cmd_survey->add_option("--seed", config.seed, "seed for sampled checks");
    cmd_survey->add_flag("--lemmas", config.lemma_suite, "also run the identity suites for q <= 16");
    cmd_survey->add_flag("--primes-only", primes_only, "skip proper prime powers");

    std::string t_csv;
    std::uint32_t a_code = 0;
    std::uint32_t b_code = 0;
    auto* cmd_qcount = app.add_subcommand("qcount", "count solutions of t.v = a, <v> = b");
    cmd_qcount->add_option("field", field_spec, "field spec")->required();
    cmd_qcount->add_option("s", s, "invertible exponent")->required();
    cmd_qcount->add_option("--t", t_csv, "comma-separated unit indices, e.g. 1,4")->required();
    cmd_qcount->add_option("--a", a_code, "element index of a")->required();
    cmd_qcount->add_option("--b", b_code, "element index of b")->required();

    std::string filter;
    std::uint64_t seed = 42;
    auto* cmd_algebra = app.add_subcommand("algebra-check", "group algebra identity report");
    cmd_algebra->add_option("field", field_spec, "field spec")->required();
    cmd_algebra->add_option("s", s, "invertible exponent")->required();
    cmd_algebra->add_option("--lemma", filter, "only run checks whose name contains this substring");
    cmd_algebra->add_option("--seed", seed, "seed for sampled checks");

    auto* cmd_verify = app.add_subcommand("verify", "run every exact check for one pair");
    cmd_verify->add_option("field", field_spec, "field spec")->required();
    cmd_verify->add_option("s", s, "invertible exponent")->required();
    cmd_verify->add_option("--seed", seed, "seed for sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message / help text
        return kExitUsage;
    }

    try {
        if (cmd_spectrum->parsed()) return run_spectrum(field_spec, s, as_json);
        if (cmd_survey->parsed()) {
            config.include_prime_powers = !primes_only;
            config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
            return run_survey(config);
        }
        if (cmd_qcount->parsed()) return run_qcount(field_spec, s, t_csv, a_code, b_code);
        if (cmd_algebra->parsed()) return run_algebra_check(field_spec, s, filter, seed);
        if (cmd_verify->parsed()) {
            return verify_all(parse_field_spec(field_spec), s, seed, std::cout) == 0 ? kExitOk
                                                                                     : kExitCheckFailure;
        }
    } catch (const CheckFailedError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitCheckFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
