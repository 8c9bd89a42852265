#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "weilsum/survey.hpp"

using namespace weilsum;

TEST_CASE("spectrum invariants hold for every pair up to q = 49") {
    for (std::int64_t q = 2; q <= 49; ++q) {
        std::int64_t p = 0;
        for (std::int64_t d = 2; d <= q; ++d) {
            if (q % d == 0) {
                p = d;
                break;
            }
        }
        std::int64_t rest = q;
        int n = 0;
        while (rest % p == 0) {
            rest /= p;
            ++n;
        }
        if (rest != 1) continue;
        const auto K = make_field(p, n);
        for (std::uint64_t s : exponent_classes(q, p)) {
            const auto report = verify_spectrum_invariants(spectrum(K, s));
            for (const auto& check : report.checks) {
                INFO("q=", q, " s=", s, " ", check.name);
                CHECK(check.pass);
            }
        }
    }
}

TEST_CASE("survey finds the expected classes up to q = 64") {
    SurveyConfig config;
    config.q_max = 64;
    const auto result = survey(config);
    CHECK(result.summary.ok);
    CHECK(result.summary.failures.empty());

    // every flag on every row
    for (const auto& row : result.rows) {
        INFO("q=", row.rec.q, " s=", row.rec.s);
        CHECK(row.error.empty());
        CHECK(row.flags.all_ok());
    }

    // the exceptional class and its value set
    REQUIRE(result.summary.four_valued_irrational.size() == 1);
    CHECK(result.summary.four_valued_irrational[0] == "q=5 s=3");
    CHECK(result.summary.exceptional_values ==
          "(0+2*sqrt(5))/2, (0-2*sqrt(5))/2, (5+1*sqrt(5))/2, (5-1*sqrt(5))/2");

    // rows arrive ordered by (q, s)
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const auto& a = result.rows[i - 1].rec;
        const auto& b = result.rows[i].rec;
        CHECK((a.q < b.q || (a.q == b.q && a.s < b.s)));
    }

    // known small 3-valued classes appear
    const auto& threes = result.summary.three_valued;
    CHECK(std::find(threes.begin(), threes.end(), "q=8 s=3") != threes.end());
    CHECK(std::find(threes.begin(), threes.end(), "q=32 s=3") != threes.end());
}

TEST_CASE("surveys are deterministic and scheduling-independent") {
    SurveyConfig config;
    config.q_max = 32;
    config.seed = 42;
    const auto first = render_csv(survey(config));
    const auto second = render_csv(survey(config));
    CHECK(first == second);

    config.parallelism = 4;
    const auto parallel = render_csv(survey(config));
    CHECK(first == parallel);

    SurveyConfig primes = config;
    primes.include_prime_powers = false;
    const auto filtered = survey(primes);
    for (const auto& row : filtered.rows) CHECK(row.rec.n == 1);
}

TEST_CASE("lemma suite hook runs inside the survey") {
    SurveyConfig config;
    config.q_max = 9;
    config.lemma_suite = true;
    const auto result = survey(config);
    CHECK(result.summary.ok);
}

TEST_CASE("json rendering carries rows and summary") {
    SurveyConfig config;
    config.q_max = 8;
    const auto result = survey(config);
    const auto j = render_json(result);
    CHECK(j["summary"]["ok"].get<bool>());
    CHECK(j["rows"].size() == result.rows.size());
    CHECK(j["rows"][0]["q"].get<std::int64_t>() == 2);

    const auto rec = classify(make_field(5, 1), 3);
    const auto rj = to_json(rec);
    CHECK(rj["num_values"].get<int>() == 4);
    CHECK(rj["values"].size() == 4);
    CHECK_FALSE(rj["is_rational"].get<bool>());
}

TEST_CASE("spectrum reports") {
    {
        const auto rep = spectrum_report(parse_field_spec("5"), 3);
        CHECK(rep.all_checks_pass);
        CHECK(rep.text.find("(5+1*sqrt(5))/2") != std::string::npos);
        CHECK(rep.text.find("cycle type 2+2") != std::string::npos);
        CHECK(rep.json["per_unit"].size() == 4);
    }
    {
        const auto rep = spectrum_report(parse_field_spec("2^3"), 3);
        CHECK(rep.all_checks_pass);
        CHECK(rep.json["num_values"].get<int>() == 3);
        CHECK(rep.json["is_rational"].get<bool>());
    }
    {
        const auto rep = spectrum_report(parse_field_spec("7"), 1);
        CHECK(rep.all_checks_pass);
        CHECK(rep.json["is_degenerate"].get<bool>());
        CHECK(rep.json["frequencies"][0].get<std::int64_t>() == 5);
        CHECK(rep.json["frequencies"][1].get<std::int64_t>() == 1);
    }
}

TEST_CASE("verify_all aggregates every suite") {
    std::ostringstream sink;
    CHECK(verify_all(parse_field_spec("5"), 3, 42, sink) == 0);
    CHECK(sink.str().find("all ") != std::string::npos);
    std::ostringstream sink2;
    CHECK(verify_all(parse_field_spec("3^2"), 5, 42, sink2) == 0);
    CHECK_THROWS_AS(verify_all(parse_field_spec("5"), 2, 42, sink), NotInvertibleExponentError);
}
