#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "weilsum/report.hpp"
#include "weilsum/weil_spectrum.hpp"

#include "json.hpp"

namespace weilsum {

// Exact per-pair invariants of a computed spectrum: global sums
// (sum of W_u is q, sum of W_u conj(W_u) is q^2), Galois translation
// consistency, cycle structure constraints, frequency divisibility,
// value-count/rationality criteria, the four-valued classification, and the
// histogram / valuation / quadratic bounds for nondegenerate exponents.
CheckReport verify_spectrum_invariants(const WeilSpectrum& spec);
CheckReport verify_spectrum_invariants(const WeilSpectrum& spec, const TauAction& tau);

struct TheoremFlags {
    bool sums_ok = false;        // global linear and quadratic sums
    bool galois_ok = false;      // sigma(W_u) = W_{lambda u}
    bool tau_order_ok = false;   // order = (p-1)/gcd(p-1,s-1) = order of lambda
    bool frequency_ok = false;   // cycle frequencies equal, divisible by m/k
    bool cycle_ok = false;       // cycle-length bound, single cycle only over F_2
    bool value_count_ok = false; // at least 3-valued iff nondegenerate
    bool rationality_ok = false; // rational iff s = 1 (mod p-1)
    bool three_valued_ok = false;// 3-valued spectra are rational
    bool four_valued_ok = false; // 4-valued rational except q=5, s=3 (mod 4)
    bool bounds_ok = false;      // histogram / valuation / quadratic bounds

    bool all_ok() const {
        return sums_ok && galois_ok && tau_order_ok && frequency_ok && cycle_ok && value_count_ok &&
               rationality_ok && three_valued_ok && four_valued_ok && bounds_ok;
    }
};

struct SurveyRow {
    ClassificationRecord rec;
    TheoremFlags flags;
    double wall_ms = 0.0;   // diagnostic only, never written to CSV
    std::string error;      // nonempty when the pair failed outright
};

enum class OutputFormat { Csv, Json };

struct SurveyConfig {
    std::int64_t q_max = 343;
    bool include_prime_powers = true;
    bool lemma_suite = false;       // also run the identity suites for q <= 16
    std::string output_path;        // empty = caller handles output
    OutputFormat format = OutputFormat::Csv;
    int parallelism = 1;
    std::uint64_t seed = 42;
};

struct SurveySummary {
    std::int64_t pairs = 0;
    std::vector<std::string> three_valued;            // "q=8 s=3" style labels
    std::vector<std::string> four_valued_rational;
    std::vector<std::string> four_valued_irrational;  // must be exactly {q=5, s=3}
    std::string exceptional_values;                   // rendered value set of the irrational class
    std::vector<std::string> failures;
    bool ok = false;
};

struct SurveyResult {
    std::vector<SurveyRow> rows;  // ordered by (q, s), independent of scheduling
    SurveySummary summary;
};

SurveyResult survey(const SurveyConfig& config);

// CSV with the classification columns only; byte-identical across runs with
// the same config and seed.
std::string render_csv(const SurveyResult& result);
nlohmann::json render_json(const SurveyResult& result);
std::string render_summary(const SurveyResult& result);

struct SpectrumReport {
    std::string text;
    nlohmann::json json;
    bool all_checks_pass = false;
};

SpectrumReport spectrum_report(FieldHandle K, std::uint64_t s);

nlohmann::json to_json(const ClassificationRecord& rec);

// {"p": p, "coeffs": [...]} with coefficients as integers when they fit
// in 64 bits and as decimal strings otherwise.
nlohmann::json to_json(const CycInt& value);

// Runs every exact check for the pair (counting identities, group algebra
// identities, character checks, spectrum invariants), printing one line per
// check. Returns 0 when all pass, 1 otherwise.
int verify_all(FieldHandle K, std::uint64_t s, std::uint64_t seed, std::ostream& out);

}  // namespace weilsum
