#include "keystrength/estimator.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "keystrength/errors.hpp"

namespace keystrength {

BaselineRecord::BaselineRecord(BitLength bits_, double wall_hours_, CalendarDate date_)
    : bits(bits_), wall_hours(wall_hours_), date(date_) {
    if (!(wall_hours > 0.0) || !std::isfinite(wall_hours)) {
        throw InputError("baseline wall hours must be positive and finite");
    }
}

BaselineRecord BaselineRecord::rsa512_2015() {
    return BaselineRecord(BitLength(512), 4.0, CalendarDate(2015, 1));
}

BreakEstimate::BreakEstimate(BitLength bits, CalendarDate at_date, double ln_hours)
    : bits_(bits), at_date_(at_date), ln_hours_(ln_hours) {
    if (!std::isfinite(ln_hours)) {
        throw InputError("break estimate must be finite in log scale");
    }
}

double BreakEstimate::log10_hours() const { return ln_hours_ / std::numbers::ln10; }

double BreakEstimate::hours() const {
    if (ln_hours_ > std::log(std::numeric_limits<double>::max())) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(ln_hours_);
}

double BreakEstimate::years() const {
    const double h = hours();
    if (std::isfinite(h)) {
        return h / kHoursPerYear;  // the exact published conversion
    }
    return std::exp(ln_hours_ - std::log(kHoursPerYear));  // may still fit when hours saturated
}

double BreakEstimate::log10_years() const {
    return (ln_hours_ - std::log(kHoursPerYear)) / std::numbers::ln10;
}

std::string BreakEstimate::hours_scientific(int sig_digits) const {
    return scientific_from_ln(ln_hours_, sig_digits);
}

std::string BreakEstimate::years_scientific(int sig_digits) const {
    return scientific_from_ln(ln_hours_ - std::log(kHoursPerYear), sig_digits);
}

BreakEstimate break_time(BitLength target, const CalendarDate& at,
                         const BaselineRecord& baseline, const DoublingModel& model) {
    const double ln_hours = std::log(baseline.wall_hours) +
                            ln_effort_ratio(target, baseline.bits) -
                            log2_scale_factor(model, months_between(baseline.date, at)) *
                                std::numbers::ln2;
    return BreakEstimate(target, at, ln_hours);
}

std::vector<BreakEstimate> table8_estimates(double baseline_minutes) {
    if (!(baseline_minutes > 0.0) || !std::isfinite(baseline_minutes)) {
        throw InputError("baseline minutes must be positive and finite");
    }
    const BitLength base(512);
    const CalendarDate present(2015, 1);
    std::vector<BreakEstimate> out;
    for (int bits : {768, 1024, 2048}) {
        const double ln_hours =
            std::log(baseline_minutes / 60.0) + ln_effort_ratio(BitLength(bits), base);
        out.emplace_back(BitLength(bits), present, ln_hours);
    }
    return out;
}

double ln_cumulative_work(const CalendarDate& from, const CalendarDate& to,
                          const BaselineRecord& baseline, const DoublingModel& model) {
    if (to <= from) {
        return -std::numeric_limits<double>::infinity();  // empty window: zero work
    }
    constexpr double kHoursPerMonth = kHoursPerYear / 12.0;
    const double ln_rate0 = nfs_exponent(baseline.bits.value()) - std::log(baseline.wall_hours);
    const double a0 = log2_scale_factor(model, months_between(baseline.date, from));
    const double a1 = log2_scale_factor(model, months_between(baseline.date, to));
    // integral of rate0 * 2^((tau - baseline)/period) dtau over the window,
    // tau in hours: rate0 * (hours per doubling)/ln2 * (2^a1 - 2^a0)
    const double ln_window = a1 * std::numbers::ln2 + std::log1p(-std::exp2(a0 - a1));
    return ln_rate0 + std::log(kHoursPerMonth * model.period_months() / std::numbers::ln2) +
           ln_window;
}

namespace {

void validate_query(const SecurityQuery& q) {
    if (!(q.lifespan_years >= 0.0) || !std::isfinite(q.lifespan_years)) {
        throw InputError("lifespan must be a non-negative finite year count");
    }
    if (!(q.margin > 0.0) || !std::isfinite(q.margin)) {
        throw InputError("margin must be positive and finite");
    }
}

BitLength round_up_conventional(int bits) {
    static constexpr std::array<int, 10> kConventional = {512,  768,  1024, 1536, 2048,
                                                          3072, 4096, 7680, 8192, 15360};
    for (int c : kConventional) {
        if (c >= bits) return BitLength(c);
    }
    throw HorizonError("minimum of " + std::to_string(bits) +
                       " bits exceeds the largest conventional modulus size");
}

}  // namespace

MinBitsResult min_bitlength(const SecurityQuery& q, const BaselineRecord& baseline,
                            const DoublingModel& model, bool round_to_conventional) {
    validate_query(q);
    const CalendarDate end = q.protect_from.plus_months(std::llround(q.lifespan_years * 12.0));

    // Both modes compare a quantity strictly increasing in bits against a
    // fixed threshold, so binary search applies.
    const bool end_of_life = q.mode == QueryMode::end_of_life;
    double threshold;
    if (end_of_life) {
        // break time at expiry must reach margin * lifespan (trivially met at
        // zero lifespan); summed logs keep extreme margins representable
        threshold = (q.lifespan_years == 0.0)
                        ? -std::numeric_limits<double>::infinity()
                        : std::log(q.margin) + std::log(q.lifespan_years * kHoursPerYear);
    } else {
        // the work factor must stay strictly above the attacker's cumulative work
        threshold = std::log(q.margin) + ln_cumulative_work(q.protect_from, end, baseline, model);
    }
    auto satisfied = [&](int bits) {
        if (end_of_life) {
            return break_time(BitLength(bits), end, baseline, model).ln_hours() >= threshold;
        }
        return nfs_exponent(bits) > threshold;
    };

    if (!satisfied(BitLength::kMax)) {
        throw HorizonError("horizon unsatisfiable: no bit length up to " +
                           std::to_string(BitLength::kMax) + " meets the query");
    }
    int lo = BitLength::kMin, hi = BitLength::kMax;
    while (lo < hi) {  // smallest bits with satisfied(bits)
        const int mid = lo + (hi - lo) / 2;
        if (satisfied(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    BitLength result(lo);
    if (round_to_conventional) {
        result = round_up_conventional(lo);
    }
    return MinBitsResult{result, break_time(result, end, baseline, model)};
}

std::string to_string(AlgorithmFamily f) {
    switch (f) {
        case AlgorithmFamily::rsa: return "RSA";
        case AlgorithmFamily::dh_dsa_elgamal: return "DH/DSA/Elgamal";
        case AlgorithmFamily::ecc: return "ECC";
        case AlgorithmFamily::symmetric: return "symmetric";
    }
    return "?";
}

AlgorithmFamily parse_family(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "rsa") return AlgorithmFamily::rsa;
    if (lower == "dh" || lower == "dsa" || lower == "elgamal" || lower == "dh/dsa/elgamal" ||
        lower == "dh-dsa-elgamal") {
        return AlgorithmFamily::dh_dsa_elgamal;
    }
    if (lower == "ecc" || lower == "ecdh" || lower == "ecdsa") return AlgorithmFamily::ecc;
    if (lower == "symmetric" || lower == "aes" || lower == "3des") {
        return AlgorithmFamily::symmetric;
    }
    throw InputError("unknown algorithm family '" + std::string(text) + "'");
}

namespace {

// Rows: RSA, DH/DSA/Elgamal, ECC, symmetric; columns: 80/128/192/256-bit levels.
constexpr std::array<std::array<int, 4>, 4> kLevelTable = {{
    {1024, 3072, 7680, 15360},
    {1024, 3072, 7680, 15360},
    {160, 256, 384, 512},
    {80, 128, 192, 256},
}};

int level_index(int level_bits) {
    for (size_t i = 0; i < 4; ++i) {
        if (kSecurityLevels[i] == level_bits) return static_cast<int>(i);
    }
    throw InputError("unknown security level " + std::to_string(level_bits) +
                     " (expected 80, 128, 192 or 256)");
}

}  // namespace

BitLength security_level_lookup(AlgorithmFamily family, int level_bits) {
    return BitLength(kLevelTable[static_cast<size_t>(family)][level_index(level_bits)]);
}

int security_level_inverse(AlgorithmFamily family, BitLength key_bits) {
    const auto& row = kLevelTable[static_cast<size_t>(family)];
    int best = 0;
    for (size_t i = 0; i < 4; ++i) {
        if (key_bits.value() >= row[i]) best = kSecurityLevels[i];
    }
    return best;
}

BitLength policy_recommendation(int use_until_year) {
    if (use_until_year < CalendarDate::kMinYear || use_until_year > CalendarDate::kMaxYear) {
        throw InputError("year " + std::to_string(use_until_year) + " outside the supported range");
    }
    return BitLength(use_until_year <= 2030 ? 2048 : 3072);
}

}  // namespace keystrength
