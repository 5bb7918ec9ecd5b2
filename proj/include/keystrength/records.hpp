#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keystrength/calendar.hpp"
#include "keystrength/effort.hpp"

namespace keystrength {

enum class FactoringAlgorithm { mpqs, nfs, other };

std::string to_string(FactoringAlgorithm a);
FactoringAlgorithm parse_algorithm(std::string_view text);

// One historical factoring event. The published tables are sparse, so the
// numeric fields are individually optional; at least one of bits /
// decimal_digits must be present and, when both are, they must agree within
// the |bits - ceil(digits * log2 10)| <= 4 consistency window.
struct FactoringRecord {
    std::string name;
    std::optional<BitLength> bits;
    std::optional<int> decimal_digits;
    CalendarDate date_factored;
    std::optional<double> wall_hours;
    std::optional<double> mips_years;
    FactoringAlgorithm algorithm = FactoringAlgorithm::other;

    // bits when present, otherwise derived from decimal_digits.
    BitLength effective_bits() const;

    void validate() const;  // throws ValidationError naming the record

    bool operator==(const FactoringRecord&) const = default;
};

// ceil(digits * log2 10) — an upper bound on the bit length of a
// digits-long decimal number.
BitLength digits_to_bits(int decimal_digits);

// Parses the CSV record format (header
// name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm;
// empty field = absent; date YYYY or YYYY-MM; '#' lines ignored).
// Returns validated records sorted by date. Throws ParseError naming the
// offending line or ValidationError naming the offending record.
std::vector<FactoringRecord> load_records(std::string_view csv_content);
std::vector<FactoringRecord> load_records_file(const std::string& path);

// Canonical CSV rendering; load_records(serialize_records(r)) == r.
std::string serialize_records(const std::vector<FactoringRecord>& records);

// The dataset shipped with the tool: the published MIPS-years and wall-hours
// tables for C116 through RSA-768, 1990-2015.
const std::string& bundled_records_csv();
std::vector<FactoringRecord> bundled_records();

// Exponential trend bits(t) = a * e^(b (t - t0)), t in fractional years,
// fitted by least squares on ln(bits).
struct TrendFit {
    double a = 0.0;
    double b = 0.0;
    double t0 = 0.0;  // earliest record's fractional year
    std::vector<double> residuals;  // log space, per record in date order
    double r_squared = 0.0;

    double predict_bits(double year_fraction) const;
};

TrendFit fit_trend(const std::vector<FactoringRecord>& records);

// source.mips_years scaled by the work-factor ratio between the two sizes.
// This is the model's extrapolation; the figures published alongside the
// historical records came from the original reports and are kept separate
// (see historical_extrapolations) rather than forced to match.
double extrapolate_effort(const FactoringRecord& source, BitLength target_bits);

struct ExtrapolationAnnotation {
    std::string target;  // record the projection was made for
    std::string source;  // record it was extrapolated from
    double mips_years;
};

// The two published RSA-155 effort projections.
std::span<const ExtrapolationAnnotation> historical_extrapolations();

}  // namespace keystrength
