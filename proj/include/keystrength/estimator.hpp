#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "keystrength/calendar.hpp"
#include "keystrength/effort.hpp"
#include "keystrength/moore.hpp"

namespace keystrength {

// The factoring run every projection is anchored to.
struct BaselineRecord {
    BitLength bits;
    double wall_hours;
    CalendarDate date;

    BaselineRecord(BitLength bits, double wall_hours, CalendarDate date);

    // The default anchor: a 512-bit modulus factored in 4 wall hours in 2015.
    static BaselineRecord rsa512_2015();
};

// Projected wall time to factor a modulus of a given size at a given date.
// ln_hours is authoritative; the linear renderings saturate to +inf for
// spans beyond double range, so use the log/scientific accessors there.
class BreakEstimate {
public:
    BreakEstimate(BitLength bits, CalendarDate at_date, double ln_hours);

    BitLength bits() const { return bits_; }
    CalendarDate at_date() const { return at_date_; }

    double ln_hours() const { return ln_hours_; }
    double log10_hours() const;
    double hours() const;
    double years() const;  // hours / 8760 exactly
    double log10_years() const;
    std::string hours_scientific(int sig_digits = 9) const;
    std::string years_scientific(int sig_digits = 9) const;

private:
    BitLength bits_;
    CalendarDate at_date_;
    double ln_hours_;
};

constexpr double kHoursPerYear = 8760.0;

// baseline.wall_hours * effort_ratio(target, baseline.bits)
//                     / scale_factor(model, months from baseline to `at`),
// carried in log domain end to end.
BreakEstimate break_time(BitLength target, const CalendarDate& at,
                         const BaselineRecord& baseline, const DoublingModel& model);

// The 1-minute-baseline hypothetical: for 768/1024/2048 bits, the time a
// machine that factors a 512-bit modulus in baseline_minutes would need,
// holding compute power fixed. Row dates carry the 2015 reference point.
std::vector<BreakEstimate> table8_estimates(double baseline_minutes);

enum class QueryMode { end_of_life, cumulative_work };

// A protection requirement: data encrypted at protect_from must survive
// lifespan_years of attack. margin scales the requirement (~1 = break time
// at least equals the remaining lifespan).
struct SecurityQuery {
    CalendarDate protect_from;
    double lifespan_years = 0.0;  // >= 0; zero is the degenerate no-protection query
    double margin = 1.0;          // > 0
    QueryMode mode = QueryMode::end_of_life;
};

struct MinBitsResult {
    BitLength bits;
    BreakEstimate evidence;  // break time at protection expiry for the chosen size
};

// Smallest bit length satisfying the query, by binary search over the
// monotone break-time predicate.
//   end_of_life: break_time at expiry must reach margin * lifespan_years.
//   cumulative_work: total attacker work integrated over the lifespan,
//     growing per the doubling model from the baseline anchor, must stay
//     below the work factor of the recommended size (scaled by margin).
// With round_to_conventional the result is bumped up to the nearest
// conventional modulus size (512 ... 15360).
// Throws HorizonError when no size up to the BitLength cap satisfies.
MinBitsResult min_bitlength(const SecurityQuery& q, const BaselineRecord& baseline,
                            const DoublingModel& model, bool round_to_conventional = false);

// ln of the cumulative attacker work (in L-units) spent over [from, to],
// with a work rate of L(baseline.bits)/baseline.wall_hours per hour at the
// baseline date, doubling per the model. Exposed for the CLI and tests.
double ln_cumulative_work(const CalendarDate& from, const CalendarDate& to,
                          const BaselineRecord& baseline, const DoublingModel& model);

enum class AlgorithmFamily { rsa, dh_dsa_elgamal, ecc, symmetric };

std::string to_string(AlgorithmFamily f);
AlgorithmFamily parse_family(std::string_view text);

inline constexpr int kSecurityLevels[] = {80, 128, 192, 256};

// Published key-size equivalence table: key bits required by a family at a
// given security level. Levels are {80, 128, 192, 256}.
BitLength security_level_lookup(AlgorithmFamily family, int level_bits);

// Highest level whose required size key_bits meets (floor semantics);
// 0 when the key is below even the 80-bit requirement.
int security_level_inverse(AlgorithmFamily family, BitLength key_bits);

// The minimum modulus size a French-agency-style policy prescribes for use
// through the given year: 2048 bits through 2030, 3072 beyond.
BitLength policy_recommendation(int use_until_year);

}  // namespace keystrength
