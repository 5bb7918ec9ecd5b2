#pragma once

#include <vector>

#include "keystrength/calendar.hpp"

namespace keystrength {

// Signed month count from a to b; negative when b precedes a.
double months_between(const CalendarDate& a, const CalendarDate& b);

// Compute-power growth law: capacity doubles every period_months.
class DoublingModel {
public:
    explicit DoublingModel(double period_months);  // throws unless finite and > 0

    double period_months() const { return period_months_; }

    // The conventional 18-month doubling, adopted as the default.
    static DoublingModel moore_18m() { return DoublingModel(18.0); }

    // Period calibrated from the pair of public 512-bit factoring runs
    // (5040 h in 1999 vs 4 h sixteen years later): 192 / log2(1260) months.
    static DoublingModel calibrated_rsa512();

private:
    double period_months_;
};

// 2^(elapsed_months / period); use the log2 form for large exponents.
double scale_factor(const DoublingModel& model, double elapsed_months);
double log2_scale_factor(const DoublingModel& model, double elapsed_months);

// Period implied by two timings of the same computation elapsed_months apart.
// Throws CalibrationError when the later run is not faster.
DoublingModel calibrate_doubling(double hours_early, double hours_late, double elapsed_months);

// hours_at_ref shrunk by the growth accumulated over elapsed_months.
double project_hours(double hours_at_ref, const DoublingModel& model, double elapsed_months);

struct ScheduleRow {
    double year;     // fractional calendar year
    double minutes;  // exact halving of the starting minutes
};

// The literal printed halving schedule: row 0 is the starting point, and row
// k (k >= 1) sits at start + 1.5 * 2^(k-1) years with start_minutes / 2^k.
// Note this doubles the year *offsets* rather than halving per fixed period;
// it intentionally reproduces the published table, not the exponential model.
std::vector<ScheduleRow> table7_schedule(double start_minutes, const CalendarDate& start, int rows);

}  // namespace keystrength
