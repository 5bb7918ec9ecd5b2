#include "keystrength/moore.hpp"

#include <cmath>

#include "keystrength/errors.hpp"

namespace keystrength {

double months_between(const CalendarDate& a, const CalendarDate& b) {
    return static_cast<double>((b.year() - a.year()) * 12 + (b.month() - a.month()));
}

DoublingModel::DoublingModel(double period_months) : period_months_(period_months) {
    if (!std::isfinite(period_months) || period_months <= 0.0) {
        throw InputError("doubling period must be finite and positive");
    }
}

DoublingModel DoublingModel::calibrated_rsa512() {
    return calibrate_doubling(5040.0, 4.0, 192.0);
}

double log2_scale_factor(const DoublingModel& model, double elapsed_months) {
    return elapsed_months / model.period_months();
}

double scale_factor(const DoublingModel& model, double elapsed_months) {
    return std::exp2(log2_scale_factor(model, elapsed_months));
}

DoublingModel calibrate_doubling(double hours_early, double hours_late, double elapsed_months) {
    if (!(hours_early > 0.0) || !(hours_late > 0.0) || !(elapsed_months > 0.0) ||
        !std::isfinite(hours_early) || !std::isfinite(hours_late) || !std::isfinite(elapsed_months)) {
        throw InputError("calibration inputs must be positive and finite");
    }
    if (hours_late >= hours_early) {
        throw CalibrationError("no speedup observed: later run took " +
                               std::to_string(hours_late) + " h vs " +
                               std::to_string(hours_early) + " h earlier");
    }
    return DoublingModel(elapsed_months / std::log2(hours_early / hours_late));
}

double project_hours(double hours_at_ref, const DoublingModel& model, double elapsed_months) {
    if (!(hours_at_ref > 0.0) || !std::isfinite(hours_at_ref)) {
        throw InputError("reference hours must be positive and finite");
    }
    return hours_at_ref / scale_factor(model, elapsed_months);
}

std::vector<ScheduleRow> table7_schedule(double start_minutes, const CalendarDate& start, int rows) {
    if (!(start_minutes > 0.0) || !std::isfinite(start_minutes)) {
        throw InputError("starting minutes must be positive and finite");
    }
    if (rows < 1) {
        throw InputError("schedule needs at least one row");
    }
    std::vector<ScheduleRow> out;
    out.reserve(static_cast<size_t>(rows));
    const double y0 = start.year_fraction();
    out.push_back({y0, start_minutes});
    for (int k = 1; k < rows; ++k) {
        // ldexp keeps the halvings and year offsets bit-exact
        out.push_back({y0 + std::ldexp(1.5, k - 1), std::ldexp(start_minutes, -k)});
    }
    return out;
}

}  // namespace keystrength
