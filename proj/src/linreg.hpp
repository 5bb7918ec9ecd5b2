#pragma once

#include <cmath>
#include <span>

namespace keystrength::detail {

struct LinReg {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool ok = false;  // false when the x values carry no spread
};

// Ordinary least squares of y against x; caller guarantees equal sizes >= 2.
inline LinReg linear_fit(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinReg out;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return out;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (size_t i = 0; i < x.size(); ++i) {
        const double resid = y[i] - (out.intercept + out.slope * x[i]);
        ss_res += resid * resid;
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    out.r2 = (ss_tot == 0.0) ? 1.0 : std::fmax(0.0, std::fmin(1.0, 1.0 - ss_res / ss_tot));
    out.ok = true;
    return out;
}

}  // namespace keystrength::detail
