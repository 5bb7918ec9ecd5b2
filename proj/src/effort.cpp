#include "keystrength/effort.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "keystrength/errors.hpp"

namespace keystrength {

BitLength::BitLength(int bits) : bits_(bits) {
    if (bits < kMin || bits > kMax) {
        throw InputError("bit length must be in [" + std::to_string(kMin) + ", " +
                         std::to_string(kMax) + "], got " + std::to_string(bits));
    }
}

EffortValue::EffortValue(double ln_effort) : ln_effort_(ln_effort) {
    if (!std::isfinite(ln_effort) || ln_effort <= 0.0) {
        throw InputError("effort must be finite and positive in log scale");
    }
}

double EffortValue::log2() const { return ln_effort_ / std::numbers::ln2; }

double EffortValue::log10() const { return ln_effort_ / std::numbers::ln10; }

double EffortValue::linear() const {
    if (ln_effort_ > std::log(std::numeric_limits<double>::max())) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(ln_effort_);
}

std::string EffortValue::scientific(int sig_digits) const {
    return scientific_from_ln(ln_effort_, sig_digits);
}

double nfs_exponent(double bits) {
    const double ln_n = bits * std::numbers::ln2;
    static const double c = std::cbrt(64.0 / 9.0);
    return c * std::cbrt(ln_n) * std::pow(std::log(ln_n), 2.0 / 3.0);
}

EffortValue l_effort(BitLength bl) { return EffortValue(nfs_exponent(bl.value())); }

double ln_effort_ratio(BitLength target, BitLength baseline) {
    return nfs_exponent(target.value()) - nfs_exponent(baseline.value());
}

double effort_ratio(BitLength target, BitLength baseline) {
    return std::exp(ln_effort_ratio(target, baseline));
}

double security_bits(BitLength bl) { return nfs_exponent(bl.value()) / std::numbers::ln2; }

std::string scientific_from_ln(double ln_value, int sig_digits) {
    if (sig_digits < 1) sig_digits = 1;
    const double l10 = ln_value / std::numbers::ln10;
    double exp10 = std::floor(l10);
    double mantissa = std::pow(10.0, l10 - exp10);
    char mant[64];
    std::snprintf(mant, sizeof mant, "%.*f", sig_digits - 1, mantissa);
    if (std::atof(mant) >= 10.0) {  // rounding carried into a new decade
        exp10 += 1.0;
        std::snprintf(mant, sizeof mant, "%.*f", sig_digits - 1, mantissa / 10.0);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%sE%+03d", mant, static_cast<int>(exp10));
    return out;
}

}  // namespace keystrength
