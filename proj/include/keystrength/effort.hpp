#pragma once

#include <compare>
#include <string>

namespace keystrength {

// Validated count of binary digits of a modulus.
class BitLength {
public:
    static constexpr int kMin = 2;
    static constexpr int kMax = 1'000'000;  // sanity cap; rejects nonsense input

    explicit BitLength(int bits);  // throws InputError outside [kMin, kMax]

    int value() const { return bits_; }

    friend auto operator<=>(const BitLength&, const BitLength&) = default;

private:
    int bits_;
};

// A factoring-effort magnitude carried as the natural log of the NFS
// work factor L[n] = exp(c (ln n)^(1/3) (ln ln n)^(2/3)), c = (64/9)^(1/3).
// Linear-scale values are rendered on demand; L(15360) and beyond overflow
// any machine float, so the log form is authoritative end to end.
class EffortValue {
public:
    explicit EffortValue(double ln_effort);  // must be finite and > 0

    double ln() const { return ln_effort_; }
    double log2() const;
    double log10() const;

    // exp(ln); +inf when the linear value does not fit a double.
    double linear() const;

    // "1.75650806E+19"-style rendering computed from the log, safe at any magnitude.
    std::string scientific(int sig_digits = 9) const;

    friend auto operator<=>(const EffortValue&, const EffortValue&) = default;

private:
    double ln_effort_;
};

// The complexity exponent c * (bits ln2)^(1/3) * (ln(bits ln2))^(2/3) with
// c computed at machine precision. The modulus is modeled as exactly 2^bits.
double nfs_exponent(double bits);

EffortValue l_effort(BitLength bl);

// ln(L(target) / L(baseline)); always finite.
double ln_effort_ratio(BitLength target, BitLength baseline);

// exp of the above; +inf for spans whose ratio exceeds double range.
double effort_ratio(BitLength target, BitLength baseline);

// The b such that L[n] = 2^b.
double security_bits(BitLength bl);

// Scientific rendering of exp(ln_value) without ever forming the linear value.
std::string scientific_from_ln(double ln_value, int sig_digits = 9);

}  // namespace keystrength
