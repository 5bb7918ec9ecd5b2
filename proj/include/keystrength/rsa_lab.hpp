#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "keystrength/effort.hpp"

namespace keystrength {

// Toy RSA key material for desk-scale experiments. Messages are residues in
// Z_n; there is no padding and no constant-time arithmetic anywhere in this
// module, by design.
struct RsaKeyPair {
    mpz_class n;  // p * q
    mpz_class e;  // public exponent
    mpz_class d;  // e^-1 mod (p-1)(q-1)
    mpz_class p;
    mpz_class q;

    mpz_class phi() const { return (p - 1) * (q - 1); }

    // Builds a key pair from two distinct primes, applying the exponent
    // rule: e = 65537 when that fits below phi and is coprime to it,
    // otherwise the smallest odd e >= 3 coprime to phi.
    static RsaKeyPair from_primes(const mpz_class& p, const mpz_class& q);
};

// Deterministic desk-scale key generation: p, q are random ceil(bits/2)-bit
// primes drawn from a stream seeded by `seed`. Accepts 8..256 bits.
RsaKeyPair keygen(BitLength bits, std::uint64_t seed);

// M^e mod n / C^d mod n. Inputs must lie in [0, n).
mpz_class encrypt(const mpz_class& n, const mpz_class& e, const mpz_class& m);
mpz_class decrypt(const mpz_class& n, const mpz_class& d, const mpz_class& c);

// Miller-Rabin: deterministic below 3.3e14 via a fixed witness set,
// 40 rounds with bases derived deterministically from n above that.
bool is_probable_prime(const mpz_class& n);

// Smallest prime factor of n >= 2; returns n itself exactly when n is prime.
mpz_class trial_division(const mpz_class& n);

// Brent-cycle Pollard rho: a nontrivial factor of composite n >= 4,
// deterministic for a given seed. Restarts with a fresh polynomial on cycle
// failure and falls back to trial division after a bounded number of
// restarts, so termination is guaranteed. Throws BreakError on prime input.
mpz_class pollard_rho(const mpz_class& n, std::uint64_t seed = 1);

// Fermat's difference-of-squares method; effective when the factors are
// close together. Same contract as pollard_rho. Never the default anywhere.
mpz_class fermat_factor(const mpz_class& n);

struct BrokenKey {
    mpz_class d;
    mpz_class p;
    mpz_class q;
};

// The public-key attack pipeline: factor n, form phi = (p-1)(q-1), invert e.
// The recovered d decrypts anything produced under (n, e). Throws BreakError
// on a prime or non-semiprime modulus, or when factoring exceeds the budget.
BrokenKey break_key(const mpz_class& n, const mpz_class& e, std::uint64_t seed = 1,
                    double budget_seconds = 30.0);

enum class FactorAlgorithm { trial_division, fermat, pollard_rho };

std::string to_string(FactorAlgorithm a);
FactorAlgorithm parse_factor_algorithm(std::string_view text);

struct BenchmarkSample {
    int bits = 0;
    int trial = 0;
    FactorAlgorithm algorithm = FactorAlgorithm::pollard_rho;
    double wall_seconds = 0.0;
    bool timeout = false;
};

// ln(median seconds) regressed against the complexity exponent shape
// nfs_exponent(bits); slope > 0 is the expected super-polynomial signature.
struct GrowthFit {
    double slope = 0.0;
    double r2 = 0.0;
};

struct BenchmarkResult {
    std::vector<BenchmarkSample> samples;
    std::vector<std::pair<int, double>> median_seconds;  // per size, timeouts excluded
    std::optional<GrowthFit> fit;  // absent with fewer than two usable sizes
};

// A deterministic random semiprime of roughly the requested width (the
// product of two ceil(bits/2)-bit primes).
mpz_class random_semiprime(BitLength bits, std::uint64_t seed);

// Times `trials_per_size` seeded semiprime factorizations per size on a
// monotonic clock. Each trial owns an independent stream derived from
// (seed, size, trial). Samples that exceed the per-trial budget are marked
// timeout and excluded from the medians and the fit.
BenchmarkResult benchmark_factoring(const std::vector<BitLength>& sizes, int trials_per_size,
                                    FactorAlgorithm algorithm, std::uint64_t seed,
                                    double per_trial_budget_seconds = 10.0);

}  // namespace keystrength
