#include "keystrength/rsa_lab.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "keystrength/errors.hpp"
#include "linreg.hpp"

namespace keystrength {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point at;
    bool expired() const { return Clock::now() >= at; }
};

// Internal control-flow signal; converted to timeout markers or BreakError
// at the public boundary.
struct BudgetExceeded {};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    return splitmix64(h ^ b);
}

std::uint64_t low_bits_of(const mpz_class& n) {
    return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t())) ^
           (static_cast<std::uint64_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) << 48);
}

// Deterministic arbitrary-precision random stream over a splitmix64 core.
// Cheap to construct, platform-independent, and reproducible from the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_mix(state_);
    }

    // nbits uniform random bits
    mpz_class bits(int nbits) {
        mpz_class out = 0;
        int filled = 0;
        while (filled < nbits) {
            out <<= 64;
            out += static_cast<unsigned long>(next_u64());
            filled += 64;
        }
        out >>= (filled - nbits);
        return out;
    }

    // uniform in [0, bound) by rejection
    mpz_class below(const mpz_class& bound) {
        const int nbits = static_cast<int>(mpz_sizeinbase(bound.get_mpz_t(), 2));
        while (true) {
            mpz_class v = bits(nbits);
            if (v < bound) return v;
        }
    }

private:
    static std::uint64_t splitmix64_mix(std::uint64_t x) {
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
};

constexpr std::array<int, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Witness set proven deterministic for everything below this bound.
const mpz_class& deterministic_bound() {
    static const mpz_class bound("330000000000000");  // 3.3e14
    return bound;
}

bool miller_rabin_witness(const mpz_class& n, const mpz_class& a, const mpz_class& d,
                          unsigned long r) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const mpz_class n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

mpz_class trial_division_impl(const mpz_class& n, const Deadline* deadline) {
    if (n < 2) {
        throw InputError("trial division needs n >= 2");
    }
    if (mpz_even_p(n.get_mpz_t())) return 2;
    if (n % 3 == 0) return 3;
    mpz_class f = 5;
    long since_check = 0;
    while (f * f <= n) {
        if (n % f == 0) return f;
        if (n % (f + 2) == 0) return f + 2;
        f += 6;
        if (deadline && ++since_check >= 4096) {
            since_check = 0;
            if (deadline->expired()) throw BudgetExceeded{};
        }
    }
    return n;  // prime
}

// One Brent cycle-detection attempt with polynomial x^2 + c; 0 on failure.
mpz_class rho_brent_attempt(const mpz_class& n, Rng& rng, long long max_steps,
                            const Deadline* deadline) {
    const mpz_class c = rng.below(n - 3) + 1;  // [1, n-3]; avoids the degenerate 0 and n-2
    mpz_class y = rng.below(n - 3) + 1;
    mpz_class x, ys, diff;
    mpz_class g = 1, q = 1;
    long long r = 1;
    long long steps = 0;
    const long long batch = 128;

    while (g == 1 && steps < max_steps) {
        x = y;
        for (long long i = 0; i < r; ++i) y = (y * y + c) % n;
        long long k = 0;
        while (k < r && g == 1) {
            ys = y;
            const long long lim = std::min(batch, r - k);
            for (long long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                diff = x - y;
                q = q * abs(diff) % n;
            }
            g = gcd(q, n);
            k += lim;
            steps += lim;
            if (deadline && deadline->expired()) throw BudgetExceeded{};
        }
        r *= 2;
    }
    if (g == n) {
        // gcd batched past the factor; retrace one step at a time
        long long back = 0;
        do {
            ys = (ys * ys + c) % n;
            diff = x - ys;
            g = gcd(abs(diff), n);
            if (deadline && (++back & 0xFFF) == 0 && deadline->expired()) throw BudgetExceeded{};
        } while (g == 1 && ++back < max_steps);
    }
    if (g == 1 || g == n) return 0;
    return g;
}

mpz_class pollard_rho_impl(const mpz_class& n, std::uint64_t seed, const Deadline* deadline) {
    if (n < 4) {
        throw InputError("pollard rho needs a composite n >= 4");
    }
    if (mpz_even_p(n.get_mpz_t())) return 2;
    if (is_probable_prime(n)) {
        throw BreakError("no nontrivial factor: " + n.get_str() + " is prime");
    }
    mpz_class root4;
    mpz_root(root4.get_mpz_t(), n.get_mpz_t(), 4);
    // expected cycle length is O(n^(1/4)); allow a generous multiple per attempt
    const long long max_steps =
        8 * (root4.fits_slong_p() ? static_cast<long long>(root4.get_si()) : (1LL << 40)) + 4096;

    constexpr int kMaxRestarts = 16;
    for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt), low_bits_of(n)));
        const mpz_class f = rho_brent_attempt(n, rng, max_steps, deadline);
        if (f != 0) return f;
    }
    return trial_division_impl(n, deadline);  // guaranteed-termination fallback
}

mpz_class fermat_factor_impl(const mpz_class& n, const Deadline* deadline) {
    if (n < 4) {
        throw InputError("fermat factoring needs a composite n >= 4");
    }
    if (mpz_even_p(n.get_mpz_t())) return 2;
    if (is_probable_prime(n)) {
        throw BreakError("no nontrivial factor: " + n.get_str() + " is prime");
    }
    mpz_class a;
    mpz_sqrt(a.get_mpz_t(), n.get_mpz_t());
    if (a * a < n) ++a;
    mpz_class b2, b;
    // effective only near a balanced split; cap and fall back rather than walk forever
    for (long long step = 0; step < (1LL << 22); ++step) {
        b2 = a * a - n;
        if (mpz_perfect_square_p(b2.get_mpz_t())) {
            mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
            if (a - b > 1) return a - b;
        }
        ++a;
        if (deadline && (step & 0xFFF) == 0 && deadline->expired()) throw BudgetExceeded{};
    }
    return trial_division_impl(n, deadline);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    for (int p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    mpz_class d = n - 1;
    unsigned long r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++r;
    }
    if (n < deterministic_bound()) {
        for (int a : {2, 3, 5, 7, 11, 13, 17}) {
            if (!miller_rabin_witness(n, a, d, r)) return false;
        }
        return true;
    }
    // 40 rounds with bases drawn deterministically from n itself
    Rng rng(mix_seed(0x8BADF00Dull, low_bits_of(n)));
    const mpz_class span = n - 3;
    for (int round = 0; round < 40; ++round) {
        const mpz_class a = rng.below(span) + 2;  // [2, n-2]
        if (!miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

mpz_class trial_division(const mpz_class& n) { return trial_division_impl(n, nullptr); }

mpz_class pollard_rho(const mpz_class& n, std::uint64_t seed) {
    return pollard_rho_impl(n, seed, nullptr);
}

mpz_class fermat_factor(const mpz_class& n) { return fermat_factor_impl(n, nullptr); }

RsaKeyPair RsaKeyPair::from_primes(const mpz_class& p_in, const mpz_class& q_in) {
    if (p_in == q_in) {
        throw InputError("the two primes must be distinct");
    }
    if (!is_probable_prime(p_in) || !is_probable_prime(q_in)) {
        throw InputError("both factors must be prime");
    }
    const mpz_class p = std::min(p_in, q_in);
    const mpz_class q = std::max(p_in, q_in);
    const mpz_class phi = (p - 1) * (q - 1);

    // e = 65537 when it fits below phi and is coprime to it, else the
    // smallest odd candidate from 3 up
    mpz_class e = 65537;
    if (!(e < phi && gcd(e, phi) == 1)) {
        e = 3;
        while (e < phi && gcd(e, phi) != 1) e += 2;
        if (e >= phi) {
            throw InputError("no valid public exponent exists below phi");
        }
    }
    mpz_class d;
    mpz_invert(d.get_mpz_t(), e.get_mpz_t(), phi.get_mpz_t());  // coprime by construction
    return RsaKeyPair{p * q, e, d, p, q};
}

RsaKeyPair keygen(BitLength bits, std::uint64_t seed) {
    if (bits.value() < 8 || bits.value() > 256) {
        throw InputError("keygen accepts 8..256 bits, got " + std::to_string(bits.value()));
    }
    const int half = (bits.value() + 1) / 2;
    Rng rng(mix_seed(seed, 0x6B6579u, static_cast<std::uint64_t>(bits.value())));
    const auto draw_prime = [&] {
        while (true) {
            mpz_class cand = rng.bits(half);
            mpz_setbit(cand.get_mpz_t(), static_cast<mp_bitcnt_t>(half - 1));
            mpz_setbit(cand.get_mpz_t(), 0);
            if (is_probable_prime(cand)) return cand;
        }
    };
    const mpz_class p = draw_prime();
    mpz_class q = draw_prime();
    while (q == p) q = draw_prime();
    return RsaKeyPair::from_primes(p, q);
}

mpz_class encrypt(const mpz_class& n, const mpz_class& e, const mpz_class& m) {
    if (n < 2 || e < 1) {
        throw InputError("invalid public key");
    }
    if (m < 0 || m >= n) {
        throw InputError("message must lie in [0, n)");
    }
    mpz_class c;
    mpz_powm(c.get_mpz_t(), m.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    return c;
}

mpz_class decrypt(const mpz_class& n, const mpz_class& d, const mpz_class& c) {
    if (n < 2 || d < 1) {
        throw InputError("invalid private key");
    }
    if (c < 0 || c >= n) {
        throw InputError("ciphertext must lie in [0, n)");
    }
    mpz_class m;
    mpz_powm(m.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    return m;
}

BrokenKey break_key(const mpz_class& n, const mpz_class& e, std::uint64_t seed,
                    double budget_seconds) {
    if (n < 4) {
        throw BreakError("modulus too small to be a semiprime");
    }
    if (e < 1) {
        throw InputError("invalid public exponent");
    }
    const Deadline deadline{Clock::now() +
                            std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(budget_seconds))};
    mpz_class f;
    try {
        f = pollard_rho_impl(n, seed, &deadline);
    } catch (const BudgetExceeded&) {
        throw BreakError("factoring exceeded the work budget");
    }
    mpz_class p = f;
    mpz_class q = n / f;
    if (p > q) std::swap(p, q);
    if (p == q || !is_probable_prime(p) || !is_probable_prime(q)) {
        throw BreakError("modulus is not a product of two distinct primes");
    }
    const mpz_class phi = (p - 1) * (q - 1);
    mpz_class d;
    if (mpz_invert(d.get_mpz_t(), e.get_mpz_t(), phi.get_mpz_t()) == 0) {
        throw BreakError("public exponent is not invertible modulo phi");
    }
    return BrokenKey{d, p, q};
}

std::string to_string(FactorAlgorithm a) {
    switch (a) {
        case FactorAlgorithm::trial_division: return "trial_division";
        case FactorAlgorithm::fermat: return "fermat";
        case FactorAlgorithm::pollard_rho: return "pollard_rho";
    }
    return "?";
}

FactorAlgorithm parse_factor_algorithm(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "trial_division" || lower == "trial") return FactorAlgorithm::trial_division;
    if (lower == "fermat") return FactorAlgorithm::fermat;
    if (lower == "pollard_rho" || lower == "rho") return FactorAlgorithm::pollard_rho;
    throw InputError("unknown factoring algorithm '" + std::string(text) + "'");
}

mpz_class random_semiprime(BitLength bits, std::uint64_t seed) {
    if (bits.value() < 6) {
        throw InputError("semiprime generation needs at least 6 bits");
    }
    const int half = (bits.value() + 1) / 2;
    Rng rng(mix_seed(seed, 0x5E311, static_cast<std::uint64_t>(bits.value())));
    const auto draw_prime = [&] {
        while (true) {
            mpz_class cand = rng.bits(half);
            mpz_setbit(cand.get_mpz_t(), static_cast<mp_bitcnt_t>(half - 1));
            mpz_setbit(cand.get_mpz_t(), 0);
            if (is_probable_prime(cand)) return cand;
        }
    };
    const mpz_class p = draw_prime();
    mpz_class q = draw_prime();
    while (q == p) q = draw_prime();
    return p * q;
}

BenchmarkResult benchmark_factoring(const std::vector<BitLength>& sizes, int trials_per_size,
                                    FactorAlgorithm algorithm, std::uint64_t seed,
                                    double per_trial_budget_seconds) {
    if (sizes.empty()) {
        throw InputError("benchmark needs at least one size");
    }
    if (trials_per_size < 1) {
        throw InputError("benchmark needs at least one trial per size");
    }
    if (!(per_trial_budget_seconds > 0.0)) {
        throw InputError("per-trial budget must be positive");
    }
    for (const auto& b : sizes) {
        if (b.value() > 512) {
            throw InputError("benchmark sizes are capped at 512 bits");
        }
    }

    BenchmarkResult result;
    for (const auto& size : sizes) {
        std::vector<double> times;
        for (int trial = 0; trial < trials_per_size; ++trial) {
            const std::uint64_t trial_seed =
                mix_seed(seed, static_cast<std::uint64_t>(size.value()),
                         static_cast<std::uint64_t>(trial));
            const mpz_class n = random_semiprime(size, trial_seed);
            const Deadline deadline{Clock::now() +
                                    std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double>(per_trial_budget_seconds))};
            const auto t0 = Clock::now();
            bool timed_out = false;
            try {
                mpz_class f;
                switch (algorithm) {
                    case FactorAlgorithm::trial_division:
                        f = trial_division_impl(n, &deadline);
                        break;
                    case FactorAlgorithm::fermat:
                        f = fermat_factor_impl(n, &deadline);
                        break;
                    case FactorAlgorithm::pollard_rho:
                        f = pollard_rho_impl(n, trial_seed, &deadline);
                        break;
                }
                if (f <= 1 || f >= n || n % f != 0) {
                    throw BreakError("factoring returned a non-divisor");  // unreachable
                }
            } catch (const BudgetExceeded&) {
                timed_out = true;
            }
            const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
            result.samples.push_back({size.value(), trial, algorithm, secs, timed_out});
            if (!timed_out) times.push_back(secs);
        }
        if (!times.empty()) {
            result.median_seconds.emplace_back(size.value(), median_of(std::move(times)));
        }
    }

    if (result.median_seconds.size() >= 2) {
        std::vector<double> xs, ys;
        for (const auto& [bits, med] : result.median_seconds) {
            xs.push_back(nfs_exponent(bits));
            ys.push_back(std::log(std::max(med, 1e-9)));  // floor at clock resolution
        }
        const auto fit = detail::linear_fit(xs, ys);
        if (fit.ok) {
            result.fit = GrowthFit{fit.slope, fit.r2};
        }
    }
    return result;
}

}  // namespace keystrength
