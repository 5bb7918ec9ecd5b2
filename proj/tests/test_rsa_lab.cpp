#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "keystrength/errors.hpp"
#include "keystrength/rsa_lab.hpp"

using namespace keystrength;

TEST_CASE("key construction from known primes") {
    // hand-worked example: p=11, q=13, phi=120; 65537 exceeds phi, 3 and 5
    // share factors with 120, so e=7 and d=103 (7*103 = 721 = 6*120 + 1)
    const auto key = RsaKeyPair::from_primes(11, 13);
    CHECK(key.n == 143);
    CHECK(key.phi() == 120);
    CHECK(key.e == 7);
    CHECK(key.d == 103);
    CHECK(key.p == 11);
    CHECK(key.q == 13);
    CHECK(key.e * key.d % key.phi() == 1);

    CHECK_THROWS_AS(RsaKeyPair::from_primes(11, 11), InputError);
    CHECK_THROWS_AS(RsaKeyPair::from_primes(11, 15), InputError);  // 15 not prime
}

TEST_CASE("keygen is deterministic and well-formed") {
    const auto a = keygen(BitLength(32), 42);
    const auto b = keygen(BitLength(32), 42);
    CHECK(a.n == b.n);
    CHECK(a.e == b.e);
    CHECK(a.d == b.d);
    CHECK(a.p == b.p);
    CHECK(a.q == b.q);

    CHECK(a.p != a.q);
    CHECK(a.n == a.p * a.q);
    CHECK(is_probable_prime(a.p));
    CHECK(is_probable_prime(a.q));
    CHECK(gcd(a.e, a.phi()) == 1);
    CHECK(a.e * a.d % a.phi() == 1);
    // even request: n comes out at the requested width or one bit short
    const size_t width = mpz_sizeinbase(a.n.get_mpz_t(), 2);
    CHECK((width == 32 || width == 31));

    const auto c = keygen(BitLength(32), 43);
    CHECK(a.n != c.n);  // different stream
}

TEST_CASE("an 8-bit request always lands on 143") {
    // 11 and 13 are the only 4-bit primes, so every seed converges
    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        const auto key = keygen(BitLength(8), seed);
        CHECK(key.n == 143);
        CHECK(key.e == 7);
        CHECK(key.d == 103);
    }
}

TEST_CASE("keygen rejects out-of-range sizes") {
    CHECK_THROWS_AS(keygen(BitLength(7), 1), InputError);
    CHECK_THROWS_AS(keygen(BitLength(300), 1), InputError);
}

TEST_CASE("encryption fixed points and the hand-worked example") {
    const auto key = RsaKeyPair::from_primes(11, 13);
    CHECK(encrypt(key.n, key.e, 0) == 0);
    CHECK(encrypt(key.n, key.e, 1) == 1);
    CHECK(encrypt(key.n, key.e, 5) == 47);  // 5^7 = 78125 = 546*143 + 47
    CHECK(decrypt(key.n, key.d, 47) == 5);
    CHECK(decrypt(key.n, key.d, 0) == 0);

    CHECK_THROWS_AS(encrypt(key.n, key.e, 143), InputError);
    CHECK_THROWS_AS(encrypt(key.n, key.e, -1), InputError);
    CHECK_THROWS_AS(decrypt(key.n, key.d, 143), InputError);
    CHECK_THROWS_AS(decrypt(key.n, key.d, -1), InputError);
}

TEST_CASE("round trip is exhaustive below 10^4") {
    const auto key = RsaKeyPair::from_primes(61, 67);  // n = 4087
    for (mpz_class m = 0; m < key.n; ++m) {
        REQUIRE(decrypt(key.n, key.d, encrypt(key.n, key.e, m)) == m);
    }
}

TEST_CASE("primality testing") {
    CHECK_FALSE(is_probable_prime(0));
    CHECK_FALSE(is_probable_prime(1));
    CHECK(is_probable_prime(2));
    CHECK(is_probable_prime(3));
    CHECK_FALSE(is_probable_prime(4));
    CHECK(is_probable_prime(97));
    CHECK_FALSE(is_probable_prime(561));    // Carmichael
    CHECK_FALSE(is_probable_prime(341));    // 2-pseudoprime
    CHECK(is_probable_prime(89681));
    CHECK(is_probable_prime(96079));
    CHECK(is_probable_prime(mpz_class("2305843009213693951")));   // 2^61 - 1, above the
    CHECK_FALSE(is_probable_prime(mpz_class("147573952589676412927")));  // deterministic bound
}

TEST_CASE("trial division") {
    CHECK(trial_division(4) == 2);
    CHECK(trial_division(2) == 2);
    CHECK(trial_division(3) == 3);
    CHECK(trial_division(97) == 97);  // prime comes back unchanged
    CHECK(trial_division(999983) == 999983);
    CHECK(trial_division(15) == 3);
    CHECK(trial_division(1024) == 2);
    CHECK_THROWS_AS(trial_division(1), InputError);

    // Jevons' 1874 challenge number
    const mpz_class jevons("8616460799");
    const mpz_class f = trial_division(jevons);
    CHECK(f == 89681);
    CHECK(f * (jevons / f) == jevons);
    CHECK(is_probable_prime(f));
    CHECK(is_probable_prime(jevons / f));
}

TEST_CASE("pollard rho") {
    const mpz_class f143 = pollard_rho(143, 1);
    CHECK((f143 == 11 || f143 == 13));
    CHECK(f143 * (143 / f143) == 143);

    const mpz_class jevons("8616460799");
    const mpz_class fj = pollard_rho(jevons, 1);
    CHECK((fj == 89681 || fj == 96079));
    CHECK(fj * (jevons / fj) == jevons);

    CHECK(pollard_rho(1000006, 1) == 2);  // preliminary factor-of-2 check
    const mpz_class fsq = pollard_rho(1018081, 1);  // 1009^2
    CHECK(fsq == 1009);

    CHECK(pollard_rho(143, 7) == pollard_rho(143, 7));  // seed-deterministic

    CHECK_THROWS_AS(pollard_rho(97, 1), BreakError);  // prime input has no factor
    CHECK_THROWS_AS(pollard_rho(3, 1), InputError);

    // a 64-bit semiprime is desk-scale work
    const mpz_class n64 = random_semiprime(BitLength(64), 5);
    const mpz_class f64 = pollard_rho(n64, 5);
    CHECK(f64 > 1);
    CHECK(f64 < n64);
    CHECK(n64 % f64 == 0);
}

TEST_CASE("fermat factoring") {
    const mpz_class f = fermat_factor(143);
    CHECK((f == 11 || f == 13));
    CHECK(fermat_factor(1000006) == 2);
    CHECK_THROWS_AS(fermat_factor(97), BreakError);
    CHECK_THROWS_AS(fermat_factor(2), InputError);
    const mpz_class n48 = random_semiprime(BitLength(48), 9);
    const mpz_class f48 = fermat_factor(n48);  // balanced split, so fermat is quick
    CHECK(n48 % f48 == 0);
    CHECK(f48 > 1);
    CHECK(f48 < n48);
}

TEST_CASE("key breaking pipeline") {
    const auto broken = break_key(143, 7);
    CHECK(broken.d == 103);
    CHECK(broken.p == 11);
    CHECK(broken.q == 13);

    CHECK_THROWS_AS(break_key(97, 7), BreakError);   // prime modulus
    CHECK_THROWS_AS(break_key(30, 7), BreakError);   // three prime factors
    CHECK_THROWS_AS(break_key(121, 7), BreakError);  // prime square
    CHECK_THROWS_AS(break_key(143, 0), InputError);

    // break then decrypt recovers plaintexts under a fresh key
    const auto key = keygen(BitLength(48), 77);
    const auto recovered = break_key(key.n, key.e, 3);
    CHECK(recovered.p == key.p);
    CHECK(recovered.q == key.q);
    CHECK(key.e * recovered.d % key.phi() == 1);
    for (mpz_class m : {mpz_class(2), mpz_class(12345), mpz_class(key.n - 1)}) {
        CHECK(decrypt(key.n, recovered.d, encrypt(key.n, key.e, m)) == m);
    }
}

TEST_CASE("random semiprimes") {
    const auto a = random_semiprime(BitLength(40), 4);
    const auto b = random_semiprime(BitLength(40), 4);
    CHECK(a == b);  // deterministic
    CHECK_FALSE(is_probable_prime(a));
    const size_t width = mpz_sizeinbase(a.get_mpz_t(), 2);
    CHECK((width == 40 || width == 39));
    CHECK(random_semiprime(BitLength(40), 5) != a);
    CHECK_THROWS_AS(random_semiprime(BitLength(4), 1), InputError);
}

TEST_CASE("benchmark harness") {
    const std::vector<BitLength> sizes{BitLength(16), BitLength(24), BitLength(32)};
    const auto res = benchmark_factoring(sizes, 3, FactorAlgorithm::pollard_rho, 99);
    CHECK(res.samples.size() == 9);
    for (const auto& s : res.samples) {
        CHECK(s.wall_seconds >= 0.0);
        CHECK_FALSE(s.timeout);
    }
    REQUIRE(res.median_seconds.size() == 3);
    CHECK(res.fit.has_value());

    // a single size leaves the fit undefined but still reports samples
    const auto single = benchmark_factoring({BitLength(24)}, 3, FactorAlgorithm::pollard_rho, 99);
    CHECK(single.samples.size() == 3);
    CHECK_FALSE(single.fit.has_value());

    CHECK_THROWS_AS(benchmark_factoring({}, 3, FactorAlgorithm::pollard_rho, 1), InputError);
    CHECK_THROWS_AS(benchmark_factoring({BitLength(16)}, 0, FactorAlgorithm::pollard_rho, 1),
                    InputError);
    CHECK_THROWS_AS(
        benchmark_factoring({BitLength(600)}, 1, FactorAlgorithm::pollard_rho, 1), InputError);
}

TEST_CASE("benchmark budget produces timeout markers") {
    // trial division cannot touch a 120-bit semiprime in 20 ms
    const auto res =
        benchmark_factoring({BitLength(120)}, 2, FactorAlgorithm::trial_division, 1, 0.02);
    REQUIRE(res.samples.size() == 2);
    CHECK(res.samples[0].timeout);
    CHECK(res.samples[1].timeout);
    CHECK(res.median_seconds.empty());  // timeouts never enter the medians
    CHECK_FALSE(res.fit.has_value());
}

TEST_CASE("factor algorithm names") {
    CHECK(to_string(FactorAlgorithm::pollard_rho) == "pollard_rho");
    CHECK(parse_factor_algorithm("rho") == FactorAlgorithm::pollard_rho);
    CHECK(parse_factor_algorithm("TRIAL") == FactorAlgorithm::trial_division);
    CHECK(parse_factor_algorithm("fermat") == FactorAlgorithm::fermat);
    CHECK_THROWS_AS(parse_factor_algorithm("gnfs"), InputError);
}
