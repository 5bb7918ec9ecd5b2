#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "keystrength/errors.hpp"
#include "keystrength/records.hpp"

using namespace keystrength;

TEST_CASE("digit to bit conversion") {
    // frozen from tests/oracle/golden_values.py: ceil(d * log2 10)
    CHECK(digits_to_bits(1).value() == 4);
    CHECK(digits_to_bits(116).value() == 386);
    CHECK(digits_to_bits(130).value() == 432);
    CHECK(digits_to_bits(155).value() == 515);
    CHECK(digits_to_bits(232).value() == 771);
    CHECK_THROWS_AS(digits_to_bits(0), InputError);
    CHECK_THROWS_AS(digits_to_bits(-3), InputError);
}

TEST_CASE("digit to bit conversion is monotone") {
    int prev = digits_to_bits(1).value();
    for (int d = 2; d <= 5000; ++d) {
        const int cur = digits_to_bits(d).value();
        REQUIRE(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("loading a well-formed row") {
    const auto recs = load_records(
        "name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm\n"
        "RSA-155,512,155,1999-08,5040,8400,NFS\n");
    REQUIRE(recs.size() == 1);
    const auto& r = recs[0];
    CHECK(r.name == "RSA-155");
    CHECK(r.bits->value() == 512);
    CHECK(*r.decimal_digits == 155);
    CHECK(r.date_factored == CalendarDate(1999, 8));
    CHECK(*r.wall_hours == 5040.0);
    CHECK(*r.mips_years == 8400.0);
    CHECK(r.algorithm == FactoringAlgorithm::nfs);
}

TEST_CASE("empty input gives an empty list") {
    CHECK(load_records("").empty());
    CHECK(load_records("name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm\n")
              .empty());
}

TEST_CASE("parse errors name the line") {
    const std::string header =
        "name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm\n";
    CHECK_THROWS_WITH_AS(load_records("wrong,header\n"), doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(load_records(header + "X,512,155,1999,notanumber,,NFS\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(load_records(header + "X,512,155\n"),
                         doctest::Contains("7 fields"), ParseError);
    CHECK_THROWS_AS(load_records(header + "X,512,155,1999,,,SNFS\n"), ValidationError);
}

TEST_CASE("validation errors name the record") {
    const std::string header =
        "name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm\n";
    // 130 digits is ~432 bits, far outside the +-4 window around 300
    CHECK_THROWS_WITH_AS(load_records(header + "BAD,300,130,1999,,,NFS\n"),
                         doctest::Contains("BAD"), ValidationError);
    CHECK_THROWS_AS(load_records(header + "NOSIZE,,,1999,,,NFS\n"), ValidationError);
    CHECK_THROWS_AS(load_records(header + "NEGHOURS,512,,1999,-4,,NFS\n"), ValidationError);
    CHECK_THROWS_AS(load_records(header + "TINY,1,,1999,,,NFS\n"), ValidationError);
    CHECK_THROWS_AS(
        load_records(header + "DUP,512,,1999,,,NFS\nDUP,512,,1999,,,NFS\n"), ValidationError);
    // same name on different dates is a re-factoring, not a duplicate
    CHECK(load_records(header + "DUP,512,,1999,,,NFS\nDUP,512,,2015,,,NFS\n").size() == 2);
}

TEST_CASE("records come back sorted by date") {
    const auto recs = load_records(
        "name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm\n"
        "B,768,,2009,,,NFS\n"
        "A,512,,1999-08,,,NFS\n"
        "C,512,,1999-02,,,MPQS\n");
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].name == "C");
    CHECK(recs[1].name == "A");
    CHECK(recs[2].name == "B");
}

TEST_CASE("serialization round-trips") {
    const auto recs = bundled_records();
    CHECK(load_records(serialize_records(recs)) == recs);
}

TEST_CASE("bundled dataset facts") {
    const auto recs = bundled_records();
    REQUIRE(recs.size() == 8);

    // the two 512-bit runs and the 768-bit run carry the published hour counts
    double h512_1999 = 0, h512_2015 = 0, h768 = 0;
    for (const auto& r : recs) {
        if (r.effective_bits().value() == 512 && r.date_factored.year() == 1999) {
            h512_1999 = *r.wall_hours;
        }
        if (r.effective_bits().value() == 512 && r.date_factored.year() == 2015) {
            h512_2015 = *r.wall_hours;
        }
        if (r.effective_bits().value() == 768) h768 = *r.wall_hours;
    }
    CHECK(h512_1999 / h512_2015 == 1260.0);
    CHECK(std::fabs(h768 / h512_1999 - 4.29) / 4.29 < 0.005);
}

TEST_CASE("trend fit recovers an exact exponential model") {
    // geometric bit growth at equal date spacing is exactly log-linear
    std::vector<FactoringRecord> recs;
    const int base_bits = 400;
    for (int k = 0; k < 5; ++k) {
        recs.push_back(FactoringRecord{.name = "S" + std::to_string(k),
                                       .bits = BitLength(base_bits << k),
                                       .decimal_digits = std::nullopt,
                                       .date_factored = CalendarDate(2000 + 2 * k, 6),
                                       .wall_hours = std::nullopt,
                                       .mips_years = std::nullopt,
                                       .algorithm = FactoringAlgorithm::nfs});
    }
    const auto fit = fit_trend(recs);
    CHECK(std::fabs(fit.a - base_bits) <= 1e-9 * base_bits);
    const double want_b = std::log(2.0) / 2.0;  // one doubling per two years
    CHECK(std::fabs(fit.b - want_b) <= 1e-9 * want_b);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : fit.residuals) CHECK(std::fabs(r) < 1e-12);
    CHECK(fit.predict_bits(fit.t0 + 2.0) == doctest::Approx(2.0 * base_bits).epsilon(1e-9));
}

TEST_CASE("trend fit on the bundled dataset matches the oracle") {
    // frozen from tests/oracle/golden_values.py
    const auto fit = fit_trend(bundled_records());
    CHECK(fit.b > 0.0);  // sizes grew over the record period
    CHECK(std::fabs(fit.a - 397.59334802133942) <= 1e-9 * 397.59334802133942);
    CHECK(std::fabs(fit.b - 0.019261759069923929) <= 1e-9 * 0.019261759069923929);
    CHECK(std::fabs(fit.r_squared - 0.559829307888396) <= 1e-9);
    CHECK(fit.residuals.size() == 8);
}

TEST_CASE("trend fit error paths") {
    std::vector<FactoringRecord> two(2, FactoringRecord{.name = "X",
                                                        .bits = BitLength(512),
                                                        .decimal_digits = std::nullopt,
                                                        .date_factored = CalendarDate(1999, 1),
                                                        .wall_hours = std::nullopt,
                                                        .mips_years = std::nullopt,
                                                        .algorithm = FactoringAlgorithm::nfs});
    CHECK_THROWS_AS(fit_trend(two), FitError);

    std::vector<FactoringRecord> same(4, two[0]);
    CHECK_THROWS_AS(fit_trend(same), FitError);  // all-identical dates
}

TEST_CASE("effort extrapolation") {
    const auto recs = bundled_records();
    const FactoringRecord* rsa140 = nullptr;
    const FactoringRecord* c116 = nullptr;
    for (const auto& r : recs) {
        if (r.name == "RSA-140") rsa140 = &r;
        if (r.name == "C116") c116 = &r;
    }
    REQUIRE(rsa140 != nullptr);
    REQUIRE(c116 != nullptr);

    // extrapolating a record to its own size returns its own figure exactly
    CHECK(extrapolate_effort(*rsa140, rsa140->effective_bits()) == *rsa140->mips_years);
    // growing the target grows the estimate
    CHECK(extrapolate_effort(*rsa140, BitLength(512)) > *rsa140->mips_years);

    FactoringRecord no_mips = *rsa140;
    no_mips.mips_years.reset();
    CHECK_THROWS_AS(extrapolate_effort(no_mips, BitLength(512)), InputError);

    // the published projections stay dataset annotations, not model outputs
    const auto notes = historical_extrapolations();
    REQUIRE(notes.size() == 2);
    CHECK(notes[0].target == "RSA-155");
    CHECK(notes[0].source == "RSA-140");
    CHECK(notes[0].mips_years == 16800.0);
    CHECK(notes[1].source == "RSA-130");
    CHECK(notes[1].mips_years == 33600.0);
}
