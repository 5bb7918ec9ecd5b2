#include "keystrength/records.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "keystrength/errors.hpp"
#include "linreg.hpp"

namespace keystrength {

std::string to_string(FactoringAlgorithm a) {
    switch (a) {
        case FactoringAlgorithm::mpqs: return "MPQS";
        case FactoringAlgorithm::nfs: return "NFS";
        case FactoringAlgorithm::other: return "other";
    }
    return "other";
}

FactoringAlgorithm parse_algorithm(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "mpqs") return FactoringAlgorithm::mpqs;
    if (lower == "nfs") return FactoringAlgorithm::nfs;
    if (lower == "other") return FactoringAlgorithm::other;
    throw InputError("unknown algorithm '" + std::string(text) + "' (expected MPQS, NFS or other)");
}

BitLength digits_to_bits(int decimal_digits) {
    if (decimal_digits < 1) {
        throw InputError("decimal digit count must be positive");
    }
    return BitLength(static_cast<int>(std::ceil(decimal_digits * std::log2(10.0))));
}

BitLength FactoringRecord::effective_bits() const {
    if (bits) return *bits;
    if (decimal_digits) return digits_to_bits(*decimal_digits);
    throw ValidationError("record '" + name + "': neither bits nor decimal digits present");
}

void FactoringRecord::validate() const {
    const auto fail = [this](const std::string& why) {
        throw ValidationError("record '" + name + "': " + why);
    };
    if (name.empty()) throw ValidationError("record with empty name");
    if (!bits && !decimal_digits) fail("neither bits nor decimal digits present");
    if (decimal_digits && *decimal_digits < 1) fail("decimal digits must be positive");
    if (bits && decimal_digits) {
        const int expected = digits_to_bits(*decimal_digits).value();
        if (std::abs(bits->value() - expected) > 4) {
            fail("bits " + std::to_string(bits->value()) + " inconsistent with " +
                 std::to_string(*decimal_digits) + " digits (~" + std::to_string(expected) +
                 " bits)");
        }
    }
    if (wall_hours && !(*wall_hours > 0.0 && std::isfinite(*wall_hours))) {
        fail("wall hours must be positive");
    }
    if (mips_years && !(*mips_years > 0.0 && std::isfinite(*mips_years))) {
        fail("MIPS-years must be positive");
    }
}

namespace {

constexpr std::string_view kHeader =
    "name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm";

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int parse_int_field(std::string_view s, int line_no, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                         std::string(s) + "'");
    }
    return v;
}

double parse_double_field(std::string_view s, int line_no, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                         std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::vector<FactoringRecord> load_records(std::string_view csv_content) {
    std::vector<FactoringRecord> records;
    std::set<std::pair<std::string, std::pair<int, int>>> seen;

    int line_no = 0;
    bool header_seen = false;
    size_t pos = 0;
    while (pos <= csv_content.size()) {
        const size_t eol = csv_content.find('\n', pos);
        std::string_view line = csv_content.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? csv_content.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || trim(line).front() == '#') continue;

        if (!header_seen) {
            if (trim(line) != kHeader) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header '" + std::string(kHeader) + "'");
            }
            header_seen = true;
            continue;
        }

        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                             std::to_string(fields.size()));
        }

        std::array<std::string_view, 7> f;
        for (size_t i = 0; i < 7; ++i) f[i] = trim(fields[i]);

        try {
            FactoringRecord rec{
                .name = std::string(f[0]),
                .bits = std::nullopt,
                .decimal_digits = std::nullopt,
                .date_factored = CalendarDate::parse(f[3]),
                .wall_hours = std::nullopt,
                .mips_years = std::nullopt,
                .algorithm = f[6].empty() ? FactoringAlgorithm::other : parse_algorithm(f[6]),
            };
            if (!f[1].empty()) rec.bits = BitLength(parse_int_field(f[1], line_no, "bits"));
            if (!f[2].empty()) rec.decimal_digits = parse_int_field(f[2], line_no, "decimal_digits");
            if (!f[4].empty()) rec.wall_hours = parse_double_field(f[4], line_no, "wall_hours");
            if (!f[5].empty()) rec.mips_years = parse_double_field(f[5], line_no, "mips_years");
            rec.validate();

            const auto key = std::make_pair(rec.name, std::make_pair(rec.date_factored.year(),
                                                                     rec.date_factored.month()));
            if (!seen.insert(key).second) {
                throw ValidationError("record '" + rec.name + "': duplicate entry for " +
                                      rec.date_factored.to_string());
            }
            records.push_back(std::move(rec));
        } catch (const InputError& e) {
            // a syntactically valid field whose value is out of domain
            throw ValidationError("record '" + std::string(f[0]) + "' (line " +
                                  std::to_string(line_no) + "): " + e.what());
        }
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const FactoringRecord& a, const FactoringRecord& b) {
                         return a.date_factored < b.date_factored;
                     });
    return records;
}

std::vector<FactoringRecord> load_records_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open records file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_records(buf.str());
}

std::string serialize_records(const std::vector<FactoringRecord>& records) {
    std::string out{kHeader};
    out += '\n';
    char num[64];
    for (const auto& r : records) {
        out += r.name;
        out += ',';
        if (r.bits) out += std::to_string(r.bits->value());
        out += ',';
        if (r.decimal_digits) out += std::to_string(*r.decimal_digits);
        out += ',';
        out += r.date_factored.to_string();
        out += ',';
        if (r.wall_hours) {
            std::snprintf(num, sizeof num, "%.17g", *r.wall_hours);
            out += num;
        }
        out += ',';
        if (r.mips_years) {
            std::snprintf(num, sizeof num, "%.17g", *r.mips_years);
            out += num;
        }
        out += ',';
        out += to_string(r.algorithm);
        out += '\n';
    }
    return out;
}

const std::string& bundled_records_csv() {
    static const std::string csv =
        "name,bits,decimal_digits,date_factored,wall_hours,mips_years,algorithm\n"
        "C116,,116,1990,,275,MPQS\n"
        "RSA-120,,120,1993,,830,MPQS\n"
        "RSA-129,,129,1994,,5000,MPQS\n"
        "RSA-130,,130,1996,,1000,NFS\n"
        "RSA-140,,140,1999,,2100,NFS\n"
        "RSA-155,512,155,1999-08,5040,8400,NFS\n"
        "RSA-768,768,232,2009,21600,,NFS\n"
        "RSA-512,512,155,2015,4,,NFS\n";
    return csv;
}

std::vector<FactoringRecord> bundled_records() { return load_records(bundled_records_csv()); }

double TrendFit::predict_bits(double year_fraction) const {
    return a * std::exp(b * (year_fraction - t0));
}

TrendFit fit_trend(const std::vector<FactoringRecord>& records) {
    if (records.size() < 3) {
        throw FitError("trend fit needs at least 3 records, got " +
                       std::to_string(records.size()));
    }
    std::vector<FactoringRecord> sorted(records);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const FactoringRecord& a, const FactoringRecord& b) {
                         return a.date_factored < b.date_factored;
                     });

    const double t0 = sorted.front().date_factored.year_fraction_mid();
    std::vector<double> xs, ys;
    xs.reserve(sorted.size());
    ys.reserve(sorted.size());
    for (const auto& r : sorted) {
        xs.push_back(r.date_factored.year_fraction_mid() - t0);
        ys.push_back(std::log(static_cast<double>(r.effective_bits().value())));
    }

    const auto reg = detail::linear_fit(xs, ys);
    if (!reg.ok) {
        throw FitError("trend fit needs records with distinct dates");
    }

    TrendFit fit;
    fit.a = std::exp(reg.intercept);
    fit.b = reg.slope;
    fit.t0 = t0;
    fit.r_squared = reg.r2;
    for (size_t i = 0; i < xs.size(); ++i) {
        fit.residuals.push_back(ys[i] - (reg.intercept + reg.slope * xs[i]));
    }
    return fit;
}

double extrapolate_effort(const FactoringRecord& source, BitLength target_bits) {
    if (!source.mips_years) {
        throw InputError("record '" + source.name + "' has no MIPS-years figure to extrapolate");
    }
    return *source.mips_years * effort_ratio(target_bits, source.effective_bits());
}

std::span<const ExtrapolationAnnotation> historical_extrapolations() {
    static const std::array<ExtrapolationAnnotation, 2> published{{
        {"RSA-155", "RSA-140", 16800.0},
        {"RSA-155", "RSA-130", 33600.0},
    }};
    return published;
}

}  // namespace keystrength
