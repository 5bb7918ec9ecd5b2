// keystrength — command-line front end for the factoring-effort estimator
// and the desk-scale RSA laboratory.

#include <CLI11.hpp>
#include <json.hpp>

#include <clocale>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "keystrength/calendar.hpp"
#include "keystrength/effort.hpp"
#include "keystrength/errors.hpp"
#include "keystrength/estimator.hpp"
#include "keystrength/moore.hpp"
#include "keystrength/records.hpp"
#include "keystrength/rsa_lab.hpp"

namespace ks = keystrength;
using json = nlohmann::ordered_json;

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct OutputConfig {
    std::string format = "table";
};

void print_table(const TextTable& t) {
    std::vector<size_t> widths(t.header.size());
    for (size_t i = 0; i < t.header.size(); ++i) widths[i] = t.header[i].size();
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    auto print_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            std::printf("%-*s%s", static_cast<int>(widths[i]), row[i].c_str(),
                        i + 1 == row.size() ? "\n" : "  ");
        }
    };
    print_row(t.header);
    for (size_t i = 0; i < t.header.size(); ++i) {
        std::printf("%s%s", std::string(widths[i], '-').c_str(),
                    i + 1 == t.header.size() ? "\n" : "  ");
    }
    for (const auto& row : t.rows) print_row(row);
}

void print_csv(const TextTable& t) {
    auto join = [](const std::vector<std::string>& row) {
        std::string out;
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        return out;
    };
    std::printf("%s\n", join(t.header).c_str());
    for (const auto& row : t.rows) std::printf("%s\n", join(row).c_str());
}

void emit(const OutputConfig& out, const json& obj, const TextTable& table) {
    if (out.format == "json") {
        std::printf("%s\n", obj.dump(2).c_str());
    } else if (out.format == "csv") {
        print_csv(table);
    } else {
        print_table(table);
    }
}

// Shared model context assembled from defaults, config file and flags.
struct ModelArgs {
    int baseline_bits = 512;
    double baseline_hours = 4.0;
    std::string baseline_date = "2015-01";
    double doubling_months = 18.0;

    ks::BaselineRecord baseline() const {
        return ks::BaselineRecord(ks::BitLength(baseline_bits), baseline_hours,
                                  ks::CalendarDate::parse(baseline_date));
    }
    ks::DoublingModel model() const { return ks::DoublingModel(doubling_months); }
};

mpz_class parse_mpz(const std::string& text) {
    try {
        return mpz_class(text);
    } catch (const std::invalid_argument&) {
        throw ks::InputError("not a decimal integer: '" + text + "'");
    }
}

std::vector<ks::FactoringRecord> load_active_records(const std::string& records_file) {
    if (records_file.empty()) return ks::bundled_records();
    return ks::load_records_file(records_file);
}

json record_to_json(const ks::FactoringRecord& r) {
    json j{{"name", r.name}};
    if (r.bits) j["bits"] = r.bits->value();
    if (r.decimal_digits) j["decimal_digits"] = *r.decimal_digits;
    j["date_factored"] = r.date_factored.to_string();
    if (r.wall_hours) j["wall_hours"] = *r.wall_hours;
    if (r.mips_years) j["mips_years"] = *r.mips_years;
    j["algorithm"] = ks::to_string(r.algorithm);
    return j;
}

std::vector<std::string> record_to_row(const ks::FactoringRecord& r) {
    return {r.name,
            r.bits ? std::to_string(r.bits->value()) : "",
            r.decimal_digits ? std::to_string(*r.decimal_digits) : "",
            r.date_factored.to_string(),
            r.wall_hours ? fmt_num(*r.wall_hours) : "",
            r.mips_years ? fmt_num(*r.mips_years) : "",
            ks::to_string(r.algorithm)};
}

// ---- published-table reproductions --------------------------------------

TextTable make_table4(json& j) {
    const double projected = ks::project_hours(5040.0, ks::DoublingModel::moore_18m(), 192.0);
    const double calibrated = ks::calibrate_doubling(5040.0, 4.0, 192.0).period_months();
    TextTable t;
    t.header = {"number", "year", "months_between", "doubling_months", "hours"};
    t.rows = {
        {"RSA-512", "1999", "", "", ""},
        {"RSA-512", "2015", "192", fmt_num(18.0), fmt_num(projected)},
        {"RSA-512", "2015", "192", fmt_num(calibrated), fmt_num(4.0)},
    };
    j["rows"] = json::array({
        {{"number", "RSA-512"}, {"year", 1999}},
        {{"number", "RSA-512"},
         {"year", 2015},
         {"months_between", 192},
         {"doubling_months", 18.0},
         {"hours", projected}},
        {{"number", "RSA-512"},
         {"year", 2015},
         {"months_between", 192},
         {"doubling_months", calibrated},
         {"hours", 4.0}},
    });
    return t;
}

TextTable make_table5(json& j) {
    TextTable t;
    t.header = {"number", "effort_l", "times_harder"};
    j["rows"] = json::array();
    for (int bits : {512, 768, 1024, 2048}) {
        const auto effort = ks::l_effort(ks::BitLength(bits));
        std::string ratio;
        json row{{"number", "RSA-" + std::to_string(bits)},
                 {"effort_l", effort.scientific()},
                 {"ln_effort", effort.ln()}};
        if (bits != 512) {
            const double lr = ks::ln_effort_ratio(ks::BitLength(bits), ks::BitLength(512));
            ratio = ks::scientific_from_ln(lr);
            row["times_harder"] = ratio;
        }
        t.rows.push_back({"RSA-" + std::to_string(bits), effort.scientific(), ratio});
        j["rows"].push_back(std::move(row));
    }
    return t;
}

TextTable make_table6(json& j, const ModelArgs& margs) {
    const auto baseline = margs.baseline();
    const auto model = margs.model();
    const ks::CalendarDate at(2015, 1);
    TextTable t;
    t.header = {"number", "time_taken_hours", "estimated_hours", "estimated_years"};
    t.rows.push_back({"RSA-512", fmt_num(4.0), "", ""});
    j["rows"] = json::array({{{"number", "RSA-512"}, {"time_taken_hours", 4.0}}});
    for (int bits : {768, 1024, 2048}) {
        const auto est = ks::break_time(ks::BitLength(bits), at, baseline, model);
        // the published wall time exists only for the 768-bit factorization
        const std::string taken = bits == 768 ? fmt_num(21600.0) : "";
        t.rows.push_back(
            {"RSA-" + std::to_string(bits), taken, fmt_num(est.hours()), fmt_num(est.years())});
        json row{{"number", "RSA-" + std::to_string(bits)}};
        if (bits == 768) row["time_taken_hours"] = 21600.0;
        row["estimated_hours"] = est.hours();
        row["estimated_years"] = est.years();
        j["rows"].push_back(std::move(row));
    }
    return t;
}

TextTable make_table7(json& j) {
    const auto rows = ks::table7_schedule(240.0, ks::CalendarDate(2015, 1), 8);
    TextTable t;
    t.header = {"year", "years_elapsed", "minutes"};
    j["rows"] = json::array();
    for (size_t k = 0; k < rows.size(); ++k) {
        const std::string elapsed = k == 0 ? "" : fmt_num(rows[k].year - rows[0].year);
        t.rows.push_back({fmt_num(rows[k].year), elapsed, fmt_num(rows[k].minutes)});
        json row{{"year", rows[k].year}, {"minutes", rows[k].minutes}};
        if (k > 0) row["years_elapsed"] = rows[k].year - rows[0].year;
        j["rows"].push_back(std::move(row));
    }
    return t;
}

TextTable make_table8(json& j) {
    const auto estimates = ks::table8_estimates(1.0);
    TextTable t;
    t.header = {"number", "minutes", "hours", "years"};
    j["rows"] = json::array();
    for (const auto& est : estimates) {
        const double minutes = est.hours() * 60.0;
        t.rows.push_back({"RSA-" + std::to_string(est.bits().value()), fmt_num(minutes),
                          fmt_num(est.hours()), fmt_num(est.years())});
        j["rows"].push_back(json{{"number", "RSA-" + std::to_string(est.bits().value())},
                                 {"minutes", minutes},
                                 {"hours", est.hours()},
                                 {"years", est.years()}});
    }
    return t;
}

void apply_config_file(const std::string& path, ModelArgs& margs, OutputConfig& out,
                       std::uint64_t& seed, std::string& records_file) {
    std::ifstream in(path);
    if (!in) {
        throw ks::InputError("cannot open config file '" + path + "'");
    }
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw ks::InputError("config file '" + path + "': " + e.what());
    }
    for (const auto& [key, value] : cfg.items()) {
        if (key == "baseline_bits") {
            margs.baseline_bits = value.get<int>();
        } else if (key == "baseline_hours") {
            margs.baseline_hours = value.get<double>();
        } else if (key == "baseline_date") {
            margs.baseline_date = value.get<std::string>();
        } else if (key == "doubling_months") {
            margs.doubling_months = value.get<double>();
        } else if (key == "format") {
            out.format = value.get<std::string>();
        } else if (key == "seed") {
            seed = value.get<std::uint64_t>();
        } else if (key == "records_file") {
            records_file = value.get<std::string>();
        } else {
            throw ks::InputError("config file '" + path + "': unknown key '" + key + "'");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");  // '.' decimal separator no matter the environment

    CLI::App app{"Factoring-effort and key-length estimation toolkit"};
    app.require_subcommand(1);

    OutputConfig out;
    ModelArgs margs;
    std::uint64_t seed = 1;
    std::string records_file;
    std::string config_path;

    // config file values are applied before flag parsing, so flags win
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string_view(argv[i]) == "--config") config_path = argv[i + 1];
    }
    try {
        if (!config_path.empty()) apply_config_file(config_path, margs, out, seed, records_file);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    app.add_option("--config", config_path, "JSON config file with defaults");
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for every randomized operation")->capture_default_str();
    app.add_option("--records-file", records_file,
                   "records CSV (defaults to the bundled dataset)");

    const auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--baseline-bits", margs.baseline_bits, "baseline modulus size")
            ->capture_default_str();
        cmd->add_option("--baseline-hours", margs.baseline_hours, "baseline factoring wall hours")
            ->capture_default_str();
        cmd->add_option("--baseline-date", margs.baseline_date, "baseline date (YYYY or YYYY-MM)")
            ->capture_default_str();
        cmd->add_option("--doubling-months", margs.doubling_months,
                        "compute-power doubling period")
            ->capture_default_str();
    };

    // effort
    auto* cmd_effort = app.add_subcommand("effort", "work factor for a modulus size");
    int effort_bits = 0;
    cmd_effort->add_option("--bits", effort_bits, "modulus size in bits")->required();

    // ratio
    auto* cmd_ratio = app.add_subcommand("ratio", "how much harder one size is than another");
    int ratio_target = 0, ratio_baseline = 512;
    cmd_ratio->add_option("--target", ratio_target, "target bits")->required();
    cmd_ratio->add_option("--baseline", ratio_baseline, "baseline bits")->capture_default_str();

    // calibrate
    auto* cmd_calibrate =
        app.add_subcommand("calibrate", "doubling period from two timings of the same job");
    double cal_early = 0, cal_late = 0, cal_months = 0;
    cmd_calibrate->add_option("--hours-early", cal_early, "earlier run, wall hours")->required();
    cmd_calibrate->add_option("--hours-late", cal_late, "later run, wall hours")->required();
    cmd_calibrate->add_option("--months", cal_months, "months between the runs")->required();

    // estimate
    auto* cmd_estimate = app.add_subcommand("estimate", "projected break time for a size/date");
    int est_bits = 0, est_year = 0, est_month = 1;
    cmd_estimate->add_option("--bits", est_bits, "modulus size in bits")->required();
    cmd_estimate->add_option("--year", est_year, "attack year")->required();
    cmd_estimate->add_option("--month", est_month, "attack month")->capture_default_str();
    add_model_flags(cmd_estimate);

    // min-bits
    auto* cmd_minbits =
        app.add_subcommand("min-bits", "smallest size protecting a lifespan");
    int mb_year = 0, mb_month = 1;
    double mb_lifespan = 0, mb_margin = 1.0;
    std::string mb_mode = "end-of-life";
    bool mb_round = false;
    cmd_minbits->add_option("--from-year", mb_year, "protection start year")->required();
    cmd_minbits->add_option("--from-month", mb_month, "protection start month")
        ->capture_default_str();
    cmd_minbits->add_option("--lifespan", mb_lifespan, "protection lifespan in years")
        ->required();
    cmd_minbits->add_option("--margin", mb_margin, "safety margin multiplier")
        ->capture_default_str();
    cmd_minbits->add_option("--mode", mb_mode, "constraint mode")
        ->check(CLI::IsMember({"end-of-life", "cumulative-work"}))
        ->capture_default_str();
    cmd_minbits->add_flag("--round", mb_round, "round up to a conventional modulus size");
    add_model_flags(cmd_minbits);

    // levels
    auto* cmd_levels = app.add_subcommand("levels", "security-level size equivalences");
    std::string lv_family;
    int lv_level = 0, lv_bits = 0;
    cmd_levels->add_option("--family", lv_family, "rsa | dh | ecc | symmetric");
    cmd_levels->add_option("--level", lv_level, "security level (80/128/192/256)");
    cmd_levels->add_option("--bits", lv_bits, "key size for the inverse lookup");

    // policy
    auto* cmd_policy = app.add_subcommand("policy", "policy minimum for a use-until year");
    int pol_year = 0;
    cmd_policy->add_option("--year", pol_year, "last year of use")->required();

    // tables
    auto* cmd_tables = app.add_subcommand("tables", "published-table reproductions");
    int which_table = 0;
    cmd_tables->add_option("--which", which_table, "table number (4-8)")->required();
    add_model_flags(cmd_tables);

    // records
    auto* cmd_records = app.add_subcommand("records", "factoring-record dataset operations");
    cmd_records->require_subcommand(1);
    auto* cmd_rec_load = cmd_records->add_subcommand("load", "validate and print the dataset");
    auto* cmd_rec_fit = cmd_records->add_subcommand("fit", "exponential size-vs-date trend");
    auto* cmd_rec_ex = cmd_records->add_subcommand("extrapolate", "scale a record's effort");
    std::string ex_source;
    int ex_target_bits = 0;
    cmd_rec_ex->add_option("--source", ex_source, "source record name")->required();
    cmd_rec_ex->add_option("--target-bits", ex_target_bits, "target modulus size")->required();

    // rsa
    auto* cmd_rsa = app.add_subcommand("rsa", "desk-scale RSA laboratory");
    cmd_rsa->require_subcommand(1);
    auto* cmd_rsa_keygen = cmd_rsa->add_subcommand("keygen", "deterministic toy key pair");
    int kg_bits = 0;
    cmd_rsa_keygen->add_option("--bits", kg_bits, "modulus size (8-256)")->required();
    auto* cmd_rsa_encrypt = cmd_rsa->add_subcommand("encrypt", "m^e mod n");
    auto* cmd_rsa_decrypt = cmd_rsa->add_subcommand("decrypt", "c^d mod n");
    auto* cmd_rsa_break = cmd_rsa->add_subcommand("break", "recover d by factoring n");
    std::string arg_n, arg_e, arg_d, arg_m, arg_c;
    double break_budget = 30.0;
    cmd_rsa_encrypt->add_option("--n", arg_n, "modulus")->required();
    cmd_rsa_encrypt->add_option("--e", arg_e, "public exponent")->required();
    cmd_rsa_encrypt->add_option("--m", arg_m, "message residue")->required();
    cmd_rsa_decrypt->add_option("--n", arg_n, "modulus")->required();
    cmd_rsa_decrypt->add_option("--d", arg_d, "private exponent")->required();
    cmd_rsa_decrypt->add_option("--c", arg_c, "ciphertext residue")->required();
    cmd_rsa_break->add_option("--n", arg_n, "modulus")->required();
    cmd_rsa_break->add_option("--e", arg_e, "public exponent")->required();
    cmd_rsa_break->add_option("--budget-seconds", break_budget, "factoring work budget")
        ->capture_default_str();

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "timing benchmarks");
    cmd_bench->require_subcommand(1);
    auto* cmd_bench_factor = cmd_bench->add_subcommand("factor", "time semiprime factoring");
    std::vector<int> bench_sizes;
    int bench_trials = 5;
    std::string bench_alg = "pollard_rho";
    double bench_budget = 10.0;
    cmd_bench_factor->add_option("--sizes", bench_sizes, "semiprime sizes in bits")
        ->required()
        ->delimiter(',');
    cmd_bench_factor->add_option("--trials", bench_trials, "trials per size")
        ->capture_default_str();
    cmd_bench_factor->add_option("--algorithm", bench_alg, "trial_division | fermat | pollard_rho")
        ->capture_default_str();
    cmd_bench_factor->add_option("--budget-seconds", bench_budget, "per-trial time budget")
        ->capture_default_str();

    // global flags remain valid after any subcommand
    const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        for (CLI::App* sub : cmd->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    try {
        if (*cmd_effort) {
            const ks::BitLength bl(effort_bits);
            const auto effort = ks::l_effort(bl);
            json j{{"command", "effort"},
                   {"bits", bl.value()},
                   {"ln_effort", effort.ln()},
                   {"log10_effort", effort.log10()},
                   {"effort", effort.scientific()},
                   {"security_bits", ks::security_bits(bl)}};
            emit(out, j,
                 {{"bits", "ln_effort", "log10_effort", "effort", "security_bits"},
                  {{std::to_string(bl.value()), fmt_num(effort.ln()), fmt_num(effort.log10()),
                    effort.scientific(), fmt_num(ks::security_bits(bl))}}});
        } else if (*cmd_ratio) {
            const ks::BitLength target(ratio_target), baseline(ratio_baseline);
            const double ln_ratio = ks::ln_effort_ratio(target, baseline);
            json j{{"command", "ratio"},
                   {"target_bits", target.value()},
                   {"baseline_bits", baseline.value()},
                   {"ln_ratio", ln_ratio},
                   {"log10_ratio", ln_ratio / std::numbers::ln10},
                   {"ratio", ks::scientific_from_ln(ln_ratio)}};
            emit(out, j,
                 {{"target_bits", "baseline_bits", "ln_ratio", "log10_ratio", "ratio"},
                  {{std::to_string(target.value()), std::to_string(baseline.value()),
                    fmt_num(ln_ratio), fmt_num(ln_ratio / std::numbers::ln10),
                    ks::scientific_from_ln(ln_ratio)}}});
        } else if (*cmd_calibrate) {
            const auto model = ks::calibrate_doubling(cal_early, cal_late, cal_months);
            json j{{"command", "calibrate"},
                   {"hours_early", cal_early},
                   {"hours_late", cal_late},
                   {"elapsed_months", cal_months},
                   {"period_months", model.period_months()}};
            emit(out, j,
                 {{"hours_early", "hours_late", "elapsed_months", "period_months"},
                  {{fmt_num(cal_early), fmt_num(cal_late), fmt_num(cal_months),
                    fmt_num(model.period_months())}}});
        } else if (*cmd_estimate) {
            const auto est = ks::break_time(ks::BitLength(est_bits),
                                            ks::CalendarDate(est_year, est_month),
                                            margs.baseline(), margs.model());
            json j{{"command", "estimate"},
                   {"bits", est_bits},
                   {"at", est.at_date().to_string()},
                   {"ln_hours", est.ln_hours()},
                   {"log10_hours", est.log10_hours()},
                   {"hours", est.hours_scientific()},
                   {"years", est.years_scientific()}};
            emit(out, j,
                 {{"bits", "at", "ln_hours", "hours", "years"},
                  {{std::to_string(est_bits), est.at_date().to_string(), fmt_num(est.ln_hours()),
                    est.hours_scientific(), est.years_scientific()}}});
        } else if (*cmd_minbits) {
            const ks::SecurityQuery q{ks::CalendarDate(mb_year, mb_month), mb_lifespan, mb_margin,
                                      mb_mode == "end-of-life" ? ks::QueryMode::end_of_life
                                                               : ks::QueryMode::cumulative_work};
            const auto res = ks::min_bitlength(q, margs.baseline(), margs.model(), mb_round);
            json j{{"command", "min-bits"},
                   {"protect_from", q.protect_from.to_string()},
                   {"lifespan_years", q.lifespan_years},
                   {"margin", q.margin},
                   {"mode", mb_mode},
                   {"rounded", mb_round},
                   {"bits", res.bits.value()},
                   {"evidence",
                    {{"at", res.evidence.at_date().to_string()},
                     {"hours", res.evidence.hours_scientific()},
                     {"years", res.evidence.years_scientific()},
                     {"log10_hours", res.evidence.log10_hours()}}}};
            emit(out, j,
                 {{"bits", "mode", "protect_from", "lifespan_years", "margin", "break_at",
                   "break_hours", "break_years"},
                  {{std::to_string(res.bits.value()), mb_mode, q.protect_from.to_string(),
                    fmt_num(q.lifespan_years), fmt_num(q.margin),
                    res.evidence.at_date().to_string(), res.evidence.hours_scientific(),
                    res.evidence.years_scientific()}}});
        } else if (*cmd_levels) {
            if (!lv_family.empty() && lv_level != 0) {
                const auto family = ks::parse_family(lv_family);
                const auto bits = ks::security_level_lookup(family, lv_level);
                json j{{"command", "levels"},
                       {"family", ks::to_string(family)},
                       {"level_bits", lv_level},
                       {"key_bits", bits.value()}};
                emit(out, j,
                     {{"family", "level_bits", "key_bits"},
                      {{ks::to_string(family), std::to_string(lv_level),
                        std::to_string(bits.value())}}});
            } else if (!lv_family.empty() && lv_bits != 0) {
                const auto family = ks::parse_family(lv_family);
                const int level = ks::security_level_inverse(family, ks::BitLength(lv_bits));
                json j{{"command", "levels"},
                       {"family", ks::to_string(family)},
                       {"key_bits", lv_bits},
                       {"level_bits", level}};
                emit(out, j,
                     {{"family", "key_bits", "level_bits"},
                      {{ks::to_string(family), std::to_string(lv_bits), std::to_string(level)}}});
            } else if (lv_family.empty() && lv_level == 0 && lv_bits == 0) {
                TextTable t;
                t.header = {"family", "level_bits", "key_bits"};
                json rows = json::array();
                for (auto family :
                     {ks::AlgorithmFamily::rsa, ks::AlgorithmFamily::dh_dsa_elgamal,
                      ks::AlgorithmFamily::ecc, ks::AlgorithmFamily::symmetric}) {
                    for (int level : ks::kSecurityLevels) {
                        const auto bits = ks::security_level_lookup(family, level);
                        t.rows.push_back({ks::to_string(family), std::to_string(level),
                                          std::to_string(bits.value())});
                        rows.push_back(json{{"family", ks::to_string(family)},
                                            {"level_bits", level},
                                            {"key_bits", bits.value()}});
                    }
                }
                emit(out, json{{"command", "levels"}, {"rows", rows}}, t);
            } else {
                throw ks::InputError(
                    "levels needs --family with --level or --bits, or no flags for the full "
                    "table");
            }
        } else if (*cmd_policy) {
            const auto bits = ks::policy_recommendation(pol_year);
            json j{{"command", "policy"}, {"use_until_year", pol_year},
                   {"min_bits", bits.value()}};
            emit(out, j,
                 {{"use_until_year", "min_bits"},
                  {{std::to_string(pol_year), std::to_string(bits.value())}}});
        } else if (*cmd_tables) {
            json j{{"command", "tables"}, {"which", which_table}};
            TextTable t;
            switch (which_table) {
                case 4: t = make_table4(j); break;
                case 5: t = make_table5(j); break;
                case 6: t = make_table6(j, margs); break;
                case 7: t = make_table7(j); break;
                case 8: t = make_table8(j); break;
                default: throw ks::InputError("tables supports --which 4 through 8");
            }
            emit(out, j, t);
        } else if (*cmd_rec_load) {
            const auto recs = load_active_records(records_file);
            if (out.format == "json") {
                json rows = json::array();
                for (const auto& r : recs) rows.push_back(record_to_json(r));
                std::printf("%s\n", json{{"command", "records load"}, {"rows", rows}}.dump(2).c_str());
            } else if (out.format == "csv") {
                std::fputs(ks::serialize_records(recs).c_str(), stdout);
            } else {
                TextTable t;
                t.header = {"name", "bits", "decimal_digits", "date_factored",
                            "wall_hours", "mips_years", "algorithm"};
                for (const auto& r : recs) t.rows.push_back(record_to_row(r));
                print_table(t);
            }
        } else if (*cmd_rec_fit) {
            const auto fit = ks::fit_trend(load_active_records(records_file));
            json j{{"command", "records fit"},
                   {"a", fit.a},
                   {"b", fit.b},
                   {"t0", fit.t0},
                   {"r_squared", fit.r_squared},
                   {"residuals", fit.residuals}};
            emit(out, j,
                 {{"a", "b", "t0", "r_squared"},
                  {{fmt_num(fit.a), fmt_num(fit.b), fmt_num(fit.t0), fmt_num(fit.r_squared)}}});
        } else if (*cmd_rec_ex) {
            const auto recs = load_active_records(records_file);
            const ks::FactoringRecord* source = nullptr;
            for (const auto& r : recs) {
                if (r.name == ex_source) {
                    if (source != nullptr) {
                        throw ks::InputError("record name '" + ex_source +
                                             "' is ambiguous in this dataset");
                    }
                    source = &r;
                }
            }
            if (source == nullptr) {
                throw ks::InputError("no record named '" + ex_source + "' in the dataset");
            }
            const double estimate =
                ks::extrapolate_effort(*source, ks::BitLength(ex_target_bits));
            json published = json::array();
            for (const auto& note : ks::historical_extrapolations()) {
                if (note.source == ex_source) {
                    published.push_back(json{{"target", note.target},
                                             {"source", note.source},
                                             {"mips_years", note.mips_years}});
                }
            }
            json j{{"command", "records extrapolate"},
                   {"source", source->name},
                   {"source_bits", source->effective_bits().value()},
                   {"source_mips_years", *source->mips_years},
                   {"target_bits", ex_target_bits},
                   {"estimated_mips_years", estimate},
                   {"published_projections", published}};
            TextTable t{{"source", "source_bits", "source_mips_years", "target_bits",
                         "estimated_mips_years"},
                        {{source->name, std::to_string(source->effective_bits().value()),
                          fmt_num(*source->mips_years), std::to_string(ex_target_bits),
                          fmt_num(estimate)}}};
            emit(out, j, t);
            if (out.format != "json") {
                for (const auto& note : ks::historical_extrapolations()) {
                    if (note.source == ex_source) {
                        std::printf("# published projection for %s from %s: %s MIPS-years\n",
                                    note.target.c_str(), note.source.c_str(),
                                    fmt_num(note.mips_years).c_str());
                    }
                }
            }
        } else if (*cmd_rsa_keygen) {
            const auto key = ks::keygen(ks::BitLength(kg_bits), seed);
            json j{{"command", "rsa keygen"}, {"bits", kg_bits},
                   {"seed", seed},           {"n", key.n.get_str()},
                   {"e", key.e.get_str()},   {"d", key.d.get_str()},
                   {"p", key.p.get_str()},   {"q", key.q.get_str()}};
            emit(out, j,
                 {{"bits", "seed", "n", "e", "d", "p", "q"},
                  {{std::to_string(kg_bits), std::to_string(seed), key.n.get_str(),
                    key.e.get_str(), key.d.get_str(), key.p.get_str(), key.q.get_str()}}});
        } else if (*cmd_rsa_encrypt) {
            const mpz_class n = parse_mpz(arg_n), e = parse_mpz(arg_e), m = parse_mpz(arg_m);
            const mpz_class c = ks::encrypt(n, e, m);
            json j{{"command", "rsa encrypt"},
                   {"n", n.get_str()},
                   {"e", e.get_str()},
                   {"m", m.get_str()},
                   {"c", c.get_str()}};
            emit(out, j,
                 {{"n", "e", "m", "c"},
                  {{n.get_str(), e.get_str(), m.get_str(), c.get_str()}}});
        } else if (*cmd_rsa_decrypt) {
            const mpz_class n = parse_mpz(arg_n), d = parse_mpz(arg_d), c = parse_mpz(arg_c);
            const mpz_class m = ks::decrypt(n, d, c);
            json j{{"command", "rsa decrypt"},
                   {"n", n.get_str()},
                   {"d", d.get_str()},
                   {"c", c.get_str()},
                   {"m", m.get_str()}};
            emit(out, j,
                 {{"n", "d", "c", "m"},
                  {{n.get_str(), d.get_str(), c.get_str(), m.get_str()}}});
        } else if (*cmd_rsa_break) {
            const mpz_class n = parse_mpz(arg_n), e = parse_mpz(arg_e);
            const auto broken = ks::break_key(n, e, seed, break_budget);
            json j{{"command", "rsa break"},     {"n", n.get_str()},
                   {"e", e.get_str()},           {"p", broken.p.get_str()},
                   {"q", broken.q.get_str()},    {"d", broken.d.get_str()}};
            emit(out, j,
                 {{"n", "e", "p", "q", "d"},
                  {{n.get_str(), e.get_str(), broken.p.get_str(), broken.q.get_str(),
                    broken.d.get_str()}}});
        } else if (*cmd_bench_factor) {
            std::vector<ks::BitLength> sizes;
            for (int s : bench_sizes) sizes.emplace_back(s);
            const auto alg = ks::parse_factor_algorithm(bench_alg);
            const auto res =
                ks::benchmark_factoring(sizes, bench_trials, alg, seed, bench_budget);

            json summary{{"slope", nullptr},
                         {"r2", nullptr},
                         {"sizes", bench_sizes},
                         {"trials", bench_trials}};
            if (res.fit) {
                summary["slope"] = res.fit->slope;
                summary["r2"] = res.fit->r2;
            }
            json medians = json::array();
            for (const auto& [bits, med] : res.median_seconds) {
                medians.push_back(json{{"bits", bits}, {"median_seconds", med}});
            }

            TextTable t;
            t.header = {"bits", "trial", "algorithm", "wall_seconds", "timeout"};
            json samples = json::array();
            for (const auto& s : res.samples) {
                t.rows.push_back({std::to_string(s.bits), std::to_string(s.trial),
                                  ks::to_string(s.algorithm), fmt_num(s.wall_seconds),
                                  s.timeout ? "1" : "0"});
                samples.push_back(json{{"bits", s.bits},
                                       {"trial", s.trial},
                                       {"algorithm", ks::to_string(s.algorithm)},
                                       {"wall_seconds", s.wall_seconds},
                                       {"timeout", s.timeout}});
            }

            if (out.format == "json") {
                std::printf("%s\n", json{{"command", "bench factor"},
                                         {"samples", samples},
                                         {"medians", medians},
                                         {"summary", summary}}
                                        .dump(2)
                                        .c_str());
            } else if (out.format == "csv") {
                print_csv(t);
                // the summary rides on stderr so the sample CSV stays parseable
                std::fprintf(stderr, "%s\n", summary.dump().c_str());
            } else {
                print_table(t);
                std::printf("\nmedians:\n");
                for (const auto& [bits, med] : res.median_seconds) {
                    std::printf("  %d bits: %s s\n", bits, fmt_num(med).c_str());
                }
                std::printf("summary: %s\n", summary.dump().c_str());
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
