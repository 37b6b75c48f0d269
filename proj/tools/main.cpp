// binzeta command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "binzeta/acceptance.hpp"
#include "binzeta/commands.hpp"

namespace {

using namespace binzeta;

enum class Format { table, json, csv };

void emit(const RunReport& r, Format fmt, bool with_times) {
    switch (fmt) {
        case Format::json: {
            Json j = to_json(r);
            if (!with_times) {
                j.erase("wall_time_ms");
                for (auto& item : j["results"]) item.erase("wall_time_ms");
            }
            std::cout << j.dump(2) << "\n";
            break;
        }
        case Format::csv: write_csv(std::cout, r); break;
        case Format::table: write_table(std::cout, r); break;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential sums, m-sequence correlations and curve zeta functions over GF(2^m)"};
    app.require_subcommand(1);

    bool json = false, csv = false, no_times = false;
    std::string poly_table;
    app.add_flag("--json", json, "JSON output");
    app.add_flag("--csv", csv, "CSV output");
    app.add_flag("--no-times", no_times, "omit wall_time_ms from JSON output");
    app.add_option("--poly-table", poly_table, "file of 'm hexmask' reduction polynomial overrides")
        ->check(CLI::ExistingFile);

    int m = 0, k = 1;
    std::string sum = "K";
    auto* expsum = app.add_subcommand("expsum", "evaluate K, C, G or Kp by enumeration");
    expsum->add_option("--m", m, "field degree")->required();
    expsum->add_option("--k", k, "exponent parameter");
    expsum->add_option("--sum", sum, "K, C, G or Kp")->check(CLI::IsMember({"K", "C", "G", "Kp"}));

    std::string m_list = "4..17", k_list = "3";
    auto* conj = app.add_subcommand("conjectures", "check K'_m = K_m and G^(k) = G^(gcd(k,m)) over ranges");
    conj->add_option("--m", m_list, "degrees, e.g. 4..17 or 5,7,11");
    conj->add_option("--k", k_list, "k values, e.g. 1..5");

    std::optional<int> corr_k;
    std::optional<std::uint64_t> corr_d;
    int max_m = 17;
    auto* corrdist = app.add_subcommand("corrdist", "cross-correlation distribution of an m-sequence and its decimation");
    corrdist->add_option("--m", m, "field degree")->required();
    corrdist->add_option("--k", corr_k, "use d = (2^2k+1)/(2^k+1) mod 2^m-1");
    corrdist->add_option("--d", corr_d, "explicit decimation");
    corrdist->add_option("--max-m", max_m, "refuse above this degree");

    int brute_cap = 9;
    auto* a1 = app.add_subcommand("a1", "A1 by brute force and by formula");
    a1->add_option("--m", m, "field degree")->required();
    a1->add_option("--k", k, "exponent parameter");
    a1->add_option("--brute-cap", brute_cap, "largest m for the brute-force count");

    std::string mode = "via_correlation";
    int direct_cap = 8;
    auto* weights = app.add_subcommand("weights", "weight distribution of the two-nonzero cyclic code");
    weights->add_option("--m", m, "field degree")->required();
    weights->add_option("--k", k, "exponent parameter");
    weights->add_option("--mode", mode, "direct or via_correlation")
        ->check(CLI::IsMember({"direct", "via_correlation"}));
    weights->add_option("--direct-cap", direct_cap, "largest m for direct mode");
    weights->add_option("--max-m", max_m, "largest m for via_correlation mode");

    std::string curve, method = "auto", s_list = "1..8";
    int curve_cap = 12;
    auto* curvecount = app.add_subcommand("curvecount", "projective point counts of a plane curve over GF(2^s)");
    curvecount->add_option("--curve", curve, "catalog name (fbar3, p1tilde, kloosterman, p3, p4) or curve file")
        ->required();
    curvecount->add_option("--s", s_list, "extension degrees, e.g. 1..8");
    curvecount->add_option("--method", method, "auto, generic or quadratic")
        ->check(CLI::IsMember({"auto", "generic", "quadratic"}));
    curvecount->add_option("--cap", curve_cap, "largest s for the generic counter");

    std::string lpoly;
    int s_max = 10;
    std::optional<int> genus;
    std::vector<std::int64_t> counts;
    int q = 2;
    auto* zeta = app.add_subcommand("zeta", "power sums and predicted counts of an L-polynomial, or reconstruction");
    auto* lpoly_opt = zeta->add_option("--l-poly", lpoly, "catalog name (L1..L4, L1prime, L3prime) or factor file");
    zeta->add_option("--s-max", s_max, "largest s");
    zeta->add_option("--genus", genus, "genus for the functional equation check");
    auto* rec_opt = zeta->add_option("--reconstruct", counts, "point counts N_1..N_g");
    zeta->add_option("--q", q, "base field size for reconstruction");
    lpoly_opt->excludes(rec_opt);

    int bound = 200;
    auto* dm = app.add_subcommand("dm-check", "vanishing of d_m = P_m(L1/L2) for 3 not dividing m");
    dm->add_option("--bound", bound, "largest m");

    AcceptanceOptions acc;
    auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
    verify->add_option("--max-m", acc.max_m, "skip field degrees above this");
    verify->add_option("--max-s", acc.max_s, "skip extension degrees above this");

    CLI11_PARSE(app, argc, argv);

    const Format fmt = json ? Format::json : csv ? Format::csv : Format::table;
    try {
        FieldSource fields(poly_table.empty() ? std::map<int, std::uint32_t>{} : load_reduction_table(poly_table));
        RunReport report;
        if (*expsum) {
            report = cmd_expsum(fields, m, k, sum);
        } else if (*conj) {
            report = cmd_conjectures(fields, parse_int_list(m_list), parse_int_list(k_list));
        } else if (*corrdist) {
            report = cmd_corrdist(fields, m, corr_k, corr_d, max_m);
        } else if (*a1) {
            report = cmd_a1(fields, m, k, brute_cap);
        } else if (*weights) {
            report = cmd_weights(fields, m, k, mode == "direct" ? WeightMode::direct : WeightMode::via_correlation,
                                 direct_cap, max_m);
        } else if (*curvecount) {
            const CountMethod cm = method == "generic"     ? CountMethod::generic
                                   : method == "quadratic" ? CountMethod::quadratic
                                                           : CountMethod::automatic;
            report = cmd_curvecount(fields, curve, parse_int_list(s_list), cm, curve_cap);
        } else if (*zeta) {
            if (!counts.empty()) {
                report = cmd_reconstruct(counts, q, static_cast<int>(counts.size()));
            } else {
                if (lpoly.empty()) throw PreconditionError("zeta needs --l-poly or --reconstruct");
                bool in_catalog = false;
                for (const auto& e : lpoly_catalog()) in_catalog |= e.name == lpoly;
                if (in_catalog) {
                    const auto& e = catalog_lpoly(lpoly);
                    report = cmd_zeta(lpoly, e.factors, s_max, genus ? genus : e.genus);
                } else {
                    report = cmd_zeta(lpoly, load_lpoly_factors(lpoly), s_max, genus);
                }
            }
        } else if (*dm) {
            report = cmd_dm_check(bound);
        } else if (*verify) {
            report = cmd_verify_all(fields, acc, [&](const CriterionOutcome& o) {
                if (fmt == Format::table)
                    std::cerr << (o.passed ? "PASS " : "FAIL ") << o.id << ". " << o.title << " ("
                              << static_cast<long long>(o.wall_time_ms) << " ms)\n";
            });
        }
        emit(report, fmt, !no_times);
        return report.ok() ? 0 : 1;
    } catch (const CostRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
