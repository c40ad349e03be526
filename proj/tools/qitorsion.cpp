// qitorsion: exact enumeration and torsion statistics for elliptic curves
// over Q(i).
//
// Subcommands:
//   census         tally torsion buckets over all minimal classes below X
//   estimate-d     fit growth exponents from a census CSV
//   torsion        torsion subgroup and points of a single curve
//   tate-convert   Tate normal form -> short Weierstrass family data
//   family-count   parameter-box counting for one torsion family
//   probe          coprimality density / scale decomposition experiments
//
// Exit codes: 0 success, 1 usage error, 2 validation or input failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qit/census.hpp"
#include "qit/curve.hpp"
#include "qit/families.hpp"
#include "qit/gaussian.hpp"
#include "qit/polynomial.hpp"
#include "qit/torsion.hpp"

namespace {

constexpr const char* kCountingNote =
    "counts sign-canonical minimal models (A, B), one per isomorphism class";

std::vector<qit::TorsionLabel> parse_groups(const std::vector<std::string>& names) {
    std::vector<qit::TorsionLabel> out;
    out.reserve(names.size());
    for (const std::string& s : names) out.push_back(qit::parse_torsion_label(s));
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_census(long long xmax, const std::vector<long long>& grid_arg,
               const std::vector<std::string>& group_names, int workers, bool contains,
               bool as_json, const std::string& out_path) {
    qit::CensusOptions opt;
    if (!grid_arg.empty()) {
        opt.grid = grid_arg;
    } else {
        for (long long g = 10000; g < xmax; g *= 10) opt.grid.push_back(g);
        opt.grid.push_back(xmax);
    }
    opt.groups = parse_groups(group_names);
    opt.mode = contains ? qit::TallyMode::contains : qit::TallyMode::equals;
    opt.workers = workers;

    const std::vector<qit::CensusRecord> recs = qit::census(opt);
    if (as_json) {
        nlohmann::json j;
        j["mode"] = contains ? "contains" : "equals";
        j["note"] = kCountingNote;
        j["records"] = nlohmann::json::array();
        for (const auto& r : recs)
            j["records"].push_back({{"group", qit::to_string(r.group)},
                                    {"X", r.X},
                                    {"count", r.count}});
        write_output(out_path, j.dump(2) + "\n");
    } else {
        write_output(out_path, qit::census_csv(recs));
    }
    return 0;
}

int run_estimate(const std::string& in_path, long long min_count, bool as_json) {
    const std::vector<qit::CensusRecord> recs = qit::parse_census_csv(slurp(in_path));
    if (recs.empty()) throw std::invalid_argument("census file has no data rows");
    const std::vector<qit::SlopeEstimate> ests = qit::estimate_d_all(recs, min_count);
    if (as_json) {
        nlohmann::json j;
        j["estimates"] = nlohmann::json::array();
        for (const auto& e : ests) {
            nlohmann::json row;
            row["group"] = qit::to_string(e.group);
            row["inv_d_est"] = e.inv_d_est;
            if (e.inv_d_est > 1e-12)
                row["d_est"] = 1.0 / e.inv_d_est;
            else
                row["d_est"] = "inf";
            switch (e.d_paper.cls) {
                case qit::DClass::finite:
                    row["d_paper"] = e.d_paper.value.get_str();
                    break;
                case qit::DClass::infinite:
                    row["d_paper"] = "inf";
                    break;
                case qit::DClass::unlisted:
                    row["d_paper"] = nullptr;
                    break;
            }
            row["residual"] = e.residual;
            row["finite_sample_flag"] = e.finite_sample_flag;
            j["estimates"].push_back(row);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << qit::slopes_csv(ests);
    }
    return 0;
}

int run_torsion(const std::string& curve_text, bool as_json) {
    const qit::Curve c = qit::parse_curve(curve_text);
    const qit::TorsionLabel label = qit::torsion_structure(c);
    const std::vector<qit::Point> pts = qit::torsion_points(c);
    if (as_json) {
        nlohmann::json j;
        j["curve"] = qit::to_string(c);
        j["torsion"] = qit::to_string(label);
        j["order"] = label.order();
        j["points"] = nlohmann::json::array();
        for (const auto& p : pts) j["points"].push_back(qit::to_string(p));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "curve = " << qit::to_string(c) << "\n";
        std::cout << "torsion = " << qit::to_string(label) << "\n";
        std::cout << "order = " << label.order() << "\n";
        for (const auto& p : pts) std::cout << qit::to_string(p) << "\n";
    }
    return 0;
}

int run_tate_convert(const std::string& a_text, const std::string& b_text,
                     const std::string& d_text) {
    qit::TateForm tf;
    tf.a = qit::parse_polynomial(a_text);
    tf.b = qit::parse_polynomial(b_text);
    tf.d = qit::parse_polynomial(d_text);
    const qit::ShortForm sf = qit::tate_to_short(tf);
    const long r = sf.f.degree(), s = sf.g.degree();
    const qit::ExponentData ed = qit::exponent(r, s, qit::WeightScheme::w46);
    std::cout << "f = " << qit::to_string(sf.f) << "\n";
    std::cout << "g = " << qit::to_string(sf.g) << "\n";
    std::cout << "r = " << r << "\n";
    std::cout << "s = " << s << "\n";
    std::cout << "n = " << ed.n << "\n";
    std::cout << "m = " << ed.m << "\n";
    std::cout << "d = " << ed.d.get_str() << "\n";
    return 0;
}

int run_family_count(const std::string& group_name, long long X, double kappa) {
    qit::S2Config cfg;
    cfg.group = qit::parse_torsion_label(group_name);
    cfg.X = X;
    cfg.kappa = kappa;
    const qit::FamilyCountResult r = qit::family_count(cfg);
    if (!r.kappa_valid) {
        std::cerr << "kappa = " << kappa << " violates the height budget at " << r.violation
                  << "\n";
        std::cerr << "retry with --kappa " << kappa / 2 << "\n";
        return 2;
    }
    std::cout << "group = " << qit::to_string(cfg.group) << "\n";
    std::cout << "X = " << X << "\n";
    std::cout << "kappa = " << kappa << "\n";
    std::cout << "s2 = " << r.s2_size << "\n";
    std::cout << "s3 = " << r.s3_size << "\n";
    std::cout << "s = " << r.s_size << "\n";
    std::cout << "max_gcd_valuation = " << r.max_gcd_valuation << "\n";
    return 0;
}

int run_probe(bool coprimality, bool scale, long long samples, long long bound,
              const std::string& group_name) {
    if (coprimality == scale)
        throw std::invalid_argument("choose exactly one of --coprimality, --scale-decomposition");
    if (coprimality) {
        const long long n = samples > 0 ? samples : 1000000;
        const double v = qit::coprimality_probe(n, bound);
        const double ref = qit::coprime_density_reference();
        std::cout << "samples = " << n << "\n";
        std::cout << "norm_bound = " << bound << "\n";
        std::cout << "coprime_fraction = " << v << "\n";
        std::cout << "reference = " << ref << "\n";
        std::cout << "abs_error = " << std::abs(v - ref) << "\n";
        return 0;
    }
    if (group_name.empty())
        throw std::invalid_argument("--scale-decomposition requires --group");
    const qit::FamilyRecord& fr = qit::family_for(qit::parse_torsion_label(group_name));
    const long long n = samples > 0 ? samples : 2000;
    const qit::ScaleDecompositionReport rep = qit::scale_decomposition_probe(fr, n);
    std::cout << "group = " << qit::to_string(fr.group) << "\n";
    std::cout << "samples = " << rep.samples_large << " (vs " << rep.samples_small << ")\n";
    std::cout << "q_values =";
    for (const auto& q : rep.q_values) std::cout << " " << qit::to_string(q);
    std::cout << "\n";
    std::cout << "stable = " << (rep.stable ? "yes" : "no") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact census and torsion statistics for elliptic curves over Q(i)"};
    app.require_subcommand(1);

    // census
    auto* cen = app.add_subcommand("census",
                                   "Tally torsion buckets over minimal classes of height < X");
    long long xmax = 0;
    std::vector<long long> grid_arg;
    std::vector<std::string> group_names;
    int workers = 1;
    bool contains = false, cen_json = false;
    std::string out_path;
    cen->add_option("--xmax", xmax, "largest height threshold")->required();
    cen->add_option("--grid", grid_arg, "explicit ascending thresholds")->delimiter(',');
    cen->add_option("--groups", group_names, "restrict to these torsion labels")->delimiter(',');
    cen->add_option("--workers", workers, "worker threads (output is identical for any count)");
    cen->add_flag("--contains", contains, "tally 'torsion contains G' instead of equality");
    cen->add_flag("--json", cen_json, "JSON instead of CSV");
    cen->add_option("--out", out_path, "write to a file instead of stdout");

    // estimate-d
    auto* est = app.add_subcommand("estimate-d", "Fit log-log growth slopes from a census CSV");
    std::string in_path;
    long long min_count = 5;
    bool est_json = false;
    est->add_option("--in", in_path, "census CSV file")->required();
    est->add_option("--min-count", min_count, "discard grid points with smaller counts");
    est->add_flag("--json", est_json, "JSON instead of CSV");

    // torsion
    auto* tor = app.add_subcommand("torsion", "Torsion subgroup of one curve y^2 = x^3 + Ax + B");
    std::string curve_text;
    bool tor_json = false;
    tor->add_option("--curve", curve_text, "curve as [A,B] with Gaussian integer entries")
        ->required();
    tor->add_flag("--json", tor_json, "JSON instead of text");

    // tate-convert
    auto* tat = app.add_subcommand(
        "tate-convert", "Convert a Tate form y^2 + a*xy + b*y = x^3 + d*x^2 to family data");
    std::string a_text, b_text, d_text;
    tat->add_option("--a", a_text, "coefficient a(t), ascending comma-separated coefficients")
        ->required();
    tat->add_option("--b", b_text, "coefficient b(t)")->required();
    tat->add_option("--d", d_text, "coefficient d(t)")->required();

    // family-count
    auto* fam = app.add_subcommand("family-count",
                                   "Count parameter-box specializations of one family");
    std::string fam_group;
    long long fam_x = 0;
    double kappa = 0.5;
    fam->add_option("--group", fam_group, "torsion label with a finite-exponent family")
        ->required();
    fam->add_option("--x", fam_x, "height budget X")->required();
    fam->add_option("--kappa", kappa, "parameter box shrink factor");

    // probe
    auto* prb = app.add_subcommand("probe", "Numeric experiments");
    bool coprimality = false, scale = false;
    long long samples = 0, bound = 1000000;
    std::string probe_group;
    prb->add_flag("--coprimality", coprimality, "coprime pair density in Z[i]");
    prb->add_flag("--scale-decomposition", scale, "family scale u = q * b^n decomposition");
    prb->add_option("--samples", samples, "sample count");
    prb->add_option("--bound", bound, "norm bound for --coprimality");
    prb->add_option("--group", probe_group, "family label for --scale-decomposition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(cen))
            return run_census(xmax, grid_arg, group_names, workers, contains, cen_json,
                              out_path);
        if (app.got_subcommand(est)) return run_estimate(in_path, min_count, est_json);
        if (app.got_subcommand(tor)) return run_torsion(curve_text, tor_json);
        if (app.got_subcommand(tat)) return run_tate_convert(a_text, b_text, d_text);
        if (app.got_subcommand(fam)) return run_family_count(fam_group, fam_x, kappa);
        if (app.got_subcommand(prb))
            return run_probe(coprimality, scale, samples, bound, probe_group);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
