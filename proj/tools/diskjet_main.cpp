// diskjet: command-line front end for the disk-differential jet-extension
// library. Subcommands: eval, coeffs, norm, poincare, kernel, verify.
// Exit codes: 0 success, 1 verification failure, 2 parse/config error,
// 3 domain error. Every error path prints one machine-parsable JSON line
// on stderr.
#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "djet/batch.hpp"
#include "djet/bergman.hpp"
#include "djet/configio.hpp"
#include "djet/fuchsian.hpp"
#include "djet/jetext.hpp"
#include "djet/mobius.hpp"
#include "djet/specfun.hpp"
#include "djet/verify.hpp"

namespace {

using djet::cplx;
using djet::DiskPoint;
using djet::PointPair;
using nlohmann::ordered_json;

std::string fmt17(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

int fail(int code, const std::string& what) {
    ordered_json e;
    e["error"] = what;
    e["exit_code"] = code;
    std::cerr << e.dump() << "\n";
    return code;
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number \"" + s + "\"");
    }
    if (pos != s.size()) throw std::invalid_argument("trailing characters in number \"" + s + "\"");
    return v;
}

// Accepts "0.5", "-0.2", "0.3+0.1i", "-0.2-0.4i", "0.5i", "i", "-i".
cplx parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty complex token");
    if (s.back() != 'i' && s.back() != 'I') return {to_double(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto im_part = [](std::string t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_double(t);
    };
    if (split == std::string::npos) return {0.0, im_part(s)};
    return {to_double(s.substr(0, split)), im_part(s.substr(split))};
}

std::vector<cplx> parse_complex_list(const std::string& csv) {
    std::vector<cplx> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = csv.find(',', start);
        out.push_back(parse_complex(csv.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// CSV rows of `width` doubles; blank lines, '#' comments, and one leading
// header line are ignored.
std::vector<std::vector<double>> read_rows(const std::string& path, std::size_t width) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open points file " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    long lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos || line[a] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first_content) {
            first_content = false;
            try {
                (void)to_double(fields.at(0));
            } catch (const std::invalid_argument&) {
                continue;  // header line
            }
        }
        if (fields.size() != width)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected " +
                                        std::to_string(width) + " fields, got " +
                                        std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(width);
        for (const std::string& f : fields) row.push_back(to_double(f));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json cjson(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

struct GlobalOpts {
    std::uint64_t seed = 0;
    int quad_nodes = 64;
    double tolerance_scale = 1.0;
    bool json = false;
    bool csv = false;
};

std::vector<PointPair> gather_pairs(const std::vector<std::string>& zs,
                                    const std::vector<std::string>& ws,
                                    const std::string& points_file) {
    std::vector<PointPair> pairs;
    if (!points_file.empty()) {
        for (const auto& r : read_rows(points_file, 4))
            pairs.push_back({DiskPoint({r[0], r[1]}), DiskPoint({r[2], r[3]})});
    } else {
        if (zs.empty() || ws.empty())
            throw std::invalid_argument("need --z and --w (or --points FILE)");
        for (const std::string& zs_i : zs)
            for (const std::string& ws_j : ws)
                pairs.push_back({DiskPoint(parse_complex(zs_i)), DiskPoint(parse_complex(ws_j))});
    }
    if (pairs.empty()) throw std::invalid_argument("no evaluation points given");
    return pairs;
}

int run_eval(const GlobalOpts& g, int order, const std::string& coeffs,
             const std::vector<std::string>& zs, const std::vector<std::string>& ws,
             const std::string& points_file) {
    djet::NDifferential psi = djet::NDifferential::power_series(order, parse_complex_list(coeffs));
    std::vector<PointPair> pairs = gather_pairs(zs, ws, points_file);
    std::vector<cplx> vals = djet::extend_grid(psi, pairs, {g.quad_nodes});
    if (g.json) {
        ordered_json out;
        out["order"] = order;
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            ordered_json r;
            r["z"] = cjson(pairs[i].z.value());
            r["w"] = cjson(pairs[i].w.value());
            r["value"] = cjson(vals[i]);
            rows.push_back(std::move(r));
        }
        out["rows"] = std::move(rows);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "z_re,z_im,w_re,w_im,value_re,value_im\n";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            cplx z = pairs[i].z.value(), w = pairs[i].w.value();
            std::cout << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(w.real())
                      << ',' << fmt17(w.imag()) << ',' << fmt17(vals[i].real()) << ','
                      << fmt17(vals[i].imag()) << "\n";
        }
    }
    return 0;
}

int run_coeffs(const GlobalOpts& g, int order, const std::string& coeffs, int terms) {
    djet::NDifferential psi = djet::NDifferential::power_series(order, parse_complex_list(coeffs));
    std::vector<cplx> taylor = djet::taylor_at_zero(psi, terms);
    if (g.csv) {
        std::cout << "m,value_re,value_im\n";
        for (std::size_t m = 0; m < taylor.size(); ++m)
            std::cout << m << ',' << fmt17(taylor[m].real()) << ',' << fmt17(taylor[m].imag())
                      << "\n";
    } else {
        ordered_json out;
        out["order"] = order;
        out["terms"] = terms;
        ordered_json arr = ordered_json::array();
        for (cplx c : taylor) arr.push_back(cjson(c));
        // entry m multiplies w^(order+m) in the diagonal restriction at z = 0
        out["fiber_coefficients"] = std::move(arr);
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int run_norm(const GlobalOpts& g, int order, double alpha, long terms) {
    if (alpha <= -1.0)
        throw std::domain_error(
            "alpha <= -1: the weighted norm degenerates to the divergent Hardy regime; "
            "use the partial-sum diagnostics instead");
    djet::SeriesValue ca = djet::c_alpha(order, alpha);
    djet::SeriesValue ms = djet::moment_sum(order, alpha, terms);
    double ladder = ms.value + ms.tail_estimate;
    double agreement = std::abs(ca.value - ladder);
    if (g.csv) {
        std::cout << "N,alpha,c_alpha,moment_sum,moment_tail,agreement,saturated\n"
                  << order << ',' << fmt17(alpha) << ',' << fmt17(ca.value) << ','
                  << fmt17(ms.value) << ',' << fmt17(ms.tail_estimate) << ','
                  << fmt17(agreement) << ',' << (ca.saturated || ms.saturated ? 1 : 0) << "\n";
    } else {
        ordered_json out;
        out["N"] = order;
        out["alpha"] = alpha;
        out["c_alpha"] = ca.value;
        out["c_alpha_terms"] = ca.terms_used;
        out["c_alpha_saturated"] = ca.saturated;
        out["moment_sum"] = ms.value;
        out["moment_tail"] = ms.tail_estimate;
        out["moment_terms"] = terms;
        out["ladder_total"] = ladder;
        out["agreement"] = agreement;
        out["i_image_norm_unit"] = djet::i_image_norm(order, alpha, 1.0);
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int run_poincare(const GlobalOpts& g, const std::string& gens_file, int length, int order,
                 const std::string& kind, const std::vector<std::string>& zs,
                 const std::vector<std::string>& ws, const std::string& points_file) {
    djet::GeneratorSet gens = djet::load_generator_set(gens_file);
    djet::GroupBall ball = djet::enumerate_ball(gens, length);
    if (kind == "density") {
        std::vector<DiskPoint> pts;
        if (!points_file.empty()) {
            for (const auto& r : read_rows(points_file, 2)) pts.emplace_back(cplx{r[0], r[1]});
        } else {
            if (zs.empty()) throw std::invalid_argument("need --z (or --points FILE)");
            for (const std::string& s : zs) pts.emplace_back(parse_complex(s));
        }
        std::vector<djet::SeriesTerm> res = djet::poincare_density_grid(ball, order, pts);
        if (g.json) {
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                ordered_json r;
                r["z"] = cjson(pts[i].value());
                r["value"] = cjson(res[i].value);
                r["tail"] = res[i].tail_indicator;
                r["warning"] = res[i].convergence_warning;
                rows.push_back(std::move(r));
            }
            ordered_json out;
            out["kind"] = "density";
            out["order"] = order;
            out["word_length"] = length;
            out["rows"] = std::move(rows);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "z_re,z_im,value_re,value_im,tail,warning\n";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                cplx z = pts[i].value();
                std::cout << fmt17(z.real()) << ',' << fmt17(z.imag()) << ','
                          << fmt17(res[i].value.real()) << ',' << fmt17(res[i].value.imag())
                          << ',' << fmt17(res[i].tail_indicator) << ','
                          << (res[i].convergence_warning ? 1 : 0) << "\n";
            }
        }
        return 0;
    }
    // kind == "pair"
    std::vector<PointPair> pairs = gather_pairs(zs, ws, points_file);
    std::vector<djet::SeriesTerm> res = djet::pair_series_grid(ball, order, pairs);
    if (g.json) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            ordered_json r;
            r["z"] = cjson(pairs[i].z.value());
            r["w"] = cjson(pairs[i].w.value());
            r["value"] = cjson(res[i].value);
            r["tail"] = res[i].tail_indicator;
            r["warning"] = res[i].convergence_warning;
            rows.push_back(std::move(r));
        }
        ordered_json out;
        out["kind"] = "pair";
        out["order"] = order;
        out["word_length"] = length;
        out["rows"] = std::move(rows);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "z_re,z_im,w_re,w_im,value_re,value_im,tail,warning\n";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            cplx z = pairs[i].z.value(), w = pairs[i].w.value();
            std::cout << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(w.real())
                      << ',' << fmt17(w.imag()) << ',' << fmt17(res[i].value.real()) << ','
                      << fmt17(res[i].value.imag()) << ',' << fmt17(res[i].tail_indicator)
                      << ',' << (res[i].convergence_warning ? 1 : 0) << "\n";
        }
    }
    return 0;
}

int run_kernel(const GlobalOpts& g, const std::string& config_file, const std::string& points_file,
               const std::string& zs, const std::string& ws, const std::string& z2s,
               const std::string& w2s) {
    djet::KernelConfig kc = djet::load_kernel_config(config_file);
    std::vector<djet::PairOfPairs> pts;
    if (!points_file.empty()) {
        for (const auto& r : read_rows(points_file, 8))
            pts.push_back({PointPair{DiskPoint({r[0], r[1]}), DiskPoint({r[2], r[3]})},
                           PointPair{DiskPoint({r[4], r[5]}), DiskPoint({r[6], r[7]})}});
    } else {
        if (zs.empty() || ws.empty())
            throw std::invalid_argument("need --z and --w (or --points FILE)");
        PointPair p{DiskPoint(parse_complex(zs)), DiskPoint(parse_complex(ws))};
        PointPair p2 = p;
        if (!z2s.empty() || !w2s.empty()) {
            if (z2s.empty() || w2s.empty())
                throw std::invalid_argument("--z2 and --w2 must be given together");
            p2 = PointPair{DiskPoint(parse_complex(z2s)), DiskPoint(parse_complex(w2s))};
        }
        pts.push_back({p, p2});
    }
    std::vector<cplx> vals = djet::kernel_grid(kc.basis, kc.alpha, pts, {g.quad_nodes});
    if (g.json) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            ordered_json r;
            r["z"] = cjson(pts[i][0].z.value());
            r["w"] = cjson(pts[i][0].w.value());
            r["z2"] = cjson(pts[i][1].z.value());
            r["w2"] = cjson(pts[i][1].w.value());
            r["kernel"] = cjson(vals[i]);
            rows.push_back(std::move(r));
        }
        ordered_json out;
        out["genus"] = kc.basis.genus;
        out["alpha"] = kc.alpha;
        out["families"] = kc.basis.families.size();
        out["rows"] = std::move(rows);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "z_re,z_im,w_re,w_im,z2_re,z2_im,w2_re,w2_im,kernel_re,kernel_im\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cplx z = pts[i][0].z.value(), w = pts[i][0].w.value();
            cplx z2 = pts[i][1].z.value(), w2 = pts[i][1].w.value();
            std::cout << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(w.real())
                      << ',' << fmt17(w.imag()) << ',' << fmt17(z2.real()) << ','
                      << fmt17(z2.imag()) << ',' << fmt17(w2.real()) << ',' << fmt17(w2.imag())
                      << ',' << fmt17(vals[i].real()) << ',' << fmt17(vals[i].imag()) << "\n";
        }
    }
    return 0;
}

int run_verify(const GlobalOpts& g, const std::vector<std::string>& only,
               const std::string& report_file, double perturb) {
    djet::VerifyOptions vo;
    vo.seed = g.seed;
    vo.quad_nodes = g.quad_nodes;
    vo.tolerance_scale = g.tolerance_scale;
    vo.only = only;
    vo.norm_ratio_perturb = perturb;
    std::vector<djet::CheckResult> checks = djet::run_acceptance(vo);
    ordered_json rep = djet::report_json(checks, vo);
    std::string text = rep.dump(2);
    std::cout << text << "\n";
    if (!report_file.empty()) {
        std::ofstream out(report_file);
        if (!out) throw std::invalid_argument("cannot write report file " + report_file);
        out << text << "\n";
    }
    return djet::all_passed(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diskjet: jet extension of holomorphic disk differentials, Poincare series, "
                 "and truncated weighted Bergman kernels"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for randomized verification samples")
        ->capture_default_str();
    app.add_option("--quad-nodes", g.quad_nodes, "Gauss-Legendre node count (>= 4)")
        ->capture_default_str();
    app.add_option("--tolerance-scale", g.tolerance_scale, "multiply verification tolerances")
        ->capture_default_str();
    CLI::Option* jf = app.add_flag("--json", g.json, "force JSON output");
    app.add_flag("--csv", g.csv, "force CSV output")->excludes(jf);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate the extension of a power-series "
                                            "differential on point pairs");
    int ev_order = 0;
    std::string ev_coeffs, ev_points;
    std::vector<std::string> ev_z, ev_w;
    eval->add_option("--order", ev_order, "differential order N >= 0")->required();
    eval->add_option("--coeffs", ev_coeffs,
                     "comma-separated coefficients, complex tokens like 0.5 or 0.1-0.2i")
        ->required();
    eval->add_option("--z", ev_z, "base point(s) z; use --z=-0.2-0.1i for leading minus");
    eval->add_option("--w", ev_w, "target point(s) w; grid is the cartesian product with --z");
    eval->add_option("--points", ev_points, "CSV file with rows z_re,z_im,w_re,w_im");

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "diagonal-restriction Taylor coefficients at 0");
    int co_order = 0, co_terms = 8;
    std::string co_coeffs;
    coeffs->add_option("--order", co_order, "differential order N >= 0")->required();
    coeffs->add_option("--coeffs", co_coeffs, "comma-separated power-series coefficients")
        ->required();
    coeffs->add_option("--terms", co_terms,
                       "highest fiber index m to report; entry m multiplies w^(order+m)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);

    // norm
    auto* norm = app.add_subcommand("norm", "norm constant via hypergeometric and ladder routes");
    int no_order = 1;
    double no_alpha = 0.0;
    long no_terms = 10000;
    norm->add_option("--order", no_order, "differential order N >= 1")->required();
    norm->add_option("--alpha", no_alpha, "weight parameter alpha > -1")->required();
    norm->add_option("--terms", no_terms, "ladder partial-sum length")->capture_default_str();

    // poincare
    auto* poin = app.add_subcommand("poincare", "Poincare series over a group ball");
    std::string po_gens, po_kind = "density", po_points;
    int po_len = 3, po_order = 2;
    std::vector<std::string> po_z, po_w;
    poin->add_option("--generators", po_gens, "generator-set JSON file")->required();
    poin->add_option("--length", po_len, "word-length ball radius L >= 0")
        ->capture_default_str();
    poin->add_option("--order", po_order, "differential order N")->required();
    poin->add_option("--kind", po_kind, "density (one point) or pair (two points)")
        ->capture_default_str()
        ->check(CLI::IsMember({"density", "pair"}));
    poin->add_option("--z", po_z, "point(s) z");
    poin->add_option("--w", po_w, "point(s) w (pair kind)");
    poin->add_option("--points", po_points,
                     "CSV file: z_re,z_im (density) or z_re,z_im,w_re,w_im (pair)");

    // kernel
    auto* kern = app.add_subcommand("kernel", "truncated weighted Bergman kernel rows");
    std::string ke_config, ke_points, ke_z, ke_w, ke_z2, ke_w2;
    kern->add_option("--config", ke_config, "kernel/basis JSON config")->required();
    kern->add_option("--points", ke_points,
                     "CSV file with rows z_re,z_im,w_re,w_im,z2_re,z2_im,w2_re,w2_im");
    kern->add_option("--z", ke_z, "first pair: z");
    kern->add_option("--w", ke_w, "first pair: w");
    kern->add_option("--z2", ke_z2, "second pair: z (defaults to --z)");
    kern->add_option("--w2", ke_w2, "second pair: w (defaults to --w)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the acceptance suite, print a JSON report");
    std::vector<std::string> vf_only;
    std::string vf_report;
    double vf_perturb = 0.0;
    verify->add_option("--only", vf_only, "run only the named checks (A1..A10)")
        ->check(CLI::IsMember({"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"}));
    verify->add_option("--report", vf_report, "also write the JSON report to this file");
    verify->add_option("--perturb-norm-ratio", vf_perturb,
                       "test hook: perturb the ladder total by this relative amount")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        return fail(2, std::string("argument error: ") + e.what());
    }

    try {
        if (g.quad_nodes < 4) throw std::invalid_argument("--quad-nodes must be >= 4");
        if (eval->parsed()) return run_eval(g, ev_order, ev_coeffs, ev_z, ev_w, ev_points);
        if (coeffs->parsed()) return run_coeffs(g, co_order, co_coeffs, co_terms);
        if (norm->parsed()) return run_norm(g, no_order, no_alpha, no_terms);
        if (poin->parsed())
            return run_poincare(g, po_gens, po_len, po_order, po_kind, po_z, po_w, po_points);
        if (kern->parsed()) return run_kernel(g, ke_config, ke_points, ke_z, ke_w, ke_z2, ke_w2);
        if (verify->parsed()) return run_verify(g, vf_only, vf_report, vf_perturb);
        return fail(2, "no subcommand selected");
    } catch (const djet::discreteness_error& e) {
        return fail(3, e.what());
    } catch (const std::domain_error& e) {
        return fail(3, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(2, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, e.what());
    } catch (const std::exception& e) {
        return fail(3, std::string("unexpected error: ") + e.what());
    }
}
