#include "qforest/counting.hpp"
#include "qforest/fit.hpp"
#include "qforest/formulas.hpp"
#include "qforest/graph.hpp"
#include "qforest/matroid.hpp"
#include "qforest/treepoly.hpp"
#include "qforest/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

using nlohmann::json;
using namespace qforest;

namespace {

// Every run prints one JSON document; counts and coefficients are decimal
// strings so arbitrarily large exact values round-trip unchanged.
struct Report {
    json doc = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Report(const std::string& subcommand, const std::string& echo, int threads) {
        doc["subcommand"] = subcommand;
        doc["command"] = echo;
        doc["parameters"] = json::object();
        doc["results"] = json::object();
        doc["shards"] = resolve_threads(threads);
    }

    json& params() { return doc["parameters"]; }
    json& results() { return doc["results"]; }

    void finish(const std::string& algorithm) {
        doc["algorithm"] = algorithm;
        doc["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        std::cout << doc.dump(2) << "\n";
    }
};

std::string echo_argv(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

std::vector<int> split_ints(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (cur.empty()) continue;
            size_t used = 0;
            out.push_back(std::stoi(cur, &used));
            if (used != cur.size()) throw std::invalid_argument("bad integer '" + cur + "'");
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    return out;
}

// cycle:N, complete:N, complete-minus-clique:N,K, complete-minus-star:N,S
Graph family_graph(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<int> args =
        colon == std::string::npos ? std::vector<int>{} : split_ints(spec.substr(colon + 1));
    auto want = [&](size_t k) {
        if (args.size() != k)
            throw std::invalid_argument("family " + name + " takes " + std::to_string(k) +
                                        " parameter(s)");
    };
    if (name == "cycle") {
        want(1);
        return cycle_graph(args[0]);
    }
    if (name == "complete") {
        want(1);
        return complete_graph(args[0]);
    }
    if (name == "complete-minus-clique") {
        want(2);
        return complete_minus_clique(args[0], args[1]);
    }
    if (name == "complete-minus-star") {
        want(2);
        return complete_minus_star(args[0], args[1]);
    }
    throw std::invalid_argument("unknown family '" + name + "'");
}

Graph graph_from(const std::string& file, const std::string& family) {
    if (!file.empty() && !family.empty())
        throw std::invalid_argument("give either --graph or --family, not both");
    if (!file.empty()) return load_graph(file);
    if (!family.empty()) return family_graph(family);
    throw std::invalid_argument("one of --graph or --family is required");
}

BigInt parse_bigint(const std::string& text) {
    try {
        return BigInt(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
}

CountKind parse_kind(const std::string& kind) {
    if (kind == "g") return CountKind::g;
    if (kind == "f") return CountKind::f;
    throw std::invalid_argument("--kind must be g or f");
}

FormKind parse_form(const std::string& form) {
    if (form == "plus") return FormKind::plus;
    if (form == "minus") return FormKind::minus;
    throw std::invalid_argument("--form must be plus or minus");
}

json rational_string(const BigRat& value) { return value.str(); }

json poly_json(const RationalPoly& poly) {
    json arr = json::array();
    for (const auto& coeff : poly.coeffs) arr.push_back(rational_string(coeff));
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact point counts of spanning-tree polynomials over small finite fields"};
    app.require_subcommand(1);
    std::string echo = echo_argv(argc, argv);
    int exit_code = 0;

    // Shared option storage; each subcommand binds the pieces it uses.
    std::string graph_file, family, q_str, kind_str = "g", mode_str, algo_str = "brute";
    std::string pattern_file, form_str = "plus", name, points_file, level_str = "full";
    std::string uniform_str, matroid_file, edges_str, group_str;
    int threads = 0, n_param = 0, k_param = 0, s_param = 0, r_param = -1, root = 0;
    int degree_bound = -1, max_modulus = 4;
    bool force = false, use_fano = false, use_r10 = false, symmetric = false, csv = false;
    uint64_t seed = 20240814;

    auto add_common = [&](CLI::App* sub, bool budgeted = true) {
        sub->add_option("--threads", threads, "worker threads (0: QFOREST_THREADS or hardware)");
        if (budgeted) sub->add_flag("--force", force, "bypass the operation budget");
    };
    auto count_options = [&](CLI::App* sub) {
        sub->add_option("--graph", graph_file, "edge-list file");
        sub->add_option("--family", family, "family spec, e.g. cycle:4 or complete-minus-clique:5,3");
        sub->add_option("--q", q_str, "field size, prime power or p^k")->required();
        add_common(sub);
    };
    auto opt = [&] { return CountOptions{threads, force}; };

    auto* count_cmd = app.add_subcommand("count", "count assignments with a nonzero polynomial");
    count_options(count_cmd);
    count_cmd->add_option("--kind", kind_str, "g (tree polynomial) or f (complement)");
    count_cmd->callback([&] {
        Report report("count", echo, threads);
        Graph g = graph_from(graph_file, family);
        CountKind kind = parse_kind(kind_str);
        FieldCtx ctx = FieldCtx::parse(q_str);
        report.params() = {{"graph", graph_file.empty() ? family : graph_file},
                           {"kind", kind_str},
                           {"q", std::to_string(ctx.q())},
                           {"vertices", g.n},
                           {"edges", g.m()}};
        report.results()["count"] = count_nonvanishing(g, kind, ctx, opt()).str();
        report.finish(kind == CountKind::g ? "laplacian-determinant" : "tree-polynomial");
    });

    auto* zeroset_cmd = app.add_subcommand("zeroset", "count with a pinned zero set");
    count_options(zeroset_cmd);
    zeroset_cmd->add_option("--kind", kind_str, "g or f");
    zeroset_cmd->add_option("--edges", edges_str, "comma-separated edge indices pinned to zero");
    zeroset_cmd->add_option("--mode", mode_str, "at-least or exact")->required();
    zeroset_cmd->callback([&] {
        Report report("zeroset", echo, threads);
        Graph g = graph_from(graph_file, family);
        FieldCtx ctx = FieldCtx::parse(q_str);
        std::vector<int> edge_list = split_ints(edges_str);
        std::set<int> zero_set(edge_list.begin(), edge_list.end());
        ZeroMode mode;
        if (mode_str == "at-least")
            mode = ZeroMode::at_least;
        else if (mode_str == "exact")
            mode = ZeroMode::exact;
        else
            throw std::invalid_argument("--mode must be at-least or exact");
        report.params() = {{"graph", graph_file.empty() ? family : graph_file},
                           {"kind", kind_str},
                           {"edges", edges_str},
                           {"mode", mode_str},
                           {"q", std::to_string(ctx.q())}};
        report.results()["count"] =
            count_zero_set(g, zero_set, parse_kind(kind_str), mode, ctx, opt()).str();
        report.finish("zero-set-enumeration");
    });

    auto* profile_cmd = app.add_subcommand("rank-profile", "rank distribution of the reduced Laplacian");
    count_options(profile_cmd);
    profile_cmd->add_option("--root", root, "root vertex (default: last)");
    profile_cmd->add_flag("--csv", csv, "emit rank,count rows instead of JSON");
    profile_cmd->callback([&] {
        Report report("rank-profile", echo, threads);
        Graph g = graph_from(graph_file, family);
        FieldCtx ctx = FieldCtx::parse(q_str);
        int r = root == 0 ? g.n : root;
        RankProfile prof = rank_profile(g, r, ctx, opt());
        if (csv) {
            std::cout << "rank,count\n";
            for (size_t i = 0; i < prof.counts.size(); ++i)
                std::cout << i << "," << prof.counts[i].str() << "\n";
            return;
        }
        report.params() = {{"graph", graph_file.empty() ? family : graph_file},
                           {"root", r},
                           {"q", std::to_string(ctx.q())}};
        json arr = json::array();
        for (const auto& value : prof.counts) arr.push_back(value.str());
        report.results()["counts_by_rank"] = arr;
        report.finish("laplacian-rank-enumeration");
    });

    auto* support_cmd = app.add_subcommand("support", "invertible matrices with a support pattern");
    support_cmd->add_option("--pattern", pattern_file, "pattern file (n, then n 0/1 rows)");
    support_cmd->add_flag("--fano", use_fano, "seven-point projective plane incidence pattern");
    support_cmd->add_option("--q", q_str, "field size")->required();
    support_cmd->add_option("--algo", algo_str, "brute or span-dp");
    support_cmd->add_flag("--symmetric", symmetric, "count symmetric matrices instead");
    add_common(support_cmd);
    support_cmd->callback([&] {
        Report report("support", echo, threads);
        if (use_fano != pattern_file.empty())
            throw std::invalid_argument("give exactly one of --pattern or --fano");
        SupportPattern pat =
            use_fano ? SupportPattern::fano() : SupportPattern::load(pattern_file);
        FieldCtx ctx = FieldCtx::parse(q_str);
        report.params() = {{"pattern", use_fano ? "fano" : pattern_file},
                           {"n", pat.n},
                           {"cells", pat.cells.size()},
                           {"q", std::to_string(ctx.q())}};
        if (symmetric) {
            report.results()["count"] = count_support_symmetric(pat, ctx, opt()).str();
            report.finish("symmetric-fill");
            return;
        }
        SupportAlgo algo;
        if (algo_str == "brute")
            algo = SupportAlgo::brute;
        else if (algo_str == "span-dp")
            algo = SupportAlgo::span_dp;
        else
            throw std::invalid_argument("--algo must be brute or span-dp");
        report.results()["count"] = count_support_invertible(pat, ctx, algo, opt()).str();
        report.finish(algo_str);
    });

    auto* census_cmd = app.add_subcommand("sym-census", "rank census of all symmetric matrices");
    census_cmd->add_option("--n", n_param, "matrix dimension")->required();
    census_cmd->add_option("--q", q_str, "field size")->required();
    census_cmd->add_flag("--csv", csv, "emit rank,count rows instead of JSON");
    add_common(census_cmd);
    census_cmd->callback([&] {
        Report report("sym-census", echo, threads);
        FieldCtx ctx = FieldCtx::parse(q_str);
        RankProfile prof = sym_rank_census(n_param, ctx, opt());
        if (csv) {
            std::cout << "rank,count\n";
            for (size_t i = 0; i < prof.counts.size(); ++i)
                std::cout << i << "," << prof.counts[i].str() << "\n";
            return;
        }
        report.params() = {{"n", n_param}, {"q", std::to_string(ctx.q())}};
        json arr = json::array();
        for (const auto& value : prof.counts) arr.push_back(value.str());
        report.results()["counts_by_rank"] = arr;
        report.finish("symmetric-fill");
    });

    auto* matroid_cmd = app.add_subcommand("matroid", "basis-polynomial point count");
    matroid_cmd->add_option("--uniform", uniform_str, "uniform matroid r,n");
    matroid_cmd->add_flag("--r10", use_r10, "ten weight-3 binary columns");
    matroid_cmd->add_option("--file", matroid_file, "basis-list file");
    matroid_cmd->add_option("--q", q_str, "field size")->required();
    add_common(matroid_cmd);
    matroid_cmd->callback([&] {
        Report report("matroid", echo, threads);
        int sources = int(!uniform_str.empty()) + int(use_r10) + int(!matroid_file.empty());
        if (sources != 1)
            throw std::invalid_argument("give exactly one of --uniform, --r10, --file");
        Matroid m;
        std::string which;
        if (!uniform_str.empty()) {
            std::vector<int> rn = split_ints(uniform_str);
            if (rn.size() != 2) throw std::invalid_argument("--uniform takes r,n");
            m = uniform_matroid(rn[0], rn[1]);
            which = "uniform:" + uniform_str;
        } else if (use_r10) {
            m = r10_matroid();
            which = "r10";
        } else {
            m = load_matroid(matroid_file);
            which = matroid_file;
        }
        FieldCtx ctx = FieldCtx::parse(q_str);
        report.params() = {{"matroid", which},
                           {"ground", m.ground},
                           {"rank", m.rank},
                           {"bases", m.bases.size()},
                           {"q", std::to_string(ctx.q())}};
        report.results()["count"] = count_g_matroid(m, ctx, opt()).str();
        report.finish("last-variable-closure");
    });

    auto* formula_cmd = app.add_subcommand("formula", "evaluate a closed form exactly");
    formula_cmd->add_option("--name", name, "g-complete | macwilliams-h | g-complete-minus-clique | "
                                            "conjecture-knk | g-minus-star | cycle | group-order | "
                                            "isotropic | fourpoint")
        ->required();
    formula_cmd->add_option("--q", q_str, "evaluation point (any integer >= 2)")->required();
    formula_cmd->add_option("--n", n_param, "size parameter");
    formula_cmd->add_option("--k", k_param, "clique size");
    formula_cmd->add_option("--s", s_param, "star size");
    formula_cmd->add_option("--r", r_param, "rank");
    formula_cmd->add_option("--kind", kind_str, "g or f (cycle)");
    formula_cmd->add_option("--group", group_str, "gl | omega-plus | omega-minus | omega-plain");
    formula_cmd->add_option("--form", form_str, "plus or minus (isotropic)");
    formula_cmd->callback([&] {
        Report report("formula", echo, threads);
        BigInt q = parse_bigint(q_str);
        BigInt value;
        if (name == "g-complete") {
            value = g_complete(n_param, q);
        } else if (name == "macwilliams-h") {
            value = macwilliams_h(n_param, r_param, q);
        } else if (name == "g-complete-minus-clique") {
            value = g_complete_minus_clique(n_param, k_param, q);
        } else if (name == "conjecture-knk") {
            value = conjecture_knk(n_param, k_param, q);
        } else if (name == "g-minus-star") {
            value = g_minus_star(n_param, s_param, q);
        } else if (name == "cycle") {
            value = cycle_counts(n_param, q, parse_kind(kind_str));
        } else if (name == "group-order") {
            GroupKind kind;
            if (group_str == "gl")
                kind = GroupKind::gl;
            else if (group_str == "omega-plus")
                kind = GroupKind::omega_plus;
            else if (group_str == "omega-minus")
                kind = GroupKind::omega_minus;
            else if (group_str == "omega-plain")
                kind = GroupKind::omega_plain;
            else
                throw std::invalid_argument("--group must be gl, omega-plus, omega-minus, omega-plain");
            value = group_order(kind, n_param, q);
        } else if (name == "isotropic") {
            value = isotropic_formula(n_param, q, parse_form(form_str));
        } else if (name == "fourpoint") {
            value = fourpoint_formula(q);
        } else {
            throw std::invalid_argument("unknown formula '" + name + "'");
        }
        report.params() = {{"name", name}, {"q", q.str()},       {"n", n_param},
                           {"k", k_param}, {"s", s_param},       {"r", r_param},
                           {"kind", kind_str}, {"group", group_str}, {"form", form_str}};
        report.results()["value"] = value.str();
        report.finish("closed-form");
    });

    auto* fit_cmd = app.add_subcommand("fit", "exact interpolation and probes on q,count points");
    fit_cmd->add_option("--points", points_file, "CSV file with header q,count")->required();
    fit_cmd->add_option("--mode", mode_str, "interpolate | poly-probe | quasi-probe")->required();
    fit_cmd->add_option("--degree-bound", degree_bound, "degree bound for the probes");
    fit_cmd->add_option("--max-modulus", max_modulus, "largest modulus tried by quasi-probe");
    fit_cmd->add_flag("--csv", csv, "emit coefficient rows instead of JSON");
    fit_cmd->callback([&] {
        Report report("fit", echo, threads);
        auto points = load_points(points_file);
        report.params() = {{"points", points_file},
                           {"count", points.size()},
                           {"mode", mode_str},
                           {"degree_bound", degree_bound},
                           {"max_modulus", max_modulus}};
        auto emit_csv = [&](const RationalPoly& poly) {
            std::cout << "degree,coefficient\n";
            for (size_t i = 0; i < poly.coeffs.size(); ++i)
                std::cout << i << "," << poly.coeffs[i].str() << "\n";
        };
        if (mode_str == "interpolate") {
            RationalPoly poly = interpolate(points);
            if (csv) return emit_csv(poly);
            report.results()["coefficients"] = poly_json(poly);
            report.results()["degree"] = poly.degree();
            report.results()["integer_coefficients"] = integer_coeff_check(poly);
            report.finish("exact-interpolation");
        } else if (mode_str == "poly-probe") {
            if (degree_bound < 0) throw std::invalid_argument("--degree-bound is required");
            auto probe = polynomiality_probe(points, degree_bound);
            if (probe.polynomial) {
                if (csv) return emit_csv(*probe.polynomial);
                report.results()["verdict"] = "polynomial";
                report.results()["coefficients"] = poly_json(*probe.polynomial);
                report.results()["integer_coefficients"] = integer_coeff_check(*probe.polynomial);
            } else {
                report.results()["verdict"] = "not-polynomial";
                report.results()["witness"] = {{"q", probe.witness->first.str()},
                                               {"count", probe.witness->second.str()}};
            }
            report.finish("held-out-validation");
        } else if (mode_str == "quasi-probe") {
            if (degree_bound < 0) throw std::invalid_argument("--degree-bound is required");
            auto probe = quasipoly_probe(points, max_modulus, degree_bound);
            if (probe.result) {
                report.results()["verdict"] = "quasipolynomial";
                report.results()["modulus"] = probe.result->modulus;
                json branches = json::array();
                for (const auto& branch : probe.result->branches)
                    branches.push_back(poly_json(branch));
                report.results()["branches"] = branches;
            } else {
                report.results()["verdict"] = "none";
            }
            json gaps = json::array();
            for (const auto& gap : probe.insufficiencies)
                gaps.push_back({{"modulus", gap.modulus},
                                {"residue", gap.residue},
                                {"have", gap.have},
                                {"need", gap.need}});
            report.results()["insufficiencies"] = gaps;
            report.finish("residue-class-fits");
        } else {
            throw std::invalid_argument("--mode must be interpolate, poly-probe or quasi-probe");
        }
    });

    auto* bases_cmd = app.add_subcommand("bases", "ordered bases compatible with missing edges");
    bases_cmd->add_option("--graph", graph_file, "edge-list file; last vertex must be an apex");
    bases_cmd->add_option("--family", family, "family spec");
    bases_cmd->add_option("--q", q_str, "field size")->required();
    bases_cmd->add_option("--form", form_str, "plus or minus scalar product");
    add_common(bases_cmd);
    bases_cmd->callback([&] {
        Report report("bases", echo, threads);
        Graph g = graph_from(graph_file, family);
        FieldCtx ctx = FieldCtx::parse(q_str);
        report.params() = {{"graph", graph_file.empty() ? family : graph_file},
                           {"form", form_str},
                           {"q", std::to_string(ctx.q())}};
        report.results()["count"] =
            ordered_basis_count(g, parse_form(form_str), ctx, opt()).str();
        report.finish("tuple-enumeration");
    });

    auto* iso_cmd = app.add_subcommand("isotropic", "self-orthogonal vectors, count and closed form");
    iso_cmd->add_option("--n", n_param, "dimension")->required();
    iso_cmd->add_option("--q", q_str, "field size")->required();
    iso_cmd->add_option("--form", form_str, "plus or minus scalar product");
    add_common(iso_cmd);
    iso_cmd->callback([&] {
        Report report("isotropic", echo, threads);
        FieldCtx ctx = FieldCtx::parse(q_str);
        FormKind form = parse_form(form_str);
        report.params() = {{"n", n_param}, {"form", form_str}, {"q", std::to_string(ctx.q())}};
        report.results()["count"] = isotropic_count(n_param, form, ctx, opt()).str();
        report.results()["closed_form"] = isotropic_formula(n_param, ctx.q(), form).str();
        report.finish("vector-enumeration");
    });

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance battery");
    verify_cmd->add_option("--level", level_str, "quick or full");
    verify_cmd->add_option("--seed", seed, "seed for randomized checks");
    add_common(verify_cmd, false);
    verify_cmd->callback([&] {
        Report report("verify", echo, threads);
        VerifyLevel level;
        if (level_str == "quick")
            level = VerifyLevel::quick;
        else if (level_str == "full")
            level = VerifyLevel::full;
        else
            throw std::invalid_argument("--level must be quick or full");
        auto acceptance = run_acceptance(level, threads, seed);
        report.params() = {{"level", level_str}, {"seed", seed}};
        json criteria = json::array();
        for (const auto& cr : acceptance.criteria)
            criteria.push_back({{"id", cr.id},
                                {"name", cr.name},
                                {"pass", cr.pass},
                                {"detail", cr.detail},
                                {"elapsed_ms", cr.elapsed_ms}});
        report.results()["criteria"] = criteria;
        report.results()["pass"] = acceptance.pass;
        report.finish("acceptance-battery");
        if (!acceptance.pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const BoundaryAmbiguousError& e) {
        std::cerr << "boundary-ambiguous: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
