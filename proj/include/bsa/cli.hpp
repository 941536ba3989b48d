#pragma once

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsa/report.hpp"

namespace bsa::cli {

struct Options {
    std::string file;
    std::size_t pivot = 0;
    std::size_t shift_budget = 10000;
    long long k = 0;
    std::string index_set; // comma separated, 1-based
    std::string root;
    std::string lambda;
    std::string write_dir;
};

namespace detail {

inline std::vector<std::size_t> parse_index_set(const std::string& text) {
    std::vector<std::size_t> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        try {
            out.push_back(static_cast<std::size_t>(std::stoul(cur)));
        } catch (...) {
            fail(errc::input_error, "bad index '" + cur + "' in index set");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(c))) cur.push_back(c);
    }
    flush();
    return out;
}

inline int exit_code_for(errc c) {
    switch (c) {
        case errc::no_admissible_shift: return 10;
        case errc::internal_error:
        case errc::conflicting_evidence: return 1;
        default: return 2;
    }
}

inline json command_echo(const std::string& name, const Options& o) {
    json flags = json::object();
    if (o.pivot) flags["pivot"] = o.pivot;
    if (o.shift_budget != 10000) flags["shift_budget"] = o.shift_budget;
    if (o.k) flags["k"] = o.k;
    if (!o.index_set.empty()) flags["I"] = o.index_set;
    if (!o.root.empty()) flags["root"] = o.root;
    if (!o.lambda.empty()) flags["lambda"] = o.lambda;
    return json{{"name", name}, {"flags", flags}};
}

inline json input_echo(const ParsedInput& in) {
    return json{{"hash", in.hash},
                {"n", in.arr.n},
                {"d", in.arr.d()},
                {"name", in.arr.name}};
}

inline void emit(std::ostream& out, json& report) { out << report.dump(2) << "\n"; }

inline WeightChoice choice_from_options(Engine& eng, const Options& o) {
    Int k(o.k);
    if (!o.index_set.empty())
        return weights_for_I(eng.d(), k, parse_index_set(o.index_set), eng.pivot());
    const auto& ranked = eng.choices_for(k);
    if (ranked.empty())
        fail(errc::no_admissible_shift, "no admissible index set for k = " + std::to_string(o.k));
    return ranked.front();
}

} // namespace detail

/// Run one CLI command. Canonical JSON report on `out`, human summary on
/// `err`. Exit codes: 0 complete, 10 incomplete, 2 input error, 1 internal.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certified Bernstein-Sato data for central hyperplane arrangements", "bsa"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sc, bool needs_file = true) {
        if (needs_file)
            sc->add_option("file", o.file, "arrangement JSON file")->required();
        sc->add_option("--pivot", o.pivot, "1-based index of the hyperplane sent to infinity");
        sc->add_option("--shift-budget", o.shift_budget, "bound on the weight-shift search");
        return sc;
    };

    add_common(app.add_subcommand("lattice", "intersection lattice with Mobius data"));
    add_common(app.add_subcommand("dense-edges", "dense edges, optionally filtered by a root of unity"))
        ->add_option("--lambda", o.lambda, "root of unity as a residue k/N");
    add_common(app.add_subcommand("euler", "Euler characteristic of the projective complement"));
    add_common(app.add_subcommand("betti", "Betti numbers of the complement"));
    add_common(app.add_subcommand("multiplicities", "point multiplicity counts (rank 3)"));
    auto* sc_coh = add_common(app.add_subcommand("cohomology", "twisted cohomology at the class -k/d"));
    sc_coh->add_option("--k", o.k, "eigenvalue index in [1, d]")->required();
    sc_coh->add_option("--I", o.index_set, "index set for the induced weights");
    add_common(app.add_subcommand("eigenspace", "Milnor monodromy eigenspace dimensions"))
        ->add_option("--k", o.k, "eigenvalue index in [1, d]")->required();
    auto* sc_vsub = add_common(app.add_subcommand("vsubspace", "index-set subspace ranks and component analysis"));
    sc_vsub->add_option("--k", o.k, "numerator of the weight class k/d")->required();
    sc_vsub->add_option("--I", o.index_set, "index set (default: first ranked admissible)");
    add_common(app.add_subcommand("candidates", "candidate roots from dense edges"));
    add_common(app.add_subcommand("certify", "certify one candidate root"))
        ->add_option("--root", o.root, "candidate root p/q")->required();
    add_common(app.add_subcommand("bfunction", "assemble the certified b-function data"));
    add_common(app.add_subcommand("spectrum", "spectrum and jumping coefficients below alpha'"));
    app.add_subcommand("corpus", "list or write the bundled arrangements")
        ->add_option("--write", o.write_dir, "write the bundled files into a directory");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    json report{{"command", detail::command_echo(cmd, o)}, {"status", "ok"}};
    int code = 0;

    try {
        if (cmd == "corpus") {
            json entries = json::array();
            for (const auto& e : corpus_manifest()) {
                entries.push_back(json{{"name", e.name},
                                       {"description", e.description},
                                       {"n", e.n},
                                       {"d", e.forms.size()}});
                if (!o.write_dir.empty()) {
                    std::filesystem::create_directories(o.write_dir);
                    std::ofstream f(std::filesystem::path(o.write_dir) / (e.name + ".json"),
                                    std::ios::binary);
                    f << corpus_json(e.name);
                }
            }
            report["result"] = json{{"entries", entries}};
            detail::emit(out, report);
            err << corpus_manifest().size() << " bundled arrangements\n";
            return 0;
        }

        ParsedInput in = read_arrangement_file(o.file);
        std::size_t pivot = o.pivot ? o.pivot : in.pivot;
        report["input"] = detail::input_echo(in);
        Engine eng(in.arr, pivot, o.shift_budget);

        if (cmd == "lattice") {
            json flats = json::array();
            for (const auto& f : eng.lattice().flats) flats.push_back(flat_to_json(f));
            json betti = json::array();
            for (const auto& b : betti_of_U(eng.lattice())) betti.push_back(to_string(b));
            report["result"] = json{{"flats", flats}, {"betti", betti}, {"chi", to_string(eng.chi())}};
            err << eng.lattice().flats.size() << " edges, chi(U) = " << to_string(eng.chi()) << "\n";
        } else if (cmd == "dense-edges") {
            json edges = json::array();
            if (o.lambda.empty()) {
                for (const auto& f : eng.lattice().flats)
                    if (f.dense) edges.push_back(flat_to_json(f));
                report["result"] = json{{"edges", edges}};
            } else {
                UnityRoot lam = UnityRoot::from_residue(parse_rat(o.lambda));
                for (auto idx : de_lambda(eng.lattice(), lam))
                    edges.push_back(flat_to_json(eng.lattice().flats[idx]));
                report["result"] = json{{"edges", edges},
                                        {"lambda", to_string(lam.residue())},
                                        {"m_lambda", m_of_lambda(eng.lattice(), lam)}};
            }
            err << edges.size() << " dense edges\n";
        } else if (cmd == "euler") {
            bool ind = eng.indecomposable();
            report["result"] = json{{"chi", to_string(eng.chi())}, {"indecomposable", ind}};
            if (!ind) {
                report["result"]["warning"] = "chi(U) = 0: decomposable arrangement";
                err << "warning: chi(U) = 0, the arrangement is decomposable\n";
            } else {
                err << "chi(U) = " << to_string(eng.chi()) << "\n";
            }
        } else if (cmd == "betti") {
            auto b = betti_of_U(eng.lattice());
            json bj = json::array();
            for (const auto& x : b) bj.push_back(to_string(x));
            report["result"] = json{{"betti", bj}};
            if (eng.n() == 3 && eng.max_multiplicity() <= 3) {
                auto cf = betti_closed_form_n3(eng.lattice(), eng.pivot());
                check_internal(b[0] == Int(cf[0]) && b[1] == Int(cf[1]) && b[2] == Int(cf[2]),
                               "closed-form Betti numbers disagree with the lattice");
                report["result"]["closed_form_agrees"] = true;
            }
            err << "betti:";
            for (const auto& x : b) err << " " << to_string(x);
            err << "\n";
        } else if (cmd == "multiplicities") {
            auto pm = point_multiplicities(eng.lattice(), eng.pivot());
            json nu = json::object(), nup = json::object();
            for (const auto& [m, c] : pm.nu) nu[std::to_string(m)] = c;
            for (const auto& [m, c] : pm.nu_prime) nup[std::to_string(m)] = c;
            report["result"] = json{{"nu", nu}, {"nu_prime", nup}, {"pivot", eng.pivot()}};
            err << "multiple points: " << nu.dump() << "\n";
        } else if (cmd == "cohomology") {
            if (o.k < 1 || o.k > static_cast<long long>(eng.d()))
                fail(errc::input_error, "--k must lie in [1, d]");
            WeightVector w;
            if (!o.index_set.empty()) {
                w = detail::choice_from_options(eng, o).alpha;
            } else {
                const auto& e = eng.eigenspace(Int(o.k));
                if (!e) fail(errc::no_admissible_shift, "no admissible weights within the budget");
                w = e->weights;
            }
            auto rep = aomoto_cohomology(eng.aomoto(), eng.lattice(), w);
            json dims = json::array();
            for (auto dim : rep.dims) dims.push_back(dim);
            json weights = json::array();
            for (const auto& a : w.alpha) weights.push_back(to_string(a));
            report["result"] = json{{"dims", dims},
                                    {"resonance_ok", rep.resonance_ok},
                                    {"weights", weights}};
            err << "twisted cohomology dims:";
            for (auto dim : rep.dims) err << " " << dim;
            err << (rep.resonance_ok ? "" : " (resonant: complex only)") << "\n";
        } else if (cmd == "eigenspace") {
            if (o.k < 1 || o.k > static_cast<long long>(eng.d()))
                fail(errc::input_error, "--k must lie in [1, d]");
            const auto& e = eng.eigenspace(Int(o.k));
            if (!e) {
                report["status"] = "incomplete";
                report["result"] = json{{"status", "UNKNOWN"},
                                        {"reason", "no admissible weight shift within the budget"}};
                code = 10;
                err << "eigenspace undetermined: no admissible shift\n";
            } else {
                json dims = json::array();
                for (auto dim : e->dims) dims.push_back(dim);
                json weights = json::array();
                for (const auto& a : e->weights.alpha) weights.push_back(to_string(a));
                report["result"] = json{{"dims", dims},
                                        {"k", to_string(e->k)},
                                        {"lambda", to_string(UnityRoot::from_residue(Rat(e->k, Int(eng.d()))).residue())},
                                        {"weights", weights}};
                err << "eigenspace dims:";
                for (auto dim : e->dims) err << " " << dim;
                err << "\n";
            }
        } else if (cmd == "vsubspace") {
            if (o.k < 1 || o.k >= static_cast<long long>(eng.d()))
                fail(errc::input_error, "--k must lie in [1, d-1]");
            WeightChoice ch = detail::choice_from_options(eng, o);
            auto vi = compute_VI(eng.aomoto(), eng.lattice(), ch);
            json I = json::array();
            for (auto i : ch.I) I.push_back(i);
            json result{{"I", I},
                        {"k", o.k},
                        {"dim_VIprime", vi.dim_VIprime},
                        {"dim_VI", vi.dim_VI},
                        {"dim_H_top", vi.dim_Htop},
                        {"defect", vi.dim_dA1_cap_VIprime}};
            if (eng.n() == 3 && eng.max_multiplicity() <= 3) {
                try {
                    auto l45 = lemma45_bound(eng.aomoto(), eng.lattice(), ch, vi);
                    json comps = json::array();
                    for (std::size_t ci = 0; ci < l45.connect.components.size(); ++ci) {
                        json members = json::array();
                        for (auto m : l45.connect.components[ci]) members.push_back(m);
                        const char* kind = l45.connect.kind[ci] == ComponentKind::good ? "good"
                                           : l45.connect.kind[ci] == ComponentKind::bad ? "bad"
                                                                                        : "neither";
                        comps.push_back(json{{"members", members}, {"kind", kind}});
                    }
                    result["connectivity"] = json{{"components", comps}, {"c", l45.c}};
                    result["equality_certified"] = l45.equality_certified;
                } catch (const error& e) {
                    result["connectivity"] = json{{"unavailable", e.what()}};
                }
                if (static_cast<long long>(eng.d()) - o.k == 2) {
                    try {
                        result["codegree2_complete"] = lemma47_check(eng.aomoto(), eng.lattice(), ch, vi);
                    } catch (const error&) {}
                }
            }
            if (o.k >= static_cast<long long>(eng.n()))
                result["normal_crossing_choice"] = lemma48_check(eng.essential(), ch.I, Int(o.k), eng.pivot());
            report["result"] = result;
            err << "dim V(I)' = " << vi.dim_VIprime << ", dim V(I) = " << vi.dim_VI
                << ", dim H^top = " << vi.dim_Htop << "\n";
        } else if (cmd == "candidates") {
            auto cands = eng.candidate_roots();
            json roots = json::array();
            for (const auto& a : cands) roots.push_back(to_string(a));
            report["result"] = json{{"candidates", roots},
                                    {"window_low", to_string(eng.local_roots().alpha_f)},
                                    {"window_high", to_string(Rat(2) - Rat(1, Int(eng.d())))}};
            err << cands.size() << " candidate roots\n";
        } else if (cmd == "certify") {
            auto cert = eng.certify(parse_rat(o.root));
            report["result"] = to_json(cert);
            if (cert.status == Status::unknown) {
                report["status"] = "incomplete";
                code = 10;
            }
            err << "root " << o.root << ": " << status_name(cert.status) << "\n";
        } else if (cmd == "bfunction") {
            auto res = eng.assemble_bfunction();
            json certs = json::array();
            for (const auto& c : res.certificates) certs.push_back(to_json(c));
            json result{{"complete", res.complete},
                        {"branch", res.branch},
                        {"divisor", to_json(res.divisor)},
                        {"multiple", to_json(res.multiple)},
                        {"certificates", certs}};
            if (res.complete) {
                result["factorization"] = to_json(res.factorization);
                result["rendered"] = render_product(res.factorization);
            } else {
                result["rendered_divisor"] = render_product(res.divisor);
                result["rendered_multiple"] = render_product(res.multiple);
            }
            if (res.j_interval_conjectured) result["j_interval_conjectured"] = true;
            if (auto [seen, violated] = eng.weight_one_conjecture_status(); seen)
                result["weight_one_jump_always"] = !violated;
            report["result"] = result;
            if (!res.complete) {
                report["status"] = "incomplete";
                code = 10;
                err << "incomplete: certified divisor " << render_product(res.divisor)
                    << " | certified multiple " << render_product(res.multiple) << "\n";
            } else {
                err << "b_f(-s) roots: " << render_product(res.factorization) << "\n";
            }
        } else if (cmd == "spectrum") {
            auto sj = eng.spectrum_and_jumping();
            json sp = json::array();
            for (const auto& [a, c] : sj.spectrum)
                sp.push_back(json{{"alpha", to_string(a)}, {"coefficient", to_string(c)}});
            json jc = json::array();
            for (const auto& a : sj.jumping) jc.push_back(to_string(a));
            report["result"] = json{{"alpha_prime", to_string(sj.alpha_prime)},
                                    {"spectrum", sp},
                                    {"jumping", jc},
                                    {"exact", sj.exact}};
            err << jc.size() << " jumping coefficients below alpha'\n";
        } else {
            fail(errc::input_error, "unknown command '" + cmd + "'");
        }
    } catch (const error& e) {
        bool undetermined = e.code() == errc::no_admissible_shift;
        report["status"] = undetermined ? "incomplete" : "error";
        report["error"] = json{{"code", errc_name(e.code())}, {"message", e.what()}};
        detail::emit(out, report);
        err << (undetermined ? "undetermined: " : "error: ") << e.what() << "\n";
        return detail::exit_code_for(e.code());
    }

    if (code == 10 && report["status"] == "ok") report["status"] = "incomplete";
    detail::emit(out, report);
    return code;
}

} // namespace bsa::cli
