#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rootgraded/borel.hpp"
#include "rootgraded/chevalley.hpp"
#include "rootgraded/finitering.hpp"
#include "rootgraded/reduction.hpp"
#include "rootgraded/rootsys.hpp"
#include "rootgraded/spectra.hpp"
#include "rootgraded/steinberg.hpp"
#include "rootgraded/weylgraph.hpp"

using nlohmann::json;
using namespace rootgraded;

namespace {

struct GlobalOpts {
    uint64_t seed = 0;
    int jobs = 1;
    std::string format = "json";
    double tolerance = 1e-9;
    long long cap = 2'000'000;
    std::string output;
    bool no_timestamp = false;
    std::vector<std::string> argv;
};

/// Thrown by command bodies on verification failure; carries the witness.
struct VerificationFailure {
    json witness;
};

json root_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json roots_json(const RootSystem& phi, const std::vector<int>& idx) {
    json a = json::array();
    for (int i : idx) a.push_back(root_json(phi.roots[i]));
    return a;
}

RootSystem system_from_label(const std::string& label) {
    size_t pos = 0;
    while (pos < label.size() && std::isalpha((unsigned char)label[pos])) ++pos;
    if (pos == 0 || pos == label.size())
        throw std::invalid_argument("--system expects a label like A2, BC2, F4");
    return build_classical(label.substr(0, pos), std::stoi(label.substr(pos)));
}

/// Ring shorthand: F<q> (prime power), Z<m>, F2t (dual numbers over F2), or a
/// full JSON descriptor.
FiniteRing ring_from_flag(const std::string& s, const std::string& involution) {
    FiniteRing R;
    if (!s.empty() && s[0] == '{') {
        R = ring_from_json(json::parse(s));
    } else if (s == "F2t") {
        R = ring_poly_quotient(ring_zmod(2), {0, 0, 1});
    } else if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'Z')) {
        int q = std::stoi(s.substr(1));
        if (s[0] == 'Z') {
            R = ring_zmod(q);
        } else {
            int p = 2;
            while (q % p != 0) ++p;
            int e = 0, t = q;
            while (t > 1 && t % p == 0) {
                t /= p;
                ++e;
            }
            if (t != 1) throw std::invalid_argument("--ring F<q> needs a prime power");
            R = e == 1 ? ring_zmod(p) : ring_gf(p, e);
        }
    } else {
        throw std::invalid_argument("--ring expects F<q>, Z<m>, F2t, or a JSON descriptor");
    }
    if (involution == "identity") R = with_identity_involution(std::move(R));
    else if (involution == "frobenius") R = with_frobenius_involution(std::move(R));
    else if (!involution.empty())
        throw std::invalid_argument("--involution expects identity or frobenius");
    return R;
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string normalized_builtin(std::string s) {
    std::string out;
    for (char c : s)
        if (c != '>' && c != '_' && c != '-') out += (char)std::tolower((unsigned char)c);
    return out;
}

const ReductionFamily& find_family(const std::string& name) {
    for (const auto& f : builtin_families())
        if (normalized_builtin(f.name) == normalized_builtin(name)) return f;
    throw std::invalid_argument("--builtin: unknown reduction " + name);
}

int emit(const GlobalOpts& g, const std::string& command, const json& result,
         const std::string& text_body = "") {
    json out = {{"command", command}, {"argv", g.argv}, {"seed", g.seed},
                {"format", g.format}, {"result", result}};
    if (!g.no_timestamp)
        out["timestamp"] = (long long)std::chrono::duration_cast<std::chrono::seconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count();
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!g.output.empty()) {
        file.open(g.output);
        if (!file) throw std::invalid_argument("--output: cannot open " + g.output);
        os = &file;
    }
    if (g.format == "json")
        *os << out.dump(2) << "\n";
    else
        *os << text_body;  // dot / csv payloads carry no header
    return 0;
}

json spectrum_json(const Spectrum& sp) {
    json entries = json::array();
    for (const auto& e : sp.entries) {
        json entry = {{"multiplicity", e.multiplicity}, {"exact", e.is_exact}};
        if (e.is_exact)
            entry["eigenvalue"] = to_string(e.exact);
        else
            entry["eigenvalue"] = e.value;
        entries.push_back(entry);
    }
    return {{"entries", entries}, {"all_exact", sp.all_exact}};
}

json reports_result(const std::vector<IdentityReport>& reports) {
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed;
    json out = {{"ok", ok}, {"reports", reports_to_json(reports)}};
    if (!ok) throw VerificationFailure{out};
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"root-graded group computations"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    for (int i = 0; i < argc; ++i) g.argv.push_back(argv[i]);
    app.add_option("--seed", g.seed, "deterministic seed (default 0)");
    app.add_option("--jobs", g.jobs, "worker parallelism bound");
    app.add_option("--format", g.format, "json|dot|csv")
        ->check(CLI::IsMember({"json", "dot", "csv"}));
    app.add_option("--tolerance", g.tolerance, "numeric tolerance override");
    app.add_option("--cap", g.cap, "closure size cap");
    app.add_option("--output", g.output, "output file (default stdout)");
    app.add_flag("--no-timestamp", g.no_timestamp, "suppress the timestamp field");

    std::string system_label, ring_flag, involution, flavor = "large", builtin_name;
    std::string formula, label, variant = "standard", group_name = "f3sq";
    std::vector<std::string> params, ratios;
    int rank = 0, k_good = 0, borel_id = -1, root_idx = 0, unitary_n = 2, omega = -1;
    int samples = 50, sweep = 0;
    bool all_flag = false;

    // Every leaf stores a body returning the result object; verification
    // failures throw VerificationFailure with a machine-checkable witness.
    std::function<json()> body;
    std::string command;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        CLI::App* c = parent->add_subcommand(name, help);
        c->fallthrough();
        c->callback([&, c] { command = c->get_parent()->get_name() + " " + c->get_name(); });
        return c;
    };
    auto opt_system = [&](CLI::App* c) { c->add_option("--system", system_label, "root system label"); };
    auto opt_ring = [&](CLI::App* c) {
        c->add_option("--ring", ring_flag, "ring: F<q>, Z<m>, F2t, or JSON");
        c->add_option("--involution", involution, "identity|frobenius");
    };

    auto* roots = app.add_subcommand("roots", "root system construction and validation");
    roots->fallthrough();
    auto* roots_build = leaf(roots, "build", "construct a built-in root system");
    opt_system(roots_build);
    roots_build->callback([&] {
        command = "roots build";
        body = [&] {
            auto phi = system_from_label(system_label);
            std::vector<int> all(phi.roots.size());
            std::iota(all.begin(), all.end(), 0);
            return json{{"label", phi.label},
                        {"dim", phi.dim},
                        {"count", phi.roots.size()},
                        {"irreducible", is_irreducible(phi)},
                        {"reduced", is_reduced(phi)},
                        {"roots", roots_json(phi, all)}};
        };
    });
    auto* roots_check = leaf(roots, "check", "validate axioms, admissibility, regularity");
    opt_system(roots_check);
    roots_check->callback([&] {
        command = "roots check";
        body = [&] {
            auto phi = system_from_label(system_label);
            validate(phi);
            std::map<int, std::vector<int>> witness;
            bool regular = is_regular(phi, &witness);
            json out = {{"label", phi.label},
                        {"admissible", is_admissible(phi)},
                        {"regular", regular}};
            if (!regular) {
                json w = json::object();
                for (const auto& [alpha, nb] : witness)
                    w[to_string(Rat(alpha))] = roots_json(phi, nb);
                out["witness"] = w;
                throw VerificationFailure{out};
            }
            return out;
        };
    });

    auto* borel = app.add_subcommand("borel", "Borel set enumeration");
    borel->fallthrough();
    auto* borel_enum = leaf(borel, "enumerate", "enumerate all Borel sets");
    opt_system(borel_enum);
    borel_enum->callback([&] {
        command = "borel enumerate";
        body = [&] {
            auto phi = system_from_label(system_label);
            auto en = enumerate_borel_sets(phi, g.seed);
            json sets = json::array();
            for (const auto& b : en.sets)
                sets.push_back({{"id", b.id},
                                {"positives", roots_json(phi, b.positives)},
                                {"opposite", en.opposite[b.id]}});
            return json{{"label", phi.label}, {"count", en.sets.size()}, {"sets", sets}};
        };
    });
    auto* borel_core = leaf(borel, "core", "core and boundary of Borel sets");
    opt_system(borel_core);
    borel_core->add_option("--id", borel_id, "Borel set id");
    borel_core->add_flag("--all", all_flag, "list every Borel set");
    borel_core->callback([&] {
        command = "borel core";
        body = [&] {
            auto phi = system_from_label(system_label);
            auto en = enumerate_borel_sets(phi, g.seed);
            json sets = json::array();
            for (const auto& b : en.sets) {
                if (!all_flag && b.id != std::max(borel_id, 0)) continue;
                sets.push_back({{"id", b.id},
                                {"positives", roots_json(phi, b.positives)},
                                {"core", roots_json(phi, en.core(b.id))},
                                {"boundary", roots_json(phi, en.boundary(b.id))}});
            }
            return json{{"label", phi.label}, {"sets", sets}};
        };
    });

    auto* weyl = app.add_subcommand("weyl", "graphs on the Borel sets");
    weyl->fallthrough();
    auto make_graphs = [&](BorelEnumeration& en) {
        en = enumerate_borel_sets(system_from_label(system_label), g.seed);
        return std::pair{large_weyl_graph(en), small_weyl_graph(en)};
    };
    auto graph_json = [](const WeylGraph& gr) {
        json edges = json::array();
        for (size_t u = 0; u < gr.n; ++u)
            for (int v : gr.adj[u])
                if ((int)u < v) edges.push_back({(int)u, v});
        return json{{"vertices", gr.n}, {"edges", edges}};
    };
    std::string dot_body;
    for (const char* name : {"large", "small"}) {
        auto* c = leaf(weyl, name, std::string("the ") + name + " graph");
        opt_system(c);
        c->callback([&, name = std::string(name)] {
            command = "weyl " + name;
            body = [&, name] {
                BorelEnumeration en;
                auto [lg, sg] = make_graphs(en);
                dot_body = to_dot(lg, sg);
                return graph_json(name == "large" ? lg : sg);
            };
        });
    }
    auto* weyl_spec = leaf(weyl, "spectrum", "Laplacian spectrum");
    opt_system(weyl_spec);
    weyl_spec->add_option("--flavor", flavor, "large|small")
        ->check(CLI::IsMember({"large", "small"}));
    weyl_spec->callback([&] {
        command = "weyl spectrum";
        body = [&] {
            BorelEnumeration en;
            auto [lg, sg] = make_graphs(en);
            auto sp = laplacian_spectrum(flavor == "large" ? lg : sg);
            dot_body = spectrum_csv(sp);
            return spectrum_json(sp);
        };
    });
    auto* weyl_diam = leaf(weyl, "diameter", "connectivity and diameter");
    opt_system(weyl_diam);
    weyl_diam->add_option("--flavor", flavor, "large|small")
        ->check(CLI::IsMember({"large", "small"}));
    weyl_diam->callback([&] {
        command = "weyl diameter";
        body = [&] {
            BorelEnumeration en;
            auto [lg, sg] = make_graphs(en);
            const auto& gr = flavor == "large" ? lg : sg;
            bool conn = is_connected(gr);
            json out = {{"vertices", gr.n}, {"connected", conn}};
            if (conn) out["diameter"] = diameter(gr);
            return out;
        };
    });
    auto* weyl_pc = leaf(weyl, "path-constant", "Dirichlet-form comparison constant");
    opt_system(weyl_pc);
    weyl_pc->callback([&] {
        command = "weyl path-constant";
        body = [&] {
            BorelEnumeration en;
            auto [lg, sg] = make_graphs(en);
            auto t = path_constant(lg, sg);
            long long max_load = 0;
            for (const auto& [e, load] : t.congestion) max_load = std::max(max_load, load);
            return json{{"constant", to_string(t.constant)},
                        {"routes", t.routes.size()},
                        {"max_congestion", max_load}};
        };
    });

    auto* reduce = app.add_subcommand("reduce", "rank reductions and goodness certificates");
    reduce->fallthrough();
    auto builtin_reduction = [&]() {
        const auto& fam = find_family(builtin_name);
        int n = rank > 0 ? rank : (fam.max_rank > 0 ? fam.max_rank : fam.min_rank + 1);
        if (n < fam.min_rank || (fam.max_rank > 0 && n > fam.max_rank))
            throw std::invalid_argument("--rank out of range for " + fam.name);
        return std::pair{fam, fam.make(n)};
    };
    auto* red_apply = leaf(reduce, "apply", "apply a built-in reduction");
    red_apply->add_option("--builtin", builtin_name, "reduction name, e.g. F4-G2")->required();
    red_apply->add_option("--rank", rank, "source rank for the unbounded families");
    red_apply->callback([&] {
        command = "reduce apply";
        body = [&] {
            auto [fam, r] = builtin_reduction();
            std::vector<int> all(r.induced.roots.size());
            std::iota(all.begin(), all.end(), 0);
            return json{{"name", fam.name},
                        {"k", fam.k},
                        {"source", r.source.label},
                        {"induced_count", r.induced.roots.size()},
                        {"induced_roots", roots_json(r.induced, all)}};
        };
    });
    auto* red_check = leaf(reduce, "check-good", "certify a reduction k-good");
    red_check->add_option("--builtin", builtin_name, "reduction name, e.g. F4-G2")->required();
    red_check->add_option("--rank", rank, "source rank for the unbounded families");
    red_check->add_option("--k", k_good, "goodness level override");
    red_check->callback([&] {
        command = "reduce check-good";
        body = [&] {
            auto [fam, r] = builtin_reduction();
            auto cert = is_k_good(r, k_good > 0 ? k_good : fam.k);
            json out = certificate_to_json(r, cert);
            out["name"] = fam.name;
            if (!cert.ok) throw VerificationFailure{out};
            if (!verify_certificate(r, cert))
                throw VerificationFailure{{{"name", fam.name},
                                           {"error", "certificate failed re-verification"}}};
            return out;
        };
    });
    auto* red_cat = leaf(reduce, "catalog", "run every built-in reduction at a rank");
    red_cat->add_option("--rank", rank, "source rank")->required();
    red_cat->callback([&] {
        command = "reduce catalog";
        body = [&] {
            json rows = json::array();
            bool ok = true;
            for (const auto& fam : builtin_families()) {
                if (rank < fam.min_rank || (fam.max_rank > 0 && rank > fam.max_rank)) continue;
                auto r = fam.make(rank);
                auto cert = is_k_good(r, fam.k);
                ok = ok && cert.ok;
                rows.push_back({{"name", fam.name}, {"k", fam.k}, {"good", cert.ok}});
            }
            json out = {{"rank", rank}, {"ok", ok}, {"reductions", rows}};
            if (!ok) throw VerificationFailure{out};
            return out;
        };
    });

    auto* chev = app.add_subcommand("chevalley", "structure constants and exponentials");
    chev->fallthrough();
    auto* chev_table = leaf(chev, "table", "structure constants N_{alpha,beta}");
    opt_system(chev_table);
    chev_table->callback([&] {
        command = "chevalley table";
        body = [&] {
            auto phi = system_from_label(system_label);
            auto t = chevalley_basis(phi);
            json rows = json::array();
            for (size_t a = 0; a < phi.roots.size(); ++a)
                for (size_t b = 0; b < phi.roots.size(); ++b) {
                    Int n = t.structure_constant((int)a, (int)b);
                    if (n == 0) continue;
                    rows.push_back({{"alpha", root_json(phi.roots[a])},
                                    {"beta", root_json(phi.roots[b])},
                                    {"N", n.convert_to<long long>()}});
                }
            return json{{"label", phi.label},
                        {"simple_roots", roots_json(phi, t.simple_roots())},
                        {"constants", rows}};
        };
    });
    auto* chev_rank2 = leaf(chev, "verify-rank2", "rank-2 commutator formula catalog");
    opt_system(chev_rank2);
    chev_rank2->callback([&] {
        command = "chevalley verify-rank2";
        body = [&] {
            auto t = normalize_rank2_signs(chevalley_basis(system_from_label(system_label)));
            json rows = json::array();
            bool ok = true;
            for (const auto& e : verify_rank2_catalog(t)) {
                ok = ok && e.passed;
                rows.push_back({{"name", e.name}, {"passed", e.passed}});
            }
            json out = {{"ok", ok}, {"relations", rows}};
            if (!ok) throw VerificationFailure{out};
            return out;
        };
    });
    auto* chev_exp = leaf(chev, "exponential", "adjoint exponential of a root element");
    opt_system(chev_exp);
    chev_exp->add_option("--root", root_idx, "root index");
    chev_exp->callback([&] {
        command = "chevalley exponential";
        body = [&] {
            auto phi = system_from_label(system_label);
            auto t = chevalley_basis(phi);
            auto m = adjoint_exponential(t, root_idx, 0, 1);
            json rows = json::array();
            for (const auto& row : m) {
                json r = json::array();
                for (const auto& p : row) r.push_back(p.str({"t"}));
                rows.push_back(r);
            }
            return json{{"label", phi.label},
                        {"root", root_json(phi.roots[root_idx])},
                        {"matrix", rows}};
        };
    });

    auto* stein = app.add_subcommand("steinberg", "finite graded group models");
    stein->fallthrough();
    auto chev_model = [&] {
        return elementary_chevalley_model(system_from_label(system_label),
                                          ring_from_flag(ring_flag, involution));
    };
    auto* st_model = leaf(stein, "model", "build a model and check its grading");
    opt_system(st_model);
    opt_ring(st_model);
    st_model->callback([&] {
        command = "steinberg model";
        body = [&] {
            auto m = chev_model();
            std::string failure;
            bool graded = verify_grading(m, &failure);
            std::vector<int> all(m.phi.roots.size());
            std::iota(all.begin(), all.end(), 0);
            auto cl = subgroup_closure(m.ring, detail::model_generators(m, all), (size_t)g.cap);
            json out = {{"name", m.name},
                        {"graded", graded},
                        {"closure_complete", cl.complete},
                        {"order", cl.elements.size()}};
            if (!graded) {
                out["witness"] = failure;
                throw VerificationFailure{out};
            }
            return out;
        };
    });
    auto* st_strong = leaf(stein, "strong", "strongness at every core root");
    opt_system(st_strong);
    opt_ring(st_strong);
    st_strong->callback([&] {
        command = "steinberg strong";
        body = [&] {
            auto m = chev_model();
            json rows = json::array();
            bool ok = true;
            for (const auto& r : check_strong_all(m)) {
                ok = ok && r.ok;
                rows.push_back({{"borel", r.borel_id}, {"root", r.root}, {"ok", r.ok}});
            }
            json out = {{"name", m.name}, {"ok", ok}, {"checks", rows}};
            if (!ok) throw VerificationFailure{out};
            return out;
        };
    });
    auto* st_gen = leaf(stein, "generators", "standard generating set");
    opt_system(st_gen);
    opt_ring(st_gen);
    st_gen->callback([&] {
        command = "steinberg generators";
        body = [&] {
            auto m = chev_model();
            std::vector<int> T;
            for (int x = 0; x < m.ring.size; ++x)
                if (x != m.ring.zero) T.push_back(x);
            std::swap(T[0], T[std::find(T.begin(), T.end(), m.ring.one) - T.begin()]);
            auto gens = standard_generators(m, T);
            bool generates = verify_generation(m, gens, (size_t)g.cap);
            json out = {{"name", m.name},
                        {"generators", gens.size()},
                        {"generates", generates}};
            if (!generates) throw VerificationFailure{out};
            return out;
        };
    });
    auto* st_unitary = leaf(stein, "unitary", "unitary model relation checks");
    opt_ring(st_unitary);
    st_unitary->add_option("--n", unitary_n, "hyperbolic rank");
    st_unitary->add_option("--omega", omega, "form scalar (ring element index)");
    st_unitary->add_option("--variant", variant, "standard|odd")
        ->check(CLI::IsMember({"standard", "odd"}));
    st_unitary->callback([&] {
        command = "steinberg unitary";
        body = [&] {
            auto R = ring_from_flag(ring_flag, involution);
            if (variant == "odd") {
                auto m = odd_unitary_model(unitary_n, R);
                return reports_result(verify_odd_unitary_relations(m, g.seed ? g.seed : 1));
            }
            int w = omega >= 0 ? omega : R.n(R.one);
            auto m = unitary_steinberg_model(unitary_n, R, w);
            return reports_result(verify_unitary_relations(m, w, g.seed ? g.seed : 1));
        };
    });
    auto* st_ident = leaf(stein, "identities", "named generator identities");
    st_ident->callback([&] {
        command = "steinberg identities";
        body = [&] { return reports_result(verify_named_identities()); };
    });

    auto* spectra = app.add_subcommand("spectra", "codistance and spectral bounds");
    spectra->fallthrough();
    auto* sp_codist = leaf(spectra, "codist", "codistance of built-in subgroup families");
    sp_codist->add_option("--group", group_name, "f3sq|heisenberg3|s3")
        ->check(CLI::IsMember({"f3sq", "heisenberg3", "s3"}));
    sp_codist->add_option("--sweep", sweep, "emit a two-line angle sweep with N steps");
    sp_codist->callback([&] {
        command = "spectra codist";
        body = [&] {
            if (sweep > 0) {
                dot_body = codistance_sweep_csv(sweep, g.seed ? g.seed : 1);
                return json{{"sweep_steps", sweep}};
            }
            RepresentationModel rep = regular_representation(
                group_name == "f3sq"        ? abelian_group({3, 3})
                : group_name == "heisenberg3" ? heisenberg_group(3)
                                              : symmetric_group(3));
            std::vector<std::vector<int>> subs;
            if (group_name == "f3sq")
                subs = {{0, 1, 2}, {0, 3, 6}};
            else if (group_name == "heisenberg3")
                subs = {subgroup_closure_indices(rep.group, {1}),
                        subgroup_closure_indices(rep.group, {3})};
            else
                subs = {subgroup_closure_indices(rep.group, {1}),
                        subgroup_closure_indices(rep.group, {4})};
            auto gc = group_codistance(rep, subs);
            std::vector<Eigen::MatrixXd> num;
            for (const auto& p : gc.projectors) num.push_back(to_eigen(p));
            json out = {{"group", group_name},
                        {"value", gc.value},
                        {"alternating", codistance_alternating(num, g.seed ? g.seed : 1)},
                        {"generates", gc.generates}};
            if (group_name == "f3sq")
                out["attains_half"] = codistance_attains(gc.projectors, Rat(1, 2));
            return out;
        };
    });
    auto* sp_bounds = leaf(spectra, "bounds", "closed-form bound evaluators");
    sp_bounds->add_option("--formula", formula, "formula name (omit to list)");
    sp_bounds->add_option("--param", params, "name=value pairs, rationals allowed");
    sp_bounds->add_option("--label", label, "root-system label for the table formula");
    sp_bounds->add_option("--ratios", ratios, "ratio list for bounded-generation");
    sp_bounds->callback([&] {
        command = "spectra bounds";
        body = [&] {
            if (formula.empty()) return json{{"formulas", bound_names()}};
            BoundInputs in;
            for (const auto& p : params) {
                auto eq = p.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("--param expects name=value");
                in.num[p.substr(0, eq)] = rat_from_string(p.substr(eq + 1));
            }
            in.label = label;
            for (const auto& r : ratios) in.list.push_back(rat_from_string(r));
            return bound_report_json(formula, in, evaluate_bound(formula, in));
        };
    });
    auto* sp_pipe = leaf(spectra, "pipeline", "end-to-end spectral checks on a finite model");
    opt_system(sp_pipe);
    opt_ring(sp_pipe);
    sp_pipe->add_option("--samples", samples, "random functions per inequality");
    sp_pipe->callback([&] {
        command = "spectra pipeline";
        body = [&] {
            auto rep = spectral_pipeline(chev_model(), g.seed ? g.seed : 1, samples);
            json out = pipeline_report_json(rep);
            if (!rep.ok) throw VerificationFailure{out};
            return out;
        };
    });
    auto* sp_hs = leaf(spectra, "hs-suite", "rank-one projection lemma suite");
    sp_hs->callback([&] {
        command = "spectra hs-suite";
        body = [&] {
            auto rep = hs_lemma_suite(g.seed ? g.seed : 2026);
            json out = hs_report_json(rep);
            if (!rep.ok) throw VerificationFailure{out};
            return out;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        json result = body();
        return emit(g, command, result, dot_body);
    } catch (const VerificationFailure& f) {
        json out = {{"command", command}, {"argv", g.argv}, {"seed", g.seed},
                    {"ok", false}, {"witness", f.witness}};
        std::cout << out.dump(2) << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
