#include <catch2/catch_amalgamated.hpp>

#include "rootgraded/steinberg.hpp"

using namespace rootgraded;

namespace {

int root_at(const RootSystem& phi, int al, int be, int i, int j) {
    int idx = phi.index_of(Rat(i) * phi.roots[al] + Rat(j) * phi.roots[be]);
    REQUIRE(idx >= 0);
    return idx;
}

FiniteRing f2() { return ring_zmod(2); }
FiniteRing f3() { return ring_zmod(3); }
FiniteRing z4() { return ring_zmod(4); }
FiniteRing f4() { return ring_gf(2, 2); }
FiniteRing dual_numbers_f2() { return ring_poly_quotient(ring_zmod(2), {0, 0, 1}); }

}  // namespace

TEST_CASE("finite ring constructions pass the axiom checks") {
    for (int m : {2, 3, 4, 6, 9}) CHECK_NOTHROW(check_ring_axioms(ring_zmod(m)));
    auto gf4 = f4();
    CHECK(gf4.size == 4);
    CHECK(gf4.characteristic() == 2);
    CHECK_NOTHROW(check_ring_axioms(gf4));
    // the Frobenius generates Gal(F4/F2)
    CHECK(gf4.automorphism_order == 2);
    CHECK(gf4.sigma(gf4.sigma(2)) == 2);
    CHECK(gf4.sigma(2) != 2);

    auto dual = dual_numbers_f2();
    CHECK(dual.size == 4);
    // t is nilpotent: encode t as the degree-1 monomial
    int t = 2;
    CHECK(dual.m(t, t) == dual.zero);
    CHECK_NOTHROW(check_ring_axioms(dual));

    auto prod = ring_product(ring_zmod(2), ring_zmod(3));
    CHECK(prod.size == 6);
    CHECK(prod.is_commutative());
    CHECK_NOTHROW(check_ring_axioms(prod));

    auto mats = ring_matrices(ring_zmod(2), 2);
    CHECK(mats.size == 16);
    CHECK_FALSE(mats.is_commutative());
    CHECK(mats.has_involution());  // transpose
    CHECK_NOTHROW(check_ring_axioms(mats));
    CHECK(mats.units().size() == 6);  // GL2(F2)

    auto f9 = with_frobenius_involution(ring_gf(3, 2));
    CHECK(f9.size == 9);
    int fixed = 0;
    for (int x = 0; x < 9; ++x)
        if (f9.star(x) == x) ++fixed;
    CHECK(fixed == 3);  // the fixed field is F3
    CHECK_THROWS_AS(with_frobenius_involution(ring_zmod(3)), std::invalid_argument);
    CHECK_THROWS_AS(with_identity_involution(ring_matrices(ring_zmod(2), 2)),
                    std::invalid_argument);
}

TEST_CASE("rings load from JSON") {
    auto f9 = ring_from_json({{"kind", "gf"}, {"p", 3}, {"e", 2}, {"involution", "frobenius"}});
    CHECK(f9.size == 9);
    CHECK(f9.has_involution());
    auto dual = ring_from_json({{"kind", "quotient"},
                                {"base", {{"kind", "zmod"}, {"m", 2}}},
                                {"modulus", {0, 0, 1}}});
    CHECK(dual.size == 4);
    auto mats = ring_from_json(
        {{"kind", "matrix"}, {"base", {{"kind", "zmod"}, {"m", 2}}}, {"k", 2},
         {"involution", "builtin"}});
    CHECK(mats.has_involution());
    CHECK_THROWS_AS(ring_from_json({{"kind", "nope"}}), std::invalid_argument);
}

TEST_CASE("matrix arithmetic and closures over finite rings") {
    auto R = f3();
    RingMat a = mat_elementary(R, 3, 0, 1, 1);
    RingMat b = mat_elementary(R, 3, 1, 2, 1);
    CHECK(mat_mul(R, a, mat_inverse(R, a)) == mat_identity(R, 3));
    RingMat c = mat_commutator(R, a, b);
    CHECK(c.at(0, 2) != R.zero);  // [e12, e23] hits the corner

    auto one_root = subgroup_closure(R, {a});
    CHECK(one_root.complete);
    CHECK(one_root.elements.size() == 3);

    auto heis = subgroup_closure(R, {a, b});
    CHECK(heis.complete);
    CHECK(heis.elements.size() == 27);

    // the cap produces an explicit overflow signal
    auto capped = subgroup_closure(R, {a, b}, 10);
    CHECK_FALSE(capped.complete);
    CHECK(capped.elements.size() == 10);

    auto gens = reduced_generators(R, heis.elements);
    CHECK(gens.size() <= 3);
    auto again = subgroup_closure(R, gens);
    CHECK(again.elements.size() == 27);
}

TEST_CASE("elementary Chevalley models over small rings") {
    auto a2 = elementary_chevalley_model(build_classical("A", 2), f3());
    CHECK(a2.subgroups.size() == 6);
    for (const auto& sg : a2.subgroups) CHECK(sg.elements.size() == 3);
    std::string why;
    CHECK(verify_grading(a2, &why));

    // one root subgroup closes to itself; the positive unipotent has order 27
    auto en = enumerate_borel_sets(a2.phi);
    auto uni = subgroup_closure(a2.ring, detail::model_generators(a2, en.set(0).positives));
    REQUIRE(uni.complete);
    CHECK(uni.elements.size() == 27);

    CHECK_THROWS_AS(elementary_chevalley_model(build_classical("A", 2),
                                               ring_matrices(ring_zmod(2), 2)),
                    std::invalid_argument);
}

TEST_CASE("finite Chevalley group orders") {
    auto a2 = elementary_chevalley_model(build_classical("A", 2), f2());
    std::vector<int> all(a2.phi.roots.size());
    std::iota(all.begin(), all.end(), 0);
    auto ga = subgroup_closure(a2.ring, detail::model_generators(a2, all));
    REQUIRE(ga.complete);
    CHECK(ga.elements.size() == 168);  // PSL3(2)

    auto b2 = elementary_chevalley_model(build_classical("B", 2), f2());
    all.assign(b2.phi.roots.size(), 0);
    std::iota(all.begin(), all.end(), 0);
    auto gb = subgroup_closure(b2.ring, detail::model_generators(b2, all));
    REQUIRE(gb.complete);
    CHECK(gb.elements.size() == 720);  // Sp4(2)

    auto g2 = elementary_chevalley_model(build_classical("G", 2), f2());
    auto eng = enumerate_borel_sets(g2.phi);
    auto ug = subgroup_closure(g2.ring, detail::model_generators(g2, eng.set(0).positives));
    REQUIRE(ug.complete);
    CHECK(ug.elements.size() == 64);  // the positive unipotent, order q^6
}

TEST_CASE("rank-2 gradings are strong over small commutative rings") {
    std::vector<FiniteRing> rings = {f2(), f3(), z4(), dual_numbers_f2()};
    for (const auto& fam : {"A", "B", "G"})
        for (const auto& R : rings) {
            auto m = elementary_chevalley_model(build_classical(fam, 2), R);
            INFO(m.name);
            auto reports = check_strong_all(m);
            CHECK_FALSE(reports.empty());
            for (const auto& rep : reports) {
                INFO("borel " << rep.borel_id << " root " << rep.root);
                CHECK(rep.ok);
            }
        }
}

TEST_CASE("a shrunk root subgroup breaks strongness") {
    auto R = f4();
    auto m = elementary_chevalley_model(build_classical("A", 2), R);
    auto t = model_chevalley_table(m.phi);
    auto [al, be] = detail::rank2_simple_pair(t);
    int ab = root_at(m.phi, al, be, 1, 1);
    auto en = enumerate_borel_sets(m.phi);
    // before shrinking: strong wherever the sum root is in the core
    int cores = 0;
    for (size_t id = 0; id < en.size(); ++id) {
        auto core = en.core((int)id);
        if (std::find(core.begin(), core.end(), ab) == core.end()) continue;
        ++cores;
        CHECK(check_strong(m, ab, en, (int)id));
    }
    CHECK(cores >= 1);
    // restrict the two simple root subgroups to the prime subring
    for (int idx : {al, be}) {
        RootSubgroup small;
        for (int r : {R.zero, R.one}) {
            small.by_param[{r}] = small.elements.size();
            small.elements.push_back(m.element(idx, {r}));
        }
        m.subgroups[idx] = small;
    }
    for (size_t id = 0; id < en.size(); ++id) {
        auto core = en.core((int)id);
        if (std::find(core.begin(), core.end(), ab) == core.end()) continue;
        CHECK_FALSE(check_strong(m, ab, en, (int)id));
    }
    // asking about a non-core root is rejected
    CHECK_THROWS_AS(check_strong(m, en.set(0).positives[0], en, 0), std::invalid_argument);
}

TEST_CASE("standard generating sets") {
    // products over distinct subsets
    auto R = z4();
    auto st = star_closure(R, {R.one, 3});
    CHECK(st == std::vector<int>({1, 3}));

    // type A: every root uses T; |T| = 2 over F4 gives 12 generators
    auto gf4 = f4();
    auto a2 = elementary_chevalley_model(build_classical("A", 2), gf4);
    auto gens_a = standard_generators(a2, {gf4.one, 2});
    CHECK(gens_a.size() == 12);
    CHECK(verify_generation(a2, gens_a));
    CHECK_THROWS_AS(standard_generators(a2, {2, gf4.one}), std::invalid_argument);

    // type B2: long roots use the subset products
    auto b2 = elementary_chevalley_model(build_classical("B", 2), f3());
    auto gens_b = standard_generators(b2, {b2.ring.one, 2});
    CHECK(gens_b.size() == 16);
    CHECK(verify_generation(b2, gens_b));

    // type G2: short roots use the subset products
    auto g2 = elementary_chevalley_model(build_classical("G", 2), f2());
    auto gens_g = standard_generators(g2, {g2.ring.one});
    CHECK(gens_g.size() == 12);
    CHECK(verify_generation(g2, gens_g));
}

TEST_CASE("generation identities hold as exact polynomial identities") {
    auto reports = verify_named_identities();
    CHECK(reports.size() == 5);
    for (const auto& rep : reports) {
        INFO(rep.name);
        CHECK(rep.passed);
    }
    auto j = reports_to_json(reports);
    REQUIRE(j.size() == 5);
    CHECK(j[0]["passed"].get<bool>());
}

TEST_CASE("bounded generation of the doubled short-root image in G2") {
    auto rep = g2_bounded_generation(z4());
    INFO(rep.witness);
    CHECK(rep.passed);
    auto rep2 = g2_bounded_generation(f3());
    CHECK(rep2.passed);
}

TEST_CASE("form parameters over Z/4 with the identity involution") {
    auto R = with_identity_involution(z4());
    int omega = R.one;
    CHECK(sym_elements(R, omega) == std::vector<int>({0, 2}));
    CHECK(sym_min_elements(R, omega) == std::vector<int>({0}));

    auto empty = form_parameter_closure(R, omega, {});
    CHECK(empty.elements == std::vector<int>({0}));
    auto two = form_parameter_closure(R, omega, {2});
    CHECK(two.elements == std::vector<int>({0, 2}));

    CHECK(is_form_parameter(R, omega, {0}));
    CHECK(is_form_parameter(R, omega, {0, 2}));
    CHECK_FALSE(is_form_parameter(R, omega, {0, 1}));
    CHECK_THROWS_AS(form_parameter_closure(R, omega, {1}), std::invalid_argument);

    // the one-term normal form fills out the same set
    CHECK(form_parameter_normal_form(R, omega, {2}) == two.elements);
    CHECK(form_parameter_normal_form(R, omega, {}) == empty.elements);
}

TEST_CASE("hyperbolic unitary model over F9") {
    auto f9 = with_frobenius_involution(ring_gf(3, 2));
    auto m = unitary_steinberg_model(2, f9, f9.one);
    CHECK(m.dim == 4);
    auto cls = length_classes(m.phi);
    for (size_t i = 0; i < m.phi.roots.size(); ++i) {
        if (cls[i] == LengthClass::Long) CHECK(m.subgroups[i].elements.size() == 3);
        else CHECK(m.subgroups[i].elements.size() == 9);
    }
    auto reports = verify_unitary_relations(m, f9.one);
    REQUIRE(reports.size() == 5);
    for (const auto& rep : reports) {
        INFO(rep.name << ": " << rep.witness);
        CHECK(rep.passed);
    }
    // E2 over F9 is exhaustive: all 81 parameter pairs
    CHECK(reports[1].name == "E2");
    CHECK(reports[1].witness == "checked 81 of 81 tuples");

    // unique factorization over a Borel subgroup
    auto en = enumerate_borel_sets(m.phi);
    CHECK(unique_factorization_check(m, en.set(0).positives));

    CHECK(core_subgroups_normal(m));

    // omega must satisfy omega omega* = 1: 1+i has norm 2
    CHECK_THROWS_AS(unitary_steinberg_model(2, f9, 4), std::invalid_argument);
    CHECK_THROWS_AS(unitary_steinberg_model(2, ring_zmod(5), ring_zmod(5).one),
                    std::invalid_argument);
}

TEST_CASE("unitary relations at rank 3 cover every index ordering") {
    // char 2 first, then char 3 so the signs in the relations are visible
    auto gf4 = with_frobenius_involution(f4());
    auto m = unitary_steinberg_model(3, gf4, gf4.one);
    auto f9 = with_frobenius_involution(ring_gf(3, 2));
    auto m9 = unitary_steinberg_model(3, f9, f9.one);
    for (const auto* model : {&m, &m9})
        for (const auto& rep : verify_unitary_relations(*model, model->ring.one)) {
            INFO(model->name << " " << rep.name << ": " << rep.witness);
            CHECK(rep.passed);
            CHECK(rep.witness != "checked 0 of 0 tuples");
        }
}

TEST_CASE("a smaller form parameter gives a valid model") {
    auto R = with_identity_involution(z4());
    auto m = unitary_steinberg_model(2, R, R.one, {R.zero});
    auto cls = length_classes(m.phi);
    for (size_t i = 0; i < m.phi.roots.size(); ++i)
        if (cls[i] == LengthClass::Long) CHECK(m.subgroups[i].elements.size() == 1);
    CHECK_THROWS_AS(unitary_steinberg_model(2, R, R.one, {R.one}), std::invalid_argument);
}

TEST_CASE("unitary model over a noncommutative ring") {
    auto R = ring_matrices(ring_zmod(2), 2);  // transpose involution
    auto m = unitary_steinberg_model(2, R, R.one);
    auto reports = verify_unitary_relations(m, R.one);
    for (const auto& rep : reports) {
        INFO(rep.name << ": " << rep.witness);
        CHECK(rep.passed);
    }
}

TEST_CASE("the degenerate unitary model satisfies the Chevalley relations") {
    // identity involution, omega = -1: the model coincides with the symplectic
    // elementary group up to a sign flip on some root lines
    auto R = with_identity_involution(ring_zmod(5));
    auto m = unitary_steinberg_model(2, R, R.n(R.one));
    auto scales = unitary_matches_chevalley(m);
    REQUIRE(scales.has_value());
    CHECK(scales->size() == m.phi.roots.size());
}

TEST_CASE("models with conjugate form parameters are isomorphic") {
    // omega' = omega mu^{-1} mu* with mu = x over F4: z_gamma(r) maps to
    // z'_gamma(r), z'_gamma(mu* r), z'_gamma(mu^{-1} r) by root shape
    auto gf4 = with_frobenius_involution(f4());
    int mu = 2;                              // x
    int mu_inv = 3, mu_star = gf4.star(mu);  // both equal x^2
    REQUIRE(gf4.m(mu, mu_inv) == gf4.one);
    int omega2 = gf4.m(gf4.m(gf4.one, mu_inv), mu_star);
    auto m1 = unitary_steinberg_model(2, gf4, gf4.one);
    auto m2 = unitary_steinberg_model(2, gf4, omega2);
    std::vector<RingMat> gens1, gens2;
    for (size_t idx = 0; idx < m1.phi.roots.size(); ++idx) {
        auto u = detail::classify_unitary_root(m1.phi.roots[idx]);
        for (const auto& [key, pos] : m1.subgroups[idx].by_param) {
            int r = key[0];
            int image = r;
            if (u.kind == detail::UnitaryIndices::ShortSum ||
                u.kind == detail::UnitaryIndices::Double)
                image = gf4.m(mu_star, r);
            else if (u.kind == detail::UnitaryIndices::ShortSumNeg ||
                     u.kind == detail::UnitaryIndices::DoubleNeg)
                image = gf4.m(mu_inv, r);
            gens1.push_back(m1.element((int)idx, {r}));
            gens2.push_back(m2.element((int)idx, {image}));
        }
    }
    CHECK(generators_extend_to_isomorphism(gf4, gens1, gf4, gens2));
}

TEST_CASE("odd unitary model over F4") {
    auto gf4 = with_frobenius_involution(f4());
    auto m = odd_unitary_model(2, gf4);
    CHECK(m.dim == 5);
    auto cls = length_classes(m.phi);
    for (size_t i = 0; i < m.phi.roots.size(); ++i) {
        INFO(i);
        if (cls[i] == LengthClass::Short) CHECK(m.subgroups[i].elements.size() == 8);
        else if (cls[i] == LengthClass::Double) CHECK(m.subgroups[i].elements.size() == 2);
        else CHECK(m.subgroups[i].elements.size() == 4);
    }
    auto reports = verify_odd_unitary_relations(m);
    REQUIRE(reports.size() == 5);
    for (const auto& rep : reports) {
        INFO(rep.name << ": " << rep.witness);
        CHECK(rep.passed);
    }
    // fattening absorbs the double-root subgroups into the short ones
    auto fat = fattened(m);
    for (size_t i = 0; i < m.phi.roots.size(); ++i) {
        if (cls[i] != LengthClass::Short) continue;
        CHECK(fat.subgroups[i].elements.size() == 8);
        int dbl = m.phi.index_of(Rat(2) * m.phi.roots[i]);
        REQUIRE(dbl >= 0);
        std::unordered_set<RingMat, RingMatHash> set(fat.subgroups[i].elements.begin(),
                                                     fat.subgroups[i].elements.end());
        for (const auto& z : m.subgroups[dbl].elements) CHECK(set.count(z));
    }
}

TEST_CASE("odd unitary relations at rank 3 cover every index ordering") {
    auto gf4 = with_frobenius_involution(f4());
    auto m = odd_unitary_model(3, gf4);
    auto f9 = with_frobenius_involution(ring_gf(3, 2));
    auto m9 = odd_unitary_model(3, f9);
    for (const auto* model : {&m, &m9})
        for (const auto& rep : verify_odd_unitary_relations(*model)) {
            INFO(model->name << " " << rep.name << ": " << rep.witness);
            CHECK(rep.passed);
            CHECK(rep.witness != "checked 0 of 0 tuples");
        }
}

TEST_CASE("long roots of G2 generate a copy of the A2 group") {
    auto R = f2();
    auto g2 = elementary_chevalley_model(build_classical("G", 2), R);
    auto a2 = elementary_chevalley_model(build_classical("A", 2), R);
    auto cls = length_classes(g2.phi);
    std::vector<int> longs;
    for (size_t i = 0; i < g2.phi.roots.size(); ++i)
        if (cls[i] == LengthClass::Long) longs.push_back((int)i);
    REQUIRE(longs.size() == 6);
    auto cl = subgroup_closure(R, detail::model_generators(g2, longs));
    REQUIRE(cl.complete);
    CHECK(cl.elements.size() == 168);

    // a basis of the long-root subsystem, and a basis of A2
    int d1 = -1, d2 = -1;
    for (int a : longs)
        for (int b : longs) {
            int s = g2.phi.index_of(g2.phi.roots[a] + g2.phi.roots[b]);
            if (s >= 0) {
                d1 = a;
                d2 = b;
            }
        }
    REQUIRE(d1 >= 0);
    auto t = model_chevalley_table(a2.phi);
    auto [al, be] = detail::rank2_simple_pair(t);
    std::vector<RingMat> gens1, gens2;
    for (auto [x, y] : std::vector<std::pair<int, int>>{
             {1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}) {
        int gi = g2.phi.index_of(Rat(x) * g2.phi.roots[d1] + Rat(y) * g2.phi.roots[d2]);
        int ai = a2.phi.index_of(Rat(x) * a2.phi.roots[al] + Rat(y) * a2.phi.roots[be]);
        REQUIRE(gi >= 0);
        REQUIRE(ai >= 0);
        gens1.push_back(g2.element(gi, {R.one}));
        gens2.push_back(a2.element(ai, {R.one}));
    }
    CHECK(generators_extend_to_isomorphism(R, gens1, R, gens2));
}

TEST_CASE("coarsening along a 2-good reduction") {
    auto a3 = elementary_chevalley_model(build_classical("A", 3), f2());
    auto red = reduction_A_to_A2(3, 1, 2);
    auto c = coarsened_grading(a3, red);
    CHECK(c.phi.roots.size() == red.induced.roots.size());
    // the coarsened grading is again strong
    for (const auto& rep : check_strong_all(c)) {
        INFO("borel " << rep.borel_id << " root " << rep.root);
        CHECK(rep.ok);
    }

    auto b3 = elementary_chevalley_model(build_classical("B", 3), f2());
    auto red_b = reduction_B_to_B2(3);
    REQUIRE_FALSE(red_b.kernel_roots.empty());
    auto cb = coarsened_grading(b3, red_b);  // throws if the grading breaks
    CHECK(cb.phi.roots.size() == red_b.induced.roots.size());
    for (const auto& sg : cb.subgroups) CHECK(sg.elements.size() > 1);

    // an orphan kernel subgroup is rejected by name
    auto crippled = b3;
    std::set<int> kernel(red_b.kernel_roots.begin(), red_b.kernel_roots.end());
    for (size_t i = 0; i < crippled.subgroups.size(); ++i) {
        if (kernel.count((int)i)) continue;
        crippled.subgroups[i].elements = {mat_identity(crippled.ring, crippled.dim)};
        crippled.subgroups[i].by_param.clear();
    }
    CHECK_THROWS_WITH(coarsened_grading(crippled, red_b),
                      Catch::Matchers::ContainsSubstring("not absorbed"));

    // a mismatched source is rejected
    CHECK_THROWS_AS(coarsened_grading(a3, red_b), std::invalid_argument);
}

TEST_CASE("core subgroups are normal in their Borel subgroups") {
    CHECK(core_subgroups_normal(elementary_chevalley_model(build_classical("A", 2), f3())));
    CHECK(core_subgroups_normal(elementary_chevalley_model(build_classical("B", 2), f2())));
}

TEST_CASE("unique factorization fails for a redundant factor list") {
    auto a2 = elementary_chevalley_model(build_classical("A", 2), f3());
    auto en = enumerate_borel_sets(a2.phi);
    auto pos = en.set(0).positives;
    CHECK(unique_factorization_check(a2, pos));
    // repeating a factor breaks injectivity
    std::vector<int> doubled = pos;
    doubled.push_back(pos[0]);
    CHECK_FALSE(unique_factorization_check(a2, pos, doubled));
}
