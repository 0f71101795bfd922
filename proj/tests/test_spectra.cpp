#include <catch2/catch_amalgamated.hpp>

#include "rootgraded/spectra.hpp"

using namespace rootgraded;

namespace {

RatMat line_projector(const RatVec& v) {
    Rat n2(0);
    for (const Rat& x : v) n2 += x * x;
    RatMat p(v.size(), RatVec(v.size(), Rat(0)));
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) p[i][j] = v[i] * v[j] / n2;
    return p;
}

std::vector<std::vector<int>> coordinate_subgroups_f3sq(const FiniteGroup& g) {
    // Z/3 x Z/3 with mixed-radix indexing: first factor {0,1,2}, second {0,3,6}.
    return {{0, 1, 2}, {0, 3, 6}};
}

}  // namespace

TEST_CASE("fixed subspaces of the regular representation") {
    RepresentationModel rep = regular_representation(symmetric_group(3));
    std::vector<int> whole(6);
    std::iota(whole.begin(), whole.end(), 0);

    SECTION("the trivial subgroup fixes everything") {
        auto fs = fixed_subspace(rep, {rep.group.id});
        CHECK(fs.basis.cols() == 6);
        CHECK(fs.orbits.size() == 6);
    }
    SECTION("the whole group fixes only the constants") {
        auto fs = fixed_subspace(rep, whole);
        REQUIRE(fs.basis.cols() == 1);
        for (int x = 0; x < 6; ++x)
            CHECK(fs.basis(x, 0) == Catch::Approx(1.0 / std::sqrt(6.0)).margin(1e-14));
    }
    SECTION("projectors are exact idempotents") {
        auto fs = fixed_subspace(rep, subgroup_closure_indices(rep.group, {1}));
        CHECK(rat_mul(fs.projector, fs.projector) == fs.projector);
        // symmetric
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = 0; j < 6; ++j) CHECK(fs.projector[i][j] == fs.projector[j][i]);
    }
    SECTION("sets that are not subgroups are rejected") {
        CHECK_THROWS_WITH(fixed_subspace(rep, {rep.group.id, 1, 2}),
                          Catch::Matchers::ContainsSubstring("not closed"));
    }
}

TEST_CASE("codistance of explicit subspaces") {
    SECTION("two orthogonal lines have codistance exactly 1/2") {
        std::vector<RatMat> p = {line_projector({Rat(1), Rat(0)}),
                                 line_projector({Rat(0), Rat(1)})};
        CHECK(codistance_attains(p, Rat(1, 2)));
        CHECK_FALSE(codistance_attains(p, Rat(3, 4)));
        std::vector<Eigen::MatrixXd> num = {to_eigen(p[0]), to_eigen(p[1])};
        CHECK(codistance(num) == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("a subspace against itself has codistance 1") {
        std::vector<RatMat> p = {line_projector({Rat(1), Rat(2)}),
                                 line_projector({Rat(1), Rat(2)})};
        CHECK(codistance_attains(p, Rat(1)));
    }
    SECTION("two lines at a rational angle: (1 + cos)/2") {
        // u = (1,0), w = (4/5,3/5): cos = 4/5, codistance = 9/10.
        std::vector<RatMat> p = {line_projector({Rat(1), Rat(0)}),
                                 line_projector({Rat(4, 5), Rat(3, 5)})};
        CHECK(codistance_attains(p, Rat(9, 10)));
    }
    SECTION("eigenvalue formula agrees with the alternating-maximization oracle") {
        detail::Rng rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            int dim = 3 + (int)(rng.next() % 3);
            int count = 2 + (int)(rng.next() % 3);
            std::vector<Eigen::MatrixXd> proj;
            for (int i = 0; i < count; ++i) {
                int sub = 1 + (int)(rng.next() % (dim - 1));
                Eigen::MatrixXd b(dim, sub);
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < sub; ++c) b(r, c) = rng.gaussian();
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
                Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, sub);
                proj.push_back(q * q.transpose());
            }
            double eig = codistance(proj);
            double alt = codistance_alternating(proj, 1000 + trial);
            CHECK(eig == Catch::Approx(alt).margin(1e-6));
        }
    }
    SECTION("two-subspace codistance equals (1 + orthogonality)/2") {
        detail::Rng rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            int dim = 4;
            auto random_line = [&]() {
                Eigen::VectorXd v(dim);
                for (int i = 0; i < dim; ++i) v(i) = rng.gaussian();
                v /= v.norm();
                return Eigen::MatrixXd(v * v.transpose());
            };
            Eigen::MatrixXd p1 = random_line(), p2 = random_line();
            double orth = std::sqrt(largest_eigenvalue(p1 * p2 * p1));
            std::vector<Eigen::MatrixXd> proj = {p1, p2};
            CHECK(codistance(proj) == Catch::Approx((1 + orth) / 2).margin(1e-10));
        }
    }
    SECTION("reduced orthogonality is symmetric under taking complements") {
        // Subspaces with trivial intersection: the orthogonality constants of the
        // pair and of the pair of complements coincide.
        detail::Rng rng(13);
        for (int trial = 0; trial < 20; ++trial) {
            int dim = 5;
            auto random_proj = [&](int sub) {
                Eigen::MatrixXd b(dim, sub);
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < sub; ++c) b(r, c) = rng.gaussian();
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
                Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, sub);
                return Eigen::MatrixXd(q * q.transpose());
            };
            Eigen::MatrixXd p1 = random_proj(2), p2 = random_proj(2);
            Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
            double a = reduced_orthogonality(p1, p2);
            double b = reduced_orthogonality(id - p1, id - p2);
            CHECK(a == Catch::Approx(b).margin(1e-9));
        }
    }
}

TEST_CASE("codistance between subgroups") {
    SECTION("coordinate subgroups of (Z/3)^2 have codistance exactly 1/2") {
        RepresentationModel rep = regular_representation(abelian_group({3, 3}));
        auto subs = coordinate_subgroups_f3sq(rep.group);
        auto gc = group_codistance(rep, subs);
        CHECK(gc.generates);
        CHECK(gc.value == Catch::Approx(0.5).margin(1e-10));
        CHECK(group_codistance_attains(rep, subs, Rat(1, 2)));
        CHECK_FALSE(group_codistance_attains(rep, subs, Rat(2, 3)));
    }
    SECTION("the two root subgroups of the Heisenberg group over Z/3") {
        RepresentationModel rep = regular_representation(heisenberg_group(3));
        std::vector<std::vector<int>> subs = {
            subgroup_closure_indices(rep.group, {1}),      // (1,0,0)
            subgroup_closure_indices(rep.group, {3})};     // (0,1,0)
        auto gc = group_codistance(rep, subs);
        CHECK(gc.generates);
        CHECK(gc.value <= 7.0 / 8.0 + 1e-10);
        // Central-quotient step: the images in (Z/3)^2 have codistance 1/2, the
        // smallest faithful central dimension is 3, so the bound is
        // 1 - (3-1)(1/2)/(2*3) = 5/6.
        CHECK(gc.value <= 5.0 / 6.0 + 1e-10);
        CHECK(block_codistance(rep, subs) == Catch::Approx(gc.value).margin(1e-8));
    }
    SECTION("k cyclic factors of an abelian group reach at most 1 - 1/k") {
        std::vector<std::vector<int>> moduli_sets = {
            {2, 2}, {3, 3}, {2, 3}, {2, 2, 2}, {3, 2, 2}};
        for (const auto& moduli : moduli_sets) {
            RepresentationModel rep = regular_representation(abelian_group(moduli));
            std::vector<std::vector<int>> subs;
            size_t stride = 1;
            for (int m : moduli) {
                std::vector<int> h;
                for (int t = 0; t < m; ++t) h.push_back((int)(t * stride));
                subs.push_back(h);
                stride *= m;
            }
            auto gc = group_codistance(rep, subs);
            CHECK(gc.generates);
            CHECK(gc.value <= 1.0 - 1.0 / (double)subs.size() + 1e-10);
        }
    }
    SECTION("non-generating families are flagged") {
        RepresentationModel rep = regular_representation(abelian_group({2, 2}));
        std::vector<std::vector<int>> subs = {{0, 1}, {0, 1}};
        auto gc = group_codistance(rep, subs);
        CHECK_FALSE(gc.generates);
        CHECK(gc.value == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("block decomposition cross-validates the regular representation") {
        RepresentationModel rep = regular_representation(symmetric_group(3));
        std::vector<std::vector<int>> subs = {
            subgroup_closure_indices(rep.group, {1}),
            subgroup_closure_indices(rep.group, {4})};
        auto gc = group_codistance(rep, subs);
        CHECK(block_codistance(rep, subs) == Catch::Approx(gc.value).margin(1e-8));
    }
}

TEST_CASE("invariant blocks of the regular representation") {
    RepresentationModel rep = regular_representation(symmetric_group(3));
    auto blocks = invariant_blocks(rep);
    std::vector<long> dims;
    for (const auto& b : blocks) {
        dims.push_back(b.cols());
        CHECK(irreducibility_index(rep, b) == Catch::Approx(1.0).margin(1e-6));
    }
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<long>{1, 1, 2, 2});
}

TEST_CASE("projection lemmas for rank-one operators") {
    auto rep = hs_lemma_suite(2026);
    INFO("product residual " << rep.product_residual);
    INFO("lipschitz margin " << rep.lipschitz_margin);
    INFO("codistance margin " << rep.codist_margin);
    CHECK(rep.product_residual <= 1e-12);
    CHECK(rep.lipschitz_margin >= -1e-12);
    CHECK(rep.codist_margin >= -1e-12);
    CHECK(rep.pv_residual_s3 <= 1e-9);
    CHECK(rep.pv_residual_heis <= 1e-9);
    CHECK(rep.ok);
    auto j = hs_report_json(rep);
    CHECK(j["ok"] == true);
    CHECK(j["pairs"] == 1000);
}

TEST_CASE("bound evaluators") {
    SECTION("exact spot values") {
        BoundInputs in;
        in.num = {{"N", Rat(6)}, {"roots", Rat(6)}};
        CHECK(evaluate_bound("borel-epsilon", in).exact == Rat(1, 32));

        in = {};
        in.num = {{"rho", Rat(1, 2)}};
        auto v = evaluate_bound("orthogonality", in);
        CHECK(v.exact == Rat(1));
        CHECK(v.value == Catch::Approx(1.0));

        in = {};
        in.num = {{"lambda1", Rat(4)}, {"p", Rat(1, 4)}, {"k", Rat(4)}};
        CHECK(evaluate_bound("spectral-criterion", in).exact == Rat(4, 3));

        in = {};
        in.num = {{"lambda1", Rat(4)}, {"eps", Rat(1, 32)}, {"A", Rat(5)}, {"B", Rat(5)},
                  {"k", Rat(4)}};
        CHECK(evaluate_bound("generalized-spectral-criterion", in).exact ==
              Rat(4) * Rat(1, 32) / (Rat(1, 32) * Rat(5) + Rat(5)));

        in = {};
        in.num = {{"c", Rat(2)}, {"k", Rat(2)}};
        CHECK(evaluate_bound("nilpotent-codistance", in).exact == Rat(7, 8));

        in = {};
        in.num = {{"m", Rat(3)}, {"eps", Rat(1, 2)}};
        CHECK(evaluate_bound("codistance-step", in).exact == Rat(5, 6));

        in = {};
        in.num = {{"a", Rat(1)}, {"b", Rat(1)}};
        CHECK(evaluate_bound("g2-supermultiplicativity", in).exact == Rat(1, 6));

        in = {};
        in.list = {Rat(1, 2), Rat(1, 3)};
        CHECK(evaluate_bound("bounded-generation", in).exact == Rat(1, 5));

        in = {};
        in.num = {{"kappa", Rat(1, 2)}, {"ratio", Rat(1, 3)}};
        CHECK(evaluate_bound("kazhdan-ratio-product", in).exact == Rat(1, 6));

        in = {};
        in.num = {{"eps", Rat(1)}, {"delta", Rat(10)}, {"sizeA", Rat(1)}, {"sizeB", Rat(1)}};
        CHECK(evaluate_bound("central-extension", in).exact == Rat(48, 25 * 97));
    }
    SECTION("table rows") {
        auto table = [](const std::string& label, long long d) {
            BoundInputs in;
            in.label = label;
            in.num = {{"d", Rat(Int(d))}};
            return evaluate_bound("steinberg-table", in).exact;
        };
        CHECK(table("A3", 2) == Rat(1, 5));
        CHECK(table("B3", 2) == Rat(1, 5));
        CHECK(table("D4", 3) == Rat(1, 7));
        CHECK(table("C3", 2) == Rat(1, 7));
        CHECK(table("B2", 3) == Rat(1, 8));
        CHECK(table("G2", 2) == Rat(1, 4));
        CHECK(table("E8", 2) == Rat(1, 2));
        CHECK(table("F4", 3) == Rat(1, 3));
    }
    SECTION("domain violations name the constraint") {
        BoundInputs in;
        in.num = {{"lambda1", Rat(4)}, {"p", Rat(1, 2)}, {"k", Rat(4)}};
        CHECK_THROWS_WITH(evaluate_bound("spectral-criterion", in),
                          Catch::Matchers::ContainsSubstring("p < lambda1 / (2k)"));
        in = {};
        in.num = {{"N", Rat(2)}, {"roots", Rat(6)}};
        CHECK_THROWS_WITH(evaluate_bound("borel-epsilon", in),
                          Catch::Matchers::ContainsSubstring("N > 2"));
        in = {};
        in.num = {{"rho", Rat(3, 2)}};
        CHECK_THROWS_WITH(evaluate_bound("orthogonality", in),
                          Catch::Matchers::ContainsSubstring("0 <= rho <= 1"));
        in = {};
        in.label = "B2";
        in.num = {{"d", Rat(1, 2)}};
        CHECK_THROWS_WITH(evaluate_bound("steinberg-table", in),
                          Catch::Matchers::ContainsSubstring("integer"));
        CHECK_THROWS_WITH(evaluate_bound("no-such-formula", {}),
                          Catch::Matchers::ContainsSubstring("unknown formula"));
    }
    SECTION("algebraic consistency between the formulas") {
        for (const auto& r : bound_consistency_reports()) {
            INFO(r.name << ": " << r.witness);
            CHECK(r.passed);
        }
    }
    SECTION("monotonicity on a grid") {
        // The orthogonality bound decreases in rho.
        for (int i = 0; i < 8; ++i) {
            BoundInputs lo, hi;
            lo.num = {{"rho", Rat(i, 9)}};
            hi.num = {{"rho", Rat(i + 1, 9)}};
            CHECK(evaluate_bound("orthogonality", lo).exact >
                  evaluate_bound("orthogonality", hi).exact);
        }
        // The generalized criterion increases in eps.
        for (int i = 1; i < 8; ++i) {
            BoundInputs lo, hi;
            lo.num = {{"lambda1", Rat(4)}, {"eps", Rat(i, 9)}, {"A", Rat(5)}, {"B", Rat(5)},
                      {"k", Rat(4)}};
            hi = lo;
            hi.num["eps"] = Rat(i + 1, 9);
            CHECK(evaluate_bound("generalized-spectral-criterion", lo).exact <
                  evaluate_bound("generalized-spectral-criterion", hi).exact);
        }
        // The table bound decreases in d for every family.
        for (const std::string& label : {"A3", "B3", "C3", "D4", "B2", "G2", "E6", "F4"}) {
            for (long long d = 1; d < 5; ++d) {
                BoundInputs lo, hi;
                lo.label = hi.label = label;
                lo.num = {{"d", Rat(Int(d))}};
                hi.num = {{"d", Rat(Int(d + 1))}};
                CHECK(evaluate_bound("steinberg-table", lo).exact >
                      evaluate_bound("steinberg-table", hi).exact);
            }
        }
    }
    SECTION("json report shape") {
        BoundInputs in;
        in.num = {{"rho", Rat(1, 2)}};
        auto j = bound_report_json("orthogonality", in, evaluate_bound("orthogonality", in));
        CHECK(j["formula"] == "orthogonality");
        CHECK(j["exact"] == "1");
        CHECK(j["value"] == 1.0);
    }
}

TEST_CASE("spectral pipeline over the smallest Chevalley group") {
    auto m = elementary_chevalley_model(build_classical("A", 2), ring_zmod(2));
    auto rep = spectral_pipeline(m, 1, 50);
    INFO(pipeline_report_json(rep).dump(2));
    CHECK(rep.ok);
    CHECK(rep.failure.empty());
    CHECK(rep.vertices == 6);
    CHECK(rep.degree == 4);
    CHECK(rep.group_order == 168);
    CHECK(rep.eps_phi == Rat(1, 32));
    CHECK(rep.corefree_bound == Rat(31, 64));
    CHECK(rep.angle_constant == Rat(2, 165));
    for (double v : rep.vertex_codistance) CHECK(v <= 0.5 + 1e-9);
    for (double v : rep.corefree_codistance) CHECK(v <= 31.0 / 64.0 + 1e-9);
    CHECK(rep.norm_margin >= -1e-9);
    CHECK(rep.angle_margin >= -1e-9);
    CHECK(rep.roottwo_min >= std::sqrt(2.0) - 1e-9);
    CHECK(rep.generator_min >= rep.generator_bound - 1e-9);
    CHECK(rep.generator_bound > 0);
}

TEST_CASE("codistance sweep output") {
    auto csv = codistance_sweep_csv(4);
    CHECK(csv.rfind("index,cos_angle,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
