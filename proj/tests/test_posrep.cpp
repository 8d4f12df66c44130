#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posaff/posrep.hpp"

using namespace posaff;

TEST_CASE("chevalley generators") {
    for (int n : {1, 2}) {
        JFormR Jf = JFormR::standard(n);
        for (int i = 1; i <= 2 * n - 1; ++i) {
            MatR X = chevalley_generator<Rat>(i, n);
            // Lie algebra: X^T J + J X = 0
            CHECK(MatR(X.transpose() * Jf.J + Jf.J * X).isZero(0));
            // nilpotent
            MatR P = X;
            bool vanished = false;
            for (int k = 1; k <= Jf.d; ++k) {
                if (P.isZero(0)) { vanished = true; break; }
                P = (P * X).eval();
            }
            CHECK((vanished || P.isZero(0)));
            // lower generators are in the Lie algebra too
            MatR Y = chevalley_generator_lower<Rat>(i, n);
            CHECK(MatR(Y.transpose() * Jf.J + Jf.J * Y).isZero(0));
        }
        CHECK_THROWS_AS(chevalley_generator<Rat>(2 * n, n), std::out_of_range);
    }
    // n=1, i=1: E_{1,2} + E_{2,3}
    MatR X = chevalley_generator<Rat>(1, 1);
    CHECK(X(0, 1) == Rat(1));
    CHECK(X(1, 2) == Rat(1));
    CHECK(X.cwiseAbs().sum() == Rat(2));
}

TEST_CASE("longest word") {
    CHECK(so_longest_word(1) == std::vector<int>{1});
    CHECK(so_longest_word(2).size() == 9);  // (2n-1)^2
    CHECK(so_longest_word(2) == std::vector<int>{1, 3, 2, 1, 3, 2, 1, 3, 2});
}

TEST_CASE("splitting identities") {
    for (int n : {1, 2}) {
        const int d = 4 * n - 1;
        Rat t(7, 3);
        for (int i = 1; i < 2 * n - 1; ++i) {  // commuting pairs
            MatR X = chevalley_generator<Rat>(i, n);
            MatR A = MatR::Zero(d, d), B = MatR::Zero(d, d);
            A(i - 1, i) = Rat(1);
            B(d - i - 1, d - i) = Rat(1);
            CHECK(nilpotent_exp<Rat>(X, t) ==
                  MatR(nilpotent_exp<Rat>(A, t) * nilpotent_exp<Rat>(B, t)));
        }
        // middle root: e^{t(E+F)} = e^{t/2 E} e^{t F} e^{t/2 E}
        const int i = 2 * n - 1;
        MatR X = chevalley_generator<Rat>(i, n);
        MatR E = MatR::Zero(d, d), F = MatR::Zero(d, d);
        E(i - 1, i) = Rat(1);          // E_{2n-1, 2n}
        F(d - i - 1, d - i) = Rat(1);  // E_{2n, 2n+1}
        MatR lhs = nilpotent_exp<Rat>(X, t);
        MatR rhs = nilpotent_exp<Rat>(E, t / 2) * nilpotent_exp<Rat>(F, t) *
                   nilpotent_exp<Rat>(E, t / 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("positive semigroup elements") {
    // n=1, t=1: exp(E12 + E23) = [[1,1,1/2],[0,1,1],[0,0,1]]
    MatR M = positive_semigroup_element<Rat>(1, {Rat(1)});
    MatR want(3, 3);
    want << Rat(1), Rat(1), Rat(1, 2), Rat(0), Rat(1), Rat(1), Rat(0), Rat(0), Rat(1);
    CHECK(M == want);
    CHECK(is_triangular_totally_positive<Rat>(M, TriangularSide::Upper));

    CHECK_THROWS_AS(positive_semigroup_element<Rat>(1, {Rat(-1)}), std::invalid_argument);
    CHECK_THROWS_AS(positive_semigroup_element<Rat>(1, {Rat(1), Rat(1)}), std::invalid_argument);

    CounterRng rng(19);
    for (int n : {1, 2}) {
        JFormR Jf = JFormR::standard(n);
        for (int trial = 0; trial < 5; ++trial) {
            auto ps = random_semigroup_params<Rat>(n, rng);
            MatR U = positive_semigroup_element<Rat>(n, ps);
            // exact SO membership
            CHECK(MatR(U.transpose() * Jf.J * U) == Jf.J);
            CHECK(det<Rat>(U) == Rat(1));
            CHECK(is_triangular_totally_positive<Rat>(U, TriangularSide::Upper));
            // lower side
            auto ps2 = random_semigroup_params<Rat>(n, rng);
            MatR L = positive_semigroup_element<Rat>(n, ps2, TriangularSide::Lower);
            CHECK(MatR(L.transpose() * Jf.J * L) == Jf.J);
            CHECK(is_triangular_totally_positive<Rat>(L, TriangularSide::Lower));
            // full factorization is totally positive with middle entry >= 1
            MatR Mfull = L * U;
            CHECK(is_totally_positive<Rat>(Mfull));
            CHECK(Mfull(2 * n - 1, 2 * n - 1) >= Rat(1));
            // product of two TP completions stays TP (semigroup)
            if (trial == 0) {
                auto ps3 = random_semigroup_params<Rat>(n, rng);
                auto ps4 = random_semigroup_params<Rat>(n, rng);
                MatR M2 = positive_semigroup_element<Rat>(n, ps3, TriangularSide::Lower) *
                          positive_semigroup_element<Rat>(n, ps4);
                CHECK(is_totally_positive<Rat>((Mfull * M2).eval()));
            }
        }
    }
}

TEST_CASE("sym representation") {
    SL2 g;
    g << 3.0, 0.0, 0.0, 1.0 / 3.0;
    for (int n : {1, 2}) {
        MatD M = sym_matrix(g, n);
        const int d = 4 * n - 1;
        // diagonal weights lambda^(m - 2k)
        for (int k = 0; k < d; ++k)
            CHECK(M(k, k) == doctest::Approx(std::pow(3.0, (d - 1) - 2 * k)));
        CHECK(sym_matrix(SL2::Identity(), n).isApprox(MatD::Identity(d, d)));
        // multiplicativity and inverses
        CounterRng rng(101 + n);
        for (int trial = 0; trial < 20; ++trial) {
            SL2 a;
            a << rng.uniform(0.8, 1.3), rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9), 0;
            a(1, 1) = (1.0 + a(0, 1) * a(1, 0)) / a(0, 0);  // complete to det 1
            SL2 b;
            b << 1, rng.uniform(-1, 1), rng.uniform(-1, 1), 0;
            b(1, 1) = 1.0 + b(0, 1) * b(1, 0);
            CHECK(sym_matrix(SL2(a * b), n).isApprox(sym_matrix(a, n) * sym_matrix(b, n), 1e-9));
            CHECK((sym_matrix(a, n) * sym_matrix(sl2_inverse(a), n) - MatD::Identity(d, d))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12 * std::max(1.0, inf_norm(sym_matrix(a, n))));
            // J preservation
            CHECK_NOTHROW(sym_representation(a, n));
        }
    }
    // sigma(diag(2,1/2)) has eigenvalues 4, 1, 1/4 at n=1
    SL2 h;
    h << 2, 0, 0, 0.5;
    EigenReal e = eigen_real(sym_matrix(h, 1));
    CHECK(e.values[0] == doctest::Approx(4));
    CHECK(e.values[1] == doctest::Approx(1));
    CHECK(e.values[2] == doctest::Approx(0.25));
}

TEST_CASE("veronese flags: isotropy, equivariance, positivity") {
    ToleranceContext tol;
    for (int n : {1, 2}) {
        JFormD Jf = JFormD::standard(n);
        CounterRng rng(7 + n);
        // isotropy at random points
        for (int trial = 0; trial < 20; ++trial) {
            CirclePoint x = CirclePoint::from_t(std::tan(rng.uniform(-1.5, 1.5)));
            CHECK(is_isotropic_flag<double>(veronese_flag(x, n), Jf, tol));
        }
        CHECK(is_isotropic_flag<double>(veronese_flag(CirclePoint::infinity(), n), Jf, tol));
        CHECK(is_isotropic_flag<double>(veronese_flag(CirclePoint::from_t(0), n), Jf, tol));

        // equivariance: xi(g x) = sigma(g) xi(x) as oriented flags
        for (int trial = 0; trial < 30; ++trial) {
            SL2 a;
            a << rng.uniform(0.7, 1.5), rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9), 0;
            a(1, 1) = (1.0 + a(0, 1) * a(1, 0)) / a(0, 0);
            CirclePoint x = CirclePoint::from_t(std::tan(rng.uniform(-1.5, 1.5)));
            FlagD lhs = veronese_flag(mobius(a, x), n);
            FlagD rhs = FlagD::from_basis(sym_matrix(a, n) * veronese_flag(x, n).B);
            CHECK((lhs.B - rhs.B).cwiseAbs().maxCoeff() < 1e-7);
        }

        // ccw triples and quadruples map to positive tuples
        for (int trial = 0; trial < 20; ++trial) {
            double t1 = rng.uniform(0, M_PI), t2 = rng.uniform(0, M_PI), t3 = rng.uniform(0, M_PI),
                   t4 = rng.uniform(0, M_PI);
            std::array<double, 4> taus{t1, t2, t3, t4};
            std::sort(taus.begin(), taus.end());
            if (taus[1] - taus[0] < 1e-3 || taus[2] - taus[1] < 1e-3 ||
                taus[3] - taus[2] < 1e-3)
                continue;
            std::array<CirclePoint, 4> pts;
            for (int i = 0; i < 4; ++i)
                pts[i] = CirclePoint(std::cos(M_PI - taus[i]), std::sin(M_PI - taus[i]));
            REQUIRE(ccw(pts[0], pts[1], pts[2]));
            std::vector<FlagD> flags;
            for (const auto& p : pts) flags.push_back(veronese_flag(p, n));
            CHECK(is_positive_tuple<double>(flags, tol));
        }
        // nested Veronese quadruple at t = 0 < 1 < 2 < 3
        std::vector<FlagD> nested;
        for (double t : {0.0, 1.0, 2.0, 3.0}) nested.push_back(veronese_flag(CirclePoint::from_t(t), n));
        CHECK(closure_nested<double>(nested[0], nested[1], nested[2], nested[3], tol));
    }
}

TEST_CASE("build_representation certifies generators") {
    SchottkyData S = bundled_rank2();
    for (int n : {1, 2}) {
        Representation rep = build_representation(S, n);
        CHECK(rep.N == 2);
        for (int i = 0; i < rep.N; ++i) {
            double scale = std::max(1.0, inf_norm(rep.img[i].M));
            CHECK(rep.img[i].form_residual < 1e-10 * scale * scale);
            CHECK((rep.img[i].M * rep.img_inv[i].M - MatD::Identity(rep.dim(), rep.dim()))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10 * scale);
        }
        // word images multiply
        Word w({1, 2, -1});
        MatD direct = rep.word_image(w);
        MatD manual = rep.img[0].M * rep.img[1].M * rep.img_inv[0].M;
        CHECK(direct.isApprox(manual, 1e-12));
    }
    // diagonal rank-1 example: diagonal images
    Representation rep1 = build_representation(bundled_rank1(), 1);
    CHECK(rep1.img[0].M.isApprox(MatD(rep1.img[0].M.diagonal().asDiagonal()), 1e-12));
}

TEST_CASE("boundary map and flag ping-pong") {
    SchottkyData S = bundled_rank2();
    ArcSystem A(S);
    for (int n : {1, 2}) {
        Representation rep = build_representation(S, n);
        BoundaryMap bmap = build_boundary_map(rep, S, A);
        JFormD Jf = JFormD::standard(n);
        // cached flags isotropic
        for (int i = 1; i <= S.N; ++i)
            for (bool plus : {false, true}) {
                WallRef w{i, plus};
                CHECK(is_isotropic_flag<double>(bmap.wall_flag_plus(w), Jf));
                CHECK(is_isotropic_flag<double>(bmap.wall_flag_minus(w), Jf));
            }
        // equivariance residual on random (gamma, point) pairs
        CounterRng rng(5 + n);
        auto words = enumerate_words(2, 2);
        for (int trial = 0; trial < 25; ++trial) {
            const Word& w = words[rng.uniform_int(0, long(words.size()) - 1)];
            CirclePoint x = CirclePoint::from_t(std::tan(rng.uniform(-1.5, 1.5)));
            SL2 m = S.word_matrix(w);
            FlagD lhs = bmap.flag(mobius(m, x));
            FlagD rhs = FlagD::from_basis(rep.word_image(w) * bmap.flag(x).B);
            CHECK((lhs.B - rhs.B).cwiseAbs().maxCoeff() < 1e-7);
        }
        // cyclic order of the arc-endpoint flags matches the circle order
        std::vector<std::pair<double, FlagD>> endpoint_flags;
        for (int i = 1; i <= S.N; ++i)
            for (bool plus : {false, true}) {
                WallRef w{i, plus};
                endpoint_flags.push_back({A.endpoint_minus(w).tau(), bmap.wall_flag_minus(w)});
                endpoint_flags.push_back({A.endpoint_plus(w).tau(), bmap.wall_flag_plus(w)});
            }
        std::sort(endpoint_flags.begin(), endpoint_flags.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<FlagD> ordered;
        for (auto& [tau, f] : endpoint_flags) ordered.push_back(f);
        CHECK(is_positive_tuple<double>(ordered));

        // flag-level ping-pong report
        FlagPingPongReport fpp = verify_flag_ping_pong(rep, bmap, A);
        for (const auto& v : fpp.violations) MESSAGE(v);
        CHECK(fpp.ok);
        CHECK(fpp.checks.size() == 2u * S.N + 2u * S.N * (2u * S.N - 1));

        // translated wall flags resolve equivariantly and memoize
        Word gamma({1, 2});
        auto [fp, fm] = bmap.translated_wall_flags(gamma, WallRef{1, false});
        FlagD expect = FlagD::from_basis(rep.word_image(gamma) * bmap.wall_flag_plus(WallRef{1, false}).B);
        CHECK(flags_equal(fp, expect, ToleranceContext(1e-9, 1e-6)));
        auto [fp2, fm2] = bmap.translated_wall_flags(gamma, WallRef{1, false});
        CHECK(flags_equal(fp, fp2));
    }
}

TEST_CASE("intentionally corrupted ping-pong fails") {
    SchottkyData S = bundled_rank2();
    std::swap(S.Iplus[0], S.Iplus[1]);  // swapped interval labels
    ArcSystem A(S);
    // ping-pong at the circle level already fails
    CHECK_FALSE(verify_ping_pong(S).ok);
    // the flag-level report also names violations when forced through
    Representation rep;
    rep.n = 1;
    rep.N = S.N;
    SchottkyData good = bundled_rank2();
    for (int i = 0; i < S.N; ++i) {
        rep.img.push_back(sym_representation(good.gens[i], 1));
        rep.img_inv.push_back(sym_representation(sl2_inverse(good.gens[i]), 1));
    }
    BoundaryMap bmap(rep, S, A);
    FlagPingPongReport fpp = verify_flag_ping_pong(rep, bmap, A);
    CHECK_FALSE(fpp.ok);
    CHECK(!fpp.violations.empty());
}
