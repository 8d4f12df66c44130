#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posaff/flags.hpp"

using namespace posaff;

namespace {

template <class T>
std::pair<OrientedFlag<T>, OrientedFlag<T>> standard_pair(int d) {
    return {OrientedFlag<T>::ascending(d), descending_flag<T>(identity<T>(d))};
}

// unipotent J-preserving map: exp(t X) with X = E_{1,2} + E_{d-1,d}
MatR so_random_exact(const JFormR& Jf, CounterRng& rng) {
    const int d = Jf.d;
    MatR X = MatR::Zero(d, d);
    X(0, 1) = Rat(1);
    X(d - 2, d - 1) = Rat(1);
    Rat t = rng.rat();
    MatR M = identity<Rat>(d) + t * X + (t * t / 2) * (X * X);
    return M;
}

}  // namespace

TEST_CASE("JForm standard") {
    for (int n : {1, 2}) {
        JFormR Jf = JFormR::standard(n);
        const int d = 4 * n - 1;
        CHECK(Jf.J == MatR(Jf.J.transpose()));
        CHECK(Jf.J(2 * n - 1, 2 * n - 1) == Rat(1));  // middle entry +1
        CHECK(Jf.J(0, d - 1) == Rat(-1));
        EigenReal e = eigen_real(to_float(Jf.J));
        int pos = 0;
        for (double v : e.values) pos += v > 0 ? 1 : 0;
        CHECK(pos == 2 * n);  // signature (2n, 2n-1)
    }
}

TEST_CASE("opposite basis") {
    MatR E = identity<Rat>(3);
    MatR Op = opposite_basis<Rat>(E);
    CHECK(Op.col(0) == E.col(2));
    CHECK(Op.col(1) == VecR(-E.col(1)));
    CHECK(Op.col(2) == E.col(0));
    CHECK(opposite_basis<Rat>(Op) == E);  // involutive in odd dimension
    JFormR Jf = JFormR::standard(1);
    CHECK(MatR(Op.transpose() * Jf.J * Op) == Jf.J);
    JFormR Jf2 = JFormR::standard(2);
    MatR Op2 = opposite_basis<Rat>(identity<Rat>(7));
    CHECK(MatR(Op2.transpose() * Jf2.J * Op2) == Jf2.J);
}

TEST_CASE("canonical form and flag equality") {
    CounterRng rng(11);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 15; ++trial) {
        MatR B = random_matrix<Rat>(4, rng);
        if (det<Rat>(B) == 0) continue;
        ++done;
        MatR U = identity<Rat>(4);
        for (int i = 0; i < 4; ++i) {
            U(i, i) = rng.positive_rat();
            for (int j = i + 1; j < 4; ++j) U(i, j) = rng.rat();
        }
        auto F = FlagR::from_basis(B);
        auto G = FlagR::from_basis((B * U).eval());
        CHECK(flags_equal(F, G));
        MatR B2 = B;
        B2.col(1) *= Rat(-1);
        CHECK_FALSE(flags_equal(F, FlagR::from_basis(B2)));
    }
}

TEST_CASE("oriented transversality") {
    auto [F, G] = standard_pair<Rat>(3);
    CHECK(is_oriented_transverse<Rat>(F, G));
    CHECK_FALSE(is_oriented_transverse<Rat>(F, F));
    MatR Op = opposite_basis<Rat>(identity<Rat>(3));
    Op.col(1) *= Rat(-1);
    CHECK_FALSE(is_oriented_transverse<Rat>(F, FlagR::from_basis(Op)));
    CounterRng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        MatR A = random_matrix<Rat>(3, rng), B = random_matrix<Rat>(3, rng);
        if (det<Rat>(A) == 0 || det<Rat>(B) == 0) continue;
        auto Fa = FlagR::from_basis(A);
        auto Fb = FlagR::from_basis(B);
        CHECK(is_oriented_transverse<Rat>(Fa, Fb) == is_oriented_transverse<Rat>(Fb, Fa));
    }
}

TEST_CASE("positive triples from lower unipotent TP matrices") {
    for (int d : {3, 7}) {
        auto [F, G] = standard_pair<Rat>(d);
        CounterRng rng(17 + d);
        for (int trial = 0; trial < (d == 3 ? 20 : 4); ++trial) {
            MatR U = random_unipotent_lower_tp<Rat>(d, rng);
            auto X = FlagR::from_basis(U);
            CHECK(is_positive_triple<Rat>(F, X, G));
            CHECK_FALSE(is_positive_triple<Rat>(F, G, X));
            CHECK(is_positive_triple<Rat>(G, F, X));  // cyclic invariance
            CHECK(is_positive_triple<Rat>(X, G, F));
            CHECK_FALSE(is_positive_triple<Rat>(G, X, F));  // antisymmetry
        }
    }
}

TEST_CASE("SL-invariance of triple positivity") {
    auto [F, G] = standard_pair<Rat>(3);
    JFormR Jf = JFormR::standard(1);
    CounterRng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        MatR U = random_unipotent_lower_tp<Rat>(3, rng);
        auto X = FlagR::from_basis(U);
        MatR g = so_random_exact(Jf, rng);
        auto gF = FlagR::from_basis((g * F.B).eval());
        auto gX = FlagR::from_basis((g * U).eval());
        auto gG = FlagR::from_basis((g * G.B).eval());
        CHECK(is_positive_triple<Rat>(gF, gX, gG) == is_positive_triple<Rat>(F, X, G));
    }
}

TEST_CASE("tuples, intervals, closure") {
    auto [F, G] = standard_pair<Rat>(3);
    auto X1 = random_flag_in_interval<Rat>(F, G, 41);
    auto X2 = random_flag_in_interval<Rat>(X1, G, 42);
    CHECK(in_interval<Rat>(X1, F, G));
    CHECK(in_interval<Rat>(X2, X1, G));
    CHECK(is_positive_tuple<Rat>({F, X1, X2, G}));
    CHECK(closure_nested<Rat>(F, X1, X2, G));
    CHECK_FALSE(is_positive_tuple<Rat>({F, X2, X1, G}));
    for (std::uint64_t s = 0; s < 8; ++s) {
        auto A = random_flag_in_interval<Rat>(F, G, 100 + s);
        auto B = random_flag_in_interval<Rat>(A, G, 200 + s);
        bool ab = is_positive_tuple<Rat>({F, A, B, G});
        bool ba = is_positive_tuple<Rat>({F, B, A, G});
        CHECK(ab != ba);  // exactly one cyclic arrangement
    }
    CHECK_FALSE(closure_nested<Rat>(F, X1, X2, F));
    CHECK_THROWS_AS(in_interval<Rat>(X1, F, F), NonTransverseError);
    CHECK_FALSE(in_interval<Rat>(X1, G, F));
}

TEST_CASE("transitivity on nested interval chains") {
    auto [F, G] = standard_pair<Rat>(3);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto A = random_flag_in_interval<Rat>(F, G, 300 + s);
        auto B = random_flag_in_interval<Rat>(A, G, 400 + s);
        auto C = random_flag_in_interval<Rat>(B, G, 500 + s);
        REQUIRE(is_positive_triple<Rat>(F, A, B));
        REQUIRE(is_positive_triple<Rat>(F, B, C));
        CHECK(is_positive_triple<Rat>(F, A, C));
    }
}

TEST_CASE("isotropic flags") {
    JFormR Jf = JFormR::standard(1);
    auto F = FlagR::ascending(3);
    CHECK(is_isotropic_flag<Rat>(F, Jf));
    MatR B = identity<Rat>(3);
    B.col(0) *= Rat(-1);
    CHECK_FALSE(is_isotropic_flag<Rat>(FlagR::from_basis(B), Jf));
    MatR B2 = identity<Rat>(3);
    B2.col(0) *= Rat(-1);
    B2.col(2) *= Rat(-1);
    CHECK(is_isotropic_flag<Rat>(FlagR::from_basis(B2), Jf));
    MatR B3 = identity<Rat>(3);
    B3(2, 0) = Rat(1);  // first line (1,0,1): (1,0,1).(1,0,1) = -2, not null
    CHECK_FALSE(is_isotropic_flag<Rat>(FlagR::from_basis(B3), Jf));
    CHECK(is_isotropic_flag<Rat>(descending_flag<Rat>(identity<Rat>(3)), Jf));
    JFormR J2 = JFormR::standard(2);
    CHECK(is_isotropic_flag<Rat>(FlagR::ascending(7), J2));
    CHECK(is_isotropic_flag<Rat>(descending_flag<Rat>(identity<Rat>(7)), J2));
}

TEST_CASE("adapted basis and adapted J-basis") {
    JFormR Jf = JFormR::standard(1);
    auto [F, G] = standard_pair<Rat>(3);
    JBasisPair<Rat> jb = adapted_J_basis<Rat>(F, G, Jf);
    CHECK(jb.E == identity<Rat>(3));
    CHECK(flags_equal(jb.ascending, F));
    CHECK(flags_equal(jb.descending, G));

    CounterRng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        MatR g = so_random_exact(Jf, rng);
        auto gF = FlagR::from_basis((g * F.B).eval());
        auto gG = FlagR::from_basis((g * G.B).eval());
        JBasisPair<Rat> jb2 = adapted_J_basis<Rat>(gF, gG, Jf);
        CHECK(MatR(jb2.E.transpose() * Jf.J * jb2.E) == Jf.J);
        CHECK(flags_equal(jb2.ascending, gF));
        CHECK(flags_equal(jb2.descending, gG));
    }

    // non-isotropic input: first line e1 + e2 is not null, so the Gram
    // cannot be rescaled to J, though the pair is oriented transverse
    MatR C = identity<Rat>(3);
    C(1, 0) = Rat(1);
    auto H = FlagR::from_basis(C);
    REQUIRE(is_oriented_transverse<Rat>(H, G));
    CHECK_THROWS_AS(adapted_J_basis<Rat>(H, G, Jf), NotIsotropicError);
}

TEST_CASE("neutral vector") {
    JFormR Jf = JFormR::standard(1);
    auto [F, G] = standard_pair<Rat>(3);
    VecR x0 = neutral_vector<Rat>(F, G, Jf);
    VecR e2(3);
    e2 << Rat(0), Rat(1), Rat(0);
    CHECK(x0 == e2);
    CHECK(Rat(x0.dot(Jf.J * x0)) == Rat(1));

    MatR Bf = identity<Rat>(3);
    Bf.col(0) *= Rat(-1);
    Bf.col(2) *= Rat(-1);
    auto F2 = FlagR::from_basis(Bf);
    MatR Bg = opposite_basis<Rat>(identity<Rat>(3));
    Bg.col(0) *= Rat(-1);
    Bg.col(2) *= Rat(-1);
    auto G2 = FlagR::from_basis(Bg);
    CHECK(neutral_vector<Rat>(F2, G2, Jf) == x0);  // orientation lifts do not matter

    CHECK(Rat(x0.dot(Jf.J * F.B.col(0))) == Rat(0));
    CHECK(Rat(x0.dot(Jf.J * G.B.col(0))) == Rat(0));

    CounterRng rng(77);
    MatR g = so_random_exact(Jf, rng);
    auto gF = FlagR::from_basis((g * F.B).eval());
    auto gG = FlagR::from_basis((g * G.B).eval());
    CHECK(neutral_vector<Rat>(gF, gG, Jf) == VecR(g * x0));
}

TEST_CASE("neutral functional") {
    JFormR Jf = JFormR::standard(1);
    auto [X, Y] = standard_pair<Rat>(3);
    VecR e2(3);
    e2 << Rat(0), Rat(1), Rat(0);
    CHECK(neutral_functional<Rat>(X, Y, e2, Jf) == Rat(1));
    VecR v(3);
    v << Rat(2), Rat(0), Rat(-5);
    CHECK(neutral_functional<Rat>(X, Y, v, Jf) == Rat(0));
    CounterRng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        VecR u(3), w(3);
        u << rng.rat(), rng.rat(), rng.rat();
        w << rng.rat(), rng.rat(), rng.rat();
        Rat a = rng.rat(), b = rng.rat();
        Rat lhs = neutral_functional<Rat>(X, Y, (a * u + b * w).eval(), Jf);
        Rat rhs =
            a * neutral_functional<Rat>(X, Y, u, Jf) + b * neutral_functional<Rat>(X, Y, w, Jf);
        CHECK(lhs == rhs);
    }
    // X transverse but not isotropic is allowed
    MatR C = identity<Rat>(3);
    C(1, 0) = Rat(1);
    auto Xn = FlagR::from_basis(C);
    CHECK_NOTHROW(neutral_functional<Rat>(Xn, Y, e2, Jf));
}

TEST_CASE("random_flag_in_interval properties") {
    auto [F, G] = standard_pair<Rat>(3);
    for (std::uint64_t s = 1; s <= 10; ++s) {
        auto X = random_flag_in_interval<Rat>(F, G, s);
        CHECK(in_interval<Rat>(X, F, G));
    }
    auto A = random_flag_in_interval<Rat>(F, G, 99);
    auto B = random_flag_in_interval<Rat>(F, G, 99);
    CHECK(flags_equal(A, B));  // seed determinism
    auto [F7, G7] = standard_pair<Rat>(7);
    auto X7 = random_flag_in_interval<Rat>(F7, G7, 5);
    CHECK(in_interval<Rat>(X7, F7, G7));
}
