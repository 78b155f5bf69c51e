#include <gtest/gtest.h>

#include <random>

#include "confstab/degree_calculus.hpp"

using namespace confstab;
using namespace confstab::degree;

namespace {

Matrix2 integer_matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return Matrix2{{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}};
}

// Naive valuation on machine integers, x != 0.
int naive_val(std::int64_t p, std::int64_t x) {
    int e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

}  // namespace

TEST(Manifold, OddClosedNeedsZeroChi) {
    EXPECT_THROW(ManifoldDescriptor(3, 2, true, true), InvalidArgument);
    EXPECT_NO_THROW(ManifoldDescriptor(3, 2, false, true));
    EXPECT_THROW(ManifoldDescriptor(0, 0, true, true), InvalidArgument);
    EXPECT_EQ(ManifoldDescriptor::sphere(4).chi(), 2);
    EXPECT_EQ(ManifoldDescriptor::sphere(5).chi(), 0);
}

TEST(Intersection, Examples) {
    EXPECT_EQ(intersection_matrix(2, 2), integer_matrix(0, 1, 1, 2));
    EXPECT_EQ(intersection_matrix(3, 0), integer_matrix(0, 1, -1, 0));
}

TEST(Intersection, SectionPairingIsDegree) {
    for (int chi = -6; chi <= 6; chi += 2) {
        const auto m = intersection_matrix(2, chi);
        for (int k = -10; k <= 10; ++k) {
            EXPECT_EQ(pairing(section_class(k, chi), m, {0, 1}), Rational(k));
            const auto c = section_class(k, chi);
            EXPECT_EQ(degree_of({Rational(c[0]), Rational(c[1])}, chi), Rational(k));
        }
    }
    EXPECT_THROW(degree_of({Rational(1), Rational(2)}, 0), InvalidArgument);
}

TEST(Endo, Examples) {
    // r = -1 about chi/2 swaps k and chi - k
    for (int chi : {-4, 0, 2, 6}) {
        const auto e = endo_matrix(-1, Rational(chi, 2), chi);
        for (int k = 0; k < 10; ++k) EXPECT_EQ(e.action.apply(k), chi - k);
    }
    const auto id = endo_matrix(1, Rational(3, 2), 3);
    EXPECT_EQ(id.matrix, integer_matrix(1, 0, 0, 1));
    EXPECT_EQ(id.action.apply(17), 17);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(AffineDegreeAction(2, k - 1).apply(k), k + 1);
}

TEST(Endo, MatrixActsOnSectionClasses) {
    // M (k - chi, 1)^T is the section class of r(k - d) + d
    for (int chi = -4; chi <= 4; chi += 2) {
        for (int r = -3; r <= 4; ++r) {
            const Rational d(chi, 2);
            const auto e = endo_matrix(r, d, chi);
            for (int k = -5; k <= 5; ++k) {
                const auto u = section_class(k, chi);
                const std::array<Rational, 2> image{e.matrix[0][0] * u[0] + e.matrix[0][1] * u[1],
                                                   e.matrix[1][0] * u[0] + e.matrix[1][1] * u[1]};
                ASSERT_EQ(degree_of(image, chi), e.action.apply_rational(k));
            }
        }
    }
}

TEST(Endo, CompositionLaw) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> r_dist(-50, 50), chi_dist(-30, 30), d_dist(-40, 40);
    for (int it = 0; it < 1000; ++it) {
        const Integer r1 = r_dist(rng), r2 = r_dist(rng), chi = chi_dist(rng);
        const Rational d(d_dist(rng), 2);
        const auto a = endo_matrix(r1, d, chi), b = endo_matrix(r2, d, chi);
        ASSERT_EQ(multiply(a.matrix, b.matrix), endo_matrix(r1 * r2, d, chi).matrix);
        ASSERT_EQ(a.action.compose(b.action), AffineDegreeAction(r1 * r2, d));
        const Rational k(d_dist(rng));
        ASSERT_EQ(a.action.apply_rational(b.action.apply_rational(k)), a.action.compose(b.action).apply_rational(k));
    }
}

TEST(Endo, Involution) {
    for (int chi = -10; chi <= 10; ++chi) {
        const AffineDegreeAction flip(-1, Rational(chi, 2));
        for (int k = -20; k <= 20; ++k) EXPECT_EQ(flip.apply(flip.apply(k)), k);
    }
}

TEST(Endo, InvalidActions) {
    EXPECT_THROW(AffineDegreeAction(2, Rational(1, 3)), InvalidArgument);
    EXPECT_THROW(AffineDegreeAction(2, Rational(1, 2)).apply(1), InvalidArgument);
    EXPECT_EQ(AffineDegreeAction(3, Rational(1, 2)).apply(2), 5);
    EXPECT_THROW(AffineDegreeAction(2, 1).compose(AffineDegreeAction(2, 0)), InvalidArgument);
}

TEST(Lift, Examples) {
    EXPECT_EQ(lift_obstruction(1, 2), 0);
    EXPECT_EQ(lift_obstruction(0, 2), -2);
    EXPECT_EQ(lift_obstruction(3, 0), 6);
}

TEST(Actions, Families) {
    const ManifoldDescriptor s3 = ManifoldDescriptor::sphere(3);
    const auto odd = allowed_actions(s3, PrimeSet::all_except({2}));
    EXPECT_FALSE(odd.fixed_degree);
    // inverting every odd prime leaves the powers of 2 as units
    EXPECT_TRUE(odd.admits(AffineDegreeAction(2, 4)));
    EXPECT_TRUE(odd.admits(AffineDegreeAction(-8, 4)));
    EXPECT_FALSE(odd.admits(AffineDegreeAction(3, 4)));

    const auto even = allowed_actions(ManifoldDescriptor::sphere(2), PrimeSet::of({3}));
    ASSERT_TRUE(even.fixed_degree);
    EXPECT_EQ(*even.fixed_degree, Rational(1));
    EXPECT_TRUE(even.admits(AffineDegreeAction(2, 1)));
    EXPECT_FALSE(even.admits(AffineDegreeAction(2, 0)));
    EXPECT_FALSE(even.admits(AffineDegreeAction(3, 1)));

    EXPECT_THROW(allowed_actions(ManifoldDescriptor(2, 1, true, false), PrimeSet::all()), NotAvailable);
    EXPECT_NO_THROW(allowed_actions(ManifoldDescriptor(2, 1, true, false), PrimeSet::of({3})));
    EXPECT_THROW(allowed_actions(ManifoldDescriptor(2, 1, false, false), PrimeSet::of({3})), Unsupported);
}

TEST(Actions, Units) {
    EXPECT_TRUE(is_unit(PrimeSet::of({3}), 4));
    EXPECT_FALSE(is_unit(PrimeSet::of({3}), 6));
    EXPECT_TRUE(is_unit(PrimeSet::empty(), 6));
    EXPECT_FALSE(is_unit(PrimeSet::empty(), 0));
    EXPECT_TRUE(is_unit(PrimeSet::all(), -1));
    EXPECT_FALSE(is_unit(PrimeSet::all(), 2));
    EXPECT_TRUE(is_unit(PrimeSet::all_except({2}), 8));
}

TEST(Parity, HopfInvariantOne) {
    EXPECT_TRUE(parity_change_possible(7));
    EXPECT_FALSE(parity_change_possible(5));
    EXPECT_TRUE(parity_change_possible(1));
    EXPECT_TRUE(parity_change_possible(3));
    EXPECT_FALSE(parity_change_possible(9));
    EXPECT_THROW(parity_change_possible(4), InvalidArgument);
}

TEST(Parity, SphereActionComposes) {
    const SphereAction a{2, 1}, b{-1, 3};
    for (int k = -5; k <= 5; ++k) EXPECT_EQ(a.compose(b).apply(k), a.apply(b.apply(k)));
}

TEST(Zigzag, Examples) {
    auto w = zigzag(4, 7, 2, PrimeSet::of({3}));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->h, 13);
    ASSERT_EQ(w->moves.size(), 2u);
    EXPECT_EQ(w->moves[0].side, Side::FromK);
    EXPECT_EQ(w->moves[0].action.r(), 4);
    EXPECT_EQ(w->moves[1].side, Side::FromJ);
    EXPECT_EQ(w->moves[1].action.r(), 2);
    EXPECT_TRUE(verify(*w));

    auto t = zigzag(5, 5, 2, PrimeSet::of({3}));
    ASSERT_TRUE(t);
    EXPECT_EQ(t->h, 5);
    EXPECT_EQ(t->moves[0].action.r(), 1);

    auto u = zigzag(2, 3, 2, PrimeSet::of({3}));
    ASSERT_TRUE(u);
    EXPECT_EQ(u->h, 5);

    EXPECT_FALSE(zigzag(2, 4, 2, PrimeSet::of({3})));
    EXPECT_THROW(zigzag(2, 4, 3, PrimeSet::of({2})), NotAvailable);
    EXPECT_THROW(zigzag(-1, 4, 2, PrimeSet::of({3})), InvalidArgument);
}

TEST(Zigzag, VerifyRejectsTampering) {
    auto w = *zigzag(4, 7, 2, PrimeSet::of({3}));
    auto bad = w;
    bad.h += 1;
    EXPECT_FALSE(verify(bad));
    bad = w;
    bad.moves[0] = {Side::FromK, AffineDegreeAction(3, 1), PrimeSet::of({3})};
    EXPECT_FALSE(verify(bad));
}

TEST(Zigzag, RandomSoundnessAndSymmetry) {
    std::mt19937_64 rng(4242);
    const int primes[] = {2, 3, 5, 7};
    std::uniform_int_distribution<int> kd(0, 400), chid(-30, 30), pd(0, 3);
    int produced = 0;
    for (int it = 0; it < 1000; ++it) {
        const int p = primes[pd(rng)];
        int chi = chid(rng);
        if (p == 2 && chi % 2 != 0) ++chi;
        const int k = kd(rng), j = kd(rng);
        const PrimeSet ell = PrimeSet::of({p});
        const std::int64_t x = 2 * k - chi, y = 2 * j - chi;
        const bool expect = k == j || (x != 0 && y != 0 && naive_val(p, x) == naive_val(p, y));
        const auto w = zigzag(k, j, chi, ell);
        const auto m = zigzag(j, k, chi, ell);
        ASSERT_EQ(w.has_value(), expect) << k << " " << j << " " << chi << " " << p;
        ASSERT_EQ(m.has_value(), expect);
        if (!w) continue;
        ++produced;
        ASSERT_TRUE(verify(*w));
        ASSERT_EQ(w->h, m->h);
        ASSERT_EQ(w->moves[0].action, m->moves[1].action);
        ASSERT_EQ(w->moves[1].action, m->moves[0].action);
        for (const auto& mv : w->moves) ASSERT_NE(mv.action.r() % p, 0);
    }
    EXPECT_GT(produced, 100);
}

TEST(Zigzag, RationalAndCofinite) {
    // rationally any two degrees off the fixed point meet
    auto w = zigzag(3, 8, 2, PrimeSet::empty());
    ASSERT_TRUE(w);
    EXPECT_TRUE(verify(*w));
    EXPECT_FALSE(zigzag(1, 8, 2, PrimeSet::empty()));
    auto v = zigzag(2, 5, 0, PrimeSet::all_except({2, 5}));
    ASSERT_TRUE(v);
    EXPECT_TRUE(verify(*v));
    EXPECT_FALSE(zigzag(2, 3, 0, PrimeSet::all_except({2})));
}
