#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "confstab/conf_algebra.hpp"

using namespace confstab;
using namespace confstab::algebra;

namespace {

// Independent generator model: closed-form degrees, built without the
// library's recursion or ordering.
struct RefGen {
    bool bracket;
    std::vector<int> seq;
    int eps1;
    std::int64_t h;
    std::int64_t nu;
};

std::int64_t closed_form_degree(bool bracket, const std::vector<int>& seq, int eps1, int n, int p) {
    std::int64_t base_h = bracket ? n - 1 : 0;
    std::int64_t pl = 1;
    for (std::size_t j = 0; j < seq.size(); ++j) pl *= p;
    std::int64_t h = pl * base_h, pj = 1;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        int eps = 0;
        if (p != 2) eps = j == 0 ? eps1 : (seq[j] + seq[j - 1]) % 2;
        h += static_cast<std::int64_t>(seq[j]) * (p - 1) * pj - eps * pj;
        pj *= p;
    }
    return h;
}

void sequences(int len, int lo, int hi, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        sequences(len, v, hi, cur, out);
        cur.pop_back();
    }
}

std::vector<RefGen> reference_generators(int n, int p, std::int64_t max_nu) {
    std::vector<RefGen> out;
    for (bool bracket : {false, true}) {
        if (bracket && (p == 2 || n % 2 != 0)) continue;
        std::int64_t nu = bracket ? 2 : 1;
        for (int len = 0; nu <= max_nu; ++len, nu *= p) {
            std::vector<std::vector<int>> seqs;
            std::vector<int> cur;
            sequences(len, 1, n - 1, cur, seqs);
            for (const auto& s : seqs) {
                if (p != 2 && !s.empty() && (s.back() % 2 == 0) == bracket) continue;
                for (int e = 0; e <= ((p != 2 && !s.empty()) ? 1 : 0); ++e) {
                    out.push_back({bracket, s, e, closed_form_degree(bracket, s, e, n, p), nu});
                }
            }
        }
    }
    return out;
}

// Explicit enumeration of non-zero monomials of weight exactly k.
void monomials(const std::vector<RefGen>& gens, int p, std::size_t g, std::int64_t w, std::int64_t h, std::int64_t h_max,
               bool iota_free, std::vector<std::pair<std::size_t, int>>& cur,
               const std::function<void(std::int64_t, const std::vector<std::pair<std::size_t, int>>&)>& emit) {
    if (w == 0) {
        emit(h, cur);
        return;
    }
    if (g == gens.size()) return;
    monomials(gens, p, g + 1, w, h, h_max, iota_free, cur, emit);
    const auto& G = gens[g];
    if (iota_free && !G.bracket && G.seq.empty()) return;
    const int max_e = (p != 2 && G.h % 2 != 0) ? 1 : static_cast<int>(w / G.nu);
    for (int e = 1; e <= max_e && e * G.nu <= w && h + e * G.h <= h_max; ++e) {
        cur.emplace_back(g, e);
        monomials(gens, p, g + 1, w - e * G.nu, h + e * G.h, h_max, iota_free, cur, emit);
        cur.pop_back();
    }
}

std::vector<std::uint64_t> brute_dims(int n, int p, std::int64_t k, std::int64_t i_max) {
    auto gens = reference_generators(n, p, std::max<std::int64_t>(k, 1));
    std::vector<std::uint64_t> out(i_max + 1, 0);
    std::vector<std::pair<std::size_t, int>> cur;
    monomials(gens, p, 0, k, 0, i_max, false, cur, [&](std::int64_t h, const auto&) { ++out[h]; });
    return out;
}

Monomial to_monomial(const std::vector<RefGen>& gens, const std::vector<std::pair<std::size_t, int>>& f, int n, int p) {
    std::vector<std::pair<Generator, int>> factors;
    for (auto [g, e] : f) {
        factors.emplace_back(Generator::make(gens[g].bracket ? Base::Bracket : Base::Iota, gens[g].seq, gens[g].eps1, n, p), e);
    }
    return Monomial(std::move(factors));
}

}  // namespace

TEST(Generators, SmallExamples) {
    auto g = enumerate_generators(2, 3, 2);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].first.name(), "iota");
    EXPECT_EQ(g[0].second.h, 0);
    EXPECT_EQ(g[0].second.nu, 1);
    EXPECT_EQ(g[1].first.name(), "[iota,iota]");
    EXPECT_EQ(g[1].second.h, 1);
    EXPECT_EQ(g[1].second.nu, 2);

    std::map<std::string, Bidegree> by_name;
    for (auto& [gen, d] : enumerate_generators(2, 3, 6)) by_name[gen.name()] = d;
    EXPECT_EQ(by_name.at("Q_{0,(1)}([iota,iota])").h, 5);
    EXPECT_EQ(by_name.at("Q_{1,(1)}([iota,iota])").h, 4);
    EXPECT_EQ(by_name.at("Q_{1,(1)}([iota,iota])").nu, 6);
}

TEST(Generators, DimensionThreeAtTwo) {
    std::map<std::string, Bidegree> by_name;
    for (auto& [gen, d] : enumerate_generators(3, 2, 4)) by_name[gen.name()] = d;
    EXPECT_EQ(by_name.at("Q_{0,(1)}(iota)").h, 1);
    EXPECT_EQ(by_name.at("Q_{0,(2)}(iota)").h, 2);
    EXPECT_EQ(by_name.at("Q_{0,(1,1)}(iota)").h, 3);
    EXPECT_EQ(by_name.at("Q_{0,(1,1)}(iota)").nu, 4);
    // 2*0 + 1 + 2*2 by the degree recursion
    EXPECT_EQ(by_name.at("Q_{0,(1,2)}(iota)").h, 5);
    EXPECT_EQ(by_name.at("Q_{0,(2,2)}(iota)").h, 6);
}

TEST(Generators, MatchIndependentClosedForm) {
    for (int n = 2; n <= 7; ++n) {
        for (int p : {2, 3, 5, 7}) {
            std::multiset<std::tuple<bool, std::vector<int>, int, std::int64_t, std::int64_t>> ref, got;
            for (const auto& r : reference_generators(n, p, 100)) ref.insert({r.bracket, r.seq, r.eps1, r.h, r.nu});
            const auto gens = enumerate_generators(n, p, 100);
            for (const auto& [g, d] : gens) {
                got.insert({g.base() == Base::Bracket, g.seq(), g.eps1(), d.h, d.nu});
                ASSERT_EQ(d.h, g.bidegree().h);
            }
            ASSERT_EQ(ref, got) << "n=" << n << " p=" << p;
            for (std::size_t i = 1; i < gens.size(); ++i) {
                const auto a = gens[i - 1].second, b = gens[i].second;
                ASSERT_TRUE(a.nu < b.nu || (a.nu == b.nu && a.h <= b.h));
            }
        }
    }
}

TEST(Generators, ValidationErrors) {
    EXPECT_THROW(enumerate_generators(1, 3, 4), InvalidArgument);
    EXPECT_THROW(enumerate_generators(2, 4, 4), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Bracket, {}, 0, 2, 2), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Bracket, {}, 0, 3, 3), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Iota, {1}, 0, 3, 3), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Bracket, {2}, 0, 4, 3), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Iota, {2, 1}, 0, 4, 2), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Iota, {3}, 0, 3, 2), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Iota, {}, 1, 3, 3), InvalidArgument);
    EXPECT_THROW(Generator::make(Base::Iota, {1}, 1, 3, 2), InvalidArgument);
    EXPECT_NO_THROW(Generator::make(Base::Iota, {1, 2}, 1, 3, 3));
}

TEST(Generators, EpsFromParity) {
    const auto g = Generator::make(Base::Iota, {1, 2}, 1, 3, 3);
    EXPECT_EQ(g.eps(1), 1);
    EXPECT_EQ(g.eps(2), 1);
    const auto h = Generator::make(Base::Iota, {2, 2}, 0, 3, 3);
    EXPECT_EQ(h.eps(2), 0);
}

TEST(Dims, Examples) {
    EXPECT_EQ(dims(2, 2, 2, 1), (std::vector<std::uint64_t>{1, 1}));
    EXPECT_EQ(dims(2, 3, 4, 2), (std::vector<std::uint64_t>{1, 1, 0}));
    EXPECT_EQ(dims(3, 5, 0, 0), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(dims(3, 5, 0, 3), (std::vector<std::uint64_t>{1, 0, 0, 0}));
    EXPECT_THROW(dims(2, 3, -1, 2), InvalidArgument);
}

TEST(Dims, BraidGroupsModThree) {
    // H_*(Br_6; F_3): classes in degrees 0, 1, 4 (and 5 beyond the bound)
    EXPECT_EQ(dims(2, 3, 6, 5), (std::vector<std::uint64_t>{1, 1, 0, 0, 1, 1}));
}

TEST(Dims, AgreeWithMonomialEnumeration) {
    for (int n = 2; n <= 5; ++n) {
        for (int p : {2, 3, 5}) {
            for (int k = 0; k <= 12; ++k) {
                ASSERT_EQ(dims(n, p, k, 24), brute_dims(n, p, k, 24)) << n << " " << p << " " << k;
            }
        }
    }
}

TEST(Dims, DegreeZeroIsOne) {
    for (int n = 2; n <= 6; ++n)
        for (int p : {2, 3, 5, 7})
            for (int k = 0; k <= 20; ++k) ASSERT_EQ(dims(n, p, k, 0)[0], 1u);
}

TEST(Dims, MonotoneInWeight) {
    for (int n = 2; n <= 6; ++n) {
        for (int p : {2, 3, 5, 7}) {
            auto prev = dims(n, p, 0, 20);
            for (int k = 1; k <= 20; ++k) {
                auto cur = dims(n, p, k, 20);
                for (int i = 0; i <= 20; ++i) ASSERT_LE(prev[i], cur[i]) << n << " " << p << " " << k << " " << i;
                prev = std::move(cur);
            }
        }
    }
}

TEST(Dims, SaturatesBelowFirstInceptive) {
    for (int n = 2; n <= 5; ++n) {
        for (int p : {2, 3, 5}) {
            for (int k = 1; k <= 14; ++k) {
                const auto f = first_inceptive(n, p, k + 1);
                const std::int64_t top = f ? f->degree - 1 : 40;
                if (top < 0) continue;
                ASSERT_EQ(dims(n, p, k, top), dims(n, p, k + 1, top)) << n << " " << p << " " << k;
            }
        }
    }
}

TEST(Dims, OddPrimeRangeUpToK) {
    for (int n : {3, 4, 5}) {
        for (int p : {3, 5}) {
            for (int k = 1; k <= 15; ++k) ASSERT_EQ(dims(n, p, k, k), dims(n, p, k + 1, k)) << n << " " << p << " " << k;
        }
    }
}

TEST(FirstInceptive, Examples) {
    auto a = first_inceptive(5, 2, 6);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->degree, 3);
    ASSERT_EQ(a->witnesses.size(), 1u);
    EXPECT_EQ(a->witnesses[0].name(), "Q_{0,(1)}(iota)^3");

    auto b = first_inceptive(3, 3, 3);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->degree, 3);
    EXPECT_EQ(b->witnesses[0].name(), "Q_{1,(2)}(iota)");

    auto c = first_inceptive(2, 3, 2);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->degree, 1);
    EXPECT_EQ(c->witnesses[0].name(), "[iota,iota]");

    EXPECT_FALSE(first_inceptive(2, 3, 4));
    EXPECT_THROW(first_inceptive(2, 3, 0), InvalidArgument);
}

TEST(FirstInceptive, AgreesWithEnumeration) {
    for (int n = 2; n <= 5; ++n) {
        for (int p : {2, 3, 5}) {
            auto gens = reference_generators(n, p, 14);
            for (int k = 1; k <= 14; ++k) {
                std::int64_t best = -1;
                std::vector<Monomial> wit;
                std::vector<std::pair<std::size_t, int>> cur;
                monomials(gens, p, 0, k, 0, 400, true, cur, [&](std::int64_t h, const auto& f) {
                    if (best < 0 || h < best) {
                        best = h;
                        wit.clear();
                    }
                    if (h == best) wit.push_back(to_monomial(gens, f, n, p));
                });
                const auto got = first_inceptive(n, p, k);
                if (best < 0) {
                    ASSERT_FALSE(got) << n << " " << p << " " << k;
                    continue;
                }
                ASSERT_TRUE(got) << n << " " << p << " " << k;
                ASSERT_EQ(got->degree, best);
                ASSERT_EQ(got->witnesses.size(), wit.size());
                for (const auto& m : wit) {
                    ASSERT_NE(std::find(got->witnesses.begin(), got->witnesses.end(), m), got->witnesses.end());
                    ASSERT_TRUE(m.is_inceptive());
                    ASSERT_EQ(m.bidegree().nu, k);
                }
            }
        }
    }
}

TEST(TableAudit, Examples) {
    auto a = table_audit(2, 4, 10);
    EXPECT_EQ(a.status, AuditStatus::Match);
    EXPECT_EQ(a.computed->degree, 5);
    EXPECT_EQ(a.prediction.row, 1);

    // Q_{1,(2)}(iota) has odd degree, so its square vanishes.
    auto b = table_audit(3, 3, 6);
    EXPECT_EQ(b.status, AuditStatus::TableNotApplicable);
    EXPECT_EQ(b.prediction.row, 2);
    ASSERT_TRUE(b.computed);
    EXPECT_EQ(b.computed->degree, 7);

    auto c = table_audit(3, 2, 4);
    EXPECT_EQ(c.status, AuditStatus::TableNotApplicable);
    EXPECT_FALSE(c.computed);

    EXPECT_EQ(table_audit(3, 2, 2).status, AuditStatus::Match);
    auto d = table_audit(3, 4, 5);
    EXPECT_EQ(d.status, AuditStatus::Match);
    EXPECT_EQ(d.computed->degree, 6);
    EXPECT_EQ(table_audit(3, 3, 3).status, AuditStatus::Match);
}

TEST(TableAudit, NoMismatchesInDeskRange) {
    for (int p : {2, 3, 5, 7}) {
        for (int n = 2; n <= 7; ++n) {
            for (int k = 1; k <= 20; ++k) {
                const auto r = table_audit(p, n, k);
                ASSERT_NE(r.status, AuditStatus::Mismatch) << p << " " << n << " " << k << ": " << r.detail;
                if (r.prediction.row == 1) ASSERT_EQ(r.status, AuditStatus::Match);
                // a vanishing power of Q_{1,(2)}(iota) still bounds the first class from below
                if (r.prediction.row == 2 && r.status == AuditStatus::TableNotApplicable) {
                    ASSERT_TRUE(r.computed);
                    ASSERT_GE(r.computed->degree, r.prediction.degree);
                }
            }
        }
    }
}

TEST(TableAudit, StatusStrings) {
    EXPECT_STREQ(to_string(AuditStatus::Match), "MATCH");
    EXPECT_STREQ(to_string(AuditStatus::Mismatch), "MISMATCH");
    EXPECT_STREQ(to_string(AuditStatus::TableNotApplicable), "TABLE_NOT_APPLICABLE");
}

TEST(Ranges, MuExamples) {
    EXPECT_EQ((*mu(CoefficientSpec::integers(), {3, true}, false))(10), 5);
    EXPECT_EQ((*mu(CoefficientSpec::prime_field(3), {4, true}, false))(7), 7);
    EXPECT_EQ((*mu(CoefficientSpec::half_inverted(), {3, true}, true))(7), 6);
    EXPECT_EQ((*mu(CoefficientSpec::integers(), {3, true}, true))(10), 4);
    EXPECT_EQ((*mu(CoefficientSpec::rationals(), {2, true}, false))(10), 9);
    EXPECT_EQ((*mu(CoefficientSpec::rationals(), {2, false}, false))(10), 10);
    EXPECT_EQ((*mu(CoefficientSpec::rationals(), {3, true}, false))(10), 10);
    EXPECT_FALSE(mu(CoefficientSpec::half_inverted(), {2, true}, false));
    EXPECT_FALSE(mu(CoefficientSpec::localised(PrimeSet::of({3})), {3, true}, false));
}

TEST(Ranges, LambdaExamples) {
    EXPECT_EQ(lambda_range(linear_range(1, 0), 4, 2, 5), 5);
    EXPECT_EQ(lambda_range(linear_range(2, 0), 2, 2, 5), 9);
    EXPECT_EQ(lambda_range(half_range(0), 2, 3, 4), 2);
    EXPECT_THROW(lambda_range(linear_range(1, 0), 4, 1, 5), InvalidArgument);
    EXPECT_THROW(lambda_range(linear_range(1, 0), 4, 2, 0), InvalidArgument);
}

TEST(Ranges, LambdaIsTwoTermMinForMonotoneMu) {
    const std::vector<RangeFn> mus{linear_range(1, 0), linear_range(2, 0), linear_range(1, -1), linear_range(3, 2),
                                   half_range(0), half_range(-1)};
    for (const auto& m : mus) {
        for (int n = 2; n <= 6; ++n) {
            for (int r = 2; r <= 5; ++r) {
                for (int k = 2; k <= 60; ++k) {
                    ASSERT_EQ(lambda_range(m, n, r, k), std::min(m(k), m(k - 1) + n - 1)) << m.description();
                }
            }
        }
    }
}

TEST(Ranges, NuIsWindowMinimum) {
    RangeFn wobbly(RangeKind::Mu, "wobbly", [](std::int64_t k) { return k % 2 == 0 ? k : k - 3; }, false);
    EXPECT_EQ(nu_value(wobbly, 4), 2);
    EXPECT_EQ(nu_value(wobbly, 5), 2);
    EXPECT_EQ(nu(linear_range(1, 0))(7), 7);
}
