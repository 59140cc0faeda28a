#include <gtest/gtest.h>

#include "basis_helpers.hpp"

using namespace padiclog;
using namespace testing_helpers;

namespace {

ContextPtr ctx3() { return PadicContext::make(3, 20, 12); }

std::vector<std::vector<mpq_class>> qvectors(const std::vector<Vector>& vs) {
    std::vector<std::vector<mpq_class>> out;
    for (const auto& v : vs) out.push_back(to_q(v));
    return out;
}

std::vector<long> cert_valuations(const BasisCertificate& c) {
    std::vector<long> out;
    for (const auto& e : c.entries) out.push_back(e.valuation);
    return out;
}

QSetup g2_setup() { return {3, 2, 1, {{1, 0}}, {}}; }

} // namespace

TEST(Basis, Subsets) {
    EXPECT_EQ(subsets(4, 2).size(), 6u);
    EXPECT_EQ(subsets(8, 4).size(), 70u);
    EXPECT_EQ(subsets(3, 0).size(), 1u);
    EXPECT_EQ(subsets(4, 2).back(), (std::vector<std::size_t>{2, 3}));
}

TEST(Basis, SetupValidation) {
    auto c = ctx3();
    EXPECT_THROW(LatticeSetup::make(c, 2, 0, {integer_vector(c, {1, 0}), integer_vector(c, {0, 1})}), Error);
    EXPECT_THROW(LatticeSetup::make(c, 2, 1, {integer_vector(c, {3, 6})}), Error);
    EXPECT_NO_THROW(LatticeSetup::make(c, 2, 1, {integer_vector(c, {3, 1})}));
}

TEST(Basis, KeepingE1IsRejected) {
    auto c = ctx3();
    auto s = to_setup(g2_setup(), c);
    auto cert = is_admissible(s, {integer_vector(c, {1, 0}), integer_vector(c, {0, 1})});
    EXPECT_EQ(cert.status, Status::Fail);
    EXPECT_EQ(cert.entries[0].status, Status::Fail);
    EXPECT_NE(cert.witness().find("I={1}"), std::string::npos);
}

TEST(Basis, TwoDimensionalAdmissibleAndSaturated) {
    auto c = ctx3();
    auto q = g2_setup();
    std::vector<Vector> basis{integer_vector(c, {0, 1}), integer_vector(c, {1, 1})};
    auto cert = is_admissible(to_setup(q, c), basis);
    EXPECT_EQ(cert.status, Status::Pass);
    EXPECT_TRUE(cert.saturated);
    EXPECT_EQ(cert_valuations(cert), oracle_valuations(q, qvectors(basis)));
    EXPECT_EQ(cert_valuations(cert), (std::vector<long>{0, 0}));
}

TEST(Basis, NonUnitDeterminantIsAdmissibleButNotSaturated) {
    auto c = ctx3();
    auto q = g2_setup();
    std::vector<Vector> basis{integer_vector(c, {0, 3}), integer_vector(c, {1, 1})};
    auto cert = is_admissible(to_setup(q, c), basis);
    EXPECT_EQ(cert.status, Status::Pass);
    EXPECT_FALSE(cert.saturated);
    EXPECT_EQ(cert_valuations(cert), (std::vector<long>{1, 0}));
}

TEST(Basis, NearZeroDeterminantIsIndeterminate) {
    auto c = PadicContext::make(3, 10, 12);
    auto q = g2_setup();
    // det = 3^9, at or above rel_prec - g
    std::vector<Vector> basis{integer_vector(c, {0, 19683}), integer_vector(c, {1, 1})};
    EXPECT_EQ(is_admissible(to_setup(q, c), basis).status, Status::Indeterminate);
}

TEST(Basis, PhiZeroStrongEqualsPlain) {
    auto c = ctx3();
    QSetup q{3, 4, 2, {{1, 0, 2, 0}, {0, 1, 0, 1}}, oracle::QMat(4, std::vector<mpq_class>(4, 0))};
    auto s = to_setup(q, c);
    EXPECT_EQ(compare(strong_operator(s), identity_matrix(c, 4).scaled(PadicScalar::from_integer(c, -1))),
              Comparison::Equal);
    auto built = construct_admissible(s);
    auto [plain, moved] = is_strongly_admissible(s, built.vectors);
    EXPECT_EQ(plain.status, moved.status);
    EXPECT_EQ(cert_valuations(plain), cert_valuations(moved));
    EXPECT_TRUE(built.strongly_admissible);
}

TEST(Basis, PollackDualSetupMatchesExplicitT) {
    auto c = ctx3();
    QSetup q{3, 2, 1, {{1, 0}}, {{0, mpq_class(-1, 3)}, {1, 0}}};
    auto s = to_setup(q, c);
    const oracle::QMat t = oracle_T(q);
    for (auto basis : {std::vector<std::vector<long>>{{0, 1}, {1, 1}}, {{1, 2}, {2, 1}}, {{0, 1}, {1, 0}}}) {
        std::vector<Vector> vs;
        std::vector<std::vector<mpq_class>> moved;
        for (const auto& b : basis) {
            vs.push_back(integer_vector(c, b));
            moved.push_back(qapply(t, to_q(vs.back())));
        }
        auto [plain, tr] = is_strongly_admissible(s, vs);
        EXPECT_EQ(cert_valuations(plain), oracle_valuations(q, qvectors(vs)));
        EXPECT_EQ(cert_valuations(tr), oracle_valuations(q, moved));
    }
}

TEST(Basis, PreimageOfFil0BreaksStrongAdmissibility) {
    auto c = ctx3();
    QSetup q{3, 2, 1, {{1, 0}}, {{2, 1}, {0, 3}}};
    auto s = to_setup(q, c);
    // v1 = T^-1 e_1 scaled to a primitive integral vector, so T v1 lies in Fil0.
    const oracle::QMat tinv = oracle::inverse(oracle_T(q));
    mpz_class l = lcm(tinv[0][0].get_den(), tinv[1][0].get_den());
    mpz_class a = mpq_class(tinv[0][0] * l).get_num(), b = mpq_class(tinv[1][0] * l).get_num();
    const mpz_class g = gcd(a, b);
    a /= g;
    b /= g;
    std::vector<Vector> basis{integer_vector(c, {a.get_si(), b.get_si()}),
                              integer_vector(c, a % 3 != 0 ? std::vector<long>{0, 1} : std::vector<long>{1, 0})};
    auto [plain, tr] = is_strongly_admissible(s, basis);
    EXPECT_EQ(tr.entries[0].status, Status::Fail);
    EXPECT_EQ(tr.status, Status::Fail);
    EXPECT_FALSE(certify(s, basis, "manual").strongly_admissible);
}

TEST(Basis, SingularOneMinusPhi) {
    auto c = ctx3();
    QSetup q{3, 2, 1, {{1, 0}}, {{1, 0}, {0, 2}}};
    auto s = to_setup(q, c);
    try {
        (void)strong_operator(s);
        FAIL() << "expected SingularOperator";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularOperator);
    }
}

TEST(EscapeUnion, Examples) {
    auto c = ctx3();
    auto w = escape_union(c, 3, {}, 1);
    EXPECT_EQ(w, integer_vector(c, {1, 0, 0}));

    auto w2 = escape_union(c, 2, {{integer_vector(c, {1, 0})}}, 2);
    EXPECT_EQ(w2[1].valuation(), 0);

    std::vector<Hyperplane> hs{{integer_vector(c, {1, 0, 0}), integer_vector(c, {0, 1, 0})},
                               {integer_vector(c, {1, 0, 0}), integer_vector(c, {0, 0, 1})},
                               {integer_vector(c, {0, 1, 0}), integer_vector(c, {0, 0, 1})}};
    auto w3 = escape_union(c, 3, hs, 1);
    for (const auto& h : hs) {
        std::vector<std::vector<mpq_class>> cols{to_q(h[0]), to_q(h[1]), to_q(w3)};
        EXPECT_NE(oracle::det(columns(cols)), 0);
    }
}

TEST(EscapeUnion, RandomHyperplanes) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> e(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = PadicContext::make(trial % 2 ? 3 : 5, 20, 12);
        const std::size_t rank = 2 + trial % 3;
        std::vector<Hyperplane> hs;
        std::vector<std::vector<std::vector<mpq_class>>> hq;
        while (hs.size() < 4) {
            Hyperplane hp;
            std::vector<std::vector<mpq_class>> cols;
            for (std::size_t j = 0; j + 1 < rank; ++j) {
                std::vector<long> xs(rank);
                for (auto& x : xs) x = e(rng);
                hp.push_back(integer_vector(c, xs));
                cols.push_back(to_q(hp.back()));
            }
            // keep only generators of a genuine hyperplane
            bool proper = false;
            for (std::size_t i = 0; i < rank && !proper; ++i) {
                auto probe = cols;
                std::vector<mpq_class> ei(rank, 0);
                ei[i] = 1;
                probe.push_back(ei);
                proper = oracle::det(columns(probe)) != 0;
            }
            if (!proper) continue;
            hs.push_back(hp);
            hq.push_back(cols);
        }
        const int k = 1 + trial % 3;
        auto w = escape_union(c, rank, hs, k);
        long minv = PadicScalar::kInfinity;
        for (const auto& x : w) minv = std::min(minv, x.valuation());
        EXPECT_LT(minv, k);
        for (auto cols : hq) {
            cols.push_back(to_q(w));
            EXPECT_NE(oracle::det(columns(cols)), 0);
        }
    }
}

TEST(AvoidSlopes, Examples) {
    auto c = ctx3();
    auto one = PadicScalar::one(c), zero = PadicScalar::zero(c);
    auto [x, y] = avoid_slopes(one, zero, zero, one, {});
    EXPECT_EQ(compare(x / y, one), Comparison::Equal);

    auto [x2, y2] = avoid_slopes(one, zero, zero, one, {one});
    EXPECT_NE(compare(x2, y2), Comparison::Equal);

    auto m1 = PadicScalar::from_integer(c, -1);
    auto bad = PadicScalar::from_rational(c, mpq_class(-1, 2));
    auto [x3, y3] = avoid_slopes(zero, m1, one, zero, {bad});
    const mpq_class ratio = (-y3.to_rational()) / x3.to_rational();
    EXPECT_NE(ratio, mpq_class(-1, 2));
    EXPECT_EQ(x3.valuation(), 0);
    EXPECT_EQ(y3.valuation(), 0);
}

TEST(AvoidSlopes, RejectsNonInvertible) {
    auto c = ctx3();
    auto three = PadicScalar::from_integer(c, 3), one = PadicScalar::one(c);
    EXPECT_THROW(avoid_slopes(three, one, three, one, {}), Error);
}

TEST(MergeComplement, EqualInputs) {
    auto c = ctx3();
    Hyperplane w1{integer_vector(c, {1, 0})}, w2{integer_vector(c, {1, 3})};
    auto v = integer_vector(c, {1, 1});
    EXPECT_EQ(merge_complement(w1, w2, v, v, {w1, w2}), v);
}

TEST(MergeComplement, RankTwoStandardLines) {
    auto c = ctx3();
    Hyperplane w1{integer_vector(c, {1, 0})}, w2{integer_vector(c, {0, 1})};
    auto v1 = integer_vector(c, {0, 1}), v2 = integer_vector(c, {1, 0});
    auto v = merge_complement(w1, w2, v1, v2, {});
    // v = alpha e_2 + beta e_1 with both coefficients units
    EXPECT_EQ(v[0].valuation(), 0);
    EXPECT_EQ(v[1].valuation(), 0);
    // v1 lies in W2, which the hypothesis v_i outside W0 excludes
    EXPECT_THROW(merge_complement(w1, w2, v1, v2, {w1, w2}), Error);
}

TEST(MergeComplement, NonUnitCoordinatesUseKeyEquation) {
    auto c = ctx3();
    // x1 = det[W2|v1]/det[W2|v2] and x2 both divisible by 3
    Hyperplane w1{integer_vector(c, {1, 0, 0}), integer_vector(c, {0, 1, 0})};
    Hyperplane w2{integer_vector(c, {1, 0, 0}), integer_vector(c, {0, 0, 1})};
    auto v1 = integer_vector(c, {1, 3, 1});
    auto v2 = integer_vector(c, {1, 1, 3});
    std::vector<Hyperplane> w0{w1, w2, {integer_vector(c, {0, 1, 0}), integer_vector(c, {0, 0, 1})}};
    auto v = merge_complement(w1, w2, v1, v2, w0);
    for (const auto& h : {w1, w2}) {
        std::vector<std::vector<mpq_class>> cols{to_q(h[0]), to_q(h[1]), to_q(v)};
        EXPECT_EQ(qval(3, oracle::det(columns(cols))), 0);
    }
}

TEST(MergeComplement, RejectsV1InW0) {
    auto c = ctx3();
    Hyperplane w1{integer_vector(c, {1, 0})}, w2{integer_vector(c, {0, 1})};
    Hyperplane extra{integer_vector(c, {1, 1})};
    try {
        (void)merge_complement(w1, w2, integer_vector(c, {1, 1}), integer_vector(c, {1, 2}), {w1, w2, extra});
        FAIL() << "expected DegenerateInput";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
    }
}

TEST(GenericPositionExtend, Examples) {
    auto c = ctx3();
    std::vector<Vector> e2{integer_vector(c, {1, 0}), integer_vector(c, {0, 1})};
    EXPECT_EQ(generic_position_extend(e2, 0).vectors, e2);

    auto one = generic_position_extend({integer_vector(c, {2})}, 4);
    ASSERT_EQ(one.vectors.size(), 5u);
    for (const auto& v : one.vectors) EXPECT_EQ(v[0].valuation(), 0);

    auto ext = generic_position_extend(e2, 2);
    ASSERT_EQ(ext.vectors.size(), 4u);
    EXPECT_TRUE(ext.saturated);
    for (const auto& s : subsets(4, 2)) {
        std::vector<std::vector<mpq_class>> cols{to_q(ext.vectors[s[0]]), to_q(ext.vectors[s[1]])};
        EXPECT_EQ(qval(3, oracle::det(columns(cols))), 0);
    }
}

TEST(GenericPositionExtend, ResidueBoundForcesGenericVectors) {
    // F_3^2 has only 4 lines, so 5 vectors cannot be pairwise unimodular.
    auto c = ctx3();
    auto ext = generic_position_extend({integer_vector(c, {1, 0}), integer_vector(c, {0, 1})}, 3);
    EXPECT_FALSE(ext.saturated);
    EXPECT_EQ(ext.routes.back(), "generic");
    for (const auto& s : subsets(5, 2)) {
        std::vector<std::vector<mpq_class>> cols{to_q(ext.vectors[s[0]]), to_q(ext.vectors[s[1]])};
        EXPECT_NE(oracle::det(columns(cols)), 0);
    }
}

TEST(Construct, TwoDimensional) {
    auto c = ctx3();
    auto q = g2_setup();
    auto b = construct_admissible(to_setup(q, c));
    EXPECT_TRUE(b.admissible);
    EXPECT_TRUE(b.saturated);
    for (long v : oracle_valuations(q, qvectors(b.vectors))) EXPECT_EQ(v, 0);
}

TEST(Construct, RandomSetupsPassIndependentCertificate) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        const long p = trial % 3 == 0 ? 5 : 3;
        const std::size_t g = 2 + 2 * (trial % 3);
        auto c = PadicContext::make(p, 30, 12);
        QSetup q = random_qsetup(p, g, rng);
        auto s = to_setup(q, c);
        auto b = construct_admissible(s);
        auto vals = oracle_valuations(q, qvectors(b.vectors));
        for (long v : vals) EXPECT_NE(v, PadicScalar::kInfinity);
        EXPECT_EQ(cert_valuations(b.plain), vals);

        auto strong = construct_strongly_admissible(s, {static_cast<std::uint64_t>(trial + 1)});
        EXPECT_TRUE(strong.strongly_admissible);
        const oracle::QMat t = oracle_T(q);
        std::vector<std::vector<mpq_class>> moved;
        for (const auto& v : strong.vectors) moved.push_back(qapply(t, to_q(v)));
        for (long v : oracle_valuations(q, moved)) EXPECT_NE(v, PadicScalar::kInfinity);
        for (long v : oracle_valuations(q, qvectors(strong.vectors))) EXPECT_NE(v, PadicScalar::kInfinity);
    }
}

TEST(Construct, RandomAndDeterministicAgreeOnCertificate) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 4; ++trial) {
        auto c = PadicContext::make(3, 30, 12);
        auto s = to_setup(random_qsetup(3, 4, rng), c);
        StrongSearchOptions det_opts;
        det_opts.deterministic_only = true;
        auto a = construct_strongly_admissible(s, {7});
        auto b = construct_strongly_admissible(s, det_opts);
        EXPECT_EQ(a.route, "random");
        EXPECT_EQ(b.route, "deterministic");
        EXPECT_EQ(a.plain.status, b.plain.status);
        EXPECT_EQ(a.transformed->status, b.transformed->status);
        EXPECT_EQ(a.strongly_admissible, b.strongly_admissible);
    }
}

TEST(GenericPositionExtend, BacktracksPastIncompleteArc) {
    // F_7^3 holds 8-point arcs (a conic), but greedy choices can stall at 6.
    auto c = PadicContext::make(7, 30, 12);
    std::vector<Vector> e3{integer_vector(c, {1, 0, 0}), integer_vector(c, {0, 1, 0}), integer_vector(c, {0, 0, 1})};
    for (std::size_t k = 1; k <= 5; ++k) {
        auto ext = generic_position_extend(e3, k);
        EXPECT_TRUE(ext.saturated) << "k=" << k;
        for (const auto& s : subsets(3 + k, 3)) {
            std::vector<std::vector<mpq_class>> cols;
            for (auto i : s) cols.push_back(to_q(ext.vectors[i]));
            EXPECT_EQ(qval(7, oracle::det(columns(cols))), 0);
        }
    }
    // one more than the conic bound is impossible
    EXPECT_FALSE(generic_position_extend(e3, 6).saturated);
}
