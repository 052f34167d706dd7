#include "support.hpp"

namespace {

using namespace qt;

TEST(Herm, Examples) {
    EXPECT_EQ(herm(vec({"0", "1"}), vec({"0", "1"})), Q(S(-1)));
    EXPECT_EQ(classify(vec({"0", "1"})), SignClass::Negative);
    EXPECT_EQ(form(vec({"j", "1"})), S(0));
    EXPECT_EQ(herm(vec({"1/2 j", "1/2 k", "1"}), vec({"1/2", "0", "1"})), q("-1 - 1/4 j"));
    EXPECT_THROW(herm(vec({"1", "0"}), vec({"1", "0", "1"})), DimensionError);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(vec({"0", "0", "1"})), SignClass::Negative);
    EXPECT_EQ(classify(vec({"1", "0", "0"})), SignClass::Positive);
    EXPECT_EQ(classify(vec({"j", "0", "1"})), SignClass::Null);
    EXPECT_THROW(classify(vec({"0", "0", "0"})), DomainError);
    set_tolerance(1e-9);
    EXPECT_EQ(classify(FV{FQ(1.0 + 1e-12, 0, 0, 0), FQ(1.0, 0, 0, 0)}), SignClass::Null);
}

TEST(SolveRight, Examples) {
    const V c = vec({"1 + i", "k", "2"});
    EXPECT_EQ(solve_right(M::identity(3), c), c);
    EXPECT_EQ(solve_right(M{{q("i")}}, vec({"k"})), vec({"j"}));
    const M a{{q("1"), q("j")}, {q("0"), q("1")}};
    const V lam = solve_right(a, vec({"j + k", "k"}));
    EXPECT_EQ(lam, vec({"-i + j + k", "k"}));
    EXPECT_EQ(a * lam, vec({"j + k", "k"}));
}

TEST(SolveRight, SingularCarriesRank) {
    const M a{{q("1"), q("i")}, {q("j"), Q(q("j") * q("i"))}};
    try {
        solve_right(a, vec({"1", "0"}));
        FAIL() << "expected RankError";
    } catch (const RankError& e) {
        EXPECT_EQ(e.rank(), 1u);
    }
}

TEST(Gram, Examples) {
    const M g1 = gram(std::vector<V>{vec({"0", "1"}), vec({"1", "0"})});
    EXPECT_EQ(g1, M::diagonal({Q(S(-1)), Q(S(1))}));
    EXPECT_EQ(signature(g1), (Signature{1, 1, 0}));
    EXPECT_EQ(gram(std::vector<V>{V::basis(3, 0), V::basis(3, 2)}), M::diagonal({Q(S(1)), Q(S(-1))}));
    const M g3 = gram(std::vector<V>{vec({"1/2", "0", "1"}), vec({"-1/2", "0", "1"})});
    EXPECT_EQ(g3, (M{{q("-3/4"), q("-5/4")}, {q("-5/4"), q("-3/4")}}));
    EXPECT_EQ(signature(g3), (Signature{1, 1, 0}));
}

TEST(OrthProject, Examples) {
    const std::vector<V> w{V::basis(3, 0), V::basis(3, 2)};
    const V inside = vec({"1/3 + k", "0", "2"});
    EXPECT_EQ(orth_project(w, inside), inside);
    EXPECT_EQ(orth_project(w, vec({"1/5 + 2/5 j", "1/4 i", "1"})), vec({"1/5 + 2/5 j", "0", "1"}));
    const V v = vec({"1/2 j", "1/2 k", "1"});
    const V vw = orth_project(w, v);
    EXPECT_EQ(vw, vec({"1/2 j", "0", "1"}));
    EXPECT_EQ(v - vw, vec({"0", "1/2 k", "0"}));
    EXPECT_EQ(classify(V(v - vw)), SignClass::Positive);
}

TEST(OrthProject, DegenerateRejected) {
    EXPECT_THROW(orth_project(std::vector<V>{vec({"1", "0", "1"})}, vec({"0", "0", "1"})), DomainError);
}

TEST(OrthComplement, Examples) {
    const auto c = orth_complement(std::vector<V>{V::basis(3, 0), V::basis(3, 2)}, 3);
    ASSERT_EQ(c.dim(), 1u);
    EXPECT_TRUE(same_line(c.basis[0], V::basis(3, 1)));

    const auto d = orth_complement(std::vector<V>{V::basis(4, 3)}, 4);
    ASSERT_EQ(d.dim(), 3u);
    EXPECT_EQ(signature(gram(d.basis)), (Signature{3, 0, 0}));

    EXPECT_THROW(orth_complement(std::vector<V>{vec({"1", "0", "1"})}, 3), DomainError);
}

TEST(SubfieldSpan, Examples) {
    const ImaginaryDirection<S> ai(Q::unit_i());
    std::vector<V> e{V::basis(3, 0), V::basis(3, 1), V::basis(3, 2)};
    const auto c = subfield_span(e, SubfieldTag<S>::complex_type(ai));
    EXPECT_EQ(c.dim(), 3u);
    EXPECT_TRUE(contains_vector(c, vec({"1 + i", "2i", "3"})));
    EXPECT_FALSE(contains_vector(c, vec({"j", "0", "0"})));

    const auto r = subfield_span(std::vector<V>{vec({"i", "0", "0"}), vec({"0", "1", "0"}), vec({"0", "0", "1"})},
                                 SubfieldTag<S>::real());
    EXPECT_EQ(gram(r.basis), M::diagonal({Q(S(1)), Q(S(1)), Q(S(-1))}));

    try {
        subfield_span(std::vector<V>{vec({"1", "0", "0"}), vec({"j", "0", "0"})}, SubfieldTag<S>::complex_type(ai));
        FAIL() << "expected alignment error";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("representatives not aligned"), std::string::npos);
    }
}

TEST(RealSpans, IntersectionAndLines) {
    const std::vector<V> a{V::basis(2, 0), V::basis(2, 1)};
    const std::vector<V> b{vec({"1", "1"}), vec({"i", "0"})};
    const auto x = real_intersection(a, b);
    ASSERT_EQ(x.size(), 1u);
    EXPECT_TRUE(same_line(x[0], vec({"1", "1"})));
    const Subspace<S> real_plane{a, SubfieldTag<S>::real()};
    EXPECT_TRUE(contains_line(real_plane, vec({"k", "2k"})));
    EXPECT_FALSE(contains_line(real_plane, vec({"1", "i"})));
    EXPECT_EQ(real_rank(std::vector<V>{vec({"1", "0"}), vec({"i", "0"}), vec({"1 + i", "0"})}), 2u);
}

TEST(Rescaled, PrimitiveAndPositive) {
    const V v = vec({"6/5", "-9/10 i", "3"});
    const V r = rescaled(v);
    EXPECT_EQ(r, vec({"4", "-3 i", "10"}));
    const FV f = rescaled(FV{FQ(3, 0, 0, 0), FQ(0, 4, 0, 0)});
    EXPECT_NEAR(euclid_sq(f), 1.0, 1e-15);
}

TEST(QlinalgProperty, Sesquilinearity) {
    Gen g(21);
    for (int t = 0; t < 500; ++t) {
        const V v = g.vector(3), w = g.vector(3);
        const Q mu = g.quat(), la = g.quat();
        ASSERT_EQ(herm(V(v * mu), V(w * la)), conj(mu) * herm(v, w) * la);
        ASSERT_EQ(herm(w, v), conj(herm(v, w)));
        ASSERT_TRUE(is_real(herm(v, v)));
    }
}

TEST(QlinalgProperty, ProjectionIdempotentAndPythagorean) {
    Gen g(22);
    for (int t = 0; t < 300; ++t) {
        const auto p1 = g.ball_point(3), p2 = g.ball_point(3);
        if (same_point(p1, p2)) continue;
        const std::vector<V> w{p1.lift(), p2.lift()};
        const V v = g.vector(4);
        const V vw = orth_project(w, v);
        ASSERT_EQ(orth_project(w, vw), vw);
        const V perp = v - vw;
        for (const auto& b : w) ASSERT_TRUE(is_zero(herm(b, perp)));
        ASSERT_EQ(form(v), form(vw) + form(perp));
        if (classify(v) == SignClass::Negative) ASSERT_EQ(classify(vw), SignClass::Negative);
    }
}

TEST(QlinalgProperty, SolveRightBackSubstitution) {
    Gen g(23);
    int solved = 0;
    for (int t = 0; t < 10000; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 4);
        M a(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) a(r, c) = g.quat(5);
        const V c = g.vector(n, 5);
        V lam;
        try {
            lam = solve_right(a, c);
        } catch (const RankError&) {
            continue;
        }
        ++solved;
        ASSERT_EQ(a * lam, c);
    }
    EXPECT_GT(solved, 9000);
}

TEST(QlinalgProperty, TwoFrameSignatureMatchesDeterminant) {
    Gen g(24);
    for (int t = 0; t < 500; ++t) {
        const V v = g.vector(3), w = g.vector(3);
        const M gm = gram(std::vector<V>{v, w});
        // Oracle for a 2x2 Hermitian matrix: the sign pattern follows from det and trace.
        const S det = gm(0, 0).re * gm(1, 1).re - norm_sq(gm(0, 1));
        const S tr = gm(0, 0).re + gm(1, 1).re;
        const Signature sig = signature(gm);
        if (det < 0) {
            ASSERT_EQ(sig, (Signature{1, 1, 0}));
        } else if (det > 0) {
            ASSERT_EQ(sig, tr > 0 ? (Signature{2, 0, 0}) : (Signature{0, 2, 0}));
        } else {
            ASSERT_EQ(sig.zero, is_zero(gm) ? 2u : 1u);
        }
    }
}

TEST(QlinalgProperty, InverseAndComplement) {
    Gen g(25);
    for (int t = 0; t < 200; ++t) {
        M a(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) a(r, c) = g.quat(4);
        if (rank(a) < 3) continue;
        ASSERT_EQ(a * inverse(a), M::identity(3));
        ASSERT_EQ(inverse(a) * a, M::identity(3));
        const auto p = g.ball_point(2);
        const auto comp = orth_complement(std::vector<V>{p.lift()}, 3);
        ASSERT_EQ(comp.dim(), 2u);
        for (const auto& b : comp.basis) ASSERT_TRUE(is_zero(herm(p.lift(), b)));
        ASSERT_EQ(signature(gram(comp.basis)), (Signature{2, 0, 0}));
    }
}

}  // namespace
