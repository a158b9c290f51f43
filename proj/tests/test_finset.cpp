#include <doctest.h>

#include "alth/finset.hpp"

using namespace alth;

TEST_CASE("product sizes and pairing") {
    auto p = product(FinSet(2), FinSet(3));
    CHECK(p.set.size == 6);
    CHECK(p.pair(1, 2) == 5);  // row-major i*|Y|+j
    CHECK(p.unpair(5) == std::pair<std::size_t, std::size_t>{1, 2});

    CHECK(product(FinSet(0), FinSet(7)).set.size == 0);

    // |X|=1: pairing j |-> j
    auto u = product(FinSet(1), FinSet(4));
    CHECK(u.set.size == 4);
    for (std::size_t j = 0; j < 4; ++j) CHECK(u.pair(0, j) == j);
}

TEST_CASE("hom_set sizes") {
    CHECK(hom_set(FinSet(2), FinSet(3)).size == 9);
    CHECK(hom_set(FinSet(0), FinSet(5)).size == 1);
    CHECK(hom_set(FinSet(0), FinSet(0)).size == 1);
    CHECK(hom_set(FinSet(3), FinSet(0)).size == 0);
}

TEST_CASE("function encoding is lexicographic with the first entry most significant") {
    // tables over cod size 3, dom size 2: (0,0) < (0,1) < ... < (1,0) < ...
    CHECK(fn_encode(std::vector<std::size_t>{0, 0}, 3) == 0);
    CHECK(fn_encode(std::vector<std::size_t>{0, 1}, 3) == 1);
    CHECK(fn_encode(std::vector<std::size_t>{1, 0}, 3) == 3);
    CHECK(fn_decode(5, 2, 3) == std::vector<std::size_t>{1, 2});
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(fn_encode(fn_decode(i, 2, 3), 3) == i);
}

TEST_CASE("composition is associative on random-ish tables") {
    FinFn f(FinSet(3), FinSet(4), {1, 3, 0});
    FinFn g(FinSet(4), FinSet(2), {0, 1, 1, 0});
    FinFn h(FinSet(2), FinSet(3), {2, 0});
    CHECK(same_fn(compose(h, compose(g, f)), compose(compose(h, g), f)));
}

TEST_CASE("coequalizer of equal maps is discrete") {
    FinFn f(FinSet(3), FinSet(4), {0, 2, 3});
    Quotient q = coequalizer(f, f);
    CHECK(q.classes.size() == 4);
    CHECK(q.proj.is_bijective());
}

TEST_CASE("coequalizer closes chains") {
    // f=(0,1), g=(1,2): 0~1~2 collapses all of 3
    FinFn f(FinSet(2), FinSet(3), {0, 1});
    FinFn g(FinSet(2), FinSet(3), {1, 2});
    Quotient q = coequalizer(f, g);
    CHECK(q.classes.size() == 1);

    FinFn f2(FinSet(1), FinSet(2), {0});
    FinFn g2(FinSet(1), FinSet(2), {1});
    CHECK(coequalizer(f2, g2).classes.size() == 1);
}

TEST_CASE("coequalizer projection coequalizes and is universal (exhaustive, cod <= 4)") {
    for (std::size_t dom = 0; dom <= 2; ++dom)
        for (std::size_t cod = 1; cod <= 4; ++cod) {
            const std::size_t nf = pow_sz(cod, dom);
            for (std::size_t fi = 0; fi < nf; ++fi)
                for (std::size_t gi = 0; gi < nf; ++gi) {
                    FinFn f = hom_element(FinSet(dom), FinSet(cod), fi);
                    FinFn g = hom_element(FinSet(dom), FinSet(cod), gi);
                    Quotient q = coequalizer(f, g);
                    CHECK(same_fn(compose(q.proj, f), compose(q.proj, g)));
                    // universality: every h with h o f = h o g factors
                    // uniquely through proj
                    for (std::size_t z = 1; z <= 3; ++z) {
                        const std::size_t nh = pow_sz(z, cod);
                        for (std::size_t hi = 0; hi < nh; ++hi) {
                            FinFn h = hom_element(FinSet(cod), FinSet(z), hi);
                            if (!same_fn(compose(h, f), compose(h, g))) continue;
                            // factorization defined on representatives
                            std::vector<std::size_t> u(q.classes.size());
                            for (std::size_t c = 0; c < q.classes.size(); ++c)
                                u[c] = h.table[q.classes[c][0]];
                            FinFn uf(FinSet(q.classes.size()), FinSet(z), u);
                            CHECK(same_fn(compose(uf, q.proj), h));
                            // uniqueness: proj is surjective, so any other
                            // factorization must agree on every class
                            for (std::size_t c = 0; c < q.classes.size(); ++c)
                                for (std::size_t e : q.classes[c]) CHECK(h.table[e] == u[c]);
                        }
                    }
                }
        }
}

TEST_CASE("quotient representatives are least-index and classes ordered by least element") {
    std::vector<std::pair<std::size_t, std::size_t>> rel{{4, 2}, {1, 3}};
    Quotient q = quotient_by_pairs(FinSet(5), rel);
    CHECK(q.classes.size() == 3);
    CHECK(q.classes[0] == std::vector<std::size_t>{0});
    CHECK(q.classes[1] == std::vector<std::size_t>{1, 3});
    CHECK(q.classes[2] == std::vector<std::size_t>{2, 4});
}

TEST_CASE("labels must be distinct") {
    CHECK_THROWS_AS(FinSet::labeled({"a", "a"}), error);
    FinSet s = FinSet::labeled({"a", "b"});
    CHECK(s.index_of_label("b") == 1);
    CHECK(!s.index_of_label("c").has_value());
}
