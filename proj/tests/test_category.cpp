#include <doctest.h>

#include <map>

#include "alth/arity.hpp"
#include "alth/category.hpp"

using namespace alth;

namespace {

EnrichedCategory z2_cat() {
    // one object, hom = Z/2 under xor
    return one_object_category(FinSet(2), {0, 1, 1, 0}, 0);
}

// independent brute-force coend oracle: close the relation F(h,1)x ~ F(1,h)x
// by a dense fixpoint sweep over an explicit boolean matrix (no union-find)
std::size_t coend_oracle(const Bifunctor& f) {
    const auto& c = *f.base;
    const std::size_t n = c.n_objects();
    std::vector<std::size_t> off(n, 0);
    std::size_t total = 0;
    for (std::size_t a = 0; a < n; ++a) {
        off[a] = total;
        total += f.value(a, a).size;
    }
    std::vector<std::vector<bool>> rel(total, std::vector<bool>(total, false));
    for (std::size_t i = 0; i < total; ++i) rel[i][i] = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t h = 0; h < c.hom[a][b].size; ++h) {
                FinFn left = f.action(Mor{a, b, h}, Mor{a, a, c.id[a]});
                FinFn right = f.action(Mor{b, b, c.id[b]}, Mor{a, b, h});
                for (std::size_t x = 0; x < f.value(b, a).size; ++x) {
                    rel[off[a] + left.table[x]][off[b] + right.table[x]] = true;
                    rel[off[b] + right.table[x]][off[a] + left.table[x]] = true;
                }
            }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < total; ++i)
            for (std::size_t j = 0; j < total; ++j)
                if (rel[i][j])
                    for (std::size_t k = 0; k < total; ++k)
                        if (rel[j][k] && !rel[i][k]) {
                            rel[i][k] = true;
                            changed = true;
                        }
    }
    std::size_t classes = 0;
    std::vector<bool> seen(total, false);
    for (std::size_t i = 0; i < total; ++i) {
        if (seen[i]) continue;
        ++classes;
        for (std::size_t j = 0; j < total; ++j)
            if (rel[i][j]) seen[j] = true;
    }
    return classes;
}

}  // namespace

TEST_CASE("one-object category from Z/2 is valid") {
    CHECK(validate_category(z2_cat()).ok());
}

TEST_CASE("corrupted composition table is reported") {
    EnrichedCategory c = z2_cat();
    c.comp[0][0][0][0] = 1;  // breaks 0*0 = 0
    ValidationReport rep = validate_category(c);
    CHECK(!rep.ok());
}

TEST_CASE("full cardinal category on {0,1} is valid") {
    CategoryPtr c = arity_category(std::vector<std::size_t>{0, 1});
    CHECK(validate_category(*c).ok());
    CHECK(c->hom[0][1].size == 1);
    CHECK(c->hom[1][0].size == 0);
    CHECK(c->hom[1][1].size == 1);
}

TEST_CASE("identity functor and identity/pre/post permutations") {
    auto c = std::make_shared<EnrichedCategory>(z2_cat());
    CHECK(validate_functor(EnrichedFunctor::identity(c)).ok());
    // postcomposition by id is the identity permutation
    for (std::size_t f = 0; f < 2; ++f) CHECK(c->compose(0, 0, 0, c->id[0], f) == f);
}

TEST_CASE("non-natural family is reported") {
    // functors Id, Id on Z/2; component = the non-identity element fails
    // naturality against itself? no: pick the constant-swap family on Id vs Id
    auto c = std::make_shared<EnrichedCategory>(z2_cat());
    NatTrans nt;
    nt.source = EnrichedFunctor::identity(c);
    nt.target = EnrichedFunctor::identity(c);
    nt.component = {0};
    CHECK(validate_nat(nt).ok());
    // swap component: naturality needs m*s = s*m for all m; Z/2 abelian so
    // still natural; corrupt the target functor to break the square
    NatTrans bad = nt;
    bad.component = {1};
    bad.target.hom_map[0][0] = {0, 0};  // not a functor; square must fail somewhere
    CHECK(!validate_nat(bad).ok());
}

TEST_CASE("check_cotensor basics") {
    // C = J^op on {0,1} via the initial-like construction: use arity category
    // of {1} for the trivial case [1,C] = C
    CategoryPtr c = arity_category(std::vector<std::size_t>{1});
    std::vector<std::size_t> counit{c->id[0]};
    CHECK(check_cotensor(*c, 1, 0, 0, counit));
}

TEST_CASE("coend of the trivial one-object category is the value") {
    auto c = std::make_shared<EnrichedCategory>(
        one_object_category(FinSet(1), {0}, 0));
    Bifunctor f;
    f.base = c;
    f.value = [](std::size_t, std::size_t) { return FinSet(5); };
    f.action = [](const Mor&, const Mor&) { return FinFn::identity(FinSet(5)); };
    CoendResult r = coend(f);
    CHECK(r.value.size == 5);
}

TEST_CASE("coend over two isomorphic objects with constant singleton value") {
    // category with objects a,b and exactly one morphism in each hom-set
    // (an isomorphism pair): the constant singleton diagram has coend 1
    auto c = std::make_shared<EnrichedCategory>();
    c->objects = {"a", "b"};
    c->hom.assign(2, std::vector<FinSet>(2, FinSet(1)));
    c->comp.assign(2, std::vector<std::vector<std::vector<std::size_t>>>(
                          2, std::vector<std::vector<std::size_t>>(2, {0})));
    c->id = {0, 0};
    REQUIRE(validate_category(*c).ok());
    Bifunctor f;
    f.base = c;
    f.value = [](std::size_t, std::size_t) { return FinSet(1); };
    f.action = [](const Mor&, const Mor&) { return FinFn::identity(FinSet(1)); };
    CoendResult r = coend(f);
    CHECK(r.value.size == 1);
}

TEST_CASE("density-style collapse: F(b,a) = J(1,b) x T(a) over {0,1}") {
    // T(0) empty, T(1) arbitrary: coend is T(1)
    CategoryPtr c = arity_category(std::vector<std::size_t>{0, 1});
    const std::size_t t1 = 3;
    std::vector<std::size_t> tsz{0, t1};
    Bifunctor f;
    f.base = c;
    // J(1,b): functions 1->b, i.e. b elements; contravariant slot is J(1,-)?
    // no: F(b,a) = hom(1,b) x T(a), with b the contravariant slot in F(b,a):
    // hom(1,-) is covariant in its second argument, so the contravariant
    // dependence is trivial here -- realize F(x,y) = hom(1,x won't be
    // functorial contravariantly; instead take the weight hom(x,1)... use
    // F(x,y) = hom(x,1-element set) x T(y): hom(x,1) has exactly 1 element
    // for every cardinal x, so F(x,y) = T(y) with trivial contravariant
    // action; the coend is then colim T over {0,1} which is T(1).
    f.value = [&](std::size_t, std::size_t y) { return FinSet(tsz[y]); };
    f.action = [&](const Mor& h, const Mor& k) {
        (void)h;
        // covariant action: the unique map T(0) -> T(1) is empty; ids else
        FinFn a(FinSet(tsz[k.dom]), FinSet(tsz[k.cod]), [&] {
            std::vector<std::size_t> t(tsz[k.dom]);
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
            return t;
        }());
        return a;
    };
    CoendResult r = coend(f);
    CHECK(r.value.size == t1);
    CHECK(coend_oracle(f) == t1);
}

TEST_CASE("coend agrees with the brute-force oracle on small bifunctors") {
    // all bifunctors would be too many; sweep a family over the {0,1} arity
    // category with varying value sizes and collapse maps
    CategoryPtr c = arity_category(std::vector<std::size_t>{0, 1});
    for (std::size_t v00 = 0; v00 <= 2; ++v00)
        for (std::size_t v11 = 1; v11 <= 2; ++v11)
            for (std::size_t u = 0; u < pow_sz(v11, v00); ++u)
                for (std::size_t d = 0; d < pow_sz(v00, v11); ++d) {
                    // F contravariant along iota via d, covariant via u
                    std::map<std::pair<std::size_t, std::size_t>, std::size_t> sz{
                        {{0, 0}, v00}, {{0, 1}, v11}, {{1, 0}, v00}, {{1, 1}, v11}};
                    // F(x,y) with x contra, y cov: choose F(x,y) = s(y) but
                    // x=1 blocks shrink through d: F(1,y) = s(y) as well;
                    // keep tables total by construction below
                    Bifunctor f;
                    f.base = c;
                    f.value = [&](std::size_t x, std::size_t y) {
                        return FinSet(sz.at({x, y}));
                    };
                    auto ut = fn_decode(u, v00, v11);
                    auto dt = fn_decode(d, v11, v00);
                    f.action = [&](const Mor& h, const Mor& k) {
                        // contra along iota: F(1,y) -> F(0,y) via d when y
                        // sizes match; cov along iota: F(x,0) -> F(x,1) via u
                        const std::size_t from = sz.at({h.cod, k.dom});
                        const std::size_t to = sz.at({h.dom, k.cod});
                        std::vector<std::size_t> t(from);
                        for (std::size_t i = 0; i < from; ++i) {
                            std::size_t mid = i;
                            if (k.dom == 0 && k.cod == 1) mid = ut.empty() ? 0 : ut[mid];
                            if (h.dom == 0 && h.cod == 1) mid = dt.empty() ? 0 : dt[mid];
                            t[i] = mid % std::max<std::size_t>(to, 1);
                        }
                        return FinFn(FinSet(from), FinSet(to), t);
                    };
                    ValidationReport rep = validate_bifunctor(f);
                    if (!rep.ok()) continue;  // only functorial instances count
                    CHECK(coend(f).value.size == coend_oracle(f));
                }
}
