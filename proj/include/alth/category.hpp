#ifndef ALTH_CATEGORY_HPP
#define ALTH_CATEGORY_HPP

#include <functional>
#include <memory>

#include "alth/finset.hpp"

namespace alth {

// Enrichment base is cartesian FinSet, so an enriched category is stored as
// an ordinary finite category with tabulated hom-sets.  The enriched
// vocabulary is kept in the interfaces.

struct EnrichedCategory {
    std::vector<std::string> objects;
    // hom[a][b] : the hom-set from a to b
    std::vector<std::vector<FinSet>> hom;
    // comp[a][b][c] : table over product(hom(b,c), hom(a,b)) with the
    // row-major pairing (g,f) |-> g*|hom(a,b)|+f, valued in hom(a,c)
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> comp;
    std::vector<std::size_t> id;  // id[a] in hom(a,a)

    std::size_t n_objects() const { return objects.size(); }

    std::size_t compose(std::size_t a, std::size_t b, std::size_t c, std::size_t g,
                        std::size_t f) const {
        return comp[a][b][c][g * hom[a][b].size + f];
    }
};

using CategoryPtr = std::shared_ptr<const EnrichedCategory>;

struct ValidationReport {
    std::vector<std::string> violations;
    bool complete = true;  // false when a budget truncated the sweep
    std::string coverage_note;

    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
};

ValidationReport validate_category(const EnrichedCategory& c);

/// One-object category from a monoid given by its multiplication table
/// (mult[pair(g,f)] = g*f) and unit element.
EnrichedCategory one_object_category(const FinSet& elems, const std::vector<std::size_t>& mult,
                                     std::size_t unit, const std::string& obname = "*");

struct EnrichedFunctor {
    CategoryPtr dom;
    CategoryPtr cod;
    std::vector<std::size_t> ob_map;
    // hom_map[a][b] : hom_dom(a,b) -> hom_cod(Fa,Fb)
    std::vector<std::vector<std::vector<std::size_t>>> hom_map;

    static EnrichedFunctor identity(CategoryPtr c);

    std::size_t map_hom(std::size_t a, std::size_t b, std::size_t f) const {
        return hom_map[a][b][f];
    }
};

ValidationReport validate_functor(const EnrichedFunctor& f);

struct NatTrans {
    EnrichedFunctor source;
    EnrichedFunctor target;  // parallel to source
    std::vector<std::size_t> component;  // component[a] in hom_cod(Fa, Ga)
};

ValidationReport validate_nat(const NatTrans& n);

/// Decides whether `counit` (a list of `power` elements of hom(cand,tgt))
/// exhibits cand as the cotensor [power, tgt]: for every object D the induced
/// map hom(D,cand) -> hom(D,tgt)^power must be a bijection, naturally in D.
bool check_cotensor(const EnrichedCategory& c, std::size_t power, std::size_t tgt,
                    std::size_t cand, const std::vector<std::size_t>& counit,
                    std::string* witness = nullptr);

// ---------------------------------------------------------------------------
// Coends of finite bifunctors, the colimit engine everything else reduces to.
// ---------------------------------------------------------------------------

/// A morphism of an EnrichedCategory, addressed by endpoints and hom index.
struct Mor {
    std::size_t dom = 0;
    std::size_t cod = 0;
    std::size_t idx = 0;
};

/// F : C^op (x) C -> FinSet.  value(a,b) is contravariant in a, covariant in
/// b; action(h,k) = F(h,k) : F(h.cod, k.dom) -> F(h.dom, k.cod).
struct Bifunctor {
    CategoryPtr base;
    std::function<FinSet(std::size_t, std::size_t)> value;
    std::function<FinFn(const Mor&, const Mor&)> action;
};

/// Checks identities exhaustively and composition in each variable up to
/// `budget` elementary comparisons; report.complete records whether the
/// composition sweep finished.
ValidationReport validate_bifunctor(const Bifunctor& f, std::size_t budget = 2'000'000);

struct CoendResult {
    FinSet value;
    std::vector<std::size_t> offsets;  // block offset of F(a,a) in the disjoint union
    FinFn proj;                        // disjoint union of the F(a,a) -> value

    std::size_t cls(std::size_t obj, std::size_t x) const { return proj.table[offsets[obj] + x]; }
    /// least element of the class, as (object, element) in the disjoint union
    std::pair<std::size_t, std::size_t> representative(std::size_t cls_idx) const;
};

/// The coend of F, computed as the coequalizer of the two action maps out of
/// the disjoint union over all h : a -> b of F(b,a).  Validates the bifunctor
/// first and throws on any violation found within the budget.
CoendResult coend(const Bifunctor& f, std::size_t validation_budget = 2'000'000);

}  // namespace alth

#endif
