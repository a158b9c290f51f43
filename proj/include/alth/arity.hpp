#ifndef ALTH_ARITY_HPP
#define ALTH_ARITY_HPP

#include "alth/category.hpp"

namespace alth {

/// A system of arities inside FinSet: either a finite cardinal set closed
/// under multiplication and containing 1, or the full finite-cardinal system
/// handled lazily behind a window bound.
struct AritySystem {
    enum class Kind { finite, fin_card };

    Kind kind = Kind::finite;
    std::vector<std::size_t> members;  // finite: sorted distinct; fin_card: 0..window
    std::size_t window = 0;            // fin_card only

    static AritySystem finite(std::vector<std::size_t> cardinals);
    static AritySystem fin_card(std::size_t window);

    bool is_fin_card() const { return kind == Kind::fin_card; }
    const std::vector<std::size_t>& represented() const { return members; }
    std::optional<std::size_t> index_of(std::size_t arity) const;
    bool contains(std::size_t arity) const;
    std::string describe() const;

    /// fin_card: the arities 0..w; finite: members (w ignored).
    std::vector<std::size_t> arity_list(std::size_t w) const;
};

/// mk_arity_system with the spec'd error reporting (throws with the
/// witnessing pair when the cardinal set is not product-closed).
AritySystem mk_arity_system(std::vector<std::size_t> cardinals);

/// The arity category on the given arity list: hom(m,n) = all functions
/// m -> n under the canonical function encoding, composition of functions.
CategoryPtr arity_category(const std::vector<std::size_t>& arities);
CategoryPtr arity_category(const AritySystem& s);

/// T : J -> FinSet, given pointwise by arity.  action(a,b,u) is the table of
/// T(u) : T(a) -> T(b) for the u-th element of hom_set(a,b).
struct ArityFunctor {
    AritySystem base;
    std::function<FinSet(std::size_t)> value;
    std::function<std::vector<std::size_t>(std::size_t, std::size_t, std::size_t)> action;

    /// j itself: value(J) = J, action(u) = u.
    static ArityFunctor inclusion(const AritySystem& s);
    /// finite-kind functor from explicit tables (one entry per member arity)
    static ArityFunctor from_tables(const AritySystem& s, std::vector<FinSet> values,
                                    std::vector<std::vector<std::vector<std::size_t>>> actions);
};

ValidationReport validate_arity_functor(const ArityFunctor& t, std::size_t window);

/// The weight y_j(V) = FinSet(j-, V) with its contravariant action; feeding
/// lan_along_j and the eleuthericity checks.
struct Weight {
    AritySystem base;
    FinSet target;

    FinSet value(std::size_t arity) const;  // hom_set(arity, target)
    /// contravariant: for u : a -> b, the table of precomposition
    /// hom(b,V) -> hom(a,V)
    std::vector<std::size_t> action(std::size_t a, std::size_t b, std::size_t u) const;
};

/// A pointwise endofunctor evaluator on FinSet.
struct Endofunctor {
    std::function<FinSet(const FinSet&)> value;
    std::function<FinFn(const FinFn&)> map;
};

struct LanResult {
    FinSet value;
    bool stabilized = true;          // always true for finite kind (exact coend)
    std::size_t window_used = 0;     // fin_card: the truncation window
    std::vector<std::size_t> arities;
    CoendResult inner;
    FinSet target;                   // the V the extension was evaluated at
    std::vector<FinSet> functor_values;  // T(J) per arity in `arities`

    /// class of the pair (f : J -> V, x in T(J)); f given by its hom index
    std::size_t insert(std::size_t arity_pos, std::size_t f_idx, std::size_t x_idx) const;
    /// decode a disjoint-union representative back to (arity_pos, f_idx, x_idx)
    std::tuple<std::size_t, std::size_t, std::size_t> decode(std::size_t cls_idx) const;
};

/// Lan_j T evaluated at V: the coend over J of hom(J,V) x T(J).  Finite kind
/// is exact; fin_card is truncated at `window` (default: the system window)
/// with a stabilization witness comparing windows w-1 and w.
LanResult lan_along_j(const ArityFunctor& t, const FinSet& v);
LanResult lan_along_j(const ArityFunctor& t, const FinSet& v, std::size_t window);

/// The canonical comparison coend(hom(J,V) x hom(K,TJ)) -> hom(K, Lan T V)
/// is a bijection?  Inconclusive under unstabilized truncation.
CheckResult check_eleutheric_instance(const AritySystem& s, const ArityFunctor& t, const FinSet& v,
                                      std::size_t k_arity);
CheckResult check_eleutheric_instance(const AritySystem& s, const ArityFunctor& t, const FinSet& v,
                                      std::size_t k_arity, std::size_t window);

/// xi_{T,V} : Lan_j(T o j)(V) -> T(V), the counit comparison; bijective iff
/// T looks J-ary at V.
CheckResult check_xi_iso(const AritySystem& s, const Endofunctor& t, const FinSet& v);
CheckResult check_xi_iso(const AritySystem& s, const Endofunctor& t, const FinSet& v,
                         std::size_t window);

}  // namespace alth

#endif
