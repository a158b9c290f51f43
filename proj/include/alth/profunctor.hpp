#ifndef ALTH_PROFUNCTOR_HPP
#define ALTH_PROFUNCTOR_HPP

#include "alth/monad.hpp"

namespace alth {

/// An endo-profunctor on the arity category, materialized over a finite
/// arity list (the window, for fin_card systems).  value(a,b) is
/// contravariant in the first position and covariant in the second;
/// action(a,b,u, c,d,v) = M(h,k) : M(b,c) -> M(a,d) for the u-th arity map
/// a -> b and the v-th arity map c -> d.
struct Profunctor {
    std::string name;
    AritySystem arities;
    std::vector<std::size_t> arity_list;
    std::function<FinSet(std::size_t, std::size_t)> value;
    std::function<FinFn(std::size_t, std::size_t, std::size_t, std::size_t, std::size_t,
                        std::size_t)>
        action;

    std::size_t pos_of(std::size_t arity) const;
    Bifunctor bifunctor() const;
};

ValidationReport validate_profunctor(const Profunctor& p, std::size_t budget = 2'000'000);

/// The identity profunctor hom(j-, j-).
Profunctor hom_profunctor(const AritySystem& s, std::vector<std::size_t> arity_list);

/// Omega(T) = hom(j-, T j-).
Profunctor omega(const Monad& m, std::vector<std::size_t> arity_list);

struct ZetaResult {
    bool is_iso = false;
    std::string witness;
    // components[a][b] : M(a,b) -> hom_set(J_a, M(1,b)), tabulated
    std::vector<std::vector<std::vector<std::size_t>>> components;
};

/// zeta^M : M => hom(j-, M_I -); iso iff M is copresheaf-representable.
ZetaResult zeta(const Profunctor& p);

/// M_I = M(I,-) as a functor on arities.
ArityFunctor profunctor_mi(const Profunctor& p);

struct ProfComposite {
    Profunctor prof;
    // one coend per (contravariant, covariant) position pair
    std::vector<std::vector<CoendResult>> coends;
    std::vector<std::size_t> arity_list;
    std::vector<std::vector<FinSet>> mv;  // M(a,k) sizes used for block pairing
    std::vector<std::vector<FinSet>> nv;  // N(k,b)

    /// class of (x in M(a,k), y in N(k,b))
    std::size_t insert(std::size_t a, std::size_t k, std::size_t b, std::size_t x,
                       std::size_t y) const;
    /// the comparison against hom(j-, Lan(M_I) N_I -), when both factors are
    /// copresheaf-representable
    CheckResult representable_check;
};

/// Pointwise coend composite (M (x) N)(J,L) = coend_K M(J,K) x N(K,L); also
/// computes the copresheaf-representable form via Lan(M_I) and records the
/// comparison verdict.
ProfComposite compose_profunctors(const Profunctor& m, const Profunctor& n);

/// m^{TS} : Omega(T) (x) Omega(S) => Omega(T o S), with the composite and
/// bijectivity asserted; MF1-MF3 are the monoidal-functor law instances.
CheckResult check_omega_composite(const Monad& t, const Monad& s,
                                  const std::vector<std::size_t>& arity_list);
CheckResult check_omega_monoidal_laws(const Monad& t, const Monad& s, const Monad& u,
                                      const std::vector<std::size_t>& arity_list);

// ---------------------------------------------------------------------------
// Monoids in the bicategory of copresheaf-representable profunctors.
// ---------------------------------------------------------------------------

struct ProfMonoid {
    Profunctor carrier;
    // unit e : hom(a,b) -> M(a,b)
    std::function<std::size_t(std::size_t, std::size_t, std::size_t)> unit;
    // multiplication on raw pairs x in M(a,b), y in M(b,c) |-> M(a,c);
    // factoring through the coend is part of validation
    std::function<std::size_t(std::size_t, std::size_t, std::size_t, std::size_t, std::size_t)>
        mult;
};

/// Carrier representability, unit naturality, balance (factorization through
/// the composite coend), unit laws against the actions, associativity.
ValidationReport validate_prof_monoid(const ProfMonoid& p, std::size_t budget = 2'000'000);

/// M(J,K) := hom_T(K,J) with unit tau and multiplication from composition.
ProfMonoid theory_to_prof_monoid(const Theory& t);

/// Rebuilds op/proj/subst tables from the monoid structure (validates first).
Theory prof_monoid_to_theory(const ProfMonoid& p, std::string name = "from-monoid");

/// Exact table-level comparison over represented arities.
bool theories_table_equal(const Theory& a, const Theory& b, std::string* witness = nullptr);

}  // namespace alth

#endif
