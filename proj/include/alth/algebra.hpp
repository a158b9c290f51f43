#ifndef ALTH_ALGEBRA_HPP
#define ALTH_ALGEBRA_HPP

#include "alth/theory.hpp"

namespace alth {

/// A normal T-algebra: the value at arity n is literally carrier^n, so the
/// data is the carrier plus one table per abstract operation.
struct Algebra {
    Theory theory;
    FinSet carrier;
    // interp[arity_pos][op elem] : table over carrier^n points (tuple-encoded)
    std::vector<std::vector<std::vector<std::size_t>>> interp;

    const std::vector<std::size_t>& table(std::size_t arity_pos, std::size_t elem) const {
        return interp[arity_pos][elem];
    }
    /// interp of an op element applied to an encoded carrier^n point
    std::size_t apply(std::size_t arity_pos, std::size_t elem, std::size_t point) const {
        return interp[arity_pos][elem][point];
    }
};

ValidationReport validate_algebra(const Algebra& a);

/// Builds the algebra determined by carrier tables for the signature ops,
/// replaying each abstract operation's term; nullopt when the assignment is
/// inconsistent (does not satisfy the theory's equations).
std::optional<Algebra> algebra_from_op_tables(const Theory& t, const FinSet& carrier,
                                              const std::vector<std::vector<std::size_t>>& ops);

/// The terminal algebra on a one-point carrier.
Algebra terminal_algebra(const Theory& t);

/// All algebras with carrier sizes 0..max_carrier, deterministically ordered
/// (carrier size, then lexicographic on concatenated signature tables).
std::vector<Algebra> enumerate_algebras(const Theory& t, std::size_t max_carrier,
                                        std::size_t cap = 2'000'000);

/// All homomorphisms A -> B, in lexicographic table order.
std::vector<FinFn> enumerate_homs(const Algebra& a, const Algebra& b);

bool is_algebra_hom(const Algebra& a, const Algebra& b, const FinFn& h);

/// phi(J) = T(J,-): carrier op(J), operations act by substitution.
Algebra representable_algebra(const Theory& t, std::size_t j);

/// Alg(phi(J), A) ~ carrier^J via h |-> h o gamma_J, checked by brute force.
bool check_rel_adjunction(const Theory& t, std::size_t j, const Algebra& a,
                          std::string* witness = nullptr);

/// Restriction of a cod-algebra along a theory morphism.
Algebra restrict_along(const TheoryMorphism& m, const Algebra& b);

// ---------------------------------------------------------------------------
// General (not-necessarily-normal) functor data and normalization.
// ---------------------------------------------------------------------------

struct GeneralAlgebraData {
    Theory theory;
    std::vector<FinSet> obj;  // per represented arity
    // act[m_pos][n_pos] : per element of hom(m,n), a table obj(m) -> obj(n)
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> act;
};

/// Functoriality of the raw data (identity and composition on tabulated homs).
ValidationReport validate_general_algebra(const GeneralAlgebraData& g);

/// View of a normal algebra as GeneralAlgebraData (obj(n) = carrier^n).
GeneralAlgebraData general_of_algebra(const Algebra& a);

struct Normalization {
    Algebra algebra;
    std::vector<FinFn> kappa;  // per represented arity: obj(n) -> carrier^n
    bool identity_witness = false;
};

struct NotAnAlgebra {
    std::size_t arity = 0;
    std::string reason;
};

std::variant<Normalization, NotAnAlgebra> normalize(const GeneralAlgebraData& g);

// ---------------------------------------------------------------------------
// Colimit creation: coequalizers of algebra homs.
// ---------------------------------------------------------------------------

struct AlgebraCoequalizer {
    Algebra algebra;
    Quotient carrier_quotient;  // proj : |B| -> |Q|
};

struct StabilityFailure {
    std::size_t arity = 0;
    std::size_t colim_size = 0;  // size of coeq(f^n, g^n)
    std::size_t power_size = 0;  // |Q|^n
};

/// Computes the carrier coequalizer, checks J-stability at every represented
/// arity (the canonical map coeq(f^n,g^n) -> Q^n must be a bijection), and on
/// success returns the unique algebra structure making proj a homomorphism.
std::variant<AlgebraCoequalizer, StabilityFailure> coequalize_algebras(const Algebra& a,
                                                                       const Algebra& b,
                                                                       const FinFn& f,
                                                                       const FinFn& g);

}  // namespace alth

#endif
