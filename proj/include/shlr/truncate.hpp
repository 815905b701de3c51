#pragma once

#include "shlr/cell.hpp"
#include "shlr/complexes.hpp"

namespace shlr {

// Finite realization of unbounded objects: a degree window plus the monomial
// length filtration on algebra coefficients. Cohomology is computed on the
// quotient by monomials of more than length_cap factors; the quotient is a
// complex because the differentials never shorten monomials (checked).
struct TruncationConfig {
    DegreeWindow window;
    int length_cap = 6;
    int max_dim = 50000;
    bool operator==(const TruncationConfig&) const = default;
};

// Basis of a truncated semi-free dgca, one monomial list per window degree.
struct TruncatedAlgebra {
    SemiFreeDgca A;
    TruncationConfig cfg;
    std::map<int, std::vector<Monomial>> basis;
    FiniteComplex cx;

    std::vector<Rat> coords(const AlgElt& a, int n) const;
    AlgElt from_coords(const std::vector<Rat>& v, int n) const;
};

TruncatedAlgebra truncate_algebra(const SemiFreeDgca& A, const TruncationConfig& cfg);

// Basis items of a truncated module: (generator index, coefficient monomial).
struct TruncatedModule {
    FreeDgModule M;
    TruncationConfig cfg;
    std::map<int, std::vector<std::pair<int, Monomial>>> basis;
    FiniteComplex cx;

    std::vector<Rat> coords(const ModElt& m, int n) const;
    ModElt from_coords(const std::vector<Rat>& v, int n) const;
};

TruncatedModule truncate_module(const FreeDgModule& M, const TruncationConfig& cfg);

// Per-degree matrices of an algebra morphism between truncated algebras.
std::map<int, RationalMatrix> matrices_of(const DgcaMorphism& f, const TruncatedAlgebra& src,
                                          const TruncatedAlgebra& tgt);

// Per-degree matrices of a module map between truncated modules.
std::map<int, RationalMatrix> matrices_of(const FreeModMap& f, const TruncatedModule& src,
                                          const TruncatedModule& tgt);

// Quotient projection C_{<=cap} -> C_{<=cap-1} in the truncated bases.
std::map<int, RationalMatrix> cap_projection(const TruncatedAlgebra& full, const TruncatedAlgebra& small);
std::map<int, RationalMatrix> cap_projection(const TruncatedModule& full, const TruncatedModule& small);

// Cohomology certified by cap stabilization: a degree is reported only when
// the projection to the next-lower length cap induces an isomorphism on
// cohomology there; everything else is flagged incomplete. This screens out
// classes created by the length quotient itself.
CohomologyReport certified_cohomology(const FiniteComplex& full, const FiniteComplex& small,
                                      const std::map<int, RationalMatrix>& proj);

CohomologyReport certified_cohomology_algebra(const SemiFreeDgca& A, const TruncationConfig& cfg);
CohomologyReport certified_cohomology_module(const FreeDgModule& M, const TruncationConfig& cfg);

// Cone cohomology of a morphism, certified the same way.
CohomologyReport certified_cone_cohomology(const DgcaMorphism& f, const TruncationConfig& cfg);
CohomologyReport certified_cone_cohomology(const FreeModMap& f, const TruncationConfig& cfg);

} // namespace shlr
