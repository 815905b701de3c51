#pragma once

#include "shlr/multider.hpp"
#include "shlr/truncate.hpp"

namespace shlr {

enum class Verdict { True, False, Inconclusive };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct WeqReport {
    Verdict verdict = Verdict::Inconclusive;
    CohomologyReport base_cone;   // cone of f0
    CohomologyReport linear_cone; // cone of the dual of the linear part
};

// True iff both cone cohomologies vanish on the certified interior of the
// window; an uncertified interior degree forces "inconclusive", never "true".
WeqReport is_weak_equivalence(const FatMorphism& g, const TruncationConfig& cfg);

struct CofibrationReport {
    bool verdict = false;
    std::string reason;
};

// Syntactic check: base map an inclusion of free gcas onto a generator
// subset, dual part the formal inclusion induced by a generator subset.
CofibrationReport is_cofibration(const FatMorphism& g);

struct Coproduct {
    FatCdga object;
    FatMorphism in_left;
    FatMorphism in_right;
};

Coproduct coproduct(const FatCdga& X, const FatCdga& Y);

// The universal map X ⊔ X -> X restricting to the identity on both factors.
FatMorphism fold_morphism(const Coproduct& c, const FatCdga& X);

struct Pushout {
    FatCdga object;
    FatMorphism gamma; // from the target of f
    FatMorphism phi;   // from the target of g
};

// Pushout of f along the cofibration g (common source), with the unique
// differential intertwined by gamma and phi.
Pushout pushout_along_cofibration(const FatMorphism& f, const FatMorphism& g);

struct BaseCylinder {
    SemiFreeDgca tensor_square; // A ⊗ A
    SemiFreeDgca cyl;           // generators x@0, x@1, x@s per generator x of A
    DgcaMorphism incl;          // A ⊗ A -> Cyl
    DgcaMorphism proj;          // Cyl -> A
};

// Cylinder of the base: d(x@s) = x@0 - x@1 - h with h solved exactly inside
// the span of s-bearing monomials so that d^2 = 0 and proj(h) = 0.
BaseCylinder base_cylinder(const SemiFreeDgca& A, const TruncationConfig& cfg);

struct PathModule {
    CellModule object;     // generators m@I, m@0, m@1 per generator m of M
    FreeModMap from_module; // M -> P, m -> m@0 + m@1 (the diagonal factor)
    FreeModMap to_ends;     // P -> M ⊕ M realized as the two-copy module
    FreeModMap eval0;       // P -> M at the 0 end
    FreeModMap eval1;       // P -> M at the 1 end
};

// 1-shifted cone presentation of the path object: the interval copies carry
// -S(d m), and the endpoint copies connect into them with the fold signs
// (d m@0 = (dm)@0 - m@I, d m@1 = (dm)@1 + m@I).
PathModule path_module(const CellModule& M);

// Differential lifted along a trivial fibration p (caller-certified),
// recursively in the generators; exact solves, window error on failure.
CellModule lift_differential(const DgcaMorphism& p, const CellModule& N, const TruncationConfig& cfg);

// Chain lift of psi through q, recursively in the generators of the source
// cell module; source and target live over the same base. When index_bounds
// is given, the image of the i-th generator is constrained to the span of
// target generators with index <= index_bounds[i] (preserves cell filtrations).
FreeModMap lift_module_map(const FreeModMap& q, const FreeModMap& psi, const TruncationConfig& cfg,
                           const std::vector<int>* index_bounds = nullptr);

struct FactorizationConfig {
    TruncationConfig trunc;
    int W = 3;
    bool operator==(const FactorizationConfig&) const = default;
};

struct ObstructionEntry {
    int weight = 0;
    std::string generator;
    std::string defect;     // obstruction before correction
    std::string correction; // solved value (Delta / lifted D absorbed, strict fibers)
};

struct CylinderWitness {
    Coproduct copr;     // X ⊔ X
    FatMorphism fold;   // X ⊔ X -> X
    FatCdga cyl;        // the middle object C
    FatMorphism i;      // X ⊔ X -> C (cofibration)
    FatMorphism p;      // C -> X (weak equivalence)
    std::vector<ObstructionEntry> log;
};

// Factorization of the fold map through weight-by-weight obstruction solves.
CylinderWitness cylinder_ce(const FatCdga& X, const FactorizationConfig& cfg);

struct DerHomReport {
    bool dims_agree = true;     // on every certified degree
    bool map_bijective = true;  // natural map has full rank there
    bool chain_map = true;      // natural map intertwines the differentials
    std::map<int, int> lhs_dims; // Der(A, M^dual)
    std::map<int, int> rhs_dims; // Hom_B(M, Der(A, B))
    std::set<int> incomplete;
};

// Der(A, M^dual) vs Hom_B(M, Der(A,B)) degree by degree in the window.
DerHomReport der_hom_transport(const DgcaMorphism& p, const CellModule& M, const TruncationConfig& cfg);

} // namespace shlr
