#pragma once

#include <optional>

#include "shlr/cell.hpp"

namespace shlr {

// Weight-truncated formal symmetric algebra over a base dgca on dual
// generators, with a weight-decomposed differential and the projection to the
// base. Elements live in the combined free gca on (base gens ++ dual gens);
// the weight of a monomial is its number of dual factors, truncated at W.
struct FatCdga {
    SemiFreeDgca base;
    std::vector<Generator> dual_gens;
    int W = 4;

    // d^n values: on base generators (weight exactly n) and on dual
    // generators (weight exactly n+1); indexed [weight][generator].
    // d^0 on the base is the base differential (enforced).
    std::vector<std::vector<AlgElt>> dbase;
    std::vector<std::vector<AlgElt>> ddual;

    // Primal cell structure when this complex was built from one; cylinder
    // construction requires it.
    std::optional<CellModule> primal;

    GradedAlgebra total; // derived: base.alg.gens ++ dual_gens

    FatCdga() = default;
    FatCdga(SemiFreeDgca b, std::vector<Generator> duals, int cutoff,
            std::vector<std::vector<AlgElt>> d_base, std::vector<std::vector<AlgElt>> d_dual,
            std::optional<CellModule> primal_module = std::nullopt);

    static FatCdga initial(int cutoff); // (k, k) with zero differential

    int n_base() const { return base.size(); }
    int n_dual() const { return static_cast<int>(dual_gens.size()); }
    int dual_index(int i) const { return n_base() + i; } // index in `total`

    int weight(const Monomial& m) const;
    AlgElt truncate(const AlgElt& a) const;
    AlgElt weight_part(const AlgElt& a, int w) const;
    AlgElt mul(const AlgElt& a, const AlgElt& b) const; // truncated product

    AlgElt embed_base(const AlgElt& a) const;  // base element -> total element
    AlgElt project_base(const AlgElt& a) const; // weight-0 truncation, base indices

    // Derivation extension of the weight-n component on a total element.
    AlgElt apply_component(int n, const AlgElt& a) const;
    AlgElt d(const AlgElt& a) const; // all components, truncated

    // Derivation extension with explicit value tables (one per base and dual
    // generator); used by obstruction solvers probing candidate components.
    AlgElt apply_values(const std::vector<AlgElt>& on_base, const std::vector<AlgElt>& on_dual,
                        const AlgElt& a) const;

    // Weight-1 elements as elements of the free module on dual generators.
    ModElt to_dual_module_elt(const AlgElt& a) const;
    AlgElt from_dual_module_elt(const ModElt& m) const;

    std::string print(const AlgElt& a) const { return total.print(a); }

    bool operator==(const FatCdga& o) const;
};

struct SquareZeroReport {
    bool pass = true;
    int weight = -1;          // first failing total weight
    std::string generator;    // witnessing generator
    std::string witness;      // printed defect
};

// Verifies sum_{i+j=k} d^i(d^j(g)) = 0 on every generator for each k <= W.
SquareZeroReport square_zero_check(const FatCdga& X);

// Weight-0 component on dual generators as a finite-rank dual module over the base.
DualCellModule linear_part_of_differential(const FatCdga& X);

// Morphism of fat cdgas: a base dgca map plus weight components on dual
// generators (the weight-n component of g(m_i^*) has weight n+1; no weight-0
// tail, so the projection condition pi∘g = f0∘pi holds structurally).
struct FatMorphism {
    FatCdga source;
    FatCdga target;
    DgcaMorphism base_map;
    std::vector<std::vector<AlgElt>> gdual; // [weight][dual generator]

    FatMorphism() = default;
    FatMorphism(FatCdga src, FatCdga tgt, DgcaMorphism f0, std::vector<std::vector<AlgElt>> g);

    static FatMorphism identity(const FatCdga& X);

    AlgElt apply(const AlgElt& a) const;
    AlgElt apply_dual_gen(int i) const; // all weight components of g(m_i^*)

    bool operator==(const FatMorphism& o) const;
};

struct FatMorphismReport {
    bool pass = true;
    std::string generator;
    std::string witness;
};

// Projection compatibility plus d-intertwining through weight W on generators.
FatMorphismReport check_fat_morphism(const FatMorphism& g);

FatMorphism compose_fat_morphisms(const FatMorphism& g, const FatMorphism& h);

DualCellModule base_change_dual(const DgcaMorphism& f, const DualCellModule& D);

struct LinearPart {
    FreeModMap map;            // B ⊗_A M^* -> N^* over the target base
    bool commutes_with_d0 = false;
};

LinearPart linear_part_of_morphism(const FatMorphism& g);

} // namespace shlr
