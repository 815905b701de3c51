#pragma once

#include "shlr/dgca.hpp"

namespace shlr {

// Element of a free graded module: generator index -> algebra coefficient.
struct ModElt {
    std::map<int, AlgElt> comps;

    bool is_zero() const { return comps.empty(); }
    bool operator==(const ModElt&) const = default;

    static ModElt gen(int index, const Rat& c = 1);
    void add_comp(int index, const AlgElt& a);
};

ModElt operator+(const ModElt& a, const ModElt& b);
ModElt operator-(const ModElt& a, const ModElt& b);
ModElt operator*(const Rat& c, const ModElt& a);

// Free dg module over a semi-free dgca, no condition on the generator order.
// CellModule and DualCellModule validate their order conditions on top.
struct FreeDgModule {
    SemiFreeDgca base;
    std::vector<Generator> gens;
    std::vector<ModElt> dgen;

    int size() const { return static_cast<int>(gens.size()); }
    const Generator& gen(int i) const { return gens[static_cast<std::size_t>(i)]; }

    ModElt scale(const AlgElt& a, const ModElt& m) const; // a·m
    ModElt d(const ModElt& m) const;                      // Leibniz extension
    int degree(const ModElt& m) const;
    std::string print(const ModElt& m) const;

    bool operator==(const FreeDgModule&) const = default;
};

// Free graded module whose differential satisfies the lowering condition:
// d(m_i) lands in the span of strictly earlier generators.
struct CellModule : FreeDgModule {
    CellModule() = default;
    CellModule(SemiFreeDgca b, std::vector<Generator> g, std::vector<ModElt> d);
};

// Finite-rank dual: generators m_i^* of degree -|m_i|, differential satisfying
// the rising condition (d m_i^* lands in the span of strictly later duals).
struct DualCellModule : FreeDgModule {
    DualCellModule() = default;
    DualCellModule(SemiFreeDgca b, std::vector<Generator> g, std::vector<ModElt> d);
};

// Transpose-with-Koszul-signs of the structure coefficients; exact round trip
// with primal_of.
DualCellModule dualize_cell(const CellModule& M);
CellModule primal_of(const DualCellModule& D);

// Coefficients pushed through f; differential becomes B ⊗_A d.
CellModule base_change(const DgcaMorphism& f, const CellModule& M);

// Module map over a base morphism between free dg modules.
struct FreeModMap {
    FreeDgModule source;
    FreeDgModule target;
    DgcaMorphism basemap;
    std::vector<ModElt> images;

    FreeModMap() = default;
    FreeModMap(FreeDgModule src, FreeDgModule tgt, DgcaMorphism f0, std::vector<ModElt> img);

    static FreeModMap identity(const FreeDgModule& M);

    ModElt apply(const ModElt& m) const;
    bool is_chain_map() const;
};

// Derivation over a module map: d(a·m) = dB(f0 a)·f(m) + (-1)^{|a|·deg} f0(a)·d(m).
struct ModDerivation {
    FreeModMap over;
    int deg = 1;
    std::vector<ModElt> values;

    ModDerivation() = default;
    ModDerivation(FreeModMap f, int degree, std::vector<ModElt> vals);

    ModElt apply(const ModElt& m) const;
};

struct ModLeibnizReport {
    bool pass = true;
    std::string witness;
};

// Deterministic seeded sampling; a safety net for hand-entered data.
ModLeibnizReport check_leibniz(const ModDerivation& d, int trials, std::uint64_t seed = 1);

} // namespace shlr
