#pragma once

#include "shlr/cofib.hpp"

namespace shlr {

// Declarations parsed from a model file. Expressions are normalized at parse
// time, so the printed form is canonical and print∘parse is a fixpoint.
struct AlgebraDecl {
    std::string name;
    SemiFreeDgca algebra;
    bool operator==(const AlgebraDecl&) const = default;
};

struct ModuleDecl {
    std::string name;
    std::string over;
    CellModule module;
    bool operator==(const ModuleDecl&) const = default;
};

struct BracketsDecl {
    std::string name;
    std::string module;
    std::vector<Multiderivation> multiders; // weights 1..K in order
    bool operator==(const BracketsDecl&) const = default;
};

// Fat morphism between the CE complexes of two declared pairs. Dual images
// are stored unsplit; the weight decomposition happens at the working cutoff.
struct FatMorphismDecl {
    std::string name;
    std::string source; // module name
    std::string target; // module name
    std::vector<AlgElt> base_images; // per source base generator, over target base
    std::vector<AlgElt> dual_images; // per source dual generator, over target CE total
    bool operator==(const FatMorphismDecl&) const = default;
};

struct BaseMorphismDecl {
    std::string name;
    std::string source; // algebra name
    std::string target; // algebra name
    std::vector<AlgElt> images;
    bool operator==(const BaseMorphismDecl&) const = default;
};

struct ModelConfig {
    int weight_cutoff = 4;
    DegreeWindow window{-8, 3};
    int length_cap = 6;
    std::uint64_t seed = 1;
    bool operator==(const ModelConfig&) const = default;
};

struct ModelFile {
    ModelConfig config;
    std::vector<AlgebraDecl> algebras;
    std::vector<ModuleDecl> modules;
    std::vector<BracketsDecl> brackets;
    std::vector<FatMorphismDecl> fat_morphisms;
    std::vector<BaseMorphismDecl> base_morphisms;

    bool operator==(const ModelFile&) const = default;

    const AlgebraDecl* find_algebra(const std::string& n) const;
    const ModuleDecl* find_module(const std::string& n) const;
    const BracketsDecl* find_brackets_for(const std::string& module_name) const;
    const FatMorphismDecl* find_fat_morphism(const std::string& n) const;
    const BaseMorphismDecl* find_base_morphism(const std::string& n) const;

    // The SH Lie-Rinehart pair of a declared module (with its brackets block
    // when one exists).
    SHLRPair pair_of(const std::string& module_name) const;
};

// Parser with line/column error positions; see the grammar in the README.
ModelFile parse_model(const std::string& text);

// Canonical printer: print(parse(text)) is a fixpoint of parse∘print.
std::string print_model(const ModelFile& m);

// The fat morphism of a declaration at the working cutoff.
FatMorphism build_fat_morphism(const ModelFile& m, const FatMorphismDecl& d, int W);

} // namespace shlr
