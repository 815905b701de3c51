#pragma once

#include "shlr/fat.hpp"

namespace shlr {

// Sorted multiset of module generator indices.
using Word = std::vector<int>;

// Weight-l multiderivation over the identity of a cell module: a symmetric
// (l+1)-ary bracket valued in the module plus an l-ary anchor valued in
// derivations of the base, tied together by the relative Leibniz law.
struct Multiderivation {
    int weight = 0;
    CellModule module;
    std::map<Word, ModElt> bracket;              // on sorted words of length weight+1
    std::map<Word, std::vector<AlgElt>> anchor;  // on sorted words of length weight

    Multiderivation() = default;
    Multiderivation(int l, CellModule m, std::map<Word, ModElt> br,
                    std::map<Word, std::vector<AlgElt>> an);

    static Multiderivation zero(int l, const CellModule& m);
    // Weight 0: the dg structure itself (module differential, base differential).
    static Multiderivation weight0(const CellModule& m);

    bool is_zero() const;
    bool operator==(const Multiderivation&) const = default;

    // Bracket on a pure sorted word (zero when absent).
    ModElt bracket_on(const Word& w) const;
    std::vector<AlgElt> anchor_on(const Word& w) const;

    // Multilinear evaluation on general module elements, expanding through
    // the defining law to pull coefficients out of the slots.
    ModElt eval_bracket(const std::vector<ModElt>& slots) const;
    std::vector<AlgElt> eval_anchor(const std::vector<ModElt>& slots) const;
};

// All sorted words of the given length; odd-degree generators never repeat.
std::vector<Word> generator_words(const CellModule& M, int length);

struct MultiderSquareReport {
    // Exact defects of the inhomogeneous square at total weight k.
    std::map<Word, ModElt> bracket_defect;                // words of length k+1
    std::map<Word, std::vector<AlgElt>> anchor_defect;    // words of length k, values per base gen
    bool is_zero() const;
};

// Evaluates the two unshuffle sums of the composition on all generator words
// of the appropriate lengths for total weight k.
MultiderSquareReport multider_square(const std::vector<Multiderivation>& XX, int k);

// One weight component of a derivation on the truncated symmetric algebra.
struct FatComponent {
    int weight = 0;
    std::vector<AlgElt> on_base; // value weight = weight
    std::vector<AlgElt> on_dual; // value weight = weight + 1
};

// The fat side a multiderivation lives on: dual generators of the module over
// the same base, inside a weight-truncated symmetric algebra.
FatCdga fat_shell(const CellModule& M, int W);

// The weight-l derivation dual to a multiderivation, and the reconstruction;
// mutually inverse on the finite-rank truncated class.
FatComponent dualize_multider(const Multiderivation& X, const FatCdga& shell);
Multiderivation reconstruct_multider(const FatComponent& d, const FatCdga& shell);

// SH Lie-Rinehart pair: base + cell module (the weight-0 structure) plus
// higher multiderivations up to the arity cutoff. Square-zero is a property
// checked by multider_square / ce_from_pair, not enforced on the value —
// invalid bracket data must remain representable for defect reporting.
struct SHLRPair {
    SemiFreeDgca base;
    CellModule module;
    std::vector<Multiderivation> brackets; // index l = weight; brackets[0] is the dg structure

    SHLRPair() = default;
    SHLRPair(CellModule m, std::vector<Multiderivation> higher);

    int cutoff() const { return static_cast<int>(brackets.size()) - 1; }
};

// CE differential assembled from the pair without the square-zero gate;
// check-style commands report the verdict instead of rejecting.
FatCdga assemble_ce(const SHLRPair& P, int W);

// Chevalley-Eilenberg complex of the pair: d^n = dualize(X_n); rejects (with
// the weight of first failure) when the square-zero transport fails.
FatCdga ce_from_pair(const SHLRPair& P, int W);

// Inverse direction: multiderivations reconstructed weight by weight.
SHLRPair pair_from_ce(const FatCdga& X);

} // namespace shlr
