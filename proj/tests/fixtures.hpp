#pragma once

// Shared instance builders for the unit and acceptance suites.

#include "shlr/multider.hpp"

namespace shlr::fixtures {

inline SemiFreeDgca base_k() { return SemiFreeDgca::field(); }

inline SemiFreeDgca base_kx() {
    return SemiFreeDgca(GradedAlgebra({{"x", 0}}), {AlgElt::zero()});
}

// Module of a plain Lie algebra: n generators in degree -1, zero differential,
// over the field.
inline CellModule lie_module(int n) {
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) gens.push_back({"e" + std::to_string(i + 1), -1});
    return CellModule(base_k(), gens, std::vector<ModElt>(static_cast<std::size_t>(n)));
}

// Weight-1 multiderivation from antisymmetric structure constants:
// bracket(e_i ⊙ e_j) = sum_k c[i][j][k] e_k for i < j.
inline Multiderivation bracket_from_constants(const CellModule& M,
                                              const std::vector<std::vector<std::vector<Rat>>>& c) {
    std::map<Word, ModElt> br;
    int n = M.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            ModElt v;
            for (int k = 0; k < n; ++k) {
                const Rat& ck = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (!is_zero(ck)) v.add_comp(k, AlgElt::unit(ck));
            }
            if (!v.is_zero()) br[{i, j}] = v;
        }
    }
    return Multiderivation(1, M, std::move(br), {});
}

inline std::vector<std::vector<std::vector<Rat>>> zero_constants(int n) {
    return std::vector<std::vector<std::vector<Rat>>>(
        static_cast<std::size_t>(n),
        std::vector<std::vector<Rat>>(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0))));
}

// [e1,e2] = e1
inline SHLRPair solvable2d() {
    auto M = lie_module(2);
    auto c = zero_constants(2);
    c[0][1][0] = 1;
    return SHLRPair(M, {bracket_from_constants(M, c)});
}

// so(3): [e1,e2] = e3, [e1,e3] = -e2, [e2,e3] = e1
inline SHLRPair so3() {
    auto M = lie_module(3);
    auto c = zero_constants(3);
    c[0][1][2] = 1;
    c[0][2][1] = -1;
    c[1][2][0] = 1;
    return SHLRPair(M, {bracket_from_constants(M, c)});
}

// Not a Lie algebra: [e1,e2] = e3, [e1,e3] = e1, [e2,e3] = 0.
inline SHLRPair non_jacobi() {
    auto M = lie_module(3);
    auto c = zero_constants(3);
    c[0][1][2] = 1;
    c[0][2][0] = 1;
    return SHLRPair(M, {bracket_from_constants(M, c)});
}

// Heisenberg: [e1,e2] = e3.
inline SHLRPair heisenberg() {
    auto M = lie_module(3);
    auto c = zero_constants(3);
    c[0][1][2] = 1;
    return SHLRPair(M, {bracket_from_constants(M, c)});
}

// Action algebroid of the solvable 2-dim algebra on k[x]:
// [u,v] = u, rho(u) = -d/dx, rho(v) = x·d/dx.
inline SHLRPair action_algebroid() {
    CellModule M(base_kx(), {{"u", -1}, {"v", -1}}, {ModElt{}, ModElt{}});
    std::map<Word, ModElt> br;
    br[{0, 1}] = ModElt::gen(0);
    std::map<Word, std::vector<AlgElt>> an;
    an[{0}] = {AlgElt::unit(-1)};
    an[{1}] = {AlgElt::gen(0)};
    return SHLRPair(M, {Multiderivation(1, M, std::move(br), std::move(an))});
}

// Abelian one-generator pair over k.
inline SHLRPair abelian1() {
    auto M = lie_module(1);
    return SHLRPair(M, {Multiderivation::zero(1, M)});
}

// Random raw multiderivation (no square-zero expected): degree-consistent
// bracket and anchor values with small rational coefficients.
inline Multiderivation random_multiderivation(SplitMix64& rng, const CellModule& M, int weight,
                                              int coeff_len_cap = 2) {
    std::map<Word, ModElt> br;
    for (const auto& w : generator_words(M, weight + 1)) {
        int wdeg = 0;
        for (int g : w) wdeg += M.gens[static_cast<std::size_t>(g)].degree;
        ModElt v;
        for (int k = 0; k < M.size(); ++k) {
            int cdeg = wdeg + 1 - M.gens[static_cast<std::size_t>(k)].degree;
            auto monos = M.base.alg.monomials_of_degree(cdeg, coeff_len_cap);
            if (monos.empty()) continue;
            if (rng.below(3) == 0) {
                const Monomial& mono = monos[rng.below(monos.size())];
                Rat cc = rng.small_rat();
                if (!is_zero(cc)) {
                    AlgElt coeff;
                    coeff.terms[mono] = cc;
                    v.add_comp(k, coeff);
                }
            }
        }
        if (!v.is_zero()) br[w] = v;
    }
    std::map<Word, std::vector<AlgElt>> an;
    for (const auto& w : generator_words(M, weight)) {
        int wdeg = 0;
        for (int g : w) wdeg += M.gens[static_cast<std::size_t>(g)].degree;
        std::vector<AlgElt> vals(static_cast<std::size_t>(M.base.size()));
        bool nonzero = false;
        for (int g = 0; g < M.base.size(); ++g) {
            int vdeg = wdeg + 1 + M.base.gen(g).degree;
            auto monos = M.base.alg.monomials_of_degree(vdeg, coeff_len_cap);
            if (monos.empty()) continue;
            if (rng.below(3) == 0) {
                const Monomial& mono = monos[rng.below(monos.size())];
                Rat cc = rng.small_rat();
                if (!is_zero(cc)) {
                    AlgElt coeff;
                    coeff.terms[mono] = cc;
                    vals[static_cast<std::size_t>(g)] = coeff;
                    nonzero = true;
                }
            }
        }
        if (nonzero) an[w] = std::move(vals);
    }
    return Multiderivation(weight, M, std::move(br), std::move(an));
}

// Random module over a random small base, for round-trip sweeps.
inline CellModule random_module(SplitMix64& rng, int max_base_gens, int max_module_gens) {
    int nb = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_base_gens) + 1));
    std::vector<Generator> bgens;
    for (int i = 0; i < nb; ++i)
        bgens.push_back({"x" + std::to_string(i + 1), rng.below(2) ? 0 : -1});
    SemiFreeDgca A(GradedAlgebra(bgens), std::vector<AlgElt>(static_cast<std::size_t>(nb)));
    int nm = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_module_gens)));
    std::vector<Generator> mgens;
    for (int i = 0; i < nm; ++i)
        mgens.push_back({"m" + std::to_string(i + 1), -1 - static_cast<int>(rng.below(2))});
    return CellModule(A, mgens, std::vector<ModElt>(static_cast<std::size_t>(nm)));
}

} // namespace shlr::fixtures
