#pragma once

#include <cstdint>
#include <functional>

#include "shlr/gca.hpp"

namespace shlr {

// Semi-free non-positively graded dgca: free gca on ordered generators with a
// degree +1 differential that is triangular in the generator order.
struct SemiFreeDgca {
    GradedAlgebra alg;
    std::vector<AlgElt> dgen; // d(x_i)

    SemiFreeDgca() = default; // the base field k
    SemiFreeDgca(GradedAlgebra a, std::vector<AlgElt> diffs);

    static SemiFreeDgca field() { return SemiFreeDgca(); }

    int size() const { return alg.size(); }
    const Generator& gen(int i) const { return alg.gens[static_cast<std::size_t>(i)]; }

    AlgElt d(const AlgElt& a) const;

    bool operator==(const SemiFreeDgca&) const = default;
};

// Tensor product A ⊗_k B; name collisions in B are suffixed deterministically.
// Returns the product algebra and the two generator-index offsets are implied:
// A's generators come first, then B's.
SemiFreeDgca tensor(const SemiFreeDgca& A, const SemiFreeDgca& B);

struct DgcaMorphism {
    SemiFreeDgca source;
    SemiFreeDgca target;
    std::vector<AlgElt> images; // per source generator

    DgcaMorphism() = default;
    DgcaMorphism(SemiFreeDgca src, SemiFreeDgca tgt, std::vector<AlgElt> img);

    static DgcaMorphism identity(const SemiFreeDgca& A);

    AlgElt apply(const AlgElt& a) const;
    bool is_chain_map() const;

    bool operator==(const DgcaMorphism&) const = default;
};

DgcaMorphism compose(const DgcaMorphism& g, const DgcaMorphism& f);

// Inclusions and fold for the tensor product.
DgcaMorphism tensor_incl_left(const SemiFreeDgca& A, const SemiFreeDgca& B, const SemiFreeDgca& AB);
DgcaMorphism tensor_incl_right(const SemiFreeDgca& A, const SemiFreeDgca& B, const SemiFreeDgca& AB);
DgcaMorphism tensor_fold(const SemiFreeDgca& A, const SemiFreeDgca& AB);

// Derivation over an algebra morphism f: values on source generators extend by
// d(xy) = d(x)·f(y) + (-1)^{|x|·deg} f(x)·d(y).
struct AlgDerivation {
    DgcaMorphism over;
    int deg = 1;
    std::vector<AlgElt> values;

    AlgDerivation() = default;
    AlgDerivation(DgcaMorphism f, int degree, std::vector<AlgElt> vals);

    AlgElt apply(const AlgElt& a) const;
};

struct LeibnizReport {
    bool pass = true;
    std::string witness; // printed failing product when !pass
};

// Deterministic seeded sampling of homogeneous products; a safety net for
// hand-entered derivation data.
LeibnizReport check_leibniz(const AlgDerivation& d, int trials, std::uint64_t seed = 1);

// Small deterministic PRNG shared by all sampled checks.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    // small rational in [-max..max] (nonzero denominator 1 or 2)
    Rat small_rat(int max = 3);
};

} // namespace shlr
