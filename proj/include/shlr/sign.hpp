#pragma once

#include <cstdint>
#include <vector>

#include "shlr/error.hpp"

namespace shlr {

// Permutation of {1..k}, stored as the sequence of 1-based images.
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> img);
    static Permutation identity(int k);

    int size() const { return static_cast<int>(images.size()); }
    // sigma(i) for 1-based i.
    int operator()(int i) const { return images[static_cast<std::size_t>(i - 1)]; }

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& o) const { return images < o.images; }
};

using DegreeList = std::vector<int>;

// permute(d, sigma)[i] = d[sigma(i)] — the degree list of the permuted word.
DegreeList permute(const DegreeList& degrees, const Permutation& sigma);

// compose(sigma, tau): permuting a word by tau and then by sigma equals
// permuting once by compose(sigma, tau); explicitly i -> tau(sigma(i)).
Permutation compose(const Permutation& sigma, const Permutation& tau);

Permutation inverse(const Permutation& sigma);

// Sign with m_{sigma(1)} ⊙ ... ⊙ m_{sigma(k)} = sign · m_1 ⊙ ... ⊙ m_k,
// computed by decomposing sigma into adjacent transpositions, each swap of
// neighbours u, v contributing (-1)^{|u||v|}.
int koszul_sign(const DegreeList& degrees, const Permutation& sigma);

// All sigma in Sigma_{l+m} increasing on {1..l} and on {l+1..l+m},
// in lexicographic order of their image sequences.
std::vector<Permutation> unshuffles(int l, int m);

std::uint64_t binomial(int n, int k);

} // namespace shlr
