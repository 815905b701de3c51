#include "shlr/sign.hpp"

#include <algorithm>
#include <numeric>

namespace shlr {

Permutation::Permutation(std::vector<int> img) : images(std::move(img)) {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 1 || v > static_cast<int>(images.size()) || seen[static_cast<std::size_t>(v - 1)])
            fail(ErrorCode::Argument, "permutation images are not a bijection of {1..k}");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation Permutation::identity(int k) {
    std::vector<int> img(static_cast<std::size_t>(k));
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
}

DegreeList permute(const DegreeList& degrees, const Permutation& sigma) {
    if (degrees.size() != sigma.images.size())
        fail(ErrorCode::Argument, "degree list and permutation have different lengths");
    DegreeList out(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i)
        out[i] = degrees[static_cast<std::size_t>(sigma.images[i] - 1)];
    return out;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size())
        fail(ErrorCode::Argument, "cannot compose permutations of different sizes");
    std::vector<int> img(sigma.images.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = tau.images[static_cast<std::size_t>(sigma.images[i] - 1)];
    return Permutation(std::move(img));
}

Permutation inverse(const Permutation& sigma) {
    std::vector<int> img(sigma.images.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[static_cast<std::size_t>(sigma.images[i] - 1)] = static_cast<int>(i) + 1;
    return Permutation(std::move(img));
}

int koszul_sign(const DegreeList& degrees, const Permutation& sigma) {
    if (degrees.size() != sigma.images.size())
        fail(ErrorCode::Argument, "degree list and permutation have different lengths");
    // Bubble-sort the permuted word back to the identity; every adjacent swap
    // is one transposition of the decomposition.
    std::vector<int> word = sigma.images;
    int sign = 1;
    for (std::size_t pass = 0; pass + 1 < word.size(); ++pass) {
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] > word[i + 1]) {
                int du = degrees[static_cast<std::size_t>(word[i] - 1)];
                int dv = degrees[static_cast<std::size_t>(word[i + 1] - 1)];
                if ((du & 1) && (dv & 1)) sign = -sign;
                std::swap(word[i], word[i + 1]);
            }
        }
    }
    return sign;
}

std::vector<Permutation> unshuffles(int l, int m) {
    if (l < 0 || m < 0) fail(ErrorCode::Argument, "unshuffle block sizes must be nonnegative");
    int n = l + m;
    std::vector<Permutation> out;
    // Subsets of {1..n} of size l in lexicographic order; each subset gives the
    // first block, its complement the second.
    std::vector<int> pick(static_cast<std::size_t>(l));
    std::iota(pick.begin(), pick.end(), 1);
    auto emit = [&]() {
        std::vector<int> img;
        img.reserve(static_cast<std::size_t>(n));
        img.insert(img.end(), pick.begin(), pick.end());
        std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
        for (int v : pick) in[static_cast<std::size_t>(v)] = true;
        for (int v = 1; v <= n; ++v)
            if (!in[static_cast<std::size_t>(v)]) img.push_back(v);
        out.emplace_back(std::move(img));
    };
    if (l == 0 || l == n) {
        emit();
        return out;
    }
    while (true) {
        emit();
        int i = l - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - (l - 1 - i)) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < l; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

} // namespace shlr
