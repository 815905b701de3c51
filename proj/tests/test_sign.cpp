#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shlr/sign.hpp"

using namespace shlr;

namespace {

// Independent oracle: the sign of sigma on a degree list via an explicit
// decomposition into adjacent transpositions, built by selection sort (a
// different decomposition than the implementation's bubble sort).
int selection_sort_sign(const DegreeList& degrees, const Permutation& sigma) {
    std::vector<int> word = sigma.images;
    int sign = 1;
    for (std::size_t i = 0; i < word.size(); ++i) {
        std::size_t min_at = i;
        for (std::size_t j = i + 1; j < word.size(); ++j)
            if (word[j] < word[min_at]) min_at = j;
        // move word[min_at] to position i through adjacent swaps
        for (std::size_t j = min_at; j > i; --j) {
            int du = degrees[static_cast<std::size_t>(word[j - 1] - 1)];
            int dv = degrees[static_cast<std::size_t>(word[j] - 1)];
            if ((du & 1) && (dv & 1)) sign = -sign;
            std::swap(word[j - 1], word[j]);
        }
    }
    return sign;
}

} // namespace

TEST_CASE("two odd elements transpose with sign -1") {
    CHECK(koszul_sign({-1, -1}, Permutation({2, 1})) == -1);
    CHECK(koszul_sign({-2, -1}, Permutation({2, 1})) == 1);
    CHECK(koszul_sign({0, -2}, Permutation({2, 1})) == 1);
}

TEST_CASE("identity permutation has sign +1") {
    CHECK(koszul_sign({-1, -2, -1, 0}, Permutation::identity(4)) == 1);
    CHECK(koszul_sign({}, Permutation::identity(0)) == 1);
}

TEST_CASE("two independent decompositions agree on (2 3 1)") {
    DegreeList d{-1, -2, -1};
    Permutation sigma({2, 3, 1});
    CHECK(koszul_sign(d, sigma) == selection_sort_sign(d, sigma));
    // and on every element of Sigma_3 for mixed degrees
    for (const auto& s : unshuffles(1, 2))
        CHECK(koszul_sign(d, s) == selection_sort_sign(d, s));
}

TEST_CASE("koszul_sign is +1 on even degrees for every permutation of S4") {
    // enumerate S4 as products of unshuffles to keep this dependency-light
    DegreeList d{-2, 0, -4, -2};
    std::vector<Permutation> all;
    for (const auto& a : unshuffles(2, 2))
        for (const auto& b : unshuffles(1, 3)) all.push_back(compose(a, b));
    for (const auto& s : all) CHECK(koszul_sign(d, s) == 1);
}

TEST_CASE("functoriality under composition on seeded triples") {
    std::uint64_t state = 7;
    auto rnd = [&](std::uint64_t n) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 33) % n;
    };
    for (int trial = 0; trial < 300; ++trial) {
        int k = 1 + static_cast<int>(rnd(5));
        DegreeList d;
        for (int i = 0; i < k; ++i) d.push_back(-3 + static_cast<int>(rnd(5)));
        auto random_perm = [&]() {
            std::vector<int> img;
            for (int i = 1; i <= k; ++i) img.push_back(i);
            for (int i = k - 1; i > 0; --i)
                std::swap(img[static_cast<std::size_t>(i)], img[rnd(static_cast<std::uint64_t>(i + 1))]);
            return Permutation(img);
        };
        Permutation sigma = random_perm(), tau = random_perm();
        CHECK(koszul_sign(d, compose(sigma, tau)) ==
              koszul_sign(d, tau) * koszul_sign(permute(d, tau), sigma));
    }
}

TEST_CASE("unshuffle counts and constraints") {
    CHECK(unshuffles(1, 1).size() == 2);
    CHECK(unshuffles(0, 3).size() == 1);
    CHECK(unshuffles(0, 3)[0] == Permutation::identity(3));
    CHECK(unshuffles(2, 2).size() == 6);
    for (int l = 0; l <= 4; ++l) {
        for (int m = 0; l + m <= 7; ++m) {
            auto sh = unshuffles(l, m);
            CHECK(sh.size() == binomial(l + m, l));
            for (std::size_t i = 1; i < sh.size(); ++i) CHECK(sh[i - 1] < sh[i]); // distinct, lex order
            for (const auto& s : sh) {
                for (int i = 1; i < l; ++i) CHECK(s(i) < s(i + 1));
                for (int i = l + 1; i < l + m; ++i) CHECK(s(i) < s(i + 1));
            }
        }
    }
}

TEST_CASE("length mismatch is an argument error") {
    CHECK_THROWS_AS(koszul_sign({-1, -1, -1}, Permutation({2, 1})), Error);
}
