#pragma once

#include <map>
#include <string>
#include <vector>

#include "shlr/rational.hpp"
#include "shlr/error.hpp"

namespace shlr {

struct Generator {
    std::string name;
    int degree = 0;
    bool operator==(const Generator&) const = default;
};

// Product of generators in normal form: factor indices sorted ascending,
// Koszul signs absorbed into the coefficient, odd squares eliminated.
struct Monomial {
    std::vector<int> factors;
    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const { return factors < o.factors; }
    bool is_unit() const { return factors.empty(); }
    int length() const { return static_cast<int>(factors.size()); }
};

// Q-linear combination of normal-form monomials. Plain data; all operations
// that need degrees or commutation signs go through the owning algebra.
struct AlgElt {
    std::map<Monomial, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const AlgElt&) const = default;

    static AlgElt zero() { return {}; }
    static AlgElt unit(const Rat& c = 1);
    static AlgElt gen(int index, const Rat& c = 1);

    void add_term(const Monomial& m, const Rat& c);
};

AlgElt operator+(const AlgElt& a, const AlgElt& b);
AlgElt operator-(const AlgElt& a, const AlgElt& b);
AlgElt operator*(const Rat& c, const AlgElt& a);
AlgElt operator-(const AlgElt& a);

// Free graded-commutative algebra on an ordered generator list.
struct GradedAlgebra {
    std::vector<Generator> gens;

    GradedAlgebra() = default;
    explicit GradedAlgebra(std::vector<Generator> g);

    int size() const { return static_cast<int>(gens.size()); }
    int degree_of_gen(int i) const { return gens[static_cast<std::size_t>(i)].degree; }
    int find(const std::string& name) const; // -1 when absent

    int monomial_degree(const Monomial& m) const;

    // Normal-form product; zero when an odd generator repeats.
    AlgElt mul(const AlgElt& a, const AlgElt& b) const;
    AlgElt mul_monomials(const Monomial& a, const Monomial& b) const;

    // Element with every monomial not of the given degree dropped.
    AlgElt homogeneous_part(const AlgElt& a, int degree) const;
    // Degree when homogeneous; fails on mixed-degree elements.
    int degree(const AlgElt& a) const;

    std::string print_monomial(const Monomial& m) const;
    std::string print(const AlgElt& a) const;

    // All normal-form monomials of the exact cohomological degree, with at
    // most `length_cap` factors, in lexicographic order.
    std::vector<Monomial> monomials_of_degree(int degree, int length_cap) const;

    bool operator==(const GradedAlgebra&) const = default;
};

} // namespace shlr
