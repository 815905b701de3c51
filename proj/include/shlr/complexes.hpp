#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "shlr/linalg.hpp"

namespace shlr {

struct DegreeWindow {
    int lo = -8;
    int hi = 3;
    DegreeWindow() = default;
    DegreeWindow(int l, int h) : lo(l), hi(h) {
        if (l > h) fail(ErrorCode::Argument, "degree window lo > hi");
    }
    bool contains(int n) const { return lo <= n && n <= hi; }
    bool operator==(const DegreeWindow&) const = default;
};

// A cochain complex of finite-dimensional Q-vector spaces supported in a
// degree window, with labeled bases and degree +1 differentials.
//
// `incomplete` marks degrees whose cohomology must not be reported as a
// number: the window boundary always, plus any degree where a truncation
// dropped part of the differential.
struct FiniteComplex {
    DegreeWindow window;
    std::map<int, std::vector<std::string>> basis;    // degree -> labels
    std::map<int, RationalMatrix> diff;               // degree n -> matrix of d_n : C^n -> C^{n+1}
    std::set<int> incomplete;

    int dim(int n) const {
        auto it = basis.find(n);
        return it == basis.end() ? 0 : static_cast<int>(it->second.size());
    }
    const RationalMatrix& d(int n) const;

    // d_{n+1} ∘ d_n = 0 for every n with both maps inside the window.
    void validate() const;
};

struct CohomologyReport {
    std::map<int, int> dims;  // complete interior degrees only
    std::set<int> incomplete; // degrees reported as window-incomplete
    // Uncertified degrees where cohomology is nonetheless provably nonzero in
    // the stable range (the comparison map between caps is surjective onto a
    // nonzero space); they support a "false" verdict but never a dimension.
    std::set<int> nonzero_uncertified;
    bool all_complete_zero() const {
        for (const auto& [n, d] : dims)
            if (d != 0) return false;
        return true;
    }
};

// dim ker(d_n)/im(d_{n-1}) for lo < n < hi; boundary degrees and degrees
// poisoned by truncation are flagged, never reported as numbers.
CohomologyReport cohomology_dims(const FiniteComplex& C);

// Mapping cone of a chain map f : X -> Y given per-degree matrices
// f_n : X^n -> Y^n. Cone^n = X^{n+1} ⊕ Y^n, d(x, y) = (-d x, f(x) + d y).
FiniteComplex cone(const FiniteComplex& X, const FiniteComplex& Y,
                   const std::map<int, RationalMatrix>& f);

} // namespace shlr
