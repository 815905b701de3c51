#include "shlr/complexes.hpp"

namespace shlr {

const RationalMatrix& FiniteComplex::d(int n) const {
    static const RationalMatrix empty;
    auto it = diff.find(n);
    if (it != diff.end()) return it->second;
    return empty;
}

void FiniteComplex::validate() const {
    for (const auto& [n, dn] : diff) {
        if (dn.rows() != dim(n + 1) || dn.cols() != dim(n))
            fail(ErrorCode::Argument, "differential dimensions do not match bases at degree " + std::to_string(n));
        auto it = diff.find(n + 1);
        if (it == diff.end()) continue;
        auto sq = it->second.mul(dn);
        if (!sq.entries().empty())
            fail(ErrorCode::InvalidComplex, "d^2 != 0 at degree " + std::to_string(n));
    }
}

CohomologyReport cohomology_dims(const FiniteComplex& C) {
    C.validate();
    CohomologyReport rep;
    rep.incomplete = C.incomplete;
    rep.incomplete.insert(C.window.lo);
    rep.incomplete.insert(C.window.hi);
    for (int n = C.window.lo + 1; n < C.window.hi; ++n) {
        if (rep.incomplete.count(n)) continue;
        int dn = C.dim(n);
        if (dn == 0) {
            rep.dims[n] = 0;
            continue;
        }
        RationalMatrix out = C.d(n);
        if (out.rows() == 0) out = RationalMatrix(C.dim(n + 1), dn);
        RationalMatrix in = C.d(n - 1);
        if (in.rows() == 0) in = RationalMatrix(dn, C.dim(n - 1));
        int ker = dn - rank(out);
        rep.dims[n] = ker - rank(in);
    }
    return rep;
}

FiniteComplex cone(const FiniteComplex& X, const FiniteComplex& Y,
                   const std::map<int, RationalMatrix>& f) {
    if (X.window.lo != Y.window.lo || X.window.hi < Y.window.hi)
        fail(ErrorCode::Argument, "cone: the source window must cover the target window");
    FiniteComplex C;
    C.window = Y.window;
    for (int n : X.incomplete)
        if (C.window.contains(n - 1)) C.incomplete.insert(n - 1);
    C.incomplete.insert(Y.incomplete.begin(), Y.incomplete.end());
    // X contributes shifted by one; when X is not truncated one degree higher
    // than Y, the top interior degree of the cone is not determined.
    if (X.window.hi < Y.window.hi + 1) C.incomplete.insert(X.window.hi - 1);
    for (int n = C.window.lo; n <= C.window.hi; ++n) {
        std::vector<std::string> labels;
        int xs = (n + 1 <= X.window.hi) ? X.dim(n + 1) : 0;
        for (int i = 0; i < xs; ++i) labels.push_back("x:" + X.basis.at(n + 1)[static_cast<std::size_t>(i)]);
        for (int i = 0; i < Y.dim(n); ++i) labels.push_back("y:" + Y.basis.at(n)[static_cast<std::size_t>(i)]);
        if (!labels.empty()) C.basis[n] = std::move(labels);
    }
    auto fmat = [&](int n) {
        auto it = f.find(n);
        if (it != f.end()) return it->second;
        return RationalMatrix(Y.dim(n), X.dim(n));
    };
    for (int n = C.window.lo; n < C.window.hi; ++n) {
        int xs = (n + 1 <= X.window.hi) ? X.dim(n + 1) : 0;
        int ys = Y.dim(n);
        int xt = (n + 2 <= X.window.hi) ? X.dim(n + 2) : 0;
        int yt = Y.dim(n + 1);
        if (xs + ys == 0 && xt + yt == 0) continue;
        RationalMatrix d(xt + yt, xs + ys);
        if (n + 1 <= X.window.hi && n + 2 <= X.window.hi) {
            for (const auto& [rc, v] : X.d(n + 1).entries()) d.set(rc.first, rc.second, -v);
        }
        if (n + 1 <= X.window.hi) {
            RationalMatrix fm = fmat(n + 1);
            for (const auto& [rc, v] : fm.entries()) d.set(xt + rc.first, rc.second, v);
        }
        for (const auto& [rc, v] : Y.d(n).entries()) d.set(xt + rc.first, xs + rc.second, v);
        C.diff[n] = std::move(d);
    }
    return C;
}

} // namespace shlr
