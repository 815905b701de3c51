#include "shlr/truncate.hpp"

#include <algorithm>

namespace shlr {

namespace {

int find_index(const std::vector<Monomial>& basis, const Monomial& m) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || !(*it == m)) return -1;
    return static_cast<int>(it - basis.begin());
}

// The length quotient is a complex only when no differential term shortens
// monomials; a constant term in some d(gen) would break that.
void require_no_constant_terms(const std::vector<AlgElt>& dgen) {
    for (const auto& v : dgen)
        for (const auto& [m, c] : v.terms)
            if (m.is_unit())
                fail(ErrorCode::Window,
                     "differential has a constant term; the length truncation does not apply");
}

} // namespace

std::vector<Rat> TruncatedAlgebra::coords(const AlgElt& a, int n) const {
    auto it = basis.find(n);
    std::size_t dim = it == basis.end() ? 0 : it->second.size();
    std::vector<Rat> v(dim, Rat(0));
    for (const auto& [m, c] : a.terms) {
        if (A.alg.monomial_degree(m) != n) continue;
        if (m.length() > cfg.length_cap) continue; // the length quotient
        if (it == basis.end()) fail(ErrorCode::Window, "element outside the degree window");
        int idx = find_index(it->second, m);
        if (idx < 0) fail(ErrorCode::Window, "monomial missing from truncated basis");
        v[static_cast<std::size_t>(idx)] = c;
    }
    return v;
}

AlgElt TruncatedAlgebra::from_coords(const std::vector<Rat>& v, int n) const {
    auto it = basis.find(n);
    AlgElt out;
    if (it == basis.end()) return out;
    for (std::size_t i = 0; i < v.size() && i < it->second.size(); ++i)
        out.add_term(it->second[i], v[i]);
    return out;
}

TruncatedAlgebra truncate_algebra(const SemiFreeDgca& A, const TruncationConfig& cfg) {
    require_no_constant_terms(A.dgen);
    TruncatedAlgebra T;
    T.A = A;
    T.cfg = cfg;
    T.cx.window = cfg.window;
    std::size_t total = 0;
    for (int n = cfg.window.lo; n <= cfg.window.hi; ++n) {
        auto mons = A.alg.monomials_of_degree(n, cfg.length_cap);
        total += mons.size();
        if (total > static_cast<std::size_t>(cfg.max_dim))
            fail(ErrorCode::Window, "truncated basis exceeds max dimension; shrink the window or length cap");
        if (mons.empty()) continue;
        std::vector<std::string> labels;
        for (const auto& m : mons) labels.push_back(A.alg.print_monomial(m));
        T.basis[n] = std::move(mons);
        T.cx.basis[n] = std::move(labels);
    }
    for (int n = cfg.window.lo; n < cfg.window.hi; ++n) {
        auto its = T.basis.find(n);
        if (its == T.basis.end()) continue;
        int sdim = static_cast<int>(its->second.size());
        auto itt = T.basis.find(n + 1);
        int tdim = itt == T.basis.end() ? 0 : static_cast<int>(itt->second.size());
        RationalMatrix d(tdim, sdim);
        for (int j = 0; j < sdim; ++j) {
            AlgElt img = A.d(AlgElt{{{its->second[static_cast<std::size_t>(j)], Rat(1)}}});
            for (const auto& [m, c] : img.terms) {
                if (m.length() > cfg.length_cap) continue; // quotient
                int idx = itt == T.basis.end() ? -1 : find_index(itt->second, m);
                if (idx < 0) fail(ErrorCode::Window, "differential image missing from truncated basis");
                d.set(idx, j, c);
            }
        }
        T.cx.diff[n] = std::move(d);
    }
    return T;
}

std::vector<Rat> TruncatedModule::coords(const ModElt& m, int n) const {
    auto it = basis.find(n);
    std::size_t dim = it == basis.end() ? 0 : it->second.size();
    std::vector<Rat> v(dim, Rat(0));
    for (const auto& [gi, coeff] : m.comps) {
        int gdeg = M.gens[static_cast<std::size_t>(gi)].degree;
        for (const auto& [mono, c] : coeff.terms) {
            if (M.base.alg.monomial_degree(mono) + gdeg != n) continue;
            if (mono.length() > cfg.length_cap) continue;
            if (it == basis.end()) fail(ErrorCode::Window, "module element outside the degree window");
            auto key = std::make_pair(gi, mono);
            auto pos = std::lower_bound(it->second.begin(), it->second.end(), key);
            if (pos == it->second.end() || !(*pos == key))
                fail(ErrorCode::Window, "module monomial missing from truncated basis");
            v[static_cast<std::size_t>(pos - it->second.begin())] = c;
        }
    }
    return v;
}

ModElt TruncatedModule::from_coords(const std::vector<Rat>& v, int n) const {
    auto it = basis.find(n);
    ModElt out;
    if (it == basis.end()) return out;
    for (std::size_t i = 0; i < v.size() && i < it->second.size(); ++i) {
        if (is_zero(v[i])) continue;
        const auto& [gi, mono] = it->second[i];
        AlgElt c;
        c.terms[mono] = v[i];
        out.add_comp(gi, c);
    }
    return out;
}

TruncatedModule truncate_module(const FreeDgModule& M, const TruncationConfig& cfg) {
    require_no_constant_terms(M.base.dgen);
    TruncatedModule T;
    T.M = M;
    T.cfg = cfg;
    T.cx.window = cfg.window;
    std::size_t total = 0;
    for (int n = cfg.window.lo; n <= cfg.window.hi; ++n) {
        std::vector<std::pair<int, Monomial>> items;
        for (int gi = 0; gi < M.size(); ++gi) {
            auto mons = M.base.alg.monomials_of_degree(n - M.gens[static_cast<std::size_t>(gi)].degree,
                                                       cfg.length_cap);
            for (auto& m : mons) items.emplace_back(gi, std::move(m));
        }
        std::sort(items.begin(), items.end());
        total += items.size();
        if (total > static_cast<std::size_t>(cfg.max_dim))
            fail(ErrorCode::Window, "truncated module basis exceeds max dimension");
        if (items.empty()) continue;
        std::vector<std::string> labels;
        for (const auto& [gi, mono] : items) {
            std::string l = M.base.alg.print_monomial(mono);
            labels.push_back((l == "1" ? "" : l + "·") + M.gens[static_cast<std::size_t>(gi)].name);
        }
        T.basis[n] = std::move(items);
        T.cx.basis[n] = std::move(labels);
    }
    for (int n = cfg.window.lo; n < cfg.window.hi; ++n) {
        auto its = T.basis.find(n);
        if (its == T.basis.end()) continue;
        int sdim = static_cast<int>(its->second.size());
        auto itt = T.basis.find(n + 1);
        int tdim = itt == T.basis.end() ? 0 : static_cast<int>(itt->second.size());
        RationalMatrix d(tdim, sdim);
        for (int j = 0; j < sdim; ++j) {
            const auto& [gi, mono] = its->second[static_cast<std::size_t>(j)];
            AlgElt c;
            c.terms[mono] = Rat(1);
            ModElt img = M.d(ModElt{{{gi, c}}});
            for (const auto& [tg, coeff] : img.comps) {
                for (const auto& [tm, tc] : coeff.terms) {
                    if (tm.length() > cfg.length_cap) continue; // quotient
                    auto key = std::make_pair(tg, tm);
                    if (itt == T.basis.end())
                        fail(ErrorCode::Window, "module differential image missing from truncated basis");
                    auto pos = std::lower_bound(itt->second.begin(), itt->second.end(), key);
                    if (pos == itt->second.end() || !(*pos == key))
                        fail(ErrorCode::Window, "module differential image missing from truncated basis");
                    d.add(static_cast<int>(pos - itt->second.begin()), j, tc);
                }
            }
        }
        T.cx.diff[n] = std::move(d);
    }
    return T;
}

std::map<int, RationalMatrix> matrices_of(const DgcaMorphism& f, const TruncatedAlgebra& src,
                                          const TruncatedAlgebra& tgt) {
    std::map<int, RationalMatrix> out;
    for (const auto& [n, b] : src.basis) {
        auto itt = tgt.basis.find(n);
        int tdim = itt == tgt.basis.end() ? 0 : static_cast<int>(itt->second.size());
        RationalMatrix m(tdim, static_cast<int>(b.size()));
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            AlgElt img = f.apply(AlgElt{{{b[static_cast<std::size_t>(j)], Rat(1)}}});
            auto v = tgt.coords(img, n);
            for (int i = 0; i < tdim; ++i)
                if (!is_zero(v[static_cast<std::size_t>(i)])) m.set(i, j, v[static_cast<std::size_t>(i)]);
        }
        out[n] = std::move(m);
    }
    return out;
}

std::map<int, RationalMatrix> matrices_of(const FreeModMap& f, const TruncatedModule& src,
                                          const TruncatedModule& tgt) {
    std::map<int, RationalMatrix> out;
    for (const auto& [n, b] : src.basis) {
        auto itt = tgt.basis.find(n);
        int tdim = itt == tgt.basis.end() ? 0 : static_cast<int>(itt->second.size());
        RationalMatrix m(tdim, static_cast<int>(b.size()));
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            const auto& [gi, mono] = b[static_cast<std::size_t>(j)];
            AlgElt c;
            c.terms[mono] = Rat(1);
            ModElt img = f.apply(ModElt{{{gi, c}}});
            auto v = tgt.coords(img, n);
            for (int i = 0; i < tdim; ++i)
                if (!is_zero(v[static_cast<std::size_t>(i)])) m.set(i, j, v[static_cast<std::size_t>(i)]);
        }
        out[n] = std::move(m);
    }
    return out;
}

std::map<int, RationalMatrix> cap_projection(const TruncatedAlgebra& full, const TruncatedAlgebra& small) {
    std::map<int, RationalMatrix> out;
    for (const auto& [n, b] : full.basis) {
        auto its = small.basis.find(n);
        int tdim = its == small.basis.end() ? 0 : static_cast<int>(its->second.size());
        RationalMatrix m(tdim, static_cast<int>(b.size()));
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            if (b[static_cast<std::size_t>(j)].length() > small.cfg.length_cap) continue;
            int idx = its == small.basis.end() ? -1 : find_index(its->second, b[static_cast<std::size_t>(j)]);
            if (idx >= 0) m.set(idx, j, 1);
        }
        out[n] = std::move(m);
    }
    return out;
}

std::map<int, RationalMatrix> cap_projection(const TruncatedModule& full, const TruncatedModule& small) {
    std::map<int, RationalMatrix> out;
    for (const auto& [n, b] : full.basis) {
        auto its = small.basis.find(n);
        int tdim = its == small.basis.end() ? 0 : static_cast<int>(its->second.size());
        RationalMatrix m(tdim, static_cast<int>(b.size()));
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            const auto& key = b[static_cast<std::size_t>(j)];
            if (key.second.length() > small.cfg.length_cap) continue;
            if (its == small.basis.end()) continue;
            auto pos = std::lower_bound(its->second.begin(), its->second.end(), key);
            if (pos != its->second.end() && *pos == key)
                m.set(static_cast<int>(pos - its->second.begin()), j, 1);
        }
        out[n] = std::move(m);
    }
    return out;
}

namespace {

RationalMatrix columns_side_by_side(const std::vector<std::vector<Rat>>& a,
                                    const std::vector<std::vector<Rat>>& b, int rows) {
    RationalMatrix m(rows, static_cast<int>(a.size() + b.size()));
    int col = 0;
    for (const auto& v : a) {
        for (int r = 0; r < rows; ++r)
            if (!is_zero(v[static_cast<std::size_t>(r)])) m.set(r, col, v[static_cast<std::size_t>(r)]);
        ++col;
    }
    for (const auto& v : b) {
        for (int r = 0; r < rows; ++r)
            if (!is_zero(v[static_cast<std::size_t>(r)])) m.set(r, col, v[static_cast<std::size_t>(r)]);
        ++col;
    }
    return m;
}

} // namespace

CohomologyReport certified_cohomology(const FiniteComplex& full, const FiniteComplex& small,
                                      const std::map<int, RationalMatrix>& proj) {
    auto rep_full = cohomology_dims(full);
    auto rep_small = cohomology_dims(small);
    CohomologyReport out;
    out.incomplete = rep_full.incomplete;
    out.incomplete.insert(rep_small.incomplete.begin(), rep_small.incomplete.end());
    for (const auto& [n, h] : rep_full.dims) {
        if (out.incomplete.count(n)) continue;
        auto it = rep_small.dims.find(n);
        int hs = it == rep_small.dims.end() ? 0 : it->second;
        if (h == 0 && hs == 0) {
            out.dims[n] = 0;
            continue;
        }
        // Rank of the map induced on cohomology by the cap projection:
        // rank(proj(Z) | B') - rank(B'), Z = cycles upstairs, B' = boundaries
        // downstairs.
        RationalMatrix d_out = full.d(n);
        if (d_out.rows() == 0) d_out = RationalMatrix(full.dim(n + 1), full.dim(n));
        auto cycles = kernel_basis(d_out);
        auto pit = proj.find(n);
        RationalMatrix P = pit != proj.end() ? pit->second : RationalMatrix(small.dim(n), full.dim(n));
        std::vector<std::vector<Rat>> proj_cycles;
        for (const auto& z : cycles) proj_cycles.push_back(P.apply(z));
        RationalMatrix d_in_small = small.d(n - 1);
        if (d_in_small.rows() == 0) d_in_small = RationalMatrix(small.dim(n), small.dim(n - 1));
        std::vector<std::vector<Rat>> boundaries;
        for (int c = 0; c < d_in_small.cols(); ++c) {
            std::vector<Rat> col(static_cast<std::size_t>(small.dim(n)), Rat(0));
            bool nonzero = false;
            for (const auto& [rc, v] : d_in_small.entries())
                if (rc.second == c) {
                    col[static_cast<std::size_t>(rc.first)] = v;
                    nonzero = true;
                }
            if (nonzero) boundaries.push_back(std::move(col));
        }
        RationalMatrix big = columns_side_by_side(proj_cycles, boundaries, small.dim(n));
        RationalMatrix bmat = columns_side_by_side({}, boundaries, small.dim(n));
        int induced_rank = rank(big) - rank(bmat);
        if (h == hs && induced_rank == h) {
            out.dims[n] = h; // the comparison map is an isomorphism
        } else if (induced_rank == hs && hs > 0) {
            // surjective onto a nonzero stable part: cannot vanish
            out.incomplete.insert(n);
            out.nonzero_uncertified.insert(n);
        } else {
            out.incomplete.insert(n);
        }
    }
    return out;
}

CohomologyReport certified_cohomology_algebra(const SemiFreeDgca& A, const TruncationConfig& cfg) {
    TruncationConfig small_cfg = cfg;
    small_cfg.length_cap = cfg.length_cap - 1;
    if (small_cfg.length_cap < 0) fail(ErrorCode::Window, "length cap too small to certify");
    auto full = truncate_algebra(A, cfg);
    auto small = truncate_algebra(A, small_cfg);
    return certified_cohomology(full.cx, small.cx, cap_projection(full, small));
}

CohomologyReport certified_cohomology_module(const FreeDgModule& M, const TruncationConfig& cfg) {
    TruncationConfig small_cfg = cfg;
    small_cfg.length_cap = cfg.length_cap - 1;
    if (small_cfg.length_cap < 0) fail(ErrorCode::Window, "length cap too small to certify");
    auto full = truncate_module(M, cfg);
    auto small = truncate_module(M, small_cfg);
    return certified_cohomology(full.cx, small.cx, cap_projection(full, small));
}

namespace {

std::map<int, RationalMatrix> cone_projection(const FiniteComplex& Xf,
                                              const std::map<int, RationalMatrix>& px,
                                              const std::map<int, RationalMatrix>& py,
                                              const FiniteComplex& cone_full,
                                              const FiniteComplex& cone_small) {
    std::map<int, RationalMatrix> out;
    for (int n = cone_full.window.lo; n <= cone_full.window.hi; ++n) {
        int xs = (n + 1 <= Xf.window.hi) ? Xf.dim(n + 1) : 0;
        RationalMatrix P(cone_small.dim(n), cone_full.dim(n));
        int xsmall = 0;
        if (n + 1 <= Xf.window.hi) {
            auto it = px.find(n + 1);
            if (it != px.end()) {
                xsmall = it->second.rows();
                for (const auto& [rc, v] : it->second.entries()) P.set(rc.first, rc.second, v);
            }
        }
        auto ity = py.find(n);
        if (ity != py.end())
            for (const auto& [rc, v] : ity->second.entries()) P.set(xsmall + rc.first, xs + rc.second, v);
        out[n] = std::move(P);
    }
    return out;
}

} // namespace

CohomologyReport certified_cone_cohomology(const DgcaMorphism& f, const TruncationConfig& cfg) {
    TruncationConfig small_cfg = cfg;
    small_cfg.length_cap = cfg.length_cap - 1;
    if (small_cfg.length_cap < 0) fail(ErrorCode::Window, "length cap too small to certify");
    // the source enters the cone shifted by one, so truncate it one higher
    TruncationConfig src_cfg = cfg, src_small = small_cfg;
    src_cfg.window = DegreeWindow(cfg.window.lo, cfg.window.hi + 1);
    src_small.window = src_cfg.window;
    auto srcL = truncate_algebra(f.source, src_cfg), srcS = truncate_algebra(f.source, src_small);
    auto tgtL = truncate_algebra(f.target, cfg), tgtS = truncate_algebra(f.target, small_cfg);
    // the map matrices are computed against the extended target truncation,
    // whose bases agree with the plain one on every degree the cone reads
    auto tgtLx = truncate_algebra(f.target, src_cfg), tgtSx = truncate_algebra(f.target, src_small);
    auto fL = matrices_of(f, srcL, tgtLx);
    auto fS = matrices_of(f, srcS, tgtSx);
    fL.erase(cfg.window.hi + 1);
    fS.erase(cfg.window.hi + 1);
    auto coneL = cone(srcL.cx, tgtL.cx, fL);
    auto coneS = cone(srcS.cx, tgtS.cx, fS);
    auto proj = cone_projection(srcL.cx, cap_projection(srcL, srcS), cap_projection(tgtL, tgtS),
                                coneL, coneS);
    return certified_cohomology(coneL, coneS, proj);
}

CohomologyReport certified_cone_cohomology(const FreeModMap& f, const TruncationConfig& cfg) {
    TruncationConfig small_cfg = cfg;
    small_cfg.length_cap = cfg.length_cap - 1;
    if (small_cfg.length_cap < 0) fail(ErrorCode::Window, "length cap too small to certify");
    TruncationConfig src_cfg = cfg, src_small = small_cfg;
    src_cfg.window = DegreeWindow(cfg.window.lo, cfg.window.hi + 1);
    src_small.window = src_cfg.window;
    auto srcL = truncate_module(f.source, src_cfg), srcS = truncate_module(f.source, src_small);
    auto tgtL = truncate_module(f.target, cfg), tgtS = truncate_module(f.target, small_cfg);
    auto tgtLx = truncate_module(f.target, src_cfg), tgtSx = truncate_module(f.target, src_small);
    auto fL = matrices_of(f, srcL, tgtLx);
    auto fS = matrices_of(f, srcS, tgtSx);
    fL.erase(cfg.window.hi + 1);
    fS.erase(cfg.window.hi + 1);
    auto coneL = cone(srcL.cx, tgtL.cx, fL);
    auto coneS = cone(srcS.cx, tgtS.cx, fS);
    auto proj = cone_projection(srcL.cx, cap_projection(srcL, srcS), cap_projection(tgtL, tgtS),
                                coneL, coneS);
    return certified_cohomology(coneL, coneS, proj);
}

} // namespace shlr
