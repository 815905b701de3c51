#include "shlr/cofib.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace shlr {

namespace {

// Relabel factors through a monotone index map (used where blocks stay ordered).
AlgElt remap_elt(const AlgElt& a, const std::vector<int>& index_map) {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        Monomial mm = m;
        for (int& f : mm.factors) f = index_map[static_cast<std::size_t>(f)];
        std::sort(mm.factors.begin(), mm.factors.end());
        out.add_term(mm, c);
    }
    return out;
}

// Relabel through an arbitrary injective index map, resorting with Koszul signs.
AlgElt remap_elt_signed(const AlgElt& a, const std::vector<int>& index_map,
                        const GradedAlgebra& target) {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        std::vector<int> factors;
        for (int f : m.factors) factors.push_back(index_map[static_cast<std::size_t>(f)]);
        int sign = 1;
        for (std::size_t pass = 0; pass + 1 < factors.size(); ++pass) {
            for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
                if (factors[i] > factors[i + 1]) {
                    if ((target.degree_of_gen(factors[i]) & 1) && (target.degree_of_gen(factors[i + 1]) & 1))
                        sign = -sign;
                    std::swap(factors[i], factors[i + 1]);
                }
            }
        }
        bool zero = false;
        for (std::size_t i = 0; i + 1 < factors.size(); ++i)
            if (factors[i] == factors[i + 1] && (target.degree_of_gen(factors[i]) & 1)) zero = true;
        if (!zero) out.add_term(Monomial{factors}, c * sign);
    }
    return out;
}

// Generator-substitution map into a fat cdga, with weight truncation.
AlgElt subst_elt(const AlgElt& a, const std::vector<AlgElt>& images, const FatCdga& target) {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        AlgElt prod = AlgElt::unit(c);
        for (int f : m.factors) prod = target.mul(prod, images[static_cast<std::size_t>(f)]);
        out = out + prod;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// weak equivalences and cofibrations

namespace {

// Dual of a degree-0 map of dual cell modules, on the primal side:
// phi(m_i^*) = sum_j c_ij n_j^* gives phi^t(n_j) = sum_i (-1)^{q_i |c_ij|} c_ij m_i.
FreeModMap dual_of_linear_part(const FatMorphism& g) {
    DualCellModule D2 = linear_part_of_differential(g.target);
    DualCellModule D1 = base_change_dual(g.base_map, linear_part_of_differential(g.source));
    CellModule P2 = primal_of(D2);
    CellModule P1 = primal_of(D1);
    std::vector<ModElt> images(static_cast<std::size_t>(P2.size()));
    for (int i = 0; i < g.source.n_dual(); ++i) {
        int qi = g.source.dual_gens[static_cast<std::size_t>(i)].degree;
        ModElt img = g.target.to_dual_module_elt(g.gdual[0][static_cast<std::size_t>(i)]);
        for (const auto& [j, c] : img.comps) {
            std::map<int, AlgElt> pieces;
            for (const auto& [mono, cc] : c.terms)
                pieces[g.target.base.alg.monomial_degree(mono)].add_term(mono, cc);
            for (const auto& [dc, pc] : pieces) {
                Rat sign = ((qi * dc) & 1) ? -1 : 1;
                images[static_cast<std::size_t>(j)].add_comp(i, sign * pc);
            }
        }
    }
    FreeModMap out(P2, P1, DgcaMorphism::identity(g.target.base), std::move(images));
    if (!out.is_chain_map())
        fail(ErrorCode::Argument, "linear part does not dualize to a chain map; the morphism is invalid");
    return out;
}

Verdict combine_verdicts(const CohomologyReport& a, const CohomologyReport& b, const DegreeWindow& w) {
    for (const auto& [n, d] : a.dims)
        if (d != 0) return Verdict::False;
    for (const auto& [n, d] : b.dims)
        if (d != 0) return Verdict::False;
    for (int n = w.lo + 1; n < w.hi; ++n)
        if (a.nonzero_uncertified.count(n) || b.nonzero_uncertified.count(n)) return Verdict::False;
    for (int n = w.lo + 1; n < w.hi; ++n)
        if (a.incomplete.count(n) || b.incomplete.count(n)) return Verdict::Inconclusive;
    return Verdict::True;
}

} // namespace

WeqReport is_weak_equivalence(const FatMorphism& g, const TruncationConfig& cfg) {
    WeqReport rep;
    rep.base_cone = certified_cone_cohomology(g.base_map, cfg);
    rep.linear_cone = certified_cone_cohomology(dual_of_linear_part(g), cfg);
    rep.verdict = combine_verdicts(rep.base_cone, rep.linear_cone, cfg.window);
    return rep;
}

CofibrationReport is_cofibration(const FatMorphism& g) {
    CofibrationReport rep;
    auto single_gen = [](const AlgElt& v) -> int {
        if (v.terms.size() != 1) return -1;
        const auto& [m, c] = *v.terms.begin();
        if (m.factors.size() != 1 || !(c == Rat(1))) return -1;
        return m.factors[0];
    };
    std::set<int> used;
    for (int i = 0; i < g.source.n_base(); ++i) {
        int t = single_gen(g.base_map.images[static_cast<std::size_t>(i)]);
        if (t < 0 || !used.insert(t).second) {
            rep.reason = "base map is not a generator-subset inclusion";
            return rep;
        }
    }
    if (!g.base_map.is_chain_map()) {
        rep.reason = "base map does not intertwine the base differentials";
        return rep;
    }
    std::set<int> used_dual;
    for (int i = 0; i < g.source.n_dual(); ++i) {
        int t = single_gen(g.gdual[0][static_cast<std::size_t>(i)]);
        if (t < g.target.n_base() || !used_dual.insert(t).second) {
            rep.reason = "dual part is not a generator-subset inclusion";
            return rep;
        }
        for (int n = 1; n <= g.source.W; ++n) {
            if (!g.gdual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].is_zero()) {
                rep.reason = "retained generator has a nontrivial weight-" + std::to_string(n) + " component";
                return rep;
            }
        }
    }
    rep.verdict = true;
    return rep;
}

// ---------------------------------------------------------------------------
// coproducts

Coproduct coproduct(const FatCdga& X, const FatCdga& Y) {
    if (X.W != Y.W) fail(ErrorCode::Argument, "coproduct across different weight cutoffs");
    SemiFreeDgca base = tensor(X.base, Y.base);
    int nbX = X.n_base(), nbY = Y.n_base(), ndX = X.n_dual(), ndY = Y.n_dual();

    std::set<std::string> names;
    for (const auto& gch : base.alg.gens) names.insert(gch.name);
    std::vector<Generator> duals;
    auto add_dual = [&](Generator d) {
        while (names.count(d.name)) d.name += "_2";
        names.insert(d.name);
        duals.push_back(d);
    };
    for (const auto& d : X.dual_gens) add_dual(d);
    for (const auto& d : Y.dual_gens) add_dual(d);

    std::vector<int> mapX(static_cast<std::size_t>(nbX + ndX));
    for (int i = 0; i < nbX; ++i) mapX[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < ndX; ++i) mapX[static_cast<std::size_t>(nbX + i)] = nbX + nbY + i;
    std::vector<int> mapY(static_cast<std::size_t>(nbY + ndY));
    for (int i = 0; i < nbY; ++i) mapY[static_cast<std::size_t>(i)] = nbX + i;
    for (int i = 0; i < ndY; ++i) mapY[static_cast<std::size_t>(nbY + i)] = nbX + nbY + ndX + i;

    int W = X.W;
    std::vector<std::vector<AlgElt>> db(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(nbX + nbY)));
    std::vector<std::vector<AlgElt>> dd(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(ndX + ndY)));
    for (int n = 0; n <= W; ++n) {
        for (int i = 0; i < nbX; ++i)
            db[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
                remap_elt(X.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], mapX);
        for (int i = 0; i < nbY; ++i)
            db[static_cast<std::size_t>(n)][static_cast<std::size_t>(nbX + i)] =
                remap_elt(Y.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], mapY);
        for (int i = 0; i < ndX; ++i)
            dd[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
                remap_elt(X.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], mapX);
        for (int i = 0; i < ndY; ++i)
            dd[static_cast<std::size_t>(n)][static_cast<std::size_t>(ndX + i)] =
                remap_elt(Y.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], mapY);
    }

    std::optional<CellModule> primal;
    if (X.primal && Y.primal) {
        std::set<std::string> pnames;
        std::vector<Generator> pgens;
        auto add_p = [&](Generator g) {
            while (pnames.count(g.name)) g.name += "_2";
            pnames.insert(g.name);
            pgens.push_back(g);
        };
        for (const auto& g : X.primal->gens) add_p(g);
        for (const auto& g : Y.primal->gens) add_p(g);
        std::vector<ModElt> pd(static_cast<std::size_t>(ndX + ndY));
        for (int i = 0; i < ndX; ++i)
            for (const auto& [j, c] : X.primal->dgen[static_cast<std::size_t>(i)].comps)
                pd[static_cast<std::size_t>(i)].add_comp(j, remap_elt(c, mapX));
        for (int i = 0; i < ndY; ++i)
            for (const auto& [j, c] : Y.primal->dgen[static_cast<std::size_t>(i)].comps)
                pd[static_cast<std::size_t>(ndX + i)].add_comp(ndX + j, remap_elt(c, mapY));
        primal = CellModule(base, std::move(pgens), std::move(pd));
    }

    Coproduct out;
    out.object = FatCdga(base, duals, W, std::move(db), std::move(dd), std::move(primal));

    std::vector<std::vector<AlgElt>> gl(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(ndX)));
    for (int i = 0; i < ndX; ++i) gl[0][static_cast<std::size_t>(i)] = AlgElt::gen(out.object.dual_index(i));
    out.in_left = FatMorphism(X, out.object, tensor_incl_left(X.base, Y.base, base), std::move(gl));

    std::vector<std::vector<AlgElt>> gr(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(ndY)));
    for (int i = 0; i < ndY; ++i)
        gr[0][static_cast<std::size_t>(i)] = AlgElt::gen(out.object.dual_index(ndX + i));
    out.in_right = FatMorphism(Y, out.object, tensor_incl_right(X.base, Y.base, base), std::move(gr));
    return out;
}

FatMorphism fold_morphism(const Coproduct& c, const FatCdga& X) {
    int nd = X.n_dual();
    if (c.object.n_dual() != 2 * nd || c.object.n_base() != 2 * X.n_base())
        fail(ErrorCode::Argument, "fold: coproduct is not a square of the given object");
    std::vector<std::vector<AlgElt>> g(static_cast<std::size_t>(X.W) + 1,
                                       std::vector<AlgElt>(static_cast<std::size_t>(2 * nd)));
    for (int i = 0; i < 2 * nd; ++i) g[0][static_cast<std::size_t>(i)] = AlgElt::gen(X.dual_index(i % nd));
    return FatMorphism(c.object, X, tensor_fold(X.base, c.object.base), std::move(g));
}

// ---------------------------------------------------------------------------
// pushouts along cofibrations

Pushout pushout_along_cofibration(const FatMorphism& f, const FatMorphism& g) {
    auto cof = is_cofibration(g);
    if (!cof.verdict) fail(ErrorCode::Argument, "pushout: g is not a cofibration: " + cof.reason);
    if (!(f.source == g.source)) fail(ErrorCode::Argument, "pushout: maps do not share a source");
    const FatCdga& S = f.source;
    const FatCdga& C = f.target;
    const FatCdga& D = g.target;
    int W = S.W;

    std::vector<int> rho(static_cast<std::size_t>(S.n_base()));
    std::set<int> base_image;
    for (int i = 0; i < S.n_base(); ++i) {
        int t = g.base_map.images[static_cast<std::size_t>(i)].terms.begin()->first.factors[0];
        rho[static_cast<std::size_t>(i)] = t;
        base_image.insert(t);
    }
    std::vector<int> tau(static_cast<std::size_t>(S.n_dual()));
    std::set<int> dual_image;
    for (int i = 0; i < S.n_dual(); ++i) {
        int t = g.gdual[0][static_cast<std::size_t>(i)].terms.begin()->first.factors[0] - D.n_base();
        tau[static_cast<std::size_t>(i)] = t;
        dual_image.insert(t);
    }

    // base of the pushout: C's base followed by the attached D generators
    std::set<std::string> names;
    for (const auto& gn : C.base.alg.gens) names.insert(gn.name);
    std::vector<Generator> ebase_gens = C.base.alg.gens;
    std::vector<int> new_base;
    std::vector<int> dbase_to_e(static_cast<std::size_t>(D.n_base()), -1);
    for (int i = 0; i < D.n_base(); ++i) {
        if (base_image.count(i)) continue;
        Generator gn = D.base.gen(i);
        while (names.count(gn.name)) gn.name += "_2";
        names.insert(gn.name);
        dbase_to_e[static_cast<std::size_t>(i)] = static_cast<int>(ebase_gens.size());
        ebase_gens.push_back(gn);
        new_base.push_back(i);
    }
    std::vector<AlgElt> dbase_image(static_cast<std::size_t>(D.n_base()));
    for (int i = 0; i < S.n_base(); ++i)
        dbase_image[static_cast<std::size_t>(rho[static_cast<std::size_t>(i)])] =
            f.base_map.images[static_cast<std::size_t>(i)];
    for (int i : new_base)
        dbase_image[static_cast<std::size_t>(i)] = AlgElt::gen(dbase_to_e[static_cast<std::size_t>(i)]);

    GradedAlgebra ebase_alg(ebase_gens);
    auto subst_base = [&](const AlgElt& a) {
        AlgElt out;
        for (const auto& [m, c] : a.terms) {
            AlgElt prod = AlgElt::unit(c);
            for (int fct : m.factors) prod = ebase_alg.mul(prod, dbase_image[static_cast<std::size_t>(fct)]);
            out = out + prod;
        }
        return out;
    };

    std::vector<AlgElt> ebase_diff(ebase_gens.size());
    for (int i = 0; i < C.n_base(); ++i)
        ebase_diff[static_cast<std::size_t>(i)] = C.base.dgen[static_cast<std::size_t>(i)];
    for (int i : new_base)
        ebase_diff[static_cast<std::size_t>(dbase_to_e[static_cast<std::size_t>(i)])] =
            subst_base(D.base.dgen[static_cast<std::size_t>(i)]);
    SemiFreeDgca ebase(ebase_alg, std::move(ebase_diff));

    // duals: attached D duals first, then C's (the inherited well-order)
    std::vector<Generator> eduals;
    std::vector<int> ddual_to_e(static_cast<std::size_t>(D.n_dual()), -1);
    std::set<std::string> dnames = names;
    std::vector<int> new_dual;
    for (int i = 0; i < D.n_dual(); ++i) {
        if (dual_image.count(i)) continue;
        Generator gn = D.dual_gens[static_cast<std::size_t>(i)];
        while (dnames.count(gn.name)) gn.name += "_2";
        dnames.insert(gn.name);
        ddual_to_e[static_cast<std::size_t>(i)] = static_cast<int>(eduals.size());
        eduals.push_back(gn);
        new_dual.push_back(i);
    }
    std::vector<int> cdual_to_e(static_cast<std::size_t>(C.n_dual()));
    for (int j = 0; j < C.n_dual(); ++j) {
        Generator gn = C.dual_gens[static_cast<std::size_t>(j)];
        while (dnames.count(gn.name)) gn.name += "_2";
        dnames.insert(gn.name);
        cdual_to_e[static_cast<std::size_t>(j)] = static_cast<int>(eduals.size());
        eduals.push_back(gn);
    }

    int enb = ebase.size();
    std::vector<int> mapC(static_cast<std::size_t>(C.n_base() + C.n_dual()));
    for (int i = 0; i < C.n_base(); ++i) mapC[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < C.n_dual(); ++j)
        mapC[static_cast<std::size_t>(C.n_base() + j)] = enb + cdual_to_e[static_cast<std::size_t>(j)];

    std::vector<std::vector<AlgElt>> db(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(enb)));
    std::vector<std::vector<AlgElt>> dd(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(eduals.size()));

    // temporary shell to multiply substituted elements with truncation
    FatCdga eshell(ebase, eduals, W, db, dd);
    std::vector<AlgElt> dgen_image(static_cast<std::size_t>(D.n_base() + D.n_dual()));
    for (int i = 0; i < D.n_base(); ++i) dgen_image[static_cast<std::size_t>(i)] = dbase_image[static_cast<std::size_t>(i)];
    for (int i = 0; i < S.n_dual(); ++i)
        dgen_image[static_cast<std::size_t>(D.n_base() + tau[static_cast<std::size_t>(i)])] =
            remap_elt(f.apply_dual_gen(i), mapC);
    for (int i : new_dual)
        dgen_image[static_cast<std::size_t>(D.n_base() + i)] =
            AlgElt::gen(enb + ddual_to_e[static_cast<std::size_t>(i)]);

    for (int n = 0; n <= W; ++n) {
        for (int i = 0; i < C.n_base(); ++i)
            db[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
                remap_elt(C.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], mapC);
        for (int j = 0; j < C.n_dual(); ++j)
            dd[static_cast<std::size_t>(n)][static_cast<std::size_t>(cdual_to_e[static_cast<std::size_t>(j)])] =
                remap_elt(C.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)], mapC);
    }
    for (int i : new_base) {
        AlgElt full;
        for (int n = 0; n <= W; ++n)
            full = full + D.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
        AlgElt img = subst_elt(full, dgen_image, eshell);
        for (const auto& [m, c] : img.terms)
            db[static_cast<std::size_t>(eshell.weight(m))]
              [static_cast<std::size_t>(dbase_to_e[static_cast<std::size_t>(i)])].add_term(m, c);
    }
    for (int i : new_dual) {
        AlgElt full;
        for (int n = 0; n <= W; ++n)
            full = full + D.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
        AlgElt img = subst_elt(full, dgen_image, eshell);
        for (const auto& [m, c] : img.terms) {
            int w = eshell.weight(m);
            if (w < 1) fail(ErrorCode::InvalidComplex, "pushout differential drops to weight 0");
            dd[static_cast<std::size_t>(w - 1)]
              [static_cast<std::size_t>(ddual_to_e[static_cast<std::size_t>(i)])].add_term(m, c);
        }
    }

    Pushout out;
    out.object = FatCdga(ebase, eduals, W, std::move(db), std::move(dd));

    std::vector<AlgElt> gb_img;
    for (int i = 0; i < C.n_base(); ++i) gb_img.push_back(AlgElt::gen(i));
    std::vector<std::vector<AlgElt>> gg(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(C.n_dual())));
    for (int j = 0; j < C.n_dual(); ++j)
        gg[0][static_cast<std::size_t>(j)] = AlgElt::gen(enb + cdual_to_e[static_cast<std::size_t>(j)]);
    out.gamma = FatMorphism(C, out.object, DgcaMorphism(C.base, ebase, std::move(gb_img)), std::move(gg));

    std::vector<AlgElt> pb_img;
    for (int i = 0; i < D.n_base(); ++i) pb_img.push_back(dbase_image[static_cast<std::size_t>(i)]);
    std::vector<std::vector<AlgElt>> pg(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(D.n_dual())));
    for (int i = 0; i < D.n_dual(); ++i) {
        for (const auto& [m, c] : dgen_image[static_cast<std::size_t>(D.n_base() + i)].terms) {
            int w = out.object.weight(m);
            if (w >= 1 && w <= W + 1)
                pg[static_cast<std::size_t>(w - 1)][static_cast<std::size_t>(i)].add_term(m, c);
        }
    }
    out.phi = FatMorphism(D, out.object, DgcaMorphism(D.base, ebase, std::move(pb_img)), std::move(pg));

    if (!check_fat_morphism(out.gamma).pass || !check_fat_morphism(out.phi).pass)
        fail(ErrorCode::Window, "pushout: induced differential could not be intertwined at this cutoff");
    if (!(compose_fat_morphisms(out.gamma, f) == compose_fat_morphisms(out.phi, g)))
        fail(ErrorCode::InvalidComplex, "pushout square does not commute");
    auto sq = square_zero_check(out.object);
    if (!sq.pass)
        fail(ErrorCode::Window, "pushout differential fails square-zero at weight " + std::to_string(sq.weight));
    return out;
}

// ---------------------------------------------------------------------------
// base cylinder

BaseCylinder base_cylinder(const SemiFreeDgca& A, const TruncationConfig& cfg) {
    int n = A.size();
    std::vector<Generator> gens;
    std::vector<AlgElt> diffs;
    auto copy_map = [&](const AlgElt& a, int which) {
        AlgElt out;
        for (const auto& [m, c] : a.terms) {
            Monomial mm = m;
            for (int& f : mm.factors) f = 3 * f + which;
            out.terms[mm] = c; // 3f+const is monotone
        }
        return out;
    };
    for (int a = 0; a < n; ++a) {
        const Generator& g = A.gen(a);
        const AlgElt& da = A.dgen[static_cast<std::size_t>(a)];
        gens.push_back({g.name + "@0", g.degree});
        diffs.push_back(copy_map(da, 0));
        gens.push_back({g.name + "@1", g.degree});
        diffs.push_back(copy_map(da, 1));
        AlgElt target = copy_map(da, 0) - copy_map(da, 1);
        AlgElt h;
        if (!target.is_zero()) {
            // solve d(h) = (d x)@0 - (d x)@1 within s-bearing monomials
            SemiFreeDgca partial(GradedAlgebra(gens), diffs);
            auto cands_all = partial.alg.monomials_of_degree(g.degree, cfg.length_cap);
            std::vector<Monomial> cands;
            for (auto& m : cands_all) {
                bool has_s = false;
                for (int f : m.factors)
                    if (f % 3 == 2) has_s = true;
                if (has_s) cands.push_back(std::move(m));
            }
            std::map<Monomial, int> row_index;
            for (const auto& [m, c] : target.terms) row_index.emplace(m, 0);
            std::vector<AlgElt> images;
            for (const auto& cand : cands) {
                AlgElt img = partial.d(AlgElt{{{cand, Rat(1)}}});
                for (const auto& [m, c] : img.terms) row_index.emplace(m, 0);
                images.push_back(std::move(img));
            }
            int r = 0;
            for (auto& [m, idx] : row_index) idx = r++;
            RationalMatrix mat(r, static_cast<int>(cands.size()));
            for (int j = 0; j < static_cast<int>(cands.size()); ++j)
                for (const auto& [m, c] : images[static_cast<std::size_t>(j)].terms)
                    mat.set(row_index.at(m), j, c);
            std::vector<Rat> rhs(static_cast<std::size_t>(r), Rat(0));
            for (const auto& [m, c] : target.terms) rhs[static_cast<std::size_t>(row_index.at(m))] = c;
            auto sol = solve(mat, rhs);
            if (!sol)
                fail(ErrorCode::Window,
                     "base cylinder correction for " + g.name + " not solvable at this length cap");
            for (int j = 0; j < static_cast<int>(cands.size()); ++j)
                if (!is_zero((*sol)[static_cast<std::size_t>(j)]))
                    h.add_term(cands[static_cast<std::size_t>(j)], (*sol)[static_cast<std::size_t>(j)]);
        }
        gens.push_back({g.name + "@s", g.degree - 1});
        diffs.push_back(AlgElt::gen(3 * a) - AlgElt::gen(3 * a + 1) - h);
    }

    BaseCylinder out;
    out.tensor_square = tensor(A, A);
    out.cyl = SemiFreeDgca(GradedAlgebra(gens), diffs);
    std::vector<AlgElt> incl_img;
    for (int a = 0; a < n; ++a) incl_img.push_back(AlgElt::gen(3 * a));
    for (int a = 0; a < n; ++a) incl_img.push_back(AlgElt::gen(3 * a + 1));
    out.incl = DgcaMorphism(out.tensor_square, out.cyl, std::move(incl_img));
    std::vector<AlgElt> proj_img;
    for (int i = 0; i < 3 * n; ++i) {
        if (i % 3 == 2) proj_img.push_back(AlgElt::zero());
        else proj_img.push_back(AlgElt::gen(i / 3));
    }
    out.proj = DgcaMorphism(out.cyl, A, std::move(proj_img));
    return out;
}

// ---------------------------------------------------------------------------
// path module

PathModule path_module(const CellModule& M) {
    const SemiFreeDgca& A = M.base;
    int n = M.size();
    auto I = [](int i) { return 3 * i; };
    auto Z = [](int i) { return 3 * i + 1; };
    auto O = [](int i) { return 3 * i + 2; };
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) {
        const Generator& g = M.gen(i);
        gens.push_back({g.name + "@I", g.degree + 1});
        gens.push_back({g.name + "@0", g.degree});
        gens.push_back({g.name + "@1", g.degree});
    }
    auto suspend = [&](const ModElt& v) { // S(a·m_j) = (-1)^{|a|} a·m_j@I
        ModElt out;
        for (const auto& [j, c] : v.comps) {
            std::map<int, AlgElt> pieces;
            for (const auto& [mono, cc] : c.terms) pieces[A.alg.monomial_degree(mono)].add_term(mono, cc);
            for (const auto& [dc, pc] : pieces) out.add_comp(I(j), ((dc & 1) ? Rat(-1) : Rat(1)) * pc);
        }
        return out;
    };
    auto copy_to = [&](const ModElt& v, auto&& pos) {
        ModElt out;
        for (const auto& [j, c] : v.comps) out.add_comp(pos(j), c);
        return out;
    };
    std::vector<ModElt> dgen(static_cast<std::size_t>(3 * n));
    for (int i = 0; i < n; ++i) {
        const ModElt& dm = M.dgen[static_cast<std::size_t>(i)];
        dgen[static_cast<std::size_t>(I(i))] = Rat(-1) * suspend(dm);
        dgen[static_cast<std::size_t>(Z(i))] = copy_to(dm, Z) - ModElt::gen(I(i));
        dgen[static_cast<std::size_t>(O(i))] = copy_to(dm, O) + ModElt::gen(I(i));
    }
    PathModule out;
    out.object = CellModule(A, std::move(gens), std::move(dgen));

    std::vector<ModElt> from_img;
    for (int i = 0; i < n; ++i) from_img.push_back(ModElt::gen(Z(i)) + ModElt::gen(O(i)));
    out.from_module = FreeModMap(M, out.object, DgcaMorphism::identity(A), std::move(from_img));

    std::vector<Generator> egens;
    for (int i = 0; i < n; ++i) egens.push_back({M.gen(i).name + ".0", M.gen(i).degree});
    for (int i = 0; i < n; ++i) egens.push_back({M.gen(i).name + ".1", M.gen(i).degree});
    std::vector<ModElt> ed(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, c] : M.dgen[static_cast<std::size_t>(i)].comps) {
            ed[static_cast<std::size_t>(i)].add_comp(j, c);
            ed[static_cast<std::size_t>(n + i)].add_comp(n + j, c);
        }
    }
    CellModule ends(A, std::move(egens), std::move(ed));
    std::vector<ModElt> ends_img(static_cast<std::size_t>(3 * n));
    for (int i = 0; i < n; ++i) {
        ends_img[static_cast<std::size_t>(Z(i))] = ModElt::gen(i);
        ends_img[static_cast<std::size_t>(O(i))] = ModElt::gen(n + i);
    }
    out.to_ends = FreeModMap(out.object, ends, DgcaMorphism::identity(A), std::move(ends_img));

    std::vector<ModElt> e0(static_cast<std::size_t>(3 * n)), e1(static_cast<std::size_t>(3 * n));
    for (int i = 0; i < n; ++i) {
        e0[static_cast<std::size_t>(Z(i))] = ModElt::gen(i);
        e1[static_cast<std::size_t>(O(i))] = ModElt::gen(i);
    }
    out.eval0 = FreeModMap(out.object, M, DgcaMorphism::identity(A), std::move(e0));
    out.eval1 = FreeModMap(out.object, M, DgcaMorphism::identity(A), std::move(e1));
    return out;
}

// ---------------------------------------------------------------------------
// lifts

namespace {

struct Constraint {
    std::function<ModElt(const ModElt&)> map;
    ModElt rhs;
};

// Exact solve for one generator value in the span of the truncated basis at
// the given degree, optionally restricted to generator indices <= max_index.
std::optional<ModElt> solve_in_module(const TruncatedModule& T, int degree, int max_gen_index,
                                      const std::vector<Constraint>& constraints) {
    auto it = T.basis.find(degree);
    std::vector<std::pair<int, Monomial>> cands;
    if (it != T.basis.end())
        for (const auto& item : it->second)
            if (max_gen_index < 0 || item.first <= max_gen_index) cands.push_back(item);
    struct Key {
        std::size_t c;
        int gen;
        Monomial mono;
        bool operator<(const Key& o) const {
            return std::tie(c, gen, mono) < std::tie(o.c, o.gen, o.mono);
        }
    };
    std::map<Key, int> rows;
    auto note_rows = [&](std::size_t ci, const ModElt& v) {
        for (const auto& [g, coeff] : v.comps)
            for (const auto& [mono, cc] : coeff.terms) rows.emplace(Key{ci, g, mono}, 0);
    };
    std::vector<std::vector<ModElt>> per_constraint(constraints.size());
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
        note_rows(ci, constraints[ci].rhs);
        per_constraint[ci].reserve(cands.size());
        for (const auto& [gi, mono] : cands) {
            AlgElt c;
            c.terms[mono] = Rat(1);
            ModElt img = constraints[ci].map(ModElt{{{gi, c}}});
            note_rows(ci, img);
            per_constraint[ci].push_back(std::move(img));
        }
    }
    int r = 0;
    for (auto& [k, idx] : rows) idx = r++;
    RationalMatrix mat(r, static_cast<int>(cands.size()));
    for (std::size_t ci = 0; ci < constraints.size(); ++ci)
        for (int j = 0; j < static_cast<int>(cands.size()); ++j)
            for (const auto& [g, coeff] : per_constraint[ci][static_cast<std::size_t>(j)].comps)
                for (const auto& [mono, cc] : coeff.terms)
                    mat.add(rows.at(Key{ci, g, mono}), j, cc);
    std::vector<Rat> rhs(static_cast<std::size_t>(r), Rat(0));
    for (std::size_t ci = 0; ci < constraints.size(); ++ci)
        for (const auto& [g, coeff] : constraints[ci].rhs.comps)
            for (const auto& [mono, cc] : coeff.terms)
                rhs[static_cast<std::size_t>(rows.at(Key{ci, g, mono}))] = cc;
    auto sol = solve(mat, rhs);
    if (!sol) return std::nullopt;
    ModElt u;
    for (int j = 0; j < static_cast<int>(cands.size()); ++j) {
        if (is_zero((*sol)[static_cast<std::size_t>(j)])) continue;
        AlgElt c;
        c.terms[cands[static_cast<std::size_t>(j)].second] = (*sol)[static_cast<std::size_t>(j)];
        u.add_comp(cands[static_cast<std::size_t>(j)].first, c);
    }
    return u;
}

} // namespace

CellModule lift_differential(const DgcaMorphism& p, const CellModule& N, const TruncationConfig& cfg) {
    if (!(p.target == N.base)) fail(ErrorCode::Argument, "lift: module is not over the target of p");
    const SemiFreeDgca& A = p.source;
    std::vector<Generator> gens = N.gens;
    std::vector<ModElt> delta;
    for (int i = 0; i < N.size(); ++i) {
        const ModElt& t = N.dgen[static_cast<std::size_t>(i)];
        if (t.is_zero()) {
            delta.push_back(ModElt{});
            continue;
        }
        std::vector<Generator> pgens(gens.begin(), gens.begin() + i);
        std::vector<ModElt> pdiff(delta.begin(), delta.begin() + i);
        CellModule partialM(A, pgens, pdiff);
        std::vector<Generator> qgens(N.gens.begin(), N.gens.begin() + i);
        std::vector<ModElt> qdiff(N.dgen.begin(), N.dgen.begin() + i);
        CellModule partialN(N.base, qgens, qdiff);
        std::vector<ModElt> id_img;
        for (int j = 0; j < i; ++j) id_img.push_back(ModElt::gen(j));
        FreeModMap pbar(partialM, partialN, p, id_img);

        int deg = N.gen(i).degree + 1;
        if (!cfg.window.contains(deg) || !cfg.window.contains(deg + 1))
            fail(ErrorCode::Window, "lift: degree window does not cover the solve degrees");
        auto T = truncate_module(partialM, cfg);
        std::vector<Constraint> cs;
        cs.push_back({[&](const ModElt& u) { return pbar.apply(u); }, t});
        cs.push_back({[&](const ModElt& u) { return partialM.d(u); }, ModElt{}});
        auto u = solve_in_module(T, deg, -1, cs);
        if (!u) fail(ErrorCode::Window, "lift: the acyclic fiber could not be certified within the window");
        if (!(pbar.apply(*u) == t) || !partialM.d(*u).is_zero())
            fail(ErrorCode::Window, "lift: solution escapes the truncation; enlarge the window or cap");
        delta.push_back(*u);
    }
    try {
        return CellModule(A, std::move(gens), std::move(delta));
    } catch (const Error&) {
        fail(ErrorCode::Window, "lift: lifted differential fails d^2 = 0 within this truncation");
    }
}

FreeModMap lift_module_map(const FreeModMap& q, const FreeModMap& psi, const TruncationConfig& cfg,
                           const std::vector<int>* index_bounds) {
    const FreeDgModule& P = psi.source;
    const FreeDgModule& N = q.source;
    if (!(P.base == N.base)) fail(ErrorCode::Argument, "lift_module_map: modules over different bases");
    std::vector<ModElt> images;
    auto T_all = truncate_module(N, cfg);
    for (int i = 0; i < P.size(); ++i) {
        ModElt rhs1 = psi.images[static_cast<std::size_t>(i)];
        ModElt rhs2;
        for (const auto& [j, c] : P.dgen[static_cast<std::size_t>(i)].comps) {
            if (j >= i) fail(ErrorCode::Argument, "lift_module_map: source is not a cell module");
            rhs2 = rhs2 + N.scale(c, images[static_cast<std::size_t>(j)]);
        }
        int deg = P.gen(i).degree;
        if (!cfg.window.contains(deg) || !cfg.window.contains(deg + 1))
            fail(ErrorCode::Window, "lift_module_map: window does not cover the solve degrees");
        int bound = index_bounds ? (*index_bounds)[static_cast<std::size_t>(i)] : -1;
        std::vector<Constraint> cs;
        cs.push_back({[&](const ModElt& u) { return q.apply(u); }, rhs1});
        cs.push_back({[&](const ModElt& u) { return N.d(u); }, rhs2});
        auto u = solve_in_module(T_all, deg, bound, cs);
        if (!u) fail(ErrorCode::Window, "lift_module_map: solve infeasible at this truncation");
        if (!(q.apply(*u) == rhs1) || !(N.d(*u) == rhs2))
            fail(ErrorCode::Window, "lift_module_map: solution escapes the truncation");
        images.push_back(*u);
    }
    return FreeModMap(P, N, DgcaMorphism::identity(P.base), std::move(images));
}

// ---------------------------------------------------------------------------
// the CE cylinder

namespace {

// Monomials of the given degree with exactly `weight` dual factors and at
// most `cap` base factors.
std::vector<Monomial> fat_monomials(const FatCdga& X, int degree, int weight, int cap) {
    int nb = X.n_base();
    int ng = X.total.size();
    int max_dual = 0, min_dual = 0;
    for (int i = nb; i < ng; ++i) {
        max_dual = std::max(max_dual, X.total.degree_of_gen(i));
        min_dual = std::min(min_dual, X.total.degree_of_gen(i));
    }
    std::vector<Monomial> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int min_gen, int deg, int w, int blen) -> void {
        if (w == weight && deg == degree) out.push_back(Monomial{current});
        for (int g = min_gen; g < ng; ++g) {
            bool dual = g >= nb;
            if (dual && w == weight) continue;
            if (!dual && blen == cap) continue;
            int dg = X.total.degree_of_gen(g);
            if ((dg & 1) && !current.empty() && current.back() == g) continue;
            int ndeg = deg + dg;
            int rem = weight - w - (dual ? 1 : 0);
            // base factors only lower the degree; dual factors bounded
            if (ndeg + rem * max_dual < degree) continue;
            current.push_back(g);
            self(self, g, ndeg, w + (dual ? 1 : 0), blen + (dual ? 0 : 1));
            current.pop_back();
        }
    };
    rec(rec, 0, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

CylinderWitness cylinder_ce(const FatCdga& X, const FactorizationConfig& cfg) {
    if (!X.primal)
        fail(ErrorCode::Argument, "cylinder: the object carries no primal cell structure");
    if (cfg.W != X.W)
        fail(ErrorCode::Argument, "cylinder: config weight cutoff differs from the object's");
    int W = X.W;
    const CellModule& M = *X.primal;
    const SemiFreeDgca& A = X.base;
    int nm = M.size();

    CylinderWitness wit;
    wit.copr = coproduct(X, X);
    wit.fold = fold_morphism(wit.copr, X);

    BaseCylinder bc = base_cylinder(A, cfg.trunc);
    CellModule N_lift = lift_differential(bc.proj, M, cfg.trunc);
    CellModule coprimal = *wit.copr.object.primal;
    CellModule P01 = base_change(bc.incl, coprimal);

    // psi = nabla after projecting coefficients: m^0 -> -m, m^1 -> +m
    std::vector<ModElt> psi_img;
    for (int i = 0; i < 2 * nm; ++i)
        psi_img.push_back((i < nm ? Rat(-1) : Rat(1)) * ModElt::gen(i % nm));
    FreeModMap psi(P01, M, bc.proj, std::move(psi_img));
    std::vector<ModElt> qp_img;
    for (int i = 0; i < nm; ++i) qp_img.push_back(ModElt::gen(i));
    FreeModMap qprime(N_lift, M, bc.proj, std::move(qp_img));
    // the lift of the fold: restricted so that the cell filtration is kept
    std::vector<int> phi_bounds;
    for (int i = 0; i < 2 * nm; ++i) phi_bounds.push_back(i % nm);
    FreeModMap phi = lift_module_map(qprime, psi, cfg.trunc, &phi_bounds);

    // middle primal over Cyl(A): per generator the interval copy, then the ends
    auto I = [](int i) { return 3 * i; };
    auto Z = [](int i) { return 3 * i + 1; };
    auto O = [](int i) { return 3 * i + 2; };
    std::vector<Generator> pgens;
    for (int i = 0; i < nm; ++i) {
        const Generator& g = M.gen(i);
        pgens.push_back({g.name + "@I", g.degree + 1});
        pgens.push_back({g.name + "@0", g.degree});
        pgens.push_back({g.name + "@1", g.degree});
    }
    auto suspend = [&](const ModElt& v) {
        ModElt out;
        for (const auto& [j, c] : v.comps) {
            std::map<int, AlgElt> pieces;
            for (const auto& [mono, cc] : c.terms)
                pieces[bc.cyl.alg.monomial_degree(mono)].add_term(mono, cc);
            for (const auto& [dc, pc] : pieces) out.add_comp(I(j), ((dc & 1) ? Rat(-1) : Rat(1)) * pc);
        }
        return out;
    };
    auto move01 = [&](const ModElt& v) { // P01 index -> interleaved index
        ModElt out;
        for (const auto& [j, c] : v.comps) out.add_comp(j < nm ? Z(j) : O(j - nm), c);
        return out;
    };
    std::vector<ModElt> pdiff(static_cast<std::size_t>(3 * nm));
    for (int i = 0; i < nm; ++i) {
        pdiff[static_cast<std::size_t>(I(i))] =
            Rat(-1) * suspend(N_lift.dgen[static_cast<std::size_t>(i)]);
        pdiff[static_cast<std::size_t>(Z(i))] =
            move01(P01.dgen[static_cast<std::size_t>(i)]) + suspend(phi.images[static_cast<std::size_t>(i)]);
        pdiff[static_cast<std::size_t>(O(i))] =
            move01(P01.dgen[static_cast<std::size_t>(nm + i)]) + suspend(phi.images[static_cast<std::size_t>(nm + i)]);
    }
    CellModule P(bc.cyl, pgens, pdiff);

    // weight-0 dual of the middle
    DualCellModule Pd = dualize_cell(P);
    std::vector<std::vector<AlgElt>> db(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(bc.cyl.size())));
    std::vector<std::vector<AlgElt>> dd(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(3 * nm)));
    db[0] = bc.cyl.dgen;
    {
        FatCdga shell0(bc.cyl, Pd.gens, W, db, dd, P);
        for (int i = 0; i < 3 * nm; ++i)
            dd[0][static_cast<std::size_t>(i)] = shell0.from_dual_module_elt(Pd.dgen[static_cast<std::size_t>(i)]);
    }
    FatCdga C(bc.cyl, Pd.gens, W, db, dd, P);

    // generator substitution maps for i and p
    const FatCdga& Q = wit.copr.object;
    std::vector<int> i_map(static_cast<std::size_t>(Q.n_base() + Q.n_dual()));
    int nbA = A.size();
    for (int a = 0; a < nbA; ++a) {
        i_map[static_cast<std::size_t>(a)] = 3 * a;
        i_map[static_cast<std::size_t>(nbA + a)] = 3 * a + 1;
    }
    for (int i2 = 0; i2 < nm; ++i2) {
        i_map[static_cast<std::size_t>(Q.n_base() + i2)] = C.dual_index(Z(i2));
        i_map[static_cast<std::size_t>(Q.n_base() + nm + i2)] = C.dual_index(O(i2));
    }
    std::vector<AlgElt> p_image(static_cast<std::size_t>(C.n_base() + C.n_dual()));
    for (int gi = 0; gi < bc.cyl.size(); ++gi)
        p_image[static_cast<std::size_t>(gi)] = gi % 3 == 2 ? AlgElt::zero() : AlgElt::gen(gi / 3);
    for (int i2 = 0; i2 < nm; ++i2) {
        p_image[static_cast<std::size_t>(C.dual_index(I(i2)))] = AlgElt::zero();
        p_image[static_cast<std::size_t>(C.dual_index(Z(i2)))] = AlgElt::gen(X.dual_index(i2));
        p_image[static_cast<std::size_t>(C.dual_index(O(i2)))] = AlgElt::gen(X.dual_index(i2));
    }

    // positive weights: pinned on the i-image, solved on the rest
    for (int n = 1; n <= W; ++n) {
        std::vector<AlgElt> pinned_base(static_cast<std::size_t>(bc.cyl.size()));
        std::vector<AlgElt> pinned_dual(static_cast<std::size_t>(3 * nm));
        for (int a = 0; a < nbA; ++a) {
            pinned_base[static_cast<std::size_t>(3 * a)] = remap_elt_signed(
                Q.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)], i_map, C.total);
            pinned_base[static_cast<std::size_t>(3 * a + 1)] = remap_elt_signed(
                Q.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(nbA + a)], i_map, C.total);
        }
        for (int i2 = 0; i2 < nm; ++i2) {
            pinned_dual[static_cast<std::size_t>(Z(i2))] = remap_elt_signed(
                Q.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i2)], i_map, C.total);
            pinned_dual[static_cast<std::size_t>(O(i2))] = remap_elt_signed(
                Q.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(nm + i2)], i_map, C.total);
        }

        // unknown slots: s-generators of the base and the interval duals
        struct Slot {
            bool is_base;
            int gen; // base index or dual index
            std::vector<Monomial> cands;
            int offset;
        };
        std::vector<Slot> slots;
        int total_unknowns = 0;
        for (int a = 0; a < nbA; ++a) {
            int deg = bc.cyl.gen(3 * a + 2).degree + 1;
            Slot s{true, 3 * a + 2, fat_monomials(C, deg, n, cfg.trunc.length_cap), total_unknowns};
            total_unknowns += static_cast<int>(s.cands.size());
            slots.push_back(std::move(s));
        }
        for (int i2 = 0; i2 < nm; ++i2) {
            int deg = C.dual_gens[static_cast<std::size_t>(I(i2))].degree + 1;
            Slot s{false, I(i2), fat_monomials(C, deg, n + 1, cfg.trunc.length_cap), total_unknowns};
            total_unknowns += static_cast<int>(s.cands.size());
            slots.push_back(std::move(s));
        }

        // rows: p-vanishing and the weight-n square-zero defect per generator
        struct Key {
            int kind; // 0 = p-row, 1 = defect row
            int gen;  // unknown slot id or generator id
            Monomial mono;
            bool operator<(const Key& o) const {
                return std::tie(kind, gen, mono) < std::tie(o.kind, o.gen, o.mono);
            }
        };
        std::map<Key, int> rows;
        auto eval_defect = [&](const std::vector<AlgElt>& vb, const std::vector<AlgElt>& vd,
                               const AlgElt& gen_elt, bool with_lower) {
            AlgElt sum = C.apply_component(0, C.apply_values(vb, vd, gen_elt)) +
                         C.apply_values(vb, vd, C.apply_component(0, gen_elt));
            if (with_lower)
                for (int a2 = 1; a2 < n; ++a2)
                    sum = sum + C.apply_component(a2, C.apply_component(n - a2, gen_elt));
            return sum;
        };
        int n_gens = C.n_base() + C.n_dual();
        std::vector<AlgElt> consts(static_cast<std::size_t>(n_gens));
        for (int g = 0; g < n_gens; ++g) {
            consts[static_cast<std::size_t>(g)] =
                eval_defect(pinned_base, pinned_dual, AlgElt::gen(g), true);
            for (const auto& [m, c] : consts[static_cast<std::size_t>(g)].terms)
                rows.emplace(Key{1, g, m}, 0);
        }
        // p-rows and impulse columns
        std::vector<std::vector<std::pair<Key, Rat>>> columns(static_cast<std::size_t>(total_unknowns));
        std::vector<AlgElt> zb(static_cast<std::size_t>(bc.cyl.size()));
        std::vector<AlgElt> zd(static_cast<std::size_t>(3 * nm));
        for (const auto& s : slots) {
            for (int ci = 0; ci < static_cast<int>(s.cands.size()); ++ci) {
                int col = s.offset + ci;
                const Monomial& cand = s.cands[static_cast<std::size_t>(ci)];
                // p must kill the candidate value
                AlgElt pimg = subst_elt(AlgElt{{{cand, Rat(1)}}}, p_image, X);
                for (const auto& [m, c] : pimg.terms) {
                    Key k{0, col, m};
                    rows.emplace(k, 0);
                    columns[static_cast<std::size_t>(col)].emplace_back(k, c);
                }
                // defect contribution of the impulse on every generator
                auto& vb = s.is_base ? zb : zb;
                auto& vd = s.is_base ? zd : zd;
                (s.is_base ? zb[static_cast<std::size_t>(s.gen)] : zd[static_cast<std::size_t>(s.gen)]) =
                    AlgElt{{{cand, Rat(1)}}};
                for (int g = 0; g < n_gens; ++g) {
                    AlgElt contrib = eval_defect(vb, vd, AlgElt::gen(g), false);
                    for (const auto& [m, c] : contrib.terms) {
                        Key k{1, g, m};
                        rows.emplace(k, 0);
                        columns[static_cast<std::size_t>(col)].emplace_back(k, c);
                    }
                }
                (s.is_base ? zb[static_cast<std::size_t>(s.gen)] : zd[static_cast<std::size_t>(s.gen)]) =
                    AlgElt::zero();
            }
        }
        int r = 0;
        for (auto& [k, idx] : rows) idx = r++;
        RationalMatrix mat(r, total_unknowns);
        for (int col = 0; col < total_unknowns; ++col)
            for (const auto& [k, c] : columns[static_cast<std::size_t>(col)]) mat.add(rows.at(k), col, c);
        std::vector<Rat> rhs(static_cast<std::size_t>(r), Rat(0));
        for (int g = 0; g < n_gens; ++g)
            for (const auto& [m, c] : consts[static_cast<std::size_t>(g)].terms)
                rhs[static_cast<std::size_t>(rows.at(Key{1, g, m}))] = -c;
        auto sol = solve(mat, rhs);
        if (!sol)
            fail(ErrorCode::Window,
                 "cylinder: obstruction solve infeasible at weight " + std::to_string(n));

        // record the obstruction log
        for (int g = 0; g < n_gens; ++g) {
            if (consts[static_cast<std::size_t>(g)].is_zero()) continue;
            ObstructionEntry e;
            e.weight = n;
            e.generator = g < C.n_base() ? C.base.gen(g).name
                                         : C.dual_gens[static_cast<std::size_t>(g - C.n_base())].name;
            e.defect = C.print(consts[static_cast<std::size_t>(g)]);
            wit.log.push_back(std::move(e));
        }
        std::vector<AlgElt> sol_base = pinned_base;
        std::vector<AlgElt> sol_dual = pinned_dual;
        for (const auto& s : slots) {
            AlgElt v;
            for (int ci = 0; ci < static_cast<int>(s.cands.size()); ++ci)
                v.add_term(s.cands[static_cast<std::size_t>(ci)], (*sol)[static_cast<std::size_t>(s.offset + ci)]);
            if (!v.is_zero()) {
                ObstructionEntry e;
                e.weight = n;
                e.generator = s.is_base ? C.base.gen(s.gen).name
                                        : C.dual_gens[static_cast<std::size_t>(s.gen)].name;
                e.correction = C.print(v);
                wit.log.push_back(std::move(e));
            }
            if (s.is_base) sol_base[static_cast<std::size_t>(s.gen)] = v;
            else sol_dual[static_cast<std::size_t>(s.gen)] = v;
        }
        db[static_cast<std::size_t>(n)] = std::move(sol_base);
        dd[static_cast<std::size_t>(n)] = std::move(sol_dual);
        C = FatCdga(bc.cyl, Pd.gens, W, db, dd, P);
    }

    wit.cyl = C;

    // i : coproduct -> C
    std::vector<std::vector<AlgElt>> gi(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(2 * nm)));
    for (int i2 = 0; i2 < nm; ++i2) {
        gi[0][static_cast<std::size_t>(i2)] = AlgElt::gen(C.dual_index(Z(i2)));
        gi[0][static_cast<std::size_t>(nm + i2)] = AlgElt::gen(C.dual_index(O(i2)));
    }
    wit.i = FatMorphism(Q, C, bc.incl, std::move(gi));

    // p : C -> X
    std::vector<std::vector<AlgElt>> gp(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(3 * nm)));
    for (int i2 = 0; i2 < nm; ++i2) {
        gp[0][static_cast<std::size_t>(Z(i2))] = AlgElt::gen(X.dual_index(i2));
        gp[0][static_cast<std::size_t>(O(i2))] = AlgElt::gen(X.dual_index(i2));
    }
    wit.p = FatMorphism(C, X, bc.proj, std::move(gp));

    // certification: every postcondition that is exact is enforced here
    auto sq = square_zero_check(C);
    if (!sq.pass)
        fail(ErrorCode::Window, "cylinder: square-zero fails at weight " + std::to_string(sq.weight));
    if (!check_fat_morphism(wit.i).pass)
        fail(ErrorCode::Window, "cylinder: i does not intertwine the differentials");
    if (!check_fat_morphism(wit.p).pass)
        fail(ErrorCode::Window, "cylinder: p does not intertwine the differentials");
    if (!(compose_fat_morphisms(wit.p, wit.i) == wit.fold))
        fail(ErrorCode::InvalidComplex, "cylinder: p∘i is not the fold map");
    if (!is_cofibration(wit.i).verdict)
        fail(ErrorCode::InvalidComplex, "cylinder: i is not a cofibration");
    return wit;
}

// ---------------------------------------------------------------------------
// Der–Hom transport

namespace {

// (c·m_j)·a = (-1)^{|a||m_j|} (c·a)·m_j
ModElt right_scale(const FreeDgModule& Mod, const ModElt& m, const AlgElt& a) {
    ModElt out;
    for (const auto& [j, c] : m.comps) {
        int gdeg = Mod.gens[static_cast<std::size_t>(j)].degree;
        std::map<int, AlgElt> pieces;
        for (const auto& [mono, cc] : a.terms)
            pieces[Mod.base.alg.monomial_degree(mono)].add_term(mono, cc);
        for (const auto& [da, pa] : pieces) {
            Rat sign = ((da * gdeg) & 1) ? -1 : 1;
            out.add_comp(j, sign * Mod.base.alg.mul(c, pa));
        }
    }
    return out;
}

// Derivation-over-p extension of module-valued generator data:
// D(u_1...u_k) = sum_pos (-1)^{|D|·|prefix|} p(prefix)·D(u_pos)·p(suffix).
ModElt der_ext_mod(const FreeDgModule& V, const DgcaMorphism& p, const std::vector<ModElt>& values,
                   int degD, const AlgElt& arg) {
    ModElt out;
    for (const auto& [m, c] : arg.terms) {
        int prefix_deg = 0;
        for (std::size_t pos = 0; pos < m.factors.size(); ++pos) {
            int g = m.factors[pos];
            const ModElt& vg = values[static_cast<std::size_t>(g)];
            if (!vg.is_zero()) {
                Monomial pre{std::vector<int>(m.factors.begin(), m.factors.begin() + static_cast<long>(pos))};
                Monomial suf{std::vector<int>(m.factors.begin() + static_cast<long>(pos) + 1, m.factors.end())};
                Rat sign = ((degD * prefix_deg) & 1) ? -1 : 1;
                AlgElt pre_b = p.apply(AlgElt{{{pre, c * sign}}});
                AlgElt suf_b = p.apply(AlgElt{{{suf, Rat(1)}}});
                out = out + V.scale(pre_b, right_scale(V, vg, suf_b));
            }
            prefix_deg += p.source.alg.degree_of_gen(g);
        }
    }
    return out;
}

// Algebra-valued version.
AlgElt der_ext_alg(const DgcaMorphism& p, const std::vector<AlgElt>& values, int degD,
                   const AlgElt& arg) {
    const GradedAlgebra& B = p.target.alg;
    AlgElt out;
    for (const auto& [m, c] : arg.terms) {
        int prefix_deg = 0;
        for (std::size_t pos = 0; pos < m.factors.size(); ++pos) {
            int g = m.factors[pos];
            const AlgElt& vg = values[static_cast<std::size_t>(g)];
            if (!vg.is_zero()) {
                Monomial pre{std::vector<int>(m.factors.begin(), m.factors.begin() + static_cast<long>(pos))};
                Monomial suf{std::vector<int>(m.factors.begin() + static_cast<long>(pos) + 1, m.factors.end())};
                Rat sign = ((degD * prefix_deg) & 1) ? -1 : 1;
                out = out + B.mul(B.mul(p.apply(AlgElt{{{pre, c * sign}}}), vg),
                                  p.apply(AlgElt{{{suf, Rat(1)}}}));
            }
            prefix_deg += p.source.alg.degree_of_gen(g);
        }
    }
    return out;
}

} // namespace

DerHomReport der_hom_transport(const DgcaMorphism& p, const CellModule& M, const TruncationConfig& cfg) {
    const SemiFreeDgca& A = p.source;
    const SemiFreeDgca& B = p.target;
    if (!(B == M.base)) fail(ErrorCode::Argument, "der_hom: module is not over the target of p");
    if (!p.is_chain_map()) fail(ErrorCode::Argument, "der_hom: p does not intertwine the differentials");
    DualCellModule Md = dualize_cell(M);

    int min_a = 0;
    for (const auto& g : A.alg.gens) min_a = std::min(min_a, g.degree);
    int min_m = 0, max_m = 0;
    for (const auto& g : M.gens) {
        min_m = std::min(min_m, g.degree);
        max_m = std::max(max_m, g.degree);
    }
    TruncationConfig wide = cfg;
    wide.window = DegreeWindow(cfg.window.lo + min_a + std::min(0, min_m) - 2,
                               cfg.window.hi - std::min(0, min_m) + 2);
    auto TMd = truncate_module(Md, wide);
    auto TB = truncate_algebra(B, wide);

    struct LItem {
        int a;
        std::pair<int, Monomial> e;
        bool operator<(const LItem& o) const { return std::tie(a, e) < std::tie(o.a, o.e); }
        bool operator==(const LItem& o) const { return a == o.a && e == o.e; }
    };
    struct RItem {
        int i;
        int a;
        Monomial u;
        bool operator<(const RItem& o) const { return std::tie(i, a, u) < std::tie(o.i, o.a, o.u); }
        bool operator==(const RItem& o) const { return i == o.i && a == o.a && u == o.u; }
    };
    std::map<int, std::vector<LItem>> lbasis;
    std::map<int, std::vector<RItem>> rbasis;
    for (int t = cfg.window.lo; t <= cfg.window.hi; ++t) {
        std::vector<LItem> li;
        for (int a = 0; a < A.size(); ++a) {
            auto it = TMd.basis.find(t + A.gen(a).degree);
            if (it == TMd.basis.end()) continue;
            for (const auto& e : it->second) li.push_back({a, e});
        }
        std::sort(li.begin(), li.end());
        if (!li.empty()) lbasis[t] = std::move(li);
        std::vector<RItem> ri;
        for (int i = 0; i < M.size(); ++i) {
            for (int a = 0; a < A.size(); ++a) {
                auto it = TB.basis.find(t + M.gen(i).degree + A.gen(a).degree);
                if (it == TB.basis.end()) continue;
                for (const auto& u : it->second) ri.push_back({i, a, u});
            }
        }
        std::sort(ri.begin(), ri.end());
        if (!ri.empty()) rbasis[t] = std::move(ri);
    }

    auto ldim = [&](int t) {
        auto it = lbasis.find(t);
        return it == lbasis.end() ? 0 : static_cast<int>(it->second.size());
    };
    auto rdim = [&](int t) {
        auto it = rbasis.find(t);
        return it == rbasis.end() ? 0 : static_cast<int>(it->second.size());
    };

    // coordinates of derivation values (one ModElt per A-generator) at degree t
    auto lcoords = [&](int t, const std::vector<ModElt>& vals) {
        std::vector<Rat> v(static_cast<std::size_t>(ldim(t)), Rat(0));
        auto it = lbasis.find(t);
        for (int a = 0; a < A.size(); ++a) {
            const ModElt& w = vals[static_cast<std::size_t>(a)];
            for (const auto& [j, coeff] : w.comps) {
                for (const auto& [mono, cc] : coeff.terms) {
                    if (mono.length() > wide.length_cap) continue; // length quotient
                    LItem k{a, {j, mono}};
                    if (it == lbasis.end()) fail(ErrorCode::Window, "der_hom: value outside the window");
                    auto pos = std::lower_bound(it->second.begin(), it->second.end(), k);
                    if (pos == it->second.end() || !(*pos == k))
                        fail(ErrorCode::Window, "der_hom: value outside the truncated basis");
                    v[static_cast<std::size_t>(pos - it->second.begin())] += cc;
                }
            }
        }
        return v;
    };
    // coordinates of a Hom value: per module generator a derivation value table
    auto rcoords = [&](int t, const std::vector<std::vector<AlgElt>>& vals) {
        std::vector<Rat> v(static_cast<std::size_t>(rdim(t)), Rat(0));
        auto it = rbasis.find(t);
        for (int i = 0; i < M.size(); ++i) {
            for (int a = 0; a < A.size(); ++a) {
                const AlgElt& w = vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
                for (const auto& [u, cc] : w.terms) {
                    if (u.length() > wide.length_cap) continue; // length quotient
                    RItem k{i, a, u};
                    if (it == rbasis.end()) fail(ErrorCode::Window, "der_hom: value outside the window");
                    auto pos = std::lower_bound(it->second.begin(), it->second.end(), k);
                    if (pos == it->second.end() || !(*pos == k))
                        fail(ErrorCode::Window, "der_hom: value outside the truncated basis");
                    v[static_cast<std::size_t>(pos - it->second.begin())] += cc;
                }
            }
        }
        return v;
    };

    // differentials on elementary items
    auto l_delta = [&](int t, const LItem& k) {
        std::vector<ModElt> dvals(static_cast<std::size_t>(A.size()));
        AlgElt coeff;
        coeff.terms[k.e.second] = Rat(1);
        dvals[static_cast<std::size_t>(k.a)] = ModElt{{{k.e.first, coeff}}};
        std::vector<ModElt> out(static_cast<std::size_t>(A.size()));
        Rat sign = (t & 1) ? -1 : 1;
        for (int b = 0; b < A.size(); ++b) {
            ModElt first = Md.d(dvals[static_cast<std::size_t>(b)]);
            ModElt second = der_ext_mod(Md, p, dvals, t, A.dgen[static_cast<std::size_t>(b)]);
            out[static_cast<std::size_t>(b)] = first - sign * second;
        }
        return out;
    };
    auto r_delta = [&](int t, const RItem& k) {
        std::vector<std::vector<AlgElt>> out(static_cast<std::size_t>(M.size()),
                                             std::vector<AlgElt>(static_cast<std::size_t>(A.size())));
        std::vector<AlgElt> evals(static_cast<std::size_t>(A.size()));
        AlgElt u0;
        u0.terms[k.u] = Rat(1);
        evals[static_cast<std::size_t>(k.a)] = u0;
        int edeg = t + M.gen(k.i).degree;
        Rat esign = (edeg & 1) ? -1 : 1;
        Rat fsign = (t & 1) ? -1 : 1;
        // delta_Der(F(m_i)) for i = k.i
        for (int b = 0; b < A.size(); ++b) {
            AlgElt first = B.d(evals[static_cast<std::size_t>(b)]);
            AlgElt second = der_ext_alg(p, evals, edeg, A.dgen[static_cast<std::size_t>(b)]);
            out[static_cast<std::size_t>(k.i)][static_cast<std::size_t>(b)] = first - esign * second;
        }
        // -(-1)^t F(d_M m_i): only the k.i component of each d_M m_i contributes
        for (int i = 0; i < M.size(); ++i) {
            auto itc = M.dgen[static_cast<std::size_t>(i)].comps.find(k.i);
            if (itc == M.dgen[static_cast<std::size_t>(i)].comps.end()) continue;
            std::map<int, AlgElt> pieces;
            for (const auto& [mono, cc] : itc->second.terms)
                pieces[B.alg.monomial_degree(mono)].add_term(mono, cc);
            for (const auto& [db, pb] : pieces) {
                Rat bsign = ((t * db) & 1) ? -1 : 1;
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k.a)] =
                    out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k.a)] -
                    fsign * bsign * B.alg.mul(pb, u0);
            }
        }
        return out;
    };

    // assemble complexes and the natural map
    FiniteComplex LC, RC;
    LC.window = RC.window = cfg.window;
    std::map<int, RationalMatrix> psi;
    for (int t = cfg.window.lo; t <= cfg.window.hi; ++t) {
        if (ldim(t)) {
            std::vector<std::string> labels(static_cast<std::size_t>(ldim(t)), "D");
            LC.basis[t] = labels;
        }
        if (rdim(t)) {
            std::vector<std::string> labels(static_cast<std::size_t>(rdim(t)), "F");
            RC.basis[t] = labels;
        }
    }
    for (int t = cfg.window.lo; t < cfg.window.hi; ++t) {
        if (ldim(t)) {
            RationalMatrix d(ldim(t + 1), ldim(t));
            const auto& items = lbasis.at(t);
            for (int j = 0; j < static_cast<int>(items.size()); ++j) {
                auto v = lcoords(t + 1, l_delta(t, items[static_cast<std::size_t>(j)]));
                for (int r = 0; r < ldim(t + 1); ++r)
                    if (!is_zero(v[static_cast<std::size_t>(r)])) d.set(r, j, v[static_cast<std::size_t>(r)]);
            }
            LC.diff[t] = std::move(d);
        }
        if (rdim(t)) {
            RationalMatrix d(rdim(t + 1), rdim(t));
            const auto& items = rbasis.at(t);
            for (int j = 0; j < static_cast<int>(items.size()); ++j) {
                auto v = rcoords(t + 1, r_delta(t, items[static_cast<std::size_t>(j)]));
                for (int r = 0; r < rdim(t + 1); ++r)
                    if (!is_zero(v[static_cast<std::size_t>(r)])) d.set(r, j, v[static_cast<std::size_t>(r)]);
            }
            RC.diff[t] = std::move(d);
        }
    }
    LC.validate();
    RC.validate();

    for (int t = cfg.window.lo; t <= cfg.window.hi; ++t) {
        if (!ldim(t)) continue;
        RationalMatrix m(rdim(t), ldim(t));
        const auto& items = lbasis.at(t);
        for (int j = 0; j < static_cast<int>(items.size()); ++j) {
            const LItem& k = items[static_cast<std::size_t>(j)];
            // psi(D)(m_{k.e.first})(x_{k.a}) = D(x_{k.a}) evaluated at the generator
            std::vector<std::vector<AlgElt>> vals(static_cast<std::size_t>(M.size()),
                                                  std::vector<AlgElt>(static_cast<std::size_t>(A.size())));
            AlgElt u0;
            u0.terms[k.e.second] = Rat(1);
            vals[static_cast<std::size_t>(k.e.first)][static_cast<std::size_t>(k.a)] = u0;
            auto v = rcoords(t, vals);
            for (int r = 0; r < rdim(t); ++r)
                if (!is_zero(v[static_cast<std::size_t>(r)])) m.set(r, j, v[static_cast<std::size_t>(r)]);
        }
        psi[t] = std::move(m);
    }

    DerHomReport rep;
    rep.incomplete.insert(cfg.window.lo);
    rep.incomplete.insert(cfg.window.hi);
    for (int t = cfg.window.lo + 1; t < cfg.window.hi; ++t) {
        rep.lhs_dims[t] = ldim(t);
        rep.rhs_dims[t] = rdim(t);
        if (ldim(t) != rdim(t)) rep.dims_agree = false;
        if (ldim(t)) {
            auto it = psi.find(t);
            int rk = it == psi.end() ? 0 : rank(it->second);
            if (rk != ldim(t) || rk != rdim(t)) rep.map_bijective = false;
        }
    }
    for (int t = cfg.window.lo + 1; t + 1 < cfg.window.hi; ++t) {
        if (!ldim(t)) continue;
        RationalMatrix lhs = (psi.count(t + 1) ? psi.at(t + 1) : RationalMatrix(rdim(t + 1), ldim(t + 1)))
                                 .mul(LC.d(t).rows() ? LC.d(t) : RationalMatrix(ldim(t + 1), ldim(t)));
        RationalMatrix rhs = (RC.d(t).rows() ? RC.d(t) : RationalMatrix(rdim(t + 1), rdim(t)))
                                 .mul(psi.count(t) ? psi.at(t) : RationalMatrix(rdim(t), ldim(t)));
        if (!(lhs == rhs)) rep.chain_map = false;
    }
    return rep;
}

} // namespace shlr
