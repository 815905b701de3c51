#include "shlr/fat.hpp"

#include <set>

namespace shlr {

namespace {

GradedAlgebra combine(const SemiFreeDgca& base, const std::vector<Generator>& duals) {
    std::vector<Generator> gens = base.alg.gens;
    gens.insert(gens.end(), duals.begin(), duals.end());
    return GradedAlgebra(std::move(gens));
}

} // namespace

FatCdga::FatCdga(SemiFreeDgca b, std::vector<Generator> duals, int cutoff,
                 std::vector<std::vector<AlgElt>> d_base, std::vector<std::vector<AlgElt>> d_dual,
                 std::optional<CellModule> primal_module)
    : base(std::move(b)), dual_gens(std::move(duals)), W(cutoff), dbase(std::move(d_base)),
      ddual(std::move(d_dual)), primal(std::move(primal_module)), total(combine(base, dual_gens)) {
    if (W < 0) fail(ErrorCode::Argument, "weight cutoff must be nonnegative");
    if (static_cast<int>(dbase.size()) != W + 1 || static_cast<int>(ddual.size()) != W + 1)
        fail(ErrorCode::Argument, "differential components must be given for weights 0..W");
    for (int n = 0; n <= W; ++n) {
        if (static_cast<int>(dbase[static_cast<std::size_t>(n)].size()) != n_base() ||
            static_cast<int>(ddual[static_cast<std::size_t>(n)].size()) != n_dual())
            fail(ErrorCode::Argument, "differential component has wrong generator count");
        for (int i = 0; i < n_base(); ++i) {
            const AlgElt& v = dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            if (v.is_zero()) continue;
            if (total.degree(v) != base.gen(i).degree + 1)
                fail(ErrorCode::Degree, "d^" + std::to_string(n) + " has wrong degree on base generator");
            for (const auto& [m, c] : v.terms)
                if (weight(m) != n)
                    fail(ErrorCode::Argument, "d^" + std::to_string(n) + " does not raise weight by " + std::to_string(n));
        }
        for (int i = 0; i < n_dual(); ++i) {
            const AlgElt& v = ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            if (v.is_zero()) continue;
            if (total.degree(v) != dual_gens[static_cast<std::size_t>(i)].degree + 1)
                fail(ErrorCode::Degree, "d^" + std::to_string(n) + " has wrong degree on dual generator");
            for (const auto& [m, c] : v.terms)
                if (weight(m) != n + 1)
                    fail(ErrorCode::Argument, "d^" + std::to_string(n) + " does not raise weight by " + std::to_string(n));
        }
    }
    // pi intertwines d with the base differential iff d^0 restricts to it.
    for (int i = 0; i < n_base(); ++i)
        if (!(dbase[0][static_cast<std::size_t>(i)] == embed_base(base.dgen[static_cast<std::size_t>(i)])))
            fail(ErrorCode::Argument, "weight-0 component on the base must equal the base differential");
    if (primal) {
        if (!(primal->base == base) || primal->size() != n_dual())
            fail(ErrorCode::Argument, "primal cell module does not match the fat cdga");
    }
}

FatCdga FatCdga::initial(int cutoff) {
    std::vector<std::vector<AlgElt>> db(static_cast<std::size_t>(cutoff) + 1);
    return FatCdga(SemiFreeDgca::field(), {}, cutoff, db, db);
}

int FatCdga::weight(const Monomial& m) const {
    int w = 0;
    for (int f : m.factors)
        if (f >= n_base()) ++w;
    return w;
}

AlgElt FatCdga::truncate(const AlgElt& a) const {
    // The stage is taken at symmetric weight W+1 so that dual generators and
    // the values of d^W on them stay representable; all checks are reported
    // "through weight W".
    AlgElt out;
    for (const auto& [m, c] : a.terms)
        if (weight(m) <= W + 1) out.terms.emplace(m, c);
    return out;
}

AlgElt FatCdga::weight_part(const AlgElt& a, int w) const {
    AlgElt out;
    for (const auto& [m, c] : a.terms)
        if (weight(m) == w) out.terms.emplace(m, c);
    return out;
}

AlgElt FatCdga::mul(const AlgElt& a, const AlgElt& b) const { return truncate(total.mul(a, b)); }

AlgElt FatCdga::embed_base(const AlgElt& a) const {
    // Base generators keep their indices in the combined algebra.
    return a;
}

AlgElt FatCdga::project_base(const AlgElt& a) const { return weight_part(a, 0); }

AlgElt FatCdga::apply_values(const std::vector<AlgElt>& on_base, const std::vector<AlgElt>& on_dual,
                             const AlgElt& a) const {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        int prefix_deg = 0;
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            int g = m.factors[i];
            const AlgElt& vg = g < n_base() ? on_base[static_cast<std::size_t>(g)]
                                            : on_dual[static_cast<std::size_t>(g - n_base())];
            if (!vg.is_zero()) {
                Monomial prefix{std::vector<int>(m.factors.begin(), m.factors.begin() + static_cast<long>(i))};
                Monomial suffix{std::vector<int>(m.factors.begin() + static_cast<long>(i) + 1, m.factors.end())};
                Rat sign = (prefix_deg & 1) ? -1 : 1;
                AlgElt pre;
                pre.terms[prefix] = c * sign;
                out = out + total.mul(total.mul(pre, vg), AlgElt{{{suffix, Rat(1)}}});
            }
            prefix_deg += total.degree_of_gen(g);
        }
    }
    return truncate(out);
}

AlgElt FatCdga::apply_component(int n, const AlgElt& a) const {
    if (n < 0 || n > W) fail(ErrorCode::Argument, "differential component out of range");
    return apply_values(dbase[static_cast<std::size_t>(n)], ddual[static_cast<std::size_t>(n)], a);
}

AlgElt FatCdga::d(const AlgElt& a) const {
    AlgElt out;
    for (int n = 0; n <= W; ++n) out = out + apply_component(n, a);
    return truncate(out);
}

ModElt FatCdga::to_dual_module_elt(const AlgElt& a) const {
    ModElt out;
    for (const auto& [m, c] : a.terms) {
        if (weight(m) != 1) fail(ErrorCode::Argument, "element is not of weight 1");
        std::vector<int> base_part;
        int dual = -1;
        for (int f : m.factors) {
            if (f < n_base()) base_part.push_back(f);
            else dual = f - n_base();
        }
        // Monomials sort all base factors before the dual factor, so the
        // coefficient is already on the left and no sign is picked up.
        AlgElt coeff;
        coeff.terms[Monomial{base_part}] = c;
        out.add_comp(dual, coeff);
    }
    return out;
}

AlgElt FatCdga::from_dual_module_elt(const ModElt& m) const {
    AlgElt out;
    for (const auto& [i, coeff] : m.comps)
        out = out + total.mul(coeff, AlgElt::gen(dual_index(i)));
    return out;
}

bool FatCdga::operator==(const FatCdga& o) const {
    return base == o.base && dual_gens == o.dual_gens && W == o.W && dbase == o.dbase &&
           ddual == o.ddual;
}

SquareZeroReport square_zero_check(const FatCdga& X) {
    SquareZeroReport rep;
    for (int k = 0; k <= X.W; ++k) {
        auto defect = [&](const AlgElt& gen_elt) {
            AlgElt sum;
            for (int i = 0; i <= k; ++i) {
                int j = k - i;
                sum = sum + X.apply_component(i, X.apply_component(j, gen_elt));
            }
            return sum;
        };
        for (int g = 0; g < X.n_base(); ++g) {
            AlgElt def = defect(AlgElt::gen(g));
            if (!def.is_zero()) {
                rep.pass = false;
                rep.weight = k;
                rep.generator = X.base.gen(g).name;
                rep.witness = X.print(def);
                return rep;
            }
        }
        for (int g = 0; g < X.n_dual(); ++g) {
            AlgElt def = defect(AlgElt::gen(X.dual_index(g)));
            if (!def.is_zero()) {
                rep.pass = false;
                rep.weight = k;
                rep.generator = X.dual_gens[static_cast<std::size_t>(g)].name;
                rep.witness = X.print(def);
                return rep;
            }
        }
    }
    return rep;
}

DualCellModule linear_part_of_differential(const FatCdga& X) {
    std::vector<ModElt> dgen;
    for (int i = 0; i < X.n_dual(); ++i)
        dgen.push_back(X.to_dual_module_elt(X.ddual[0][static_cast<std::size_t>(i)]));
    return DualCellModule(X.base, X.dual_gens, std::move(dgen));
}

FatMorphism::FatMorphism(FatCdga src, FatCdga tgt, DgcaMorphism f0, std::vector<std::vector<AlgElt>> g)
    : source(std::move(src)), target(std::move(tgt)), base_map(std::move(f0)), gdual(std::move(g)) {
    if (source.W != target.W) fail(ErrorCode::Argument, "fat morphism across different weight cutoffs");
    if (!(base_map.source == source.base) || !(base_map.target == target.base))
        fail(ErrorCode::Argument, "fat morphism base map does not match");
    if (static_cast<int>(gdual.size()) != source.W + 1)
        fail(ErrorCode::Argument, "fat morphism needs weight components 0..W");
    for (int n = 0; n <= source.W; ++n) {
        if (static_cast<int>(gdual[static_cast<std::size_t>(n)].size()) != source.n_dual())
            fail(ErrorCode::Argument, "fat morphism component has wrong generator count");
        for (int i = 0; i < source.n_dual(); ++i) {
            const AlgElt& v = gdual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            if (v.is_zero()) continue;
            if (target.total.degree(v) != source.dual_gens[static_cast<std::size_t>(i)].degree)
                fail(ErrorCode::Degree, "fat morphism does not preserve degree of a dual generator");
            for (const auto& [m, c] : v.terms)
                if (target.weight(m) != n + 1)
                    fail(ErrorCode::Argument, "fat morphism component " + std::to_string(n) + " has wrong weight");
        }
    }
}

FatMorphism FatMorphism::identity(const FatCdga& X) {
    std::vector<std::vector<AlgElt>> g(static_cast<std::size_t>(X.W) + 1,
                                       std::vector<AlgElt>(static_cast<std::size_t>(X.n_dual())));
    for (int i = 0; i < X.n_dual(); ++i) g[0][static_cast<std::size_t>(i)] = AlgElt::gen(X.dual_index(i));
    return FatMorphism(X, X, DgcaMorphism::identity(X.base), std::move(g));
}

AlgElt FatMorphism::apply_dual_gen(int i) const {
    AlgElt out;
    for (int n = 0; n <= source.W; ++n)
        out = out + gdual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    return out;
}

AlgElt FatMorphism::apply(const AlgElt& a) const {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        AlgElt prod = AlgElt::unit(c);
        for (int f : m.factors) {
            AlgElt fv = f < source.n_base() ? base_map.apply(AlgElt::gen(f)) // base indices embed as-is
                                            : apply_dual_gen(f - source.n_base());
            prod = target.mul(prod, fv);
        }
        out = out + prod;
    }
    return target.truncate(out);
}

bool FatMorphism::operator==(const FatMorphism& o) const {
    return source == o.source && target == o.target && base_map == o.base_map && gdual == o.gdual;
}

FatMorphismReport check_fat_morphism(const FatMorphism& g) {
    FatMorphismReport rep;
    // Projection compatibility is structural; intertwining is checked on every
    // generator: g(d x) = d(g x).
    const FatCdga& S = g.source;
    const FatCdga& T = g.target;
    for (int i = 0; i < S.n_base(); ++i) {
        AlgElt lhs = g.apply(S.d(AlgElt::gen(i)));
        AlgElt rhs = T.d(g.apply(AlgElt::gen(i)));
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.generator = S.base.gen(i).name;
            rep.witness = T.print(lhs - rhs);
            return rep;
        }
    }
    for (int i = 0; i < S.n_dual(); ++i) {
        AlgElt lhs = g.apply(S.d(AlgElt::gen(S.dual_index(i))));
        AlgElt rhs = T.d(g.apply(AlgElt::gen(S.dual_index(i))));
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.generator = S.dual_gens[static_cast<std::size_t>(i)].name;
            rep.witness = T.print(lhs - rhs);
            return rep;
        }
    }
    return rep;
}

FatMorphism compose_fat_morphisms(const FatMorphism& g, const FatMorphism& h) {
    if (!(h.target == g.source)) fail(ErrorCode::Argument, "fat morphism composition base mismatch");
    std::vector<std::vector<AlgElt>> comp(static_cast<std::size_t>(h.source.W) + 1,
                                          std::vector<AlgElt>(static_cast<std::size_t>(h.source.n_dual())));
    for (int i = 0; i < h.source.n_dual(); ++i) {
        AlgElt img = g.apply(h.apply_dual_gen(i));
        for (const auto& [m, c] : img.terms) {
            int w = g.target.weight(m);
            if (w < 1 || w > h.source.W + 1) continue;
            comp[static_cast<std::size_t>(w - 1)][static_cast<std::size_t>(i)].add_term(m, c);
        }
    }
    return FatMorphism(h.source, g.target, compose(g.base_map, h.base_map), std::move(comp));
}

DualCellModule base_change_dual(const DgcaMorphism& f, const DualCellModule& D) {
    if (!(f.source == D.base)) fail(ErrorCode::Argument, "base_change_dual: module not over the source algebra");
    std::vector<ModElt> dgen;
    for (const auto& v : D.dgen) {
        ModElt w;
        for (const auto& [j, c] : v.comps) w.add_comp(j, f.apply(c));
        dgen.push_back(std::move(w));
    }
    return DualCellModule(f.target, D.gens, std::move(dgen));
}

LinearPart linear_part_of_morphism(const FatMorphism& g) {
    DualCellModule src_lin = linear_part_of_differential(g.source);
    DualCellModule tgt_lin = linear_part_of_differential(g.target);
    DualCellModule src_over_tgt = base_change_dual(g.base_map, src_lin);
    std::vector<ModElt> images;
    for (int i = 0; i < g.source.n_dual(); ++i)
        images.push_back(g.target.to_dual_module_elt(g.gdual[0][static_cast<std::size_t>(i)]));
    FreeModMap map(src_over_tgt, tgt_lin, DgcaMorphism::identity(g.target.base), std::move(images));
    LinearPart lp{map, true};
    for (int i = 0; i < g.source.n_dual(); ++i) {
        ModElt lhs = map.apply(src_over_tgt.dgen[static_cast<std::size_t>(i)]);
        ModElt rhs = tgt_lin.d(map.images[static_cast<std::size_t>(i)]);
        if (!(lhs == rhs)) lp.commutes_with_d0 = false;
    }
    return lp;
}

} // namespace shlr
