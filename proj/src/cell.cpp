#include "shlr/cell.hpp"

#include <set>
#include <sstream>

namespace shlr {

ModElt ModElt::gen(int index, const Rat& c) {
    ModElt m;
    if (!shlr::is_zero(c)) m.comps[index] = AlgElt::unit(c);
    return m;
}

void ModElt::add_comp(int index, const AlgElt& a) {
    if (a.is_zero()) return;
    auto it = comps.find(index);
    if (it == comps.end()) {
        comps.emplace(index, a);
        return;
    }
    it->second = it->second + a;
    if (it->second.is_zero()) comps.erase(it);
}

ModElt operator+(const ModElt& a, const ModElt& b) {
    ModElt out = a;
    for (const auto& [i, c] : b.comps) out.add_comp(i, c);
    return out;
}

ModElt operator-(const ModElt& a, const ModElt& b) {
    ModElt out = a;
    for (const auto& [i, c] : b.comps) out.add_comp(i, Rat(-1) * c);
    return out;
}

ModElt operator*(const Rat& c, const ModElt& a) {
    ModElt out;
    if (shlr::is_zero(c)) return out;
    for (const auto& [i, v] : a.comps) out.comps[i] = c * v;
    return out;
}

ModElt FreeDgModule::scale(const AlgElt& a, const ModElt& m) const {
    ModElt out;
    for (const auto& [i, c] : m.comps) out.add_comp(i, base.alg.mul(a, c));
    return out;
}

ModElt FreeDgModule::d(const ModElt& m) const {
    ModElt out;
    for (const auto& [i, coeff] : m.comps) {
        // Split into homogeneous pieces for the Leibniz sign.
        std::map<int, AlgElt> pieces;
        for (const auto& [mono, c] : coeff.terms) pieces[base.alg.monomial_degree(mono)].add_term(mono, c);
        for (const auto& [dga, a] : pieces) {
            out.add_comp(i, base.d(a));
            Rat sign = (dga & 1) ? -1 : 1;
            for (const auto& [j, cj] : dgen[static_cast<std::size_t>(i)].comps)
                out.add_comp(j, sign * base.alg.mul(a, cj));
        }
    }
    return out;
}

int FreeDgModule::degree(const ModElt& m) const {
    if (m.is_zero()) fail(ErrorCode::Argument, "degree of zero module element is undefined");
    int deg = 0;
    bool first = true;
    for (const auto& [i, c] : m.comps) {
        int di = base.alg.degree(c) + gens[static_cast<std::size_t>(i)].degree;
        if (first) deg = di;
        else if (deg != di) fail(ErrorCode::Argument, "module element is not homogeneous");
        first = false;
    }
    return deg;
}

std::string FreeDgModule::print(const ModElt& m) const {
    if (m.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : m.comps) {
        if (!first) os << " + ";
        os << "(" << base.alg.print(c) << ")·" << gens[static_cast<std::size_t>(i)].name;
        first = false;
    }
    return os.str();
}

namespace {

void validate_cell(const FreeDgModule& M, bool rising) {
    if (M.dgen.size() != M.gens.size())
        fail(ErrorCode::Argument, "module differential values must match generator count");
    std::set<std::string> names;
    for (const auto& g : M.gens)
        if (!names.insert(g.name).second) fail(ErrorCode::Name, "duplicate module generator " + g.name);
    for (int i = 0; i < M.size(); ++i) {
        for (const auto& [j, c] : M.dgen[static_cast<std::size_t>(i)].comps) {
            if (j < 0 || j >= M.size())
                fail(ErrorCode::Argument, "module differential mentions unknown generator index");
            if (!rising && j >= i)
                fail(ErrorCode::Argument, "lowering condition violated at " + M.gen(i).name);
            if (rising && j <= i)
                fail(ErrorCode::Argument, "rising condition violated at " + M.gen(i).name);
            if (M.base.alg.degree(c) != M.gen(i).degree + 1 - M.gen(j).degree)
                fail(ErrorCode::Degree, "module differential of " + M.gen(i).name + " has wrong degree");
        }
    }
    for (int i = 0; i < M.size(); ++i)
        if (!M.d(M.dgen[static_cast<std::size_t>(i)]).is_zero())
            fail(ErrorCode::InvalidComplex, "module d^2 != 0 on " + M.gen(i).name);
}

} // namespace

CellModule::CellModule(SemiFreeDgca b, std::vector<Generator> g, std::vector<ModElt> d) {
    base = std::move(b);
    gens = std::move(g);
    dgen = std::move(d);
    validate_cell(*this, false);
}

DualCellModule::DualCellModule(SemiFreeDgca b, std::vector<Generator> g, std::vector<ModElt> d) {
    base = std::move(b);
    gens = std::move(g);
    dgen = std::move(d);
    validate_cell(*this, true);
}

DualCellModule dualize_cell(const CellModule& M) {
    std::vector<Generator> dual_gens;
    for (const auto& g : M.gens) dual_gens.push_back({g.name + "*", -g.degree});
    std::vector<ModElt> dd(static_cast<std::size_t>(M.size()));
    // (d m_j^*)(m_i) = -(-1)^{|m_j^*|} (-1)^{|m_j^*||a|} a, for d m_i = ... + a·m_j + ...
    for (int i = 0; i < M.size(); ++i) {
        for (const auto& [j, a] : M.dgen[static_cast<std::size_t>(i)].comps) {
            int dual_deg = -M.gens[static_cast<std::size_t>(j)].degree;
            int adeg = M.base.alg.degree(a);
            Rat sign = ((dual_deg * (1 + adeg)) & 1) ? 1 : -1;
            dd[static_cast<std::size_t>(j)].add_comp(i, sign * a);
        }
    }
    return DualCellModule(M.base, std::move(dual_gens), std::move(dd));
}

CellModule primal_of(const DualCellModule& D) {
    std::vector<Generator> gens;
    for (const auto& g : D.gens) {
        std::string n = g.name;
        if (!n.empty() && n.back() == '*') n.pop_back();
        gens.push_back({n, -g.degree});
    }
    std::vector<ModElt> dp(static_cast<std::size_t>(D.size()));
    for (int j = 0; j < D.size(); ++j) {
        int dual_deg = D.gens[static_cast<std::size_t>(j)].degree;
        for (const auto& [i, c] : D.dgen[static_cast<std::size_t>(j)].comps) {
            int cdeg = D.base.alg.degree(c);
            Rat sign = ((dual_deg * (1 + cdeg)) & 1) ? 1 : -1;
            dp[static_cast<std::size_t>(i)].add_comp(j, sign * c);
        }
    }
    return CellModule(D.base, std::move(gens), std::move(dp));
}

CellModule base_change(const DgcaMorphism& f, const CellModule& M) {
    if (!(f.source == M.base)) fail(ErrorCode::Argument, "base_change: module not over the source algebra");
    std::vector<ModElt> dgen;
    for (const auto& v : M.dgen) {
        ModElt w;
        for (const auto& [j, c] : v.comps) w.add_comp(j, f.apply(c));
        dgen.push_back(std::move(w));
    }
    return CellModule(f.target, M.gens, std::move(dgen));
}

FreeModMap::FreeModMap(FreeDgModule src, FreeDgModule tgt, DgcaMorphism f0, std::vector<ModElt> img)
    : source(std::move(src)), target(std::move(tgt)), basemap(std::move(f0)), images(std::move(img)) {
    if (!(basemap.source == source.base) || !(basemap.target == target.base))
        fail(ErrorCode::Argument, "module map base morphism does not match module bases");
    if (images.size() != source.gens.size())
        fail(ErrorCode::Argument, "module map images must match generator count");
    for (int i = 0; i < source.size(); ++i) {
        const ModElt& v = images[static_cast<std::size_t>(i)];
        if (!v.is_zero() && target.degree(v) != source.gen(i).degree)
            fail(ErrorCode::Degree, "module map does not preserve degree of " + source.gen(i).name);
    }
}

FreeModMap FreeModMap::identity(const FreeDgModule& M) {
    std::vector<ModElt> img;
    for (int i = 0; i < M.size(); ++i) img.push_back(ModElt::gen(i));
    return FreeModMap(M, M, DgcaMorphism::identity(M.base), std::move(img));
}

ModElt FreeModMap::apply(const ModElt& m) const {
    ModElt out;
    for (const auto& [i, c] : m.comps)
        out = out + target.scale(basemap.apply(c), images[static_cast<std::size_t>(i)]);
    return out;
}

bool FreeModMap::is_chain_map() const {
    for (int i = 0; i < source.size(); ++i)
        if (!(apply(source.dgen[static_cast<std::size_t>(i)]) == target.d(images[static_cast<std::size_t>(i)])))
            return false;
    return true;
}

ModDerivation::ModDerivation(FreeModMap f, int degree, std::vector<ModElt> vals)
    : over(std::move(f)), deg(degree), values(std::move(vals)) {
    if (values.size() != over.source.gens.size())
        fail(ErrorCode::Argument, "module derivation values must match generator count");
}

ModElt ModDerivation::apply(const ModElt& m) const {
    ModElt out;
    for (const auto& [i, coeff] : m.comps) {
        std::map<int, AlgElt> pieces;
        for (const auto& [mono, c] : coeff.terms)
            pieces[over.source.base.alg.monomial_degree(mono)].add_term(mono, c);
        for (const auto& [dga, a] : pieces) {
            AlgElt fa = over.basemap.apply(a);
            out = out + over.target.scale(over.target.base.d(fa), over.images[static_cast<std::size_t>(i)]);
            Rat sign = ((dga * deg) & 1) ? -1 : 1;
            out = out + over.target.scale(sign * fa, values[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

ModLeibnizReport check_leibniz(const ModDerivation& d, int trials, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto& src = d.over.source;
    const auto& tgt = d.over.target;
    ModLeibnizReport rep;
    if (src.size() == 0) return rep;
    for (int t = 0; t < trials; ++t) {
        AlgElt a = AlgElt::unit(rng.small_rat());
        int len = static_cast<int>(rng.below(3));
        for (int i = 0; i < len && src.base.size() > 0; ++i)
            a = src.base.alg.mul(a, AlgElt::gen(static_cast<int>(rng.below(static_cast<std::uint64_t>(src.base.size())))));
        if (a.is_zero()) continue;
        int gi = static_cast<int>(rng.below(static_cast<std::uint64_t>(src.size())));
        ModElt m = ModElt::gen(gi);
        ModElt lhs = d.apply(src.scale(a, m));
        int dega = src.base.alg.degree(a);
        Rat sign = ((dega * d.deg) & 1) ? -1 : 1;
        ModElt rhs = tgt.scale(tgt.base.d(d.over.basemap.apply(a)), d.over.apply(m)) +
                     tgt.scale(sign * d.over.basemap.apply(a), d.apply(m));
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.witness = "(" + src.base.alg.print(a) + ")·" + src.gens[static_cast<std::size_t>(gi)].name;
            return rep;
        }
    }
    return rep;
}

} // namespace shlr
