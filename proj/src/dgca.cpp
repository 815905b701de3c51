#include "shlr/dgca.hpp"

#include <set>

namespace shlr {

SemiFreeDgca::SemiFreeDgca(GradedAlgebra a, std::vector<AlgElt> diffs) : alg(std::move(a)), dgen(std::move(diffs)) {
    if (dgen.size() != alg.gens.size())
        fail(ErrorCode::Argument, "differential values must match generator count");
    for (int i = 0; i < size(); ++i) {
        const auto& g = alg.gens[static_cast<std::size_t>(i)];
        if (g.degree > 0) fail(ErrorCode::Degree, "algebra generator " + g.name + " has positive degree");
        const AlgElt& v = dgen[static_cast<std::size_t>(i)];
        if (v.is_zero()) continue;
        if (alg.degree(v) != g.degree + 1)
            fail(ErrorCode::Degree, "d(" + g.name + ") does not raise degree by 1");
        for (const auto& [m, c] : v.terms)
            for (int f : m.factors)
                if (f >= i)
                    fail(ErrorCode::Argument, "differential of " + g.name + " is not triangular");
    }
    for (int i = 0; i < size(); ++i) {
        if (!d(dgen[static_cast<std::size_t>(i)]).is_zero())
            fail(ErrorCode::InvalidComplex, "d^2 != 0 on generator " + gen(i).name);
    }
}

AlgElt SemiFreeDgca::d(const AlgElt& a) const {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        int prefix_deg = 0;
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            int g = m.factors[i];
            const AlgElt& dg = dgen[static_cast<std::size_t>(g)];
            if (!dg.is_zero()) {
                Monomial prefix{std::vector<int>(m.factors.begin(), m.factors.begin() + static_cast<long>(i))};
                Monomial suffix{std::vector<int>(m.factors.begin() + static_cast<long>(i) + 1, m.factors.end())};
                Rat sign = (prefix_deg & 1) ? -1 : 1;
                AlgElt pre;
                pre.terms[prefix] = c * sign;
                out = out + alg.mul(alg.mul(pre, dg), AlgElt{{{suffix, Rat(1)}}});
            }
            prefix_deg += alg.degree_of_gen(g);
        }
    }
    return out;
}

SemiFreeDgca tensor(const SemiFreeDgca& A, const SemiFreeDgca& B) {
    std::set<std::string> names;
    std::vector<Generator> gens;
    for (const auto& g : A.alg.gens) {
        names.insert(g.name);
        gens.push_back(g);
    }
    for (const auto& g : B.alg.gens) {
        Generator h = g;
        while (names.count(h.name)) h.name += "_2";
        names.insert(h.name);
        gens.push_back(h);
    }
    int off = A.size();
    std::vector<AlgElt> dgen;
    for (const auto& v : A.dgen) dgen.push_back(v);
    for (const auto& v : B.dgen) {
        AlgElt shifted;
        for (const auto& [m, c] : v.terms) {
            Monomial sm = m;
            for (int& f : sm.factors) f += off;
            shifted.terms[sm] = c;
        }
        dgen.push_back(shifted);
    }
    return SemiFreeDgca(GradedAlgebra(std::move(gens)), std::move(dgen));
}

DgcaMorphism::DgcaMorphism(SemiFreeDgca src, SemiFreeDgca tgt, std::vector<AlgElt> img)
    : source(std::move(src)), target(std::move(tgt)), images(std::move(img)) {
    if (images.size() != source.alg.gens.size())
        fail(ErrorCode::Argument, "morphism images must match source generator count");
    for (int i = 0; i < source.size(); ++i) {
        const AlgElt& v = images[static_cast<std::size_t>(i)];
        if (!v.is_zero() && target.alg.degree(v) != source.gen(i).degree)
            fail(ErrorCode::Degree, "morphism does not preserve degree of " + source.gen(i).name);
    }
}

DgcaMorphism DgcaMorphism::identity(const SemiFreeDgca& A) {
    std::vector<AlgElt> img;
    for (int i = 0; i < A.size(); ++i) img.push_back(AlgElt::gen(i));
    return DgcaMorphism(A, A, std::move(img));
}

AlgElt DgcaMorphism::apply(const AlgElt& a) const {
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        AlgElt prod = AlgElt::unit(c);
        for (int f : m.factors) prod = target.alg.mul(prod, images[static_cast<std::size_t>(f)]);
        out = out + prod;
    }
    return out;
}

bool DgcaMorphism::is_chain_map() const {
    for (int i = 0; i < source.size(); ++i) {
        if (!(apply(source.dgen[static_cast<std::size_t>(i)]) ==
              target.d(images[static_cast<std::size_t>(i)])))
            return false;
    }
    return true;
}

DgcaMorphism compose(const DgcaMorphism& g, const DgcaMorphism& f) {
    if (!(f.target == g.source)) fail(ErrorCode::Argument, "compose: middle algebras differ");
    std::vector<AlgElt> img;
    for (const auto& v : f.images) img.push_back(g.apply(v));
    return DgcaMorphism(f.source, g.target, std::move(img));
}

DgcaMorphism tensor_incl_left(const SemiFreeDgca& A, const SemiFreeDgca& B, const SemiFreeDgca& AB) {
    (void)B;
    std::vector<AlgElt> img;
    for (int i = 0; i < A.size(); ++i) img.push_back(AlgElt::gen(i));
    return DgcaMorphism(A, AB, std::move(img));
}

DgcaMorphism tensor_incl_right(const SemiFreeDgca& A, const SemiFreeDgca& B, const SemiFreeDgca& AB) {
    std::vector<AlgElt> img;
    for (int i = 0; i < B.size(); ++i) img.push_back(AlgElt::gen(A.size() + i));
    return DgcaMorphism(B, AB, std::move(img));
}

DgcaMorphism tensor_fold(const SemiFreeDgca& A, const SemiFreeDgca& AB) {
    if (AB.size() != 2 * A.size()) fail(ErrorCode::Argument, "fold: not a square tensor");
    std::vector<AlgElt> img;
    for (int i = 0; i < 2 * A.size(); ++i) img.push_back(AlgElt::gen(i % A.size()));
    return DgcaMorphism(AB, A, std::move(img));
}

AlgDerivation::AlgDerivation(DgcaMorphism f, int degree, std::vector<AlgElt> vals)
    : over(std::move(f)), deg(degree), values(std::move(vals)) {
    if (values.size() != over.source.alg.gens.size())
        fail(ErrorCode::Argument, "derivation values must match source generator count");
    for (int i = 0; i < over.source.size(); ++i) {
        const AlgElt& v = values[static_cast<std::size_t>(i)];
        if (!v.is_zero() && over.target.alg.degree(v) != over.source.gen(i).degree + deg)
            fail(ErrorCode::Degree, "derivation value has wrong degree on " + over.source.gen(i).name);
    }
}

AlgElt AlgDerivation::apply(const AlgElt& a) const {
    const auto& src = over.source.alg;
    const auto& tgt = over.target.alg;
    AlgElt out;
    for (const auto& [m, c] : a.terms) {
        int prefix_deg = 0;
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            int g = m.factors[i];
            const AlgElt& vg = values[static_cast<std::size_t>(g)];
            if (!vg.is_zero()) {
                Monomial prefix{std::vector<int>(m.factors.begin(), m.factors.begin() + static_cast<long>(i))};
                Monomial suffix{std::vector<int>(m.factors.begin() + static_cast<long>(i) + 1, m.factors.end())};
                Rat sign = ((prefix_deg * deg) & 1) ? -1 : 1;
                AlgElt pre = over.apply(AlgElt{{{prefix, Rat(1)}}});
                AlgElt suf = over.apply(AlgElt{{{suffix, Rat(1)}}});
                out = out + (c * sign) * tgt.mul(tgt.mul(pre, vg), suf);
            }
            prefix_deg += src.degree_of_gen(g);
        }
    }
    return out;
}

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rat SplitMix64::small_rat(int max) {
    long num = static_cast<long>(below(static_cast<std::uint64_t>(2 * max + 1))) - max;
    long den = below(2) ? 2 : 1;
    return rat(num, den);
}

LeibnizReport check_leibniz(const AlgDerivation& d, int trials, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto& src = d.over.source;
    const auto& tgt = d.over.target;
    LeibnizReport rep;
    if (src.size() == 0) return rep;
    for (int t = 0; t < trials; ++t) {
        // Random homogeneous monomial pair with small coefficients
        auto rand_elt = [&]() {
            AlgElt e = AlgElt::unit(rng.small_rat());
            int len = static_cast<int>(rng.below(3));
            for (int i = 0; i < len; ++i) {
                int g = static_cast<int>(rng.below(static_cast<std::uint64_t>(src.size())));
                e = src.alg.mul(e, AlgElt::gen(g));
            }
            return e;
        };
        AlgElt x = rand_elt(), y = rand_elt();
        if (x.is_zero() || y.is_zero()) continue;
        AlgElt lhs = d.apply(src.alg.mul(x, y));
        int degx = src.alg.degree(x);
        Rat sign = ((degx * d.deg) & 1) ? -1 : 1;
        AlgElt rhs = tgt.alg.mul(d.apply(x), d.over.apply(y)) +
                     sign * tgt.alg.mul(d.over.apply(x), d.apply(y));
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.witness = "(" + src.alg.print(x) + ")·(" + src.alg.print(y) + ")";
            return rep;
        }
    }
    return rep;
}

} // namespace shlr
