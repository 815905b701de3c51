#include "shlr/gca.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace shlr {

AlgElt AlgElt::unit(const Rat& c) {
    AlgElt e;
    if (!shlr::is_zero(c)) e.terms[Monomial{}] = c;
    return e;
}

AlgElt AlgElt::gen(int index, const Rat& c) {
    AlgElt e;
    if (!shlr::is_zero(c)) e.terms[Monomial{{index}}] = c;
    return e;
}

void AlgElt::add_term(const Monomial& m, const Rat& c) {
    if (shlr::is_zero(c)) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (shlr::is_zero(it->second)) terms.erase(it);
}

AlgElt operator+(const AlgElt& a, const AlgElt& b) {
    AlgElt out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, c);
    return out;
}

AlgElt operator-(const AlgElt& a, const AlgElt& b) {
    AlgElt out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, -c);
    return out;
}

AlgElt operator*(const Rat& c, const AlgElt& a) {
    AlgElt out;
    if (shlr::is_zero(c)) return out;
    for (const auto& [m, v] : a.terms) out.terms[m] = c * v;
    return out;
}

AlgElt operator-(const AlgElt& a) { return Rat(-1) * a; }

GradedAlgebra::GradedAlgebra(std::vector<Generator> g) : gens(std::move(g)) {
    std::set<std::string> names;
    for (const auto& gen : gens)
        if (!names.insert(gen.name).second)
            fail(ErrorCode::Name, "duplicate generator name: " + gen.name);
}

int GradedAlgebra::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (gens[static_cast<std::size_t>(i)].name == name) return i;
    return -1;
}

int GradedAlgebra::monomial_degree(const Monomial& m) const {
    int d = 0;
    for (int f : m.factors) d += degree_of_gen(f);
    return d;
}

AlgElt GradedAlgebra::mul_monomials(const Monomial& a, const Monomial& b) const {
    // Merge the sorted factor lists; each transposition of an a-factor past a
    // b-factor of smaller index contributes its Koszul sign.
    int sign = 1;
    for (int fa : a.factors) {
        if (!(degree_of_gen(fa) & 1)) continue;
        for (int fb : b.factors) {
            if (fb < fa && (degree_of_gen(fb) & 1)) sign = -sign;
        }
    }
    Monomial out;
    out.factors.resize(a.factors.size() + b.factors.size());
    std::merge(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(), out.factors.begin());
    for (std::size_t i = 0; i + 1 < out.factors.size(); ++i) {
        if (out.factors[i] == out.factors[i + 1] && (degree_of_gen(out.factors[i]) & 1))
            return AlgElt::zero();
    }
    AlgElt e;
    e.terms[out] = sign;
    return e;
}

AlgElt GradedAlgebra::mul(const AlgElt& a, const AlgElt& b) const {
    AlgElt out;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            AlgElt prod = mul_monomials(ma, mb);
            for (const auto& [m, s] : prod.terms) out.add_term(m, ca * cb * s);
        }
    }
    return out;
}

AlgElt GradedAlgebra::homogeneous_part(const AlgElt& a, int degree) const {
    AlgElt out;
    for (const auto& [m, c] : a.terms)
        if (monomial_degree(m) == degree) out.terms[m] = c;
    return out;
}

int GradedAlgebra::degree(const AlgElt& a) const {
    if (a.is_zero()) fail(ErrorCode::Argument, "degree of zero element is undefined");
    int d = monomial_degree(a.terms.begin()->first);
    for (const auto& [m, c] : a.terms)
        if (monomial_degree(m) != d) fail(ErrorCode::Argument, "element is not homogeneous");
    return d;
}

std::string GradedAlgebra::print_monomial(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < m.factors.size()) {
        std::size_t j = i;
        while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
        if (!first) os << "\u00b7";
        os << gens[static_cast<std::size_t>(m.factors[i])].name;
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

std::string GradedAlgebra::print(const AlgElt& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        Rat v = c;
        if (first) {
            if (sgn(v) < 0) {
                os << "-";
                v = -v;
            }
        } else {
            os << (sgn(v) < 0 ? " - " : " + ");
            if (sgn(v) < 0) v = -v;
        }
        if (m.is_unit()) {
            os << rat_str(v);
        } else {
            if (v != 1) os << rat_str(v) << "*";
            os << print_monomial(m);
        }
        first = false;
    }
    return os.str();
}

std::vector<Monomial> GradedAlgebra::monomials_of_degree(int degree, int length_cap) const {
    bool all_nonpos = true;
    for (const auto& g : gens)
        if (g.degree > 0) all_nonpos = false;
    std::vector<Monomial> out;
    std::vector<int> current;
    // Depth-first over nondecreasing factor sequences.
    auto rec = [&](auto&& self, int min_gen, int deg_so_far) -> void {
        if (deg_so_far == degree) out.push_back(Monomial{current});
        if (static_cast<int>(current.size()) >= length_cap) return;
        for (int g = min_gen; g < size(); ++g) {
            int dg = degree_of_gen(g);
            if ((dg & 1) && !current.empty() && current.back() == g) continue;
            // With only nonpositive generators an overshoot cannot recover.
            if (all_nonpos && deg_so_far + dg < degree) continue;
            current.push_back(g);
            self(self, g, deg_so_far + dg);
            current.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace shlr
