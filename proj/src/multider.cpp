#include "shlr/multider.hpp"
#include "shlr/sign.hpp"

#include <algorithm>

namespace shlr {

namespace {

int word_degree(const CellModule& M, const Word& w) {
    int d = 0;
    for (int g : w) d += M.gens[static_cast<std::size_t>(g)].degree;
    return d;
}

// Sort a word of generator indices, accumulating the Koszul sign of the
// adjacent transpositions (module generator degrees).
std::pair<Word, int> sort_word(const CellModule& M, Word w) {
    int sign = 1;
    for (std::size_t pass = 0; pass + 1 < w.size(); ++pass) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > w[i + 1]) {
                int du = M.gens[static_cast<std::size_t>(w[i])].degree;
                int dv = M.gens[static_cast<std::size_t>(w[i + 1])].degree;
                if ((du & 1) && (dv & 1)) sign = -sign;
                std::swap(w[i], w[i + 1]);
            }
        }
    }
    return {std::move(w), sign};
}

bool word_valid(const CellModule& M, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1] && (M.gens[static_cast<std::size_t>(w[i])].degree & 1)) return false;
    return true;
}

// One slot of a symmetric argument list: (rational · coefficient monomial) · generator.
struct Slot {
    Rat c;
    Monomial mono;
    int gen;
};

int slot_degree(const CellModule& M, const Slot& s) {
    return M.base.alg.monomial_degree(s.mono) + M.gens[static_cast<std::size_t>(s.gen)].degree;
}

} // namespace

Multiderivation::Multiderivation(int l, CellModule m, std::map<Word, ModElt> br,
                                 std::map<Word, std::vector<AlgElt>> an)
    : weight(l), module(std::move(m)), bracket(std::move(br)), anchor(std::move(an)) {
    if (l < 0) fail(ErrorCode::Argument, "multiderivation weight must be nonnegative");
    for (const auto& [w, v] : bracket) {
        if (static_cast<int>(w.size()) != l + 1)
            fail(ErrorCode::Argument, "bracket word has wrong length");
        if (!std::is_sorted(w.begin(), w.end()) || !word_valid(module, w))
            fail(ErrorCode::Argument, "bracket word is not a sorted admissible word");
        if (!v.is_zero() && module.degree(v) != word_degree(module, w) + 1)
            fail(ErrorCode::Degree, "bracket value has wrong degree");
    }
    for (const auto& [w, vals] : anchor) {
        if (static_cast<int>(w.size()) != l) fail(ErrorCode::Argument, "anchor word has wrong length");
        if (!std::is_sorted(w.begin(), w.end()) || !word_valid(module, w))
            fail(ErrorCode::Argument, "anchor word is not a sorted admissible word");
        if (static_cast<int>(vals.size()) != module.base.size())
            fail(ErrorCode::Argument, "anchor value must give one element per base generator");
        for (int g = 0; g < module.base.size(); ++g) {
            const AlgElt& v = vals[static_cast<std::size_t>(g)];
            if (!v.is_zero() &&
                module.base.alg.degree(v) != word_degree(module, w) + 1 + module.base.gen(g).degree)
                fail(ErrorCode::Degree, "anchor value has wrong degree");
        }
    }
}

Multiderivation Multiderivation::zero(int l, const CellModule& m) {
    return Multiderivation(l, m, {}, {});
}

Multiderivation Multiderivation::weight0(const CellModule& m) {
    std::map<Word, ModElt> br;
    for (int i = 0; i < m.size(); ++i) br[{i}] = m.dgen[static_cast<std::size_t>(i)];
    std::map<Word, std::vector<AlgElt>> an;
    an[{}] = m.base.dgen;
    return Multiderivation(0, m, std::move(br), std::move(an));
}

bool Multiderivation::is_zero() const {
    for (const auto& [w, v] : bracket)
        if (!v.is_zero()) return false;
    for (const auto& [w, vals] : anchor)
        for (const auto& v : vals)
            if (!v.is_zero()) return false;
    return true;
}

ModElt Multiderivation::bracket_on(const Word& w) const {
    auto it = bracket.find(w);
    return it == bracket.end() ? ModElt{} : it->second;
}

std::vector<AlgElt> Multiderivation::anchor_on(const Word& w) const {
    auto it = anchor.find(w);
    if (it != anchor.end()) return it->second;
    return std::vector<AlgElt>(static_cast<std::size_t>(module.base.size()));
}

namespace {

std::vector<AlgElt> eval_anchor_term(const Multiderivation& X, std::vector<Slot> slots);

ModElt eval_bracket_term(const Multiderivation& X, std::vector<Slot> slots) {
    const CellModule& M = X.module;
    // last slot carrying an algebra coefficient
    int j = -1;
    for (int r = static_cast<int>(slots.size()) - 1; r >= 0; --r) {
        if (!slots[static_cast<std::size_t>(r)].mono.is_unit()) {
            j = r;
            break;
        }
    }
    if (j < 0) {
        Rat c = 1;
        Word w;
        for (const auto& s : slots) {
            c *= s.c;
            w.push_back(s.gen);
        }
        auto [sorted, sign] = sort_word(M, std::move(w));
        if (!word_valid(M, sorted)) return ModElt{};
        return (c * sign) * X.bracket_on(sorted);
    }
    // Move slot j past the pure slots to its right, then apply the defining law
    // X(v_1 ⊙ ... ⊙ v_l ⊙ a·m) = σ(v_1 ⊙ ... ⊙ v_l)(a)·m
    //                            + (-1)^{|a|(1+Σ|v_i|)} a·X(v_1 ⊙ ... ⊙ v_l ⊙ m).
    Slot s = slots[static_cast<std::size_t>(j)];
    int da = M.base.alg.monomial_degree(s.mono);
    int cross = 0;
    for (int r = j + 1; r < static_cast<int>(slots.size()); ++r)
        cross += slot_degree(M, slots[static_cast<std::size_t>(r)]);
    int move_exp = (da + M.gens[static_cast<std::size_t>(s.gen)].degree) * cross;
    slots.erase(slots.begin() + j);
    int rest_deg = 0;
    for (const auto& r : slots) rest_deg += slot_degree(M, r);
    Rat sign_move = (move_exp & 1) ? -1 : 1;

    AlgElt a;
    a.terms[s.mono] = s.c;

    // anchor term
    ModElt out;
    std::vector<AlgElt> sigma = eval_anchor_term(X, slots);
    AlgDerivation der(DgcaMorphism::identity(M.base), rest_deg + 1, sigma);
    AlgElt sa = der.apply(a);
    if (!sa.is_zero()) out.add_comp(s.gen, sign_move * sa);

    // recursion term
    slots.push_back(Slot{Rat(1), Monomial{}, s.gen});
    int law_exp = da * (1 + rest_deg);
    Rat sign_law = (law_exp & 1) ? -1 : 1;
    ModElt rec = eval_bracket_term(X, std::move(slots));
    out = out + M.scale((sign_move * sign_law) * a, rec);
    return out;
}

std::vector<AlgElt> eval_anchor_term(const Multiderivation& X, std::vector<Slot> slots) {
    const CellModule& M = X.module;
    int nb = M.base.size();
    // leftmost slot carrying an algebra coefficient; slots before it are pure
    int j = -1;
    for (int r = 0; r < static_cast<int>(slots.size()); ++r) {
        if (!slots[static_cast<std::size_t>(r)].mono.is_unit()) {
            j = r;
            break;
        }
    }
    if (j < 0) {
        Rat c = 1;
        Word w;
        for (const auto& s : slots) {
            c *= s.c;
            w.push_back(s.gen);
        }
        auto [sorted, sign] = sort_word(M, std::move(w));
        std::vector<AlgElt> out(static_cast<std::size_t>(nb));
        if (!word_valid(M, sorted)) return out;
        auto vals = X.anchor_on(sorted);
        for (int g = 0; g < nb; ++g) out[static_cast<std::size_t>(g)] = (c * sign) * vals[static_cast<std::size_t>(g)];
        return out;
    }
    // σ(m_1 ⊙ ... ⊙ a·m_j ⊙ ...) = (-1)^{|a|(1+Σ_{i<j}|m_i|)} a·σ(m_1 ⊙ ... ⊙ m_j ⊙ ...)
    Slot s = slots[static_cast<std::size_t>(j)];
    int da = M.base.alg.monomial_degree(s.mono);
    int before = 0;
    for (int r = 0; r < j; ++r) before += slot_degree(M, slots[static_cast<std::size_t>(r)]);
    Rat sign = ((da * (1 + before)) & 1) ? -1 : 1;
    AlgElt a;
    a.terms[s.mono] = s.c * sign;
    slots[static_cast<std::size_t>(j)] = Slot{Rat(1), Monomial{}, s.gen};
    auto vals = eval_anchor_term(X, std::move(slots));
    std::vector<AlgElt> out(static_cast<std::size_t>(nb));
    for (int g = 0; g < nb; ++g) out[static_cast<std::size_t>(g)] = M.base.alg.mul(a, vals[static_cast<std::size_t>(g)]);
    return out;
}

// Cartesian expansion of general module-element slots into pure slot lists.
template <typename F>
void expand_slots(const CellModule& M, const std::vector<ModElt>& slots, std::vector<Slot>& acc,
                  std::size_t at, const Rat& coeff, F&& emit) {
    if (at == slots.size()) {
        emit(acc, coeff);
        return;
    }
    for (const auto& [gi, c] : slots[at].comps) {
        for (const auto& [mono, v] : c.terms) {
            acc.push_back(Slot{Rat(1), mono, gi});
            expand_slots(M, slots, acc, at + 1, coeff * v, emit);
            acc.pop_back();
        }
    }
}

} // namespace

ModElt Multiderivation::eval_bracket(const std::vector<ModElt>& slots) const {
    if (static_cast<int>(slots.size()) != weight + 1)
        fail(ErrorCode::Argument, "bracket expects weight+1 arguments");
    ModElt out;
    std::vector<Slot> acc;
    expand_slots(module, slots, acc, 0, Rat(1), [&](std::vector<Slot>& pure, const Rat& c) {
        out = out + c * eval_bracket_term(*this, pure);
    });
    return out;
}

std::vector<AlgElt> Multiderivation::eval_anchor(const std::vector<ModElt>& slots) const {
    if (static_cast<int>(slots.size()) != weight)
        fail(ErrorCode::Argument, "anchor expects weight arguments");
    std::vector<AlgElt> out(static_cast<std::size_t>(module.base.size()));
    std::vector<Slot> acc;
    expand_slots(module, slots, acc, 0, Rat(1), [&](std::vector<Slot>& pure, const Rat& c) {
        auto vals = eval_anchor_term(*this, pure);
        for (std::size_t g = 0; g < out.size(); ++g) out[g] = out[g] + c * vals[g];
    });
    return out;
}

std::vector<Word> generator_words(const CellModule& M, int length) {
    std::vector<Word> out;
    Word current;
    auto rec = [&](auto&& self, int min_gen) -> void {
        if (static_cast<int>(current.size()) == length) {
            out.push_back(current);
            return;
        }
        for (int g = min_gen; g < M.size(); ++g) {
            if ((M.gens[static_cast<std::size_t>(g)].degree & 1) && !current.empty() && current.back() == g)
                continue;
            current.push_back(g);
            self(self, g);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

bool MultiderSquareReport::is_zero() const {
    for (const auto& [w, v] : bracket_defect)
        if (!v.is_zero()) return false;
    for (const auto& [w, vals] : anchor_defect)
        for (const auto& v : vals)
            if (!v.is_zero()) return false;
    return true;
}

MultiderSquareReport multider_square(const std::vector<Multiderivation>& XX, int k) {
    if (XX.empty()) fail(ErrorCode::Argument, "multider_square needs at least one multiderivation");
    const CellModule& M = XX[0].module;
    for (const auto& X : XX)
        if (!(X.module == M)) fail(ErrorCode::Argument, "multiderivations do not share a module");
    int K = static_cast<int>(XX.size()) - 1;
    if (k < 0 || k > 2 * K) fail(ErrorCode::Argument, "total weight exceeds the arity cutoff");

    MultiderSquareReport rep;

    // bracket defect on words of length k+1
    for (const auto& w : generator_words(M, k + 1)) {
        DegreeList degs;
        for (int g : w) degs.push_back(M.gens[static_cast<std::size_t>(g)].degree);
        ModElt defect;
        for (int p = std::max(0, k - K); p <= std::min(K, k); ++p) {
            int q = k - p;
            const Multiderivation& outer = XX[static_cast<std::size_t>(p)];
            const Multiderivation& inner = XX[static_cast<std::size_t>(q)];
            for (const auto& sigma : unshuffles(q + 1, p)) {
                int eps = koszul_sign(degs, sigma);
                std::vector<ModElt> inner_slots;
                for (int r = 1; r <= q + 1; ++r) inner_slots.push_back(ModElt::gen(w[static_cast<std::size_t>(sigma(r) - 1)]));
                ModElt inner_val = inner.eval_bracket(inner_slots);
                if (inner_val.is_zero()) continue;
                std::vector<ModElt> outer_slots{inner_val};
                for (int r = q + 2; r <= k + 1; ++r) outer_slots.push_back(ModElt::gen(w[static_cast<std::size_t>(sigma(r) - 1)]));
                defect = defect + Rat(eps) * outer.eval_bracket(outer_slots);
            }
        }
        rep.bracket_defect[w] = std::move(defect);
    }

    // anchor defect on words of length k, reported as values on base generators
    for (const auto& w : generator_words(M, k)) {
        DegreeList degs;
        for (int g : w) degs.push_back(M.gens[static_cast<std::size_t>(g)].degree);
        std::vector<AlgElt> defect(static_cast<std::size_t>(M.base.size()));
        for (int p = std::max(0, k - K); p <= std::min(K, k); ++p) {
            int q = k - p;
            const Multiderivation& outer = XX[static_cast<std::size_t>(p)];
            const Multiderivation& inner = XX[static_cast<std::size_t>(q)];
            // σ_outer(inner-bracket ⊙ rest)
            if (p >= 1) {
                for (const auto& sigma : unshuffles(q + 1, p - 1)) {
                    int eps = koszul_sign(degs, sigma);
                    std::vector<ModElt> inner_slots;
                    for (int r = 1; r <= q + 1; ++r)
                        inner_slots.push_back(ModElt::gen(w[static_cast<std::size_t>(sigma(r) - 1)]));
                    ModElt inner_val = inner.eval_bracket(inner_slots);
                    if (inner_val.is_zero()) continue;
                    std::vector<ModElt> outer_slots{inner_val};
                    for (int r = q + 2; r <= k; ++r)
                        outer_slots.push_back(ModElt::gen(w[static_cast<std::size_t>(sigma(r) - 1)]));
                    auto vals = outer.eval_anchor(outer_slots);
                    for (std::size_t g = 0; g < defect.size(); ++g)
                        defect[g] = defect[g] + Rat(eps) * vals[g];
                }
            }
            // σ_inner(first q) ∘ σ_outer(last p), with the degree sign of the first block
            for (const auto& sigma : unshuffles(q, p)) {
                int eps = koszul_sign(degs, sigma);
                int block_deg = 0;
                std::vector<ModElt> first_slots, last_slots;
                for (int r = 1; r <= q; ++r) {
                    int g = w[static_cast<std::size_t>(sigma(r) - 1)];
                    block_deg += M.gens[static_cast<std::size_t>(g)].degree;
                    first_slots.push_back(ModElt::gen(g));
                }
                for (int r = q + 1; r <= k; ++r)
                    last_slots.push_back(ModElt::gen(w[static_cast<std::size_t>(sigma(r) - 1)]));
                auto inner_vals = inner.eval_anchor(first_slots);
                auto outer_vals = outer.eval_anchor(last_slots);
                Rat sign = ((block_deg & 1) ? -1 : 1) * Rat(eps);
                AlgDerivation Dq(DgcaMorphism::identity(M.base), block_deg + 1, inner_vals);
                for (int g = 0; g < M.base.size(); ++g) {
                    AlgElt composed = Dq.apply(outer_vals[static_cast<std::size_t>(g)]);
                    defect[static_cast<std::size_t>(g)] = defect[static_cast<std::size_t>(g)] + sign * composed;
                }
            }
        }
        rep.anchor_defect[w] = std::move(defect);
    }
    return rep;
}

FatCdga fat_shell(const CellModule& M, int W) {
    std::vector<Generator> duals;
    for (const auto& g : M.gens) duals.push_back({g.name + "*", -g.degree});
    std::vector<std::vector<AlgElt>> db(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(M.base.size())));
    std::vector<std::vector<AlgElt>> dd(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(M.size())));
    db[0] = M.base.dgen;
    FatCdga shell(M.base, duals, W, db, dd, M);
    // weight-0 dual component: transport of the module differential
    DualCellModule dual = dualize_cell(M);
    for (int i = 0; i < M.size(); ++i)
        dd[0][static_cast<std::size_t>(i)] = shell.from_dual_module_elt(dual.dgen[static_cast<std::size_t>(i)]);
    return FatCdga(M.base, duals, W, std::move(db), std::move(dd), M);
}

namespace {

// Diagonal pairing of the dual monomial of `v` against the primal word `w`,
// by the recursion pairing the first dual factor against every slot.
Rat pair_pure(const CellModule& M, const Word& v, const Word& w) {
    if (v.size() != w.size()) return 0;
    if (v.empty()) return 1;
    int rest_dual_deg = 0;
    for (std::size_t r = 1; r < v.size(); ++r) rest_dual_deg += -M.gens[static_cast<std::size_t>(v[r])].degree;
    Rat out = 0;
    int before = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        int uj = w[j];
        int udeg = M.gens[static_cast<std::size_t>(uj)].degree;
        if (uj == v[0]) {
            int exp = udeg * (before + rest_dual_deg);
            Word v_rest(v.begin() + 1, v.end());
            Word w_rest;
            for (std::size_t r = 0; r < w.size(); ++r)
                if (r != j) w_rest.push_back(w[r]);
            Rat term = pair_pure(M, v_rest, w_rest);
            out += ((exp & 1) ? Rat(-1) : Rat(1)) * term;
        }
        before += udeg;
    }
    return out;
}

// Pairing of a stored element of Sym^k (an AlgElt in the shell's combined
// algebra) against a pure word, A-linear in the stored coefficient.
AlgElt pair_element(const FatCdga& shell, const AlgElt& elt, const Word& w) {
    const CellModule& M = *shell.primal;
    AlgElt out;
    for (const auto& [m, c] : elt.terms) {
        std::vector<int> base_part;
        Word dualword;
        for (int f : m.factors) {
            if (f < shell.n_base()) base_part.push_back(f);
            else dualword.push_back(f - shell.n_base());
        }
        Rat p = pair_pure(M, dualword, w);
        if (is_zero(p)) continue;
        out.add_term(Monomial{base_part}, c * p);
    }
    return out;
}

} // namespace

FatComponent dualize_multider(const Multiderivation& X, const FatCdga& shell) {
    if (!shell.primal || !(*shell.primal == X.module))
        fail(ErrorCode::Argument, "shell does not carry the multiderivation's module");
    const CellModule& M = X.module;
    int l = X.weight;
    if (l > shell.W) fail(ErrorCode::Argument, "multiderivation weight exceeds the cutoff");
    FatComponent out;
    out.weight = l;
    out.on_base.assign(static_cast<std::size_t>(shell.n_base()), AlgElt{});
    out.on_dual.assign(static_cast<std::size_t>(shell.n_dual()), AlgElt{});

    auto dual_monomial = [&](const Word& w) {
        Monomial m;
        for (int g : w) m.factors.push_back(shell.dual_index(g));
        return m;
    };

    // (d a)(w) = (-1)^{|a|·deg(w)} σ(w)(a)
    for (const auto& w : generator_words(M, l)) {
        Rat kappa = pair_pure(M, w, w);
        if (is_zero(kappa)) continue;
        auto vals = X.anchor_on(w);
        int wdeg = word_degree(M, w);
        Monomial omega = dual_monomial(w);
        for (int a = 0; a < shell.n_base(); ++a) {
            const AlgElt& va = vals[static_cast<std::size_t>(a)];
            if (va.is_zero()) continue;
            Rat sign = ((M.base.gen(a).degree * wdeg) & 1) ? -1 : 1;
            AlgElt lambda = (sign / kappa) * va;
            out.on_base[static_cast<std::size_t>(a)] =
                out.on_base[static_cast<std::size_t>(a)] + shell.total.mul(lambda, AlgElt{{{omega, Rat(1)}}});
        }
    }

    // (d m_i^*)(w) = -(-1)^{q_i} m_i^*(X(w))
    {
        for (const auto& w : generator_words(M, l + 1)) {
            Rat kappa = pair_pure(M, w, w);
            if (is_zero(kappa)) continue;
            ModElt xv = X.bracket_on(w);
            if (xv.is_zero()) continue;
            Monomial omega = dual_monomial(w);
            for (const auto& [i, c] : xv.comps) {
                int qi = -M.gens[static_cast<std::size_t>(i)].degree;
                for (const auto& [mono, cc] : c.terms) {
                    int cdeg = M.base.alg.monomial_degree(mono);
                    // m_i^*(c·m_i) = (-1)^{q_i |c|} c
                    int exp = qi * cdeg + qi; // includes the global -(-1)^{q_i}
                    Rat sign = (exp & 1) ? 1 : -1;
                    AlgElt lambda;
                    lambda.terms[mono] = sign * cc / kappa;
                    out.on_dual[static_cast<std::size_t>(i)] =
                        out.on_dual[static_cast<std::size_t>(i)] + shell.total.mul(lambda, AlgElt{{{omega, Rat(1)}}});
                }
            }
        }
    }
    return out;
}

Multiderivation reconstruct_multider(const FatComponent& d, const FatCdga& shell) {
    if (!shell.primal) fail(ErrorCode::Argument, "shell does not carry a primal module");
    const CellModule& M = *shell.primal;
    int l = d.weight;
    if (l > shell.W)
        fail(ErrorCode::Argument, "weight cutoff too small to reconstruct this weight");
    if (static_cast<int>(d.on_base.size()) != shell.n_base() ||
        static_cast<int>(d.on_dual.size()) != shell.n_dual())
        fail(ErrorCode::Argument, "fat component has wrong generator counts");

    std::map<Word, std::vector<AlgElt>> anchor;
    for (const auto& w : generator_words(M, l)) {
        int wdeg = word_degree(M, w);
        std::vector<AlgElt> vals(static_cast<std::size_t>(shell.n_base()));
        bool nonzero = false;
        for (int a = 0; a < shell.n_base(); ++a) {
            AlgElt p = pair_element(shell, d.on_base[static_cast<std::size_t>(a)], w);
            if (p.is_zero()) continue;
            Rat sign = ((M.base.gen(a).degree * wdeg) & 1) ? -1 : 1;
            vals[static_cast<std::size_t>(a)] = sign * p;
            nonzero = true;
        }
        if (nonzero) anchor[w] = std::move(vals);
    }

    std::map<Word, ModElt> bracket;
    for (const auto& w : generator_words(M, l + 1)) {
        ModElt val;
        for (int i = 0; i < shell.n_dual(); ++i) {
            AlgElt p = pair_element(shell, d.on_dual[static_cast<std::size_t>(i)], w);
            if (p.is_zero()) continue;
            int qi = -M.gens[static_cast<std::size_t>(i)].degree;
            // c_i = -(-1)^{q_i(1 + |c_i|)} P, per homogeneous piece of P
            for (const auto& [mono, cc] : p.terms) {
                int cdeg = M.base.alg.monomial_degree(mono);
                int exp = qi * (1 + cdeg);
                Rat sign = (exp & 1) ? 1 : -1;
                AlgElt piece;
                piece.terms[mono] = sign * cc;
                val.add_comp(i, piece);
            }
        }
        if (!val.is_zero()) bracket[w] = std::move(val);
    }
    return Multiderivation(l, M, std::move(bracket), std::move(anchor));
}

SHLRPair::SHLRPair(CellModule m, std::vector<Multiderivation> higher)
    : base(m.base), module(m) {
    brackets.push_back(Multiderivation::weight0(module));
    for (std::size_t i = 0; i < higher.size(); ++i) {
        if (higher[i].weight != static_cast<int>(i) + 1)
            fail(ErrorCode::Argument, "higher multiderivations must be given in weight order 1..K");
        if (!(higher[i].module == module))
            fail(ErrorCode::Argument, "multiderivation module does not match the pair");
        brackets.push_back(higher[i]);
    }
}

FatCdga assemble_ce(const SHLRPair& P, int W) {
    FatCdga shell = fat_shell(P.module, W);
    std::vector<std::vector<AlgElt>> db(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(shell.n_base())));
    std::vector<std::vector<AlgElt>> dd(static_cast<std::size_t>(W) + 1,
                                        std::vector<AlgElt>(static_cast<std::size_t>(shell.n_dual())));
    for (int n = 0; n <= std::min(W, P.cutoff()); ++n) {
        FatComponent comp = dualize_multider(P.brackets[static_cast<std::size_t>(n)], shell);
        db[static_cast<std::size_t>(n)] = comp.on_base;
        dd[static_cast<std::size_t>(n)] = comp.on_dual;
    }
    return FatCdga(P.base, shell.dual_gens, W, std::move(db), std::move(dd), P.module);
}

FatCdga ce_from_pair(const SHLRPair& P, int W) {
    FatCdga X = assemble_ce(P, W);
    auto rep = square_zero_check(X);
    if (!rep.pass)
        fail(ErrorCode::Argument, "pair is not square-zero: CE differential fails at weight " +
                                      std::to_string(rep.weight) + " on " + rep.generator);
    return X;
}

SHLRPair pair_from_ce(const FatCdga& X) {
    CellModule M = X.primal ? *X.primal : primal_of(linear_part_of_differential(X));
    FatCdga shell = X;
    shell.primal = M;
    std::vector<Multiderivation> higher;
    for (int n = 1; n <= X.W; ++n) {
        FatComponent comp{n, X.dbase[static_cast<std::size_t>(n)], X.ddual[static_cast<std::size_t>(n)]};
        higher.push_back(reconstruct_multider(comp, shell));
    }
    return SHLRPair(M, std::move(higher));
}

} // namespace shlr
