#include "shlr/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace shlr {

namespace {

// ---------------------------------------------------------------------------
// tokenizer

struct Token {
    enum Kind { Name, Int, Punct, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    Token next() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            break;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (pos >= src.size()) return t;
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Name;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                t.text += src[pos];
                advance();
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Int;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                t.text += src[pos];
                advance();
            }
            return t;
        }
        // two-char arrow
        if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
            t.kind = Token::Punct;
            t.text = "->";
            advance();
            advance();
            return t;
        }
        t.kind = Token::Punct;
        t.text = std::string(1, c);
        advance();
        return t;
    }
};

[[noreturn]] void perr(const Token& t, const std::string& what) {
    fail(ErrorCode::Parse, "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) +
                               ": " + what);
}

struct Parser {
    std::vector<Token> toks;
    std::size_t at = 0;
    ModelFile out;
    bool config_seen = false;

    explicit Parser(const std::string& text) {
        Lexer lex(text);
        while (true) {
            Token t = lex.next();
            bool end = t.kind == Token::End;
            toks.push_back(std::move(t));
            if (end) break;
        }
    }

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }
    bool is_punct(const std::string& p) const { return peek().kind == Token::Punct && peek().text == p; }
    bool is_name(const std::string& n) const { return peek().kind == Token::Name && peek().text == n; }
    void expect_punct(const std::string& p) {
        if (!is_punct(p)) perr(peek(), "expected '" + p + "'");
        ++at;
    }
    std::string expect_name() {
        if (peek().kind != Token::Name) perr(peek(), "expected a name");
        return take().text;
    }
    long expect_int() {
        bool neg = false;
        if (is_punct("-")) {
            neg = true;
            ++at;
        }
        if (peek().kind != Token::Int) perr(peek(), "expected an integer");
        long v = std::stol(take().text);
        return neg ? -v : v;
    }

    // rational literal: INT ('/' INT)?
    Rat expect_rational() {
        long num = expect_int();
        if (is_punct("/")) {
            ++at;
            if (peek().kind != Token::Int) perr(peek(), "expected a denominator");
            long den = std::stol(take().text);
            return rat(num, den);
        }
        return rat(num);
    }

    // ------------------------------------------------------------------
    // expressions over a generator-name resolver

    using Resolver = std::function<int(const std::string&, const Token&)>;

    AlgElt parse_expr(const GradedAlgebra& alg, const Resolver& resolve) {
        AlgElt sum = parse_term(alg, resolve);
        while (is_punct("+") || is_punct("-")) {
            bool minus = peek().text == "-";
            ++at;
            AlgElt t = parse_term(alg, resolve);
            sum = minus ? sum - t : sum + t;
        }
        return sum;
    }

    AlgElt parse_term(const GradedAlgebra& alg, const Resolver& resolve) {
        AlgElt prod = parse_factor(alg, resolve);
        while (is_punct("*")) {
            ++at;
            prod = alg.mul(prod, parse_factor(alg, resolve));
        }
        return prod;
    }

    AlgElt parse_factor(const GradedAlgebra& alg, const Resolver& resolve) {
        if (is_punct("-")) {
            ++at;
            return Rat(-1) * parse_factor(alg, resolve);
        }
        if (is_punct("(")) {
            ++at;
            AlgElt e = parse_expr(alg, resolve);
            expect_punct(")");
            return e;
        }
        if (peek().kind == Token::Int) return AlgElt::unit(expect_rational());
        if (peek().kind == Token::Name) {
            Token t = take();
            int idx = resolve(t.text, t);
            AlgElt g = AlgElt::gen(idx);
            if (is_punct("^")) {
                ++at;
                long e = expect_int();
                if (e < 0) perr(peek(), "negative exponent");
                AlgElt p = AlgElt::unit(1);
                for (long i = 0; i < e; ++i) p = alg.mul(p, g);
                return p;
            }
            return g;
        }
        perr(peek(), "expected an expression");
    }

    // module expression: sum of <alg coefficient?> * <module generator>
    ModElt parse_module_expr(const CellModule& M) {
        ModElt sum;
        bool first = true;
        while (true) {
            Rat sign = 1;
            if (is_punct("-")) {
                sign = -1;
                ++at;
            } else if (is_punct("+")) {
                ++at;
            } else if (!first) {
                break;
            }
            if (peek().kind == Token::Int && toks[at + 1].kind == Token::Punct &&
                toks[at + 1].text == ";") {
                // a bare "0"
                Token t = take();
                if (t.text != "0") perr(t, "module expressions are combinations of generators (or 0)");
                break;
            }
            sum = sum + sign * parse_module_term(M);
            first = false;
            if (!(is_punct("+") || is_punct("-"))) break;
        }
        return sum;
    }

    ModElt parse_module_term(const CellModule& M) {
        // [coefficient *]* generator, in any product order
        AlgElt coeff = AlgElt::unit(1);
        auto resolve_base = [&](const std::string& n, const Token& t) {
            int i = M.base.alg.find(n);
            if (i < 0) perr(t, "unknown base generator '" + n + "'");
            return i;
        };
        while (true) {
            if (peek().kind == Token::Name) {
                // module generator?
                for (int i = 0; i < M.size(); ++i) {
                    if (M.gen(i).name == peek().text) {
                        ++at;
                        ModElt m = M.scale(coeff, ModElt::gen(i));
                        if (is_punct("*")) perr(peek(), "module generator must be the last factor");
                        return m;
                    }
                }
            }
            coeff = M.base.alg.mul(coeff, parse_factor(M.base.alg, resolve_base));
            if (is_punct("*")) {
                ++at;
                continue;
            }
            perr(peek(), "expected a module generator to end the term");
        }
    }

    // ------------------------------------------------------------------
    // blocks

    void parse_config() {
        expect_punct("{");
        while (!is_punct("}")) {
            Token key = toks[at];
            std::string k = expect_name();
            expect_punct("=");
            if (k == "weight_cutoff") {
                long w = expect_int();
                if (w < 0) perr(key, "weight_cutoff must be nonnegative");
                out.config.weight_cutoff = static_cast<int>(w);
            } else if (k == "degree_window") {
                long lo = expect_int();
                expect_punct(":");
                long hi = expect_int();
                if (lo > hi) perr(key, "degree window lo > hi");
                out.config.window = DegreeWindow(static_cast<int>(lo), static_cast<int>(hi));
            } else if (k == "length_cap") {
                long c = expect_int();
                if (c < 1) perr(key, "length_cap must be positive");
                out.config.length_cap = static_cast<int>(c);
            } else if (k == "seed") {
                long s = expect_int();
                if (s < 0) perr(key, "seed must be nonnegative");
                out.config.seed = static_cast<std::uint64_t>(s);
            } else {
                perr(key, "unknown config key '" + k + "'");
            }
            expect_punct(";");
        }
        ++at;
    }

    void check_fresh(const std::string& n, const Token& t) {
        if (out.find_algebra(n) || out.find_module(n) || out.find_fat_morphism(n) ||
            out.find_base_morphism(n))
            perr(t, "duplicate declaration of '" + n + "'");
        for (const auto& b : out.brackets)
            if (b.name == n) perr(t, "duplicate declaration of '" + n + "'");
    }

    void parse_algebra() {
        Token nt = peek();
        std::string name = expect_name();
        check_fresh(name, nt);
        expect_punct("{");
        std::vector<AlgElt> diffs;
        GradedAlgebra alg;
        auto resolve = [&](const std::string& n, const Token& t) {
            int i = alg.find(n);
            if (i < 0) perr(t, "unknown generator '" + n + "'");
            return i;
        };
        while (!is_punct("}")) {
            if (is_name("d") && toks.size() > at + 1 && toks[at + 1].kind == Token::Name) {
                Token dt = take(); // 'd'
                std::string g = expect_name();
                int gi = alg.find(g);
                if (gi < 0) perr(dt, "differential for undeclared generator '" + g + "'");
                expect_punct("=");
                AlgElt v;
                if (peek().kind == Token::Int && peek().text == "0" &&
                    toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                    ++at;
                } else {
                    v = parse_expr(alg, resolve);
                }
                diffs[static_cast<std::size_t>(gi)] = v;
                expect_punct(";");
                continue;
            }
            Token gt = peek();
            std::string g = expect_name();
            expect_punct(":");
            long deg = expect_int();
            if (deg > 0) perr(gt, "algebra generator '" + g + "' has positive degree");
            if (alg.find(g) >= 0) perr(gt, "duplicate generator '" + g + "'");
            alg.gens.push_back({g, static_cast<int>(deg)});
            diffs.push_back(AlgElt::zero());
            expect_punct(";");
        }
        ++at;
        out.algebras.push_back({name, SemiFreeDgca(alg, diffs)});
    }

    void parse_module() {
        Token nt = peek();
        std::string name = expect_name();
        check_fresh(name, nt);
        if (!is_name("over")) perr(peek(), "expected 'over'");
        ++at;
        Token bt = peek();
        std::string over = expect_name();
        const AlgebraDecl* base = out.find_algebra(over);
        if (!base) perr(bt, "unknown algebra '" + over + "'");
        expect_punct("{");
        std::vector<Generator> gens;
        std::vector<ModElt> diffs;
        while (!is_punct("}")) {
            if (is_name("d") && toks.size() > at + 1 && toks[at + 1].kind == Token::Name) {
                Token dt = take();
                std::string g = expect_name();
                int gi = -1;
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (gens[i].name == g) gi = static_cast<int>(i);
                if (gi < 0) perr(dt, "differential for undeclared module generator '" + g + "'");
                expect_punct("=");
                // build a scratch module over the generators declared so far
                CellModule scratch(base->algebra,
                                   std::vector<Generator>(gens.begin(), gens.begin() + gi),
                                   std::vector<ModElt>(static_cast<std::size_t>(gi)));
                ModElt v;
                if (peek().kind == Token::Int && peek().text == "0" &&
                    toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                    ++at;
                } else {
                    v = parse_module_expr(scratch);
                }
                diffs[static_cast<std::size_t>(gi)] = v;
                expect_punct(";");
                continue;
            }
            Token gt = peek();
            std::string g = expect_name();
            for (const auto& e : gens)
                if (e.name == g) perr(gt, "duplicate module generator '" + g + "'");
            expect_punct(":");
            long deg = expect_int();
            gens.push_back({g, static_cast<int>(deg)});
            diffs.push_back(ModElt{});
            expect_punct(";");
        }
        ++at;
        out.modules.push_back({name, over, CellModule(base->algebra, gens, diffs)});
    }

    void parse_brackets() {
        Token nt = peek();
        std::string name = expect_name();
        check_fresh(name, nt);
        if (!is_name("for")) perr(peek(), "expected 'for'");
        ++at;
        Token mt = peek();
        std::string mod = expect_name();
        const ModuleDecl* md = out.find_module(mod);
        if (!md) perr(mt, "unknown module '" + mod + "'");
        for (const auto& b : out.brackets)
            if (b.module == mod) perr(mt, "module '" + mod + "' already has a brackets block");
        const CellModule& M = md->module;
        expect_punct("{");
        std::map<int, std::map<Word, ModElt>> brackets_by_weight;
        std::map<int, std::map<Word, std::vector<AlgElt>>> anchors_by_weight;
        auto parse_word = [&](char close) {
            Word w;
            while (true) {
                Token gt = peek();
                std::string g = expect_name();
                int gi = -1;
                for (int i = 0; i < M.size(); ++i)
                    if (M.gen(i).name == g) gi = i;
                if (gi < 0) perr(gt, "unknown module generator '" + g + "'");
                w.push_back(gi);
                if (is_punct(",")) {
                    ++at;
                    continue;
                }
                expect_punct(std::string(1, close));
                break;
            }
            Word sorted = w;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != w) perr(peek(), "bracket words must list generators in declaration order");
            return w;
        };
        while (!is_punct("}")) {
            if (is_punct("[")) {
                Token bt = take();
                Word w = parse_word(']');
                expect_punct("=");
                ModElt v;
                if (peek().kind == Token::Int && peek().text == "0" &&
                    toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                    ++at;
                } else {
                    v = parse_module_expr(M);
                }
                int weight = static_cast<int>(w.size()) - 1;
                if (weight < 1) perr(bt, "brackets need at least two arguments");
                if (!brackets_by_weight[weight].emplace(w, v).second)
                    perr(bt, "duplicate bracket value");
                expect_punct(";");
                continue;
            }
            if (is_name("anchor")) {
                Token att = take();
                expect_punct("(");
                Word w = parse_word(')');
                expect_punct("=");
                // derivation expression: sum of <coeff> * D <base gen>
                std::vector<AlgElt> vals(static_cast<std::size_t>(M.base.size()));
                auto resolve_base = [&](const std::string& n, const Token& t) {
                    int i = M.base.alg.find(n);
                    if (i < 0) perr(t, "unknown base generator '" + n + "'");
                    return i;
                };
                bool any = false;
                while (true) {
                    Rat sign = 1;
                    if (is_punct("-")) {
                        sign = -1;
                        ++at;
                    } else if (is_punct("+")) {
                        ++at;
                    } else if (any) {
                        break;
                    }
                    if (peek().kind == Token::Int && peek().text == "0" &&
                        toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                        ++at;
                        any = true;
                        break;
                    }
                    AlgElt coeff = AlgElt::unit(sign);
                    while (!is_name("D")) {
                        coeff = M.base.alg.mul(coeff, parse_factor(M.base.alg, resolve_base));
                        if (is_punct("*")) {
                            ++at;
                            continue;
                        }
                        if (!is_name("D")) perr(peek(), "expected 'D <generator>' in a derivation term");
                    }
                    ++at; // D
                    Token gt = peek();
                    std::string g = expect_name();
                    int gi = M.base.alg.find(g);
                    if (gi < 0) perr(gt, "unknown base generator '" + g + "'");
                    vals[static_cast<std::size_t>(gi)] = vals[static_cast<std::size_t>(gi)] + coeff;
                    any = true;
                    if (!(is_punct("+") || is_punct("-"))) break;
                }
                int weight = static_cast<int>(w.size());
                if (!anchors_by_weight[weight].emplace(w, vals).second) perr(att, "duplicate anchor value");
                expect_punct(";");
                continue;
            }
            perr(peek(), "expected a bracket or anchor declaration");
        }
        ++at;
        int K = 0;
        for (const auto& [wgt, m] : brackets_by_weight) K = std::max(K, wgt);
        for (const auto& [wgt, m] : anchors_by_weight) K = std::max(K, wgt);
        std::vector<Multiderivation> multiders;
        for (int l = 1; l <= K; ++l)
            multiders.push_back(Multiderivation(l, M, brackets_by_weight[l], anchors_by_weight[l]));
        out.brackets.push_back({name, mod, std::move(multiders)});
    }

    // resolver over a pair's CE total algebra: base generators by name, dual
    // generators by bare module-generator name
    static GradedAlgebra ce_total(const CellModule& M) {
        std::vector<Generator> gens = M.base.alg.gens;
        for (const auto& g : M.gens) gens.push_back({g.name + "*", -g.degree});
        return GradedAlgebra(gens);
    }

    void parse_morphism() {
        Token nt = peek();
        std::string name = expect_name();
        check_fresh(name, nt);
        expect_punct(":");
        Token st = peek();
        std::string src = expect_name();
        expect_punct("->");
        Token tt = peek();
        std::string tgt = expect_name();
        bool base_kind = false;
        if (is_name("base")) {
            base_kind = true;
            ++at;
        }
        expect_punct("{");
        if (base_kind) {
            const AlgebraDecl* S = out.find_algebra(src);
            const AlgebraDecl* T = out.find_algebra(tgt);
            if (!S) perr(st, "unknown algebra '" + src + "'");
            if (!T) perr(tt, "unknown algebra '" + tgt + "'");
            std::vector<AlgElt> images(static_cast<std::size_t>(S->algebra.size()));
            auto resolve = [&](const std::string& n, const Token& t) {
                int i = T->algebra.alg.find(n);
                if (i < 0) perr(t, "unknown target generator '" + n + "'");
                return i;
            };
            while (!is_punct("}")) {
                Token gt = peek();
                std::string g = expect_name();
                int gi = S->algebra.alg.find(g);
                if (gi < 0) perr(gt, "unknown source generator '" + g + "'");
                expect_punct("->");
                AlgElt v;
                if (peek().kind == Token::Int && peek().text == "0" &&
                    toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                    ++at;
                } else {
                    v = parse_expr(T->algebra.alg, resolve);
                }
                images[static_cast<std::size_t>(gi)] = v;
                expect_punct(";");
            }
            ++at;
            DgcaMorphism f(S->algebra, T->algebra, images); // validates degrees
            out.base_morphisms.push_back({name, src, tgt, images});
            return;
        }
        const ModuleDecl* S = out.find_module(src);
        const ModuleDecl* T = out.find_module(tgt);
        if (!S) perr(st, "unknown module '" + src + "'");
        if (!T) perr(tt, "unknown module '" + tgt + "'");
        GradedAlgebra tgt_total = ce_total(T->module);
        int tnb = T->module.base.size();
        std::vector<AlgElt> base_images(static_cast<std::size_t>(S->module.base.size()));
        std::vector<AlgElt> dual_images(static_cast<std::size_t>(S->module.size()));
        auto resolve_tgt = [&](const std::string& n, const Token& t) -> int {
            int i = tgt_total.find(n);
            if (i >= 0 && i < tnb) return i;
            // bare module-generator names denote the dual generators
            for (int j = 0; j < T->module.size(); ++j)
                if (T->module.gen(j).name == n) return tnb + j;
            perr(t, "unknown target generator '" + n + "'");
        };
        auto resolve_tgt_base = [&](const std::string& n, const Token& t) -> int {
            int i = T->module.base.alg.find(n);
            if (i < 0) perr(t, "unknown target base generator '" + n + "'");
            return i;
        };
        while (!is_punct("}")) {
            if (is_name("base")) {
                ++at;
                Token gt = peek();
                std::string g = expect_name();
                int gi = S->module.base.alg.find(g);
                if (gi < 0) perr(gt, "unknown source base generator '" + g + "'");
                expect_punct("->");
                AlgElt v;
                if (peek().kind == Token::Int && peek().text == "0" &&
                    toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                    ++at;
                } else {
                    v = parse_expr(T->module.base.alg, resolve_tgt_base);
                }
                base_images[static_cast<std::size_t>(gi)] = v;
                expect_punct(";");
                continue;
            }
            Token gt = peek();
            std::string g = expect_name();
            int gi = -1;
            for (int j = 0; j < S->module.size(); ++j)
                if (S->module.gen(j).name == g) gi = j;
            if (gi < 0) perr(gt, "unknown source module generator '" + g + "'");
            expect_punct("->");
            AlgElt v;
            if (peek().kind == Token::Int && peek().text == "0" &&
                toks[at + 1].kind == Token::Punct && toks[at + 1].text == ";") {
                ++at;
            } else {
                v = parse_expr(tgt_total, resolve_tgt);
            }
            dual_images[static_cast<std::size_t>(gi)] = v;
            expect_punct(";");
        }
        ++at;
        out.fat_morphisms.push_back({name, src, tgt, base_images, dual_images});
    }

    ModelFile run() {
        while (peek().kind != Token::End) {
            if (is_name("config")) {
                Token t = take();
                if (config_seen) perr(t, "duplicate config block");
                config_seen = true;
                parse_config();
            } else if (is_name("algebra")) {
                ++at;
                parse_algebra();
            } else if (is_name("module")) {
                ++at;
                parse_module();
            } else if (is_name("brackets")) {
                ++at;
                parse_brackets();
            } else if (is_name("morphism")) {
                ++at;
                parse_morphism();
            } else {
                perr(peek(), "expected a top-level block");
            }
        }
        return std::move(out);
    }
};

} // namespace

const AlgebraDecl* ModelFile::find_algebra(const std::string& n) const {
    for (const auto& a : algebras)
        if (a.name == n) return &a;
    return nullptr;
}
const ModuleDecl* ModelFile::find_module(const std::string& n) const {
    for (const auto& m : modules)
        if (m.name == n) return &m;
    return nullptr;
}
const BracketsDecl* ModelFile::find_brackets_for(const std::string& module_name) const {
    for (const auto& b : brackets)
        if (b.module == module_name) return &b;
    return nullptr;
}
const FatMorphismDecl* ModelFile::find_fat_morphism(const std::string& n) const {
    for (const auto& f : fat_morphisms)
        if (f.name == n) return &f;
    return nullptr;
}
const BaseMorphismDecl* ModelFile::find_base_morphism(const std::string& n) const {
    for (const auto& f : base_morphisms)
        if (f.name == n) return &f;
    return nullptr;
}

SHLRPair ModelFile::pair_of(const std::string& module_name) const {
    const ModuleDecl* md = find_module(module_name);
    if (!md) fail(ErrorCode::Name, "unknown module '" + module_name + "'");
    const BracketsDecl* b = find_brackets_for(module_name);
    return SHLRPair(md->module, b ? b->multiders : std::vector<Multiderivation>{});
}

ModelFile parse_model(const std::string& text) { return Parser(text).run(); }

FatMorphism build_fat_morphism(const ModelFile& m, const FatMorphismDecl& d, int W) {
    FatCdga src = ce_from_pair(m.pair_of(d.source), W);
    FatCdga tgt = ce_from_pair(m.pair_of(d.target), W);
    DgcaMorphism f0(src.base, tgt.base, d.base_images);
    std::vector<std::vector<AlgElt>> g(static_cast<std::size_t>(W) + 1,
                                       std::vector<AlgElt>(static_cast<std::size_t>(src.n_dual())));
    for (int i = 0; i < src.n_dual(); ++i) {
        for (const auto& [mono, c] : d.dual_images[static_cast<std::size_t>(i)].terms) {
            int w = tgt.weight(mono);
            if (w < 1) fail(ErrorCode::Degree, "fat morphism image has a weight-0 part");
            if (w > W + 1) continue;
            g[static_cast<std::size_t>(w - 1)][static_cast<std::size_t>(i)].add_term(mono, c);
        }
    }
    return FatMorphism(src, tgt, f0, std::move(g));
}

// ---------------------------------------------------------------------------
// canonical printer

namespace {

// monomial in DSL syntax: factors joined with '*', powers with '^'
std::string print_mono_dsl(const GradedAlgebra& alg, const Monomial& m) {
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < m.factors.size()) {
        std::size_t j = i;
        while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
        if (!first) os << "*";
        os << alg.gens[static_cast<std::size_t>(m.factors[i])].name;
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

std::string print_module_elt(const CellModule& M, const ModElt& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v.comps) {
        for (const auto& [mono, cc] : c.terms) {
            Rat r = cc;
            if (first) {
                if (sgn(r) < 0) {
                    os << "-";
                    r = -r;
                }
            } else {
                os << (sgn(r) < 0 ? " - " : " + ");
                if (sgn(r) < 0) r = -r;
            }
            if (!(r == Rat(1)) || mono.is_unit()) {
                os << rat_str(r);
                os << "*";
            }
            if (!mono.is_unit()) os << print_mono_dsl(M.base.alg, mono) << "*";
            os << M.gen(i).name;
            first = false;
        }
    }
    return os.str();
}

std::string print_alg_elt(const GradedAlgebra& alg, const AlgElt& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, cc] : v.terms) {
        Rat r = cc;
        if (first) {
            if (sgn(r) < 0) {
                os << "-";
                r = -r;
            }
        } else {
            os << (sgn(r) < 0 ? " - " : " + ");
            if (sgn(r) < 0) r = -r;
        }
        if (mono.is_unit()) {
            os << rat_str(r);
        } else {
            if (!(r == Rat(1))) os << rat_str(r) << "*";
            os << print_mono_dsl(alg, mono);
        }
        first = false;
    }
    return os.str();
}

// the bare-name print of a CE-total element (dual generators without stars)
std::string print_ce_elt(const CellModule& M, const AlgElt& v) {
    std::vector<Generator> gens = M.base.alg.gens;
    for (const auto& g : M.gens) gens.push_back({g.name, -g.degree});
    GradedAlgebra total(gens);
    return print_alg_elt(total, v);
}

} // namespace

std::string print_model(const ModelFile& m) {
    std::ostringstream os;
    os << "config {\n";
    os << "  weight_cutoff = " << m.config.weight_cutoff << ";\n";
    os << "  degree_window = " << m.config.window.lo << ":" << m.config.window.hi << ";\n";
    os << "  length_cap = " << m.config.length_cap << ";\n";
    os << "  seed = " << m.config.seed << ";\n";
    os << "}\n";
    for (const auto& a : m.algebras) {
        os << "\nalgebra " << a.name << " {\n";
        for (int i = 0; i < a.algebra.size(); ++i)
            os << "  " << a.algebra.gen(i).name << " : " << a.algebra.gen(i).degree << ";\n";
        for (int i = 0; i < a.algebra.size(); ++i) {
            const AlgElt& v = a.algebra.dgen[static_cast<std::size_t>(i)];
            if (!v.is_zero())
                os << "  d " << a.algebra.gen(i).name << " = " << print_alg_elt(a.algebra.alg, v) << ";\n";
        }
        os << "}\n";
    }
    for (const auto& md : m.modules) {
        os << "\nmodule " << md.name << " over " << md.over << " {\n";
        for (int i = 0; i < md.module.size(); ++i)
            os << "  " << md.module.gen(i).name << " : " << md.module.gen(i).degree << ";\n";
        for (int i = 0; i < md.module.size(); ++i) {
            const ModElt& v = md.module.dgen[static_cast<std::size_t>(i)];
            if (!v.is_zero())
                os << "  d " << md.module.gen(i).name << " = " << print_module_elt(md.module, v) << ";\n";
        }
        os << "}\n";
    }
    for (const auto& b : m.brackets) {
        const CellModule& M = m.find_module(b.module)->module;
        os << "\nbrackets " << b.name << " for " << b.module << " {\n";
        for (const auto& X : b.multiders) {
            for (const auto& [w, v] : X.bracket) {
                if (v.is_zero()) continue;
                os << "  [";
                for (std::size_t i = 0; i < w.size(); ++i)
                    os << (i ? ", " : "") << M.gen(w[static_cast<std::size_t>(i)]).name;
                os << "] = " << print_module_elt(M, v) << ";\n";
            }
            for (const auto& [w, vals] : X.anchor) {
                bool nz = false;
                for (const auto& v : vals)
                    if (!v.is_zero()) nz = true;
                if (!nz) continue;
                os << "  anchor(";
                for (std::size_t i = 0; i < w.size(); ++i)
                    os << (i ? ", " : "") << M.gen(w[static_cast<std::size_t>(i)]).name;
                os << ") = ";
                bool first = true;
                for (int g = 0; g < M.base.size(); ++g) {
                    const AlgElt& v = vals[static_cast<std::size_t>(g)];
                    if (v.is_zero()) continue;
                    if (!first) os << " + ";
                    os << "(" << print_alg_elt(M.base.alg, v) << ") * D " << M.base.gen(g).name;
                    first = false;
                }
                os << ";\n";
            }
        }
        os << "}\n";
    }
    for (const auto& f : m.fat_morphisms) {
        const CellModule& S = m.find_module(f.source)->module;
        const CellModule& T = m.find_module(f.target)->module;
        os << "\nmorphism " << f.name << " : " << f.source << " -> " << f.target << " {\n";
        for (int i = 0; i < S.base.size(); ++i)
            os << "  base " << S.base.gen(i).name << " -> "
               << print_alg_elt(T.base.alg, f.base_images[static_cast<std::size_t>(i)]) << ";\n";
        for (int i = 0; i < S.size(); ++i)
            os << "  " << S.gen(i).name << " -> "
               << print_ce_elt(T, f.dual_images[static_cast<std::size_t>(i)]) << ";\n";
        os << "}\n";
    }
    for (const auto& f : m.base_morphisms) {
        const SemiFreeDgca& S = m.find_algebra(f.source)->algebra;
        const SemiFreeDgca& T = m.find_algebra(f.target)->algebra;
        os << "\nmorphism " << f.name << " : " << f.source << " -> " << f.target << " base {\n";
        for (int i = 0; i < S.size(); ++i)
            os << "  " << S.gen(i).name << " -> "
               << print_alg_elt(T.alg, f.images[static_cast<std::size_t>(i)]) << ";\n";
        os << "}\n";
    }
    return os.str();
}

} // namespace shlr
