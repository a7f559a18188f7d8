#include "reglab/cycle_dsl.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int line, col;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;
    Token cur;

    explicit Lexer(const std::string& s, int first_line = 1) : src(s), line(first_line) {
        advance();
    }

    [[noreturn]] void fail(const std::string& msg, int l, int c) const {
        std::ostringstream os;
        os << "line " << l << ", col " << c << ": " << msg;
        throw ParseError(os.str());
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, cur.line, cur.col); }

    void bump(char ch) {
        ++pos;
        if (ch == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }

    void advance() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
                continue;
            }
            if (std::isspace((unsigned char)c)) {
                bump(c);
                continue;
            }
            break;
        }
        if (pos >= src.size()) {
            cur = {Token::End, "", line, col};
            return;
        }
        int l = line, c0 = col;
        char c = src[pos];
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string t;
            while (pos < src.size() && (std::isalnum((unsigned char)src[pos]) || src[pos] == '_')) {
                t += src[pos];
                bump(src[pos]);
            }
            cur = {Token::Ident, t, l, c0};
            return;
        }
        if (std::isdigit((unsigned char)c)) {
            std::string t;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
                t += src[pos];
                bump(src[pos]);
            }
            cur = {Token::Number, t, l, c0};
            return;
        }
        // multi-char punct: ^, ->, ( ) , ; = + - * /
        std::string t(1, c);
        bump(c);
        if (c == '-' && pos < src.size() && src[pos] == '>') {
            t += '>';
            bump('>');
        }
        if (c == '(' && pos + 3 < src.size() && src.compare(pos, 4, "P1)^") == 0) {
            // leave "(P1)^" handling to the parser via separate tokens
        }
        cur = {Token::Punct, t, l, c0};
    }

    bool is_punct(const std::string& p) const { return cur.kind == Token::Punct && cur.text == p; }
    bool is_ident(const std::string& w) const { return cur.kind == Token::Ident && cur.text == w; }
    void expect_punct(const std::string& p) {
        if (!is_punct(p)) fail("expected '" + p + "'");
        advance();
    }
};

struct ExprParser {
    Lexer& lx;
    const std::vector<std::string>& params;
    const std::map<std::string, RF>* extra;  // ambient names (hypersurface)
    int nvars;

    RF parse() { return sum(); }

    RF sum() {
        RF v = product();
        while (lx.is_punct("+") || lx.is_punct("-")) {
            bool plus = lx.cur.text == "+";
            lx.advance();
            RF r = product();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    RF product() {
        RF v = power();
        while (lx.is_punct("*") || lx.is_punct("/")) {
            bool mul = lx.cur.text == "*";
            lx.advance();
            RF r = power();
            v = mul ? v * r : v / r;
        }
        return v;
    }

    RF power() {
        RF v = atom();
        if (lx.is_punct("^")) {
            lx.advance();
            bool neg = false;
            if (lx.is_punct("-")) {
                neg = true;
                lx.advance();
            }
            if (lx.cur.kind != Token::Number) lx.fail("expected integer exponent");
            long e = std::stol(lx.cur.text);
            lx.advance();
            if (neg) e = -e;
            RF acc = RF::constant(ExtElem(CycloNum(rat(1))), nvars);
            RF base = e >= 0 ? v : RF{v.den, v.num};
            for (long k = 0; k < std::labs(e); ++k) acc = acc * base;
            return acc;
        }
        return v;
    }

    RF atom() {
        if (lx.is_punct("-")) {
            lx.advance();
            return -atom();
        }
        if (lx.is_punct("(")) {
            lx.advance();
            RF v = sum();
            lx.expect_punct(")");
            return v;
        }
        if (lx.cur.kind == Token::Number) {
            long num = std::stol(lx.cur.text);
            lx.advance();
            if (lx.is_punct("/")) {
                // lookahead: only treat as a rational literal when a number follows
                size_t save_pos = lx.pos;
                Token save = lx.cur;
                int sl = lx.line, sc = lx.col;
                lx.advance();
                if (lx.cur.kind == Token::Number) {
                    long den = std::stol(lx.cur.text);
                    lx.advance();
                    return RF::constant(ExtElem(CycloNum(rat(num, den))), nvars);
                }
                lx.pos = save_pos;
                lx.cur = save;
                lx.line = sl;
                lx.col = sc;
            }
            return RF::constant(ExtElem(CycloNum(rat(num))), nvars);
        }
        if (lx.cur.kind == Token::Ident) {
            std::string name = lx.cur.text;
            if (name == "inf") {
                lx.advance();
                return RF::infinity(nvars);
            }
            if (name == "zeta") {
                lx.advance();
                lx.expect_punct("(");
                if (lx.cur.kind != Token::Number) lx.fail("expected conductor in zeta(N)");
                int N = std::stoi(lx.cur.text);
                lx.advance();
                lx.expect_punct(")");
                long e = 1;
                if (lx.is_punct("^")) {
                    lx.advance();
                    bool neg = false;
                    if (lx.is_punct("-")) {
                        neg = true;
                        lx.advance();
                    }
                    if (lx.cur.kind != Token::Number) lx.fail("expected exponent");
                    e = std::stol(lx.cur.text);
                    if (neg) e = -e;
                    lx.advance();
                }
                return RF::constant(ExtElem(CycloNum::zeta(N, e)), nvars);
            }
            for (size_t i = 0; i < params.size(); ++i)
                if (params[i] == name) {
                    lx.advance();
                    return RF::var((int)i, nvars);
                }
            if (extra) {
                auto it = extra->find(name);
                if (it != extra->end()) {
                    lx.advance();
                    return it->second;
                }
            }
            lx.fail("unknown identifier '" + name + "'");
        }
        lx.fail("expected an expression");
    }
};

struct BaseDecl {
    BaseKind kind = BaseKind::Curve;
    int nparams = 1;
    std::vector<std::string> params;
    std::map<std::string, RF> ambient;  // hypersurface coordinate functions
    std::vector<RF> default_x;          // ambient parametrization, if any
    std::vector<ExcludedLocus> excluded;
    std::string label = "P1";
};

}  // namespace

RF parse_rf_expression(const std::string& text, const std::vector<std::string>& params) {
    Lexer lx(text);
    ExprParser ep{lx, params, nullptr, (int)params.size()};
    RF v = ep.parse();
    if (lx.cur.kind != Token::End) lx.fail("trailing input after expression");
    return v;
}

static PValue parse_locus_value(Lexer& lx, const BaseDecl& base) {
    ExprParser ep{lx, base.params, nullptr, base.nparams};
    RF v = ep.parse();
    if (!v.is_constant()) lx.fail("excluded locus value must be constant");
    return PValue{v.num.constant_part(), v.den.constant_part()};
}

static void parse_exclusions(Lexer& lx, BaseDecl& base) {
    if (!lx.is_ident("exclude")) return;
    lx.advance();
    while (true) {
        int var = 0;
        if (lx.cur.kind == Token::Ident) {
            // surface form "name = value" (when the name is a parameter)
            for (size_t i = 0; i < base.params.size(); ++i)
                if (base.params[i] == lx.cur.text) {
                    size_t save_pos = lx.pos;
                    Token save = lx.cur;
                    int sl = lx.line, sc = lx.col;
                    lx.advance();
                    if (lx.is_punct("=")) {
                        lx.advance();
                        var = (int)i;
                        PValue v = parse_locus_value(lx, base);
                        base.excluded.push_back({var, v});
                        goto next;
                    }
                    lx.pos = save_pos;
                    lx.cur = save;
                    lx.line = sl;
                    lx.col = sc;
                    break;
                }
        }
        {
            PValue v = parse_locus_value(lx, base);
            base.excluded.push_back({0, v});
        }
    next:
        if (!lx.is_punct(",")) break;
        lx.advance();
    }
}

static BaseDecl parse_base(Lexer& lx) {
    BaseDecl base;
    if (lx.is_ident("point")) {
        lx.advance();
        base.kind = BaseKind::Point;
        base.nparams = 0;
        base.params.clear();
        base.label = "pt";
    } else if (lx.is_ident("P1")) {
        lx.advance();
        lx.expect_punct("(");
        if (lx.cur.kind != Token::Ident) lx.fail("expected parameter name");
        base.params = {lx.cur.text};
        lx.advance();
        lx.expect_punct(")");
        base.kind = BaseKind::Curve;
        base.nparams = 1;
        base.label = "P1(" + base.params[0] + ")";
    } else if (lx.is_ident("surface")) {
        lx.advance();
        lx.expect_punct("(");
        if (lx.cur.kind != Token::Ident) lx.fail("expected parameter name");
        base.params.push_back(lx.cur.text);
        lx.advance();
        lx.expect_punct(",");
        if (lx.cur.kind != Token::Ident) lx.fail("expected parameter name");
        base.params.push_back(lx.cur.text);
        lx.advance();
        lx.expect_punct(")");
        base.kind = BaseKind::Surface;
        base.nparams = 2;
        base.label = "surface(" + base.params[0] + "," + base.params[1] + ")";
    } else if (lx.is_ident("hypersurface")) {
        lx.advance();
        lx.expect_punct("(");
        lx.expect_punct("(");
        if (!lx.is_ident("P1")) lx.fail("expected (P1)^k ambient");
        lx.advance();
        lx.expect_punct(")");
        lx.expect_punct("^");
        if (lx.cur.kind != Token::Number) lx.fail("expected ambient dimension");
        int k = std::stoi(lx.cur.text);
        lx.advance();
        lx.expect_punct(";");
        if (k != 3) lx.fail("only (P1)^3 hypersurfaces are supported");
        // equation in x, y, z; multilinear in the solved variable z
        static const std::vector<std::string> names{"x", "y", "z"};
        std::vector<std::string> free_params{"x", "y"};
        // parse the defining equation over three formal variables
        ExprParser ep{lx, names, nullptr, 3};
        RF eq = ep.parse();
        // solve A(x,y) z + B(x,y) = 0 for z
        MPoly poly = eq.num;  // denominator only clears; zero locus unchanged
        if (poly.deg_in(2) != 1) lx.fail("equation must be degree 1 in the solved variable z");
        MPoly A(3), B(3);
        for (auto& [e, c] : poly.terms()) {
            MPoly::Expo e2 = e;
            e2[2] = 0;
            MPoly mono(3);
            mono.add_term(e2, c);
            if (e[2] == 1)
                A = A + mono;
            else if (e[2] == 0)
                B = B + mono;
            else
                lx.fail("equation must be degree 1 in the solved variable z");
        }
        RF zsolved = RF{-B.drop_var(2), A.drop_var(2)};
        lx.expect_punct(")");
        base.kind = BaseKind::Surface;
        base.nparams = 2;
        base.params = free_params;
        base.ambient["x"] = RF::var(0, 2);
        base.ambient["y"] = RF::var(1, 2);
        base.ambient["z"] = zsolved;
        base.default_x = {RF::var(0, 2), RF::var(1, 2), zsolved};
        base.label = "hypersurface";
    } else {
        lx.fail("expected a base kind (point, P1, surface, hypersurface)");
    }
    parse_exclusions(lx, base);
    return base;
}

CycleChain parse_cycle_chain(const std::string& text) {
    // statements are line-oriented: one base declaration or chain item each
    CycleChain chain;
    std::optional<BaseDecl> base;
    std::istringstream stream(text);
    std::string line_text;
    int line_no = 0;
    while (std::getline(stream, line_text)) {
        ++line_no;
        Lexer lx(line_text, line_no);
        if (lx.cur.kind == Token::End) continue;
        if (lx.is_ident("base")) {
            lx.advance();
            base = parse_base(lx);
            if (lx.cur.kind != Token::End) lx.fail("trailing input after base declaration");
            continue;
        }
        // chain item: [sign] [rational] cycle ( ... )
        Rat coeff = rat(1);
        if (lx.is_punct("+")) {
            lx.advance();
        } else if (lx.is_punct("-")) {
            coeff = rat(-1);
            lx.advance();
        }
        if (lx.cur.kind == Token::Number) {
            long num = std::stol(lx.cur.text);
            lx.advance();
            long den = 1;
            if (lx.is_punct("/")) {
                lx.advance();
                if (lx.cur.kind != Token::Number) lx.fail("expected denominator");
                den = std::stol(lx.cur.text);
                lx.advance();
            }
            coeff *= rat(num, den);
        }
        if (!lx.is_ident("cycle")) lx.fail("expected 'cycle'");
        lx.advance();
        if (!base) lx.fail("'cycle' before any 'base' declaration");
        lx.expect_punct("(");
        std::vector<RF> first, second;
        bool has_split = false;
        while (true) {
            ExprParser ep{lx, base->params, &base->ambient, base->nparams};
            first.push_back(ep.parse());
            if (lx.is_punct(",")) {
                lx.advance();
                continue;
            }
            if (lx.is_punct(";")) {
                lx.advance();
                has_split = true;
                while (true) {
                    ExprParser ep2{lx, base->params, &base->ambient, base->nparams};
                    second.push_back(ep2.parse());
                    if (lx.is_punct(",")) {
                        lx.advance();
                        continue;
                    }
                    break;
                }
            }
            break;
        }
        lx.expect_punct(")");

        ParamCycle z;
        z.kind = base->kind;
        z.nparams = base->nparams;
        z.excluded = base->excluded;
        z.base_label = base->label;
        if (has_split) {
            z.x_coords = first;
            z.cube_coords = second;
        } else {
            z.cube_coords = first;
            z.x_coords = base->default_x;
        }
        chain.terms.push_back({z, coeff});
        if (lx.cur.kind != Token::End) lx.fail("trailing input after cycle");
    }
    return chain;
}

}  // namespace reglab
