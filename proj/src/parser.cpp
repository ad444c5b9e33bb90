#include "sullivan/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sullivan {

namespace {

struct Token {
    enum Kind { Name, Number, Op, End } kind = End;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
        if (i_ >= s_.size()) {
            tok_ = {Token::End, ""};
            return;
        }
        char c = s_[i_];
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
            tok_ = {Token::Number, s_.substr(i_, j - i_)};
            i_ = j;
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = i_;
            auto name_char = [](char x) {
                return std::isalnum((unsigned char)x) || x == '_' || x == '\'' || x == '~' ||
                       x == '@' || x == '#';
            };
            while (j < s_.size() && name_char(s_[j])) ++j;
            tok_ = {Token::Name, s_.substr(i_, j - i_)};
            i_ = j;
            return;
        }
        tok_ = {Token::Op, std::string(1, c)};
        ++i_;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_;
};

class ExprParser {
public:
    ExprParser(Lexer& lex, const TablePtr& table) : lex_(lex), table_(table) {}

    Poly parse() {
        Poly p = expr();
        if (lex_.peek().kind != Token::End) throw std::runtime_error("trailing input after expression");
        return p;
    }

private:
    Poly expr() {
        int sign = 1;
        if (lex_.peek().kind == Token::Op && (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            if (lex_.next().text == "-") sign = -1;
        }
        Poly p = term().scaled(Q(sign));
        while (lex_.peek().kind == Token::Op &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            bool minus = lex_.next().text == "-";
            Poly t = term();
            p += minus ? -t : t;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (lex_.peek().kind == Token::Op && lex_.peek().text == "*") {
            lex_.next();
            p = p * factor();
        }
        return p;
    }

    Poly factor() {
        Poly p = primary();
        if (lex_.peek().kind == Token::Op && lex_.peek().text == "^") {
            lex_.next();
            if (lex_.peek().kind != Token::Number) throw std::runtime_error("exponent expected after ^");
            int e = std::stoi(lex_.next().text);
            p = p.pow(e);
        }
        return p;
    }

    Poly primary() {
        Token t = lex_.next();
        if (t.kind == Token::Number) {
            Q num(t.text);
            if (lex_.peek().kind == Token::Op && lex_.peek().text == "/") {
                lex_.next();
                if (lex_.peek().kind != Token::Number)
                    throw std::runtime_error("denominator expected after /");
                Q den(lex_.next().text);
                if (den == 0) throw std::runtime_error("zero denominator");
                num /= den;
            }
            return Poly::constant(table_, num);
        }
        if (t.kind == Token::Name) {
            int idx = table_->index_of(t.text);
            if (idx < 0) throw std::runtime_error("unknown generator " + t.text);
            return Poly::generator(table_, idx);
        }
        if (t.kind == Token::Op && t.text == "(") {
            Poly p = expr();
            if (!(lex_.peek().kind == Token::Op && lex_.peek().text == ")"))
                throw std::runtime_error("missing )");
            lex_.next();
            return p;
        }
        throw std::runtime_error("unexpected token '" + t.text + "'");
    }

    Lexer& lex_;
    TablePtr table_;
};

bool valid_user_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

}  // namespace

Poly parse_poly(const std::string& text, const TablePtr& table) {
    Lexer lex(text);
    return ExprParser(lex, table).parse();
}

AlgebraFile parse_algebra_file(const std::string& text) {
    AlgebraFile out;
    out.source = text;

    struct DLine {
        int line;
        std::string name;
        std::string expr;
    };
    std::vector<Generator> gens;
    std::vector<int> gen_lines;
    std::vector<DLine> dlines;
    std::string dlcop_gen, dlp_gen;

    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<std::string> w = split_ws(line);
        if (w.empty()) continue;
        if (w[0] == "generator") {
            if (w.size() != 3) throw ParseError(lineno, "expected: generator <name> <degree>");
            if (!valid_user_name(w[1]))
                throw ParseError(lineno, "invalid generator name '" + w[1] + "'");
            int deg = 0;
            try {
                deg = std::stoi(w[2]);
            } catch (...) {
                throw ParseError(lineno, "invalid degree '" + w[2] + "'");
            }
            if (deg < 2)
                throw ParseError(lineno, "generator " + w[1] + " has degree " + w[2] +
                                             "; generators must have degree >= 2");
            for (const Generator& g : gens)
                if (g.name == w[1]) throw ParseError(lineno, "duplicate generator " + w[1]);
            gens.push_back({w[1], deg});
            gen_lines.push_back(lineno);
        } else if (w[0] == "d") {
            auto eq = line.find('=');
            if (w.size() < 3 || eq == std::string::npos)
                throw ParseError(lineno, "expected: d <name> = <expression>");
            dlines.push_back({lineno, w[1], line.substr(eq + 1)});
        } else if (w[0] == "decompose") {
            if (w.size() != 3 || (w[1] != "dlcop" && w[1] != "dlp"))
                throw ParseError(lineno, "expected: decompose dlcop|dlp <name>");
            (w[1] == "dlcop" ? dlcop_gen : dlp_gen) = w[2];
        } else {
            throw ParseError(lineno, "unknown directive '" + w[0] + "'");
        }
    }

    TablePtr table = make_table(gens);
    std::vector<Poly> images(table->size(), Poly::zero(table));
    std::vector<char> have(table->size(), 0);
    for (const DLine& dl : dlines) {
        int idx = table->index_of(dl.name);
        if (idx < 0) throw ParseError(dl.line, "unknown generator " + dl.name);
        if (have[idx]) throw ParseError(dl.line, "duplicate differential for " + dl.name);
        have[idx] = 1;
        Poly p(table);
        try {
            p = parse_poly(dl.expr, table);
        } catch (const std::exception& e) {
            throw ParseError(dl.line, e.what());
        }
        for (const auto& [m, c] : p.terms())
            for (const auto& [g, e] : m.factors)
                if (g >= idx)
                    throw ParseError(dl.line, "d " + dl.name + " references " + (*table)[g].name +
                                                  ", which is not an earlier generator");
        if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != (*table)[idx].degree + 1))
            throw ParseError(dl.line, "d " + dl.name + " must be homogeneous of degree " +
                                          std::to_string((*table)[idx].degree + 1));
        images[idx] = std::move(p);
    }

    try {
        out.algebra = make_presentation(table, std::move(images),
                                        PresentationOptions{.require_degree_two = true});
    } catch (const std::exception& e) {
        throw ParseError(0, e.what());
    }
    auto check_annotation = [&](const std::string& g, const char* what) {
        if (!g.empty() && table->index_of(g) < 0)
            throw ParseError(0, std::string(what) + " annotation names unknown generator " + g);
    };
    check_annotation(dlcop_gen, "decompose dlcop");
    check_annotation(dlp_gen, "decompose dlp");
    out.dlcop_generator = dlcop_gen;
    out.dlp_generator = dlp_gen;
    return out;
}

AlgebraFile load_algebra_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_algebra_file(buf.str());
}

}  // namespace sullivan
