#include "fase/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace fase {

namespace {

enum class Tok {
    End,
    LowerIdent,
    UpperIdent,
    Dot,
    Plus,
    Underscore,
    LParen,
    RParen,
    LBracket,   // [
    RBracket,   // ]
    ParOpen,    // |[
    ParClose,   // ]|
    Arrow,      // ->
    Comma,
    Star,
    Minus,
    KwNil,      // nil or 0
    KwRec,
    KwTau,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Tok::End, "", line, col};
        char c = src_[pos_];
        if (std::islower(static_cast<unsigned char>(c))) {
            std::string id = ident();
            if (id == "nil") return {Tok::KwNil, id, line, col};
            if (id == "rec") return {Tok::KwRec, id, line, col};
            if (id == "tau") return {Tok::KwTau, id, line, col};
            return {Tok::LowerIdent, id, line, col};
        }
        if (std::isupper(static_cast<unsigned char>(c)))
            return {Tok::UpperIdent, ident(), line, col};
        if (c == '0' && !std::isalnum(peek_char(1))) {
            advance();
            return {Tok::KwNil, "0", line, col};
        }
        switch (c) {
        case '.': advance(); return {Tok::Dot, ".", line, col};
        case '+': advance(); return {Tok::Plus, "+", line, col};
        case '_': advance(); return {Tok::Underscore, "_", line, col};
        case '(': advance(); return {Tok::LParen, "(", line, col};
        case ')': advance(); return {Tok::RParen, ")", line, col};
        case ',': advance(); return {Tok::Comma, ",", line, col};
        case '*': advance(); return {Tok::Star, "*", line, col};
        case '|':
            if (peek_char(1) == '[') {
                advance(); advance();
                return {Tok::ParOpen, "|[", line, col};
            }
            break;
        case ']':
            if (peek_char(1) == '|') {
                advance(); advance();
                return {Tok::ParClose, "]|", line, col};
            }
            advance();
            return {Tok::RBracket, "]", line, col};
        case '[': advance(); return {Tok::LBracket, "[", line, col};
        case '-':
            if (peek_char(1) == '>') {
                advance(); advance();
                return {Tok::Arrow, "->", line, col};
            }
            advance();
            return {Tok::Minus, "-", line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    char peek_char(size_t off) const {
        return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string ident() {
        std::string out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out += c;
                advance();
            } else {
                break;
            }
        }
        return out;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lexer_(src) { shift(); shift(); }

    TermPtr run() {
        TermPtr t = process();
        expect(Tok::End, "end of input");
        return t;
    }

private:
    void shift() {
        cur_ = next_;
        next_ = lexer_.next();
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, cur_.line, cur_.col);
    }

    void expect(Tok k, const std::string& what) {
        if (cur_.kind != k) fail("expected " + what);
    }

    Token eat(Tok k, const std::string& what) {
        expect(k, what);
        Token t = cur_;
        shift();
        return t;
    }

    // process := sum { "|[" sync "]|" sum }
    TermPtr process() {
        TermPtr t = sum();
        while (cur_.kind == Tok::ParOpen) {
            shift();
            SyncSet s = sync_set();
            eat(Tok::ParClose, "']|'");
            TermPtr r = sum();
            t = mk_par(t, std::move(s), r);
        }
        return t;
    }

    SyncSet sync_set() {
        if (cur_.kind == Tok::Star) {
            shift();
            if (cur_.kind == Tok::Minus) {
                shift();
                return SyncSet::all_except(name_list());
            }
            return SyncSet::all();
        }
        if (cur_.kind == Tok::ParClose) return SyncSet::finite({});
        return SyncSet::finite(name_list());
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> names;
        names.push_back(action_name());
        while (cur_.kind == Tok::Comma) {
            shift();
            names.push_back(action_name());
        }
        return names;
    }

    std::string action_name() {
        if (cur_.kind == Tok::KwTau || cur_.kind == Tok::KwNil || cur_.kind == Tok::KwRec)
            fail("reserved word '" + cur_.text + "' cannot be used as an action name");
        Token t = eat(Tok::LowerIdent, "action name");
        return t.text;
    }

    // sum := prefix { "+" prefix }
    TermPtr sum() {
        TermPtr t = prefix();
        while (cur_.kind == Tok::Plus) {
            shift();
            t = mk_sum(t, prefix());
        }
        return t;
    }

    // prefix := guard "." prefix | atom
    TermPtr prefix() {
        if (cur_.kind == Tok::Underscore) {
            shift();
            ActionLabel a = guard_label();
            eat(Tok::Dot, "'.' after urgent guard");
            return mk_prefix(std::move(a), true, prefix());
        }
        if (cur_.kind == Tok::KwTau) {
            shift();
            eat(Tok::Dot, "'.' after tau");
            return mk_prefix(ActionLabel::tau(), false, prefix());
        }
        if (cur_.kind == Tok::LowerIdent) {
            if (next_.kind == Tok::Dot) {
                std::string name = cur_.text;
                shift();
                shift();  // '.'
                return mk_prefix(ActionLabel::visible(name), false, prefix());
            }
            if (!bound(cur_.text))
                fail("action '" + cur_.text + "' must prefix a process (expected '.')");
        }
        return atom();
    }

    ActionLabel guard_label() {
        if (cur_.kind == Tok::KwTau) {
            shift();
            return ActionLabel::tau();
        }
        return ActionLabel::visible(action_name());
    }

    TermPtr atom() {
        TermPtr t = nullptr;
        switch (cur_.kind) {
        case Tok::KwNil:
            shift();
            t = mk_nil();
            break;
        case Tok::UpperIdent:
        case Tok::LowerIdent: {  // lower-case names reach here only when bound
            std::string name = cur_.text;
            shift();
            t = mk_var(resolve(name));
            break;
        }
        case Tok::KwRec: {
            shift();
            if (cur_.kind != Tok::UpperIdent && cur_.kind != Tok::LowerIdent)
                fail("expected recursion variable");
            Token v = cur_;
            shift();
            eat(Tok::Dot, "'.' after recursion variable");
            std::string fresh = bind(v.text);
            TermPtr body = prefix();
            scopes_.pop_back();
            t = mk_rec(fresh, body);
            break;
        }
        case Tok::LParen:
            shift();
            t = process();
            eat(Tok::RParen, "')'");
            break;
        default:
            fail("expected a process");
        }
        while (cur_.kind == Tok::LBracket) {
            shift();
            t = mk_relabel(t, renames());
            eat(Tok::RBracket, "']'");
        }
        return t;
    }

    Relabeling renames() {
        std::vector<std::pair<std::string, ActionLabel>> entries;
        std::set<std::string> seen;
        while (true) {
            std::string from = action_name();
            if (!seen.insert(from).second)
                fail("duplicate relabelling of '" + from + "'");
            eat(Tok::Arrow, "'->'");
            ActionLabel to;
            if (cur_.kind == Tok::KwTau) {
                shift();
                to = ActionLabel::tau();
            } else {
                to = ActionLabel::visible(action_name());
            }
            entries.emplace_back(std::move(from), std::move(to));
            if (cur_.kind != Tok::Comma) break;
            shift();
        }
        return Relabeling::make(std::move(entries));
    }

    // alpha-renaming: every rec binder gets a name unused by earlier binders
    std::string bind(const std::string& name) {
        std::string fresh = name;
        int suffix = 2;
        while (!used_.insert(fresh).second) fresh = name + std::to_string(suffix++);
        scopes_.push_back({name, fresh});
        return fresh;
    }

    bool bound(const std::string& name) const {
        for (const auto& s : scopes_)
            if (s.first == name) return true;
        return false;
    }

    std::string resolve(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->first == name) return it->second;
        return name;  // free variable; validation reports it
    }

    Lexer lexer_;
    Token cur_{Tok::End, "", 0, 0};
    Token next_{Tok::End, "", 0, 0};
    std::vector<std::pair<std::string, std::string>> scopes_;
    std::set<std::string> used_;
};

}  // namespace

TermPtr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace fase
