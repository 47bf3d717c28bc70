#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "vbec/diagnostics.hpp"

namespace vbec::detail {

enum class TokKind {
    ident,
    string,
    integer,
    colon,
    comma,
    slash,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    end,
};

struct Token {
    TokKind kind = TokKind::end;
    std::string text;    // ident name or decoded string payload
    long long number = 0;
    SourceSpan span;
};

inline const char* token_kind_name(TokKind k) {
    switch (k) {
        case TokKind::ident: return "identifier";
        case TokKind::string: return "string";
        case TokKind::integer: return "integer";
        case TokKind::colon: return "':'";
        case TokKind::comma: return "','";
        case TokKind::slash: return "'/'";
        case TokKind::lbrace: return "'{'";
        case TokKind::rbrace: return "'}'";
        case TokKind::lbracket: return "'['";
        case TokKind::rbracket: return "']'";
        case TokKind::end: return "end of file";
    }
    return "?";
}

// Lexes the whole input. Bad characters, unterminated strings and unknown
// escapes become E015 diagnostics; the lexer never stops early.
class Lexer {
  public:
    Lexer(std::string_view source, std::string file)
        : src_(source), file_(std::move(file)) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (at_end()) break;
            SourceSpan start = here(0);
            char c = src_[pos_];
            if (c == '{') { out.push_back(punct(TokKind::lbrace)); continue; }
            if (c == '}') { out.push_back(punct(TokKind::rbrace)); continue; }
            if (c == '[') { out.push_back(punct(TokKind::lbracket)); continue; }
            if (c == ']') { out.push_back(punct(TokKind::rbracket)); continue; }
            if (c == ':') { out.push_back(punct(TokKind::colon)); continue; }
            if (c == ',') { out.push_back(punct(TokKind::comma)); continue; }
            if (c == '/') { out.push_back(punct(TokKind::slash)); continue; }
            if (c == '"') { out.push_back(lex_string(diags)); continue; }
            if (std::isdigit(static_cast<unsigned char>(c))) { out.push_back(lex_int(diags)); continue; }
            if (std::isalpha(static_cast<unsigned char>(c))) { out.push_back(lex_ident()); continue; }
            diags.push_back(make_diagnostic(
                "E015", std::string("unexpected character '") + c + "'", with_len(start, 1)));
            advance();
        }
        Token eof;
        eof.kind = TokKind::end;
        eof.span = here(0);
        out.push_back(eof);
        return out;
    }

  private:
    bool at_end() const { return pos_ >= src_.size(); }

    void advance() {
        if (at_end()) return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    SourceSpan here(int length) const {
        SourceSpan s;
        s.file = file_;
        s.line = line_;
        s.column = col_;
        s.length = length;
        s.offset = static_cast<int>(pos_);
        return s;
    }

    static SourceSpan with_len(SourceSpan s, int length) {
        s.length = length;
        return s;
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = src_[pos_];
            if (c == '#') {
                while (!at_end() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token punct(TokKind kind) {
        Token t;
        t.kind = kind;
        t.span = here(1);
        advance();
        return t;
    }

    Token lex_ident() {
        Token t;
        t.kind = TokKind::ident;
        t.span = here(0);
        size_t start = pos_;
        while (!at_end()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                advance();
            else
                break;
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        t.span.length = static_cast<int>(pos_ - start);
        return t;
    }

    Token lex_int(std::vector<Diagnostic>& diags) {
        Token t;
        t.kind = TokKind::integer;
        t.span = here(0);
        size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        std::string digits(src_.substr(start, pos_ - start));
        t.span.length = static_cast<int>(pos_ - start);
        if (digits.size() > 18) {
            diags.push_back(make_diagnostic("E015", "integer literal too large", t.span));
            t.number = 0;
        } else {
            t.number = std::stoll(digits);
        }
        return t;
    }

    // Strings are single-line; escapes: \" \\ \n \t
    Token lex_string(std::vector<Diagnostic>& diags) {
        Token t;
        t.kind = TokKind::string;
        t.span = here(0);
        size_t start = pos_;
        advance();  // opening quote
        while (true) {
            if (at_end() || src_[pos_] == '\n') {
                t.span.length = static_cast<int>(pos_ - start);
                diags.push_back(make_diagnostic("E015", "unterminated string", t.span));
                return t;
            }
            char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                SourceSpan esc = here(2);
                advance();
                if (at_end()) continue;
                char e = src_[pos_];
                switch (e) {
                    case '"': t.text += '"'; break;
                    case '\\': t.text += '\\'; break;
                    case 'n': t.text += '\n'; break;
                    case 't': t.text += '\t'; break;
                    default:
                        diags.push_back(make_diagnostic(
                            "E015", std::string("unknown escape '\\") + e + "'", esc));
                        break;
                }
                advance();
                continue;
            }
            t.text += c;
            advance();
        }
        t.span.length = static_cast<int>(pos_ - start);
        return t;
    }

    std::string_view src_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace vbec::detail
