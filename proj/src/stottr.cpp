#include "ottr/stottr.hpp"

#include "ottr/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ottr {

std::string to_string(const ParseDiagnostic& d) {
    return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

namespace {

std::string join_messages(const std::vector<ParseDiagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty()) out += "; ";
        out += to_string(d);
    }
    return out;
}

}  // namespace

ParseError::ParseError(std::vector<ParseDiagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

enum class Tok {
    Eof,
    PrefixKw,  // @prefix
    Name,      // label:local (local may be empty)
    IriRef,    // <...>, text holds the IRI
    Literal,   // text = lexical, aux = language or datatype name, aux_kind tells which
    Blank,     // _:label, text = label
    Variable,  // ?name, text = name
    Ident,     // bare identifier: none, cross, zipMin, zipMax, List
    QMark,
    Bang,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    DoubleColon,
    Pipe,
    Lt,
    Gt,
    Eq,
    PlusPlus,
};

enum class DatatypeKind { None, Lang, Name, IriRef };

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    std::string aux;
    DatatypeKind aux_kind = DatatypeKind::None;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct SyntaxError {
    ParseDiagnostic diagnostic;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::Eof: return "end of input";
        case Tok::PrefixKw: return "'@prefix'";
        case Tok::Name: return "name '" + t.text + "'";
        case Tok::IriRef: return "IRI <" + t.text + ">";
        case Tok::Literal: return "literal";
        case Tok::Blank: return "blank node _:" + t.text;
        case Tok::Variable: return "variable ?" + t.text;
        case Tok::Ident: return "'" + t.text + "'";
        default: return "'" + t.text + "'";
    }
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = column_;
        bool list_context = after_list_keyword_;
        after_list_keyword_ = false;
        if (pos_ >= text_.size()) return t;

        char c = peek();
        auto single = [&](Tok kind) {
            t.kind = kind;
            t.text = std::string(1, c);
            advance();
            return t;
        };
        switch (c) {
            case '[': return single(Tok::LBracket);
            case ']': return single(Tok::RBracket);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case '{': return single(Tok::LBrace);
            case '}': return single(Tok::RBrace);
            case ',': return single(Tok::Comma);
            case '.': return single(Tok::Dot);
            case '|': return single(Tok::Pipe);
            case '=': return single(Tok::Eq);
            case '!': return single(Tok::Bang);
            case '>': return single(Tok::Gt);
            default: break;
        }
        if (c == '<') {
            if (list_context) return single(Tok::Lt);
            t.kind = Tok::IriRef;
            t.text = lex_iriref();
            return t;
        }
        if (c == ':' && peek(1) == ':') {
            advance();
            advance();
            t.kind = Tok::DoubleColon;
            t.text = "::";
            return t;
        }
        if (c == '+' && peek(1) == '+') {
            advance();
            advance();
            t.kind = Tok::PlusPlus;
            t.text = "++";
            return t;
        }
        if (c == '@') {
            advance();
            std::string word = read_while(is_ident_char);
            if (word != "prefix") fail(t.line, t.column, "expected '@prefix'");
            t.kind = Tok::PrefixKw;
            t.text = "@prefix";
            return t;
        }
        if (c == '"') {
            lex_literal(t);
            return t;
        }
        if (c == '_' && peek(1) == ':') {
            advance();
            advance();
            if (!is_ident_start(peek())) fail(line_, column_, "expected blank node label");
            t.kind = Tok::Blank;
            t.text = read_while(is_ident_char);
            return t;
        }
        if (c == '?') {
            // `?name:local` is the optional modifier followed by a type name.
            std::size_t i = pos_ + 1;
            if (i < text_.size() && is_ident_start(text_[i])) {
                std::size_t j = i;
                while (j < text_.size() && is_ident_char(text_[j])) ++j;
                bool type_follows = j < text_.size() && text_[j] == ':' &&
                                    !(j + 1 < text_.size() && text_[j + 1] == ':');
                bool list_follows = j < text_.size() && text_[j] == '<' &&
                                    text_.substr(i, j - i) == "List";
                if (!type_follows && !list_follows) {
                    advance();
                    t.kind = Tok::Variable;
                    t.text = read_while(is_ident_char);
                    return t;
                }
            }
            return single(Tok::QMark);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word = read_while([](char ch) { return is_ident_char(ch) || ch == '-'; });
            if (peek() == ':' && peek(1) != ':') {
                advance();
                t.kind = Tok::Name;
                t.text = word + ":" + read_local();
                return t;
            }
            t.kind = Tok::Ident;
            t.text = word;
            if (word == "List") after_list_keyword_ = true;
            return t;
        }
        fail(t.line, t.column, std::string("unexpected character '") + c + "'");
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    template <typename Pred>
    std::string read_while(Pred pred) {
        std::string out;
        while (pos_ < text_.size() && pred(peek())) {
            out += peek();
            advance();
        }
        return out;
    }

    // Local names may contain '.', but not as the last character.
    std::string read_local() {
        std::size_t end = pos_;
        while (end < text_.size() && is_local_char(text_[end])) ++end;
        while (end > pos_ && text_[end - 1] == '.') --end;
        std::string out;
        while (pos_ < end) {
            out += peek();
            advance();
        }
        return out;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == '#') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string lex_iriref() {
        std::size_t line = line_, column = column_;
        advance();
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail(line, column, "unterminated IRI");
            char c = peek();
            if (c == '>') break;
            if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"')
                fail(line_, column_, "invalid character in IRI");
            out += c;
            advance();
        }
        advance();
        return out;
    }

    void lex_literal(Token& t) {
        advance();
        std::string lexical;
        while (true) {
            if (pos_ >= text_.size() || peek() == '\n') fail(t.line, t.column, "unterminated literal");
            char c = peek();
            if (c == '"') break;
            if (c == '\\') {
                std::size_t line = line_, column = column_;
                advance();
                char e = peek();
                switch (e) {
                    case '"': lexical += '"'; break;
                    case '\\': lexical += '\\'; break;
                    case 'n': lexical += '\n'; break;
                    case 'r': lexical += '\r'; break;
                    case 't': lexical += '\t'; break;
                    case 'u':
                    case 'U': {
                        std::size_t digits = e == 'u' ? 4 : 8;
                        advance();
                        std::string hex;
                        for (std::size_t i = 0; i < digits; ++i) {
                            if (!std::isxdigit(static_cast<unsigned char>(peek())))
                                fail(line, column, "UnknownEscape: malformed \\" + std::string(1, e) + " escape");
                            hex += peek();
                            advance();
                        }
                        append_utf8(lexical, std::stoul(hex, nullptr, 16));
                        continue;
                    }
                    default:
                        fail(line, column, std::string("UnknownEscape: \\") + (e ? std::string(1, e) : ""));
                }
                advance();
                continue;
            }
            lexical += c;
            advance();
        }
        advance();
        t.kind = Tok::Literal;
        t.text = std::move(lexical);
        if (peek() == '@') {
            advance();
            t.aux = read_while([](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-'; });
            if (t.aux.empty()) fail(line_, column_, "expected language tag");
            t.aux_kind = DatatypeKind::Lang;
        } else if (peek() == '^' && peek(1) == '^') {
            advance();
            advance();
            if (peek() == '<') {
                t.aux = lex_iriref();
                t.aux_kind = DatatypeKind::IriRef;
            } else {
                std::size_t line = line_, column = column_;
                std::string label = read_while([](char ch) { return is_ident_char(ch) || ch == '-'; });
                if (label.empty() || peek() != ':') fail(line, column, "expected datatype after '^^'");
                advance();
                t.aux = label + ":" + read_local();
                t.aux_kind = DatatypeKind::Name;
            }
        }
    }

    [[noreturn]] void fail(std::size_t line, std::size_t column, std::string message) {
        throw SyntaxError{ParseDiagnostic{line, column, std::move(message)}};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    bool after_list_keyword_ = false;
};

enum class FileKind { Library, Instances, SingleTerm };

class Parser {
public:
    Parser(std::string_view text, FileKind kind, PrefixMap prefixes)
        : lexer_(text), kind_(kind), prefixes_(std::move(prefixes)) {}

    void parse_file() {
        current_ = lexer_.next();
        while (current_.kind != Tok::Eof) {
            if (current_.kind == Tok::PrefixKw) {
                parse_prefix();
            } else {
                parse_statement();
            }
        }
    }

    Term parse_single_term() {
        current_ = lexer_.next();
        Term t = parse_arg(nullptr).term;
        if (current_.kind != Tok::Eof) syntax_error(current_, "unexpected " + describe(current_));
        return t;
    }

    ParamType parse_single_type() {
        current_ = lexer_.next();
        ParamType t = parse_type();
        if (current_.kind != Tok::Eof) syntax_error(current_, "unexpected " + describe(current_));
        return t;
    }

    PrefixMap& prefixes() { return prefixes_; }
    std::map<std::string, TemplateDefinition>& templates() { return templates_; }
    std::vector<Instance>& instances() { return instances_; }
    std::vector<ParseDiagnostic>& diagnostics() { return diagnostics_; }
    PrefixMap& declared() { return declared_; }

private:
    Token take() {
        Token t = std::move(current_);
        current_ = lexer_.next();
        return t;
    }

    bool accept(Tok kind) {
        if (current_.kind != kind) return false;
        take();
        return true;
    }

    Token expect(Tok kind, std::string_view what) {
        if (current_.kind != kind)
            syntax_error(current_, "expected " + std::string(what) + ", found " + describe(current_));
        return take();
    }

    [[noreturn]] void syntax_error(const Token& at, std::string message) {
        throw SyntaxError{ParseDiagnostic{at.line, at.column, std::move(message)}};
    }

    void report(const Token& at, std::string message) {
        diagnostics_.push_back(ParseDiagnostic{at.line, at.column, std::move(message)});
    }

    void parse_prefix() {
        Token kw = take();
        Token name = expect(Tok::Name, "prefix label");
        auto colon = name.text.find(':');
        std::string label = name.text.substr(0, colon);
        if (colon + 1 != name.text.size()) syntax_error(name, "expected 'label:' in prefix declaration");
        Token iri = expect(Tok::IriRef, "namespace IRI");
        expect(Tok::Dot, "'.'");
        if (!is_absolute_iri(iri.text)) {
            report(iri, "namespace is not an absolute IRI: " + iri.text);
            return;
        }
        try {
            prefixes_.declare(label, iri.text);
            declared_.declare(label, iri.text);
        } catch (const PrefixConflict& e) {
            report(kw, e.what());
        }
    }

    Iri resolve_name(const Token& t) {
        std::string_view text = t.text;
        auto colon = text.find(':');
        if (colon + 1 == text.size()) syntax_error(t, "expected local name after '" + t.text + "'");
        try {
            return resolve(text, prefixes_).as_iri();
        } catch (const UnboundPrefix& e) {
            report(t, "UnboundPrefix: " + e.label());
            return Iri{"urn:unbound:" + std::string(text)};
        }
    }

    Iri resolve_iriref(const Token& t) {
        if (!is_absolute_iri(t.text)) report(t, "IRI is not absolute: " + t.text);
        return Iri{t.text};
    }

    void parse_statement() {
        std::optional<ExpansionMode> mode;
        Token start = current_;
        if (current_.kind == Tok::Ident) {
            mode = expansion_keyword(current_);
            take();
            expect(Tok::Pipe, "'|'");
        }
        Token name = expect(Tok::Name, "template name");
        Iri iri = resolve_name(name);

        if (current_.kind == Tok::LBracket && !mode) {
            TemplateDefinition def = parse_template_rest(std::move(iri), name);
            if (kind_ != FileKind::Library) {
                report(start, "template definition not allowed in an instance file");
                return;
            }
            if (def.iri.value == triple_template_iri()) {
                report(name, "ottr:Triple is built in and must not be redefined");
                return;
            }
            auto key = def.iri.value;
            if (!templates_.emplace(key, std::move(def)).second)
                report(name, "duplicate template " + name.text);
            return;
        }
        Instance inst = parse_instance_rest(std::move(iri), mode, nullptr);
        expect(Tok::Dot, "'.'");
        if (kind_ == FileKind::Library) {
            report(start, "instances are not allowed in a template library");
            return;
        }
        instances_.push_back(std::move(inst));
    }

    ExpansionMode expansion_keyword(const Token& t) {
        if (t.text == "cross") return ExpansionMode::Cross;
        if (t.text == "zipMin") return ExpansionMode::ZipMin;
        if (t.text == "zipMax") return ExpansionMode::ZipMax;
        syntax_error(t, "unexpected " + describe(t));
    }

    TemplateDefinition parse_template_rest(Iri iri, const Token& name) {
        TemplateDefinition def;
        def.iri = std::move(iri);
        expect(Tok::LBracket, "'['");
        std::set<std::string> declared;
        if (current_.kind != Tok::RBracket) {
            do {
                Parameter p = parse_parameter();
                declared.insert(p.name);
                def.parameters.push_back(std::move(p));
            } while (accept(Tok::Comma));
        }
        expect(Tok::RBracket, "',' or ']'");
        if (accept(Tok::DoubleColon)) {
            expect(Tok::LBrace, "'{'");
            std::vector<Instance> body;
            if (current_.kind != Tok::RBrace) {
                do {
                    std::optional<ExpansionMode> mode;
                    if (current_.kind == Tok::Ident) {
                        mode = expansion_keyword(current_);
                        take();
                        expect(Tok::Pipe, "'|'");
                    }
                    Token callee = expect(Tok::Name, "template name");
                    body.push_back(parse_instance_rest(resolve_name(callee), mode, &declared));
                } while (accept(Tok::Comma));
            }
            expect(Tok::RBrace, "',' or '}'");
            def.body = std::move(body);
        }
        expect(Tok::Dot, "'.'");
        (void)name;
        return def;
    }

    Parameter parse_parameter() {
        Parameter p;
        while (current_.kind == Tok::QMark || current_.kind == Tok::Bang) {
            if (current_.kind == Tok::QMark) p.optional = true;
            else p.nonblank = true;
            take();
        }
        if (current_.kind == Tok::Name || (current_.kind == Tok::Ident && current_.text == "List")) {
            p.type = parse_type();
        }
        Token var = expect(Tok::Variable, "parameter variable");
        p.name = var.text;
        if (accept(Tok::Eq)) {
            Token at = current_;
            Argument a = parse_arg(nullptr);
            if (a.expand) report(at, "'++' not allowed in a default value");
            if (a.term.is_none()) report(at, "default value must not be none");
            p.default_value = std::move(a.term);
        }
        return p;
    }

    ParamType parse_type() {
        Token t = take();
        if (t.kind == Tok::Ident && t.text == "List") {
            expect(Tok::Lt, "'<'");
            ParamType element = parse_type();
            expect(Tok::Gt, "'>'");
            ParamType list = ParamType::list(std::move(element));
            if (list.list_depth() > 2) report(t, "list types nest at most two levels deep");
            return list;
        }
        if (t.kind != Tok::Name) syntax_error(t, "expected parameter type, found " + describe(t));
        std::string iri = resolve_name(t).value;
        if (iri == ottr_ns("IRI")) return ParamType::iri();
        if (iri == rdfs("Resource") || iri == ottr_ns("Top")) return ParamType::top();
        if (iri.starts_with(ns::xsd) || iri == rdfs("Literal") || iri == rdf("langString") ||
            iri == rdf("XMLLiteral") || iri == rdf("HTML"))
            return ParamType::literal(iri);
        report(t, "unknown parameter type " + t.text);
        return ParamType::top();
    }

    // `scope` is the set of declared variables in a template body, null elsewhere.
    Instance parse_instance_rest(Iri iri, std::optional<ExpansionMode> mode, const std::set<std::string>* scope) {
        Instance inst;
        inst.template_iri = std::move(iri);
        inst.expansion = mode;
        Token open = expect(Tok::LParen, "'('");
        if (current_.kind != Tok::RParen) {
            do {
                inst.arguments.push_back(parse_arg(scope));
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "',' or ')'");
        if (mode) {
            bool any = std::any_of(inst.arguments.begin(), inst.arguments.end(),
                                   [](const Argument& a) { return a.expand || a.term.is_list() || a.term.is_variable(); });
            if (!any) report(open, "expansion mode requires a list argument");
        } else if (std::any_of(inst.arguments.begin(), inst.arguments.end(),
                               [](const Argument& a) { return a.expand; })) {
            report(open, "'++' marker requires an expansion mode");
        }
        return inst;
    }

    Argument parse_arg(const std::set<std::string>* scope) {
        Argument a;
        if (accept(Tok::PlusPlus)) a.expand = true;
        Token t = take();
        switch (t.kind) {
            case Tok::Name: a.term = Term(resolve_name(t)); break;
            case Tok::IriRef: a.term = Term(resolve_iriref(t)); break;
            case Tok::Blank: a.term = Term::blank(t.text); break;
            case Tok::Literal: a.term = make_literal(t); break;
            case Tok::Variable:
                if (!scope) {
                    report(t, "variable ?" + t.text + " outside a template body");
                } else if (!scope->count(t.text)) {
                    report(t, "undeclared variable ?" + t.text);
                }
                a.term = Term::variable(t.text);
                break;
            case Tok::Ident:
                if (t.text != "none") syntax_error(t, "unexpected " + describe(t));
                a.term = Term::none();
                break;
            case Tok::LParen: {
                std::vector<Term> items;
                if (current_.kind != Tok::RParen) {
                    do {
                        Token at = current_;
                        Argument item = parse_arg(scope);
                        if (item.expand) report(at, "'++' not allowed inside a list");
                        items.push_back(std::move(item.term));
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RParen, "',' or ')'");
                a.term = Term::list(std::move(items));
                break;
            }
            default: syntax_error(t, "expected argument, found " + describe(t));
        }
        return a;
    }

    Term make_literal(const Token& t) {
        switch (t.aux_kind) {
            case DatatypeKind::None: return Term::literal(t.text);
            case DatatypeKind::Lang: return Term::lang_literal(t.text, t.aux);
            case DatatypeKind::IriRef: return Term::literal(t.text, t.aux);
            case DatatypeKind::Name: {
                Token dt = t;
                dt.text = t.aux;
                return Term::literal(t.text, resolve_name(dt).value);
            }
        }
        return Term::literal(t.text);
    }

    Lexer lexer_;
    FileKind kind_;
    Token current_;
    PrefixMap prefixes_;
    PrefixMap declared_;
    std::map<std::string, TemplateDefinition> templates_;
    std::vector<Instance> instances_;
    std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

ParseResult<Library> parse_library(std::string_view text) {
    ParseResult<Library> result;
    Parser parser(text, FileKind::Library, PrefixMap{});
    try {
        parser.parse_file();
    } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
        return result;
    }
    if (!parser.diagnostics().empty()) {
        result.diagnostics = std::move(parser.diagnostics());
        return result;
    }
    result.value = Library{std::move(parser.declared()), std::move(parser.templates())};
    return result;
}

ParseResult<InstanceFile> parse_instance_file(std::string_view text, const Library& prefixes_from) {
    ParseResult<InstanceFile> result;
    Parser parser(text, FileKind::Instances, prefixes_from.prefixes);
    try {
        parser.parse_file();
    } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
        return result;
    }
    if (!parser.diagnostics().empty()) {
        result.diagnostics = std::move(parser.diagnostics());
        return result;
    }
    result.value = InstanceFile{std::move(parser.prefixes()), std::move(parser.instances())};
    return result;
}

ParseResult<std::vector<Instance>> parse_instances(std::string_view text, const Library& prefixes_from) {
    auto file = parse_instance_file(text, prefixes_from);
    ParseResult<std::vector<Instance>> result;
    result.diagnostics = std::move(file.diagnostics);
    if (file.value) result.value = std::move(file.value->instances);
    return result;
}

Term parse_term(std::string_view text, const PrefixMap& prefixes) {
    Parser parser(text, FileKind::SingleTerm, prefixes);
    Term term;
    try {
        term = parser.parse_single_term();
    } catch (const SyntaxError& e) {
        throw ParseError({e.diagnostic});
    }
    if (!parser.diagnostics().empty()) throw ParseError(parser.diagnostics());
    return term;
}

ParamType parse_param_type(std::string_view text, const PrefixMap& prefixes) {
    Parser parser(text, FileKind::SingleTerm, prefixes);
    std::optional<ParamType> type;
    try {
        type = parser.parse_single_type();
    } catch (const SyntaxError& e) {
        throw ParseError({e.diagnostic});
    }
    if (!parser.diagnostics().empty()) throw ParseError(parser.diagnostics());
    return *type;
}

std::string serialize_term(const Term& term, const PrefixMap& prefixes) {
    if (term.is_iri()) return compact_or_bracket(term.as_iri().value, prefixes);
    if (term.is_literal()) {
        const Literal& lit = term.as_literal();
        std::string out = "\"" + escape_string(lit.lexical) + "\"";
        if (!lit.language.empty()) return out + "@" + lit.language;
        if (lit.datatype == xsd("string")) return out;
        return out + "^^" + compact_or_bracket(lit.datatype, prefixes);
    }
    if (term.is_blank()) return "_:" + term.as_blank().label;
    if (term.is_variable()) return "?" + term.as_variable().name;
    if (term.is_none()) return "none";
    std::string out = "(";
    const auto& items = term.as_list().items;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += serialize_term(items[i], prefixes);
    }
    return out + ")";
}

std::string serialize_instance(const Instance& instance, const PrefixMap& prefixes) {
    std::string out;
    if (instance.expansion) out += std::string(to_string(*instance.expansion)) + " | ";
    out += compact_or_bracket(instance.template_iri.value, prefixes);
    out += "(";
    for (std::size_t i = 0; i < instance.arguments.size(); ++i) {
        if (i) out += ", ";
        if (instance.arguments[i].expand) out += "++";
        out += serialize_term(instance.arguments[i].term, prefixes);
    }
    return out + ")";
}

namespace {

std::string serialize_prefixes(const PrefixMap& prefixes) {
    std::string out;
    for (const auto& [label, ns] : prefixes.bindings()) out += "@prefix " + label + ": <" + ns + "> .\n";
    return out;
}

std::string serialize_parameter(const Parameter& p, const PrefixMap& prefixes) {
    std::string out;
    if (p.optional) out += "?";
    if (p.nonblank) out += "!";
    if (!out.empty()) out += " ";
    if (p.type.kind() != ParamType::Kind::Top) out += to_string(p.type, prefixes) + " ";
    out += "?" + p.name;
    if (p.default_value) out += " = " + serialize_term(*p.default_value, prefixes);
    return out;
}

}  // namespace

std::string serialize_library(const Library& library) {
    std::ostringstream out;
    out << serialize_prefixes(library.prefixes);
    for (const auto& [iri, def] : library.templates) {
        out << "\n" << compact_or_bracket(iri, library.prefixes) << "[";
        for (std::size_t i = 0; i < def.parameters.size(); ++i) {
            if (i) out << ", ";
            out << serialize_parameter(def.parameters[i], library.prefixes);
        }
        out << "]";
        if (def.body) {
            if (def.body->empty()) {
                out << " :: { }";
            } else {
                out << " :: {\n";
                for (std::size_t i = 0; i < def.body->size(); ++i) {
                    out << "    " << serialize_instance((*def.body)[i], library.prefixes);
                    out << (i + 1 < def.body->size() ? ",\n" : "\n");
                }
                out << "}";
            }
        }
        out << " .\n";
    }
    return out.str();
}

std::string serialize_instances(const std::vector<Instance>& instances, const PrefixMap& prefixes,
                                bool with_prefixes) {
    std::string out = with_prefixes ? serialize_prefixes(prefixes) : std::string{};
    if (with_prefixes && !prefixes.empty() && !instances.empty()) out += "\n";
    for (const auto& inst : instances) out += serialize_instance(inst, prefixes) + " .\n";
    return out;
}

}  // namespace ottr
