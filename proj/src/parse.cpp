#include "rfi/parse.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace rfi {

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, const NumberField* field, std::map<char, int> vars,
               bool allow_generator, int line)
        : s_(text), field_(field), vars_(std::move(vars)), allow_gen_(allow_generator), line_(line) {}

    Form parse() {
        Form f = expr();
        skip_ws();
        if (pos_ < s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_ > 0 ? line_ : 1, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool starts_factor(char c) const {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || vars_.count(c) ||
               (allow_gen_ && c == 'a');
    }

    Form expr() {
        Form f = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                f += term();
            } else if (c == '-') {
                ++pos_;
                f -= term();
            } else {
                return f;
            }
        }
    }

    Form term() {
        Form f = unary();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                f *= unary();
            } else if (c == '/') {
                ++pos_;
                size_t at = pos_;
                Form d = unary();
                if (d.is_zero() || !d.is_constant()) {
                    pos_ = at;
                    fail(d.is_zero() ? "division by zero" : "division by a non-constant");
                }
                f = f * d.coeff({}).inverse();
            } else if (starts_factor(c)) {
                f *= unary();
            } else {
                return f;
            }
        }
    }

    Form unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Form power() {
        Form base = primary();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a non-negative integer exponent");
            int n = std::stoi(s_.substr(start, pos_ - start));
            return base.pow(n);
        }
        return base;
    }

    Form primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Form f = expr();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            Rational q(s_.substr(start, pos_ - start));
            return Form::constant(field_, q);
        }
        if (vars_.count(c)) {
            ++pos_;
            return Form::variable(field_, vars_.at(c));
        }
        if (c == 'a') {
            if (!allow_gen_)
                fail("generator 'a' used without a field declaration");
            ++pos_;
            return Form::constant(FieldElement::generator(field_));
        }
        if (c == '\0')
            fail("unexpected end of expression");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    size_t pos_ = 0;
    const NumberField* field_;
    std::map<char, int> vars_;
    bool allow_gen_;
    int line_;
};

std::string strip_comment(const std::string& line) {
    auto p = line.find('#');
    return p == std::string::npos ? line : line.substr(0, p);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Form parse_form(const std::string& text, const NumberField* field, int line) {
    return ExprParser(text, field, {{'X', 0}, {'Y', 1}, {'Z', 2}}, !field->is_rationals(), line).parse();
}

FieldElement parse_field_element(const std::string& text, const NumberField* field, int line) {
    Form f = ExprParser(text, field, {}, !field->is_rationals(), line).parse();
    return f.coeff({});
}

const NumberField* parse_field(const std::string& text, int line) {
    const NumberField* q = NumberField::rationals();
    Form f = ExprParser(text, q, {{'t', 0}}, false, line).parse();
    int d = f.degree_in(0);
    if (d < 1 || f.degree_in(1) > 0 || f.degree_in(2) > 0)
        throw ParseError("field polynomial must be a non-constant polynomial in t", line, 1);
    std::vector<Rational> c(d + 1);
    for (const auto& [e, x] : f.terms())
        c[e[0]] = x.rational_value();
    if (c.back() != 1)
        throw ParseError("field polynomial must be monic", line, 1);
    return NumberField::from_minimal_polynomial(c);
}

FoliationInput parse_foliation(const std::string& text) {
    struct Statement {
        std::string key;
        std::string body;
        int line;
    };
    std::vector<Statement> st;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line.rfind("field:", 0) == 0) {
            st.push_back({"field", line.substr(6), lineno});
            continue;
        }
        if (line.size() >= 2 && (line[0] == 'A' || line[0] == 'B' || line[0] == 'C')) {
            std::string rest = trim(line.substr(1));
            if (!rest.empty() && rest[0] == '=') {
                st.push_back({std::string(1, line[0]), rest.substr(1), lineno});
                continue;
            }
        }
        if (st.empty() || st.back().key == "field")
            throw ParseError("expected 'field:', 'A =', 'B =' or 'C ='", lineno, 1);
        st.back().body += " " + line;
    }
    FoliationInput out;
    out.field = NumberField::rationals();
    for (const auto& s : st)
        if (s.key == "field")
            out.field = parse_field(s.body, s.line);
    std::map<std::string, Form> comps;
    for (const auto& s : st) {
        if (s.key == "field")
            continue;
        if (comps.count(s.key))
            throw ParseError("component " + s.key + " given twice", s.line, 1);
        comps[s.key] = parse_form(s.body, out.field, s.line);
    }
    for (const char* k : {"A", "B", "C"})
        if (!comps.count(k))
            throw ParseError(std::string("missing component ") + k);
    out.omega = OneForm(comps["A"], comps["B"], comps["C"]);
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FoliationInput read_foliation(const std::string& path) { return parse_foliation(read_text_file(path)); }

std::string format_foliation(const OneForm& omega) {
    std::string out;
    if (!omega.field()->is_rationals())
        out += "field: " + omega.field()->to_string() + "\n";
    out += "A = " + to_string(omega.A()) + "\n";
    out += "B = " + to_string(omega.B()) + "\n";
    out += "C = " + to_string(omega.C()) + "\n";
    return out;
}

} // namespace rfi
