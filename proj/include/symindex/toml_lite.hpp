#pragma once

// Minimal TOML reader covering the config schemas this tool uses: table headers,
// arrays of tables, bare keys, strings, integers, floats, booleans, (nested)
// arrays and inline tables. Anything outside that subset is a parse error with
// a line number. Schema strictness (unknown-key rejection) is enforced by the
// accessors below, not by the parser.

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "symindex/errors.hpp"

namespace symindex::toml {

class Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

class Value {
public:
    enum class Type { Table, Array, String, Integer, Float, Boolean };

    Value() : type_(Type::Table) {}
    static Value make_table() { return Value(); }
    static Value make_array() { Value v; v.type_ = Type::Array; return v; }
    static Value make_string(std::string s) { Value v; v.type_ = Type::String; v.str_ = std::move(s); return v; }
    static Value make_integer(long long i) { Value v; v.type_ = Type::Integer; v.int_ = i; return v; }
    static Value make_float(double d) { Value v; v.type_ = Type::Float; v.float_ = d; return v; }
    static Value make_boolean(bool b) { Value v; v.type_ = Type::Boolean; v.bool_ = b; return v; }

    Type type() const { return type_; }
    bool is_table() const { return type_ == Type::Table; }
    bool is_array() const { return type_ == Type::Array; }
    bool is_string() const { return type_ == Type::String; }
    bool is_integer() const { return type_ == Type::Integer; }
    bool is_float() const { return type_ == Type::Float; }
    bool is_number() const { return is_integer() || is_float(); }
    bool is_boolean() const { return type_ == Type::Boolean; }

    Table& table() { require(Type::Table, "table"); return table_; }
    const Table& table() const { require(Type::Table, "table"); return table_; }
    Array& array() { require(Type::Array, "array"); return array_; }
    const Array& array() const { require(Type::Array, "array"); return array_; }

    const std::string& as_string() const { require(Type::String, "string"); return str_; }
    long long as_integer() const { require(Type::Integer, "integer"); return int_; }
    double as_double() const {
        if (type_ == Type::Integer) return static_cast<double>(int_);
        require(Type::Float, "float");
        return float_;
    }
    bool as_boolean() const { require(Type::Boolean, "boolean"); return bool_; }

    bool has(const std::string& key) const { return is_table() && table_.count(key) > 0; }

    const Value& at(const std::string& key) const {
        auto it = table().find(key);
        if (it == table_.end()) throw ValidationError("missing required key '" + key + "'");
        return it->second;
    }

    // Strict-schema gate: every present key must be in `allowed`.
    void check_keys(const std::set<std::string>& allowed, const std::string& context) const {
        for (const auto& [k, v] : table()) {
            if (!allowed.count(k))
                throw ValidationError("unknown key '" + k + "' in " + context);
        }
    }

private:
    void require(Type t, const char* name) const {
        if (type_ != t) throw ValidationError(std::string("TOML value is not a ") + name);
    }

    Type type_;
    Table table_;
    Array array_;
    std::string str_;
    long long int_ = 0;
    double float_ = 0.0;
    bool bool_ = false;
};

namespace detail {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line;

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    char get() { return pos < s.size() ? s[pos++] : '\0'; }
    bool eof() const { return pos >= s.size(); }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("TOML parse error at line " + std::to_string(line) + ": " + msg);
    }
};

inline bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

inline std::string parse_bare_key(Cursor& c) {
    std::string k;
    while (is_bare_key_char(c.peek())) k.push_back(c.get());
    if (k.empty()) c.fail("expected key");
    return k;
}

Value parse_value(Cursor& c); // fwd

inline Value parse_string(Cursor& c) {
    if (c.get() != '"') c.fail("expected '\"'");
    std::string out;
    while (true) {
        char ch = c.get();
        if (ch == '\0') c.fail("unterminated string");
        if (ch == '"') break;
        if (ch == '\\') {
            char esc = c.get();
            switch (esc) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: c.fail("unsupported escape sequence");
            }
        } else {
            out.push_back(ch);
        }
    }
    return Value::make_string(std::move(out));
}

inline Value parse_number(Cursor& c) {
    std::string tok;
    while (!c.eof()) {
        char ch = c.peek();
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-' ||
            ch == '.' || ch == 'e' || ch == 'E') {
            tok.push_back(c.get());
        } else {
            break;
        }
    }
    if (tok.empty()) c.fail("expected number");
    const bool is_float = tok.find_first_of(".eE") != std::string::npos;
    try {
        if (is_float) return Value::make_float(std::stod(tok));
        return Value::make_integer(std::stoll(tok));
    } catch (const std::exception&) {
        c.fail("bad number '" + tok + "'");
    }
}

inline Value parse_array(Cursor& c) {
    if (c.get() != '[') c.fail("expected '['");
    Value arr = Value::make_array();
    c.skip_ws();
    if (c.peek() == ']') { c.get(); return arr; }
    while (true) {
        c.skip_ws();
        arr.array().push_back(parse_value(c));
        c.skip_ws();
        char ch = c.get();
        if (ch == ']') break;
        if (ch != ',') c.fail("expected ',' or ']' in array");
        c.skip_ws();
        if (c.peek() == ']') { c.get(); break; } // trailing comma
    }
    return arr;
}

inline Value parse_inline_table(Cursor& c) {
    if (c.get() != '{') c.fail("expected '{'");
    Value tbl = Value::make_table();
    c.skip_ws();
    if (c.peek() == '}') { c.get(); return tbl; }
    while (true) {
        c.skip_ws();
        std::string key = parse_bare_key(c);
        c.skip_ws();
        if (c.get() != '=') c.fail("expected '=' in inline table");
        c.skip_ws();
        if (tbl.table().count(key)) c.fail("duplicate key '" + key + "'");
        tbl.table().emplace(key, parse_value(c));
        c.skip_ws();
        char ch = c.get();
        if (ch == '}') break;
        if (ch != ',') c.fail("expected ',' or '}' in inline table");
    }
    return tbl;
}

inline Value parse_value(Cursor& c) {
    c.skip_ws();
    char ch = c.peek();
    if (ch == '"') return parse_string(c);
    if (ch == '[') return parse_array(c);
    if (ch == '{') return parse_inline_table(c);
    if (c.s.compare(c.pos, 4, "true") == 0 && !is_bare_key_char(c.pos + 4 < c.s.size() ? c.s[c.pos + 4] : ' ')) {
        c.pos += 4;
        return Value::make_boolean(true);
    }
    if (c.s.compare(c.pos, 5, "false") == 0 && !is_bare_key_char(c.pos + 5 < c.s.size() ? c.s[c.pos + 5] : ' ')) {
        c.pos += 5;
        return Value::make_boolean(false);
    }
    return parse_number(c);
}

// Strips comments and reports whether the remainder is blank. Quotes guard '#'.
inline std::string strip_comment(const std::string& line) {
    std::string out;
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (ch == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
        if (ch == '#' && !in_str) break;
        out.push_back(ch);
    }
    return out;
}

inline int bracket_balance(const std::string& s) {
    int bal = 0;
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (in_str) continue;
        if (ch == '[' || ch == '{') ++bal;
        if (ch == ']' || ch == '}') --bal;
    }
    return bal;
}

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_dotted(const std::string& path, int line) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : path) {
        if (ch == '.') {
            if (cur.empty())
                throw ValidationError("TOML parse error at line " + std::to_string(line) + ": empty table-name part");
            parts.push_back(cur);
            cur.clear();
        } else if (is_bare_key_char(ch)) {
            cur.push_back(ch);
        } else if (ch == ' ' || ch == '\t') {
            // ignore
        } else {
            throw ValidationError("TOML parse error at line " + std::to_string(line) +
                                  ": bad character in table name");
        }
    }
    if (cur.empty())
        throw ValidationError("TOML parse error at line " + std::to_string(line) + ": empty table name");
    parts.push_back(cur);
    return parts;
}

} // namespace detail

inline Value parse(const std::string& text) {
    using namespace detail;
    Value root = Value::make_table();
    Value* current = &root;

    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') { lines.push_back(cur); cur.clear(); }
            else cur.push_back(ch);
        }
        lines.push_back(cur);
    }

    for (size_t li = 0; li < lines.size(); ++li) {
        int line_no = static_cast<int>(li) + 1;
        std::string line = trim(strip_comment(lines[li]));
        if (line.empty()) continue;

        if (line[0] == '[') {
            const bool is_aot = line.size() > 1 && line[1] == '[';
            const std::string closer = is_aot ? "]]" : "]";
            size_t close = line.rfind(closer);
            if (close == std::string::npos || trim(line.substr(close + closer.size())) != "")
                throw ValidationError("TOML parse error at line " + std::to_string(line_no) +
                                      ": malformed table header");
            std::string name = line.substr(is_aot ? 2 : 1, close - (is_aot ? 2 : 1));
            auto parts = split_dotted(name, line_no);
            Value* node = &root;
            for (size_t i = 0; i < parts.size(); ++i) {
                const bool last = (i + 1 == parts.size());
                auto& tbl = node->table();
                auto it = tbl.find(parts[i]);
                if (last && is_aot) {
                    if (it == tbl.end()) it = tbl.emplace(parts[i], Value::make_array()).first;
                    if (!it->second.is_array())
                        throw ValidationError("TOML parse error at line " + std::to_string(line_no) +
                                              ": '" + parts[i] + "' is not an array of tables");
                    it->second.array().push_back(Value::make_table());
                    node = &it->second.array().back();
                } else {
                    if (it == tbl.end()) it = tbl.emplace(parts[i], Value::make_table()).first;
                    Value& v = it->second;
                    if (v.is_array()) {
                        if (v.array().empty())
                            throw ValidationError("TOML parse error at line " + std::to_string(line_no) +
                                                  ": empty array of tables '" + parts[i] + "'");
                        node = &v.array().back();
                    } else if (v.is_table()) {
                        node = &v;
                    } else {
                        throw ValidationError("TOML parse error at line " + std::to_string(line_no) +
                                              ": key '" + parts[i] + "' is not a table");
                    }
                }
            }
            current = node;
            continue;
        }

        // key = value, possibly spanning lines via unbalanced brackets
        while (bracket_balance(line) > 0 && li + 1 < lines.size()) {
            ++li;
            line += " " + trim(strip_comment(lines[li]));
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("TOML parse error at line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        for (char ch : key)
            if (!is_bare_key_char(ch))
                throw ValidationError("TOML parse error at line " + std::to_string(line_no) +
                                      ": bad key '" + key + "'");
        std::string rhs = trim(line.substr(eq + 1));
        if (rhs.empty())
            throw ValidationError("TOML parse error at line " + std::to_string(line_no) + ": missing value for '" +
                                  key + "'");
        Cursor c{rhs, 0, line_no};
        Value v = parse_value(c);
        c.skip_ws();
        if (!c.eof()) c.fail("trailing characters after value for '" + key + "'");
        if (current->table().count(key))
            throw ValidationError("TOML parse error at line " + std::to_string(line_no) + ": duplicate key '" + key +
                                  "'");
        current->table().emplace(key, std::move(v));
    }
    return root;
}

} // namespace symindex::toml
