#include "greenwifi/toml.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace greenwifi::toml {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("toml parse error at line " + std::to_string(line) + ": " + msg);
}

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char get() {
        char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }
    // Skips spaces and tabs only.
    void skip_blank() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
    }
    // Skips blanks, comments and newlines.
    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else if (c == '\n') {
                get();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }
};

Value parse_value(Cursor& cur);

Value parse_string(Cursor& cur) {
    cur.get();  // opening quote
    std::string out;
    while (true) {
        if (cur.eof()) fail(cur.line, "unterminated string");
        char c = cur.get();
        if (c == '"') break;
        if (c == '\\') {
            if (cur.eof()) fail(cur.line, "unterminated escape");
            char e = cur.get();
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: fail(cur.line, std::string("unsupported escape \\") + e);
            }
        } else if (c == '\n') {
            fail(cur.line - 1, "newline in string");
        } else {
            out += c;
        }
    }
    return Value(std::move(out));
}

Value parse_array(Cursor& cur) {
    cur.get();  // '['
    Array items;
    while (true) {
        cur.skip_ws_and_comments();
        if (cur.eof()) fail(cur.line, "unterminated array");
        if (cur.peek() == ']') {
            cur.get();
            break;
        }
        items.push_back(parse_value(cur));
        cur.skip_ws_and_comments();
        if (cur.eof()) fail(cur.line, "unterminated array");
        if (cur.peek() == ',') {
            cur.get();
        } else if (cur.peek() != ']') {
            fail(cur.line, "expected ',' or ']' in array");
        }
    }
    return Value(std::move(items));
}

Value parse_scalar(Cursor& cur) {
    std::string tok;
    while (!cur.eof()) {
        char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == ']' || c == '#') break;
        tok += cur.get();
    }
    if (tok.empty()) fail(cur.line, "expected a value");
    if (tok == "true") return Value(true);
    if (tok == "false") return Value(false);

    bool looks_float = tok.find_first_of(".eE") != std::string::npos ||
                       tok == "inf" || tok == "-inf" || tok == "+inf" ||
                       tok == "nan";
    if (!looks_float) {
        std::int64_t iv = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (ec == std::errc() && p == tok.data() + tok.size()) return Value(iv);
    }
    try {
        std::size_t used = 0;
        double dv = std::stod(tok, &used);
        if (used == tok.size()) return Value(dv);
    } catch (const std::exception&) {
    }
    fail(cur.line, "cannot parse value '" + tok + "'");
}

Value parse_value(Cursor& cur) {
    char c = cur.peek();
    if (c == '"') return parse_string(cur);
    if (c == '[') return parse_array(cur);
    return parse_scalar(cur);
}

void append_value(std::string& out, const Value& v) {
    switch (v.kind()) {
        case Value::Kind::boolean:
            out += v.as_bool() ? "true" : "false";
            break;
        case Value::Kind::integer:
            out += std::to_string(v.as_int());
            break;
        case Value::Kind::floating:
            out += format_double(v.as_double());
            break;
        case Value::Kind::string:
            out += '"';
            for (char c : v.as_string()) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
            break;
        case Value::Kind::array: {
            out += '[';
            const auto& items = v.as_array();
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i) out += ", ";
                append_value(out, items[i]);
            }
            out += ']';
            break;
        }
    }
}

}  // namespace

bool Value::as_bool() const {
    if (kind_ != Kind::boolean) throw ParseError("value is not a boolean");
    return bool_;
}

std::int64_t Value::as_int() const {
    if (kind_ != Kind::integer) throw ParseError("value is not an integer");
    return int_;
}

double Value::as_double() const {
    if (kind_ == Kind::floating) return float_;
    if (kind_ == Kind::integer) return static_cast<double>(int_);
    throw ParseError("value is not a number");
}

const std::string& Value::as_string() const {
    if (kind_ != Kind::string) throw ParseError("value is not a string");
    return str_;
}

const Array& Value::as_array() const {
    if (kind_ != Kind::array) throw ParseError("value is not an array");
    return array_;
}

void Table::set(const std::string& key, Value v) {
    for (auto& [k, existing] : items_) {
        if (k == key) {
            existing = std::move(v);
            return;
        }
    }
    items_.emplace_back(key, std::move(v));
}

bool Table::contains(const std::string& key) const {
    for (const auto& [k, v] : items_)
        if (k == key) return true;
    return false;
}

const Value& Table::at(const std::string& key) const {
    for (const auto& [k, v] : items_)
        if (k == key) return v;
    throw ParseError("missing key '" + key + "'");
}

bool Table::get_bool(const std::string& key, bool fallback) const {
    return contains(key) ? at(key).as_bool() : fallback;
}
std::int64_t Table::get_int(const std::string& key, std::int64_t fallback) const {
    return contains(key) ? at(key).as_int() : fallback;
}
double Table::get_double(const std::string& key, double fallback) const {
    return contains(key) ? at(key).as_double() : fallback;
}
std::string Table::get_string(const std::string& key, const std::string& fallback) const {
    return contains(key) ? at(key).as_string() : fallback;
}

Table& Document::section(const std::string& name) {
    for (auto& [n, t] : sections_)
        if (n == name) return t;
    sections_.emplace_back(name, Table{});
    return sections_.back().second;
}

const Table* Document::find_section(const std::string& name) const {
    for (const auto& [n, t] : sections_)
        if (n == name) return &t;
    return nullptr;
}

const Table& Document::require_section(const std::string& name) const {
    const Table* t = find_section(name);
    if (!t) throw ParseError("missing section [" + name + "]");
    return *t;
}

std::string Document::serialize() const {
    std::string out;
    bool first = true;
    for (const auto& [name, table] : sections_) {
        if (!first) out += '\n';
        first = false;
        if (!name.empty()) {
            out += '[';
            out += name;
            out += "]\n";
        }
        for (const auto& [key, value] : table.items()) {
            out += key;
            out += " = ";
            append_value(out, value);
            out += '\n';
        }
    }
    return out;
}

Document parse(const std::string& text) {
    Document doc;
    Cursor cur{text};
    std::string current_section;
    while (true) {
        cur.skip_ws_and_comments();
        if (cur.eof()) break;
        char c = cur.peek();
        if (c == '[') {
            cur.get();
            std::string name;
            while (!cur.eof() && cur.peek() != ']' && cur.peek() != '\n') name += cur.get();
            if (cur.eof() || cur.peek() != ']') fail(cur.line, "unterminated section header");
            cur.get();
            if (name.empty()) fail(cur.line, "empty section name");
            current_section = name;
            doc.section(current_section);
            continue;
        }
        std::string key;
        while (!cur.eof() && is_bare_key_char(cur.peek())) key += cur.get();
        if (key.empty()) fail(cur.line, "expected a key");
        cur.skip_blank();
        if (cur.eof() || cur.peek() != '=') fail(cur.line, "expected '=' after key '" + key + "'");
        cur.get();
        cur.skip_blank();
        if (cur.eof()) fail(cur.line, "expected a value for key '" + key + "'");
        Value v = parse_value(cur);
        doc.section(current_section).set(key, std::move(v));
        cur.skip_blank();
        if (!cur.eof() && cur.peek() == '#')
            while (!cur.eof() && cur.peek() != '\n') cur.get();
        if (!cur.eof() && cur.peek() == '\r') cur.get();
        if (!cur.eof() && cur.peek() != '\n') fail(cur.line, "trailing characters after value of '" + key + "'");
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void write_file(const Document& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << doc.serialize();
}

std::string format_double(double v) {
    char buf[64];
    // Shortest representation that round-trips a double.
    std::snprintf(buf, sizeof buf, "%.17g", v);
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[64];
        std::snprintf(cand, sizeof cand, "%.*g", prec, v);
        if (std::stod(cand) == v) {
            std::copy(cand, cand + sizeof cand, buf);
            break;
        }
    }
    std::string s(buf);
    // Ensure the token re-parses as a float, not an integer.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace greenwifi::toml
