#pragma once

// Minimal TOML subset used for deployment files and experiment configs:
// [section] headers, key = value pairs, #-comments, and values of type
// string, bool, integer, float and (possibly nested, possibly multi-line)
// array. No dotted keys, no inline tables, no table arrays.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace greenwifi::toml {

class Value;
using Array = std::vector<Value>;

class Value {
  public:
    enum class Kind { boolean, integer, floating, string, array };

    Value() : kind_(Kind::integer), int_(0) {}
    explicit Value(bool b) : kind_(Kind::boolean), bool_(b) {}
    explicit Value(std::int64_t i) : kind_(Kind::integer), int_(i) {}
    explicit Value(double d) : kind_(Kind::floating), float_(d) {}
    explicit Value(std::string s) : kind_(Kind::string), str_(std::move(s)) {}
    explicit Value(Array a) : kind_(Kind::array), array_(std::move(a)) {}

    Kind kind() const { return kind_; }

    bool as_bool() const;
    std::int64_t as_int() const;
    double as_double() const;  // accepts integer values too
    const std::string& as_string() const;
    const Array& as_array() const;

  private:
    Kind kind_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double float_ = 0.0;
    std::string str_;
    Array array_;
};

/// Insertion-ordered key/value table; one per [section].
class Table {
  public:
    void set(const std::string& key, Value v);
    bool contains(const std::string& key) const;
    const Value& at(const std::string& key) const;

    bool get_bool(const std::string& key, bool fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::vector<std::pair<std::string, Value>>& items() const { return items_; }

  private:
    std::vector<std::pair<std::string, Value>> items_;
};

/// A parsed document: insertion-ordered sections. Keys written before any
/// [section] header live in the unnamed section "".
class Document {
  public:
    Table& section(const std::string& name);
    const Table* find_section(const std::string& name) const;
    const Table& require_section(const std::string& name) const;

    const std::vector<std::pair<std::string, Table>>& sections() const { return sections_; }

    std::string serialize() const;

  private:
    std::vector<std::pair<std::string, Table>> sections_;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);
void write_file(const Document& doc, const std::string& path);

/// Formats a double the way the writer does (shortest round-trip form).
std::string format_double(double v);

}  // namespace greenwifi::toml
