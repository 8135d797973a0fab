#pragma once

// JSON interchange format. A document is
//   {"field": "Q" | "Fp:<p>", "objects": {name: object, ...}}
// where every object carries a "type" and refers to other objects either
// by name or inline. Matrices are {"shape": [r, c], "rows": [[...]]} with
// entries as decimal strings ("1/2" over Q); a bare list of rows is also
// accepted on input. Emitted JSON has sorted keys.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coringlab/entwine.hpp"
#include "coringlab/separability.hpp"
#include "json.hpp"

namespace coringlab::io {

using json = nlohmann::json;

/// Unreadable, malformed or inconsistent input.
class ParseError : public Error {
 public:
  using Error::Error;
};

using Value = std::variant<alg::Algebra, alg::AlgebraHom, alg::Bimodule, coring::Coring, coring::RightComodule,
                           coring::LeftComodule, coring::Bicomodule, functors::CoringHom, entwine::Entwining,
                           entwine::EntwiningMorphism, sep::Certificate>;

/// The "type" tag of a value.
std::string type_name(const Value& v);

/// Named objects over one field.
class Workspace {
 public:
  Workspace(la::Field field, std::size_t max_dim = 64) : field_(field), max_dim_(max_dim) {}

  /// Reads and merges documents. A document without "field" uses
  /// `default_field`; all documents must agree.
  static Workspace load(const std::vector<std::string>& paths, std::optional<la::Field> default_field,
                        std::size_t max_dim);
  static Workspace from_json(const json& doc, std::optional<la::Field> default_field, std::size_t max_dim);

  la::Field field() const { return field_; }
  std::vector<std::string> names() const;
  bool contains(const std::string& name) const { return raw_.count(name) > 0; }

  /// Throws ParseError for unknown names, cycles and malformed objects.
  const Value& get(const std::string& name);

  template <class T>
  const T& get_as(const std::string& name, const std::string& expected) {
    const Value& v = get(name);
    if (const T* t = std::get_if<T>(&v)) return *t;
    throw ParseError("object '" + name + "' is a " + type_name(v) + ", expected " + expected);
  }

 private:
  void merge(const json& doc);
  Value build(const json& obj, const std::string& where);
  template <class T>
  T ref(const json& obj, const std::string& key, const std::string& where, const std::string& expected);

  la::Field field_;
  std::size_t max_dim_;
  std::map<std::string, json> raw_;
  std::map<std::string, Value> built_;
  std::set<std::string> resolving_;
};

json matrix_to_json(const la::Matrix& m);
json to_json(const Value& v);
json to_json(const ValidationReport& rep);
json to_json(const sep::SeparabilityReport& rep);

/// {"field": ..., "objects": {...}}.
json document(la::Field field, const std::map<std::string, Value>& objects);

/// Two-space indented text with a trailing newline.
std::string dump(const json& j);

/// Runs the validator matching the type of v.
ValidationReport validate(const Value& v);

}  // namespace coringlab::io
