#include "coringlab/io.hpp"

#include <fstream>
#include <sstream>

namespace coringlab::io {

using alg::Algebra;
using alg::AlgebraHom;
using alg::Bimodule;
using coring::Bicomodule;
using coring::Coring;
using coring::LeftComodule;
using coring::RightComodule;
using entwine::Entwining;
using entwine::EntwiningMorphism;
using functors::CoringHom;
using la::Field;
using la::Matrix;
using sep::Certificate;
using sep::CertificateKind;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& at(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::size_t size_at(const json& obj, const std::string& key, const std::string& where) {
  const json& v = at(obj, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(where + ": \"" + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_at(const json& obj, const std::string& key, const std::string& where) {
  const json& v = at(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

la::Scalar parse_scalar(Field f, const json& v, const std::string& where) {
  if (v.is_string()) return f.parse_scalar(v.get<std::string>());
  if (v.is_number_integer()) return f.from_int(v.get<long long>());
  throw ParseError(where + ": matrix entries must be strings or integers");
}

Matrix parse_matrix(Field f, const json& j, const std::string& where) {
  const json* rows = &j;
  std::optional<std::size_t> nr, nc;
  if (j.is_object()) {
    const json& shape = at(j, "shape", where);
    if (!shape.is_array() || shape.size() != 2) throw ParseError(where + ": \"shape\" must be [rows, cols]");
    nr = shape[0].get<std::size_t>();
    nc = shape[1].get<std::size_t>();
    rows = &at(j, "rows", where);
  }
  if (!rows->is_array()) throw ParseError(where + ": matrix rows must be a list");
  const std::size_t r = nr.value_or(rows->size());
  const std::size_t c = nc.value_or(rows->empty() ? 0 : (*rows)[0].size());
  if (rows->size() != r) throw ParseError(where + ": row count does not match the shape");
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const json& row = (*rows)[i];
    if (!row.is_array() || row.size() != c) throw ParseError(where + ": row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_scalar(f, row[k], where);
  }
  return m;
}

Matrix parse_column(Field f, const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of scalars");
  Matrix m(f, j.size(), 1);
  for (std::size_t i = 0; i < j.size(); ++i) m(i, 0) = parse_scalar(f, j[i], where);
  return m;
}

std::vector<Matrix> parse_matrices(Field f, const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(f, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json column_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m(i, 0).to_string());
  return out;
}

json matrices_to_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const Matrix& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

void check_metadata(const json& obj, const std::string& key, std::size_t actual, const std::string& where) {
  if (!obj.contains("metadata")) return;
  const json& meta = obj.at("metadata");
  if (meta.contains(key) && meta.at(key).get<std::size_t>() != actual) {
    throw ParseError(where + ": quotient basis metadata mismatch for " + key + " (stored " +
                     meta.at(key).dump() + ", recomputed " + std::to_string(actual) + ")");
  }
}

CertificateKind parse_kind(const std::string& s, const std::string& where) {
  for (CertificateKind k : {CertificateKind::Omega, CertificateKind::NuHat, CertificateKind::Gamma,
                            CertificateKind::Invariant}) {
    if (sep::to_string(k) == s) return k;
  }
  throw ParseError(where + ": unknown certificate kind '" + s + "'");
}

json algebra_json(const Algebra& a) {
  json products = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) {
      json v = json::array();
      for (std::size_t k = 0; k < a.dim(); ++k) v.push_back(a.structure(i, j, k).to_string());
      row.push_back(v);
    }
    products.push_back(row);
  }
  return {{"type", "algebra"}, {"dim", a.dim()}, {"products", products}, {"unit", column_to_json(a.unit())}};
}

json algebra_hom_json(const AlgebraHom& h) {
  return {{"type", "algebra_hom"}, {"source", algebra_json(h.source)}, {"target", algebra_json(h.target)},
          {"matrix", matrix_to_json(h.matrix)}};
}

json bimodule_json(const Bimodule& m) {
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < m.left_alg().dim(); ++i) l.push_back(m.left_action(i));
  for (std::size_t j = 0; j < m.right_alg().dim(); ++j) r.push_back(m.right_action(j));
  return {{"type", "bimodule"},
          {"left", algebra_json(m.left_alg())},
          {"right", algebra_json(m.right_alg())},
          {"dim", m.dim()},
          {"left_action", matrices_to_json(l)},
          {"right_action", matrices_to_json(r)}};
}

json coring_json(const Coring& c) {
  return {{"type", "coring"},
          {"carrier", bimodule_json(c.carrier)},
          {"delta", matrix_to_json(c.delta)},
          {"epsilon", matrix_to_json(c.epsilon)},
          {"metadata", {{"cc_dim", c.cc.dim()}}}};
}

json right_json(const RightComodule& m) {
  return {{"type", "right_comodule"},
          {"coring", coring_json(m.coring)},
          {"carrier", bimodule_json(m.carrier)},
          {"rho", matrix_to_json(m.rho)},
          {"metadata", {{"mc_dim", m.mc.dim()}}}};
}

json left_json(const LeftComodule& m) {
  return {{"type", "left_comodule"},
          {"coring", coring_json(m.coring)},
          {"carrier", bimodule_json(m.carrier)},
          {"lambda", matrix_to_json(m.lambda)},
          {"metadata", {{"cm_dim", m.cm.dim()}}}};
}

json bicomodule_json(const Bicomodule& m) {
  return {{"type", "bicomodule"},
          {"left", coring_json(m.left)},
          {"right", coring_json(m.right)},
          {"carrier", bimodule_json(m.carrier)},
          {"lambda", matrix_to_json(m.lambda)},
          {"rho", matrix_to_json(m.rho)},
          {"metadata", {{"cm_dim", m.cm.dim()}, {"mc_dim", m.mc.dim()}}}};
}

json hom_json(const CoringHom& h) {
  return {{"type", "coring_hom"},
          {"source", coring_json(h.source)},
          {"target", coring_json(h.target)},
          {"rho", algebra_hom_json(h.rho)},
          {"phi", matrix_to_json(h.phi)}};
}

json entwining_json(const Entwining& e) {
  return {{"type", "entwining"},
          {"algebra", algebra_json(e.algebra)},
          {"coalgebra", coring_json(e.coalgebra)},
          {"psi", matrix_to_json(e.psi)}};
}

}  // namespace

std::string type_name(const Value& v) {
  return std::visit(overloaded{
                        [](const Algebra&) { return "algebra"; },
                        [](const AlgebraHom&) { return "algebra_hom"; },
                        [](const Bimodule&) { return "bimodule"; },
                        [](const Coring&) { return "coring"; },
                        [](const RightComodule&) { return "right_comodule"; },
                        [](const LeftComodule&) { return "left_comodule"; },
                        [](const Bicomodule&) { return "bicomodule"; },
                        [](const CoringHom&) { return "coring_hom"; },
                        [](const Entwining&) { return "entwining"; },
                        [](const EntwiningMorphism&) { return "entwining_morphism"; },
                        [](const Certificate&) { return "certificate"; },
                    },
                    v);
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return {{"shape", {m.rows(), m.cols()}}, {"rows", rows}};
}

json to_json(const Value& v) {
  return std::visit(overloaded{
                        [](const Algebra& a) { return algebra_json(a); },
                        [](const AlgebraHom& h) { return algebra_hom_json(h); },
                        [](const Bimodule& m) { return bimodule_json(m); },
                        [](const Coring& c) { return coring_json(c); },
                        [](const RightComodule& m) { return right_json(m); },
                        [](const LeftComodule& m) { return left_json(m); },
                        [](const Bicomodule& m) { return bicomodule_json(m); },
                        [](const CoringHom& h) { return hom_json(h); },
                        [](const Entwining& e) { return entwining_json(e); },
                        [](const EntwiningMorphism& m) -> json {
                          return {{"type", "entwining_morphism"},
                                  {"source", entwining_json(m.source)},
                                  {"target", entwining_json(m.target)},
                                  {"f", algebra_hom_json(m.f)},
                                  {"g", matrix_to_json(m.g)}};
                        },
                        [](const Certificate& c) -> json {
                          json out = {{"type", "certificate"},
                                      {"kind", sep::to_string(c.kind)},
                                      {"coring", coring_json(c.coring)},
                                      {"payload", matrix_to_json(c.payload)},
                                      {"solution_space_dim", c.solution_space_dim}};
                          if (c.hom) out["hom"] = hom_json(*c.hom);
                          return out;
                        },
                    },
                    v);
}

json to_json(const ValidationReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations) violations.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
  return {{"valid", rep.ok()}, {"violations", violations}};
}

json to_json(const sep::SeparabilityReport& rep) {
  json out = {{"feasible", rep.feasible},
              {"solution_space_dim", rep.solution_space_dim},
              {"infeasibility_rank_deficit", rep.infeasibility_rank_deficit},
              {"hypothesis_checks", rep.hypothesis_checks},
              {"certificate", nullptr}};
  if (rep.certificate) out["certificate"] = to_json(Value(*rep.certificate));
  return out;
}

json document(Field field, const std::map<std::string, Value>& objects) {
  json objs = json::object();
  for (const auto& [name, v] : objects) objs[name] = to_json(v);
  return {{"field", field.name()}, {"objects", objs}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ValidationReport validate(const Value& v) {
  return std::visit(overloaded{
                        [](const Algebra& a) { return alg::validate_algebra(a); },
                        [](const AlgebraHom& h) { return alg::validate_algebra_hom(h); },
                        [](const Bimodule& m) { return alg::validate_bimodule(m); },
                        [](const Coring& c) { return coring::validate_coring(c); },
                        [](const RightComodule& m) { return coring::validate_comodule(m); },
                        [](const LeftComodule& m) { return coring::validate_comodule(m); },
                        [](const Bicomodule& m) { return coring::validate_comodule(m); },
                        [](const CoringHom& h) { return functors::validate_coring_hom(h); },
                        [](const Entwining& e) { return entwine::validate_entwining(e); },
                        [](const EntwiningMorphism& m) { return entwine::validate_entwining_morphism(m); },
                        [](const Certificate& c) { return sep::verify_certificate(c); },
                    },
                    v);
}

// ---------------------------------------------------------------- workspace

Workspace Workspace::from_json(const json& doc, std::optional<Field> default_field, std::size_t max_dim) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  Field f = default_field.value_or(Field::rationals());
  if (doc.contains("field")) {
    if (!doc.at("field").is_string()) throw ParseError("\"field\" must be a string");
    try {
      f = Field::parse(doc.at("field").get<std::string>());
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  Workspace ws(f, max_dim);
  ws.merge(doc);
  return ws;
}

Workspace Workspace::load(const std::vector<std::string>& paths, std::optional<Field> default_field,
                          std::size_t max_dim) {
  std::optional<Workspace> ws;
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    Workspace one = from_json(doc, default_field, max_dim);
    if (!ws) {
      ws = std::move(one);
      continue;
    }
    if (one.field() != ws->field()) {
      throw ParseError(path + ": field " + one.field().name() + " differs from " + ws->field().name());
    }
    ws->merge(doc);
  }
  if (!ws) return Workspace(default_field.value_or(Field::rationals()), max_dim);
  return *ws;
}

void Workspace::merge(const json& doc) {
  if (!doc.contains("objects")) return;
  const json& objs = doc.at("objects");
  if (!objs.is_object()) throw ParseError("\"objects\" must be a JSON object");
  for (const auto& [name, obj] : objs.items()) {
    if (raw_.count(name)) throw ParseError("duplicate object '" + name + "'");
    raw_[name] = obj;
  }
}

std::vector<std::string> Workspace::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : raw_) out.push_back(name);
  return out;
}

const Value& Workspace::get(const std::string& name) {
  if (auto it = built_.find(name); it != built_.end()) return it->second;
  if (!raw_.count(name)) throw ParseError("unknown object '" + name + "'");
  if (resolving_.count(name)) throw ParseError("cyclic reference through '" + name + "'");
  resolving_.insert(name);
  Value v = build(raw_.at(name), name);
  resolving_.erase(name);
  return built_.emplace(name, std::move(v)).first->second;
}

template <class T>
T Workspace::ref(const json& obj, const std::string& key, const std::string& where, const std::string& expected) {
  const json& r = at(obj, key, where);
  if (r.is_string()) return get_as<T>(r.get<std::string>(), expected);
  const Value v = build(r, where + "." + key);
  if (const T* t = std::get_if<T>(&v)) return *t;
  throw ParseError(where + "." + key + ": is a " + type_name(v) + ", expected " + expected);
}

Value Workspace::build(const json& obj, const std::string& where) {
  const Field f = field_;
  auto guard = [&](std::size_t dim) {
    if (dim > max_dim_) {
      throw ParseError(where + ": dimension " + std::to_string(dim) + " exceeds the limit " + std::to_string(max_dim_));
    }
  };
  try {
    const std::string type = string_at(obj, "type", where);
    const std::string kind = obj.contains("kind") && obj.at("kind").is_string() ? obj.at("kind").get<std::string>() : "";

    if (type == "algebra") {
      if (kind == "ground") return Algebra::ground(f);
      if (!kind.empty()) {
        const std::size_t n = size_at(obj, "n", where);
        guard(kind == "matrix" ? n * n : n);
        if (kind == "diagonal") return Algebra::diagonal(f, n);
        if (kind == "truncated_polynomial") return Algebra::truncated_polynomial(f, n);
        if (kind == "matrix") return Algebra::matrix_algebra(f, n);
        throw ParseError(where + ": unknown algebra kind '" + kind + "'");
      }
      const std::size_t n = size_at(obj, "dim", where);
      guard(n);
      const json& p = at(obj, "products", where);
      if (!p.is_array() || p.size() != n) throw ParseError(where + ": \"products\" must be dim x dim");
      std::vector<std::vector<std::vector<la::Scalar>>> mult(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!p[i].is_array() || p[i].size() != n) throw ParseError(where + ": \"products\" must be dim x dim");
        for (std::size_t j = 0; j < n; ++j) {
          const Matrix v = parse_column(f, p[i][j], where);
          if (v.rows() != n) throw ParseError(where + ": product vectors must have length dim");
          std::vector<la::Scalar> col;
          for (std::size_t k = 0; k < n; ++k) col.push_back(v(k, 0));
          mult[i].push_back(col);
        }
      }
      return Algebra::from_structure(f, mult, parse_column(f, at(obj, "unit", where), where));
    }
    if (type == "algebra_hom") {
      if (kind == "identity") return AlgebraHom::identity(ref<Algebra>(obj, "algebra", where, "algebra"));
      if (kind == "unit_map") return AlgebraHom::unit_map(ref<Algebra>(obj, "algebra", where, "algebra"));
      return AlgebraHom{ref<Algebra>(obj, "source", where, "algebra"), ref<Algebra>(obj, "target", where, "algebra"),
                        parse_matrix(f, at(obj, "matrix", where), where)};
    }
    if (type == "bimodule") {
      if (kind == "regular") return Bimodule::regular(ref<Algebra>(obj, "algebra", where, "algebra"));
      if (kind == "vector_space") {
        const std::size_t n = size_at(obj, "n", where);
        guard(n);
        return Bimodule::vector_space(f, n);
      }
      const std::size_t n = size_at(obj, "dim", where);
      guard(n);
      return Bimodule(ref<Algebra>(obj, "left", where, "algebra"), ref<Algebra>(obj, "right", where, "algebra"), n,
                      parse_matrices(f, at(obj, "left_action", where), where),
                      parse_matrices(f, at(obj, "right_action", where), where));
    }
    if (type == "coring") {
      if (kind == "trivial") return Coring::trivial(ref<Algebra>(obj, "algebra", where, "algebra"));
      const Coring c = Coring::make(ref<Bimodule>(obj, "carrier", where, "bimodule"),
                                    parse_matrix(f, at(obj, "delta", where), where),
                                    parse_matrix(f, at(obj, "epsilon", where), where));
      check_metadata(obj, "cc_dim", c.cc.dim(), where);
      return c;
    }
    if (type == "right_comodule") {
      const Coring c = ref<Coring>(obj, "coring", where, "coring");
      if (kind == "regular") return RightComodule::regular(c);
      if (kind == "cofree") return coring::cofree(c, ref<Bimodule>(obj, "module", where, "bimodule"));
      const RightComodule m = RightComodule::make(c, ref<Bimodule>(obj, "carrier", where, "bimodule"),
                                                  parse_matrix(f, at(obj, "rho", where), where));
      check_metadata(obj, "mc_dim", m.mc.dim(), where);
      return m;
    }
    if (type == "left_comodule") {
      const Coring c = ref<Coring>(obj, "coring", where, "coring");
      if (kind == "regular") return LeftComodule::regular(c);
      const LeftComodule m = LeftComodule::make(c, ref<Bimodule>(obj, "carrier", where, "bimodule"),
                                                parse_matrix(f, at(obj, "lambda", where), where));
      check_metadata(obj, "cm_dim", m.cm.dim(), where);
      return m;
    }
    if (type == "bicomodule") {
      if (kind == "regular") return Bicomodule::regular(ref<Coring>(obj, "coring", where, "coring"));
      const Bicomodule m = Bicomodule::make(
          ref<Coring>(obj, "left", where, "coring"), ref<Coring>(obj, "right", where, "coring"),
          ref<Bimodule>(obj, "carrier", where, "bimodule"), parse_matrix(f, at(obj, "lambda", where), where),
          parse_matrix(f, at(obj, "rho", where), where));
      check_metadata(obj, "cm_dim", m.cm.dim(), where);
      check_metadata(obj, "mc_dim", m.mc.dim(), where);
      return m;
    }
    if (type == "coring_hom") {
      if (kind == "identity") return CoringHom::identity(ref<Coring>(obj, "coring", where, "coring"));
      if (kind == "counit") return CoringHom::counit(ref<Coring>(obj, "coring", where, "coring"));
      return CoringHom{ref<Coring>(obj, "source", where, "coring"), ref<Coring>(obj, "target", where, "coring"),
                       ref<AlgebraHom>(obj, "rho", where, "algebra_hom"), parse_matrix(f, at(obj, "phi", where), where)};
    }
    if (type == "entwining") {
      const Algebra a = ref<Algebra>(obj, "algebra", where, "algebra");
      const Coring c = ref<Coring>(obj, "coalgebra", where, "coring");
      if (kind == "trivial") return Entwining::trivial(a, c);
      return Entwining{a, c, parse_matrix(f, at(obj, "psi", where), where)};
    }
    if (type == "entwining_morphism") {
      if (kind == "identity") return EntwiningMorphism::identity(ref<Entwining>(obj, "entwining", where, "entwining"));
      return EntwiningMorphism{ref<Entwining>(obj, "source", where, "entwining"),
                               ref<Entwining>(obj, "target", where, "entwining"),
                               ref<AlgebraHom>(obj, "f", where, "algebra_hom"),
                               parse_matrix(f, at(obj, "g", where), where)};
    }
    if (type == "certificate") {
      Certificate c;
      c.kind = parse_kind(string_at(obj, "kind", where), where);
      if (obj.contains("hom")) c.hom = ref<CoringHom>(obj, "hom", where, "coring_hom");
      if (obj.contains("coring")) {
        c.coring = ref<Coring>(obj, "coring", where, "coring");
      } else if (c.hom) {
        c.coring = c.kind == CertificateKind::NuHat ? c.hom->target : c.hom->source;
      } else {
        throw ParseError(where + ": certificate needs \"coring\" or \"hom\"");
      }
      c.payload = parse_matrix(f, at(obj, "payload", where), where);
      if (obj.contains("solution_space_dim")) c.solution_space_dim = size_at(obj, "solution_space_dim", where);
      return c;
    }
    throw ParseError(where + ": unknown type '" + type + "'");
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const FieldMismatch& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const AlgebraMismatch& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace coringlab::io
