#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "coringlab/fixtures.hpp"
#include "coringlab/io.hpp"

using namespace coringlab;
using io::json;
using io::Value;
using io::Workspace;

namespace {

enum Exit { Ok = 0, Malformed = 2, Infeasible = 3, AxiomFailure = 4, HypothesisFailure = 5 };

struct Options {
  std::string field;
  std::size_t max_dim = 64;
  std::vector<std::string> files;
  std::string name;
  std::string kind;
  std::string hom;
  std::string coring;
  std::string op;
  std::string left;
  std::string right;
  std::string comodule;
  std::string bicomodule;
  std::string module;
  std::string out;
};

std::optional<la::Field> default_field(const Options& o) {
  if (!o.field.empty()) return la::Field::parse(o.field);
  if (const char* env = std::getenv("CORINGLAB_FIELD"); env && *env) return la::Field::parse(env);
  return std::nullopt;
}

Workspace load(const Options& o) { return Workspace::load(o.files, default_field(o), o.max_dim); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io::ParseError("cannot write '" + path + "'");
  f << text;
}

void emit(const Options& o, const json& doc) {
  const std::string text = io::dump(doc);
  std::cout << text;
  if (!o.out.empty()) write_file(o.out, text);
}

// Validates an input object before a construction uses it.
void require_valid(const Value& v, const std::string& name) {
  const ValidationReport rep = io::validate(v);
  if (!rep.ok()) {
    std::cout << io::dump({{"object", name}, {"type", io::type_name(v)}, {"report", io::to_json(rep)}});
    throw ValidationFailed("'" + name + "' fails its axioms: " + rep.summary());
  }
}

template <class T>
const T& input(Workspace& ws, const std::string& name, const std::string& expected) {
  if (name.empty()) throw io::ParseError("missing --" + expected);
  const T& v = ws.get_as<T>(name, expected);
  require_valid(Value(v), name);
  return v;
}

coring::Bicomodule as_bicomodule(Workspace& ws, const std::string& name) {
  if (name.empty()) throw io::ParseError("missing bicomodule argument");
  const Value& v = ws.get(name);
  require_valid(v, name);
  if (const auto* b = std::get_if<coring::Bicomodule>(&v)) return *b;
  if (const auto* r = std::get_if<coring::RightComodule>(&v)) return coring::Bicomodule::from_right(*r);
  if (const auto* l = std::get_if<coring::LeftComodule>(&v)) return coring::Bicomodule::from_left(*l);
  throw io::ParseError("'" + name + "' is a " + io::type_name(v) + ", expected a comodule");
}

int cmd_validate(const Options& o) {
  Workspace ws = load(o);
  bool ok = true;
  json out;
  if (!o.name.empty()) {
    const Value& v = ws.get(o.name);
    const ValidationReport rep = io::validate(v);
    ok = rep.ok();
    out = io::to_json(rep);
    out["object"] = o.name;
    out["type"] = io::type_name(v);
  } else {
    json objs = json::object();
    for (const std::string& name : ws.names()) {
      const Value& v = ws.get(name);
      const ValidationReport rep = io::validate(v);
      ok = ok && rep.ok();
      objs[name] = io::to_json(rep);
      objs[name]["type"] = io::type_name(v);
    }
    out = {{"valid", ok}, {"objects", objs}};
  }
  std::cout << io::dump(out);
  return ok ? Ok : AxiomFailure;
}

int cmd_certify(const Options& o) {
  Workspace ws = load(o);
  sep::SeparabilityReport rep;
  if (o.kind == "induction") {
    rep = sep::certify_induction(input<functors::CoringHom>(ws, o.hom, "hom"));
  } else if (o.kind == "adinduction") {
    rep = sep::certify_adinduction(input<functors::CoringHom>(ws, o.hom, "hom"));
  } else if (o.kind == "forgetful") {
    rep = sep::certify_forgetful(input<coring::Coring>(ws, o.coring, "coring"));
  } else if (o.kind == "base-extension") {
    rep = sep::certify_base_extension(input<coring::Coring>(ws, o.coring, "coring"));
  } else {
    throw io::ParseError("unknown --kind '" + o.kind + "'");
  }
  const json report = io::to_json(rep);
  std::cout << io::dump(report);
  if (!o.out.empty()) {
    write_file(o.out, io::dump(rep.feasible ? io::document(ws.field(), {{"certificate", *rep.certificate}}) : report));
  }
  return rep.feasible ? Ok : Infeasible;
}

int cmd_compute(const Options& o) {
  Workspace ws = load(o);
  const la::Field f = ws.field();
  if (o.op == "cotensor") {
    const coring::CotensorSpace p = coring::cotensor(as_bicomodule(ws, o.left), as_bicomodule(ws, o.right));
    json doc = p.structured() ? io::document(f, {{"result", *p.bicomodule}}) : io::document(f, {{"result", p.carrier}});
    doc["details"] = {{"dim", p.dim()},
                      {"structured", p.structured()},
                      {"failed_hypotheses", p.failed_hypotheses},
                      {"inclusion", io::matrix_to_json(p.inclusion)}};
    emit(o, doc);
    return Ok;
  }
  if (o.op == "tensor") {
    const alg::Tensor t = alg::chain({input<alg::Bimodule>(ws, o.left, "left"), input<alg::Bimodule>(ws, o.right, "right")});
    json doc = io::document(f, {{"result", t.quotient()}});
    doc["details"] = {{"dim", t.dim()}, {"ambient_dim", t.ambient_dim()}, {"proj", io::matrix_to_json(t.proj())}};
    emit(o, doc);
    return Ok;
  }
  if (o.op == "induce") {
    const auto m = input<coring::RightComodule>(ws, o.comodule, "comodule");
    const auto r = functors::induce(m, input<functors::CoringHom>(ws, o.hom, "hom"));
    emit(o, io::document(f, {{"result", r.comodule}}));
    return Ok;
  }
  if (o.op == "adinduce") {
    const auto y = input<coring::RightComodule>(ws, o.comodule, "comodule");
    const auto r = functors::ad_induce(y, input<functors::CoringHom>(ws, o.hom, "hom"));
    json doc = io::document(f, {{"result", r.comodule}});
    doc["details"] = {{"dim", r.space.dim()}, {"inclusion", io::matrix_to_json(r.space.inclusion)}};
    emit(o, doc);
    return Ok;
  }
  if (o.op == "cohom") {
    const functors::CohomFinite h = functors::cohom_finite(as_bicomodule(ws, o.bicomodule));
    const coring::RightComodule r =
        o.module.empty() ? h.dual : functors::cohom(h, input<alg::Bimodule>(ws, o.module, "module"));
    emit(o, io::document(f, {{"result", r}}));
    return Ok;
  }
  throw io::ParseError("unknown --op '" + o.op + "'");
}

int cmd_entwine_build(const Options& o) {
  Workspace ws = load(o);
  const auto& e = ws.get_as<entwine::Entwining>(o.name, "entwining");
  emit(o, io::document(ws.field(), {{o.name + "-coring", entwine::coring_from_entwining(e)}}));
  return Ok;
}

int cmd_entwine_hom(const Options& o) {
  Workspace ws = load(o);
  const auto& m = ws.get_as<entwine::EntwiningMorphism>(o.name, "entwining_morphism");
  emit(o, io::document(ws.field(), {{o.name + "-hom", entwine::hom_from_entwining_morphism(m)}}));
  return Ok;
}

int cmd_export(const Options& o) {
  const la::Field f = default_field(o).value_or(la::Field::rationals());
  if (o.out.empty()) throw io::ParseError("missing --out directory");
  std::filesystem::create_directories(o.out);
  std::map<std::string, Value> objects;
  for (const auto& [name, c] : fixtures::coring_fixtures(f)) objects.emplace(name, c);
  for (const auto& [name, c] : fixtures::entwined_fixtures(f)) objects.emplace(name, c);
  for (const auto& [name, h] : fixtures::hom_fixtures(f)) objects.emplace(name, h);
  json index = json::array();
  for (const auto& [name, v] : objects) {
    const std::string file = name + ".json";
    write_file((std::filesystem::path(o.out) / file).string(), io::dump(io::document(f, {{name, v}})));
    index.push_back({{"name", name}, {"type", io::type_name(v)}, {"file", file}});
  }
  std::cout << io::dump({{"field", f.name()}, {"objects", index}});
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finite-dimensional corings and comodules"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--field", o.field, "Ground field, Q or Fp:<p> (default: $CORINGLAB_FIELD or Q)");
  app.add_option("--max-dim", o.max_dim, "Largest carrier dimension accepted on input")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check the axioms of objects in JSON files");
  validate->add_option("files", o.files, "Input documents")->required();
  validate->add_option("--name", o.name, "Only this object");

  auto* certify = app.add_subcommand("certify", "Decide separability and emit a certificate");
  certify->add_option("files", o.files, "Input documents")->required();
  certify->add_option("--kind", o.kind, "induction | adinduction | forgetful | base-extension")->required();
  certify->add_option("--hom", o.hom, "Coring homomorphism (induction, adinduction)");
  certify->add_option("--coring", o.coring, "Coring (forgetful, base-extension)");
  certify->add_option("--out", o.out, "Certificate document, or the report when infeasible");

  auto* compute = app.add_subcommand("compute", "Build a derived object");
  compute->add_option("files", o.files, "Input documents")->required();
  compute->add_option("--op", o.op, "cotensor | tensor | induce | adinduce | cohom")->required();
  compute->add_option("--left", o.left, "Left operand (cotensor, tensor)");
  compute->add_option("--right", o.right, "Right operand (cotensor, tensor)");
  compute->add_option("--comodule", o.comodule, "Right comodule (induce, adinduce)");
  compute->add_option("--hom", o.hom, "Coring homomorphism (induce, adinduce)");
  compute->add_option("--bicomodule", o.bicomodule, "Bicomodule (cohom)");
  compute->add_option("--module", o.module, "Right module (cohom)");
  compute->add_option("--out", o.out, "Also write the result here");

  auto* entwine_cmd = app.add_subcommand("entwine", "Entwining structures");
  entwine_cmd->require_subcommand(1);
  auto* build = entwine_cmd->add_subcommand("build", "Compile an entwining to a coring");
  auto* compile_hom = entwine_cmd->add_subcommand("compile-hom", "Compile an entwining morphism");
  for (auto* sub : {build, compile_hom}) {
    sub->add_option("files", o.files, "Input documents")->required();
    sub->add_option("--name", o.name, "Object to compile")->required();
    sub->add_option("--out", o.out, "Also write the result here");
  }

  auto* exporter = app.add_subcommand("export-fixtures", "Write the built-in fixtures as JSON documents");
  exporter->add_option("--out", o.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : Malformed;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*certify) return cmd_certify(o);
    if (*compute) return cmd_compute(o);
    if (*build) return cmd_entwine_build(o);
    if (*compile_hom) return cmd_entwine_hom(o);
    if (*exporter) return cmd_export(o);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Malformed;
  } catch (const HypothesisFailed& e) {
    std::cerr << "hypothesis failed: " << e.what() << "\n";
    return HypothesisFailure;
  } catch (const NotQuasiFinite& e) {
    std::cerr << "hypothesis failed: " << e.what() << "\n";
    return HypothesisFailure;
  } catch (const ValidationFailed& e) {
    std::cerr << "axiom failure: " << e.what() << "\n";
    return AxiomFailure;
  } catch (const InternalAxiomError& e) {
    std::cerr << "axiom failure: " << e.what() << "\n";
    return AxiomFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Malformed;
  }
  return Malformed;
}
