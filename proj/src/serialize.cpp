#include "modwig/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "modwig/canon.hpp"

namespace modwig::serialize {

namespace {

using json = nlohmann::ordered_json;

json complex_json(Complex z) {
  z = canon::snap(z);
  return json::array({z.real(), z.imag()});
}

json row_major_json(const Mat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json module_json(const ModuleElement& f) {
  json slots = json::array();
  for (Index k = 0; k < f.slot_count(); ++k) {
    json col = json::array();
    for (Index i = 0; i < f.dim(); ++i)
      col.push_back(complex_json(f.slots()(i, k)));
    slots.push_back(col);
  }
  return slots;
}

json oracle_json(const SymmetryOracle& o) {
  json j;
  switch (o.kind()) {
    case SymmetryOracle::Kind::synthetic:
      j["type"] = "synthetic";
      j["U"] = row_major_json(o.base_isometry().matrix);
      j["seed"] = o.phase_seed();
      j["phase"] = complex_json(o.phase_factor());
      return j;
    case SymmetryOracle::Kind::table: {
      j["type"] = "table";
      json entries = json::array();
      for (const auto& [in, out] : o.entries())
        entries.push_back(json::array({module_json(in), module_json(out)}));
      j["entries"] = std::move(entries);
      return j;
    }
    case SymmetryOracle::Kind::function:
      break;
  }
  throw Error("a function-backed oracle has no serial form");
}

struct ValueWriter {
  const Document& doc;

  json operator()(const Complex& z) const {
    return make("scalar", complex_json(z));
  }
  json operator()(const double& x) const {
    return make("real", json(canon::snap(x)));
  }
  json operator()(const std::int64_t& i) const { return make("int", json(i)); }
  json operator()(const std::string& s) const { return make("text", json(s)); }
  json operator()(const AlgebraElement& a) const {
    require(a.rows() == doc.d && a.cols() == doc.d,
            "algebra value is not d x d");
    return make("algebra", row_major_json(a));
  }
  json operator()(const ModuleElement& f) const {
    require(f.dim() == doc.d && f.slot_count() == doc.n,
            "module value is not d x n");
    return make("module", module_json(f));
  }
  json operator()(const ModuleOperator& s) const {
    require(s.d == doc.d && s.n() == doc.n, "operator value is not n x n");
    return make("operator", row_major_json(s.matrix));
  }
  json operator()(const ModuleList& list) const {
    json arr = json::array();
    for (const auto& f : list) {
      require(f.dim() == doc.d && f.slot_count() == doc.n,
              "module-list entry is not d x n");
      arr.push_back(module_json(f));
    }
    return make("module-list", std::move(arr));
  }
  json operator()(const PairList& list) const {
    json arr = json::array();
    for (const auto& [f, g] : list) {
      require(f.dim() == doc.d && f.slot_count() == doc.n &&
                  g.dim() == doc.d && g.slot_count() == doc.n,
              "pair-list entry is not d x n");
      arr.push_back(json::array({module_json(f), module_json(g)}));
    }
    return make("pair-list", std::move(arr));
  }
  json operator()(const SymmetryOracle& o) const {
    require(o.dim() == doc.d && o.slot_count() == doc.n,
            "oracle shape differs from the document shape");
    return make("oracle", oracle_json(o));
  }
  json operator()(const PhaseList& list) const {
    json arr = json::array();
    for (const auto& sample : list) {
      require(sample.element.dim() == doc.d &&
                  sample.element.slot_count() == doc.n,
              "phase-list element is not d x n");
      json item;
      item["element"] = module_json(sample.element);
      item["phase"] = complex_json(sample.phase);
      item["residual"] = canon::snap(sample.residual);
      arr.push_back(std::move(item));
    }
    return make("phase-list", std::move(arr));
  }

  static json make(const char* kind, json value) {
    json j;
    j["kind"] = kind;
    j["value"] = std::move(value);
    return j;
  }
  static void require(bool ok, const char* what) {
    if (!ok) throw ShapeMismatch(what);
  }
};

double number_from(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": not a number");
  return j.get<double>();
}

Complex complex_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(std::string(what) + ": complex values are [re, im]");
  return Complex(number_from(j[0], what), number_from(j[1], what));
}

Mat row_major_from(const json& j, Index rows, Index cols, const char* what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw ShapeMismatch(std::string(what) + ": wrong row count");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ShapeMismatch(std::string(what) + ": wrong column count");
    for (Index k = 0; k < cols; ++k)
      m(i, k) = complex_from(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

ModuleElement module_from(const json& j, Index d, Index n, const char* what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n)
    throw ShapeMismatch(std::string(what) + ": wrong slot count");
  Mat slots(d, n);
  for (Index k = 0; k < n; ++k) {
    const json& col = j[static_cast<std::size_t>(k)];
    if (!col.is_array() || static_cast<Index>(col.size()) != d)
      throw ShapeMismatch(std::string(what) + ": wrong slot dimension");
    for (Index i = 0; i < d; ++i)
      slots(i, k) = complex_from(col[static_cast<std::size_t>(i)], what);
  }
  return ModuleElement(std::move(slots));
}

SymmetryOracle oracle_from(const json& j, Index d, Index n) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("oracle: missing type");
  const std::string type = j["type"].get<std::string>();
  if (type == "synthetic") {
    if (!j.contains("U")) throw ParseError("synthetic oracle: missing U");
    ModuleOperator u{row_major_from(j["U"], n, n, "oracle U"), d};
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
      if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned())
        throw ParseError("synthetic oracle: seed must be an integer");
      seed = j["seed"].get<std::uint64_t>();
    }
    Complex factor(1.0, 0.0);
    if (j.contains("phase")) factor = complex_from(j["phase"], "oracle phase");
    return SymmetryOracle::synthetic(u, seed, factor);
  }
  if (type == "table") {
    if (!j.contains("entries") || !j["entries"].is_array())
      throw ParseError("table oracle: missing entries");
    std::vector<std::pair<ModuleElement, ModuleElement>> entries;
    for (const json& e : j["entries"]) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("table oracle: entries are [in, out] pairs");
      entries.emplace_back(module_from(e[0], d, n, "table entry"),
                           module_from(e[1], d, n, "table entry"));
    }
    return SymmetryOracle::table(d, n, std::move(entries));
  }
  throw ParseError("oracle: unknown type '" + type + "'");
}

Value value_from(const json& j, Index d, Index n) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("value"))
    throw ParseError("payload entries need kind and value");
  if (!j["kind"].is_string()) throw ParseError("kind must be a string");
  const std::string kind = j["kind"].get<std::string>();
  const json& v = j["value"];
  if (kind == "scalar") return complex_from(v, "scalar");
  if (kind == "real") return number_from(v, "real");
  if (kind == "int") {
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw ParseError("int: not an integer");
    return v.get<std::int64_t>();
  }
  if (kind == "text") {
    if (!v.is_string()) throw ParseError("text: not a string");
    return v.get<std::string>();
  }
  if (kind == "algebra") return AlgebraElement(row_major_from(v, d, d, "algebra"));
  if (kind == "module") return module_from(v, d, n, "module");
  if (kind == "operator")
    return ModuleOperator{row_major_from(v, n, n, "operator"), d};
  if (kind == "module-list") {
    if (!v.is_array()) throw ParseError("module-list: not an array");
    ModuleList list;
    for (const json& e : v) list.push_back(module_from(e, d, n, "module-list"));
    return list;
  }
  if (kind == "pair-list") {
    if (!v.is_array()) throw ParseError("pair-list: not an array");
    PairList list;
    for (const json& e : v) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("pair-list: entries are [f, g] pairs");
      list.emplace_back(module_from(e[0], d, n, "pair-list"),
                        module_from(e[1], d, n, "pair-list"));
    }
    return list;
  }
  if (kind == "oracle") return oracle_from(v, d, n);
  if (kind == "phase-list") {
    if (!v.is_array()) throw ParseError("phase-list: not an array");
    PhaseList list;
    for (const json& e : v) {
      if (!e.is_object() || !e.contains("element") || !e.contains("phase") ||
          !e.contains("residual"))
        throw ParseError("phase-list: entries need element, phase, residual");
      PhaseSample sample;
      sample.element = module_from(e["element"], d, n, "phase-list");
      sample.phase = complex_from(e["phase"], "phase-list");
      sample.residual = number_from(e["residual"], "phase-list");
      list.push_back(std::move(sample));
    }
    return list;
  }
  throw ParseError("unknown payload kind '" + kind + "'");
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document root must be an object");
  if (!j.contains("version") || j["version"] != "mw1")
    throw ParseError("document version must be \"mw1\"");
  if (!j.contains("d") || !j.contains("n") || !j["d"].is_number_integer() ||
      !j["n"].is_number_integer())
    throw ParseError("document needs integer d and n");
  Document doc;
  doc.d = j["d"].get<Index>();
  doc.n = j["n"].get<Index>();
  if (doc.d < 1 || doc.n < 0)
    throw ParseError("document needs d >= 1 and n >= 0");
  if (j.contains("payload")) {
    if (!j["payload"].is_object())
      throw ParseError("payload must be an object");
    for (const auto& [name, entry] : j["payload"].items())
      doc.payload.emplace(name, value_from(entry, doc.d, doc.n));
  }
  return doc;
}

std::string write_document(const Document& doc) {
  json j;
  j["version"] = "mw1";
  j["d"] = doc.d;
  j["n"] = doc.n;
  json payload = json::object();
  for (const auto& [name, value] : doc.payload)
    payload[name] = std::visit(ValueWriter{doc}, value);
  j["payload"] = std::move(payload);
  return j.dump(2) + "\n";
}

Document read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_document_file(const Document& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << write_document(doc);
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace modwig::serialize
