#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "modwig/wigner.hpp"

namespace modwig::serialize {

using ModuleList = std::vector<ModuleElement>;
using PairList = std::vector<std::pair<ModuleElement, ModuleElement>>;
using PhaseList = std::vector<PhaseSample>;

/// One named payload entry of an mw1 document. The alternative selects the
/// "kind" tag: scalar, real, int, text, algebra, module, operator,
/// module-list, pair-list, oracle, phase-list.
using Value = std::variant<Complex, double, std::int64_t, std::string,
                           AlgebraElement, ModuleElement, ModuleOperator,
                           ModuleList, PairList, SymmetryOracle, PhaseList>;

/// The "mw1" interchange document: a module shape plus named values.
/// Complex entries are stored as [re, im] pairs; module elements are n
/// arrays of d pairs (column-major by slot); algebra elements d x d and
/// operator matrices n x n, row-major. All floating-point output is
/// canonicalized to 12 significant digits, after which read -> write -> read
/// is bit-identical.
struct Document {
  Index d = 0;
  Index n = 0;
  std::map<std::string, Value> payload;
};

/// Throws ParseError on malformed text or unknown kinds, ShapeMismatch when
/// a value disagrees with the document's (d, n).
Document parse_document(const std::string& text);

/// Canonical serialization; deterministic (payload in key order).
/// Function-kind oracles are not serializable and throw Error.
std::string write_document(const Document& doc);

Document read_document_file(const std::string& path);
void write_document_file(const Document& doc, const std::string& path);

}  // namespace modwig::serialize
