#include "qfla/json_io.hpp"

#include "qfla/error.hpp"

namespace qfla::json {

namespace {

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError("field " + key + ": missing in " + where);
  return *it;
}

int int_from(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError("field " + field + ": expected an integer");
  return j.get<int>();
}

std::size_t index_from(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ParseError("field " + field + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

json nullable(const std::optional<json>& v) { return v ? *v : json(nullptr); }

}  // namespace

json to_json(const Scalar& s) { return s.str(); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Scalar scalar_from(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw ParseError("field " + field + ": expected a rational string");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("field " + field + ": " + e.what());
  }
}

Vector vector_from(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field " + field + ": expected an array");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(scalar_from(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return v;
}

Matrix matrix_from(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field " + field + ": expected an array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from(j[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) {
      throw DimensionMismatch("field " + field + ": rows have different lengths");
    }
  }
  if (rows.empty()) return {};
  return Matrix::from_rows(rows, rows.front().size());
}

json spec_to_json(const QuasiQnSpec& spec) {
  return json{{"n", spec.n}, {"m", spec.m}, {"r", spec.r}, {"B", to_json(spec.B)}};
}

QuasiQnSpec spec_from_json(const json& j) {
  QuasiQnSpec spec;
  spec.n = int_from(require(j, "n", "spec"), "n");
  spec.m = int_from(require(j, "m", "spec"), "m");
  spec.r = int_from(require(j, "r", "spec"), "r");
  const auto it = j.find("B");
  Matrix b = it == j.end() ? Matrix() : matrix_from(*it, "B");
  if (b.cols() == 0 && spec.r >= 0) b = Matrix(static_cast<std::size_t>(spec.r), 0);
  spec.B = std::move(b);
  spec.validate();
  return spec;
}

json algebra_to_json(const LieAlgebra& l, const std::optional<QuasiQnSpec>& spec) {
  json labels = json::array();
  for (const auto& lab : l.labels()) labels.push_back(lab.str());
  json brackets = json::array();
  for (const auto& e : l.brackets()) {
    json value = json::array();
    for (const auto& t : e.value) value.push_back(json::array({t.index, t.coeff.str()}));
    brackets.push_back(json{{"i", e.i}, {"j", e.j}, {"value", std::move(value)}});
  }
  json out{{"dim", l.dim()}, {"labels", std::move(labels)}, {"brackets", std::move(brackets)}};
  if (spec) out["spec"] = spec_to_json(*spec);
  return out;
}

LoadedAlgebra algebra_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("algebra: expected an object");
  std::optional<QuasiQnSpec> spec;
  if (j.contains("spec")) {
    spec = spec_from_json(j["spec"]);
  } else if (j.contains("n") && !j.contains("brackets")) {
    spec = spec_from_json(j);
  }
  if (!j.contains("brackets")) {
    if (!spec) throw ParseError("field brackets: missing in algebra");
    return {build_quasi(*spec), spec};
  }

  const std::size_t dim = index_from(require(j, "dim", "algebra"), "dim");
  const json& labels_j = require(j, "labels", "algebra");
  if (!labels_j.is_array() || labels_j.size() != dim) {
    throw DimensionMismatch("field labels: expected " + std::to_string(dim) + " labels");
  }
  std::vector<BasisLabel> labels;
  for (const auto& lab : labels_j) {
    if (!lab.is_string()) throw ParseError("field labels: expected strings");
    labels.push_back(BasisLabel::parse(lab.get<std::string>()));
  }
  const json& br = require(j, "brackets", "algebra");
  if (!br.is_array()) throw ParseError("field brackets: expected an array");
  std::vector<BracketEntry> entries;
  for (std::size_t e = 0; e < br.size(); ++e) {
    const std::string where = "brackets[" + std::to_string(e) + "]";
    BracketEntry entry{index_from(require(br[e], "i", where), where + ".i"),
                       index_from(require(br[e], "j", where), where + ".j"),
                       {}};
    const json& value = require(br[e], "value", where);
    if (!value.is_array()) throw ParseError("field " + where + ".value: expected an array");
    for (std::size_t t = 0; t < value.size(); ++t) {
      const std::string tw = where + ".value[" + std::to_string(t) + "]";
      if (!value[t].is_array() || value[t].size() != 2) {
        throw ParseError("field " + tw + ": expected [index, coefficient]");
      }
      entry.value.push_back({index_from(value[t][0], tw), scalar_from(value[t][1], tw)});
    }
    entries.push_back(std::move(entry));
  }
  LieAlgebra l(std::move(labels), entries);
  if (spec && !(build_quasi(*spec) == l)) {
    throw ParseError("field brackets: do not match the algebra described by field spec");
  }
  return {std::move(l), spec};
}

json candidate_to_json(const QuasiQnSpec& spec, const AutCandidate& c) {
  json images = json::object();
  for (int s = 1; s <= spec.m; ++s) {
    const auto i = static_cast<std::size_t>(s - 1);
    images[BasisLabel::gen(s, 0).str()] = to_json(c.e0[i]);
    images[BasisLabel::gen(s, 1).str()] = to_json(c.e1[i]);
  }
  return json{{"images", std::move(images)}};
}

AutCandidate candidate_from_json(const QuasiQnSpec& spec, const json& j) {
  const json& images = require(j, "images", "candidate");
  if (!images.is_object()) throw ParseError("field images: expected an object");
  AutCandidate c;
  for (int s = 1; s <= spec.m; ++s) {
    for (int level = 0; level <= 1; ++level) {
      const std::string key = BasisLabel::gen(s, level).str();
      Vector v = vector_from(require(images, key, "images"), "images." + key);
      if (v.size() != spec.dim()) {
        throw DimensionMismatch("field images." + key + ": expected " +
                                std::to_string(spec.dim()) + " coordinates, got " +
                                std::to_string(v.size()));
      }
      (level == 0 ? c.e0 : c.e1).push_back(std::move(v));
    }
  }
  if (images.size() != static_cast<std::size_t>(2 * spec.m)) {
    throw ParseError("field images: unexpected keys beyond e_{s,0}, e_{s,1} for s = 1.." +
                     std::to_string(spec.m));
  }
  return c;
}

json related_to_json(const RelatedMatrix& rel) {
  return json{{"m", rel.m}, {"r", rel.r}, {"matrix", to_json(rel.matrix)},
              {"kernel", to_json(kernel_subspace(rel).transpose())}};
}

json verdict_to_json(const AutVerdict& v) {
  json out{{"pass", v.pass}};
  out["failed_condition"] = v.pass ? json(nullptr) : json(v.failed);
  out["witness"] = v.pass ? json(nullptr) : json{{"s", v.s}, {"p", v.p}, {"index", v.index}};
  out["detail"] = v.detail;
  std::optional<json> q;
  std::optional<json> k;
  if (v.analysis) {
    q = json(v.analysis->q);
    k = to_json(v.analysis->k);
  }
  out["q"] = nullable(q);
  out["k"] = nullable(k);
  return out;
}

json verdict_to_json(const DerVerdict& v) {
  json out{{"pass", v.pass}, {"detail", v.detail}};
  out["failed_condition"] = v.failed ? json(to_string(*v.failed)) : json(nullptr);
  out["witness"] = v.pass ? json(nullptr) : json{{"s", v.s}, {"p", v.p}, {"index", v.index}};
  return out;
}

json iso_to_json(const IsoVerdict& v) {
  json out{{"isomorphic", v.isomorphic}, {"reason", v.reason}};
  if (!v.witness) {
    out["witness"] = nullptr;
    return out;
  }
  const auto& w = *v.witness;
  json perm = json::array();
  for (std::size_t p : w.k.perm) perm.push_back(p + 1);
  out["witness"] = json{{"E", to_json(w.e)},
                        {"K", json{{"perm", std::move(perm)}, {"scale", to_json(w.k.scale)}}},
                        {"map", w.map ? to_json(*w.map) : json(nullptr)},
                        {"permutation_rank", w.permutation_rank}};
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qfla::json
