#include "fcmono/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "fcmono/error.hpp"

namespace fcmono {

namespace {

Json flags_json(const std::vector<bool>& v) {
  Json out = Json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

Json perm_json(const std::vector<unsigned>& perm) {
  Json out = Json::array();
  for (unsigned i : perm) out.push_back(i + 1);  // 1-based as in M_1..M_n
  return out;
}

Json detection_json(const CaseDetection& d) {
  Json out = {{"tag", case_name(d.tag)}};
  out["permutation"] = d.tag == CaseB::none ? Json(nullptr) : perm_json(d.perm);
  return out;
}

Json intersection_json(const IntersectionSpec& s) {
  if (s.trivial()) return {{"kind", "trivial"}, {"word", "E"}};
  return {{"kind", "generated-by"}, {"word", s.word()}};
}

std::string perm_text(const std::vector<unsigned>& perm) {
  std::string s = "(";
  for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i] + 1);
  return s + ")";
}

std::string flags_text(const std::vector<bool>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::string(i ? "," : "") + (v[i] ? "true" : "false");
  return s;
}

Rational json_rational(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error(ErrorCode::parse_error, "expected a rational, got " + v.dump());
}

class Lines {
 public:
  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  std::string str() const {
    std::size_t w = 0;
    for (const auto& r : rows_) w = std::max(w, r.first.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << std::left << std::setw(static_cast<int>(w) + 2) << (k + ":") << v << "\n";
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

}  // namespace

Json matrix_json(const CycMatrix& m) {
  Json entries = Json::array();
  for (const auto& x : m.entries()) entries.push_back(x.to_string());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"field_order", m.field().order()}, {"entries", entries}};
}

Json params_json(const ParamSet& p) {
  Json c = Json::array();
  for (const auto& x : p.c) c.push_back(x.get_str());
  return {{"n", p.n}, {"a", p.a.get_str()}, {"b", p.b.get_str()}, {"c", c}, {"field", p.F().name()}};
}

ParamSet parse_params_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "parameter JSON must be an object");
  for (const char* key : {"a", "b", "c"})
    if (!j.contains(key)) throw Error(ErrorCode::parse_error, std::string("missing key '") + key + "'");
  if (!j["c"].is_array()) throw Error(ErrorCode::parse_error, "'c' must be an array");
  std::vector<Rational> c;
  for (const auto& x : j["c"]) c.push_back(json_rational(x));
  long n = static_cast<long>(c.size());
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw Error(ErrorCode::parse_error, "'n' must be an integer");
    n = j["n"].get<long>();
  }
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "n must be at least 1");
  return params_create(static_cast<unsigned>(n), json_rational(j["a"]), json_rational(j["b"]), c);
}

Json cardinalities_json(const Cardinalities& c) {
  Json out = {{"complete", c.complete}, {"method", c.method}};
  if (c.complete) {
    out["mon"] = c.mon;
    out["ref"] = c.ref;
    out["quotient"] = c.quotient;
  } else {
    out["mon"] = out["ref"] = out["quotient"] = nullptr;
  }
  return out;
}

Json structure_json(const StructureReport& r) {
  Json out = {{"case", detection_json(r.detection)},
              {"permuted_params", params_json(r.permuted)},
              {"clause", r.clause},
              {"type", r.type},
              {"intersection", intersection_json(r.intersection)},
              {"verified", r.verified}};
  if (r.j) out["j"] = r.j;
  if (r.verified)
    out["verification"] = {{"matches", r.matches},
                           {"intersection_order", r.intersection_order},
                           {"predicted_order", r.predicted_order},
                           {"ref_order", r.ref_order}};
  return out;
}

Json classification_json(const ClassificationReport& r) {
  Json out = {{"params", params_json(r.params)},
              {"irreducible", r.irreducible},
              {"finite", verdict_name(r.finite)},
              {"reason", r.reason},
              {"condition_a", flags_json(r.condition_a)},
              {"case", detection_json(r.detection)}};
  if (r.condition_b) {
    const ConditionB& b = *r.condition_b;
    Json witnesses = Json::array();
    for (std::size_t k = 0; k < b.gamma_minus_one.size(); ++k)
      if (b.gamma_minus_one[k]) witnesses.push_back("gamma_" + std::to_string(k + 1));
    if (b.ratio_minus_one) witnesses.push_back("beta/alpha");
    if (b.delta0_minus_one) witnesses.push_back("delta_0");
    out["condition_b"] = {{"holds", b.holds}, {"minus_one", witnesses}};
  } else {
    out["condition_b"] = nullptr;
  }
  out["kato"] = r.kato ? Json(*r.kato) : Json(nullptr);
  out["schwarz_row"] = r.schwarz_row ? Json(*r.schwarz_row) : Json(nullptr);
  if (r.structure) {
    out["structure_type"] = r.structure->type;
    out["intersection"] = intersection_json(r.structure->intersection);
    out["structure"] = structure_json(*r.structure);
  } else {
    out["structure_type"] = "n/a";
    out["intersection"] = nullptr;
  }
  out["cardinalities"] = r.cardinalities ? cardinalities_json(*r.cardinalities) : Json(nullptr);
  return out;
}

Json decomposition_json(const DecompositionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  Json card = Json::object();
  for (const auto& [k, v] : r.cardinalities) card[k] = v;
  return {{"lemma", reduction_name(r.lemma)}, {"checks", checks}, {"cardinalities", card}, {"all_pass", r.all_pass()}};
}

Json table_json(TableId t, const std::vector<TableResult>& rows) {
  Json out = Json::array();
  bool all = true;
  for (const auto& r : rows) {
    Json row = {{"row", r.row},       {"instance", r.instance}, {"sign", r.sign},
                {"params", r.params}, {"ok", r.ok},             {"match", r.match()},
                {"expected", {{"mon", r.expected_mon}, {"ref", r.expected_ref}, {"ratio", r.expected_ratio},
                              {"cyclic", r.expected_cyclic}}}};
    if (r.ok)
      row["computed"] = {{"mon", r.mon}, {"ref", r.ref}, {"ratio", r.ratio}, {"cyclic", r.cyclic}};
    else
      row["error"] = r.error;
    all = all && r.match();
    out.push_back(row);
  }
  return {{"table", table_name(t)}, {"rows", out}, {"all_match", all}};
}

std::string structure_text(const StructureReport& r) {
  Lines l;
  l.add("case", std::string(case_name(r.detection.tag)) + " perm " + perm_text(r.detection.perm));
  l.add("permuted", r.permuted.to_string());
  l.add("clause", r.clause);
  l.add("type", std::to_string(r.type));
  l.add("intersection", r.intersection.word());
  if (r.verified) {
    l.add("verified", r.matches ? "yes" : "MISMATCH");
    l.add("|Ref cap A|", std::to_string(r.intersection_order));
    l.add("|predicted|", std::to_string(r.predicted_order));
    l.add("|Ref|", std::to_string(r.ref_order));
  }
  return l.str();
}

std::string classification_text(const ClassificationReport& r) {
  Lines l;
  l.add("params", r.params.to_string());
  l.add("irreducible", r.irreducible ? "true" : "false");
  l.add("finite", std::string(verdict_name(r.finite)) + " (" + r.reason + ")");
  l.add("condition A", flags_text(r.condition_a));
  if (r.condition_b) l.add("condition B", r.condition_b->holds ? "true" : "false");
  if (r.kato) l.add("condition B'", *r.kato ? "true" : "false");
  if (r.schwarz_row) l.add("Schwarz row", std::to_string(*r.schwarz_row));
  if (r.detection.tag != CaseB::none)
    l.add("case", std::string(case_name(r.detection.tag)) + " perm " + perm_text(r.detection.perm));
  if (r.structure) {
    l.add("type", std::to_string(r.structure->type));
    l.add("intersection", r.structure->intersection.word());
  }
  std::string s = l.str();
  if (r.cardinalities) s += cardinalities_text(r.params, *r.cardinalities);
  return s;
}

std::string cardinalities_text(const ParamSet&, const Cardinalities& c) {
  Lines l;
  if (!c.complete) {
    l.add("cardinalities", "exceeded cap (" + c.method + ")");
    return l.str();
  }
  l.add("|Mon|", std::to_string(c.mon));
  l.add("|Ref|", std::to_string(c.ref));
  l.add("|Mon/Ref|", std::to_string(c.quotient));
  l.add("method", c.method);
  return l.str();
}

std::string decomposition_text(const DecompositionReport& r) {
  std::ostringstream os;
  os << "lemma " << reduction_name(r.lemma) << "\n";
  for (const auto& c : r.checks)
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
  for (const auto& [k, v] : r.cardinalities) os << "  " << k << " = " << v << "\n";
  os << (r.all_pass() ? "all checks pass" : "some checks FAILED") << "\n";
  return os.str();
}

std::string table_text(TableId t, const std::vector<TableResult>& rows) {
  std::ostringstream os;
  os << table_name(t) << "\n";
  os << std::left << std::setw(26) << "row" << std::setw(22) << "instance" << std::setw(6) << "sign" << std::right
     << std::setw(9) << "|Mon|" << std::setw(8) << "|Ref|" << std::setw(6) << "quot" << std::setw(6) << "cyc"
     << "  expected" << "  match\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(26) << r.row << std::setw(22) << r.instance << std::setw(6) << r.sign << std::right;
    if (r.ok)
      os << std::setw(9) << r.mon << std::setw(8) << r.ref << std::setw(6) << r.ratio << std::setw(6) << r.cyclic;
    else
      os << std::setw(29) << ("error: " + r.error);
    os << "  " << r.expected_mon << "/" << r.expected_ref << "/" << r.expected_ratio << "/" << r.expected_cyclic
       << "  " << (r.match() ? "yes" : "NO") << "\n";
  }
  return os.str();
}

}  // namespace fcmono
