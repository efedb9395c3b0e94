#include "malt/report.hpp"

#include "malt/budget.hpp"
#include "malt/error.hpp"

namespace malt {

Json to_json(const TermOperation& op) {
  Json j;
  j["arity"] = op.arity;
  j["table"] = op.table;
  return j;
}

Json to_json(std::span<const TermOperation> sequence) {
  Json tables = Json::array();
  for (const auto& op : sequence) tables.push_back(op.table);
  Json j;
  j["length"] = sequence.empty() ? 0 : sequence.size() - 1;
  j["tables"] = std::move(tables);
  return j;
}

Json to_json(const ValidityReport& report) {
  Json j;
  j["valid"] = report.valid();
  j["violation_count"] = report.violation_count;
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json e;
    e["tag"] = v.tag;
    e["position"] = v.position;
    e["point"] = v.point;
    e["lhs"] = v.lhs;
    e["rhs"] = v.rhs;
    list.push_back(std::move(e));
  }
  j["violations"] = std::move(list);
  j["notes"] = report.notes;
  return j;
}

namespace {

std::string_view status_name(LevelStatus s) {
  switch (s) {
    case LevelStatus::Found: return "found";
    case LevelStatus::NoneUpToCap: return "none-up-to-cap";
    case LevelStatus::PartialClone: return "partial-clone";
  }
  return "unknown";
}

}  // namespace

Json to_json(const LevelReport& report) {
  Json j;
  j["kind"] = std::string(to_string(report.kind));
  j["status"] = std::string(status_name(report.status));
  j["level"] = report.level ? Json(*report.level) : Json(nullptr);
  j["cap_n"] = report.cap_n;
  j["clone_size"] = report.clone_size;
  j["clone_complete"] = report.clone_complete;
  j["witness_ids"] = report.witness_ids;
  j["witness"] = to_json(std::span<const TermOperation>(report.witness));
  Json terms = Json::array();
  for (const auto& t : report.witness_terms) terms.push_back(to_string(t));
  j["witness_terms"] = std::move(terms);
  return j;
}

Json to_json(const InclusionReport& report) {
  Json j;
  j["tag"] = report.tag;
  j["holds"] = report.holds();
  j["checked"] = report.checked;
  j["violation_count"] = report.violation_count;
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json e;
    e["relations"] = v.relation_ids;
    e["pair"] = {v.pair.first, v.pair.second};
    e["direction"] = v.direction;
    list.push_back(std::move(e));
  }
  j["violations"] = std::move(list);
  return j;
}

Json to_json(const Theorem12Report& report) {
  Json j;
  j["pattern"] = to_string(report.pattern);
  j["r"] = report.pattern.r();
  j["scope"] = "per-algebra";
  j["S"] = to_string(report.s_verdict);
  j["S1"] = to_string(report.s1_verdict);
  j["S+"] = to_string(report.splus_verdict);
  j["implication_holds"] = report.implication_holds();
  Json checks = Json::array();
  checks.push_back(to_json(report.s));
  if (report.s1) checks.push_back(to_json(*report.s1));
  if (report.splus) checks.push_back(to_json(*report.splus));
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const Congruence& c) {
  Json j;
  j["blocks"] = c.blocks();
  j["text"] = to_string(c);
  return j;
}

Json to_json(const CongruenceLattice& lattice) {
  Json j;
  j["size"] = lattice.size();
  Json members = Json::array();
  for (const auto& c : lattice.members()) members.push_back(to_json(c));
  j["congruences"] = std::move(members);
  Json meet = Json::array(), join = Json::array();
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    Json mrow = Json::array(), jrow = Json::array();
    for (std::size_t b = 0; b < lattice.size(); ++b) {
      mrow.push_back(lattice.meet(a, b));
      jrow.push_back(lattice.join(a, b));
    }
    meet.push_back(std::move(mrow));
    join.push_back(std::move(jrow));
  }
  j["meet"] = std::move(meet);
  j["join"] = std::move(join);
  auto law = [](const LawCheck& check) {
    Json l;
    l["holds"] = check.holds;
    l["witness"] = check.witness ? Json(*check.witness) : Json(nullptr);
    return l;
  };
  j["modular"] = law(check_modular(lattice));
  j["distributive"] = law(check_distributive(lattice));
  return j;
}

Json to_json(const BinaryRelation& r) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs()) pairs.push_back({a, b});
  return pairs;
}

std::vector<TermOperation> parse_sequence(const Json& doc, std::size_t size,
                                          std::size_t arity) {
  const Json* tables = &doc;
  if (doc.is_object()) {
    if (!doc.contains("tables")) {
      throw ParseError("sequence object needs a \"tables\" array");
    }
    tables = &doc["tables"];
  }
  if (!tables->is_array() || tables->empty()) {
    throw ParseError("sequence must be a non-empty array of tables");
  }
  const std::size_t length = checked_power(size, arity);
  std::vector<TermOperation> out;
  for (std::size_t i = 0; i < tables->size(); ++i) {
    const Json& t = (*tables)[i];
    if (!t.is_array() || t.size() != length) {
      throw ValidationError("term " + std::to_string(i) +
                            ": expected a table of length " +
                            std::to_string(length));
    }
    TermOperation op{arity, size, {}};
    op.table.reserve(length);
    for (const Json& e : t) {
      if (!e.is_number_unsigned() || e.get<std::size_t>() >= size) {
        throw ValidationError("term " + std::to_string(i) +
                              ": entries must be elements below " +
                              std::to_string(size));
      }
      op.table.push_back(e.get<Element>());
    }
    out.push_back(std::move(op));
  }
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace malt
