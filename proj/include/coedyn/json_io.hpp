#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "coedyn/chain.hpp"
#include "coedyn/cocycle.hpp"
#include "coedyn/dihedral.hpp"
#include "coedyn/dinfty_model.hpp"
#include "coedyn/finite_group.hpp"
#include "coedyn/rigidity.hpp"
#include "coedyn/skew_product.hpp"

namespace coedyn {

using Json = nlohmann::json;

// ---- chains: {"base": n1, "prefix": [m...], "tail": [m...]} ----

inline DivisibilityChain parse_chain(const Json& j) {
  std::vector<std::uint64_t> prefix, tail;
  if (j.contains("prefix"))
    for (const auto& m : j.at("prefix")) prefix.push_back(m.get<std::uint64_t>());
  for (const auto& m : j.at("tail")) tail.push_back(m.get<std::uint64_t>());
  return DivisibilityChain(j.at("base").get<std::uint64_t>(), std::move(prefix),
                           std::move(tail));
}

inline Json chain_to_json(const DivisibilityChain& chain) {
  return Json{{"base", chain.base()}, {"prefix", chain.prefix()}, {"tail", chain.tail()}};
}

// ---- groups: inline table {"order", "identity", "table"} or a named ref ----

inline std::shared_ptr<const FiniteGroupTable> parse_group(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name.rfind("Z/", 0) == 0)
      return std::make_shared<const FiniteGroupTable>(
          FiniteGroupTable::cyclic(std::stoi(name.substr(2))));
    if (name == "S3")
      return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::symmetric3());
    if (name == "D4")
      return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::dihedral8());
    throw std::invalid_argument("unknown group name: " + name);
  }
  const int order = j.at("order").get<int>();
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(order) * order);
  for (const auto& row : j.at("table"))
    for (const auto& v : row) flat.push_back(v.get<int>());
  return std::make_shared<const FiniteGroupTable>(order, j.at("identity").get<int>(),
                                                  std::move(flat));
}

inline Json group_to_json(const FiniteGroupTable& F) {
  Json rows = Json::array();
  for (int a = 0; a < F.order(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < F.order(); ++b) row.push_back(F.mul(a, b));
    rows.push_back(std::move(row));
  }
  return Json{{"order", F.order()}, {"identity", F.identity()}, {"table", std::move(rows)}};
}

// ---- cocycles: {"target": <group ref>, "level": j, "table": [indices]} ----

inline LevelCocycle parse_cocycle(const Json& j) {
  return LevelCocycle(parse_group(j.at("target")), j.at("level").get<int>(),
                      j.at("table").get<std::vector<int>>());
}

// ---- dihedral elements: {"k": int, "t": 0|1} or the pair form [k, t] ----

inline DihedralElement parse_dihedral(const Json& j) {
  if (j.is_array()) return {j.at(0).get<std::int64_t>(), j.at(1).get<int>() != 0};
  return {j.at("k").get<std::int64_t>(), j.at("t").get<int>() != 0};
}

inline Json dihedral_to_json(DihedralElement g) {
  return Json{{"k", g.exponent}, {"t", g.reflection ? 1 : 0}};
}

inline Json dihedral_to_pair(DihedralElement g) {
  return Json::array({g.exponent, g.reflection ? 1 : 0});
}

// ---- models: {"kind": "case1"|"case2", "chain": ..., "level": L} ----

inline DinftyModel parse_model(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  DivisibilityChain chain = parse_chain(j.at("chain"));
  const int level = j.at("level").get<int>();
  if (kind == "case1") return DinftyModel::case1(std::move(chain), level);
  if (kind == "case2") return DinftyModel::case2(std::move(chain), level);
  throw std::invalid_argument("model kind must be \"case1\" or \"case2\"");
}

inline Json model_to_json(const DinftyModel& model) {
  return Json{{"kind", model.kind() == DinftyModel::Kind::CaseI ? "case1" : "case2"},
              {"chain", chain_to_json(model.base().chain())},
              {"level", model.base().level()}};
}

// ---- witnesses ----

struct WitnessFile {
  DinftyModel model;
  DinftyModel model_prime;
  CoeWitness witness;
};

inline WitnessFile parse_witness(const Json& j) {
  WitnessFile out{parse_model(j.at("model")), parse_model(j.at("model_prime")), {}};
  out.witness.h = j.at("h").get<std::vector<std::uint64_t>>();
  for (const auto& e : j.at("c_s")) out.witness.c_s.push_back(parse_dihedral(e));
  for (const auto& e : j.at("c_t")) out.witness.c_t.push_back(parse_dihedral(e));
  return out;
}

inline Json witness_to_json(const DinftyModel& model, const DinftyModel& model_prime,
                            const CoeWitness& w) {
  Json cs = Json::array(), ct = Json::array();
  for (const auto& g : w.c_s) cs.push_back(dihedral_to_pair(g));
  for (const auto& g : w.c_t) ct.push_back(dihedral_to_pair(g));
  return Json{{"model", model_to_json(model)},
              {"model_prime", model_to_json(model_prime)},
              {"h", w.h},
              {"c_s", std::move(cs)},
              {"c_t", std::move(ct)}};
}

// ---- report fragments ----

inline Json essential_values_to_json(const EssentialValueSet& E) {
  return Json{{"values", E.values}};
}

inline Json verdict_to_json(const CoboundaryVerdict& v) {
  Json j{{"kind", v.is_coboundary() ? "CoboundaryAtLevel" : "NeverCoboundary"},
         {"obstruction", essential_values_to_json(v.obstruction)}};
  if (v.is_coboundary()) j["level"] = v.level;
  return j;
}

inline Json transfer_to_json(const TransferFunction& t) {
  return Json{{"level", t.level},
              {"table", t.table},
              {"orientation",
               t.orientation == TransferFunction::Orientation::Forward ? "forward"
                                                                       : "standard"}};
}

/// Model states cross module boundaries as decimal strings so reports stay
/// exact at any level.
inline Json state_to_json(std::uint64_t x) { return std::to_string(x); }

inline Json conjugacy_result_to_json(const ConjugacyResult& r) {
  Json untwister = Json::array();
  for (const auto& g : r.untwister) untwister.push_back(dihedral_to_pair(g));
  Json conj = Json::array();
  for (std::uint64_t v : r.conjugacy) conj.push_back(state_to_json(v));
  return Json{{"case", r.kind == DinftyModel::Kind::CaseI ? "case1" : "case2"},
              {"k", r.automorphism_k},
              {"verified", r.verified},
              {"untwister", std::move(untwister)},
              {"conjugacy", std::move(conj)}};
}

inline Json certificate_to_json(const CertificateOutcome& outcome) {
  Json j;
  switch (outcome.status) {
    case CertificateOutcome::Status::Issued: j["status"] = "issued"; break;
    case CertificateOutcome::Status::NontrivialCenter:
      j["status"] = "refused";
      j["reason"] = "nontrivial center";
      break;
    case CertificateOutcome::Status::Coboundary:
      j["status"] = "refused";
      j["reason"] = "cocycle is a coboundary";
      break;
    case CertificateOutcome::Status::ValuesNotPrimeCyclic:
      j["status"] = "refused";
      j["reason"] = "values do not generate a prime-order cyclic subgroup";
      break;
  }
  if (outcome.certificate) {
    const NonConjugacyCertificate& c = *outcome.certificate;
    Json pairs = Json::array();
    for (auto [a, b] : c.noncommuting_pairs) pairs.push_back(Json::array({a, b}));
    j["certificate"] = Json{{"group_order", c.group_order},
                            {"noncommuting_pairs", std::move(pairs)},
                            {"value_subgroup", c.value_subgroup},
                            {"prime", c.prime},
                            {"obstruction", verdict_to_json(c.obstruction)}};
  }
  return j;
}

}  // namespace coedyn
