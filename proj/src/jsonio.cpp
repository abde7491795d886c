#include "pgldes/jsonio.hpp"

#include <fstream>
#include <stdexcept>

namespace pgldes {

Json bigint_json(const BigInt& v) {
  static const BigInt kSafe = BigInt(1) << 53;
  if (v >= 0 && v < kSafe) return Json(v.convert_to<std::uint64_t>());
  return Json(v.str());
}

Json point_json(const ProjPoint& pt) {
  if (pt.is_infinity()) return Json("inf");
  return Json(pt.v);
}

ProjPoint point_from_json(const Json& j, std::uint64_t q) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf")
      throw std::invalid_argument("point: unknown string label");
    return ProjPoint::infinity();
  }
  const std::uint64_t code = j.get<std::uint64_t>();
  if (code >= q) throw std::invalid_argument("point: code out of range");
  return ProjPoint::finite(code);
}

Json family_json(const Field& f, const BlockFamily& fam) {
  Json j;
  j["field"] = f.spec_string();
  j["v"] = fam.v;
  j["k"] = fam.k;
  j["provenance"] = to_string(fam.provenance);
  Json blocks = Json::array();
  for (const Block& b : fam.blocks) {
    Json jb = Json::array();
    for (const auto& pt : b) jb.push_back(point_json(pt));
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

std::pair<Field, BlockFamily> family_from_json(const Json& j) {
  const Field f = Field::parse(j.at("field").get<std::string>());
  BlockFamily fam;
  fam.v = j.at("v").get<std::uint64_t>();
  fam.k = j.at("k").get<std::uint64_t>();
  if (fam.v != f.q() + 1)
    throw std::invalid_argument("family: v does not match the field");
  const std::string prov = j.value("provenance", "constructed");
  if (prov == "brute")
    fam.provenance = Provenance::brute;
  else if (prov == "orbit")
    fam.provenance = Provenance::orbit;
  else
    fam.provenance = Provenance::constructed;
  for (const Json& jb : j.at("blocks")) {
    Block b;
    for (const Json& jp : jb) b.push_back(point_from_json(jp, f.q()));
    fam.blocks.push_back(std::move(b));
  }
  return {f, fam};
}

Json design_report_json(const DesignReport& rep) {
  Json j;
  j["t"] = rep.t;
  j["v"] = rep.v;
  j["k"] = rep.k;
  j["b"] = rep.b;
  if (rep.lambda)
    j["lambda"] = *rep.lambda;
  else
    j["lambda"] = nullptr;
  j["is_design"] = rep.is_design;
  j["steiner"] = rep.steiner;
  return j;
}

Json emptiness_json(const Field& f, const EmptinessReport& rep) {
  Json j;
  j["field"] = f.spec_string();
  j["status"] = to_string(rep.status);
  j["how"] = rep.how;
  if (rep.witness) {
    Json jb = Json::array();
    for (const auto& pt : *rep.witness) jb.push_back(point_json(pt));
    j["witness"] = std::move(jb);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json steiner_json(const Field& f, const SteinerReport& rep) {
  Json j;
  j["field"] = f.spec_string();
  j["q0"] = rep.q0;
  j["applicable"] = rep.applicable;
  j["expected_blocks"] = rep.expected_blocks;
  j["count_matches"] = rep.count_matches;
  j["design"] = design_report_json(rep.design);
  j["family"] = family_json(f, rep.family);
  return j;
}

Json unit_block_json(const ExtField& ext, const UnitBlock& t) {
  Json jb = Json::array();
  for (Code u : t) {
    const auto [a, b] = ext.parts(u);
    jb.push_back(Json::array({a, b}));
  }
  return jb;
}

Json model_equivalence_json(const Field& f, std::uint64_t k,
                            const ModelEquivalence& rep,
                            const ExtField& ext) {
  Json j;
  j["field"] = f.spec_string();
  j["k"] = k;
  j["equal"] = rep.equal;
  j["line_blocks"] = rep.line_blocks;
  j["circle_blocks"] = rep.circle_blocks;
  if (rep.mismatch)
    j["mismatch"] = unit_block_json(ext, *rep.mismatch);
  else
    j["mismatch"] = nullptr;
  return j;
}

Json weight_dist_json(const WeightDist& w) {
  Json j;
  j["n"] = w.n;
  j["dim"] = w.dim;
  Json counts = Json::array();
  for (const BigInt& a : w.counts) counts.push_back(bigint_json(a));
  j["counts"] = std::move(counts);
  return j;
}

Json melas_json(const MelasReport& rep) {
  Json j;
  j["m"] = rep.m;
  j["q"] = rep.q;
  j["A3"] = bigint_json(rep.a3);
  j["A5"] = bigint_json(rep.a5);
  j["lambda2"] = rep.lam2;
  j["lambda1"] = rep.lam1;
  j["oracle_agreement"] = rep.oracle_agreement;
  j["distribution"] = weight_dist_json(rep.dist);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pgldes
