#include "pgldes/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pgldes/cayley.hpp"
#include "pgldes/codes.hpp"
#include "pgldes/designs.hpp"
#include "pgldes/jsonio.hpp"

namespace pgldes {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  try {
    return std::stoull(s);
  } catch (...) {
    throw std::invalid_argument(std::string(name) + ": not a number");
  }
}

// Options shared by every enumerating command.
struct CommonOpts {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  std::uint64_t trials = 32;
  std::uint64_t subset_cap = env_u64("PGLDES_SUBSET_CAP", 10'000'000);
  std::uint64_t block_cap = env_u64("PGLDES_BLOCK_CAP", 10'000'000);
  std::uint64_t word_cap = env_u64("PGLDES_WORD_CAP", 100'000'000);

  EnumOptions enum_opts() const {
    EnumOptions o;
    o.subset_cap = subset_cap;
    o.block_cap = block_cap;
    o.workers = workers;
    o.seed = seed;
    o.invariance_trials = trials;
    return o;
  }
  CodeCaps code_caps() const {
    CodeCaps c;
    c.word_cap = word_cap;
    c.workers = workers;
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out, "write the JSON report to this file");
  cmd->add_option("--format", c.format, "stdout rendering: json, csv, text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--seed", c.seed, "seed for sampled checks");
  cmd->add_option("--workers", c.workers, "worker threads (output-neutral)");
  cmd->add_option("--trials", c.trials, "invariance sample size");
  cmd->add_option("--subset-cap", c.subset_cap, "max subsets per scan");
  cmd->add_option("--block-cap", c.block_cap, "max blocks per family");
  cmd->add_option("--word-cap", c.word_cap, "max codeword classes per scan");
}

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items())
      flatten(val, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void emit(const Json& j, const CommonOpts& c) {
  if (c.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    if (c.format == "csv") {
      std::cout << "key,value\n";
      for (const auto& [k, v] : rows)
        std::cout << csv_quote(k) << ',' << csv_quote(v) << '\n';
    } else {
      for (const auto& [k, v] : rows) std::cout << k << ": " << v << '\n';
    }
  }
  if (!c.out.empty()) write_json_file(c.out, j);  // file is always JSON
}

Subspace parse_subspace(const Field& f, std::uint64_t k,
                        const std::string& sel) {
  if (sel == "lucas") return Subspace::lucas(f, k);
  if (sel == "full") return Subspace::full(f, k);
  if (sel.rfind("file:", 0) == 0) {
    const Json j = load_json_file(sel.substr(5));
    if (j.contains("field") &&
        !(Field::parse(j.at("field").get<std::string>()) == f))
      throw std::invalid_argument("subspace file was made for another field");
    if (j.contains("k") && j.at("k").get<std::uint64_t>() != k)
      throw std::invalid_argument("subspace file has a different degree");
    Matrix rows;
    for (const Json& jr : j.at("rows"))
      rows.push_back(jr.get<std::vector<Code>>());
    return Subspace::from_rows(f, k, rows);
  }
  throw std::invalid_argument("subspace must be lucas, full, or file:PATH");
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"designs from invariant polynomial subspaces"};
  app.require_subcommand(1);

  // --- field ---------------------------------------------------------
  auto* cmd_field = app.add_subcommand("field", "inspect a field spec");
  std::string field_spec;
  CommonOpts field_c;
  cmd_field->add_option("spec", field_spec, "p^e or p^e:c0,c1,...,1")
      ->required();
  add_common(cmd_field, field_c);

  // --- design --------------------------------------------------------
  auto* cmd_design = app.add_subcommand("design", "line-model families");
  cmd_design->require_subcommand(1);
  struct {
    std::string field, subspace = "lucas", method = "orbit", blocks;
    std::uint64_t k = 0, t = 3, m = 1;
    CommonOpts c;
  } d_build, d_verify, d_lambda, d_steiner, d_empty;

  auto* build = cmd_design->add_subcommand("build", "enumerate a family");
  build->add_option("--field", d_build.field)->required();
  build->add_option("--k", d_build.k)->required();
  build->add_option("--subspace", d_build.subspace);
  build->add_option("--method", d_build.method)
      ->check(CLI::IsMember({"brute", "orbit"}));
  add_common(build, d_build.c);

  auto* verify = cmd_design->add_subcommand("verify", "tally a family file");
  verify->add_option("--blocks", d_verify.blocks, "family JSON file")
      ->required();
  verify->add_option("--t", d_verify.t);
  add_common(verify, d_verify.c);

  auto* lambda = cmd_design->add_subcommand(
      "lambda", "blocks through the fixed triple");
  lambda->add_option("--field", d_lambda.field)->required();
  lambda->add_option("--k", d_lambda.k)->required();
  lambda->add_option("--subspace", d_lambda.subspace);
  add_common(lambda, d_lambda.c);

  auto* steiner = cmd_design->add_subcommand(
      "steiner", "subfield-size blocks, expected count check");
  steiner->add_option("--field", d_steiner.field)->required();
  steiner->add_option("--m", d_steiner.m)->required();
  add_common(steiner, d_steiner.c);

  auto* empty = cmd_design->add_subcommand("empty", "emptiness oracle");
  empty->add_option("--field", d_empty.field)->required();
  empty->add_option("--k", d_empty.k)->required();
  add_common(empty, d_empty.c);

  // --- cayley --------------------------------------------------------
  auto* cmd_cayley = app.add_subcommand("cayley", "unit-circle model");
  cmd_cayley->require_subcommand(1);
  struct {
    std::string field, subspace = "lucas";
    std::uint64_t k = 0, p = 3, kmax = 20;
    CommonOpts c;
  } y_check, y_classify, y_six;

  auto* check = cmd_cayley->add_subcommand("check", "model equivalence");
  check->add_option("--field", y_check.field)->required();
  check->add_option("--k", y_check.k)->required();
  check->add_option("--subspace", y_check.subspace);
  add_common(check, y_check.c);

  auto* classify = cmd_cayley->add_subcommand(
      "classify", "single-equation degrees for a characteristic");
  classify->add_option("--p", y_classify.p)->required();
  classify->add_option("--kmax", y_classify.kmax);
  add_common(classify, y_classify.c);

  auto* sixsets = cmd_cayley->add_subcommand(
      "sixsets", "six-subset family and the factor-7 identity");
  sixsets->add_option("--field", y_six.field)->required();
  add_common(sixsets, y_six.c);

  // --- code ----------------------------------------------------------
  auto* cmd_code = app.add_subcommand("code", "evaluation codes");
  cmd_code->require_subcommand(1);
  struct {
    std::string field, subspace = "lucas", w = "min";
    std::uint64_t k = 0, t = 3, m = 2;
    CommonOpts c;
  } o_info, o_dual, o_melas;

  auto* info = cmd_code->add_subcommand("info", "parameters and weights");
  info->add_option("--field", o_info.field)->required();
  info->add_option("--k", o_info.k)->required();
  info->add_option("--subspace", o_info.subspace);
  add_common(info, o_info.c);

  auto* dualdesign = cmd_code->add_subcommand(
      "dualdesign", "support design of the dual code");
  dualdesign->add_option("--field", o_dual.field)->required();
  dualdesign->add_option("--k", o_dual.k)->required();
  dualdesign->add_option("--subspace", o_dual.subspace);
  dualdesign->add_option("--w", o_dual.w, "codeword weight, or 'min'");
  dualdesign->add_option("--t", o_dual.t);
  add_common(dualdesign, o_dual.c);

  auto* melas = cmd_code->add_subcommand(
      "melas", "ternary constraint-pair pipeline");
  melas->add_option("--m", o_melas.m)->required();
  add_common(melas, o_melas.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_field->parsed()) {
      const Field f = Field::parse(field_spec);
      Json j;
      j["spec"] = f.spec_string();
      j["p"] = f.p();
      j["e"] = f.e();
      j["q"] = f.q();
      j["modulus"] = f.modulus();
      j["generator"] = f.generator();
      emit(j, field_c);
      return 0;
    }

    if (build->parsed()) {
      const Field f = Field::parse(d_build.field);
      const Subspace w = parse_subspace(f, d_build.k, d_build.subspace);
      const EnumMethod method = d_build.method == "brute" ? EnumMethod::brute
                                                          : EnumMethod::orbit;
      const BlockFamily fam =
          enumerate_blocks(f, w, d_build.k, method, d_build.c.enum_opts());
      emit(family_json(f, fam), d_build.c);
      return 0;
    }
    if (verify->parsed()) {
      const auto [f, fam] = family_from_json(load_json_file(d_verify.blocks));
      Json j = design_report_json(verify_design(fam, d_verify.t));
      j["field"] = f.spec_string();
      emit(j, d_verify.c);
      return 0;
    }
    if (lambda->parsed()) {
      const Field f = Field::parse(d_lambda.field);
      const Subspace w = parse_subspace(f, d_lambda.k, d_lambda.subspace);
      Json j;
      j["field"] = f.spec_string();
      j["k"] = d_lambda.k;
      j["lambda"] = lambda_count(f, w, d_lambda.k, d_lambda.c.enum_opts());
      emit(j, d_lambda.c);
      return 0;
    }
    if (steiner->parsed()) {
      const Field f = Field::parse(d_steiner.field);
      const SteinerReport rep =
          steiner_q0_report(f, d_steiner.m, d_steiner.c.enum_opts());
      emit(steiner_json(f, rep), d_steiner.c);
      return 0;
    }
    if (empty->parsed()) {
      const Field f = Field::parse(d_empty.field);
      const EmptinessReport rep =
          emptiness_oracle(f, d_empty.k, d_empty.c.enum_opts());
      emit(emptiness_json(f, rep), d_empty.c);
      return 0;
    }

    if (check->parsed()) {
      const Field f = Field::parse(y_check.field);
      const Subspace w = parse_subspace(f, y_check.k, y_check.subspace);
      const ModelEquivalence rep =
          model_equivalence(f, w, y_check.k, y_check.c.enum_opts());
      const ExtField ext(f);
      emit(model_equivalence_json(f, y_check.k, rep, ext), y_check.c);
      return 0;
    }
    if (classify->parsed()) {
      Json j;
      j["p"] = y_classify.p;
      j["kmax"] = y_classify.kmax;
      Json hits = Json::array();
      for (std::uint64_t k = 3; k <= y_classify.kmax; ++k)
        if (single_equation_classify(y_classify.p, k)) hits.push_back(k);
      j["single_equation_k"] = std::move(hits);
      emit(j, y_classify.c);
      return 0;
    }
    if (sixsets->parsed()) {
      const Field f = Field::parse(y_six.field);
      const CayleyCtx ctx = CayleyCtx::make(f);
      const auto six = six_subset_family(ctx, y_six.c.enum_opts());
      std::uint64_t blocks7 = 0;
      if (f.q() + 1 >= 7)
        blocks7 = enumerate_blocks(f, Subspace::lucas(f, 7), 7,
                                   EnumMethod::orbit, y_six.c.enum_opts())
                      .blocks.size();
      Json j;
      j["field"] = f.spec_string();
      j["count"] = six.size();
      j["blocks7"] = blocks7;
      j["factor7_matches"] = six.size() == 7 * blocks7;
      emit(j, y_six.c);
      return 0;
    }

    if (info->parsed()) {
      const Field f = Field::parse(o_info.field);
      const Subspace w = parse_subspace(f, o_info.k, o_info.subspace);
      const LinearCode c = code_from_subspace(f, w);
      Json j;
      j["field"] = f.spec_string();
      j["k"] = o_info.k;
      j["n"] = c.n;
      j["dim"] = c.dim();
      const CodeCaps caps = o_info.c.code_caps();
      try {
        j["d"] = min_distance(c, caps);
      } catch (const std::runtime_error&) {
        j["d"] = nullptr;  // scan over cap; parameters still reported
      }
      try {
        j["distribution"] =
            weight_dist_json(weight_distribution(c, WeightStrategy::direct,
                                                 caps));
      } catch (const std::runtime_error&) {
        try {
          j["distribution"] = weight_dist_json(
              weight_distribution(c, WeightStrategy::via_dual, caps));
        } catch (const std::runtime_error&) {
          j["distribution"] = nullptr;
        }
      }
      emit(j, o_info.c);
      return 0;
    }
    if (dualdesign->parsed()) {
      const Field f = Field::parse(o_dual.field);
      const Subspace w = parse_subspace(f, o_dual.k, o_dual.subspace);
      const LinearCode dc = dual(code_from_subspace(f, w));
      const CodeCaps caps = o_dual.c.code_caps();
      const std::uint64_t wt = o_dual.w == "min"
                                   ? min_distance(dc, caps)
                                   : std::stoull(o_dual.w);
      const SupportDesignReport rep = support_design(dc, wt, o_dual.t, caps);
      Json j;
      j["field"] = f.spec_string();
      j["k"] = o_dual.k;
      j["w"] = rep.w;
      j["design"] = design_report_json(rep.design);
      j["family"] = family_json(f, rep.family);
      emit(j, o_dual.c);
      return 0;
    }
    if (melas->parsed()) {
      const MelasReport rep =
          melas_report(o_melas.m, o_melas.c.enum_opts(), o_melas.c.code_caps());
      emit(melas_json(rep), o_melas.c);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    Json err;
    err["error"] = e.what();
    err["type"] = "invalid_argument";
    std::cout << err.dump(2) << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    Json err;
    err["error"] = e.what();
    err["type"] = "assertion";  // a theorem-level check failed
    std::cout << err.dump(2) << '\n';
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    err["type"] = "runtime";
    std::cout << err.dump(2) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  return dispatch(argc, argv);
}

}  // namespace pgldes
