#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "qfla/automorphisms.hpp"
#include "qfla/derivations.hpp"
#include "qfla/error.hpp"
#include "qfla/iso.hpp"
#include "qfla/json_io.hpp"

namespace qfla::cli {

namespace {

namespace io = qfla::json;
using io::json;

struct Outcome {
  json body;
  bool no = false;  // a mathematical "no" verdict, reported under --strict
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

io::LoadedAlgebra load_algebra(const std::string& path) {
  return io::algebra_from_json(read_json_file(path));
}

QuasiQnSpec load_spec(const std::string& path) {
  auto loaded = load_algebra(path);
  if (!loaded.spec) throw BadSpec(path + ": field spec is required for this command");
  return *loaded.spec;
}

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

std::size_t span_rank(const std::vector<Matrix>& maps, std::size_t dim) {
  std::vector<Vector> flat;
  for (const auto& m : maps) flat.push_back(flatten(m));
  return rank_of(flat, dim * dim);
}

json names_of(const std::vector<DerBasisElement>& elements) {
  json out = json::array();
  for (const auto& e : elements) out.push_back(e.name());
  return out;
}

Outcome cmd_build(const std::optional<std::string>& spec_path, int n, int m, int r,
                  const std::string& b_text) {
  QuasiQnSpec spec;
  if (spec_path) {
    spec = io::spec_from_json(read_json_file(*spec_path));
  } else {
    json b;
    try {
      b = json::parse(b_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("field B: ") + e.what());
    }
    spec = io::spec_from_json(json{{"n", n}, {"m", m}, {"r", r}, {"B", b}});
  }
  return {io::algebra_to_json(build_quasi(spec), spec)};
}

Outcome cmd_check(const std::string& path) {
  const auto loaded = load_algebra(path);
  const LieAlgebra& l = loaded.algebra;
  json out;
  const bool jacobi = check_jacobi(l).holds;
  out["jacobi"] = jacobi;
  bool nilpotent = true;
  try {
    const auto dims = lower_central_series(l).dims();
    out["lcs_dims"] = dims;
  } catch (const NotNilpotent&) {
    nilpotent = false;
    out["lcs_dims"] = nullptr;
  }
  out["nilpotent"] = nilpotent;
  out["filiform"] = nilpotent && is_filiform(l);
  out["min_generators"] = minimal_generator_count(l);
  const auto split = quasi_cyclic_split(l, generator_complement(l));
  if (const auto* chain = std::get_if<SubspaceChain>(&split)) {
    out["quasi_cyclic"] = true;
    out["quasi_cyclic_dims"] = chain->dims();
  } else {
    out["quasi_cyclic"] = false;
    out["quasi_cyclic_dims"] = std::get<QuasiCyclicFailure>(split).chain.dims();
  }
  return {out, !jacobi || !nilpotent};
}

Outcome cmd_der(const std::string& path, bool compare, const std::optional<std::string>& cand) {
  const auto loaded = load_algebra(path);
  json out;
  bool no = false;
  if (!loaded.spec) {
    if (cand) throw BadSpec(path + ": field spec is required for --candidate");
    out["dim_oracle"] = derivation_oracle(loaded.algebra).size();
    return {out};
  }
  const QuasiQn q(*loaded.spec);
  const bool block = block_structure(q.spec).has_value();
  const auto torus = torus_basis(q);
  out["block_form"] = block;
  out["torus"] = names_of(torus);
  std::vector<DerBasisElement> nil;
  if (block) {
    nil = nilpotent_basis(q);
    out["nilpotent"] = names_of(nil);
    out["dim_formula"] = der_dimension(q.spec);
  } else {
    out["nilpotent"] = nullptr;
    out["dim_formula"] = nullptr;
  }
  json lambdas = json::array();
  for (const auto* group : {&torus, &std::as_const(nil)}) {
    for (const auto& e : *group) {
      std::vector<Scalar> values;
      for (const auto& c : lambda_of(q, e.map).copies) values.push_back(c.lambda);
      lambdas.push_back(json{{"element", e.name()}, {"lambda", io::to_json(values)}});
    }
  }
  out["lambda_table"] = std::move(lambdas);
  if (compare) {
    const auto oracle = derivation_oracle(q.algebra);
    out["dim_oracle"] = oracle.size();
    if (block) {
      std::vector<Matrix> closed;
      bool each = true;
      for (const auto* group : {&torus, &std::as_const(nil)}) {
        for (const auto& e : *group) {
          each = each && is_derivation(q.algebra, e.map);
          closed.push_back(e.map);
        }
      }
      const std::size_t d = q.spec.dim();
      std::vector<Matrix> both = closed;
      both.insert(both.end(), oracle.begin(), oracle.end());
      const std::size_t rc = span_rank(closed, d);
      const bool spans = rc == closed.size() && rc == oracle.size() && span_rank(both, d) == rc;
      const bool agree = each && spans && der_dimension(q.spec) == oracle.size();
      out["span_equal"] = spans;
      out["agree"] = agree;
      const auto variants = epsilon_block_start_variants(q);
      if (variants.empty()) {
        out["epsilon_block_start_is_derivation"] = nullptr;
      } else {
        out["epsilon_block_start_is_derivation"] =
            std::all_of(variants.begin(), variants.end(),
                        [&](const Matrix& v) { return is_derivation(q.algebra, v); });
      }
      no = no || !agree;
    } else {
      out["span_equal"] = nullptr;
      out["agree"] = nullptr;
    }
  }
  if (cand) {
    const AutCandidate c = io::candidate_from_json(q.spec, read_json_file(*cand));
    const GeneratorImages gi{c.e0, c.e1};
    const DerVerdict v = theorem21_conditions(q, gi);
    const bool leibniz = is_derivation(q.algebra, extend_derivation_candidate(q, gi));
    out["candidate"] = json{{"conditions", io::verdict_to_json(v)},
                            {"leibniz", leibniz},
                            {"agree", leibniz == v.pass}};
    no = no || !leibniz;
  }
  return {out, no};
}

Outcome cmd_aut(const std::string& alg_path, const std::string& cand_path) {
  const QuasiQn q(load_spec(alg_path));
  const AutCandidate c = io::candidate_from_json(q.spec, read_json_file(cand_path));
  const AutVerdict v = theorem41_conditions(q, c);
  const bool brute = is_automorphism(q.algebra, extend_automorphism_candidate(q, c));
  json out{{"theorem41", io::verdict_to_json(v)},
           {"brute_force", brute},
           {"agree", brute == v.pass}};
  return {out, !brute || !v.pass};
}

Outcome cmd_iso(const std::string& a, const std::string& b, unsigned jobs, bool no_map) {
  const IsoVerdict v = iso_decide(load_spec(a), load_spec(b), jobs, !no_map);
  return {io::iso_to_json(v), !v.isomorphic};
}

Outcome cmd_related(const std::string& path) {
  return {io::related_to_json(related_matrix_of(load_spec(path)))};
}

Outcome cmd_weights(const std::string& path) {
  const QuasiQn q(load_spec(path));
  const auto torus = torus_basis(q);
  std::vector<Matrix> maps;
  for (const auto& t : torus) maps.push_back(t.map);
  json spaces = json::array();
  for (const auto& ws : weight_decomposition(q.spec.dim(), maps)) {
    json basis = json::array();
    for (std::size_t k : ws.basis) basis.push_back(q.algebra.labels()[k].str());
    spaces.push_back(json{{"weight", io::to_json(ws.weight)},
                          {"basis", std::move(basis)},
                          {"mult", ws.basis.size()}});
  }
  return {json{{"torus", names_of(torus)}, {"spaces", std::move(spaces)}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi Q_n-filiform Lie algebras in exact rational arithmetic", "qfla"};
  app.require_subcommand(1);
  bool strict = false;
  std::string output;
  app.add_flag("--strict", strict, "Exit 1 on a negative mathematical verdict");
  app.add_option("-o,--output", output, "Write JSON to this file instead of stdout");

  auto* build = app.add_subcommand("build", "Build N(Q_n,m,r) and print its algebra JSON");
  std::optional<std::string> spec_path;
  int n = 5;
  int m = 1;
  int r = 1;
  std::string b_text = "[[]]";
  build->add_option("--spec", spec_path, "Spec JSON file")->check(CLI::ExistingFile);
  build->add_option("--n", n, "Odd n >= 5");
  build->add_option("--m", m, "Number of copies");
  build->add_option("--r", r, "Dimension of the top space");
  build->add_option("--B", b_text, "B as JSON rows, e.g. '[[\"1\"]]'");

  std::string file_a;
  std::string file_b;
  auto* check = app.add_subcommand("check", "Structural checks of an algebra");
  check->add_option("algebra", file_a, "Algebra or spec JSON")->required();

  auto* der = app.add_subcommand("der", "Derivation report");
  bool compare = false;
  std::optional<std::string> cand;
  der->add_option("algebra", file_a, "Algebra or spec JSON")->required();
  der->add_flag("--compare", compare, "Compare the closed-form basis with the Leibniz solve");
  der->add_option("--candidate", cand, "Generator images to test as a derivation");

  auto* aut = app.add_subcommand("aut-check", "Automorphism verdict for generator images");
  aut->add_option("algebra", file_a, "Algebra or spec JSON")->required();
  aut->add_option("candidate", file_b, "Candidate JSON")->required();

  auto* iso = app.add_subcommand("iso", "Isomorphism decision with witness");
  unsigned jobs = 1;
  bool no_map = false;
  iso->add_option("first", file_a, "Algebra or spec JSON")->required();
  iso->add_option("second", file_b, "Algebra or spec JSON")->required();
  iso->add_option("--jobs", jobs, "Threads for the permutation search")
      ->check(CLI::Range(1u, 256u));
  iso->add_flag("--no-map", no_map, "Skip the algebra-level witness");

  auto* related = app.add_subcommand("related", "Related matrix (A | I) and its kernel");
  related->add_option("algebra", file_a, "Algebra or spec JSON")->required();

  auto* weights = app.add_subcommand("weights", "Weight spaces of the maximal torus");
  weights->add_option("algebra", file_a, "Algebra or spec JSON")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Outcome result;
  try {
    if (build->parsed()) {
      result = cmd_build(spec_path, n, m, r, b_text);
    } else if (check->parsed()) {
      result = cmd_check(file_a);
    } else if (der->parsed()) {
      result = cmd_der(file_a, compare, cand);
    } else if (aut->parsed()) {
      result = cmd_aut(file_a, file_b);
    } else if (iso->parsed()) {
      result = cmd_iso(file_a, file_b, jobs, no_map);
    } else if (related->parsed()) {
      result = cmd_related(file_a);
    } else {
      result = cmd_weights(file_a);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string text = io::dump(result.body);
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output);
    if (!file || !(file << text)) {
      err << "error: cannot write " << output << "\n";
      return kInputError;
    }
  }
  return strict && result.no ? kNo : kOk;
}

}  // namespace qfla::cli
