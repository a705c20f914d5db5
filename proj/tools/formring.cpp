// Command-line front end. Every command prints one JSON report.
// Exit codes: 0 pass, 1 fail, 2 unknown or inconclusive, 3 usage or parse error, 4 other errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "formring/closure.hpp"
#include "formring/suites.hpp"

namespace {

using namespace formring;

constexpr int kUsage = 3;
constexpr int kError = 4;

struct Options {
  std::string group, out, format = "json";
  std::uint64_t seed = 1;
  std::size_t cases = 100, cap_bfs = ClosureCaps{}.max_elements, max_mib = 2048, threads = 0;
  int cap_exponent = 16;
  bool timing = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
}

int emit(const Options& o, json report, int code) {
  report["exit_code"] = code;
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return kError;
    }
    f << text;
  }
  return code;
}

json config(const Options& o, const std::string& command) {
  return json{{"command", command}, {"group", o.group}, {"seed", o.seed}, {"cases", o.cases},
              {"cap_bfs", o.cap_bfs}, {"cap_exponent", o.cap_exponent}};
}

bool is_group_text(const std::string& s) {
  for (const char* f : {"quadratic:", "q:", "hermitian:", "h:"})
    if (s.rfind(f, 0) == 0) return true;
  return false;
}

// Flavor prefix or group options make it a group spec; otherwise only the form ring is checked.
int cmd_validate(const Options& o, const std::string& text) {
  json rep{{"command", "validate"}, {"spec", text}};
  FormRingPtr form;
  if (is_group_text(text) || text.find(";a=") != std::string::npos) {
    const GroupSpec g = parse_group_spec(text);
    form = g.group.form;
    rep["group"] = {{"flavor", g.group.hermitian() ? "hermitian" : "quadratic"}, {"n", g.group.n}, {"r", g.group.r()}};
  } else {
    form = parse_ring_spec(text).form;
  }
  const auto axioms = check_form_axioms(form->ring(), form->lambda(), form->lam());
  rep["form"] = form_parameter_json(*form);
  rep["axioms"] = {{"additive", axioms.additive},
                   {"contains_min", axioms.contains_min},
                   {"inside_max", axioms.inside_max},
                   {"conjugation_closed", axioms.conjugation_closed},
                   {"diagnostic", axioms.diagnostic}};
  rep["valid"] = axioms.ok();
  return emit(o, rep, axioms.ok() ? 0 : 1);
}

int cmd_suite(Options o, const std::string& name) {
  if (o.group.empty()) o.group = default_group(name);
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.cases = o.cases;
  cfg.cap_exponent = o.cap_exponent;
  cfg.threads = o.threads;
  const auto rep = run_suite(name, parse_group_spec(o.group), cfg);
  json j = rep.to_json(o.timing);
  j["config"] = config(o, "suite " + name);
  return emit(o, j, rep.exit_code());
}

int cmd_bfs(Options o) {
  if (o.group.empty()) o.group = "quadratic:3:zmod:2:lambda=1;gens=1";
  const GroupSpec spec = parse_group_spec(o.group);
  ClosureCaps caps;
  caps.max_elements = o.cap_bfs;
  caps.max_bytes = o.max_mib << 20;
  const Closure cl = bfs_closure(spec.group, caps);
  json j{{"config", config(o, "enum bfs")},
         {"size", cl.size()},
         {"complete", cl.complete()},
         {"generators", cl.generator_count()},
         {"bytes", cl.bytes()}};
  if (!cl.complete()) j["reason"] = cl.reason();
  if (o.timing) j["seconds"] = cl.seconds();
  int code = cl.complete() ? 0 : 2;
  // Symplectic type: Z/p with lambda = -1 and Lambda = R.
  const auto& form = *spec.group.form;
  const auto& ring = form.ring();
  bool prime = ring.kind() == FiniteRing::Kind::zmod && ring.size() > 1;
  for (std::size_t d = 2; prime && d * d <= ring.size(); ++d) prime = ring.size() % d != 0;
  if (prime && !spec.group.hermitian() && form.lambda() == ring.neg(ring.one()) && form.lam().count() == ring.size()) {
    const auto order = symplectic_group_order(ring.size(), spec.group.n);
    j["reference"] = {{"formula", "|Sp(2n, q)|"}, {"order", order}};
    if (cl.complete()) {
      j["match"] = cl.size() == order;
      if (cl.size() != order) code = 1;
    }
  }
  return emit(o, j, code);
}

int cmd_gl(Options o, int n, const std::string& base_text) {
  const RingSpec base = parse_ring_spec(base_text);
  if (base.hyperbolic || base.polynomial) fail(ErrorKind::unsupported, "GL comparison needs a Z/n base ring");
  o.group = "quadratic:" + std::to_string(n) + ":hyp:" + base_text;
  const GroupSpec spec = parse_group_spec(o.group);
  ClosureCaps caps;
  caps.max_elements = o.cap_bfs;
  caps.max_bytes = o.max_mib << 20;
  const auto r = check_gl_embedding(spec.group, base.form->ring(), caps);
  json j{{"config", config(o, "enum gl")},
         {"gl_elements", r.gl_elements},
         {"gl_order_formula", general_linear_order(base.form->ring().size(), n)},
         {"elementary_elements", r.elementary_elements},
         {"embedded_closure", r.embedded_closure},
         {"closure_complete", r.closure_complete},
         {"closure_equal", r.closure_equal},
         {"non_members", r.non_members},
         {"roundtrip_failures", r.roundtrip_failures},
         {"generator_failures", r.generator_failures},
         {"pairs", r.pairs},
         {"multiplicative_failures", r.multiplicative_failures},
         {"verdict", r.ok() ? "equal" : "different"}};
  return emit(o, j, !r.closure_complete ? 2 : r.ok() ? 0 : 1);
}

int cmd_member(const Options& o, const std::string& path) {
  const GroupSpec spec = parse_group_spec(o.group);
  const auto m = matrix_from_json(spec.group, read_json(path));
  const auto rep = is_member(spec.group.scalar(), spec.group, m);
  return emit(o, json{{"config", config(o, "member check")}, {"member", rep.ok}, {"diagnostic", rep.diagnostic}},
              rep.ok ? 0 : 1);
}

int cmd_eval(const Options& o, const std::string& path) {
  const GroupSpec spec = parse_group_spec(o.group);
  const auto w = word_from_json(spec.group, read_json(path));
  const auto m = eval(spec.group.scalar(), spec.group, w);
  const bool member = is_member(spec.group.scalar(), spec.group, m).ok;
  return emit(o, json{{"config", config(o, "gens eval")}, {"word", word_json(w)}, {"matrix", matrix_json(spec, m)},
                      {"member", member}},
              member ? 0 : 1);
}

int cmd_reduce(const Options& o, const std::string& path) {
  const GroupSpec spec = parse_group_spec(o.group);
  const auto& g = spec.group;
  const auto v = vector_from_json(g, read_json(path));
  json j{{"config", config(o, "reduce vector")}, {"input", vector_json(v)}};
  const auto iso = check_isotropic_unimodular(g, v);
  if (!iso.unimodular || !iso.isotropic) {
    j["status"] = "rejected";
    j["diagnostic"] = iso.diagnostic;
    return emit(o, j, 1);
  }
  const auto r = reduce_isotropic_unimodular(g, v);
  const auto alg = g.scalar();
  const std::size_t m = static_cast<std::size_t>(g.dim());
  const bool ok = vec_equal(alg, mat_vec(alg, eval(alg, g, r.word), v), basis_vector(alg, m, m - 1));
  j["status"] = ok ? "success" : "failure";
  j["direction"] = r.direction;
  j["word"] = word_json(r.word);
  j["steps"] = r.steps;
  j["verified"] = ok;
  return emit(o, j, ok ? 0 : 1);
}

int cmd_lg(const Options& o, const std::string& path) {
  const GroupSpec spec = parse_group_spec(o.group);
  const json in = read_json(path);
  const PolyWord alpha = poly_word_from_json(spec.group, in.is_object() && in.contains("alpha") ? in.at("alpha") : in);
  const auto r = local_global_patch(spec.group, alpha, o.cap_exponent);
  json pieces = json::array();
  for (const auto& p : r.pieces)
    pieces.push_back(json{{"s", p.s.index},
                          {"e", p.e.index},
                          {"b", p.b.index},
                          {"l", p.l},
                          {"local_word", poly_word_json(p.local_word)},
                          {"global_piece", poly_word_json(p.global_piece)}});
  json j{{"config", config(o, "lg run")}, {"status", r.status},   {"verified", r.verified},
         {"diagnostic", r.diagnostic},     {"pieces", pieces},    {"word", poly_word_json(r.word)}};
  const int code = r.status == "success" && r.verified ? 0 : r.status == "unknown" ? 2 : 1;
  return emit(o, j, code);
}

// A matrix is given as {"rows": ...} or a list of rows; anything else is read as a word.
Matrix<Elem> matrix_or_word(const GroupDescriptor& g, const json& j) {
  const bool rows = (j.is_object() && j.contains("rows")) || (j.is_array() && !j.empty() && j.front().is_array());
  if (rows) return matrix_from_json(g, j);
  return eval(g.scalar(), g, word_from_json(g, j));
}

int cmd_normality(const Options& o, const std::string& beta_path, const std::string& word_path) {
  const GroupSpec spec = parse_group_spec(o.group);
  const auto& g = spec.group;
  const auto alg = g.scalar();
  const auto beta = matrix_or_word(g, read_json(beta_path));
  if (!is_member(alg, g, beta)) fail(ErrorKind::precondition, "beta is not in the group");
  const auto alpha = word_from_json(g, read_json(word_path));
  const auto r = conjugate_into_E(g, beta, alpha);
  const auto target = mat_mul(alg, mat_mul(alg, beta, eval(alg, g, alpha)), group_inverse(alg, g, beta));
  const bool ok = mat_equal(alg, eval(alg, g, r.word), target);
  json j{{"config", config(o, "normality conjugate")},
         {"word", word_json(r.word)},
         {"verified", ok},
         {"via_patch", r.via_patch},
         {"via_rank_one", r.via_rank_one},
         {"commuting", r.commuting}};
  return emit(o, j, ok ? 0 : 1);
}

void add_common(CLI::App* app, Options& o, bool group_required) {
  auto* opt = app->add_option("--group", o.group, "group spec, e.g. quadratic:3:zmod:5:lambda=4;gens=1");
  if (group_required) opt->required();
  app->add_option("--out", o.out, "write the report here instead of stdout");
  app->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elementary quadratic and Hermitian groups over finite form rings"};
  app.require_subcommand(1);
  Options o;

  std::string spec_text;
  auto* validate = app.add_subcommand("validate", "check the form-ring axioms of a ring or group spec");
  validate->add_option("spec", spec_text, "ring or group spec")->required();
  add_common(validate, o, false);

  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "run a seeded property suite");
  suite->add_option("name", suite_name, "suite name")->required()->check(CLI::IsMember(suite_names()));
  add_common(suite, o, false);
  suite->add_option("--seed", o.seed);
  suite->add_option("--cases", o.cases);
  suite->add_option("--cap-exponent", o.cap_exponent, "search cap for dilation and patching exponents");
  suite->add_option("--threads", o.threads, "worker threads, 0 for one per hardware thread");
  suite->add_flag("--timing", o.timing, "include timings (the report is then not reproducible)");

  auto* enumerate = app.add_subcommand("enum", "closure enumeration");
  enumerate->require_subcommand(1);
  auto* bfs = enumerate->add_subcommand("bfs", "breadth-first closure of the elementary group");
  add_common(bfs, o, false);
  bfs->add_option("--cap,--cap-bfs", o.cap_bfs, "element cap");
  bfs->add_option("--max-mib", o.max_mib, "memory cap in MiB");
  bfs->add_flag("--timing", o.timing);
  int gl_n = 3;
  std::string gl_base = "zmod:2";
  auto* gl = enumerate->add_subcommand("gl", "compare GL(n) with its image under the hyperbolic-double embedding");
  gl->add_option("--n", gl_n);
  gl->add_option("--base", gl_base, "base ring spec");
  gl->add_option("--cap,--cap-bfs", o.cap_bfs);
  gl->add_option("--out", o.out);

  std::string matrix_path;
  auto* member = app.add_subcommand("member", "group membership");
  member->require_subcommand(1);
  auto* check = member->add_subcommand("check", "test a matrix against the group's defining form");
  add_common(check, o, true);
  check->add_option("--matrix", matrix_path)->required();

  std::string word_path;
  auto* gens = app.add_subcommand("gens", "generator words");
  gens->require_subcommand(1);
  auto* geval = gens->add_subcommand("eval", "evaluate a word to its matrix");
  add_common(geval, o, true);
  geval->add_option("--word", word_path)->required();
  std::string identity_suite;
  auto* gverify = gens->add_subcommand("verify-identities", "run one of the generator identity suites");
  gverify->add_option("--suite", identity_suite)->required()->check(CLI::IsMember({"split", "commutator", "key5", "key1"}));
  add_common(gverify, o, false);
  gverify->add_option("--seed", o.seed);
  gverify->add_option("--cases", o.cases);
  gverify->add_option("--threads", o.threads);
  gverify->add_flag("--timing", o.timing);

  std::string vector_path;
  auto* reduce = app.add_subcommand("reduce", "reduction algorithms");
  reduce->require_subcommand(1);
  auto* rvec = reduce->add_subcommand("vector", "move an isotropic unimodular vector to e_2n");
  add_common(rvec, o, true);
  rvec->add_option("--vector", vector_path)->required();

  std::string input_path;
  auto* lg = app.add_subcommand("lg", "local-global patching");
  lg->require_subcommand(1);
  auto* lgrun = lg->add_subcommand("run", "patch a word over R[X] from its localizations");
  add_common(lgrun, o, true);
  lgrun->add_option("--input", input_path, "word over R[X] with alpha(0) = I")->required();
  lgrun->add_option("--cap-exponent", o.cap_exponent);

  std::string beta_path;
  auto* normality = app.add_subcommand("normality", "normality of the elementary subgroup");
  normality->require_subcommand(1);
  auto* conj = normality->add_subcommand("conjugate", "write beta alpha beta^-1 as an elementary word");
  add_common(conj, o, true);
  conj->add_option("--beta", beta_path, "matrix or word")->required();
  conj->add_option("--word", word_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, spec_text);
    if (suite->parsed()) return cmd_suite(o, suite_name);
    if (bfs->parsed()) return cmd_bfs(o);
    if (gl->parsed()) return cmd_gl(o, gl_n, gl_base);
    if (check->parsed()) return cmd_member(o, matrix_path);
    if (geval->parsed()) return cmd_eval(o, word_path);
    if (gverify->parsed()) return cmd_suite(o, identity_suite);
    if (rvec->parsed()) return cmd_reduce(o, vector_path);
    if (lgrun->parsed()) return cmd_lg(o, input_path);
    if (conj->parsed()) return cmd_normality(o, beta_path, word_path);
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::parse ? kUsage : e.kind() == ErrorKind::resource_limit ? 2 : kError;
    std::cerr << "error: " << e.what() << "\n";
    return emit(o, json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}, code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return emit(o, json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}, kError);
  }
  return kUsage;
}
