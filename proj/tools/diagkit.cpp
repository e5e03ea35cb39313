#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"
#include "diagkit/serialize.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace diagkit;

namespace {

struct Options {
  std::string command;
  std::string in;
  std::string in2;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::optional<FieldTag> field;
};

struct Report {
  Json result = Json::object();
  Json certificates = Json::array();
  Json witnesses = Json::array();
  int exit_code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Parse, "cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Internal, "digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

void require_input(const Options& o, bool second) {
  if (o.in.empty()) throw Error(ErrorCode::Parse, o.command + " requires --in");
  if (second && o.in2.empty()) throw Error(ErrorCode::Parse, o.command + " requires --in2");
}

// ---- commands ----

void cmd_diag(const Json& in, const Options& o, Report& r) {
  Matrix m = matrix_from_json(in, o.field);
  DiagDecision d = is_diagonalizable(m);
  r.result["decision"] = d.diagonalizable ? "Diagonalizable" : "NotDiagonalizable";
  r.result.update(decision_to_json(d));
  if (d.diagonalizable) r.certificates.push_back(Json{{"kind", "eigenbasis"}, {"q", matrix_to_json(d.q)}});
}

void cmd_simdiag(const Json& in, const Json& in2, const Options& o, Report& r) {
  Matrix a = matrix_from_json(in, o.field);
  Matrix b = matrix_from_json(in2, o.field ? o.field : std::optional<FieldTag>(a.field()));
  try {
    Matrix p = simdiag(a, b);
    r.result["decision"] = "SimultaneouslyDiagonalizable";
    r.result["p"] = matrix_to_json(p);
    r.certificates.push_back(Json{{"kind", "common-eigenbasis"}, {"p", matrix_to_json(p)}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotCommuting && e.code() != ErrorCode::NotDiagonalizable) throw;
    r.result["decision"] = "NotSimultaneouslyDiagonalizable";
    r.result["reason"] = e.what();
  }
}

void cmd_svd(const Json& in, const Options& o, Report& r) {
  Matrix p = matrix_from_json(in, o.field ? o.field : std::optional<FieldTag>(FieldTag::RealAlg));
  SvdTriple s = svd(p);
  bool ok = is_orthogonal(s.o) && is_orthogonal(s.u) && s.o * s.d * s.u == p;
  r.result = svd_to_json(s);
  r.result["verified"] = ok;
  r.certificates.push_back(Json{{"kind", "O D U = P"}, {"verified", ok}});
}

void cmd_normalize(const Json& in, const Options& o, Report& r) {
  MatSubspace v = subspace_from_json(in, o.field);
  NormalizationOutcome out = v.n() == 2 ? normalize2(v) : normalize_maximal(v);
  r.result = outcome_to_json(out);
  if (out.kind == OutcomeKind::Certificate) {
    r.certificates.push_back(Json{{"kind", "P V P^-1 = S_n"}, {"verified", verify_certificate(v, out.p)}});
  } else if (out.kind == OutcomeKind::Witness) {
    r.witnesses.push_back(Json{{"kind", "non-diagonalizable member"},
                               {"m", matrix_to_json(out.witness)},
                               {"verified", verify_witness(v, out.witness)}});
  }
}

void cmd_intersect(const Json& in, const Json& in2, const Options& o, Report& r) {
  MatSubspace v = subspace_from_json(in, o.field);
  MatSubspace w = subspace_from_json(in2, o.field ? o.field : std::optional<FieldTag>(v.field()));
  MatSubspace meet = intersect(v, w);
  r.result["intersection"] = subspace_to_json(meet);
  r.result["dim"] = meet.dim();
  const std::size_t n = v.n();
  if (v.dim() == n * (n + 1) / 2 && w.dim() == v.dim() && n >= 2) {
    NormalizationOutcome cv = n == 2 ? normalize2(v) : normalize_maximal(v);
    NormalizationOutcome cw = n == 2 ? normalize2(w) : normalize_maximal(w);
    if (cv.kind == OutcomeKind::Certificate && cw.kind == OutcomeKind::Certificate) {
      IntersectionReport rep = min_intersection_report(v, cv, w, cw);
      r.result["report"] = intersection_to_json(rep);
      r.certificates.push_back(Json{{"kind", "dim(V cap W) >= n"}, {"verified", rep.bound_holds}});
    }
  }
}

void cmd_obstruct(const Json& in, const Options& o, Report& r) {
  MatSubspace v = subspace_from_json(in, o.field);
  SymmetrizabilityResult s = symmetrizability_obstruction(v);
  r.result = symmetrizability_to_json(s);
  if (s.kind == SymmetrizabilityKind::FeasibleWitness) {
    r.certificates.push_back(Json{{"kind", "positive definite symmetrizer"}, {"g", matrix_to_json(s.g)}});
  } else if (s.kind == SymmetrizabilityKind::Infeasible) {
    r.witnesses.push_back(Json{{"kind", "isotropic vector"}, {"x", vector_to_json(s.isotropic)}});
  }
}

void report_class(const MatrixMap& f, const PreserverClass& c, Report& r) {
  r.result = preserver_to_json(c);
  if (c.kind == PreserverKind::Phi || c.kind == PreserverKind::Psi) {
    r.certificates.push_back(Json{{"kind", "reconstruction"}, {"verified", c.verified}});
  } else if (c.kind == PreserverKind::NotPhiPsi && c.witness) {
    r.witnesses.push_back(Json{{"kind", "diagonalizable input, non-diagonalizable image"},
                               {"m", matrix_to_json(*c.witness)},
                               {"image", matrix_to_json(apply_map(f, *c.witness))}});
    r.exit_code = 1;
  } else if (c.kind == PreserverKind::SingularRejected) {
    bool ok = verify_singular_pair(f, c);
    r.witnesses.push_back(Json{{"kind", "kernel pair"}, {"verified", ok}});
    r.exit_code = 1;
  }
}

void cmd_classify(const Json& in, const Options& o, Report& r, bool strong) {
  MatrixMap f = map_from_json(in, o.field);
  PreserverClass c = strong ? strong_classify(f, o.trials, o.seed) : classify(f, o.trials, o.seed);
  report_class(f, c, r);
}

void cmd_refute(const Json& in, const Options& o, Report& r) {
  MatrixMap f = map_from_json(in, o.field);
  RefutationResult res = refute_preservation(f, o.trials, o.seed);
  r.result["found"] = res.found;
  r.result["trials"] = o.trials;
  if (res.found) {
    r.result["trial"] = res.trial;
    r.witnesses.push_back(Json{{"kind", "diagonalizable input, non-diagonalizable image"},
                               {"m", matrix_to_json(res.witness)},
                               {"image", matrix_to_json(apply_map(f, res.witness))}});
    r.exit_code = 1;
  }
}

void cmd_pair_check(const Json& in, const Options& o, Report& r) {
  MatrixMap f = map_from_json(in, o.field);
  PairViolation v = pair_preservation_check(f, o.trials, o.seed);
  r.result["found"] = v.found;
  r.result["trials"] = o.trials;
  if (v.found) {
    r.result["trial"] = v.trial;
    r.witnesses.push_back(Json{{"kind", "simultaneously diagonalizable pair with bad images"},
                               {"a", matrix_to_json(v.a)},
                               {"b", matrix_to_json(v.b)},
                               {"reason", v.reason}});
    r.exit_code = 1;
  }
}

Matrix pm(FieldTag tag, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> v;
  for (auto row : rows) {
    Vector x;
    for (long e : row) x.push_back(Real(e));
    v.push_back(x);
  }
  return Matrix::from_rows(tag, v);
}

void cmd_selftest(Report& r) {
  bool all = true;
  Json checks = Json::array();
  auto record = [&](const std::string& name, bool pass, Json detail = Json::object()) {
    all = all && pass;
    checks.push_back(Json{{"check", name}, {"pass", pass}, {"detail", detail}});
  };

  CounterexampleReport ce = counterexample_check();
  record("counterexample spectra and obstruction", ce.passed,
         Json{{"grid_points", ce.grid_points},
              {"spectrum_failures", ce.spectrum_failures.size()},
              {"obstruction", symmetrizability_to_json(ce.obstruction)}});

  for (std::size_t n = 2; n <= 5; ++n) {
    Vector d;
    for (std::size_t i = 1; i <= n; ++i) d.push_back(Real(static_cast<long>(i)));
    Matrix dm = Matrix::diagonal(FieldTag::RealAlg, d);
    MatSubspace s = symmetric_subspace(FieldTag::RealAlg, n);
    MatSubspace w = conjugate(s, inverse(dm));
    bool ok = intersect(s, w) == diagonal_subspace(FieldTag::RealAlg, n);
    Json detail{{"n", n}};
    if (n <= 3) {
      NormalizationOutcome cs = n == 2 ? normalize2(s) : normalize_maximal(s);
      NormalizationOutcome cw = n == 2 ? normalize2(w) : normalize_maximal(w);
      IntersectionReport rep = min_intersection_report(s, cs, w, cw);
      ok = ok && rep.dim == n && rep.bound_holds && rep.conjugate_to_diagonal;
      detail["report"] = intersection_to_json(rep);
    }
    record("intersection S_n and D^-1 S_n D equals D_n", ok, detail);
  }

  for (FieldTag tag : {FieldTag::Q, FieldTag::RealAlg}) {
    MatSubspace v = span(tag, 2, {Matrix::identity(tag, 2), pm(tag, {{1, 0}, {0, 0}}), pm(tag, {{0, 2}, {1, 0}})});
    NormalizationOutcome out = normalize2(v);
    bool ok = tag == FieldTag::Q
                  ? out.kind == OutcomeKind::Witness && verify_witness(v, out.witness)
                  : out.kind == OutcomeKind::Certificate && verify_certificate(v, out.p);
    record(std::string("2x2 contrast over ") + std::string(to_string(tag)), ok, outcome_to_json(out));
  }
  r.result["checks"] = checks;
  r.result["all_passed"] = all;
  if (!all) r.exit_code = 1;
}

int run(const Options& o) {
  static const std::vector<std::string> commands = {"diag",     "simdiag",         "svd",    "normalize",
                                                    "intersect", "obstruct",       "classify", "strong-classify",
                                                    "refute",   "pair-check",      "selftest"};
  if (std::find(commands.begin(), commands.end(), o.command) == commands.end()) {
    throw Error(ErrorCode::Parse, "unknown command '" + o.command + "'");
  }
  auto start = std::chrono::steady_clock::now();
  Report r;
  std::string bytes;
  Json in;
  Json in2;
  if (o.command != "selftest") {
    bool two = o.command == "simdiag" || o.command == "intersect";
    require_input(o, two);
    bytes = read_file(o.in);
    in = parse_json(bytes, o.in);
    if (two) {
      std::string b2 = read_file(o.in2);
      in2 = parse_json(b2, o.in2);
      bytes += b2;
    }
  }

  if (o.command == "diag") cmd_diag(in, o, r);
  else if (o.command == "simdiag") cmd_simdiag(in, in2, o, r);
  else if (o.command == "svd") cmd_svd(in, o, r);
  else if (o.command == "normalize") cmd_normalize(in, o, r);
  else if (o.command == "intersect") cmd_intersect(in, in2, o, r);
  else if (o.command == "obstruct") cmd_obstruct(in, o, r);
  else if (o.command == "classify") cmd_classify(in, o, r, false);
  else if (o.command == "strong-classify") cmd_classify(in, o, r, true);
  else if (o.command == "refute") cmd_refute(in, o, r);
  else if (o.command == "pair-check") cmd_pair_check(in, o, r);
  else cmd_selftest(r);

  // Wall time is opt-in so that reports stay byte-identical by default.
  long long ms = 0;
  if (const char* t = std::getenv("DIAGKIT_TIMING"); t && std::string(t) == "1") {
    ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  Json report{{"command", o.command},
              {"input_digest", sha256_hex(bytes)},
              {"result", r.result},
              {"certificates", r.certificates},
              {"witnesses", r.witnesses},
              {"timing_ms", ms}};
  std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::Parse, "cannot write '" + o.out + "'");
    f << text;
  }
  return r.exit_code;
}

std::size_t degree_cap_from_env() {
  const char* env = std::getenv("DIAGKIT_MAX_DEGREE");
  if (!env) return 64;
  try {
    std::size_t pos = 0;
    long v = std::stol(env, &pos);
    if (pos == std::string(env).size() && v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Parse, std::string("DIAGKIT_MAX_DEGREE must be a positive integer, got '") + env + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalizability toolkit"};
  Options o;
  std::string field;
  app.add_option("command", o.command, "diag|simdiag|svd|normalize|intersect|obstruct|classify|strong-classify|refute|pair-check|selftest")
      ->required();
  app.add_option("--in", o.in, "input JSON");
  app.add_option("--in2", o.in2, "second input JSON");
  app.add_option("--out", o.out, "report path (stdout when omitted)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--trials", o.trials, "sampling budget");
  app.add_option("--field", field, "override the input field")->check(CLI::IsMember({"Q", "RealAlg"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (!field.empty()) o.field = parse_field_tag(field);
    MaxDegreeScope scope(degree_cap_from_env());
    return run(o);
  } catch (const Error& e) {
    std::cerr << "diagkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "diagkit: " << e.what() << "\n";
    return 2;
  }
}
