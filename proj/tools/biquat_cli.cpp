// Command-line front end: classification, representation building, triangle
// analysis, fiber demos and the full acceptance suite, with machine-readable
// reports.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure, 3 numerical
// inconsistency.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "biquat/fibers.hpp"
#include "biquat/hcore.hpp"
#include "biquat/io.hpp"
#include "biquat/periods.hpp"
#include "biquat/reps.hpp"
#include "biquat/selftest.hpp"
#include "biquat/sigforms.hpp"

namespace {

using namespace biquat;

struct RunConfig {
  double tol = 1e-9;
  std::string mode = "float";  // float | exact
  std::uint64_t seed = 20240901;
  std::string format = "json";  // json | text
  std::string out;
};

// Accepts decimals, integers and exact fractions "p/q"; rejects junk that
// std::stod would silently truncate.
double parse_param(const std::string& text) {
  return parse_rational(text).get_d();
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol", cfg.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", cfg.mode, "scalar backend: exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--seed", cfg.seed, "seed for all randomized steps");
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
}

void emit(const RunConfig& cfg, const Json& report) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw ValidationError("cannot open output file " + cfg.out);
    os = &file;
  }
  if (cfg.format == "json") {
    *os << report.dump(2) << "\n";
    return;
  }
  // Text rendering: flat key-value lines, 17 significant digits.
  std::function<void(const std::string&, const Json&)> walk =
      [&](const std::string& prefix, const Json& j) {
        if (j.is_object()) {
          for (const auto& [key, value] : j.items())
            walk(prefix.empty() ? key : prefix + "." + key, value);
        } else if (j.is_array()) {
          std::string line;
          for (const auto& value : j) {
            if (!line.empty()) line += " ";
            if (value.is_number_float())
              line += format_double(value.get<double>());
            else
              line += value.dump();
          }
          *os << prefix << " = [" << line << "]\n";
        } else if (j.is_number_float()) {
          *os << prefix << " = " << format_double(j.get<double>()) << "\n";
        } else {
          *os << prefix << " = " << j.dump() << "\n";
        }
      };
  walk("", report);
}

Json signature_json(const Signature& s) {
  return Json{{"plus", s.n_plus}, {"minus", s.n_minus}, {"zero", s.n_zero}};
}

template <class S>
Json mat3_json(const Mat3<S>& m) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) {
      if constexpr (ScalarTraits<S>::exact)
        row.push_back(m[i][j].get_str());
      else
        row.push_back(m[i][j]);
    }
    rows.push_back(row);
  }
  return rows;
}

int class_count(ClassKind kind, int n) {
  switch (kind) {
    case ClassKind::Spherical:
      return n + 1;
    case ClassKind::Cylindrical:
      return n / 2 + 1;
    case ClassKind::Hyperbolic:
      return 1;
    default:
      return 0;
  }
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------
int cmd_classify(const RunConfig& cfg, const std::string& a,
                 const std::string& b, const std::string& g, int n) {
  Json report;
  if (cfg.mode == "exact") {
    const Params<Rational> p{parse_rational(a), parse_rational(b),
                             parse_rational(g)};
    const Algebra<Rational> alg(p);
    const AlgebraClass cls = classify_exact(p);
    report["mode"] = "exact";
    report["params"] = {{"alpha", p.alpha.get_str()},
                        {"beta", p.beta.get_str()},
                        {"gamma", p.gamma.get_str()}};
    report["Q"] = mat3_json(form_q3(p));
    report["Qtilde"] = mat3_json(form_q3_tilde(p));
    report["detQ"] = alg.det_q().get_str();
    report["sigQ"] = signature_json(cls.sig_q);
    report["sigq_predicted"] = signature_json(cls.sig_q8_predicted);
    const auto q8 = alg.trace_form();
    std::vector<std::vector<Rational>> m(8, std::vector<Rational>(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m[i][j] = q8[i][j];
    report["sigq_measured"] = signature_json(signature_exact(std::move(m)));
    report["class"] = to_string(cls.kind);
    report["quaternionic"] = cls.quaternionic;
    report["center_dim"] = alg.center_basis(cfg.tol).size();
    const auto ce = alg.central_element(cfg.tol);
    report["c_squared"] = Rational(-alg.det_q()).get_str();
    report["epsilon"] = ce.epsilon;
  } else {
    const Params<double> p{parse_param(a), parse_param(b), parse_param(g)};
    const Algebra<double> alg(p);
    const AlgebraClass cls = classify(p, cfg.tol);
    report["mode"] = "float";
    report["params"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
    report["Q"] = mat3_json(form_q3(p));
    report["Qtilde"] = mat3_json(form_q3_tilde(p));
    report["detQ"] = alg.det_q();
    report["sigQ"] = signature_json(cls.sig_q);
    report["sigq_predicted"] = signature_json(cls.sig_q8_predicted);
    report["sigq_measured"] =
        signature_json(signature(to_eigen8(alg.trace_form()), cfg.tol));
    report["class"] = to_string(cls.kind);
    report["quaternionic"] = cls.quaternionic;
    report["near_degenerate"] = cls.near_degenerate;
    report["center_dim"] = alg.center_basis(cfg.tol).size();
    const auto ce = alg.central_element(cfg.tol);
    report["c_squared"] = -alg.det_q();
    report["epsilon"] = ce.epsilon;
  }
  if (n > 0) {
    ClassKind kind;
    if (cfg.mode == "exact") {
      const Params<Rational> p{parse_rational(a), parse_rational(b),
                               parse_rational(g)};
      kind = classify_exact(p).kind;
    } else {
      kind = classify({parse_param(a), parse_param(b), parse_param(g)}, cfg.tol)
                 .kind;
    }
    report["n"] = n;
    report["classes"] = class_count(kind, n);
  }
  emit(cfg, report);
  return 0;
}

// ---------------------------------------------------------------------------
// rep
// ---------------------------------------------------------------------------
int cmd_rep(const RunConfig& cfg, double a, double b, double g, int n,
            std::optional<int> k, bool faithful) {
  const Params<double> p{a, b, g};
  const Algebra<double> alg(p);
  const AlgebraClass cls = classify(p, cfg.tol);
  if (!cls.quaternionic)
    throw ValidationError("the algebra of class " + to_string(cls.kind) +
                          " has no quaternion subalgebra; no representation "
                          "classification applies");
  MatRep rep = [&] {
    if (faithful && !k) return build_faithful(alg, n, cfg.tol);
    int kk = k.value_or(cls.kind == ClassKind::Hyperbolic ? n : 0);
    MatRep r = build(alg, n, kk, cfg.tol);
    if (faithful && !classify_rep(r).faithful)
      throw ValidationError(
          "requested multiplicity is not faithful: spherical needs 0 < k < n, "
          "cylindrical needs k >= 1");
    return r;
  }();
  Json report = to_json(rep);
  const RepClass rc = classify_rep(rep);
  report["class"] = to_string(rc.kind);
  report["k"] = rc.k;
  report["faithful"] = rc.faithful;
  emit(cfg, report);
  return 0;
}

// ---------------------------------------------------------------------------
// triangle
// ---------------------------------------------------------------------------
int cmd_triangle(const RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  Triangle tri = [&] {
    char first = 0;
    in >> std::ws;
    first = static_cast<char>(in.peek());
    if (first == '{') {
      Json j;
      in >> j;
      // Accept both the triangle schema and the MatRep schema.
      if (j.contains("params") && !j.contains("J1"))
        throw ValidationError("file holds no matrices");
      const int d = 4 * j.at("n").get<int>();
      return Triangle::checked(matrix_from_json(j.at("J1"), d, d),
                               matrix_from_json(j.at("J2"), d, d),
                               matrix_from_json(j.at("J3"), d, d),
                               std::max(cfg.tol, 1e-8));
    }
    const auto mats = read_matrices_text(in);
    if (mats.size() != 3)
      throw ValidationError("triangle file must hold exactly three matrices");
    return Triangle::checked(mats[0], mats[1], mats[2], std::max(cfg.tol, 1e-8));
  }();

  const auto t = t_invariant(tri);
  const Params<double> p{t[0], t[1], t[2]};
  const AlgebraClass cls = classify(p, cfg.tol);
  Json report;
  report["T"] = {t[0], t[1], t[2]};
  report["class"] = to_string(cls.kind);
  report["quaternionic"] = cls.quaternionic;
  const DegeneracyReport deg = degeneracy_test(tri, std::max(cfg.tol, 1e-8));
  report["degenerate"] = deg.degenerate;
  report["image_dim"] = deg.image_dim;
  const QuadricSamples qs =
      quadric_classify_and_sample(tri, 10, cfg.seed, std::max(cfg.tol, 1e-8));
  report["quadric"] = to_string(qs.kind);
  report["quadric_max_residual"] = qs.max_unit_residual;
  Json angles = Json::array();
  for (int vertex : {1, 2, 3}) {
    Json entry;
    entry["vertex"] = vertex;
    try {
      const VertexAngle va = vertex_angle(tri, vertex, std::max(cfg.tol, 1e-8));
      entry["defined"] = va.defined;
      entry["angle"] = va.angle;
      entry["complement_branch"] = va.complement;
      entry["cosine"] = va.cosine;
    } catch (const ValidationError& e) {
      entry["defined"] = false;
      entry["reason"] = e.what();
    }
    angles.push_back(entry);
  }
  report["vertex_angles"] = angles;
  emit(cfg, report);
  return 0;
}

// ---------------------------------------------------------------------------
// fiber
// ---------------------------------------------------------------------------
int cmd_fiber(const RunConfig& cfg, double a, double b, double g, int n,
              int k) {
  const Params<double> p{a, b, g};
  const Algebra<double> alg(p);
  if (classify(p, cfg.tol).kind != ClassKind::Spherical)
    throw ValidationError("fiber demos require a spherical parameter triple");
  Json report;
  report["n"] = n;
  report["k"] = k;
  GroupTriple triple;
  if (k == 0 || k == n) {
    const SphericalFrame f = spherical_frame(alg, n, cfg.tol);
    const TwistorSphere s = sphere_from_pair(f.I1, f.I2);
    triple = so3_triple(s, f.I1, f.I2, f.I3, std::max(cfg.tol, 1e-8));
    report["component"] = "SO(3)-type";
    report["factors_in_GH"] = {
        in_GH(triple.g1, f.I1, f.I2, std::max(cfg.tol, 1e-8)),
        in_GH(triple.g2, f.I1, f.I2, std::max(cfg.tol, 1e-8)),
        in_GH(triple.g3, f.I1, f.I2, std::max(cfg.tol, 1e-8))};
  } else {
    triple = nondegenerate_witness(alg, n, k, cfg.seed, std::nullopt, cfg.tol);
    report["component"] = "nondegenerate";
  }
  report["product_in_GH"] = in_GH(triple.g1 * triple.g2 * triple.g3, triple.I1,
                                  triple.I2, std::max(cfg.tol, 1e-8));
  const Triangle img = tau(triple, std::max(cfg.tol, 1e-7));
  const auto t = t_invariant(img);
  report["tau_T"] = {t[0], t[1], t[2]};
  report["tau_degenerate"] = degeneracy_test(img).degenerate;
  const FiberComponentReport fc = component_report(alg, n, k, cfg.tol);
  report["stabilizer_dim"] = fc.stabilizer_dim;
  report["component_dim"] = fc.component_dim;
  report["stabilizer_dim_formula"] = fc.stabilizer_dim_formula;
  report["component_dim_formula"] = fc.component_dim_formula;
  if (!cfg.out.empty()) {
    Json witness;
    witness["n"] = n;
    for (const auto& [name, m] :
         {std::pair{"g1", &triple.g1}, {"g2", &triple.g2}, {"g3", &triple.g3},
          {"I1", &triple.I1}, {"I2", &triple.I2}, {"I3", &triple.I3}})
      witness[name] = to_json(*m);
    std::ofstream out(cfg.out);
    if (!out) throw ValidationError("cannot open output file " + cfg.out);
    out << witness.dump(2) << "\n";
    RunConfig stdout_cfg = cfg;
    stdout_cfg.out.clear();
    emit(stdout_cfg, report);
    return 0;
  }
  emit(cfg, report);
  return 0;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------
int cmd_selftest(const RunConfig& cfg) {
  CheckOptions opt;
  opt.tol = cfg.tol;
  opt.seed = cfg.seed;
  const auto results = run_acceptance(opt);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.empty() ? "" : ": ",
                r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  if (all_pass) {
    std::printf("selftest: all checks passed\n");
    return 0;
  }
  return acceptance_exit_code(results, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Algebras of twistor triangles: classification, real representations "
      "and period-domain geometry"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string alpha, beta, gamma;
  int n = 0, k = 0;
  std::optional<int> opt_k;
  bool faithful = false;
  std::string path;

  auto* classify_cmd =
      app.add_subcommand("classify", "classify the algebra of a parameter triple");
  classify_cmd->add_option("alpha", alpha)->required();
  classify_cmd->add_option("beta", beta)->required();
  classify_cmd->add_option("gamma", gamma)->required();
  classify_cmd->add_option("--n", n, "also count representation classes on R^{4n}");
  add_common(classify_cmd, cfg);
  classify_cmd->add_option("--out", cfg.out, "write the report to a file");

  auto* rep_cmd = app.add_subcommand("rep", "build a representation on R^{4n}");
  rep_cmd->add_option("alpha", alpha)->required();
  rep_cmd->add_option("beta", beta)->required();
  rep_cmd->add_option("gamma", gamma)->required();
  rep_cmd->add_option("--n", n)->required();
  auto* k_opt = rep_cmd->add_option("--k", k, "multiplicity datum");
  rep_cmd->add_flag("--faithful", faithful, "require a faithful representation");
  add_common(rep_cmd, cfg);
  rep_cmd->add_option("--out", cfg.out, "write the representation to a file");

  auto* tri_cmd =
      app.add_subcommand("triangle", "analyze a triangle from a matrix file");
  tri_cmd->add_option("path", path)->required();
  add_common(tri_cmd, cfg);
  tri_cmd->add_option("--out", cfg.out, "write the report to a file");

  auto* fiber_cmd =
      app.add_subcommand("fiber", "construct a fiber witness for (n, k)");
  fiber_cmd->add_option("alpha", alpha)->required();
  fiber_cmd->add_option("beta", beta)->required();
  fiber_cmd->add_option("gamma", gamma)->required();
  fiber_cmd->add_option("--n", n)->required();
  fiber_cmd->add_option("--k", k)->required();
  add_common(fiber_cmd, cfg);
  fiber_cmd->add_option("--out", cfg.out, "write the witness matrices to a file");

  auto* selftest_cmd =
      app.add_subcommand("selftest", "run the full acceptance suite");
  add_common(selftest_cmd, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return cmd_classify(cfg, alpha, beta, gamma, n);
    if (rep_cmd->parsed()) {
      if (k_opt->count()) opt_k = k;
      return cmd_rep(cfg, parse_param(alpha), parse_param(beta),
                     parse_param(gamma), n, opt_k, faithful);
    }
    if (tri_cmd->parsed()) return cmd_triangle(cfg, path);
    if (fiber_cmd->parsed())
      return cmd_fiber(cfg, parse_param(alpha), parse_param(beta),
                       parse_param(gamma), n, k);
    if (selftest_cmd->parsed()) return cmd_selftest(cfg);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numerical inconsistency: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
