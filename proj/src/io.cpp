#include "biquat/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace biquat {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json to_json(const Algebra<double>& alg) {
  return Json{{"backend", "float"},
              {"params",
               {{"alpha", alg.params().alpha},
                {"beta", alg.params().beta},
                {"gamma", alg.params().gamma}}}};
}

Json to_json(const Algebra<Rational>& alg) {
  return Json{{"backend", "exact"},
              {"params",
               {{"alpha", alg.params().alpha.get_str()},
                {"beta", alg.params().beta.get_str()},
                {"gamma", alg.params().gamma.get_str()}}}};
}

Algebra<double> algebra_from_json(const Json& j) {
  if (j.at("backend").get<std::string>() != "float")
    throw ValidationError("expected a float-backend structure table");
  const auto& p = j.at("params");
  return Algebra<double>({p.at("alpha").get<double>(),
                          p.at("beta").get<double>(),
                          p.at("gamma").get<double>()});
}

Algebra<Rational> algebra_exact_from_json(const Json& j) {
  if (j.at("backend").get<std::string>() != "exact")
    throw ValidationError("expected an exact-backend structure table");
  const auto& p = j.at("params");
  return Algebra<Rational>({parse_rational(p.at("alpha").get<std::string>()),
                            parse_rational(p.at("beta").get<std::string>()),
                            parse_rational(p.at("gamma").get<std::string>())});
}

Json to_json(const Vec8<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(x);
  return j;
}

Json to_json(const Vec8<Rational>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x.get_str());
  return j;
}

Vec8<double> vec8_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 8)
    throw ValidationError("element must be an array of 8 numbers");
  Vec8<double> v;
  for (int i = 0; i < 8; ++i) {
    if (j[i].is_string())
      v[i] = parse_rational(j[i].get<std::string>()).get_d();
    else
      v[i] = j[i].get<double>();
  }
  return v;
}

Vec8<Rational> vec8_exact_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 8)
    throw ValidationError("element must be an array of 8 entries");
  Vec8<Rational> v;
  for (int i = 0; i < 8; ++i) {
    if (j[i].is_string()) {
      v[i] = parse_rational(j[i].get<std::string>());
    } else if (j[i].is_number_integer()) {
      v[i] = Rational(j[i].get<long>());
    } else {
      throw ValidationError(
          "exact elements require integer or \"p/q\" string entries");
    }
  }
  return v;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json j = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) j.push_back(m(r, c));
  return j;
}

Eigen::MatrixXd matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    throw ValidationError("matrix array has wrong length");
  Eigen::MatrixXd m(rows, cols);
  int at = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = j[at++].get<double>();
  return m;
}

Json to_json(const MatRep& rep) {
  Json j;
  j["n"] = rep.n;
  j["params"] = {{"alpha", rep.params.alpha},
                 {"beta", rep.params.beta},
                 {"gamma", rep.params.gamma}};
  j["J1"] = to_json(rep.J1);
  j["J2"] = to_json(rep.J2);
  j["J3"] = to_json(rep.J3);
  return j;
}

MatRep matrep_from_json(const Json& j) {
  MatRep rep;
  rep.n = j.at("n").get<int>();
  if (rep.n <= 0) throw ValidationError("n must be positive");
  const auto& p = j.at("params");
  rep.params = {p.at("alpha").get<double>(), p.at("beta").get<double>(),
                p.at("gamma").get<double>()};
  const int d = 4 * rep.n;
  rep.J1 = matrix_from_json(j.at("J1"), d, d);
  rep.J2 = matrix_from_json(j.at("J2"), d, d);
  rep.J3 = matrix_from_json(j.at("J3"), d, d);
  return rep;
}

Json to_json(const Triangle& tri) {
  Json j;
  j["n"] = tri.dim() / 4;
  j["J1"] = to_json(tri.J1);
  j["J2"] = to_json(tri.J2);
  j["J3"] = to_json(tri.J3);
  return j;
}

Triangle triangle_from_json(const Json& j, double tol) {
  const int d = 4 * j.at("n").get<int>();
  return Triangle::checked(matrix_from_json(j.at("J1"), d, d),
                           matrix_from_json(j.at("J2"), d, d),
                           matrix_from_json(j.at("J3"), d, d), tol);
}

Json to_json(const TwistorSphere& s) {
  Json j;
  j["n"] = static_cast<int>(s.I.rows()) / 4;
  j["I"] = to_json(s.I);
  j["J"] = to_json(s.J);
  j["K"] = to_json(s.K);
  return j;
}

TwistorSphere sphere_from_json(const Json& j, double tol) {
  const int d = 4 * j.at("n").get<int>();
  TwistorSphere s{matrix_from_json(j.at("I"), d, d),
                  matrix_from_json(j.at("J"), d, d),
                  matrix_from_json(j.at("K"), d, d)};
  ComplexStructure::checked(s.I, tol);
  ComplexStructure::checked(s.J, tol);
  ComplexStructure::checked(s.K, tol);
  if ((s.I * s.J - s.K).cwiseAbs().maxCoeff() > tol ||
      (s.J * s.I + s.K).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("sphere frame violates the quaternion relations");
  return s;
}

void write_matrices_text(std::ostream& os,
                         const std::vector<Eigen::MatrixXd>& mats) {
  if (mats.empty()) throw ValidationError("nothing to write");
  const int d = static_cast<int>(mats[0].rows());
  os << d << "\n";
  for (const auto& m : mats) {
    if (m.rows() != d || m.cols() != d)
      throw ValidationError("text format requires equal square matrices");
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (c) os << ' ';
        os << format_double(m(r, c));
      }
      os << "\n";
    }
  }
}

std::vector<Eigen::MatrixXd> read_matrices_text(std::istream& is) {
  int d = 0;
  if (!(is >> d) || d <= 0)
    throw ValidationError("text matrix file must start with the dimension");
  std::vector<Eigen::MatrixXd> mats;
  while (true) {
    Eigen::MatrixXd m(d, d);
    bool started = false;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        double x;
        if (!(is >> x)) {
          if (!started && r == 0 && c == 0) return mats;
          throw ValidationError("truncated matrix block in text file");
        }
        started = true;
        m(r, c) = x;
      }
    mats.push_back(std::move(m));
  }
}

}  // namespace biquat
