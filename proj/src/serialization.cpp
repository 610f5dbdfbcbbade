#include "infospec/serialization.hpp"

#include <cstdio>
#include <fstream>

namespace infospec {

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["dim"] = m.rows();
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row_re = Json::array(), row_im = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row_re.push_back(m(i, k).real());
      row_im.push_back(m(i, k).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("re"))
    throw InputError("matrix JSON requires 'dim' and 're' fields");
  const int d = j.at("dim").get<int>();
  if (d < 1) throw InputError("matrix JSON: dim must be >= 1");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  if (static_cast<int>(re.size()) != d) throw InputError("matrix JSON: 're' row count mismatch");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(re.at(i).size()) != d) throw InputError("matrix JSON: 're' column count mismatch");
    for (int k = 0; k < d; ++k) {
      const double real = re.at(i).at(k).get<double>();
      const double imag = has_im ? j.at("im").at(i).at(k).get<double>() : 0.0;
      m(i, k) = Complex(real, imag);
    }
  }
  return m;
}

Json ensemble_to_json(const PureStateEnsemble& e) {
  Json j;
  Json probs = Json::array(), states = Json::array();
  for (int i = 0; i < e.size(); ++i) {
    probs.push_back(e.probs()(i));
    const Vector& v = e.states()[i];
    states.push_back(matrix_to_json(v * v.adjoint()));
  }
  j["probs"] = std::move(probs);
  j["states"] = std::move(states);
  return j;
}

PureStateEnsemble ensemble_from_json(const Json& j) {
  if (!j.contains("probs") || !j.contains("states"))
    throw InputError("ensemble JSON requires 'probs' and 'states'");
  const auto& jp = j.at("probs");
  const auto& js = j.at("states");
  if (jp.size() != js.size() || jp.empty()) throw InputError("ensemble JSON: size mismatch");
  RealVector probs(jp.size());
  std::vector<Vector> states;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    probs(static_cast<Eigen::Index>(i)) = jp.at(i).get<double>();
    const Matrix m = matrix_from_json(js.at(i));
    // accept a rank-one density matrix; extract its ray
    EigenSystem es = eig_decompose(m);
    if (es.values(0) <= 0.0) throw InputError("ensemble JSON: state has no positive part");
    if (es.values.size() > 1 && es.values(1) > 1e-9 * es.values(0))
      throw InputError("ensemble JSON: state is not rank one");
    states.push_back(es.vectors.col(0));
  }
  return PureStateEnsemble(std::move(probs), std::move(states));
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j = Json::parse(in);
  return matrix_from_json(j);
}

PureStateEnsemble load_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j = Json::parse(in);
  return ensemble_from_json(j);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace infospec
