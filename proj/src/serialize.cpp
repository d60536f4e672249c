#include "qce/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace qce {

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const Json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const Json& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    throw std::invalid_argument("matrix_from_json: entry count mismatch");
  }
  Matrix m(rows, cols);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++t) {
      m(i, jj) = Complex(entries[t][0].get<double>(), entries[t][1].get<double>());
    }
  return m;
}

Json channel_to_json(const KrausChannel& phi) {
  Json kraus = Json::array();
  for (const Matrix& a : phi.kraus()) kraus.push_back(matrix_to_json(a));
  return Json{{"kind", "kraus"},
              {"din", phi.input_dim()},
              {"dout", phi.output_dim()},
              {"kraus", kraus}};
}

Json channel_to_json(const PhaseDampingSpec& spec) {
  return Json{{"kind", "phase_damping"},
              {"d", spec.basis.dim()},
              {"parameters",
               {{"basis", matrix_to_json(spec.basis.mat())},
                {"spectrum", spec.spectrum.weights()}}}};
}

Json channel_to_json(const WeylSpec& spec) {
  Json w = Json::array();
  for (int m = 0; m < spec.d; ++m)
    for (int n = 0; n < spec.d; ++n) w.push_back(spec.weights(m, n));
  return Json{{"kind", "weyl"}, {"d", spec.d}, {"parameters", {{"weights", w}}}};
}

Json channel_to_json(const RestrictedWeylSpec& spec) {
  return Json{{"kind", "restricted_weyl"},
              {"d", spec.d},
              {"parameters", {{"r", spec.r}, {"p", spec.p}}}};
}

Json channel_to_json(const QcSpec& spec) {
  Json povm = Json::array();
  for (const Matrix& m : spec.povm) povm.push_back(matrix_to_json(m));
  return Json{{"kind", "qc"},
              {"d", static_cast<int>(spec.povm.front().rows())},
              {"parameters",
               {{"povm", povm}, {"out_basis", matrix_to_json(spec.out_basis.mat())}}}};
}

Json channel_to_json(const ErasureSpec& spec) {
  return Json{{"kind", "erasure"},
              {"d", spec.d},
              {"parameters", {{"epsilon", spec.epsilon}}}};
}

Json channel_to_json(const DepolarizingSpec& spec) {
  return Json{{"kind", "depolarizing"}, {"d", spec.d}, {"parameters", {{"p", spec.p}}}};
}

KrausChannel channel_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "kraus") {
    std::vector<Matrix> ops;
    for (const Json& a : j.at("kraus")) ops.push_back(matrix_from_json(a));
    return KrausChannel(std::move(ops));
  }
  if (kind == "noiseless") {
    return KrausChannel::identity(j.at("d").get<int>());
  }
  if (kind != "phase_damping" && kind != "weyl" && kind != "restricted_weyl" &&
      kind != "qc" && kind != "erasure" && kind != "depolarizing") {
    throw std::invalid_argument("channel_from_json: unknown kind '" + kind + "'");
  }
  const Json& par = j.at("parameters");
  if (kind == "phase_damping") {
    return build_phase_damping(
        PhaseDampingSpec{UnitaryMatrix(matrix_from_json(par.at("basis"))),
                         ProbabilityVector(par.at("spectrum").get<std::vector<double>>())});
  }
  if (kind == "weyl") {
    const int d = j.at("d").get<int>();
    auto flat = par.at("weights").get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != d * d) {
      throw std::invalid_argument("channel_from_json: weyl weight count mismatch");
    }
    Eigen::MatrixXd w(d, d);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) w(m, n) = flat[m * d + n];
    return build_weyl(WeylSpec{d, w});
  }
  if (kind == "restricted_weyl") {
    return build_restricted_weyl(
        RestrictedWeylSpec{j.at("d").get<int>(), par.at("r").get<std::vector<double>>(),
                           par.at("p").get<std::vector<double>>()});
  }
  if (kind == "qc") {
    std::vector<Matrix> povm;
    for (const Json& m : par.at("povm")) povm.push_back(matrix_from_json(m));
    return build_qc(QcSpec{std::move(povm),
                           UnitaryMatrix(matrix_from_json(par.at("out_basis")))});
  }
  if (kind == "erasure") {
    return build_erasure(
        ErasureSpec{j.at("d").get<int>(), par.at("epsilon").get<double>()});
  }
  if (kind == "depolarizing") {
    return build_depolarizing(
        DepolarizingSpec{j.at("d").get<int>(), par.at("p").get<double>()});
  }
  throw std::invalid_argument("channel_from_json: unknown kind '" + kind + "'");
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string digest_hex(const Json& j) {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << fnv1a64(j.dump());
  return out.str();
}

}  // namespace qce
