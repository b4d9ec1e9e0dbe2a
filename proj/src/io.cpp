#include "purify/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace purify {

namespace {

Json number_or_null(double x) {
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json verdict_component(const ComponentReport& c) {
  Json pairs = Json::array();
  for (const PairCheck& p : c.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"trace_distance", p.trace_distance},
                     {"wcd", p.wcd},
                     {"distance_equals_wcd", p.distance_equals_wcd},
                     {"angles_degenerate", p.angles_degenerate}});
  }
  return {{"members", c.members},
          {"verdict", to_string(c.verdict)},
          {"reason", c.reason},
          {"spectra_equal", c.spectra_equal},
          {"pairs", pairs},
          {"certificate",
           c.certificate ? to_json(*c.certificate) : Json(nullptr)}};
}

}  // namespace

Json entries_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix entries_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw FormatError("entries must be a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw FormatError("entries rows have unequal length");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() &&
                 z[1].is_number()) {
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw FormatError("entry must be [re, im]");
      }
    }
  }
  return m;
}

Json to_json(const DensityMatrix& rho) {
  return {{"dim", rho.dim()}, {"entries", entries_to_json(rho.matrix())}};
}

DensityMatrix density_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw FormatError("density matrix needs \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer()) throw FormatError("dim must be integer");
  const auto dim = j["dim"].get<Index>();
  const Matrix m = entries_from_json(j["entries"]);
  if (m.rows() != dim || m.cols() != dim) {
    throw FormatError("entries are not dim x dim");
  }
  try {
    return DensityMatrix(m);
  } catch (const StateError& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const Ensemble& ensemble) {
  Json states = Json::array();
  for (const auto& s : ensemble.states()) states.push_back(to_json(s));
  return {{"priors", ensemble.priors()}, {"states", states}};
}

Ensemble ensemble_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("priors") || !j.contains("states") ||
      !j["states"].is_array()) {
    throw FormatError("ensemble needs \"priors\" and \"states\"");
  }
  std::vector<DensityMatrix> states;
  for (const Json& s : j["states"]) {
    states.push_back(density_matrix_from_json(s));
  }
  try {
    return Ensemble(std::move(states), j["priors"].get<std::vector<double>>());
  } catch (const StateError& e) {
    throw FormatError(e.what());
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const KrausChannel& channel) {
  Json kraus = Json::array();
  for (const Matrix& k : channel.kraus()) kraus.push_back(entries_to_json(k));
  return {{"in_dim", channel.in_dim()},
          {"out_dim", channel.out_dim()},
          {"kraus", kraus}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("in_dim") || !j.contains("out_dim") ||
      !j.contains("kraus") || !j["kraus"].is_array()) {
    throw FormatError("channel needs \"in_dim\", \"out_dim\" and \"kraus\"");
  }
  std::vector<Matrix> kraus;
  for (const Json& k : j["kraus"]) kraus.push_back(entries_from_json(k));
  try {
    return KrausChannel(j["in_dim"].get<Index>(), j["out_dim"].get<Index>(),
                        std::move(kraus));
  } catch (const ChannelError& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const PureStateVector& psi) {
  Json amps = Json::array();
  for (Index i = 0; i < psi.dim(); ++i) {
    amps.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
  }
  return amps;
}

Json to_json(const EssentiallyPureCertificate& cert) {
  Json phis = Json::array();
  for (const auto& phi : cert.phis) phis.push_back(to_json(phi));
  return {{"dim_a", cert.dim_a},
          {"dim_b", cert.dim_b},
          {"unitary", entries_to_json(cert.unitary)},
          {"omega_aux", to_json(cert.omega_aux)},
          {"sigma_b", to_json(cert.sigma_b)},
          {"phis", phis}};
}

Json to_json(const DeltaBounds& bounds) {
  return {{"lower", bounds.lower},
          {"upper_const", bounds.upper_const},
          {"upper_uhlmann", bounds.upper_uhlmann},
          {"eta_used", bounds.eta_used}};
}

Json to_json(const PurifiabilityVerdict& verdict) {
  Json components = Json::array();
  for (const auto& c : verdict.components) {
    components.push_back(verdict_component(c));
  }
  return {{"verdict", to_string(verdict.verdict)},
          {"trace_distance", number_or_null(verdict.trace_distance)},
          {"wcd", number_or_null(verdict.wcd)},
          {"components", components},
          {"certificate", verdict.certificate ? to_json(*verdict.certificate)
                                              : Json(nullptr)}};
}

DensityMatrix read_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  try {
    return density_matrix_from_json(j);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  for (int digits = 1; digits <= 12; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace purify
