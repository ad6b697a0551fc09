#include "mhdlab/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "mhdlab/errors.hpp"

namespace mhdlab {

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::IncompressibleEuler: return "IncompressibleEuler";
    case ModelKind::CompressibleEuler: return "CompressibleEuler";
    case ModelKind::IncompressibleMHD: return "IncompressibleMHD";
    case ModelKind::CompressibleMHD: return "CompressibleMHD";
  }
  return "?";
}

std::optional<ModelKind> parse_model(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c != '_' && c != '-') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "incompressibleeuler") return ModelKind::IncompressibleEuler;
  if (key == "compressibleeuler") return ModelKind::CompressibleEuler;
  if (key == "incompressiblemhd") return ModelKind::IncompressibleMHD;
  if (key == "compressiblemhd") return ModelKind::CompressibleMHD;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::IllPosed: return "IllPosed";
    case Verdict::ExponentiallyUnstable: return "ExponentiallyUnstable";
    case Verdict::NoHadamardGrowth: return "NoHadamardGrowth";
  }
  return "?";
}

void validate(ModelKind model, const BasicState& st) {
  const double all[] = {st.rho_hat, st.c_hat, st.H_plasma.x(), st.H_plasma.y(),
                        st.H_vacuum.x(), st.H_vacuum.y(), st.a_hat, st.a0_hat,
                        st.a1_hat};
  if (!std::all_of(std::begin(all), std::end(all), [](double x) { return std::isfinite(x); })) {
    throw DomainError("basic state has non-finite entries");
  }
  if (!(st.rho_hat > 0.0)) throw DomainError("rho_hat must be positive");
  if (!(st.c_hat > 0.0)) throw DomainError("c_hat must be positive");
  if (!is_mhd(model)) {
    if (!st.H_plasma.isZero(0.0) || !st.H_vacuum.isZero(0.0) || st.a1_hat != 0.0) {
      throw DomainError(std::string(to_string(model)) +
                        " has no magnetic field: H_plasma, H_vacuum and a1_hat must be zero");
    }
  }
}

double alfven_speed(const BasicState& st) {
  if (!(st.rho_hat > 0.0)) throw DomainError("rho_hat must be positive");
  return st.H_plasma.norm() / std::sqrt(st.rho_hat);
}

Eigen::Vector2d Wavevector::unit() const {
  const double len = norm();
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw DomainError("tangential wavevector must be nonzero");
  }
  return vector() / len;
}

WPair w_pair(const BasicState& st, const Wavevector& omega) {
  const Eigen::Vector2d e = omega.unit();
  return {st.H_plasma.dot(e), st.H_vacuum.dot(e)};
}

}  // namespace mhdlab
