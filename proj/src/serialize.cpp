#include "lttorus/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace lttorus {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(const BoundReport& report) {
  Json j;
  j["lhs"] = number(report.lhs);
  j["rhs"] = number(report.rhs);
  j["ratio"] = number(report.ratio);
  j["pass"] = report.pass;
  j["constant_used"] = number(report.constant_used);
  j["gamma"] = report.gamma ? number(*report.gamma) : Json(nullptr);
  j["truncation"] = report.truncation;
  j["quadrature_nodes"] = report.quadrature_nodes;
  j["quadrature_converged"] = report.quadrature_converged;
  j["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  j["lhs_is_lower_bound"] = report.lhs_is_lower_bound;
  return j;
}

Json to_json(const torus::BetaSelection& selection) {
  Json j;
  Json betas = Json::array();
  for (double b : selection.betas) betas.push_back(number(b));
  j["betas"] = betas;
  j["delta"] = number(selection.delta);
  j["constant_factor"] = number(selection.constant_factor);
  j["in_unit_regime"] = selection.in_unit_regime;
  j["shrink"] = number(selection.shrink);
  return j;
}

Json to_json(const torus::TorusReport& report) {
  Json j = to_json(report.bound);
  Json alphas = Json::array();
  for (double a : report.geometry.alphas()) alphas.push_back(number(a));
  j["alphas"] = alphas;
  j["selection"] = to_json(report.selection);
  j["truncation_per_axis"] = report.truncation;
  return j;
}

Json to_json(const interp::ConstantResult& result) {
  Json j;
  j["which"] = interp::to_string(result.which);
  j["beta"] = number(result.beta);
  j["value"] = number(result.value);
  j["argmax_lambda"] = result.argmax_lambda ? number(*result.argmax_lambda) : Json(nullptr);
  j["interior_max"] = number(result.interior_max);
  j["grid_points"] = result.grid_points;
  j["refined"] = result.refined;
  return j;
}

Json to_json(const interp::CurveTable& table) {
  Json j;
  j["which"] = interp::to_string(table.which);
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["beta"] = number(row.beta);
    r["K"] = number(row.value);
    r["argmax_lambda"] = row.argmax_lambda ? number(*row.argmax_lambda) : Json(nullptr);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const attractor::FlowParams& params) {
  Json j;
  j["nu"] = number(params.nu);
  j["mu"] = number(params.mu);
  j["L"] = number(params.L);
  j["alpha"] = number(params.alpha);
  j["grad_g_norm"] = number(params.grad_g_norm);
  return j;
}

Json to_json(const families::OrthonormalFamily& family) {
  Json j;
  j["size"] = family.size;
  j["dim"] = family.dim;
  j["band"] = family.band;
  j["period"] = family.period;
  j["zero_mean"] = family.zero_mean;
  Json members = Json::array();
  for (const auto& m : family.members) {
    Json rows = Json::array();
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      Json comps = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) comps.push_back({m(k, c).real(), m(k, c).imag()});
      rows.push_back(comps);
    }
    members.push_back(rows);
  }
  j["members"] = members;
  return j;
}

families::OrthonormalFamily family_from_json(const Json& j) {
  families::OrthonormalFamily fam;
  fam.size = j.at("size").get<int>();
  fam.dim = j.at("dim").get<int>();
  fam.band = j.at("band").get<int>();
  fam.period = j.at("period").get<double>();
  fam.zero_mean = j.at("zero_mean").get<bool>();
  if (fam.size < 0 || fam.dim < 1 || fam.band < 0 || !(fam.period > 0.0))
    throw std::invalid_argument("malformed family header");
  const auto& members = j.at("members");
  if (static_cast<int>(members.size()) != fam.size) throw std::invalid_argument("member count does not match size");
  for (const auto& rows : members) {
    if (static_cast<int>(rows.size()) != 2 * fam.band + 1) throw std::invalid_argument("member has wrong mode count");
    Eigen::MatrixXcd m(2 * fam.band + 1, fam.dim);
    for (int k = 0; k < 2 * fam.band + 1; ++k) {
      const auto& comps = rows.at(k);
      if (static_cast<int>(comps.size()) != fam.dim) throw std::invalid_argument("member has wrong component count");
      for (int c = 0; c < fam.dim; ++c)
        m(k, c) = {comps.at(c).at(0).get<double>(), comps.at(c).at(1).get<double>()};
    }
    fam.members.push_back(std::move(m));
  }
  return fam;
}

}  // namespace lttorus
