#include "mtlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace mtlab {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  if (!rows_.empty() && rows_.back().size() != header_.size())
    throw std::logic_error("csv row has the wrong number of fields");
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double x) { return add(format_real(x)); }
CsvTable& CsvTable::add(long long x) { return add(std::to_string(x)); }
CsvTable& CsvTable::add(bool x) { return add(std::string(x ? "1" : "0")); }

CsvTable& CsvTable::add(const std::string& s) {
  if (rows_.empty()) throw std::logic_error("csv add before row");
  if (s.find_first_of(",\n\"") != std::string::npos) throw std::invalid_argument("csv field needs quoting: " + s);
  rows_.back().push_back(s);
  return *this;
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& r : rows_) {
    if (r.size() != header_.size()) throw std::logic_error("csv row has the wrong number of fields");
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

std::vector<std::size_t> downsample_indices(std::size_t n, std::size_t max_nodes) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  if (max_nodes < 2) throw std::invalid_argument("max_nodes must be at least 2");
  const std::size_t stride = n <= max_nodes ? 1 : (n - 2) / (max_nodes - 1) + 1;
  for (std::size_t i = 0; i < n - 1; i += stride) idx.push_back(i);
  idx.push_back(n - 1);
  return idx;
}

nlohmann::ordered_json shot_json(const ShotSolution& sol, double residual) {
  nlohmann::ordered_json j;
  j["mu"] = sol.mu;
  j["family"] = sol.perturbation.family;
  j["log_R"] = sol.log_R;
  j["log_lambda"] = sol.log_lambda;
  j["energy"] = sol.energy_total;
  j["energy_inner"] = sol.energy_inner;
  j["energy_outer"] = sol.energy_outer;
  j["c"] = std::pow(sol.mu, 4) * (sol.energy_total - 4.0 * std::numbers::pi);
  j["moser_integral"] = sol.moser_integral;
  j["pde_residual"] = residual;
  return j;
}

nlohmann::ordered_json maximizer_json(const MaximizerResult& res, const MultiplierEstimate& m,
                                      std::size_t max_nodes) {
  nlohmann::ordered_json j;
  j["alpha"] = res.alpha;
  j["F"] = res.value;
  j["lambda_hat"] = m.lambda_hat;
  j["lambda_residual"] = m.residual;
  j["lambda_upper"] = m.upper;
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  j["start"] = res.start;
  std::vector<double> r, u;
  for (std::size_t i : downsample_indices(res.field.size(), max_nodes)) {
    r.push_back(std::exp(res.field.t[i]));
    u.push_back(res.field.values[i]);
  }
  j["r"] = r;
  j["u"] = u;
  return j;
}

nlohmann::ordered_json hierarchy_json(const HierarchyReport& rep) {
  nlohmann::ordered_json j;
  j["mu"] = rep.mu;
  j["sup_w_err"] = rep.sup_w_err;
  j["sup_z_err"] = rep.sup_z_err;
  j["phi_over_xi"] = rep.phi_over_xi;
  j["phi_range"] = rep.phi_range;
  j["perturbed_ratio"] = rep.perturbed_ratio;
  j["delta"] = rep.delta;
  return j;
}

}  // namespace mtlab
