#pragma once

// CSV and JSON output. Reals are written with 17 significant digits so that
// files round-trip exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtlab/analysis.hpp"
#include "mtlab/maximizer.hpp"
#include "mtlab/shooting.hpp"

namespace mtlab {

std::string format_real(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row();
  CsvTable& add(double x);
  CsvTable& add(long long x);
  CsvTable& add(int x) { return add(static_cast<long long>(x)); }
  CsvTable& add(std::size_t x) { return add(static_cast<long long>(x)); }
  CsvTable& add(bool x);
  CsvTable& add(const std::string& s);
  CsvTable& add(const char* s) { return add(std::string(s)); }
  void write(std::ostream& out) const;
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Every n-th node so that at most max_nodes remain; first and last kept.
std::vector<std::size_t> downsample_indices(std::size_t n, std::size_t max_nodes);

nlohmann::ordered_json shot_json(const ShotSolution& sol, double residual);
nlohmann::ordered_json maximizer_json(const MaximizerResult& res, const MultiplierEstimate& m,
                                      std::size_t max_nodes = 2048);
nlohmann::ordered_json hierarchy_json(const HierarchyReport& rep);

}  // namespace mtlab
