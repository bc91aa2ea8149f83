#pragma once

#include <string>
#include <vector>

#include "lgtt/grid.hpp"
#include "lgtt/phase_field.hpp"
#include "lgtt/reduced_field.hpp"
#include "lgtt/symbol.hpp"
#include "lgtt/toeplitz.hpp"
#include "lgtt/types.hpp"

// Deterministic serialization. Every number is printed with printf "%.17g" so
// doubles round-trip exactly and repeated runs produce byte-identical files.
// Parsing goes through an ordinary JSON reader; parse and schema errors are
// reported as std::invalid_argument so callers can map them to a usage error.

namespace lgtt {

std::string format_g17(double v);

// Append-only JSON document. Objects keep insertion order on output.
class JsonNode {
 public:
  static JsonNode object();
  static JsonNode array();
  static JsonNode number(double v);
  static JsonNode integer(long long v);
  static JsonNode string(std::string v);
  static JsonNode boolean(bool v);
  // Complex scalar as a two-element [re, im] array.
  static JsonNode complex_number(cplx v);

  JsonNode& add(const std::string& key, JsonNode v);
  JsonNode& push(JsonNode v);
  std::string dump() const;

 private:
  JsonNode() = default;
  enum class Kind { Object, Array, Number, Integer, String, Boolean };
  Kind kind_ = Kind::Object;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::string> keys_;
  std::vector<JsonNode> items_;
  void emit(std::string& out, int depth) const;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// CSV emitters. Comment lines are written first, each prefixed "# ", then the
// header row. Rows containing a NaN value are skipped.
std::string csv_residual_map(const RealGrid& map, const std::vector<std::string>& comments);
std::string csv_theta_grid(const PhaseField& phi, const std::vector<std::string>& comments);
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<std::string>& comments);

JsonNode grid_to_json(const TGrid& grid);
JsonNode symbol_to_json(const MetricSymbol& s);
JsonNode toeplitz_to_json(const ToeplitzTruncation& t);
JsonNode metric_grid_to_json(const MatrixGrid& samples, const Matrix& eta);
JsonNode symbol_field_to_json(const SymbolField& f);

struct MetricGridFile {
  TGrid grid;
  Matrix eta;
  MatrixGrid samples;
  MetricGridFile() : grid{3, 3, 1.0, 0.0, 0.0}, samples(grid) {}
};

// Boundary phase samples phi(r0, psi_p, theta_m), values[p*M + m].
struct BoundaryPhase {
  double r0 = 0.0;
  int n_psi = 0;
  int M = 0;
  std::vector<double> values;
};

TGrid grid_from_json_text(const std::string& text);
MetricSymbol symbol_from_json_text(const std::string& text);
MetricGridFile metric_grid_from_json_text(const std::string& text);
SymbolField symbol_field_from_json_text(const std::string& text);
BoundaryPhase boundary_phase_from_json_text(const std::string& text);
JsonNode boundary_phase_to_json(const BoundaryPhase& b);

}  // namespace lgtt
