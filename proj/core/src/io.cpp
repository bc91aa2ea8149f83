#include "lgtt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lgtt {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonNode JsonNode::object() { return JsonNode(); }

JsonNode JsonNode::array() {
  JsonNode n;
  n.kind_ = Kind::Array;
  return n;
}

JsonNode JsonNode::number(double v) {
  JsonNode n;
  n.kind_ = Kind::Number;
  n.num_ = v;
  return n;
}

JsonNode JsonNode::integer(long long v) {
  JsonNode n;
  n.kind_ = Kind::Integer;
  n.int_ = v;
  return n;
}

JsonNode JsonNode::string(std::string v) {
  JsonNode n;
  n.kind_ = Kind::String;
  n.str_ = std::move(v);
  return n;
}

JsonNode JsonNode::boolean(bool v) {
  JsonNode n;
  n.kind_ = Kind::Boolean;
  n.bool_ = v;
  return n;
}

JsonNode JsonNode::complex_number(cplx v) {
  JsonNode n = array();
  n.push(number(v.real()));
  n.push(number(v.imag()));
  return n;
}

JsonNode& JsonNode::add(const std::string& key, JsonNode v) {
  if (kind_ != Kind::Object) throw std::logic_error("add() on a non-object node");
  keys_.push_back(key);
  items_.push_back(std::move(v));
  return *this;
}

JsonNode& JsonNode::push(JsonNode v) {
  if (kind_ != Kind::Array) throw std::logic_error("push() on a non-array node");
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void emit_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

}  // namespace

void JsonNode::emit(std::string& out, int depth) const {
  const std::string pad(static_cast<size_t>(2 * depth), ' ');
  const std::string pad_in(static_cast<size_t>(2 * (depth + 1)), ' ');
  switch (kind_) {
    case Kind::Number:
      out += std::isfinite(num_) ? format_g17(num_) : "null";
      break;
    case Kind::Integer:
      out += std::to_string(int_);
      break;
    case Kind::String:
      emit_escaped(out, str_);
      break;
    case Kind::Boolean:
      out += bool_ ? "true" : "false";
      break;
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      bool leaves_only = true;
      for (const JsonNode& it : items_)
        if (it.kind_ == Kind::Array || it.kind_ == Kind::Object) leaves_only = false;
      if (leaves_only) {
        out.push_back('[');
        for (size_t i = 0; i < items_.size(); ++i) {
          if (i > 0) out += ", ";
          items_[i].emit(out, depth);
        }
        out.push_back(']');
      } else {
        out += "[\n";
        for (size_t i = 0; i < items_.size(); ++i) {
          out += pad_in;
          items_[i].emit(out, depth + 1);
          if (i + 1 < items_.size()) out.push_back(',');
          out.push_back('\n');
        }
        out += pad + "]";
      }
      break;
    }
    case Kind::Object: {
      if (items_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (size_t i = 0; i < items_.size(); ++i) {
        out += pad_in;
        emit_escaped(out, keys_[i]);
        out += ": ";
        items_[i].emit(out, depth + 1);
        if (i + 1 < items_.size()) out.push_back(',');
        out.push_back('\n');
      }
      out += pad + "}";
      break;
    }
  }
}

std::string JsonNode::dump() const {
  std::string out;
  emit(out, 0);
  out.push_back('\n');
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

void emit_comments(std::string& out, const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out += "# " + c + "\n";
}

}  // namespace

std::string csv_residual_map(const RealGrid& map, const std::vector<std::string>& comments) {
  std::string out;
  emit_comments(out, comments);
  out += "t1,t2,residual\n";
  const TGrid& g = map.grid();
  for (int i1 = 0; i1 < g.n1; ++i1) {
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const double v = map.at(i1, i2);
      if (std::isnan(v)) continue;
      out += format_g17(g.t1(i1)) + "," + format_g17(g.t2(i2)) + "," + format_g17(v) + "\n";
    }
  }
  return out;
}

std::string csv_theta_grid(const PhaseField& phi, const std::vector<std::string>& comments) {
  std::string out;
  emit_comments(out, comments);
  out += "t1,t2,theta,value\n";
  const TGrid& g = phi.grid();
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int m = 0; m < phi.M(); ++m) {
        const double v = phi.at(i1, i2, m);
        if (std::isnan(v)) continue;
        out += format_g17(g.t1(i1)) + "," + format_g17(g.t2(i2)) + "," + format_g17(phi.theta(m)) +
               "," + format_g17(v) + "\n";
      }
  return out;
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<std::string>& comments) {
  std::string out;
  emit_comments(out, comments);
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += columns[i];
  }
  out.push_back('\n');
  for (const std::vector<double>& row : rows) {
    if (row.size() != columns.size()) throw std::invalid_argument("csv row width mismatch");
    bool skip = false;
    for (double v : row)
      if (std::isnan(v)) skip = true;
    if (skip) continue;
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += format_g17(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

JsonNode grid_to_json(const TGrid& grid) {
  JsonNode n = JsonNode::object();
  n.add("n1", JsonNode::integer(grid.n1));
  n.add("n2", JsonNode::integer(grid.n2));
  n.add("h", JsonNode::number(grid.h));
  n.add("t1_min", JsonNode::number(grid.t1_min));
  n.add("t2_min", JsonNode::number(grid.t2_min));
  return n;
}

namespace {

JsonNode matrix_entries(const Matrix& m) {
  JsonNode arr = JsonNode::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) arr.push(JsonNode::complex_number(m(r, c)));
  return arr;
}

JsonNode symbol_samples(const MetricSymbol& s) {
  JsonNode arr = JsonNode::array();
  for (int m = 0; m < s.M(); ++m) {
    const Matrix& v = s.sample(m);
    for (int r = 0; r < v.rows(); ++r)
      for (int c = 0; c < v.cols(); ++c) arr.push(JsonNode::complex_number(v(r, c)));
  }
  return arr;
}

}  // namespace

JsonNode symbol_to_json(const MetricSymbol& s) {
  JsonNode n = JsonNode::object();
  n.add("kind", JsonNode::string("metric_symbol"));
  n.add("R", JsonNode::integer(s.R()));
  n.add("M", JsonNode::integer(s.M()));
  n.add("samples", symbol_samples(s));
  return n;
}

JsonNode toeplitz_to_json(const ToeplitzTruncation& t) {
  JsonNode n = JsonNode::object();
  n.add("kind", JsonNode::string("toeplitz_truncation"));
  n.add("N", JsonNode::integer(t.N));
  n.add("R", JsonNode::integer(t.R));
  n.add("dim", JsonNode::integer(t.dim()));
  n.add("entries", matrix_entries(t.dense));
  return n;
}

JsonNode metric_grid_to_json(const MatrixGrid& samples, const Matrix& eta) {
  const TGrid& g = samples.grid();
  const int d = static_cast<int>(eta.rows());
  if (eta.cols() != d) throw std::invalid_argument("eta must be square");
  JsonNode nodes = JsonNode::array();
  for (int i1 = 0; i1 < g.n1; ++i1) {
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const Matrix& m = samples.at(i1, i2);
      if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("metric grid node does not match the pairing dimension");
      JsonNode node = JsonNode::object();
      node.add("i1", JsonNode::integer(i1));
      node.add("i2", JsonNode::integer(i2));
      node.add("t1", JsonNode::number(g.t1(i1)));
      node.add("t2", JsonNode::number(g.t2(i2)));
      node.add("matrix", matrix_entries(m));
      nodes.push(std::move(node));
    }
  }
  JsonNode n = JsonNode::object();
  n.add("kind", JsonNode::string("metric_grid"));
  n.add("grid", grid_to_json(g));
  n.add("dim", JsonNode::integer(d));
  n.add("eta", matrix_entries(eta));
  n.add("nodes", std::move(nodes));
  return n;
}

JsonNode symbol_field_to_json(const SymbolField& f) {
  const TGrid& g = f.grid();
  JsonNode nodes = JsonNode::array();
  for (int i1 = 0; i1 < g.n1; ++i1) {
    for (int i2 = 0; i2 < g.n2; ++i2) {
      JsonNode node = JsonNode::object();
      node.add("i1", JsonNode::integer(i1));
      node.add("i2", JsonNode::integer(i2));
      node.add("t1", JsonNode::number(g.t1(i1)));
      node.add("t2", JsonNode::number(g.t2(i2)));
      node.add("samples", symbol_samples(f.at(i1, i2)));
      nodes.push(std::move(node));
    }
  }
  JsonNode n = JsonNode::object();
  n.add("kind", JsonNode::string("symbol_field"));
  n.add("grid", grid_to_json(g));
  n.add("R", JsonNode::integer(f.R()));
  n.add("M", JsonNode::integer(f.M()));
  n.add("nodes", std::move(nodes));
  return n;
}

JsonNode boundary_phase_to_json(const BoundaryPhase& b) {
  JsonNode vals = JsonNode::array();
  for (double v : b.values) vals.push(JsonNode::number(v));
  JsonNode n = JsonNode::object();
  n.add("kind", JsonNode::string("boundary_phase"));
  n.add("r0", JsonNode::number(b.r0));
  n.add("n_psi", JsonNode::integer(b.n_psi));
  n.add("M", JsonNode::integer(b.M));
  n.add("values", std::move(vals));
  return n;
}

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field: ") + key);
  return *it;
}

int as_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
  return v.get<int>();
}

double as_double(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
  return v.get<double>();
}

cplx as_complex_pair(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw std::invalid_argument(std::string(what) + " must be a [re, im] pair");
  return cplx(v[0].get<double>(), v[1].get<double>());
}

void check_kind(const json& j, const char* expected) {
  auto it = j.find("kind");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != expected))
    throw std::invalid_argument(std::string("document kind is not ") + expected);
}

TGrid grid_from(const json& j) {
  TGrid g{as_int(j, "n1"), as_int(j, "n2"), as_double(j, "h"), as_double(j, "t1_min"),
          as_double(j, "t2_min")};
  g.validate();
  return g;
}

Matrix matrix_from(const json& entries, int rows, int cols, const char* what) {
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument(std::string(what) + " has the wrong number of entries");
  Matrix m(rows, cols);
  int idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = as_complex_pair(entries[static_cast<size_t>(idx++)], what);
  return m;
}

MetricSymbol symbol_from(const json& j) {
  const int R = as_int(j, "R");
  const int M = as_int(j, "M");
  MetricSymbol s(R, M);
  const json& samples = require(j, "samples");
  if (!samples.is_array() || static_cast<int>(samples.size()) != M * R * R)
    throw std::invalid_argument("samples must hold M*R*R complex pairs");
  int idx = 0;
  for (int m = 0; m < M; ++m) {
    Matrix v(R, R);
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < R; ++c)
        v(r, c) = as_complex_pair(samples[static_cast<size_t>(idx++)], "sample entry");
    s.set_sample(m, std::move(v));
  }
  return s;
}

void check_node_coordinates(const json& node, const TGrid& g, int i1, int i2) {
  const double t1 = as_double(node, "t1");
  const double t2 = as_double(node, "t2");
  const double tol = 1e-9;
  if (std::abs(t1 - g.t1(i1)) > tol * std::max(1.0, std::abs(t1)) ||
      std::abs(t2 - g.t2(i2)) > tol * std::max(1.0, std::abs(t2)))
    throw std::invalid_argument("node coordinates disagree with the declared grid");
}

}  // namespace

TGrid grid_from_json_text(const std::string& text) { return grid_from(parse_text(text)); }

MetricSymbol symbol_from_json_text(const std::string& text) {
  const json j = parse_text(text);
  check_kind(j, "metric_symbol");
  return symbol_from(j);
}

MetricGridFile metric_grid_from_json_text(const std::string& text) {
  const json j = parse_text(text);
  check_kind(j, "metric_grid");
  MetricGridFile out;
  out.grid = grid_from(require(j, "grid"));
  const int d = as_int(j, "dim");
  if (d < 1) throw std::invalid_argument("dim must be positive");
  out.eta = matrix_from(require(j, "eta"), d, d, "eta");
  out.samples = MatrixGrid(out.grid);
  const json& nodes = require(j, "nodes");
  if (!nodes.is_array()) throw std::invalid_argument("nodes must be an array");
  std::vector<char> seen(static_cast<size_t>(out.grid.size()), 0);
  for (const json& node : nodes) {
    const int i1 = as_int(node, "i1");
    const int i2 = as_int(node, "i2");
    if (!out.grid.contains(i1, i2)) throw std::invalid_argument("node index out of range");
    char& flag = seen[static_cast<size_t>(out.grid.flat(i1, i2))];
    if (flag) throw std::invalid_argument("duplicate grid node");
    flag = 1;
    check_node_coordinates(node, out.grid, i1, i2);
    out.samples.at(i1, i2) = matrix_from(require(node, "matrix"), d, d, "node matrix");
  }
  for (char f : seen)
    if (!f) throw std::invalid_argument("grid node missing from file");
  return out;
}

SymbolField symbol_field_from_json_text(const std::string& text) {
  const json j = parse_text(text);
  check_kind(j, "symbol_field");
  const TGrid grid = grid_from(require(j, "grid"));
  const int R = as_int(j, "R");
  const int M = as_int(j, "M");
  SymbolField out(grid, R, M);
  const json& nodes = require(j, "nodes");
  if (!nodes.is_array()) throw std::invalid_argument("nodes must be an array");
  std::vector<char> seen(static_cast<size_t>(grid.size()), 0);
  for (const json& node : nodes) {
    const int i1 = as_int(node, "i1");
    const int i2 = as_int(node, "i2");
    if (!grid.contains(i1, i2)) throw std::invalid_argument("node index out of range");
    char& flag = seen[static_cast<size_t>(grid.flat(i1, i2))];
    if (flag) throw std::invalid_argument("duplicate grid node");
    flag = 1;
    check_node_coordinates(node, grid, i1, i2);
    json wrapper = json::object();
    wrapper["R"] = R;
    wrapper["M"] = M;
    wrapper["samples"] = require(node, "samples");
    out.set(i1, i2, symbol_from(wrapper));
  }
  for (char f : seen)
    if (!f) throw std::invalid_argument("grid node missing from file");
  return out;
}

BoundaryPhase boundary_phase_from_json_text(const std::string& text) {
  const json j = parse_text(text);
  check_kind(j, "boundary_phase");
  BoundaryPhase out;
  out.r0 = as_double(j, "r0");
  out.n_psi = as_int(j, "n_psi");
  out.M = as_int(j, "M");
  if (out.r0 <= 0.0) throw std::invalid_argument("r0 must be positive");
  if (out.n_psi < 1 || out.M < 1) throw std::invalid_argument("boundary table is empty");
  const json& vals = require(j, "values");
  if (!vals.is_array() || static_cast<int>(vals.size()) != out.n_psi * out.M)
    throw std::invalid_argument("values must hold n_psi*M numbers");
  out.values.reserve(vals.size());
  for (const json& v : vals) {
    if (!v.is_number()) throw std::invalid_argument("boundary values must be numbers");
    out.values.push_back(v.get<double>());
  }
  return out;
}

}  // namespace lgtt
