#include "qcap/channel_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcap {

namespace {
using nlohmann::json;

cxd parse_entry(const json& cell) {
  if (cell.is_number()) return {cell.get<double>(), 0.0};
  if (cell.is_array() && (cell.size() == 1 || cell.size() == 2)) {
    const double re = cell.at(0).get<double>();
    const double im = cell.size() == 2 ? cell.at(1).get<double>() : 0.0;
    return {re, im};
  }
  throw std::invalid_argument("channel json: matrix entries must be numbers or [re, im] pairs");
}
} // namespace

QuantumChannel load_channel_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("channel json: ") + e.what());
  }
  const std::string label = doc.value("label", "file");
  const int d_in = doc.at("d_in").get<int>();
  const int d_out = doc.at("d_out").get<int>();
  if (d_in < 1 || d_out < 1) throw std::invalid_argument("channel json: dimensions must be positive");
  const json& ops = doc.at("kraus");
  if (!ops.is_array() || ops.empty())
    throw std::invalid_argument("channel json: kraus must be a non-empty array");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ops.size());
  for (const json& op : ops) {
    if (!op.is_array() || static_cast<int>(op.size()) != d_out)
      throw std::invalid_argument("channel json: each kraus operator needs d_out rows");
    ComplexMatrix e(d_out, d_in);
    for (int r = 0; r < d_out; ++r) {
      const json& row = op.at(r);
      if (!row.is_array() || static_cast<int>(row.size()) != d_in)
        throw std::invalid_argument("channel json: each kraus row needs d_in entries");
      for (int c = 0; c < d_in; ++c) e(r, c) = parse_entry(row.at(c));
    }
    kraus.push_back(std::move(e));
  }
  return QuantumChannel(label, d_in, d_out, std::move(kraus));
}

QuantumChannel load_channel_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("channel json: cannot open " + path);
  return load_channel_json(in);
}

void save_channel_json(const QuantumChannel& ch, std::ostream& out) {
  json ops = json::array();
  for (const ComplexMatrix& e : ch.kraus()) {
    json op = json::array();
    for (int r = 0; r < e.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < e.cols(); ++c)
        row.push_back(json::array({e(r, c).real(), e(r, c).imag()}));
      op.push_back(std::move(row));
    }
    ops.push_back(std::move(op));
  }
  json doc{{"label", ch.label()}, {"d_in", ch.d_in()}, {"d_out", ch.d_out()}, {"kraus", std::move(ops)}};
  out << doc.dump(2) << "\n";
}

std::vector<std::vector<double>> load_stochastic_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("stochastic json: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("stochastic json: ") + e.what());
  }
  if (!doc.is_array() || doc.empty())
    throw std::invalid_argument("stochastic json: expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(doc.size());
  for (const json& r : doc) {
    if (!r.is_array() || r.empty())
      throw std::invalid_argument("stochastic json: each row must be a non-empty array");
    std::vector<double> row;
    row.reserve(r.size());
    for (const json& v : r) row.push_back(v.get<double>());
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace qcap
