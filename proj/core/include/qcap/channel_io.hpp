// File formats: JSON channel descriptions and row-stochastic matrices.
#pragma once

#include "qcap/channels.hpp"

#include <iosfwd>
#include <string>

namespace qcap {

// JSON schema:
//   {
//     "label": "name",
//     "d_in": 2, "d_out": 2,
//     "kraus": [ [ [ [re, im], ... per column ], ... per row ], ... per operator ]
//   }
// The loaded Kraus set must be trace preserving (validated by QuantumChannel).
QuantumChannel load_channel_json(std::istream& in);
QuantumChannel load_channel_json_file(const std::string& path);
void save_channel_json(const QuantumChannel& ch, std::ostream& out);

// JSON array of rows, e.g. [[0.9, 0.1], [0.1, 0.9]]; rows must sum to 1.
std::vector<std::vector<double>> load_stochastic_json_file(const std::string& path);

} // namespace qcap
