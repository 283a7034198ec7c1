// Copyright 2026 The Erasure Bound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "erasure/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace erasure {
namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::kParse, "complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace

LoadedState parse_state_json(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("amps")) {
    throw Error(ErrorCode::kParse, "state file needs \"dims\" and \"amps\"");
  }
  const json& dims = doc["dims"];
  if (!dims.is_array() || dims.size() != 3) throw Error(ErrorCode::kParse, "dims must be [2, d_B, d_C]");
  for (const auto& d : dims) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw Error(ErrorCode::kParse, "dims must be positive integers");
    }
  }
  if (dims[0].get<int>() != 2) throw Error(ErrorCode::kParse, "first dimension must be 2");
  const int d_b = dims[1].get<int>();
  const int d_c = dims[2].get<int>();
  const json& amps = doc["amps"];
  if (!amps.is_array() || amps.size() != static_cast<std::size_t>(2 * d_b * d_c)) {
    throw Error(ErrorCode::kParse, "amps must hold 2 * d_B * d_C entries");
  }
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(amps[i]);

  const double dev = std::abs(v.squaredNorm() - 1.0);
  if (dev > kStateNormRepair) {
    throw Error(ErrorCode::kInvalidState, "state norm off by " + std::to_string(dev));
  }
  // Accepted states are still snapped onto the unit sphere so downstream
  // 1e-10 checks hold.
  return {TripartitePureState::normalized(d_b, d_c, v), dev > kStateNormAccept, dev};
}

DensityMatrix parse_density_json(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("mat") || !doc["mat"].is_array()) {
    throw Error(ErrorCode::kParse, "density file needs \"mat\"");
  }
  const json& rows = doc["mat"];
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::kParse, "empty matrix");
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw Error(ErrorCode::kParse, "matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(rows[i][j]);
    }
  }
  return DensityMatrix(m);
}

std::string state_to_json(const TripartitePureState& state) {
  nlohmann::ordered_json j;
  j["dims"] = {2, state.d_b(), state.d_c()};
  j["amps"] = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < state.amps().size(); ++i) {
    j["amps"].push_back({state.amps()[i].real(), state.amps()[i].imag()});
  }
  return j.dump() + "\n";
}

std::string density_to_json(const ComplexMatrix& mat) {
  nlohmann::ordered_json j;
  j["mat"] = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < mat.cols(); ++k) row.push_back({mat(i, k).real(), mat(i, k).imag()});
    j["mat"].push_back(row);
  }
  return j.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace erasure
