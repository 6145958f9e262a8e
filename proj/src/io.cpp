// Copyright 2026 The dressmet Authors
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

#include "dressmet/io.hpp"

#include <fstream>

#include "dressmet/errors.hpp"

namespace dressmet::io {

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re")) throw DomainError("operator JSON: missing \"re\"");
  const auto& re = j.at("re");
  const Index d = j.contains("dim") ? j.at("dim").get<Index>() : static_cast<Index>(re.size());
  if (d < 1 || static_cast<Index>(re.size()) != d) throw DimensionError("operator JSON: \"re\" does not match dim");
  const bool has_im = j.contains("im");
  if (has_im && static_cast<Index>(j.at("im").size()) != d) {
    throw DimensionError("operator JSON: \"im\" does not match dim");
  }
  CMatrix m(d, d);
  for (Index r = 0; r < d; ++r) {
    const auto& re_row = re.at(static_cast<std::size_t>(r));
    if (static_cast<Index>(re_row.size()) != d) throw DimensionError("operator JSON: ragged row");
    for (Index c = 0; c < d; ++c) {
      const double x = re_row.at(static_cast<std::size_t>(c)).get<double>();
      const double y = has_im ? j.at("im").at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>() : 0.0;
      m(r, c) = Complex(x, y);
    }
  }
  return m;
}

Json operator_to_json(const HermitianOperator& h) { return matrix_to_json(h.matrix()); }

HermitianOperator operator_from_json(const Json& j) { return HermitianOperator(matrix_from_json(j)); }

Json vector_to_json(const CVector& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index k = 0; k < v.size(); ++k) {
    re.push_back(v[k].real());
    im.push_back(v[k].imag());
  }
  return Json{{"dim", v.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CVector vector_from_json(const Json& j) {
  const auto& re = j.at("re");
  const Index d = static_cast<Index>(re.size());
  const bool has_im = j.contains("im");
  if (j.contains("dim") && j.at("dim").get<Index>() != d) throw DimensionError("vector JSON: dim mismatch");
  if (has_im && static_cast<Index>(j.at("im").size()) != d) throw DimensionError("vector JSON: \"im\" length");
  CVector v(d);
  for (Index k = 0; k < d; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    v[k] = Complex(re.at(idx).get<double>(), has_im ? j.at("im").at(idx).get<double>() : 0.0);
  }
  return v;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

HermitianOperator read_operator(const std::filesystem::path& path) {
  return operator_from_json(read_json_file(path));
}

void write_operator(const std::filesystem::path& path, const HermitianOperator& h) {
  write_json_file(path, operator_to_json(h));
}

}  // namespace dressmet::io
