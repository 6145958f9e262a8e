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

#pragma once

// JSON interchange. Operators are {"dim": d, "re": [[...]], "im": [[...]]},
// row-major; vectors are {"dim": d, "re": [...], "im": [...]}.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dressmet/operators.hpp"

namespace dressmet::io {

using Json = nlohmann::json;

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json operator_to_json(const HermitianOperator& h);
HermitianOperator operator_from_json(const Json& j);

Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

HermitianOperator read_operator(const std::filesystem::path& path);
void write_operator(const std::filesystem::path& path, const HermitianOperator& h);

}  // namespace dressmet::io
