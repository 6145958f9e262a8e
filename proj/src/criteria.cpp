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

#include "dressmet/criteria.hpp"

#include <string>

#include "dressmet/errors.hpp"

namespace dressmet {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Thm1: return "thm1";
    case Criterion::Thm2: return "thm2";
    case Criterion::Hnls: return "hnls";
  }
  return "unknown";
}

Criterion criterion_from_string(std::string_view s) {
  if (s == "thm1") return Criterion::Thm1;
  if (s == "thm2") return Criterion::Thm2;
  if (s == "hnls") return Criterion::Hnls;
  throw DomainError("unknown criterion '" + std::string(s) + "'");
}

namespace {

CriterionReport decide(Criterion which, const HermitianOperator& g, const std::vector<CMatrix>& generators,
                       Field field, const Tolerances& tol) {
  for (const auto& m : generators) {
    if (m.rows() != g.dim() || m.cols() != g.dim()) {
      throw DimensionError(std::string(to_string(which)) + ": coupling dimension differs from generator");
    }
  }
  const OperatorSpan span = orthonormal_span(std::span<const CMatrix>(generators), field, tol);
  CriterionReport report;
  report.criterion = which;
  report.g_perp = g.matrix() - span.project(g.matrix());
  report.residual_norm = report.g_perp.norm();
  report.span_dim = span.size();
  report.verdict = report.residual_norm > tol.membership;
  report.marginal = report.residual_norm > 0.1 * tol.membership && report.residual_norm < 10.0 * tol.membership;
  return report;
}

}  // namespace

std::vector<CMatrix> quadratic_span_generators(const std::vector<HermitianOperator>& couplings) {
  if (couplings.empty()) return {};
  const Index d = couplings.front().dim();
  std::vector<CMatrix> gens{CMatrix::Identity(d, d)};
  for (const auto& a : couplings) gens.push_back(a.matrix());
  for (const auto& a : couplings) {
    for (const auto& b : couplings) gens.push_back(a.matrix() * b.matrix());
  }
  return gens;
}

std::vector<HermitianOperator> quadratic_span_hermitian_generators(const std::vector<HermitianOperator>& couplings) {
  std::vector<HermitianOperator> out;
  for (const auto& m : quadratic_span_generators(couplings)) {
    out.push_back(HermitianOperator::hermitian_part(m));
    const CMatrix anti = Complex(0.0, -0.5) * (m - m.adjoint());
    if (anti.norm() > 0.0) out.push_back(HermitianOperator::hermitian_part(anti));
  }
  return out;
}

CriterionReport thm1_condition(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings,
                               const Tolerances& tol) {
  std::vector<CMatrix> gens{CMatrix::Identity(g.dim(), g.dim())};
  for (const auto& a : couplings) {
    if (a.dim() != g.dim()) throw DimensionError("thm1_condition: coupling dimension differs from generator");
    gens.push_back(a.matrix());
  }
  return decide(Criterion::Thm1, g, gens, Field::Real, tol);
}

CriterionReport thm2_condition(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings,
                               const Tolerances& tol) {
  for (const auto& a : couplings) {
    if (a.dim() != g.dim()) throw DimensionError("thm2_condition: coupling dimension differs from generator");
  }
  std::vector<CMatrix> gens = quadratic_span_generators(couplings);
  if (gens.empty()) gens.push_back(CMatrix::Identity(g.dim(), g.dim()));
  return decide(Criterion::Thm2, g, gens, Field::Complex, tol);
}

CriterionReport hnls_condition(const HermitianOperator& g, const std::vector<CMatrix>& lindblads,
                               const Tolerances& tol) {
  std::vector<CMatrix> gens{CMatrix::Identity(g.dim(), g.dim())};
  for (const auto& l : lindblads) {
    if (l.rows() != g.dim() || l.cols() != g.dim()) {
      throw DimensionError("hnls_condition: Lindblad operator dimension differs from generator");
    }
    gens.push_back(l);
    gens.push_back(l.adjoint());
  }
  for (const auto& li : lindblads) {
    for (const auto& lj : lindblads) gens.push_back(lj.adjoint() * li);
  }
  return decide(Criterion::Hnls, g, gens, Field::Complex, tol);
}

}  // namespace dressmet
