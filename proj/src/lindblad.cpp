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

#include "dressmet/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dressmet/errors.hpp"

namespace dressmet {

namespace {

// Single-linkage clusters of sorted values; returns [begin, end) index ranges.
std::vector<std::pair<std::size_t, std::size_t>> cluster_sorted(const std::vector<double>& v, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i == v.size() || v[i] - v[i - 1] >= tol) {
      if (v[i - 1] - v[start] > 10.0 * tol) {
        throw NumericalError("eigenvalue cluster of width " + std::to_string(v[i - 1] - v[start]) +
                             " exceeds 10 x gap_tol; spectrum is ill-separated");
      }
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

}  // namespace

double default_gap_tol(const HermitianOperator& h) { return 1e-9 * std::max(1.0, operator_norm(h.matrix())); }

std::vector<EnergyGroup> eigendecompose_grouped(const HermitianOperator& h, double gap_tol) {
  if (!(gap_tol > 0.0)) throw DomainError("eigendecompose_grouped: gap_tol must be positive");
  const Eigensystem es = eigh(h);
  std::vector<double> vals(es.values.data(), es.values.data() + es.values.size());
  std::vector<EnergyGroup> groups;
  for (auto [b, e] : cluster_sorted(vals, gap_tol)) {
    EnergyGroup g;
    const auto n = static_cast<Index>(e - b);
    const CMatrix vecs = es.vectors.middleCols(static_cast<Index>(b), n);
    g.projector = vecs * vecs.adjoint();
    g.multiplicity = n;
    double sum = 0.0;
    for (std::size_t i = b; i < e; ++i) sum += vals[i];
    g.energy = sum / static_cast<double>(n);
    groups.push_back(std::move(g));
  }
  return groups;
}

const Transition* LindbladSet::find(double nu, double tol) const {
  for (const auto& t : transitions) {
    if (std::abs(t.nu - nu) <= tol) return &t;
  }
  return nullptr;
}

std::vector<CMatrix> LindbladSet::flatten(double drop) const {
  std::vector<CMatrix> out;
  for (const auto& t : transitions) {
    for (const auto& op : t.ops) {
      if (op.cwiseAbs().maxCoeff() > drop) out.push_back(op);
    }
  }
  return out;
}

LindbladSet jump_operators(const HermitianOperator& h, const std::vector<HermitianOperator>& couplings,
                           std::optional<double> gap_tol) {
  const double tol = gap_tol.value_or(default_gap_tol(h));
  for (const auto& a : couplings) {
    if (a.dim() != h.dim()) throw DimensionError("jump_operators: coupling dimension differs from Hamiltonian");
  }
  const auto groups = eigendecompose_grouped(h, tol);

  // Every ordered pair of groups (i, j) contributes P_i A P_j at nu = e_j - e_i.
  struct Pair {
    double nu;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < groups.size(); ++j) pairs.push_back({groups[j].energy - groups[i].energy, i, j});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.nu < b.nu; });
  std::vector<double> nus;
  for (const auto& p : pairs) nus.push_back(p.nu);

  LindbladSet out;
  out.dim = h.dim();
  out.n_couplings = couplings.size();
  for (auto [b, e] : cluster_sorted(nus, tol)) {
    Transition t;
    bool has_zero = false;
    double sum = 0.0;
    for (std::size_t k = b; k < e; ++k) {
      sum += pairs[k].nu;
      has_zero = has_zero || pairs[k].i == pairs[k].j;
    }
    t.nu = has_zero ? 0.0 : sum / static_cast<double>(e - b);
    for (const auto& a : couplings) {
      CMatrix op = CMatrix::Zero(h.dim(), h.dim());
      for (std::size_t k = b; k < e; ++k) {
        op += groups[pairs[k].i].projector * a.matrix() * groups[pairs[k].j].projector;
      }
      t.ops.push_back(std::move(op));
    }
    out.transitions.push_back(std::move(t));
  }
  return out;
}

std::string_view to_string(NoiseRegime r) {
  switch (r) {
    case NoiseRegime::DephasingOnly: return "dephasing";
    case NoiseRegime::LowTemperature: return "low_temperature";
    case NoiseRegime::FullThermal: return "thermal";
  }
  return "unknown";
}

NoiseRegime regime_from_string(std::string_view s) {
  if (s == "dephasing" || s == "dephasing_only") return NoiseRegime::DephasingOnly;
  if (s == "low_temperature" || s == "relaxation") return NoiseRegime::LowTemperature;
  if (s == "thermal" || s == "full_thermal") return NoiseRegime::FullThermal;
  throw DomainError("unknown noise regime '" + std::string(s) + "'");
}

CMatrix BathSpectrum::rates(double nu, std::size_t n) const {
  const auto sz = static_cast<Index>(n);
  if (regime == NoiseRegime::DephasingOnly && nu != 0.0) return CMatrix::Zero(sz, sz);
  if (regime == NoiseRegime::LowTemperature && nu < 0.0) return CMatrix::Zero(sz, sz);
  CMatrix g;
  if (gamma_matrix) {
    g = gamma_matrix(nu);
  } else if (profile) {
    g = profile(nu) * (correlation ? *correlation : CMatrix::Identity(sz, sz));
  } else {
    return CMatrix::Zero(sz, sz);
  }
  if (g.rows() != sz || g.cols() != sz) {
    throw DimensionError("BathSpectrum: rate matrix is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                         " for " + std::to_string(n) + " couplings");
  }
  if (sz == 0) return g;
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (max_hermitian_deviation(g) > 1e-12 * scale) throw DomainError("BathSpectrum: rate matrix is not Hermitian");
  g = 0.5 * (g + g.adjoint()).eval();
  const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(g, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (lmin < -1e-12 * scale) {
    throw DomainError("BathSpectrum: rate matrix not PSD at nu = " + std::to_string(nu) +
                      " (min eigenvalue " + std::to_string(lmin) + ")");
  }
  return g;
}

CMatrix BathSpectrum::lamb_coefficients(double nu, std::size_t n) const {
  const auto sz = static_cast<Index>(n);
  if (!lamb) return CMatrix::Zero(sz, sz);
  CMatrix s = lamb(nu);
  if (s.rows() != sz || s.cols() != sz) throw DimensionError("BathSpectrum: Lamb coefficient matrix has wrong size");
  return s;
}

namespace {

BathSpectrum make_spectrum(NoiseRegime regime, std::function<double(double)> profile, std::optional<CMatrix> corr) {
  if (corr && max_hermitian_deviation(*corr) > 1e-12) throw DomainError("correlation matrix must be Hermitian");
  BathSpectrum s;
  s.regime = regime;
  s.profile = std::move(profile);
  s.correlation = std::move(corr);
  return s;
}

}  // namespace

BathSpectrum flat_spectrum(NoiseRegime regime, double g, std::optional<double> beta, std::optional<CMatrix> correlation) {
  if (g < 0.0) throw DomainError("flat_spectrum: rate must be non-negative");
  const double b = beta.value_or(0.0);
  return make_spectrum(regime, [g, b](double nu) { return nu >= 0.0 ? g : g * std::exp(b * nu); },
                       std::move(correlation));
}

BathSpectrum ohmic_spectrum(NoiseRegime regime, double g, double nu_c, std::optional<double> beta,
                            std::optional<CMatrix> correlation) {
  if (g < 0.0) throw DomainError("ohmic_spectrum: rate must be non-negative");
  if (!(nu_c > 0.0)) throw DomainError("ohmic_spectrum: cutoff must be positive");
  const double b = beta.value_or(0.0);
  auto profile = [g, nu_c, b](double nu) {
    const double a = std::abs(nu);
    const double v = g * a * std::exp(-a / nu_c);
    return nu >= 0.0 ? v : v * std::exp(-b * a);
  };
  return make_spectrum(regime, profile, std::move(correlation));
}

BathSpectrum peak0_spectrum(NoiseRegime regime, double g, std::optional<CMatrix> correlation) {
  if (g < 0.0) throw DomainError("peak0_spectrum: rate must be non-negative");
  return make_spectrum(regime, [g](double nu) { return nu == 0.0 ? g : 0.0; }, std::move(correlation));
}

HermitianOperator lamb_shift(const LindbladSet& lset, const BathSpectrum& spectrum) {
  CMatrix h = CMatrix::Zero(lset.dim, lset.dim);
  if (!spectrum.lamb) return HermitianOperator::hermitian_part(h);
  for (const auto& t : lset.transitions) {
    const CMatrix s = spectrum.lamb_coefficients(t.nu, lset.n_couplings);
    for (std::size_t a = 0; a < t.ops.size(); ++a) {
      for (std::size_t b = 0; b < t.ops.size(); ++b) {
        const Complex c = s(static_cast<Index>(a), static_cast<Index>(b));
        if (c != Complex(0.0)) h += c * t.ops[a].adjoint() * t.ops[b];
      }
    }
  }
  if (max_hermitian_deviation(h) > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw DomainError("lamb_shift: Lamb coefficients are not Hermitian");
  }
  return HermitianOperator::hermitian_part(h);
}

LindbladGenerator::LindbladGenerator(const HermitianOperator& h_s) : h_(h_s.matrix()), kk_(CMatrix::Zero(h_s.dim(), h_s.dim())) {}

LindbladGenerator::LindbladGenerator(const HermitianOperator& h_s, const LindbladSet& lset, const BathSpectrum& spectrum)
    : LindbladGenerator(h_s) {
  if (lset.dim != h_s.dim()) throw DimensionError("LindbladGenerator: jump operators and Hamiltonian differ in dimension");
  h_ += lamb_shift(lset, spectrum).matrix();
  const Index d = h_s.dim();
  for (const auto& t : lset.transitions) {
    bool empty = true;
    for (const auto& op : t.ops) empty = empty && op.cwiseAbs().maxCoeff() == 0.0;
    const CMatrix g = spectrum.rates(t.nu, lset.n_couplings);
    if (g.size() == 0) continue;
    total_rate_ += g.trace().real();
    if (empty) continue;
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
    const double cutoff = 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (Index k = 0; k < g.rows(); ++k) {
      const double lambda = es.eigenvalues()[k];
      if (lambda <= cutoff) continue;
      CMatrix op = CMatrix::Zero(d, d);
      for (Index b = 0; b < g.rows(); ++b) op += std::conj(es.eigenvectors()(b, k)) * t.ops[static_cast<std::size_t>(b)];
      op *= std::sqrt(lambda);
      if (op.cwiseAbs().maxCoeff() == 0.0) continue;
      kk_ += op.adjoint() * op;
      k_.push_back(std::move(op));
    }
  }
}

LindbladGenerator LindbladGenerator::with_hamiltonian_shift(const CMatrix& extra) const {
  if (extra.rows() != dim() || extra.cols() != dim()) throw DimensionError("with_hamiltonian_shift: dimension mismatch");
  LindbladGenerator out = *this;
  out.h_ += extra;
  return out;
}

CMatrix LindbladGenerator::apply(const CMatrix& rho) const {
  const Complex mi(0.0, -1.0);
  CMatrix hr = h_ * rho;
  CMatrix out = mi * (hr - rho * h_);
  if (k_.empty()) return out;
  CMatrix kr = kk_ * rho;
  out -= 0.5 * (kr + rho * kk_);
  for (const auto& k : k_) out.noalias() += k * rho * k.adjoint();
  return out;
}

CMatrix LindbladGenerator::superoperator() const {
  const Index d = dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const Complex mi(0.0, -1.0);
  CMatrix s = mi * (tensor(id, h_) - tensor(h_.transpose(), id));
  s -= 0.5 * (tensor(id, kk_) + tensor(kk_.transpose(), id));
  for (const auto& k : k_) s += tensor(k.conjugate(), k);
  return s;
}

double LindbladGenerator::norm_bound() const {
  double b = 2.0 * operator_norm(h_);
  for (const auto& k : k_) {
    const double n = operator_norm(k);
    b += 2.0 * n * n;
  }
  return b;
}

namespace {

void check_state_dims(const CMatrix& rho, Index d, const char* who) {
  if (rho.rows() != d || rho.cols() != d) throw DimensionError(std::string(who) + ": density matrix dimension mismatch");
}

}  // namespace

CMatrix dissipator(const CMatrix& rho, const LindbladSet& lset, const BathSpectrum& spectrum) {
  check_state_dims(rho, lset.dim, "dissipator");
  BathSpectrum no_lamb = spectrum;
  no_lamb.lamb = nullptr;
  return LindbladGenerator(HermitianOperator::zero(lset.dim), lset, no_lamb).apply(rho);
}

CMatrix gksl_rhs(const CMatrix& rho, const HermitianOperator& h_s, const LindbladSet& lset,
                 const BathSpectrum& spectrum) {
  check_state_dims(rho, h_s.dim(), "gksl_rhs");
  return LindbladGenerator(h_s, lset, spectrum).apply(rho);
}

}  // namespace dressmet
