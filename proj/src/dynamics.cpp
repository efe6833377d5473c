// Copyright 2026 The splitlab Authors
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

#include "splitlab/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace splitlab {

// ---------------------------------------------------------------------------
// NoiseDistribution

NoiseDistribution NoiseDistribution::gaussian(double mean, double std) {
  if (!std::isfinite(mean) || !std::isfinite(std) || std <= 0.0)
    throw InvalidArgument("gaussian distribution: std must be positive and finite");
  return NoiseDistribution(Gaussian{mean, std});
}

NoiseDistribution NoiseDistribution::uniform(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || b <= a) throw InvalidArgument("uniform distribution: need b > a");
  return NoiseDistribution(Uniform{a, b});
}

NoiseDistribution NoiseDistribution::discrete(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw InvalidArgument("discrete distribution: values and probabilities must be nonempty and equal in size");
  double total = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!std::isfinite(values[k]) || !std::isfinite(probs[k]) || probs[k] < 0.0)
      throw InvalidArgument("discrete distribution: invalid value or probability");
    total += probs[k];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("discrete distribution: probabilities must sum to 1");
  return NoiseDistribution(Discrete{std::move(values), std::move(probs)});
}

NoiseDistribution NoiseDistribution::delta(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("delta distribution: value must be finite");
  return NoiseDistribution(Delta{value});
}

std::string NoiseDistribution::name() const {
  switch (kind_.index()) {
    case 0:
      return "gaussian";
    case 1:
      return "uniform";
    case 2:
      return "discrete";
    default:
      return "delta";
  }
}

double NoiseDistribution::mean() const {
  if (const auto* g = std::get_if<Gaussian>(&kind_)) return g->mean;
  if (const auto* u = std::get_if<Uniform>(&kind_)) return 0.5 * (u->a + u->b);
  if (const auto* d = std::get_if<Discrete>(&kind_)) {
    double m = 0.0;
    for (std::size_t k = 0; k < d->values.size(); ++k) m += d->probs[k] * d->values[k];
    return m;
  }
  return std::get<Delta>(kind_).value;
}

double NoiseDistribution::variance() const {
  if (const auto* g = std::get_if<Gaussian>(&kind_)) return g->std * g->std;
  if (const auto* u = std::get_if<Uniform>(&kind_)) return (u->b - u->a) * (u->b - u->a) / 12.0;
  if (const auto* d = std::get_if<Discrete>(&kind_)) {
    const double m = mean();
    double v = 0.0;
    for (std::size_t k = 0; k < d->values.size(); ++k) v += d->probs[k] * (d->values[k] - m) * (d->values[k] - m);
    return v;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Characteristic function and quadrature

Complex characteristic_function(const NoiseDistribution& dist, double alpha) {
  const auto& kind = dist.kind();
  if (const auto* g = std::get_if<NoiseDistribution::Gaussian>(&kind))
    return std::exp(Complex(-0.5 * g->std * g->std * alpha * alpha, -g->mean * alpha));
  if (const auto* u = std::get_if<NoiseDistribution::Uniform>(&kind)) {
    const double x = 0.5 * (u->b - u->a) * alpha;
    const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return sinc * std::polar(1.0, -0.5 * (u->a + u->b) * alpha);
  }
  if (const auto* d = std::get_if<NoiseDistribution::Discrete>(&kind)) {
    Complex s(0.0);
    for (std::size_t k = 0; k < d->values.size(); ++k) s += d->probs[k] * std::polar(1.0, -d->values[k] * alpha);
    return s;
  }
  return std::polar(1.0, -std::get<NoiseDistribution::Delta>(kind).value * alpha);
}

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights the
// squared first components of its eigenvectors (normalized to sum 1).
QuadratureRule golub_welsch(const std::vector<double>& off_diagonal) {
  const int n = static_cast<int>(off_diagonal.size()) + 1;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) j(k, k + 1) = j(k + 1, k) = off_diagonal[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadratureRule r;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(es.eigenvalues()(k));
    r.weights.push_back(es.eigenvectors()(0, k) * es.eigenvectors()(0, k));
  }
  return r;
}

}  // namespace

QuadratureRule quadrature(const NoiseDistribution& dist, int nodes) {
  const auto& kind = dist.kind();
  if (const auto* d = std::get_if<NoiseDistribution::Discrete>(&kind)) return {d->values, d->probs};
  if (const auto* d = std::get_if<NoiseDistribution::Delta>(&kind)) return {{d->value}, {1.0}};
  if (nodes < 1) throw InvalidArgument("quadrature: need at least one node");

  std::vector<double> off(nodes - 1);
  if (const auto* g = std::get_if<NoiseDistribution::Gaussian>(&kind)) {
    for (int k = 1; k < nodes; ++k) off[k - 1] = std::sqrt(0.5 * k);
    QuadratureRule r = golub_welsch(off);
    for (double& x : r.nodes) x = g->mean + std::numbers::sqrt2 * g->std * x;
    return r;
  }
  const auto& u = std::get<NoiseDistribution::Uniform>(kind);
  for (int k = 1; k < nodes; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  QuadratureRule r = golub_welsch(off);
  for (double& x : r.nodes) x = 0.5 * (u.a + u.b) + 0.5 * (u.b - u.a) * x;
  return r;
}

QuadratureRule monte_carlo(const NoiseDistribution& dist, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("monte_carlo: need at least one sample");
  std::mt19937_64 rng(seed);
  QuadratureRule r;
  const auto& kind = dist.kind();
  for (int k = 0; k < samples; ++k) {
    double x = 0.0;
    if (const auto* g = std::get_if<NoiseDistribution::Gaussian>(&kind)) {
      x = std::normal_distribution<double>(g->mean, g->std)(rng);
    } else if (const auto* u = std::get_if<NoiseDistribution::Uniform>(&kind)) {
      x = std::uniform_real_distribution<double>(u->a, u->b)(rng);
    } else if (const auto* d = std::get_if<NoiseDistribution::Discrete>(&kind)) {
      std::discrete_distribution<int> pick(d->probs.begin(), d->probs.end());
      x = d->values[pick(rng)];
    } else {
      x = std::get<NoiseDistribution::Delta>(kind).value;
    }
    r.nodes.push_back(x);
    r.weights.push_back(1.0 / samples);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dephasing

Matrix DephasingProfile::factors(const NoiseDistribution& dist, double t) const {
  const Eigen::Index d = mu.size();
  Matrix f(d, d);
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index n = 0; n < d; ++n) f(m, n) = characteristic_function(dist, t * (mu(m) - mu(n)));
  return f;
}

DephasingProfile dephasing_profile(const CodeSubspace& code, const Matrix& v) {
  const EigenDecomposition e = herm_eig(project_onto_code(code, v));
  return {e.values, e.vectors, code.basis() * e.vectors};
}

namespace {

void require_in_code(const CodeSubspace& code, const Matrix& rho0) {
  if (rho0.rows() != code.dim() || rho0.cols() != code.dim())
    throw InvalidArgument("initial state does not match the code dimension");
  const Matrix& b = code.basis();
  const Matrix inside = b * (b.adjoint() * rho0 * b) * b.adjoint();
  if ((rho0 - inside).norm() > 1e-10) throw InvalidArgument("initial state leaks outside the code space");
}

}  // namespace

Matrix predict_dephasing(const CodeSubspace& code, const Matrix& v, const NoiseDistribution& dist,
                         const Matrix& rho0, double t) {
  require_in_code(code, rho0);
  const DephasingProfile p = dephasing_profile(code, v);
  const Matrix rho = p.lifted.adjoint() * rho0 * p.lifted;
  const Matrix evolved = rho.cwiseProduct(p.factors(dist, t));
  return p.lifted * evolved * p.lifted.adjoint();
}

Matrix evolve_ensemble(const std::vector<Matrix>& generators, const std::vector<double>& weights,
                       const Matrix& rho0, double t) {
  if (generators.size() != weights.size() || generators.empty())
    throw InvalidArgument("evolve_ensemble: need one weight per generator");
  Matrix out = Matrix::Zero(rho0.rows(), rho0.cols());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Matrix u = herm_propagator(generators[k], t);
    out += weights[k] * (u * rho0 * u.adjoint());
  }
  return out;
}

namespace {

QuadratureRule rule_for(const NoiseDistribution& dist, const MixtureOptions& options) {
  const bool continuous = dist.name() == "gaussian" || dist.name() == "uniform";
  if (continuous && options.samples > 0) return monte_carlo(dist, options.samples, options.seed);
  return quadrature(dist, options.nodes);
}

}  // namespace

Matrix evolve_mixture(const Matrix& h0, double g, const Matrix& v, const NoiseDistribution& dist,
                      const Matrix& rho0, double t, const MixtureOptions& options) {
  if (h0.rows() != v.rows() || h0.rows() != rho0.rows()) throw InvalidArgument("evolve_mixture: dimension mismatch");
  const QuadratureRule rule = rule_for(dist, options);
  std::vector<Matrix> gens;
  gens.reserve(rule.nodes.size());
  for (double lambda : rule.nodes) gens.push_back(g * h0 + lambda * v);
  return evolve_ensemble(gens, rule.weights, rho0, t);
}

Matrix evolve_surrogate(const CodeSubspace& code, const Matrix& v, const NoiseDistribution& dist,
                        const Matrix& rho0, double t, const MixtureOptions& options) {
  require_in_code(code, rho0);
  const Matrix& b = code.basis();
  const Matrix pvp = b * project_onto_code(code, v) * b.adjoint();
  return evolve_mixture(Matrix::Zero(pvp.rows(), pvp.cols()), 0.0, pvp, dist, rho0, t, options);
}

// ---------------------------------------------------------------------------
// Bounds

std::vector<GapBoundRow> gap_bound_check(const Matrix& h0, const CodeSubspace& code, const Matrix& v, double g,
                                         const std::vector<double>& t_grid) {
  if (h0.rows() != code.dim() || v.rows() != code.dim()) throw InvalidArgument("gap_bound_check: dimension mismatch");
  if (!(g > 0.0)) throw InvalidArgument("gap_bound_check: gap factor must be positive");
  if (!std::isfinite(code.gap())) throw InvalidArgument("gap_bound_check: code has no Hamiltonian gap");
  if (operator_norm(h0 * code.basis()) > 1e-9 * std::max(1.0, operator_norm(h0)))
    throw InvalidArgument("gap_bound_check: code must lie in the kernel of h0 (shift the ground energy to 0)");

  const Matrix& b = code.basis();
  const EigenDecomposition full = herm_eig(Matrix(g * h0 + v));
  const Matrix full_b = full.vectors.adjoint() * b;
  const EigenDecomposition eff = herm_eig(project_onto_code(code, v));
  const double vn = operator_norm(v);

  std::vector<GapBoundRow> rows;
  for (double t : t_grid) {
    const Vector ph = (full.values * Complex(0.0, -t)).array().exp();
    const Matrix exact = full.vectors * (ph.asDiagonal() * full_b);
    const Vector pe = (eff.values * Complex(0.0, -t)).array().exp();
    const Matrix limit = b * (eff.vectors * pe.asDiagonal() * eff.vectors.adjoint());
    const double lhs = operator_norm(exact - limit);
    const double rhs = 4.0 * vn / (g * code.gap()) * (vn * std::abs(t) + 1.0);
    rows.push_back({t, lhs, rhs, lhs <= rhs});
  }
  return rows;
}

std::vector<FidelityRow> fidelity_bound_check(const CodeSubspace& code, const Matrix& v, const NoiseDistribution& dist,
                                              const Ket& psi, const std::vector<double>& t_grid,
                                              const MixtureOptions& options) {
  const Matrix rho0 = psi.outer();
  require_in_code(code, rho0);
  const DephasingProfile p = dephasing_profile(code, v);
  const double spread = p.mu(p.mu.size() - 1) - p.mu(0);
  const double mean_sq_split = dist.second_moment() * spread * spread;

  std::vector<FidelityRow> rows;
  for (double t : t_grid) {
    const Matrix rho = evolve_surrogate(code, v, dist, rho0, t, options);
    const double overlap = psi.amplitudes().dot(rho * psi.amplitudes()).real();
    const double f = std::sqrt(std::max(0.0, overlap));
    const double bound = 1.0 - t * t * mean_sq_split / 8.0;
    rows.push_back({t, f, bound, f >= bound - 1e-12});
  }
  return rows;
}

CoherenceReport coherence_time(const NoiseDistribution& dist, double delta_e, double epsilon) {
  if (!(delta_e > 0.0)) throw InvalidArgument("coherence_time: delta_e must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("coherence_time: epsilon must lie in (0, 1)");
  CoherenceReport r;
  r.epsilon = epsilon;
  r.delta_e = delta_e;
  const double var = dist.variance();
  if (var <= 0.0) return r;
  r.c_small = std::sqrt(2.0 * epsilon / var);
  r.tau_small = r.c_small / delta_e;

  const double level = 1.0 - epsilon;
  auto above = [&](double a) { return std::abs(characteristic_function(dist, a)) > level; };
  double lo = 0.0;
  double step = r.c_small / 1024.0;
  const double max_step = r.c_small / 32.0;
  const double limit = 1e4 * r.c_small;
  double hi = step;
  while (above(hi)) {
    if (hi > limit) return r;
    lo = hi;
    step = std::min(step * 1.5, max_step);
    hi = lo + step;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  r.c_eps = 0.5 * (lo + hi);
  r.tau_eps = r.c_eps / delta_e;
  return r;
}

// ---------------------------------------------------------------------------
// Bath embedding

BathModel thermal_bath(const std::vector<double>& lambdas, const std::vector<double>& energies, double beta,
                       const Matrix& v) {
  if (lambdas.empty() || lambdas.size() != energies.size())
    throw InvalidArgument("thermal_bath: one energy per bath level");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  const int k = static_cast<int>(lambdas.size());
  BathModel bath{energies, Matrix::Zero(k, k), {}};
  double z = 0.0;
  for (int i = 0; i < k; ++i) z += std::exp(-beta * (energies[i] - e0));
  for (int i = 0; i < k; ++i) {
    bath.state(i, i) = std::exp(-beta * (energies[i] - e0)) / z;
    bath.interactions.push_back(lambdas[i] * v);
  }
  return bath;
}

double bath_embedding_check(const Matrix& h_s, const BathModel& bath, const Matrix& rho0, double t) {
  const int k = static_cast<int>(bath.energies.size());
  const int d = static_cast<int>(h_s.rows());
  if (k < 1 || bath.state.rows() != k || bath.state.cols() != k || static_cast<int>(bath.interactions.size()) != k)
    throw InvalidArgument("bath_embedding_check: bath model sizes are inconsistent");
  if (rho0.rows() != d) throw InvalidArgument("bath_embedding_check: system state does not match H_S");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && std::abs(bath.state(i, j)) > 1e-12)
        throw UnsupportedInput("bath_embedding_check: bath state is not diagonal in the coupling basis");

  const Matrix ik = Matrix::Identity(k, k);
  Matrix hb = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) hb(i, i) = bath.energies[i];
  Matrix h = kron(h_s, ik) + kron(Matrix::Identity(d, d), hb);
  std::vector<Matrix> gens;
  std::vector<double> weights;
  for (int i = 0; i < k; ++i) {
    Matrix level = Matrix::Zero(k, k);
    level(i, i) = 1.0;
    h += kron(bath.interactions[i], level);
    gens.push_back(h_s + bath.interactions[i]);
    weights.push_back(bath.state(i, i).real());
  }

  const Matrix u = herm_propagator(h, t);
  const Matrix joint = u * kron(rho0, bath.state) * u.adjoint();
  const std::vector<int> keep{0};
  const Matrix reduced = partial_trace(joint, Dims{d, k}, keep);
  return max_abs_deviation(reduced, evolve_ensemble(gens, weights, rho0, t));
}

double max_abs_deviation(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("max_abs_deviation: shape mismatch");
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

void write_time_series_csv(std::ostream& os, const std::vector<TimeSeriesRow>& rows) {
  const auto old = os.precision(12);
  os << "t,pair,predicted,simulated,gap_lhs,gap_rhs,fidelity,fidelity_bound\n";
  for (const TimeSeriesRow& r : rows)
    os << r.t << ',' << r.pair << ',' << r.predicted << ',' << r.simulated << ',' << r.gap_lhs << ',' << r.gap_rhs
       << ',' << r.fidelity << ',' << r.fidelity_bound << '\n';
  os.precision(old);
}

}  // namespace splitlab
