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

#include "splitlab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "splitlab/random.hpp"

namespace splitlab {

namespace {

constexpr double kClosureTol = 1e-9;
constexpr double kCenterTol = 1e-9;
constexpr double kClusterTol = 1e-6;
constexpr double kBlockTol = 1e-8;
constexpr double kPopulatedTol = 1e-8;
constexpr double kFactorTol = 1e-6;

Complex hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

// Gram-Schmidt step against an orthonormal list; true if `m` was new.
bool try_extend(std::vector<Matrix>& basis, const Matrix& m) {
  const double scale = m.norm();
  if (scale == 0.0) return false;
  Matrix r = m;
  for (int pass = 0; pass < 2; ++pass)
    for (const Matrix& b : basis) r -= hs_inner(b, r) * b;
  const double rn = r.norm();
  if (rn <= kClosureTol * scale) return false;
  basis.push_back(r / rn);
  return true;
}

void require_two_local_commuting(const LocalModel& model) {
  if (!model.is_two_local()) throw UnsupportedInput("decomposition: model has terms on more than two sites");
  if (!model.commuting()) throw UnsupportedInput("decomposition: model terms do not commute");
}

// Site-side operators of one term: the term itself for a one-site term, the
// Schmidt factors on `site` otherwise.
std::vector<Matrix> site_factors(const LocalModel& model, const LocalTerm& term, int site) {
  if (term.sites.size() == 1) return {term.op};
  const int dl = model.system().site_dim(term.sites[0]);
  const int dr = model.system().site_dim(term.sites[1]);
  std::vector<Matrix> out;
  for (const SchmidtTerm& s : operator_schmidt(term.op, dl, dr))
    out.push_back(term.sites[0] == site ? s.left : s.right);
  return out;
}

// Eigenvalue clusters of a Hermitian matrix, split at gaps above
// kClusterTol * spread (and never on rounding noise of a scalar).
std::vector<Matrix> eigen_clusters(const Matrix& h) {
  const EigenDecomposition e = herm_eig(h);
  const Eigen::Index n = e.values.size();
  const double spread = e.values(n - 1) - e.values(0);
  const double scale = std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
  const double cut = std::max(kClusterTol * spread, 1e-10 * scale);
  std::vector<Matrix> clusters;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k == n || e.values(k) - e.values(k - 1) > cut) {
      clusters.push_back(e.vectors.middleCols(start, k - start));
      start = k;
    }
  }
  return clusters;
}

Matrix random_hermitian_element(const OperatorAlgebra& a, Rng& rng) {
  std::normal_distribution<double> normal;
  const Eigen::Index d = a.basis.front().rows();
  Matrix h = Matrix::Zero(d, d);
  for (const Matrix& b : a.basis) h += normal(rng) * hermitian_part(b);
  return h;
}

Matrix random_element(const OperatorAlgebra& a, Rng& rng) {
  std::normal_distribution<double> normal;
  const Eigen::Index d = a.basis.front().rows();
  Matrix m = Matrix::Zero(d, d);
  for (const Matrix& b : a.basis) m += Complex(normal(rng), normal(rng)) * b;
  return m;
}

Matrix range_basis(const Matrix& projector) {
  const EigenDecomposition e = herm_eig(projector);
  Eigen::Index k = 0;
  while (k < e.values.size() && e.values(k) < 0.5) ++k;
  return e.vectors.rightCols(e.values.size() - k);
}

struct UnitsSplit {
  Matrix w;  // M x M unitary; column k*m + r is |k> (x) |r>
  int n = 1;
  int m = 1;
};

// Puts a factor algebra acting on C^M into the form M_n (x) I_m.
UnitsSplit matrix_units(const OperatorAlgebra& algebra, int dim, Rng& rng) {
  const std::vector<Matrix> clusters = eigen_clusters(random_hermitian_element(algebra, rng));
  const int n = static_cast<int>(clusters.size());
  const int m = static_cast<int>(clusters.front().cols());
  for (const Matrix& c : clusters)
    if (c.cols() != m) throw NumericalError("matrix units: pair algebra is not a factor in this sector");
  if (n * m != dim) throw NumericalError("matrix units: cluster sizes do not fill the sector");

  UnitsSplit out{Matrix(dim, dim), n, m};
  out.w.leftCols(m) = clusters[0];
  for (int attempt = 0;; ++attempt) {
    const Matrix a = random_element(algebra, rng);
    bool ok = true;
    for (int k = 1; k < n && ok; ++k) {
      const Matrix t = clusters[k].adjoint() * a * clusters[0];
      const double c = std::sqrt(t.squaredNorm() / m);
      if (c < 1e-8) {
        ok = false;
        break;
      }
      const Matrix wk = t / c;
      if ((wk.adjoint() * wk - Matrix::Identity(m, m)).norm() > 1e-6)
        throw NumericalError("matrix units: off-diagonal unit is not a partial isometry");
      out.w.middleCols(k * m, m) = clusters[k] * wk;
    }
    if (ok) break;
    if (attempt == 8) throw NumericalError("matrix units: could not connect the minimal projections");
  }
  return out;
}

// Applies a (rows_s x d_s) map on every site to the columns of `v`.
Matrix apply_site_maps(const std::vector<Matrix>& maps, const Dims& dims, const Matrix& v) {
  Matrix cur = v;
  Dims cur_dims = dims;
  for (std::size_t s = 0; s < maps.size(); ++s) {
    const Matrix& m = maps[s];
    if (m.cols() != cur_dims[s]) throw InvalidArgument("apply_site_maps: map does not match site dimension");
    long left = 1;
    long right = 1;
    for (std::size_t k = 0; k < s; ++k) left *= cur_dims[k];
    for (std::size_t k = s + 1; k < cur_dims.size(); ++k) right *= cur_dims[k];
    const long din = cur_dims[s];
    const long dout = m.rows();
    Matrix next = Matrix::Zero(left * dout * right, cur.cols());
    for (Eigen::Index c = 0; c < cur.cols(); ++c)
      for (long l = 0; l < left; ++l)
        for (long r = 0; r < right; ++r)
          for (long x = 0; x < din; ++x) {
            const Complex val = cur((l * din + x) * right + r, c);
            if (val == Complex(0.0)) continue;
            for (long o = 0; o < dout; ++o) next((l * dout + o) * right + r, c) += m(o, x) * val;
          }
    cur = std::move(next);
    cur_dims[s] = static_cast<int>(dout);
  }
  return cur;
}

}  // namespace

std::vector<SchmidtTerm> operator_schmidt(const Matrix& h, int d_left, int d_right) {
  if (h.rows() != d_left * d_right || h.cols() != d_left * d_right)
    throw InvalidArgument("operator_schmidt: size does not match the pair dimensions");
  Matrix r(d_left * d_left, d_right * d_right);
  for (int a = 0; a < d_left; ++a)
    for (int ap = 0; ap < d_left; ++ap)
      for (int b = 0; b < d_right; ++b)
        for (int bp = 0; bp < d_right; ++bp) r(a * d_left + ap, b * d_right + bp) = h(a * d_right + b, ap * d_right + bp);

  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  std::vector<SchmidtTerm> out;
  if (s.size() == 0 || s(0) == 0.0) return out;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= 1e-12 * s(0)) break;
    Matrix left(d_left, d_left);
    Matrix right(d_right, d_right);
    for (int a = 0; a < d_left; ++a)
      for (int ap = 0; ap < d_left; ++ap) left(a, ap) = svd.matrixU()(a * d_left + ap, k);
    for (int b = 0; b < d_right; ++b)
      for (int bp = 0; bp < d_right; ++bp) right(b, bp) = std::conj(svd.matrixV()(b * d_right + bp, k));
    out.push_back({std::move(left), std::move(right), s(k)});
  }
  return out;
}

OperatorAlgebra generate_algebra(const std::vector<Matrix>& generators, int d) {
  OperatorAlgebra a;
  a.basis.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (const Matrix& g : generators) {
    if (g.rows() != d || g.cols() != d) throw InvalidArgument("generate_algebra: generator size mismatch");
    try_extend(a.basis, g);
    try_extend(a.basis, g.adjoint());
  }
  std::size_t done = 1;
  while (done < a.basis.size() && a.basis.size() < static_cast<std::size_t>(d) * d) {
    const std::size_t end = a.basis.size();
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t j = (i < done ? done : 0); j < end; ++j) {
        const Matrix p = a.basis[i] * a.basis[j];
        if (try_extend(a.basis, p)) try_extend(a.basis, p.adjoint());
      }
    done = end;
  }
  return a;
}

OperatorAlgebra site_algebra(const LocalModel& model, int site) {
  require_two_local_commuting(model);
  if (site < 0 || site >= model.system().size()) throw InvalidArgument("site_algebra: site out of range");
  std::vector<Matrix> gens;
  for (int t : model.terms_at(site)) {
    std::vector<Matrix> f = site_factors(model, model.terms()[t], site);
    gens.insert(gens.end(), f.begin(), f.end());
  }
  return generate_algebra(gens, model.system().site_dim(site));
}

OperatorAlgebra algebra_center(const OperatorAlgebra& algebra) {
  const int m = algebra.dim();
  if (m == 0) return {};
  const Eigen::Index d = algebra.basis.front().rows();
  const Eigen::Index block = d * d;
  Matrix stacked(block * m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const Matrix c = algebra.basis[k] * algebra.basis[l] - algebra.basis[l] * algebra.basis[k];
      stacked.block(l * block, k, block, 1) = c.reshaped();
    }
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cut = kCenterTol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  OperatorAlgebra center;
  for (int k = 0; k < m; ++k) {
    if (k < s.size() && s(k) > cut) continue;
    Matrix z = Matrix::Zero(d, d);
    for (int l = 0; l < m; ++l) z += svd.matrixV()(l, k) * algebra.basis[l];
    try_extend(center.basis, z);
  }
  return center;
}

SiteSectorDecomposition sector_projectors(const LocalModel& model, int site, std::uint64_t seed) {
  const OperatorAlgebra algebra = site_algebra(model, site);
  const OperatorAlgebra center = algebra_center(algebra);
  const int d = model.system().site_dim(site);

  Rng rng(seed);
  SiteSectorDecomposition out;
  out.site = site;
  out.algebra_dim = algebra.dim();
  for (const Matrix& c : eigen_clusters(random_hermitian_element(center, rng)))
    out.projectors.push_back(Projector::from_basis(c, Dims{d}));

  double max_term = 0.0;
  for (int t : model.terms_at(site)) {
    const LocalTerm& term = model.terms()[t];
    max_term = std::max(max_term, operator_norm(term.op));
    const Dims dims = support_dims(model.system(), term.sites);
    const int pos = term.sites[0] == site ? 0 : 1;
    for (const Projector& p : out.projectors) {
      const Matrix pe = embed_operator(p.matrix(), std::vector<int>{pos}, dims);
      out.block_certificate = std::max(out.block_certificate, operator_norm(pe * term.op - term.op * pe));
    }
  }
  if (max_term > 0.0 && out.block_certificate > kBlockTol * max_term) {
    std::ostringstream msg;
    msg << "sector_projectors: terms at site " << site << " are not block diagonal (certificate "
        << out.block_certificate << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

SectorSupport detect_multi_sector(const CodeSubspace& code, const SiteSectorDecomposition& decomp) {
  SectorSupport out;
  out.site = decomp.site;
  const std::vector<int> support{decomp.site};
  for (int mu = 0; mu < static_cast<int>(decomp.projectors.size()); ++mu) {
    const Matrix pb = apply_local(decomp.projectors[mu].matrix(), support, code.dims(), code.basis());
    const double n = operator_norm(pb);
    out.weights.push_back(n * n);
    if (n * n > kPopulatedTol) out.sectors.push_back(mu);
  }
  return out;
}

AttackReport multi_sector_attack(const CodeSubspace& code, const SiteSectorDecomposition& decomp) {
  const SectorSupport support = detect_multi_sector(code, decomp);
  if (!support.multi_sector()) throw InvalidArgument("multi_sector_attack: code occupies a single sector here");
  const Projector& pi = decomp.projectors[support.sectors.back()];
  const std::vector<int> site{decomp.site};
  const IdsReport r = ids_local(code, pi.matrix(), site);
  return AttackReport{
      .site = decomp.site,
      .x = HermOp(pi.matrix(), pi.dims()),
      .certified_delta_e = r.delta_e,
      .witness_psi = r.witness_psi,
      .witness_phi = r.witness_phi,
      .guarantee = Guarantee::kAnalytic,
      .history = {},
  };
}

Dims GroundFactorization::virtual_dims() const {
  Dims out;
  for (const VirtualFactor& f : factors) out.push_back(f.dim);
  return out;
}

std::vector<int> GroundFactorization::factors_of(int site) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(factors.size()); ++k)
    if (factors[k].site == site) out.push_back(k);
  return out;
}

Matrix GroundFactorization::lift(const Matrix& op, int index, double outside) const {
  if (index < 0 || index >= static_cast<int>(factors.size())) throw InvalidArgument("lift: factor out of range");
  const int site = factors[index].site;
  if (op.rows() != factors[index].dim) throw InvalidArgument("lift: operator does not match the factor");
  Matrix local = Matrix::Identity(1, 1);
  for (int k : factors_of(site)) {
    const Matrix f = k == index ? op : Matrix::Identity(factors[k].dim, factors[k].dim);
    local = kron(local, f);
  }
  const Matrix& v = isometries[site];
  const Eigen::Index d = v.rows();
  return v * local * v.adjoint() + outside * (Matrix::Identity(d, d) - v * v.adjoint());
}

GroundFactorization factor_ground_projector_unchecked(const LocalModel& model, const CodeSubspace& code,
                                                      const std::vector<SiteSectorDecomposition>& decomps,
                                                      std::uint64_t seed) {
  require_two_local_commuting(model);
  const int n = model.system().size();
  if (static_cast<int>(decomps.size()) != n) throw InvalidArgument("factorization: one decomposition per site");

  GroundFactorization out;
  for (int i = 0; i < n; ++i) {
    const SectorSupport support = detect_multi_sector(code, decomps[i]);
    if (support.sectors.size() != 1)
      throw UnsupportedInput("factorization: code is not in a single sector at site " + std::to_string(i));
    const int mu = support.sectors.front();
    out.sector.push_back(mu);

    const Matrix s = range_basis(decomps[i].projectors[mu].matrix());
    int dim = static_cast<int>(s.cols());

    std::vector<std::pair<int, std::vector<Matrix>>> neighbours;
    for (int t : model.terms_at(i)) {
      const LocalTerm& term = model.terms()[t];
      if (term.sites.size() != 2) continue;
      std::vector<Matrix> gens;
      for (const Matrix& f : site_factors(model, term, i)) gens.push_back(s.adjoint() * f * s);
      neighbours.emplace_back(term.sites[0] == i ? term.sites[1] : term.sites[0], std::move(gens));
    }
    std::sort(neighbours.begin(), neighbours.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    Rng rng(seed + static_cast<std::uint64_t>(i));
    Matrix v = s;
    int outer = 1;
    for (std::size_t k = 0; k < neighbours.size(); ++k) {
      const OperatorAlgebra algebra = generate_algebra(neighbours[k].second, dim);
      const UnitsSplit u = matrix_units(algebra, dim, rng);
      for (const Matrix& b : algebra.basis) {
        const Matrix t = u.w.adjoint() * b * u.w;
        Matrix x(u.n, u.n);
        for (int p = 0; p < u.n; ++p)
          for (int q = 0; q < u.n; ++q) x(p, q) = t.block(p * u.m, q * u.m, u.m, u.m).trace() / double(u.m);
        out.units_residual = std::max(out.units_residual, (t - kron(x, Matrix::Identity(u.m, u.m))).norm());
      }
      for (std::size_t r = k + 1; r < neighbours.size(); ++r)
        for (Matrix& g : neighbours[r].second) {
          const Matrix t = u.w.adjoint() * g * u.w;
          const Matrix y = t.topLeftCorner(u.m, u.m);
          out.units_residual = std::max(out.units_residual, (t - kron(Matrix::Identity(u.n, u.n), y)).norm());
          g = y;
        }
      v = v * kron(Matrix::Identity(outer, outer), u.w);
      outer *= u.n;
      dim = u.m;
      out.factors.push_back({i, neighbours[k].first, u.n});
    }
    out.factors.push_back({i, -1, dim});
    out.isometries.push_back(std::move(v));
  }

  std::vector<Matrix> down;
  Dims site_virtual;
  for (const Matrix& v : out.isometries) {
    down.push_back(v.adjoint());
    site_virtual.push_back(static_cast<int>(v.cols()));
  }
  const Matrix& b = code.basis();
  const Matrix bv = apply_site_maps(down, code.dims(), b);
  out.support_residual = operator_norm(b - apply_site_maps(out.isometries, site_virtual, bv));

  const Dims vdims = out.virtual_dims();
  const Matrix pc = bv * bv.adjoint();
  const Eigen::Index vd = pc.rows();
  Matrix recon = Matrix::Identity(vd, vd);
  auto index_of = [&](int site, int neighbour) {
    for (int k = 0; k < static_cast<int>(out.factors.size()); ++k)
      if (out.factors[k].site == site && out.factors[k].neighbour == neighbour) return k;
    throw InvalidArgument("factorization: missing virtual factor");
  };
  for (const LocalTerm& term : model.terms()) {
    if (term.sites.size() != 2) continue;
    const int i = std::min(term.sites[0], term.sites[1]);
    const int j = std::max(term.sites[0], term.sites[1]);
    PairFactor f;
    f.sites = {i, j};
    f.left_index = index_of(i, j);
    f.right_index = index_of(j, i);
    const std::vector<int> keep{f.left_index, f.right_index};
    const Matrix reduced = partial_trace(pc, vdims, keep);
    const EigenDecomposition e = herm_eig(reduced);
    const double top = e.values(e.values.size() - 1);
    Eigen::Index k = 0;
    while (k < e.values.size() && e.values(k) <= 0.5 * top) ++k;
    const Matrix range = e.vectors.rightCols(e.values.size() - k);
    f.projector = range * range.adjoint();
    f.rank = static_cast<int>(range.cols());
    recon = recon * embed_operator(f.projector, keep, vdims);
    out.pairs.push_back(std::move(f));
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const PairFactor& x, const PairFactor& y) { return x.sites < y.sites; });
  out.reconstruction_error = operator_norm(pc - recon);
  return out;
}

GroundFactorization factor_ground_projector(const LocalModel& model, const CodeSubspace& code, std::uint64_t seed) {
  require_two_local_commuting(model);
  std::vector<SiteSectorDecomposition> decomps;
  for (int i = 0; i < model.system().size(); ++i)
    decomps.push_back(sector_projectors(model, i, seed + static_cast<std::uint64_t>(i)));
  GroundFactorization f = factor_ground_projector_unchecked(model, code, decomps, seed);
  const double worst = std::max({f.reconstruction_error, f.support_residual, f.units_residual});
  if (worst > kFactorTol) {
    std::ostringstream msg;
    msg << "factorization residual " << worst << " exceeds " << kFactorTol;
    throw NumericalError(msg.str());
  }
  return f;
}

std::string to_string(AttackBranch b) {
  switch (b) {
    case AttackBranch::kMultiSector:
      return "multi_sector";
    case AttackBranch::kPairFactor:
      return "pair_factor";
    case AttackBranch::kMultiplicity:
      return "multiplicity";
  }
  return "unknown";
}

UniversalAttackReport universal_attack(const LocalModel& model, const UniversalAttackOptions& options) {
  require_two_local_commuting(model);
  const CodeSubspace code = ground_subspace(model.hamiltonian(), model.system().dims());
  return universal_attack(model, code, options);
}

UniversalAttackReport universal_attack(const LocalModel& model, const CodeSubspace& code,
                                       const UniversalAttackOptions& options) {
  require_two_local_commuting(model);
  if (code.degeneracy() < 2) throw UnsupportedInput("universal_attack: nothing to split (non-degenerate code)");
  const int n = model.system().size();

  std::vector<SiteSectorDecomposition> decomps;
  std::vector<SectorSupport> supports;
  for (int i = 0; i < n; ++i) {
    decomps.push_back(sector_projectors(model, i, options.seed + static_cast<std::uint64_t>(i)));
    supports.push_back(detect_multi_sector(code, decomps.back()));
  }

  auto refine = [&](const AttackReport& analytic) {
    AscentOptions ascent = options.ascent;
    ascent.seed = options.seed;
    return worst_single_site_search(code, analytic.site, options.restarts, ascent, {analytic.x.matrix()});
  };

  for (int i = 0; i < n; ++i) {
    if (!supports[i].multi_sector()) continue;
    AttackReport analytic = multi_sector_attack(code, decomps[i]);
    AttackReport refined = refine(analytic);
    const double measured = analytic.certified_delta_e;
    return UniversalAttackReport{AttackBranch::kMultiSector, std::move(analytic), std::move(refined), measured,
                                 std::move(decomps),         std::move(supports), std::nullopt};
  }

  GroundFactorization f = factor_ground_projector_unchecked(model, code, decomps, options.seed);
  const double worst = std::max({f.reconstruction_error, f.support_residual, f.units_residual});
  if (worst > kFactorTol) {
    std::ostringstream msg;
    msg << "universal_attack: factorization residual " << worst << " exceeds " << kFactorTol;
    throw NumericalError(msg.str());
  }

  auto finish = [&](AttackBranch branch, int factor, const Matrix& x_virtual, double certified) {
    const int site = f.factors[factor].site;
    const Matrix y = f.lift(x_virtual, factor);
    const std::vector<int> support{site};
    const IdsReport r = ids_local(code, y, support);
    AttackReport analytic{
        .site = site,
        .x = HermOp(y, Dims{model.system().site_dim(site)}),
        .certified_delta_e = certified,
        .witness_psi = r.witness_psi,
        .witness_phi = r.witness_phi,
        .guarantee = Guarantee::kAnalytic,
        .history = {},
    };
    AttackReport refined = refine(analytic);
    return UniversalAttackReport{branch,           std::move(analytic), std::move(refined), r.delta_e,
                                 std::move(decomps), std::move(supports), std::move(f)};
  };

  for (const PairFactor& p : f.pairs) {
    if (p.rank < 2) continue;
    const Dims pair_dims{f.factors[p.left_index].dim, f.factors[p.right_index].dim};
    const TwoSiteAttack a = two_site_attack(Projector(p.projector, pair_dims));
    const int factor = a.side == Side::kA ? p.left_index : p.right_index;
    return finish(AttackBranch::kPairFactor, factor, a.report.x.matrix(), a.report.certified_delta_e);
  }

  for (int k = 0; k < static_cast<int>(f.factors.size()); ++k) {
    const VirtualFactor& v = f.factors[k];
    if (v.neighbour != -1 || v.dim < 2) continue;
    Matrix x = -Matrix::Identity(v.dim, v.dim);
    x(0, 0) = 1.0;
    return finish(AttackBranch::kMultiplicity, k, x, 2.0);
  }
  throw NumericalError("universal_attack: degenerate code without a rank-2 pair factor or multiplicity space");
}

nlohmann::json to_json(const UniversalAttackReport& report) {
  nlohmann::json j;
  j["branch"] = to_string(report.branch);
  j["site"] = report.analytic.site;
  j["analytic_delta_e"] = report.analytic.certified_delta_e;
  j["measured_delta_e"] = report.measured_delta_e;
  j["refined_delta_e"] = report.refined.certified_delta_e;
  j["refined_site"] = report.refined.site;
  nlohmann::json sites = nlohmann::json::array();
  for (std::size_t i = 0; i < report.sectors.size(); ++i) {
    nlohmann::json s;
    s["site"] = report.sectors[i].site;
    s["algebra_dim"] = report.sectors[i].algebra_dim;
    nlohmann::json dims = nlohmann::json::array();
    for (const Projector& p : report.sectors[i].projectors) dims.push_back(p.rank());
    s["sector_dims"] = dims;
    s["populated"] = report.supports[i].sectors;
    s["block_certificate"] = report.sectors[i].block_certificate;
    sites.push_back(s);
  }
  j["sites"] = sites;
  if (report.factorization) {
    const GroundFactorization& f = *report.factorization;
    nlohmann::json fj;
    fj["virtual_dims"] = f.virtual_dims();
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairFactor& p : f.pairs)
      pairs.push_back({{"sites", {p.sites.first, p.sites.second}}, {"rank", p.rank}});
    fj["pairs"] = pairs;
    fj["reconstruction_error"] = f.reconstruction_error;
    fj["support_residual"] = f.support_residual;
    fj["units_residual"] = f.units_residual;
    j["factorization"] = fj;
  }
  return j;
}

}  // namespace splitlab
