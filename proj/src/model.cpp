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

#include "splitlab/model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "splitlab/random.hpp"

namespace splitlab {

namespace {

constexpr double kCommuteTol = 1e-9;

std::vector<int> sorted_sites(const std::vector<int>& sites) {
  std::vector<int> s = sites;
  std::sort(s.begin(), s.end());
  return s;
}

// Embeds a term into the local space spanned by `frame` (sorted site list).
Matrix embed_in_frame(const LocalTerm& term, const std::vector<int>& frame, const Dims& dims) {
  Dims frame_dims;
  for (int s : frame) frame_dims.push_back(dims[s]);
  std::vector<int> positions;
  for (int s : term.sites)
    positions.push_back(static_cast<int>(std::find(frame.begin(), frame.end(), s) - frame.begin()));
  return embed_operator(term.op, positions, frame_dims);
}

}  // namespace

QuditSystem::QuditSystem(Dims dims, int cap) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("QuditSystem: no sites");
  for (int d : dims_)
    if (d < 2) throw InvalidArgument("QuditSystem: site dimension must be >= 2");
  long long total = 1;
  for (int d : dims_) {
    total *= d;
    if (total > cap) throw InvalidArgument("QuditSystem: total dimension exceeds cap");
  }
  dim_ = static_cast<int>(total);
}

Dims support_dims(const QuditSystem& system, std::span<const int> support) {
  Dims out;
  for (int s : support) {
    if (s < 0 || s >= system.size()) throw InvalidArgument("site index out of range");
    out.push_back(system.dims()[s]);
  }
  return out;
}

int LocalModel::locality() const {
  int k = 0;
  for (const auto& t : terms_) k = std::max(k, static_cast<int>(t.sites.size()));
  return k;
}

Matrix LocalModel::hamiltonian() const {
  const int d = system_.dim();
  Matrix h = Matrix::Zero(d, d);
  for (const auto& t : terms_) h += embed_operator(t.op, t.sites, system_.dims());
  h.diagonal().array() -= energy_shift_;
  return h;
}

std::vector<int> LocalModel::terms_at(int site) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(terms_.size()); ++k)
    if (std::find(terms_[k].sites.begin(), terms_[k].sites.end(), site) != terms_[k].sites.end())
      out.push_back(k);
  return out;
}

PerturbationSpec::PerturbationSpec(std::vector<int> support_, HermOp op_, NoiseDistribution distribution_)
    : support(std::move(support_)), op(std::move(op_)), distribution(std::move(distribution_)) {
  if (support.empty()) throw InvalidArgument("PerturbationSpec: empty support");
  if (op.dims().size() != support.size()) throw InvalidArgument("PerturbationSpec: operator dims do not match support");
}

LocalModel build_local_model(QuditSystem system, std::vector<LocalTerm> terms) {
  LocalModel model(std::move(system));
  const Dims& dims = model.system_.dims();

  std::set<std::vector<int>> seen;
  for (auto& t : terms) {
    if (t.sites.empty()) throw InvalidArgument("term with empty support");
    const Dims local = support_dims(model.system_, t.sites);
    const std::vector<int> key = sorted_sites(t.sites);
    if (std::adjacent_find(key.begin(), key.end()) != key.end())
      throw InvalidArgument("term acts twice on the same site");
    if (t.op.rows() != total_dim(local) || t.op.cols() != total_dim(local))
      throw InvalidArgument("term dimension does not match its sites");
    if (!seen.insert(key).second) throw InvalidArgument("two terms on the same sites; pre-sum them");
    t.op = HermOp(t.op, local).matrix();
  }
  model.terms_ = std::move(terms);

  double worst = 0.0;
  const auto& ts = model.terms_;
  for (std::size_t a = 0; a < ts.size(); ++a)
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      std::vector<int> frame = sorted_sites(ts[a].sites);
      frame.insert(frame.end(), ts[b].sites.begin(), ts[b].sites.end());
      std::sort(frame.begin(), frame.end());
      frame.erase(std::unique(frame.begin(), frame.end()), frame.end());
      if (frame.size() == ts[a].sites.size() + ts[b].sites.size()) continue;  // disjoint
      const Matrix A = embed_in_frame(ts[a], frame, dims);
      const Matrix B = embed_in_frame(ts[b], frame, dims);
      const double scale = operator_norm(A) * operator_norm(B);
      if (scale == 0.0) continue;
      worst = std::max(worst, operator_norm(A * B - B * A) / scale);
    }
  model.commutator_certificate_ = worst;
  model.commuting_ = worst <= kCommuteTol;

  const int d = model.system_.dim();
  Matrix h = Matrix::Zero(d, d);
  for (const auto& t : model.terms_) h += embed_operator(t.op, t.sites, dims);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  model.energy_shift_ = es.eigenvalues()(0);
  return model;
}

LocalModel build_two_local_model(QuditSystem system, std::vector<LocalTerm> terms) {
  for (const auto& t : terms)
    if (t.sites.size() > 2) throw InvalidArgument("two-local model: term acts on more than two sites");
  return build_local_model(std::move(system), std::move(terms));
}

Matrix pauli(char symbol) {
  Matrix p(2, 2);
  switch (symbol) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw InvalidArgument(std::string("not a Pauli symbol: ") + symbol);
  }
  return p;
}

namespace {

struct ParsedPauli {
  double sign = 1.0;
  std::string body;
};

ParsedPauli parse_pauli(const std::string& g, int n) {
  ParsedPauli out;
  out.body = g;
  if (!g.empty() && (g[0] == '+' || g[0] == '-')) {
    out.sign = g[0] == '-' ? -1.0 : 1.0;
    out.body = g.substr(1);
  }
  if (static_cast<int>(out.body.size()) != n)
    throw InvalidArgument("Pauli string '" + g + "' does not have one symbol per qubit");
  for (char c : out.body) pauli(c);
  return out;
}

}  // namespace

LocalModel stabilizer_hamiltonian(int num_qubits, const std::vector<std::string>& generators) {
  std::vector<ParsedPauli> parsed;
  for (const auto& g : generators) parsed.push_back(parse_pauli(g, num_qubits));

  for (std::size_t a = 0; a < parsed.size(); ++a)
    for (std::size_t b = a + 1; b < parsed.size(); ++b) {
      int clashes = 0;
      for (int q = 0; q < num_qubits; ++q) {
        const char x = parsed[a].body[q], y = parsed[b].body[q];
        if (x != 'I' && y != 'I' && x != y) ++clashes;
      }
      if (clashes % 2 == 1)
        throw InvalidArgument("stabilizer generators " + generators[a] + " and " + generators[b] + " anticommute");
    }

  std::map<std::vector<int>, Matrix> by_support;
  for (const auto& p : parsed) {
    std::vector<int> sites;
    Matrix g = Matrix::Identity(1, 1);
    for (int q = 0; q < num_qubits; ++q)
      if (p.body[q] != 'I') {
        sites.push_back(q);
        g = kron(g, pauli(p.body[q]));
      }
    if (sites.empty()) throw InvalidArgument("identity is not a valid stabilizer generator");
    const Matrix term = 0.5 * (Matrix::Identity(g.rows(), g.cols()) - p.sign * g);
    auto [it, inserted] = by_support.try_emplace(sites, term);
    if (!inserted) it->second += term;
  }

  std::vector<LocalTerm> terms;
  for (auto& [sites, op] : by_support) terms.push_back({sites, op});
  return build_local_model(QuditSystem(Dims(num_qubits, 2)), std::move(terms));
}

LocalModel repetition_code_model(int n) {
  if (n < 2) throw InvalidArgument("repetition code needs at least two qubits");
  std::vector<std::string> gens;
  for (int i = 0; i + 1 < n; ++i) {
    std::string g(n, 'I');
    g[i] = g[i + 1] = 'Z';
    gens.push_back(g);
  }
  return stabilizer_hamiltonian(n, gens);
}

LocalModel four_two_two_model() { return stabilizer_hamiltonian(4, {"XXXX", "ZZZZ"}); }

LocalModel block_sites(const LocalModel& model, const std::vector<std::vector<int>>& grouping) {
  const int n = model.system().size();
  std::vector<int> group_of(n, -1);
  int expected = 0;
  Dims merged;
  for (int g = 0; g < static_cast<int>(grouping.size()); ++g) {
    if (grouping[g].empty()) throw InvalidArgument("block_sites: empty group");
    int d = 1;
    for (int s : grouping[g]) {
      if (s != expected) throw InvalidArgument("block_sites: groups must be consecutive and cover all sites in order");
      group_of[s] = g;
      d *= model.system().dims()[s];
      ++expected;
    }
    merged.push_back(d);
  }
  if (expected != n) throw InvalidArgument("block_sites: grouping does not cover every site");

  std::map<std::vector<int>, Matrix> by_support;
  for (const auto& t : model.terms()) {
    std::set<int> groups;
    for (int s : t.sites) groups.insert(group_of[s]);
    if (groups.size() > 2) throw InvalidArgument("block_sites: a term straddles three or more groups");
    std::vector<int> frame;
    for (int g : groups) frame.insert(frame.end(), grouping[g].begin(), grouping[g].end());
    const Matrix op = embed_in_frame(t, frame, model.system().dims());
    const std::vector<int> key(groups.begin(), groups.end());
    auto [it, inserted] = by_support.try_emplace(key, op);
    if (!inserted) it->second += op;
  }

  std::vector<LocalTerm> terms;
  for (auto& [sites, op] : by_support) terms.push_back({sites, op});
  return build_local_model(QuditSystem(merged, std::max(kDefaultDimensionCap, model.system().dim())),
                           std::move(terms));
}

LocalModel random_commuting_model(const QuditSystem& system, const std::vector<std::pair<int, int>>& pairs,
                                  std::uint64_t seed, CouplingOptions options) {
  Rng rng(seed);
  std::vector<Matrix> basis;
  for (int d : system.dims()) basis.push_back(random_unitary(d, rng));

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<LocalTerm> terms;
  for (auto [i, j] : pairs) {
    if (i == j) throw InvalidArgument("random_commuting_model: pair on a single site");
    const int dij = system.site_dim(i) * system.site_dim(j);
    RealVector couplings(dij);
    for (int k = 0; k < dij; ++k)
      couplings(k) = options.levels > 0 ? random_int(0, options.levels - 1, rng) : normal(rng);
    const Matrix u = kron(basis[i], basis[j]);
    terms.push_back({{i, j}, u * couplings.cast<Complex>().asDiagonal() * u.adjoint()});
  }
  return build_two_local_model(system, std::move(terms));
}

LocalModel random_subsystem_chain(const SubsystemChainOptions& o, std::uint64_t seed) {
  if (o.sites < 2 || o.virtual_dim < 1 || o.multiplicity < 1) throw InvalidArgument("random_subsystem_chain: bad shape");
  if (o.pair_rank < 1 || o.pair_rank > o.virtual_dim * o.virtual_dim)
    throw InvalidArgument("random_subsystem_chain: pair rank out of range");
  Rng rng(seed);

  // Virtual layout per site: [left (if any), right (if any), multiplicity (if > 1)].
  std::vector<Dims> layout(o.sites);
  for (int i = 0; i < o.sites; ++i) {
    if (i > 0) layout[i].push_back(o.virtual_dim);
    if (i + 1 < o.sites) layout[i].push_back(o.virtual_dim);
    if (o.multiplicity > 1) layout[i].push_back(o.multiplicity);
  }
  Dims dims;
  std::vector<Matrix> rot;
  for (const auto& l : layout) {
    int d = 1;
    for (int x : l) d *= x;
    if (d < 2) throw InvalidArgument("random_subsystem_chain: site dimension below 2");
    dims.push_back(d);
    rot.push_back(random_unitary(d, rng));
  }

  std::vector<LocalTerm> terms;
  const int e = o.virtual_dim;
  for (int i = 0; i + 1 < o.sites; ++i) {
    const Matrix pair = Matrix::Identity(e * e, e * e) - random_projector(e * e, o.pair_rank, rng);
    Dims frame = layout[i];
    frame.insert(frame.end(), layout[i + 1].begin(), layout[i + 1].end());
    const int right_of_i = i > 0 ? 1 : 0;
    const int left_of_next = static_cast<int>(layout[i].size());
    const std::vector<int> where{right_of_i, left_of_next};
    const Matrix op = embed_operator(pair, where, frame);
    const Matrix u = kron(rot[i], rot[i + 1]);
    terms.push_back({{i, i + 1}, u * op * u.adjoint()});
  }
  return build_two_local_model(QuditSystem(dims), std::move(terms));
}

HermOp embed(const HermOp& op, std::span<const int> support, const QuditSystem& system) {
  const Dims local = support_dims(system, support);
  if (op.dim() != total_dim(local)) throw InvalidArgument("embed: operator does not match support dims");
  return HermOp(embed_operator(op.matrix(), support, system.dims()), system.dims());
}

}  // namespace splitlab
