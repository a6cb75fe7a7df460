#include "locuslab/minor_basis.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "locuslab/locus_solver.hpp"
#include "locuslab/multiprecision.hpp"
#include "locuslab/parallel.hpp"

namespace locuslab {

namespace {

struct GradedGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    return da != db ? da > db : a > b;
  }
};

// Sparse polynomial over MpComplex, just enough for Bareiss.
using MpPoly = std::map<Exponent, MpComplex, GradedGreater>;

MpPoly mp_mul(const MpPoly& a, const MpPoly& b) {
  MpPoly out;
  Exponent e;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      Field<MpComplex>::add_mul(out.try_emplace(e).first->second, ca, cb);
    }
  return out;
}

MpPoly mp_sub(MpPoly a, const MpPoly& b) {
  for (const auto& [e, c] : b) {
    auto [pos, ins] = a.try_emplace(e);
    pos->second -= c;
    if (pos->second == MpComplex{}) a.erase(pos);
  }
  for (auto it = a.begin(); it != a.end();) it = it->second == MpComplex{} ? a.erase(it) : std::next(it);
  return a;
}

MpPoly mp_divide(MpPoly rem, const MpPoly& div) {
  const auto& [lead_e, lead_c] = *div.begin();
  MpPoly q;
  Exponent shift(lead_e.size()), e(lead_e.size());
  while (!rem.empty()) {
    auto top = rem.begin();
    bool divisible = true;
    for (std::size_t i = 0; i < shift.size(); ++i) {
      shift[i] = top->first[i] - lead_e[i];
      if (shift[i] < 0) divisible = false;
    }
    if (!divisible) {
      rem.erase(top);
      continue;
    }
    const MpComplex f = top->second / lead_c;
    q.emplace(shift, f);
    for (auto it = std::next(div.begin()); it != div.end(); ++it) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = it->first[i] + shift[i];
      auto [pos, ins] = rem.try_emplace(e);
      Field<MpComplex>::sub_mul(pos->second, f, it->second);
      if (pos->second == MpComplex{}) rem.erase(pos);
    }
    rem.erase(rem.begin());
  }
  return q;
}

MultiPoly bareiss_mp(const LeadingBlock& block, int n, const IndexSet& index, unsigned digits) {
  const PrecisionScope scope(digits);
  const int m = block.rows;
  const int vars = n + 1;
  std::vector<std::vector<MpPoly>> a(static_cast<std::size_t>(m), std::vector<MpPoly>(static_cast<std::size_t>(m)));
  for (int r = 0; r < m; ++r)
    for (int q = 0; q < m; ++q) {
      const int c = index.indices()[q] - 1;
      auto& e = a[r][q];
      if (block(r, c) != Complex{}) e.emplace(Exponent(static_cast<std::size_t>(vars), 0), MpComplex(block(r, c)));
      const int s = c - r;
      if (s >= 0 && s <= n) {
        Exponent x(static_cast<std::size_t>(vars), 0);
        x[static_cast<std::size_t>(s)] = 1;
        e.emplace(x, MpComplex(-1.0));
      }
    }
  MpPoly prev{{Exponent(static_cast<std::size_t>(vars), 0), MpComplex(1.0)}};
  bool negate = false;
  for (int k = 0; k + 1 < m; ++k) {
    if (a[k][k].empty()) {
      int p = k + 1;
      while (p < m && a[p][k].empty()) ++p;
      if (p == m) throw std::logic_error("build_minor: determinant vanishes identically");
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j)
        a[i][j] = mp_divide(mp_sub(mp_mul(a[k][k], a[i][j]), mp_mul(a[i][k], a[k][j])), prev);
    prev = a[k][k];
  }
  MultiPoly det(vars);
  for (const auto& [e, c] : a[m - 1][m - 1]) {
    const Complex z = Field<MpComplex>::to_cd(c);
    det.add_term(e, negate ? -z : z);
  }
  return det;
}

}  // namespace

IndexSet::IndexSet(std::vector<int> indices, int n) : indices_(std::move(indices)) {
  const int m = size();
  if (m < 1) throw std::invalid_argument("IndexSet: empty");
  if (n < 0) throw std::invalid_argument("IndexSet: n < 0");
  for (int j = 0; j < m; ++j) {
    if (indices_[j] < 1 || indices_[j] > m + n) throw std::invalid_argument("IndexSet: column out of range");
    if (j > 0 && indices_[j] <= indices_[j - 1]) throw std::invalid_argument("IndexSet: not strictly increasing");
  }
}

Exponent IndexSet::leading_monomial(int n) const {
  Exponent e(static_cast<std::size_t>(n + 1), 0);
  for (int j = 0; j < size(); ++j) ++e[static_cast<std::size_t>(indices_[j] - (j + 1))];
  return e;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int j = 0; j < size(); ++j) os << (j ? "," : "") << indices_[j];
  os << ')';
  return os.str();
}

std::vector<IndexSet> all_index_sets(int m, int n) {
  if (m < 1 || n < 0) throw std::invalid_argument("all_index_sets: need m >= 1, n >= 0");
  std::vector<IndexSet> out;
  out.reserve(binomial(m + n, m));
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) idx[j] = j + 1;
  while (true) {
    out.emplace_back(idx, n);
    int j = m - 1;
    while (j >= 0 && idx[j] == n + j + 1) --j;
    if (j < 0) break;
    ++idx[j];
    for (int q = j + 1; q < m; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

LeadingBlock leading_block(const BandSymbol& sym, int m) {
  if (m < 1) throw std::invalid_argument("leading_block: m < 1");
  LeadingBlock b{m, m + sym.n(), {}};
  b.data.resize(static_cast<std::size_t>(b.rows) * b.cols);
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) b.data[static_cast<std::size_t>(r) * b.cols + c] = sym.c(c - r);
  return b;
}

MultiPoly build_minor(const LeadingBlock& block, int n, const IndexSet& index, unsigned digits) {
  const int m = block.rows;
  if (n < 0 || block.cols != m + n || block.data.size() != static_cast<std::size_t>(m) * block.cols)
    throw std::invalid_argument("build_minor: block must be m x (m+n)");
  if (index.size() != m) throw std::invalid_argument("build_minor: |I| != m");
  if (index.indices().back() > m + n) throw std::invalid_argument("build_minor: column out of range");
  if (digits > 0) {
    MultiPoly det = bareiss_mp(block, n, index, digits);
    if (det.degree() != m) throw std::logic_error("build_minor: degree differs from m");
    return det;
  }
  const int vars = n + 1;

  std::vector<std::vector<MultiPoly>> a(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    for (int q = 0; q < m; ++q) {
      const int c = index.indices()[q] - 1;
      MultiPoly e = MultiPoly::constant(vars, block(r, c));
      const int s = c - r;
      if (s >= 0 && s <= n) e -= MultiPoly::variable(vars, s);
      a[r].push_back(std::move(e));
    }
  }

  MultiPoly prev = MultiPoly::constant(vars, {1.0, 0.0});
  bool negate = false;
  for (int k = 0; k + 1 < m; ++k) {
    if (a[k][k].is_zero()) {
      int p = k + 1;
      while (p < m && a[p][k].is_zero()) ++p;
      if (p == m) throw std::logic_error("build_minor: determinant vanishes identically");
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) {
        MultiPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = exact_divide(num, prev);
      }
    }
    prev = a[k][k];
  }
  MultiPoly det = std::move(a[m - 1][m - 1]);
  if (negate) det *= Complex{-1.0, 0.0};
  if (det.degree() != m) throw std::logic_error("build_minor: degree differs from m");
  return det;
}

MultiPoly build_minor(const BandSymbol& sym, int m, const IndexSet& index, unsigned digits) {
  return build_minor(leading_block(sym, m), sym.n(), index, digits);
}

const MultiPoly& MinorBasis::at(const IndexSet& index) const {
  const auto it = std::lower_bound(sets.begin(), sets.end(), index);
  if (it == sets.end() || *it != index) throw std::out_of_range("MinorBasis: unknown index set");
  return minors[static_cast<std::size_t>(it - sets.begin())];
}

MinorBasis build_basis(const LeadingBlock& block, int n) {
  const int m = block.rows;
  if (m < 1) throw std::invalid_argument("build_basis: m < 1");
  if (m + n > kSymbolicBudget) throw std::length_error("build_basis: m + n exceeds the symbolic budget");
  MinorBasis basis{m, n, all_index_sets(m, n), {}};
  basis.minors.resize(basis.sets.size());
  parallel_for(basis.sets.size(), [&](std::size_t i) { basis.minors[i] = build_minor(block, n, basis.sets[i]); });
  return basis;
}

MinorBasis build_basis(const BandSymbol& sym, int m) {
  if (m < 1) throw std::invalid_argument("build_basis: m < 1");
  return build_basis(leading_block(sym, m), sym.n());
}

TriangularityReport triangularity_report(const MinorBasis& basis) {
  TriangularityReport rep;
  rep.rows = basis.sets;
  std::map<Exponent, std::size_t> column_of;
  for (const auto& s : basis.sets) {
    column_of.emplace(s.leading_monomial(basis.n), rep.columns.size());
    rep.columns.push_back(s.leading_monomial(basis.n));
  }
  const std::size_t size = rep.rows.size();
  rep.matrix.assign(size * size, Complex{});
  rep.expected_diagonal = Complex{basis.m % 2 == 0 ? 1.0 : -1.0, 0.0};
  for (std::size_t r = 0; r < size; ++r) {
    const MultiPoly& p = basis.minors[r];
    for (const auto& [e, c] : p.terms()) {
      int deg = 0;
      for (int v : e) deg += v;
      if (deg != basis.m) continue;
      const auto col = column_of.find(e);
      if (col == column_of.end()) {
        ++rep.stray_terms;
        continue;
      }
      rep.matrix[r * size + col->second] = c;
    }
  }
  rep.lower_triangular = true;
  rep.diagonal_ok = true;
  for (std::size_t r = 0; r < size; ++r) {
    if (rep.at(r, r) != rep.expected_diagonal) rep.diagonal_ok = false;
    for (std::size_t c = r + 1; c < size; ++c)
      if (rep.at(r, c) != Complex{}) rep.lower_triangular = false;
  }
  rep.pass = rep.lower_triangular && rep.diagonal_ok && rep.stray_terms == 0;
  return rep;
}

EigenLocus eigenlocus_bruteforce(const MinorBasis& basis, const std::vector<LocusPoint>& candidates,
                                 const Tolerances& tol) {
  EigenLocus out;
  out.m = basis.m;
  out.n = basis.n;
  out.kind = LocusKind::full;
  std::vector<LocusPoint> kept;
  for (const auto& cand : candidates) {
    if (cand.coords.size() != static_cast<std::size_t>(basis.n + 1))
      throw std::invalid_argument("eigenlocus_bruteforce: point dimension mismatch");
    bool vanishes = true;
    for (const auto& p : basis.minors) {
      const double scale = p.evaluation_scale(cand.coords);
      if (std::abs(p.evaluate(cand.coords)) > tol.eval * scale) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) kept.push_back(cand);
  }
  out.points = cluster_points(std::move(kept), tol.cluster);
  const auto expected = binomial(basis.m + basis.n, basis.n + 1);
  if (static_cast<std::uint64_t>(out.total_multiplicity()) != expected)
    out.defects.push_back("total multiplicity " + std::to_string(out.total_multiplicity()) + " differs from " +
                          std::to_string(expected));
  return out;
}

EigenLocus eigenlocus_bruteforce(const BandSymbol& sym, int m, const std::vector<LocusPoint>& candidates,
                                 const Tolerances& tol) {
  return eigenlocus_bruteforce(build_basis(sym, m), candidates, tol);
}

}  // namespace locuslab
