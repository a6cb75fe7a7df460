#include "locuslab/polycore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "locuslab/kernels.hpp"

namespace locuslab {

namespace {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct GradedGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

}  // namespace

MultiPoly MultiPoly::constant(int num_vars, Complex c) {
  MultiPoly p(num_vars);
  p.add_term(Exponent(static_cast<std::size_t>(num_vars), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw std::out_of_range("variable index out of range");
  Exponent e(static_cast<std::size_t>(num_vars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  return monomial(e);
}

MultiPoly MultiPoly::monomial(const Exponent& e, Complex c) {
  MultiPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

Complex MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex MultiPoly::evaluate(std::span<const Complex> x) const {
  if (static_cast<int>(x.size()) != num_vars_) throw std::invalid_argument("evaluate: wrong point dimension");
  Complex acc{};
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) m *= x[i];
    acc += m;
  }
  return acc;
}

double MultiPoly::evaluation_scale(std::span<const Complex> x) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = std::abs(c);
    for (std::size_t i = 0; i < e.size(); ++i) m *= std::pow(std::abs(x[i]), e[i]);
    acc += m;
  }
  return acc;
}

void MultiPoly::add_term(const Exponent& e, Complex c) {
  if (static_cast<int>(e.size()) != num_vars_) throw std::invalid_argument("exponent length does not match num_vars");
  auto [it, inserted] = terms_.try_emplace(e, Complex{});
  it->second += c;
  if (std::abs(it->second) <= prune_ || it->second == Complex{}) terms_.erase(it);
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (num_vars_ != o.num_vars_) throw std::invalid_argument("variable-count mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) <= prune_ || it->second == Complex{}) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.num_vars_, std::max(a.prune_, b.prune_));
  Exponent e(static_cast<std::size_t>(a.num_vars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

std::string MultiPoly::to_string(int precision) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(precision);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*x" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("poly_arith: variable-count mismatch");
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::mul:
      return a * b;
    case PolyOp::scale: {
      if (b.degree() > 0) throw std::invalid_argument("poly_arith: scale needs a constant factor");
      return a * b.coefficient(Exponent(static_cast<std::size_t>(b.num_vars()), 0));
    }
  }
  throw std::invalid_argument("poly_arith: unknown op");
}

MultiPoly leading_homogeneous_part(const MultiPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("leading_homogeneous_part of the zero polynomial");
  const int d = p.degree();
  MultiPoly r(p.num_vars());
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) == d) r.add_term(e, c);
  return r;
}

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide by zero polynomial");
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("exact_divide: variable-count mismatch");
  std::map<Exponent, Complex, GradedGreater> rem(a.terms().begin(), a.terms().end());
  std::map<Exponent, Complex, GradedGreater> div(b.terms().begin(), b.terms().end());
  const auto& [lead_e, lead_c] = *div.begin();
  MultiPoly q(a.num_vars());
  Exponent shift(static_cast<std::size_t>(a.num_vars()));
  while (!rem.empty()) {
    auto top = rem.begin();
    bool divisible = true;
    for (std::size_t i = 0; i < shift.size(); ++i) {
      shift[i] = top->first[i] - lead_e[i];
      if (shift[i] < 0) divisible = false;
    }
    if (!divisible) {
      rem.erase(top);  // non-zero only through rounding
      continue;
    }
    const Complex f = top->second / lead_c;
    q.add_term(shift, f);
    Exponent e(shift.size());
    for (auto it = std::next(div.begin()); it != div.end(); ++it) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = it->first[i] + shift[i];
      auto [pos, ins] = rem.try_emplace(e, Complex{});
      pos->second -= f * it->second;
      if (pos->second == Complex{}) rem.erase(pos);
    }
    rem.erase(rem.begin());
  }
  return q;
}

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex UniPoly::operator()(Complex t) const { return kernels::horner(coeffs_, t); }

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly{};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return UniPoly(std::move(d));
}

std::vector<Complex> merge_multiple_roots(const UniPoly& p, std::vector<Complex> roots, const Tolerances& tol) {
  const std::size_t count = roots.size();
  std::vector<int> group(count, -1);
  int groups = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (group[i] >= 0) continue;
    group[i] = groups;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < count; ++b)
        if (group[b] < 0 && std::abs(roots[a] - roots[b]) <= tol.multiple_link * (1.0 + std::abs(roots[a]))) {
          group[b] = groups;
          stack.push_back(b);
        }
    }
    ++groups;
  }
  for (int g = 0; g < groups; ++g) {
    Complex centre{};
    int size = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (group[i] == g) {
        centre += roots[i];
        ++size;
      }
    if (size < 2) continue;
    centre /= static_cast<double>(size);
    // a k-fold root of p is a simple root of p^(k-1)
    UniPoly inner = p;
    for (int j = 0; j + 1 < size; ++j) inner = inner.derivative();
    const UniPoly slope = inner.derivative();
    for (int it = 0; it < 8; ++it) {
      const Complex s = slope(centre);
      if (s == Complex{}) break;
      centre -= inner(centre) / s;
    }
    UniPoly d = p;
    bool vanishes = true;
    for (int j = 0; j < size && vanishes; ++j) {
      double scale = 0.0;
      for (std::size_t i = 0; i < d.coeffs().size(); ++i)
        scale += std::abs(d.coeffs()[i]) * std::pow(std::abs(centre), static_cast<double>(i));
      vanishes = std::abs(d(centre)) <= tol.multiple_root * scale;
      d = d.derivative();
    }
    if (!vanishes) continue;
    for (std::size_t i = 0; i < count; ++i)
      if (group[i] == g) roots[i] = centre;
  }
  return roots;
}

std::vector<RootCluster> cluster_values(std::span<const Complex> values, double tol) {
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  const double thr = tol * (1.0 + scale);
  std::vector<RootCluster> out;
  std::vector<Complex> sums;
  for (const auto& v : values) {
    bool placed = false;
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (std::abs(out[c].center - v) <= thr) {
        sums[c] += v;
        ++out[c].multiplicity;
        out[c].center = sums[c] / static_cast<double>(out[c].multiplicity);
        placed = true;
        break;
      }
    }
    if (!placed) {
      out.push_back({v, 1});
      sums.push_back(v);
    }
  }
  return out;
}

RootResult roots_univariate(const UniPoly& p, const Tolerances& tol) {
  if (p.degree() < 1) throw std::invalid_argument("roots_univariate: degree must be at least 1");
  auto res = kernels::aberth(p.coeffs(), tol.root_max_iter, tol.seed);
  RootResult out;
  out.roots = std::move(res.roots);
  out.backward_error = std::move(res.backward_error);
  out.converged = res.converged;
  out.iterations = res.iterations;
  // Multiple roots split by about eps^(1/mult); cluster with the configured knob.
  out.clusters = cluster_values(out.roots, tol.cluster);
  return out;
}

Complex elementary_symmetric(std::span<const Complex> vals, int j) {
  if (j < 0 || j > static_cast<int>(vals.size())) throw std::out_of_range("elementary_symmetric: index out of range");
  std::vector<Complex> e(static_cast<std::size_t>(j) + 1, Complex{});
  e[0] = 1.0;
  for (const auto& v : vals)
    for (int i = j; i >= 1; --i) e[static_cast<std::size_t>(i)] += v * e[static_cast<std::size_t>(i - 1)];
  return e[static_cast<std::size_t>(j)];
}

Complex resultant_univariate(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  const int dp = p.degree();
  const int dq = q.degree();
  if (dp == 0) return std::pow(p.leading(), dq);
  if (dq == 0) return std::pow(q.leading(), dp);
  const int n = dp + dq;
  std::vector<Complex> s(static_cast<std::size_t>(n) * n, Complex{});
  // rows 0..dq-1: shifted p (descending powers); rows dq..n-1: shifted q
  for (int r = 0; r < dq; ++r)
    for (int i = 0; i <= dp; ++i) s[static_cast<std::size_t>(r) * n + r + i] = p.coeffs()[static_cast<std::size_t>(dp - i)];
  for (int r = 0; r < dp; ++r)
    for (int i = 0; i <= dq; ++i) s[static_cast<std::size_t>(dq + r) * n + r + i] = q.coeffs()[static_cast<std::size_t>(dq - i)];
  return kernels::dense_det(std::move(s), n);
}

Complex discriminant(const UniPoly& p) {
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  if (d == 1) return 1.0;
  const double sign = ((d * (d - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * resultant_univariate(p, p.derivative()) / p.leading();
}

}  // namespace locuslab
