#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "locuslab/config.hpp"
#include "locuslab/numeric.hpp"

namespace locuslab {

using Exponent = std::vector<int>;

/// Lexicographic order with x_0 > x_1 > ... > x_n; the comparator sorts the
/// larger monomial first so that begin() is the lex-leading term.
struct LexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

/// Sparse polynomial in x_0..x_{num_vars-1} with complex coefficients.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Complex, LexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(int num_vars, double prune = 0.0) : num_vars_(num_vars), prune_(prune) {}

  static MultiPoly constant(int num_vars, Complex c);
  /// The polynomial x_index.
  static MultiPoly variable(int num_vars, int index);
  static MultiPoly monomial(const Exponent& e, Complex c = {1.0, 0.0});

  int num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Complex coefficient(const Exponent& e) const;
  Complex evaluate(std::span<const Complex> x) const;
  /// Sum over terms of |coef| * |monomial(x)|; the natural size of p(x).
  double evaluation_scale(std::span<const Complex> x) const;

  /// Adds c to the coefficient of e, pruning the result.
  void add_term(const Exponent& e, Complex c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(Complex s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, Complex s) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  std::string to_string(int precision = 6) const;

 private:
  void check_compatible(const MultiPoly& o) const;

  int num_vars_ = 0;
  double prune_ = 0.0;
  Terms terms_;
};

enum class PolyOp { add, mul, scale };

/// Exact sparse arithmetic. For `scale`, b must be a constant polynomial.
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

/// Sum of the terms of total degree deg(p).
MultiPoly leading_homogeneous_part(const MultiPoly& p);

/// Quotient of an exact division a / b. Terms are processed in graded order
/// (total degree first), so the top-degree part of the quotient depends only
/// on the top-degree parts of a and b. Any floating-point remainder is dropped.
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);

/// Dense univariate polynomial, ascending coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  Complex operator()(Complex t) const;
  UniPoly derivative() const;

 private:
  std::vector<Complex> coeffs_;
};

struct RootCluster {
  Complex center;
  int multiplicity = 0;
};

struct RootResult {
  std::vector<Complex> roots;          ///< deg(p) values, with repetition
  std::vector<double> backward_error;  ///< per root
  std::vector<RootCluster> clusters;
  bool converged = false;
  int iterations = 0;
};

/// All roots of p by Aberth-Ehrlich iteration. Non-convergence is reported
/// through `converged` together with the per-root residuals.
RootResult roots_univariate(const UniPoly& p, const Tolerances& tol = {});

/// Replaces each group of roots within tol.multiple_link * (1 + |r|) of each
/// other by its centroid when p and its first (size - 1) derivatives vanish
/// there to tol.multiple_root relative to their term-wise scale. The centroid
/// of a perturbed k-fold root is well conditioned; its members are not.
std::vector<Complex> merge_multiple_roots(const UniPoly& p, std::vector<Complex> roots, const Tolerances& tol = {});

/// Groups values closer than tol * (1 + max|v|); deterministic in input order.
std::vector<RootCluster> cluster_values(std::span<const Complex> values, double tol);

/// e_j(vals) by the triangle recurrence e_j <- e_j + v * e_{j-1}.
Complex elementary_symmetric(std::span<const Complex> vals, int j);

/// Sylvester resultant. A degree-0 argument c gives c^{deg of the other};
/// two constants give 1.
Complex resultant_univariate(const UniPoly& p, const UniPoly& q);

/// disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lc(p).
Complex discriminant(const UniPoly& p);

}  // namespace locuslab
