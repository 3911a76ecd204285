#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fano/polynomial.hpp"

namespace fano {

/// A list of polynomials flattened for repeated evaluation of values and
/// first partials over a numeric type T (complex<double> or
/// ComplexInterval). T needs +, *, and construction from a double.
template <class T>
class CompiledPolys {
 public:
  CompiledPolys() = default;
  CompiledPolys(const std::vector<SparsePoly>& polys, std::size_t num_vars,
                const std::function<T(const GaussianRational&)>& convert)
      : num_vars_(num_vars), max_exp_(num_vars, 0) {
    for (const auto& p : polys) {
      if (p.num_vars() != num_vars) throw DimensionError("compiled polynomial has the wrong arity");
      Equation eq;
      for (const auto& [m, c] : p.terms()) {
        Term term;
        term.coeff = convert(c);
        for (std::size_t v = 0; v < num_vars; ++v) {
          if (m[v] == 0) continue;
          term.factors.push_back({static_cast<std::uint32_t>(v), m[v]});
          max_exp_[v] = std::max(max_exp_[v], m[v]);
        }
        eq.terms.push_back(std::move(term));
      }
      equations_.push_back(std::move(eq));
    }
  }

  std::size_t num_polys() const { return equations_.size(); }
  std::size_t num_vars() const { return num_vars_; }

  /// values[i] = p_i(x); jac (if non-null) row-major with jac[i*n + j] =
  /// d p_i / d x_j.
  void evaluate(const T* x, T* values, T* jac) const {
    const std::size_t n = num_vars_;
    // powers[v][e] = x_v^e
    thread_local std::vector<std::vector<T>> powers;
    powers.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto& pv = powers[v];
      pv.assign(max_exp_[v] + 1, T(1.0));
      for (unsigned e = 1; e <= max_exp_[v]; ++e) pv[e] = pv[e - 1] * x[v];
    }
    thread_local std::vector<T> prefix, suffix;
    for (std::size_t i = 0; i < equations_.size(); ++i) {
      T value(0.0);
      T* row = jac ? jac + i * n : nullptr;
      if (row)
        for (std::size_t j = 0; j < n; ++j) row[j] = T(0.0);
      for (const Term& term : equations_[i].terms) {
        const std::size_t k = term.factors.size();
        prefix.assign(k + 1, T(1.0));
        for (std::size_t a = 0; a < k; ++a) prefix[a + 1] = prefix[a] * powers[term.factors[a].var][term.factors[a].exp];
        value = value + term.coeff * prefix[k];
        if (!row || k == 0) continue;
        suffix.assign(k + 1, T(1.0));
        for (std::size_t a = k; a-- > 0;) suffix[a] = suffix[a + 1] * powers[term.factors[a].var][term.factors[a].exp];
        for (std::size_t a = 0; a < k; ++a) {
          const auto& f = term.factors[a];
          T d = term.coeff * T(static_cast<double>(f.exp)) * powers[f.var][f.exp - 1];
          row[f.var] = row[f.var] + d * prefix[a] * suffix[a + 1];
        }
      }
      values[i] = value;
    }
  }

 private:
  struct Factor {
    std::uint32_t var;
    unsigned exp;
  };
  struct Term {
    T coeff;
    std::vector<Factor> factors;
  };
  struct Equation {
    std::vector<Term> terms;
  };

  std::size_t num_vars_ = 0;
  std::vector<unsigned> max_exp_;
  std::vector<Equation> equations_;
};

}  // namespace fano
