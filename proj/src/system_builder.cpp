#include "fano/system_builder.hpp"

#include <mutex>
#include <stdexcept>

namespace fano {

FormSystem::FormSystem(FanoType type, std::vector<SparsePoly> forms) : type_(std::move(type)), forms_(std::move(forms)) {
  if (forms_.size() != type_.s())
    throw std::invalid_argument("expected " + std::to_string(type_.s()) + " forms, got " + std::to_string(forms_.size()));
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    const SparsePoly& f = forms_[i];
    if (f.num_vars() != num_vars()) throw DimensionError("form " + std::to_string(i) + " has the wrong number of variables");
    if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != type_.degrees()[i]))
      throw std::invalid_argument("form " + std::to_string(i) + " is not homogeneous of degree " +
                                  std::to_string(type_.degrees()[i]));
  }
}

std::size_t coefficient_space_dim(const FanoType& t) {
  std::size_t out = 0;
  for (int d : t.degrees()) out += binomial(d + t.n(), t.n()).get_ui();
  return out;
}

ExactVector FormSystem::coefficient_vector() const {
  ExactVector out;
  out.reserve(coefficient_space_dim(type_));
  for (std::size_t i = 0; i < forms_.size(); ++i)
    for (const Monomial& m : monomials_of_degree(num_vars(), static_cast<unsigned>(type_.degrees()[i])))
      out.push_back(forms_[i].coefficient_of(m));
  return out;
}

FormSystem FormSystem::from_coefficients(const FanoType& type, const ExactVector& coeffs) {
  if (coeffs.size() != coefficient_space_dim(type)) throw DimensionError("coefficient vector has the wrong length");
  const auto nv = static_cast<std::size_t>(type.n() + 1);
  std::vector<SparsePoly> forms;
  std::size_t pos = 0;
  for (int d : type.degrees()) {
    SparsePoly f(nv);
    for (const Monomial& m : monomials_of_degree(nv, static_cast<unsigned>(d))) f.add_term(m, coeffs[pos++]);
    forms.push_back(std::move(f));
  }
  return FormSystem(type, std::move(forms));
}

FormSystem operator+(const FormSystem& a, const FormSystem& b) {
  if (a.type_ != b.type_) throw std::invalid_argument("adding form systems of different types");
  std::vector<SparsePoly> forms;
  for (std::size_t i = 0; i < a.forms_.size(); ++i) forms.push_back(a.forms_[i] + b.forms_[i]);
  return FormSystem(a.type_, std::move(forms));
}

FormSystem operator*(const FormSystem& a, const GaussianRational& c) {
  std::vector<SparsePoly> forms;
  for (const auto& f : a.forms_) forms.push_back(f * c);
  return FormSystem(a.type_, std::move(forms));
}

ExactMatrix plane_matrix(int r, int n, const ChartPoint& x) {
  if (r < 0 || n < r) throw std::invalid_argument("plane_matrix needs 0 <= r <= n");
  const auto cols = static_cast<std::size_t>(r + 1);
  const auto top = static_cast<std::size_t>(n - r);
  if (x.coords.size() != top * cols) throw DimensionError("chart point has the wrong length");
  ExactMatrix out(top + cols, cols);
  for (std::size_t i = 0; i < top; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = x.coords[i * cols + j];
  for (std::size_t j = 0; j < cols; ++j) out(top + j, j) = GaussianRational(1);
  return out;
}

std::vector<SparsePoly> restrict_form(const SparsePoly& f, int r) {
  if (!f.is_zero() && !f.is_homogeneous()) throw std::invalid_argument("restrict_form needs a homogeneous form");
  if (f.num_vars() < static_cast<std::size_t>(r + 1)) throw DimensionError("form has fewer variables than r + 1");
  const auto cols = static_cast<std::size_t>(r + 1);
  const std::size_t top = f.num_vars() - cols;
  const std::size_t m = top * cols;
  const std::size_t ring = m + cols;  // chart variables, then the plane parameters

  // x_i = sum_j P_ij t_j with P the symbolic plane matrix.
  std::vector<SparsePoly> images;
  images.reserve(f.num_vars());
  for (std::size_t i = 0; i < top; ++i) {
    SparsePoly img(ring);
    for (std::size_t j = 0; j < cols; ++j) {
      Monomial mono(ring);
      mono[i * cols + j] = 1;
      mono[m + j] = 1;
      img.add_term(mono, GaussianRational(1));
    }
    images.push_back(std::move(img));
  }
  for (std::size_t j = 0; j < cols; ++j) images.push_back(SparsePoly::variable(ring, m + j));

  const unsigned d = f.is_zero() ? 0u : static_cast<unsigned>(f.total_degree());
  const SparsePoly full = substitute_linear(f, images);

  const std::vector<Monomial> params = f.is_zero() ? std::vector<Monomial>{} : monomials_of_degree(cols, d);
  std::map<Monomial, SparsePoly, GrlexLess> by_param;
  for (const auto& [mono, c] : full.terms()) {
    Monomial p(cols), chart(m);
    for (std::size_t j = 0; j < cols; ++j) p[j] = mono[m + j];
    for (std::size_t k = 0; k < m; ++k) chart[k] = mono[k];
    auto [it, inserted] = by_param.try_emplace(p, SparsePoly(m));
    it->second.add_term(chart, c);
  }
  std::vector<SparsePoly> out;
  out.reserve(params.size());
  for (const Monomial& p : params) {
    auto it = by_param.find(p);
    out.push_back(it == by_param.end() ? SparsePoly(m) : it->second);
  }
  return out;
}

ExactVector restrict_form_at(const SparsePoly& f, const ExactMatrix& plane) {
  if (!f.is_zero() && !f.is_homogeneous()) throw std::invalid_argument("restrict_form_at needs a homogeneous form");
  if (plane.rows() != f.num_vars()) throw DimensionError("plane matrix rows do not match the form");
  const std::size_t cols = plane.cols();
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < plane.rows(); ++i) {
    SparsePoly img(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      Monomial mono(cols);
      mono[j] = 1;
      img.add_term(mono, plane(i, j));
    }
    images.push_back(std::move(img));
  }
  if (f.is_zero()) return {};
  const SparsePoly g = substitute_linear(f, images);
  ExactVector out;
  for (const Monomial& p : monomials_of_degree(cols, static_cast<unsigned>(f.total_degree())))
    out.push_back(g.coefficient_of(p));
  return out;
}

struct SquareSystem::HessianCache {
  explicit HessianCache(std::size_t n) : flags(n), entries(n) {}
  std::vector<std::once_flag> flags;
  std::vector<std::vector<std::vector<SparsePoly>>> entries;
};

SquareSystem::SquareSystem(std::vector<SparsePoly> polys) : polys_(std::move(polys)) {
  const std::size_t m = polys_.size();
  for (const auto& p : polys_)
    if (p.num_vars() != m)
      throw std::invalid_argument("system is not square: " + std::to_string(m) + " equations in " +
                                  std::to_string(p.num_vars()) + " variables");
  jacobian_.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) jacobian_[i].push_back(polys_[i].derivative(j));
  hessians_ = std::make_shared<HessianCache>(m);
}

SquareSystem::SquareSystem(std::vector<SparsePoly> polys, FormSystem provenance) : SquareSystem(std::move(polys)) {
  provenance_ = std::move(provenance);
}

std::vector<int> SquareSystem::equation_degrees() const {
  std::vector<int> out;
  for (const auto& p : polys_) out.push_back(std::max(p.total_degree(), 0));
  return out;
}

ExactVector SquareSystem::evaluate(const ExactVector& x) const {
  if (x.size() != num_vars()) throw DimensionError("point has the wrong length");
  ExactVector out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(p.evaluate(x));
  return out;
}

ExactMatrix SquareSystem::jacobian_at(const ExactVector& x) const {
  if (x.size() != num_vars()) throw DimensionError("point has the wrong length");
  const std::size_t m = num_vars();
  ExactMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!jacobian_[i][j].is_zero()) out(i, j) = jacobian_[i][j].evaluate(x);
  return out;
}

const std::vector<std::vector<SparsePoly>>& SquareSystem::hessian(std::size_t eq) const {
  std::call_once(hessians_->flags[eq], [&] {
    const std::size_t m = num_vars();
    auto& h = hessians_->entries[eq];
    h.assign(m, std::vector<SparsePoly>(m, SparsePoly(m)));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j; k < m; ++k) {
        h[j][k] = jacobian_[eq][j].derivative(k);
        h[k][j] = h[j][k];
      }
  });
  return hessians_->entries[eq];
}

ExactVector SquareSystem::hessian_quadratic(const ExactVector& x, const ExactVector& v) const {
  if (x.size() != num_vars() || v.size() != num_vars()) throw DimensionError("point or direction has the wrong length");
  const std::size_t m = num_vars();
  ExactVector out(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (polys_[i].total_degree() < 2) continue;
    const auto& h = hessian(i);
    GaussianRational acc;
    for (std::size_t j = 0; j < m; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (v[k].is_zero() || h[j][k].is_zero()) continue;
        acc += v[j] * v[k] * h[j][k].evaluate(x);
      }
    }
    out[i] = acc;
  }
  return out;
}

SquareSystem build_square_system(const FormSystem& forms) {
  const FanoType& t = forms.type();
  if (delta(t) != 0) throw std::invalid_argument("build_square_system needs delta = 0, got " + t.to_string());
  std::vector<SparsePoly> polys;
  polys.reserve(t.chart_dim());
  for (std::size_t i = 0; i < t.s(); ++i) {
    const SparsePoly& f = forms.forms()[i];
    auto coeffs = restrict_form(f, t.r());
    if (f.is_zero()) coeffs.assign(binomial(t.degrees()[i] + t.r(), t.r()).get_ui(), SparsePoly(t.chart_dim()));
    for (auto& c : coeffs) polys.push_back(std::move(c));
  }
  return SquareSystem(std::move(polys), forms);
}

ExactMatrix jacobian_at(const SquareSystem& g, const ChartPoint& x) { return g.jacobian_at(x.coords); }

ExactVector hessian_quadratic(const SquareSystem& g, const ChartPoint& x, const TangentVector& v) {
  return g.hessian_quadratic(x.coords, v.coords);
}

FormSystem apply_coordinate_change(const FormSystem& forms, const ExactMatrix& a) {
  const std::size_t nv = forms.num_vars();
  if (a.rows() != nv || a.cols() != nv) throw DimensionError("coordinate change has the wrong size");
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < nv; ++i) {
    SparsePoly img(nv);
    for (std::size_t j = 0; j < nv; ++j) {
      Monomial mono(nv);
      mono[j] = 1;
      img.add_term(mono, a(i, j));
    }
    images.push_back(std::move(img));
  }
  std::vector<SparsePoly> out;
  for (const auto& f : forms.forms()) out.push_back(substitute_linear(f, images));
  return FormSystem(forms.type(), std::move(out));
}

}  // namespace fano
