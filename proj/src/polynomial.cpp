#include "fano/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace fano {

unsigned Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.num_vars() != num_vars()) throw DimensionError("monomial arity mismatch");
  Monomial out(*this);
  for (std::size_t k = 0; k < exps_.size(); ++k) out.exps_[k] += o.exps_[k];
  return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  // x0 > x1 > ...: the monomial with the larger exponent at the first
  // difference is larger.
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, unsigned degree) {
  std::vector<Monomial> out;
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  Monomial m(num_vars);
  // Recursive fill from x0 downward gives descending grlex order directly.
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var + 1 == num_vars) {
      m[var] = remaining;
      out.push_back(m);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      m[var] = e;
      self(self, var + 1, remaining - e);
    }
    m[var] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

SparsePoly SparsePoly::constant(std::size_t num_vars, const GaussianRational& c) {
  SparsePoly p(num_vars);
  p.add_term(Monomial(num_vars), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw DimensionError("variable index out of range");
  Monomial m(num_vars);
  m[index] = 1;
  return term(m, GaussianRational(1));
}

SparsePoly SparsePoly::term(const Monomial& m, const GaussianRational& c) {
  SparsePoly p(m.num_vars());
  p.add_term(m, c);
  return p;
}

int SparsePoly::total_degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last key has the largest degree.
  return static_cast<int>(terms_.rbegin()->first.degree());
}

bool SparsePoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

GaussianRational SparsePoly::coefficient_of(const Monomial& m) const {
  if (m.num_vars() != num_vars_) throw DimensionError("monomial arity does not match polynomial");
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void SparsePoly::add_term(const Monomial& m, const GaussianRational& c) {
  if (m.num_vars() != num_vars_) throw DimensionError("monomial arity does not match polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (o.num_vars_ != num_vars_) throw DimensionError("polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (o.num_vars_ != num_vars_) throw DimensionError("polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.num_vars_ != b.num_vars_) throw DimensionError("polynomial arity mismatch");
  SparsePoly out(a.num_vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(num_vars_, GaussianRational(1));
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  if (var >= num_vars_) throw DimensionError("derivative variable out of range");
  SparsePoly out(num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    out.add_term(dm, c * GaussianRational(static_cast<long>(m[var])));
  }
  return out;
}

GaussianRational SparsePoly::evaluate(std::span<const GaussianRational> point) const {
  if (point.size() != num_vars_) throw DimensionError("evaluation point has wrong length");
  // powers[k][e] = point[k]^e, built on demand.
  std::vector<std::vector<GaussianRational>> powers(num_vars_);
  for (std::size_t k = 0; k < num_vars_; ++k) powers[k].push_back(GaussianRational(1));
  GaussianRational sum;
  for (const auto& [m, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      unsigned e = m[k];
      if (e == 0) continue;
      auto& pk = powers[k];
      while (pk.size() <= e) pk.push_back(pk.back() * point[k]);
      t *= pk[e];
    }
    sum += t;
  }
  return sum;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += '(';
    out += it->second.to_string();
    out += ')';
    const Monomial& m = it->first;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      if (m[k] == 0) continue;
      out += "*x";
      out += std::to_string(k);
      if (m[k] > 1) {
        out += '^';
        out += std::to_string(m[k]);
      }
    }
  }
  return out;
}

SparsePoly SparsePoly::parse(std::string_view text, std::size_t num_vars) {
  SparsePoly p(num_vars);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string("polynomial parse error: ") + why + " at offset " +
                                std::to_string(pos));
  };
  auto read_uint = [&]() -> unsigned long {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::stoul(std::string(text.substr(start, pos - start)));
  };

  skip_ws();
  if (text.substr(pos) == "0") return p;
  while (true) {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') fail("expected '('");
    std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) fail("unterminated coefficient");
    GaussianRational c = GaussianRational::parse(text.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    Monomial m(num_vars);
    while (pos < text.size() && text[pos] == '*') {
      ++pos;
      if (pos >= text.size() || text[pos] != 'x') fail("expected variable");
      ++pos;
      unsigned long var = read_uint();
      if (var >= num_vars) throw DimensionError("variable index out of range in polynomial text");
      unsigned long e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = read_uint();
      }
      m[var] += static_cast<unsigned>(e);
    }
    p.add_term(m, c);
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '+') fail("expected '+' between terms");
    ++pos;
  }
  return p;
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) { return a * b; }

GaussianRational coefficient_of(const SparsePoly& p, const Monomial& m) { return p.coefficient_of(m); }

SparsePoly substitute_linear(const SparsePoly& p, std::span<const SparsePoly> images) {
  if (images.size() != p.num_vars()) throw DimensionError("one image per variable required");
  std::size_t target_vars = images.empty() ? 0 : images.front().num_vars();
  for (const auto& img : images) {
    if (img.num_vars() != target_vars) throw DimensionError("images must share a ring");
  }
  // Constants keep their value in the target ring.
  if (images.empty()) return p;

  std::vector<std::vector<SparsePoly>> powers(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    powers[k].push_back(SparsePoly::constant(target_vars, GaussianRational(1)));
  }
  SparsePoly out(target_vars);
  for (const auto& [m, c] : p.terms()) {
    SparsePoly t = SparsePoly::constant(target_vars, c);
    for (std::size_t k = 0; k < images.size(); ++k) {
      unsigned e = m[k];
      if (e == 0) continue;
      auto& pk = powers[k];
      while (pk.size() <= e) pk.push_back(pk.back() * images[k]);
      t = t * pk[e];
    }
    out += t;
  }
  return out;
}

}  // namespace fano
