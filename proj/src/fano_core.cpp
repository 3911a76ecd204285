#include "fano/fano_core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fano {

FanoType::FanoType(int r, int n, std::vector<int> degrees) : r_(r), n_(n), degrees_(std::move(degrees)) {
  if (r_ < 1) throw std::invalid_argument("plane dimension r must be >= 1");
  if (degrees_.empty()) throw std::invalid_argument("at least one form is required");
  for (int d : degrees_)
    if (d < 2) throw std::invalid_argument("form degrees must be >= 2");
  std::sort(degrees_.begin(), degrees_.end());
  if (2 * r_ > n_ - static_cast<int>(degrees_.size()))
    throw std::invalid_argument("type " + to_string() + " violates 2r <= n - s");
}

std::string FanoType::to_string() const {
  std::ostringstream os;
  os << '(' << r_ << ',' << n_ << ",(";
  for (std::size_t k = 0; k < degrees_.size(); ++k) os << (k ? "," : "") << degrees_[k];
  os << "))";
  return os.str();
}

FanoType FanoType::parse(std::string_view text) {
  std::vector<int> nums;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == ',' || c == ':' || c == ' ' || c == '(' || c == ')') {
      ++pos;
      continue;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) throw std::invalid_argument("cannot parse type '" + std::string(text) + "'");
    nums.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  if (nums.size() < 3) throw std::invalid_argument("type needs r, n and at least one degree: '" + std::string(text) + "'");
  return FanoType(nums[0], nums[1], std::vector<int>(nums.begin() + 2, nums.end()));
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

long delta(const FanoType& t) {
  Integer sum = 0;
  for (int d : t.degrees()) sum += binomial(d + t.r(), t.r());
  Integer dim = static_cast<long>((t.r() + 1) * (t.n() - t.r()));
  return Integer(dim - sum).get_si();
}

SparsePoly q_poly(int r, int d) {
  if (r < 0 || d < 1) throw std::invalid_argument("q_poly needs r >= 0 and d >= 1");
  const auto nv = static_cast<std::size_t>(r + 1);
  SparsePoly out = SparsePoly::constant(nv, GaussianRational(1));
  for (const Monomial& a : monomials_of_degree(nv, static_cast<unsigned>(d))) {
    SparsePoly form(nv);
    for (std::size_t k = 0; k < nv; ++k) {
      if (a[k] == 0) continue;
      Monomial xk(nv);
      xk[k] = 1;
      form.add_term(xk, GaussianRational(static_cast<long>(a[k])));
    }
    out = out * form;
  }
  return out;
}

SparsePoly vandermonde(int r) {
  if (r < 0) throw std::invalid_argument("vandermonde needs r >= 0");
  const auto nv = static_cast<std::size_t>(r + 1);
  SparsePoly out = SparsePoly::constant(nv, GaussianRational(1));
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      out = out * (SparsePoly::variable(nv, i) - SparsePoly::variable(nv, j));
  return out;
}

namespace {

/// Exponent vectors packed into one 64-bit word, `bits` bits per variable.
class PackedExponents {
 public:
  PackedExponents(std::size_t num_vars, unsigned max_exponent)
      : num_vars_(num_vars), bits_(static_cast<unsigned>(std::bit_width(max_exponent))) {
    if (bits_ == 0) bits_ = 1;
    if (num_vars_ * bits_ > 64) throw std::range_error("exponent vector does not fit the packed key");
    mask_ = bits_ == 64 ? ~0ull : ((1ull << bits_) - 1);
  }
  unsigned get(std::uint64_t key, std::size_t var) const {
    return static_cast<unsigned>((key >> (var * bits_)) & mask_);
  }
  std::uint64_t bump(std::uint64_t key, std::size_t var) const { return key + (1ull << (var * bits_)); }
  std::uint64_t pack(const std::vector<unsigned>& e) const {
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < num_vars_; ++k) key |= static_cast<std::uint64_t>(e[k]) << (k * bits_);
    return key;
  }

 private:
  std::size_t num_vars_;
  unsigned bits_;
  std::uint64_t mask_ = 0;
};

struct LinearFactor {
  std::vector<std::pair<std::size_t, long>> support;  // (variable, coefficient != 0)
};

}  // namespace

Integer fano_degree(const FanoType& t) {
  if (delta(t) != 0) throw std::invalid_argument("fano_degree requires delta = 0, got " + t.to_string());
  const int r = t.r(), n = t.n();
  const auto nv = static_cast<std::size_t>(r + 1);

  std::vector<unsigned> target(nv);
  for (std::size_t k = 0; k < nv; ++k) target[k] = static_cast<unsigned>(n - static_cast<int>(k));

  // Linear factors of Q_{r,d} for every degree, then of the Vandermonde.
  std::vector<std::vector<LinearFactor>> groups(nv);
  for (int d : t.degrees()) {
    for (const Monomial& a : monomials_of_degree(nv, static_cast<unsigned>(d))) {
      LinearFactor f;
      for (std::size_t k = 0; k < nv; ++k)
        if (a[k] != 0) f.support.emplace_back(k, static_cast<long>(a[k]));
      groups[f.support.front().first].push_back(std::move(f));
    }
  }
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j) groups[i].push_back(LinearFactor{{{i, 1}, {j, -1}}});

  std::vector<unsigned> remaining(nv, 0);
  for (const auto& g : groups)
    for (const auto& f : g)
      for (auto [v, c] : f.support) ++remaining[v];

  const PackedExponents pack(nv, target.front());
  std::unordered_map<std::uint64_t, Integer> state{{0, Integer(1)}};
  std::unordered_map<std::uint64_t, Integer> next;

  for (const auto& group : groups) {
    for (const auto& f : group) {
      for (auto [v, c] : f.support) --remaining[v];
      next.clear();
      next.reserve(state.size() * 2);
      for (const auto& [key, coeff] : state) {
        for (auto [v, c] : f.support) {
          if (pack.get(key, v) + 1 > target[v]) continue;
          bool reachable = true;
          for (auto [w, cw] : f.support) {
            if (w == v) continue;
            if (pack.get(key, w) + remaining[w] < target[w]) {
              reachable = false;
              break;
            }
          }
          if (!reachable) continue;
          Integer& slot = next[pack.bump(key, v)];
          if (c > 0)
            mpz_addmul_ui(slot.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(c));
          else
            mpz_submul_ui(slot.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(-c));
        }
      }
      state.clear();
      for (auto& [key, coeff] : next)
        if (sgn(coeff) != 0) state.emplace(key, std::move(coeff));
    }
  }
  auto it = state.find(pack.pack(target));
  return it == state.end() ? Integer(0) : it->second;
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t out = 1;
  b %= p;
  for (; e; e >>= 1, b = b * b % p)
    if (e & 1) out = out * b % p;
  return out;
}

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint32_t primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t m = p - 1;
  for (std::uint32_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    factors.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2;; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

}  // namespace

std::optional<std::uint32_t> fano_degree_mod(const FanoType& t, std::uint32_t p) {
  if (delta(t) != 0) throw std::invalid_argument("fano_degree_mod requires delta = 0, got " + t.to_string());
  const int r = t.r(), n = t.n();
  const auto k = static_cast<std::size_t>(r + 1);
  const auto npts = static_cast<std::size_t>(n + 1);
  const std::uint64_t max_value = static_cast<std::uint64_t>(t.degrees().back()) * npts;
  if (p >= (1u << 27) || max_value >= p || !is_prime_u32(p)) return std::nullopt;

  // pow_table[e] = g^e and log_table[v] = log_g v for 1 <= v <= max_value.
  const std::uint32_t g = primitive_root(p), order = p - 1;
  std::vector<std::uint32_t> pow_table(order);
  std::vector<std::uint32_t> log_table(max_value + 1, 0);
  std::uint64_t acc = 1;
  for (std::uint32_t e = 0; e < order; ++e) {
    pow_table[e] = static_cast<std::uint32_t>(acc);
    if (acc <= max_value) log_table[acc] = e;
    acc = acc * g % p;
  }
  const std::uint64_t log_minus_one = order / 2;

  // Exponent vectors a with |a| = d for every degree, flattened.
  std::vector<std::uint32_t> comps;
  for (int d : t.degrees())
    for (const Monomial& a : monomials_of_degree(k, static_cast<unsigned>(d)))
      for (std::size_t j = 0; j < k; ++j) comps.push_back(a[j]);
  const std::size_t nfactors = comps.size() / k;

  // row_log[i] = sum over j != i of log |w_j - w_i|, with w_i = i + 1.
  std::vector<std::uint64_t> row_log(npts, 0);
  for (std::size_t i = 0; i < npts; ++i)
    for (std::size_t j = 0; j < npts; ++j)
      if (j != i) row_log[i] += log_table[i > j ? i - j : j - i];

  // Each fixed point I contributes prod_a (-a.w_I) / prod_{i in I, j not in I} (w_j - w_i).
  // The walk over I keeps the partial sums a.w and the log of the
  // denominator (with its sign) for the elements chosen so far.
  std::vector<std::uint32_t> last(nfactors);
  for (std::size_t f = 0; f < nfactors; ++f) last[f] = comps[f * k + k - 1];
  std::vector<std::vector<std::uint32_t>> partial(k, std::vector<std::uint32_t>(nfactors, 0));
  std::vector<std::size_t> subset(k);
  const std::uint64_t numerator_sign = nfactors % 2 ? log_minus_one : 0;
  std::uint64_t total = 0;
  auto denominator = [&](std::size_t depth, std::size_t i) {
    // log of 1 / prod_{j not in I} (w_j - w_i), counting the members
    // already chosen twice since they were removed from both rows.
    std::uint64_t e = order - row_log[i] % order;
    for (std::size_t b = 0; b < depth; ++b) e += 2ull * log_table[i - subset[b]];
    if ((i - depth) % 2) e += log_minus_one;
    return e;
  };
  auto visit = [&](auto&& self, std::size_t depth, std::size_t start, std::uint64_t den) -> void {
    const auto& in = partial[depth];
    if (depth + 1 == k) {
      for (std::size_t i = start; i < npts; ++i) {
        const auto w = static_cast<std::uint32_t>(i + 1);
        std::uint64_t e = numerator_sign + den + denominator(depth, i);
        for (std::size_t f = 0; f < nfactors; ++f) e += log_table[in[f] + last[f] * w];
        total += pow_table[e % order];
      }
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= npts; ++i) {
      subset[depth] = i;
      const auto w = static_cast<std::uint32_t>(i + 1);
      auto& out = partial[depth + 1];
      for (std::size_t f = 0; f < nfactors; ++f) out[f] = in[f] + comps[f * k + depth] * w;
      self(self, depth + 1, i + 1, (den + denominator(depth, i)) % order);
    }
  };
  visit(visit, 0, 0, 0);
  return static_cast<std::uint32_t>(total % p);
}

DegreeLowerBound degree_lower_bound(const FanoType& t) {
  const int r = t.r();
  DegreeLowerBound out{Integer(1), Integer(1)};
  for (int d : t.degrees()) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(r + 1));
    out.crude *= p;
    for (int j = 1; j <= r + 1; ++j) {
      if (d % j != 0) continue;
      Integer e = binomial(r + 1, j);
      Integer f;
      mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(d / j), e.get_ui());
      out.refined *= f;
    }
  }
  return out;
}

std::vector<FanoProblem> enumerate_fano_problems(const Integer& degree_cap) {
  if (degree_cap < 1) throw std::invalid_argument("degree cap must be >= 1");
  std::vector<FanoProblem> out;
  // Degrees below the cap agree with their residue mod any prime above it,
  // so a residue at or above the cap, or two residues that differ, prove
  // deg >= cap. Only used for r >= 2, where exact extraction gets slow.
  std::vector<std::uint32_t> primes;
  if (degree_cap < (1 << 25)) {
    std::uint32_t p = std::max<std::uint32_t>(static_cast<std::uint32_t>(degree_cap.get_ui()) * 2 + 1, 1u << 21);
    while (primes.size() < 2) {
      if (is_prime_u32(p)) primes.push_back(p);
      ++p;
    }
  }
  auto certainly_above_cap = [&](const FanoType& t) {
    std::optional<std::uint32_t> first;
    for (std::uint32_t p : primes) {
      auto res = fano_degree_mod(t, p);
      if (!res) return false;
      if (*res >= degree_cap) return true;
      if (first && *first != *res) return true;
      first = res;
    }
    return false;
  };
  // Every d_i >= 2, so the crude bound is at least 2^{s(r+1)}.
  auto pow2_below_cap = [&](long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return p < degree_cap;
  };
  for (int r = 1; pow2_below_cap(r + 1); ++r) {
    for (int s = 1; pow2_below_cap(static_cast<long>(s) * (r + 1)); ++s) {
      std::vector<int> degs(static_cast<std::size_t>(s), 2);
      // Non-decreasing degree tuples with crude bound below the cap.
      auto visit = [&](auto&& self, std::size_t pos, const Integer& crude) -> void {
        if (pos == degs.size()) {
          Integer sum = 0;
          for (int d : degs) sum += binomial(d + r, r);
          if (sum % (r + 1) != 0) return;
          long n = r + Integer(sum / (r + 1)).get_si();
          if (2 * r > n - s) return;
          FanoType t(r, static_cast<int>(n), degs);
          if (degree_lower_bound(t).refined >= degree_cap) return;
          if (r >= 2 && certainly_above_cap(t)) return;
          Integer deg = fano_degree(t);
          if (deg < degree_cap) out.push_back({std::move(t), std::move(deg)});
          return;
        }
        // Remaining positions each contribute at least 2^{r+1}.
        const auto rest = static_cast<unsigned long>(degs.size() - pos - 1);
        Integer rest_min;
        mpz_ui_pow_ui(rest_min.get_mpz_t(), 2, rest * static_cast<unsigned long>(r + 1));
        for (int d = pos == 0 ? 2 : degs[pos - 1];; ++d) {
          Integer f;
          mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(r + 1));
          Integer next = crude * f;
          if (next * rest_min >= degree_cap) break;
          degs[pos] = d;
          self(self, pos + 1, next);
        }
      };
      visit(visit, 0, Integer(1));
    }
  }
  std::sort(out.begin(), out.end(), [](const FanoProblem& a, const FanoProblem& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.type.r() != b.type.r()) return a.type.r() < b.type.r();
    if (a.type.n() != b.type.n()) return a.type.n() < b.type.n();
    return a.type.degrees() < b.type.degrees();
  });
  return out;
}

bool is_enriched(const FanoType& t) {
  if (t.r() == 1 && t.n() == 3 && t.degrees() == std::vector<int>{3}) return true;
  return t.n() == 2 * t.r() + 2 && t.degrees() == std::vector<int>{2, 2};
}

const std::vector<TableRow>& small_degree_table() {
  static const std::vector<TableRow> rows = {
      {FanoType(1, 4, {2, 2}), "D5"},       {FanoType(1, 3, {3}), "E6"},
      {FanoType(2, 6, {2, 2}), "D7"},       {FanoType(3, 8, {2, 2}), "D9"},
      {FanoType(1, 7, {2, 2, 2, 2}), "S512"}, {FanoType(1, 6, {2, 2, 3}), "S720"},
      {FanoType(4, 10, {2, 2}), "D11"},     {FanoType(2, 8, {2, 2, 2}), "S1024"},
  };
  return rows;
}

const std::vector<TableRow>& large_problem_table() {
  static const std::vector<TableRow> rows = {
      {FanoType(1, 7, {2, 2, 2, 2}), ""},       {FanoType(1, 6, {2, 2, 3}), ""},
      {FanoType(2, 8, {2, 2, 2}), ""},          {FanoType(1, 5, {3, 3}), ""},
      {FanoType(1, 5, {2, 4}), ""},             {FanoType(1, 10, {2, 2, 2, 2, 2, 2}), ""},
      {FanoType(1, 9, {2, 2, 2, 2, 3}), ""},    {FanoType(2, 10, {2, 2, 2, 2}), ""},
      {FanoType(1, 8, {2, 2, 3, 3}), ""},       {FanoType(1, 8, {2, 2, 2, 4}), ""},
      {FanoType(1, 7, {3, 3, 3}), ""},          {FanoType(1, 7, {2, 3, 4}), ""},
  };
  return rows;
}

}  // namespace fano
