#include "kloost/partitions.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace kloost {

// ---------------------------------------------------------------------------
// p(n)

BigInt pentagonal_p(Int n) {
  if (n < 0) return 0;
  static std::mutex mu;
  static std::vector<BigInt> memo{1};
  std::lock_guard lock(mu);
  for (Int k = static_cast<Int>(memo.size()); k <= n; ++k) {
    BigInt total = 0;
    for (Int j = 1;; ++j) {
      const Int g1 = j * (3 * j - 1) / 2;
      if (g1 > k) break;
      const Int g2 = j * (3 * j + 1) / 2;
      BigInt t = memo[k - g1];
      if (g2 <= k) t += memo[k - g2];
      if (j % 2 == 1)
        total += t;
      else
        total -= t;
    }
    memo.push_back(std::move(total));
  }
  return memo[n];
}

// ---------------------------------------------------------------------------
// Cyclotomic integers

std::vector<Int> cyclotomic_polynomial(Int b) {
  if (b < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  // x^b - 1 divided by Phi_d for every proper divisor d.
  std::vector<Int> p(b + 1, 0);
  p[0] = -1;
  p[b] = 1;
  for (Int d = 1; d < b; ++d) {
    if (b % d != 0) continue;
    const std::vector<Int> q = cyclotomic_polynomial(d);
    const Int deg = static_cast<Int>(q.size()) - 1;
    std::vector<Int> out(p.size() - deg, 0);
    for (Int i = static_cast<Int>(p.size()) - 1; i >= deg; --i) {
      const Int coef = p[i];  // q is monic
      out[i - deg] = coef;
      for (Int j = 0; j <= deg; ++j) p[i - deg + j] -= coef * q[j];
    }
    p = std::move(out);
  }
  return p;
}

namespace {

const std::vector<Int>& phi_poly(Int b) {
  static std::mutex mu;
  static std::map<Int, std::vector<Int>> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(b);
  if (it == memo.end()) it = memo.emplace(b, cyclotomic_polynomial(b)).first;
  return it->second;
}

std::vector<BigInt> reduce(Int order, std::vector<BigInt> g) {
  const std::vector<Int>& phi = phi_poly(order);
  const Int deg = static_cast<Int>(phi.size()) - 1;
  for (Int i = static_cast<Int>(g.size()) - 1; i >= deg; --i) {
    if (g[i] == 0) continue;
    const BigInt coef = g[i];
    for (Int j = 0; j <= deg; ++j) g[i - deg + j] -= coef * phi[j];
  }
  g.resize(deg);
  return g;
}

}  // namespace

CyclotomicInt::CyclotomicInt(Int order, const BigInt& value) : order_(order) {
  if (order < 1) throw std::invalid_argument("CyclotomicInt: order must be positive");
  coeffs_.assign(phi_poly(order).size() - 1, 0);
  coeffs_[0] = value;
}

CyclotomicInt CyclotomicInt::zeta_power(Int order, Int k) {
  std::vector<BigInt> g(order, 0);
  g[mod(k, order)] = 1;
  return from_group_ring(order, g);
}

CyclotomicInt CyclotomicInt::from_group_ring(Int order, const std::vector<BigInt>& g) {
  if (static_cast<Int>(g.size()) != order) throw std::invalid_argument("CyclotomicInt: group ring size mismatch");
  CyclotomicInt r(order);
  r.coeffs_ = reduce(order, g);
  return r;
}

bool CyclotomicInt::is_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

BigInt CyclotomicInt::to_integer() const {
  if (!is_integer()) throw std::domain_error("CyclotomicInt: value " + str() + " is not an integer");
  return coeffs_[0];
}

std::string CyclotomicInt::str() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0 && coeffs_[i] == 0) continue;
    if (!s.empty()) s += coeffs_[i] < 0 ? " - " : " + ";
    BigInt a = (!s.empty() && coeffs_[i] < 0) ? BigInt(-coeffs_[i]) : coeffs_[i];
    s += a.get_str();
    if (i == 1) s += "*z";
    if (i > 1) s += "*z^" + std::to_string(i);
  }
  return s;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  if (o.order_ != order_) throw std::invalid_argument("CyclotomicInt: order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
  if (o.order_ != order_) throw std::invalid_argument("CyclotomicInt: order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.order_ != b.order_) throw std::invalid_argument("CyclotomicInt: order mismatch");
  std::vector<BigInt> g(std::max<std::size_t>(a.coeffs_.size() + b.coeffs_.size(), 1), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) g[i + j] += a.coeffs_[i] * b.coeffs_[j];
  CyclotomicInt r(a.order_);
  r.coeffs_ = reduce(a.order_, std::move(g));
  return r;
}

// ---------------------------------------------------------------------------
// Rank table

BigInt RankTable::count(Int m, Int n) const {
  if (n < 0 || n > max_n_) throw std::out_of_range("RankTable: n=" + std::to_string(n) + " outside [0, " + std::to_string(max_n_) + "]");
  if (m < -n || m > n) return 0;
  return rows_[n][m + n];
}

const std::vector<BigInt>& RankTable::row(Int n) const {
  if (n < 0 || n > max_n_) throw std::out_of_range("RankTable: row out of range");
  return rows_[n];
}

RankTable build_rank_table(Int max_n) {
  if (max_n < 1) throw std::invalid_argument("build_rank_table: max_n must be positive");
  const Int N = max_n;
  using Table = std::vector<std::vector<BigInt>>;
  auto blank = [N]() {
    Table t(N + 1);
    for (Int n = 0; n <= N; ++n) t[n].assign(2 * n + 1, 0);
    return t;
  };
  auto at = [](Table& t, Int n, Int m) -> BigInt* {
    if (m < -n || m > n) return nullptr;
    return &t[n][m + n];
  };

  Table total = blank();
  total[0][0] = 1;
  // term_k = q^{k^2} / prod_{j<=k} (1 - w q^j)(1 - w^{-1} q^j), updated in place.
  Table term = blank();
  term[0][0] = 1;
  Int shift = 0;  // q-order of the current term's leading factor
  for (Int k = 1; k * k <= N; ++k) {
    // Multiply by q^{2k-1}.
    const Int s = 2 * k - 1;
    Table next = blank();
    for (Int n = N; n >= s; --n)
      for (Int m = -(n - s); m <= n - s; ++m)
        if (BigInt* src = at(term, n - s, m); src && *src != 0) *at(next, n, m) = *src;
    // Divide by (1 - w q^k) and (1 - w^{-1} q^k): g[n][m] += g[n-k][m-+1].
    for (int dir : {+1, -1})
      for (Int n = k; n <= N; ++n)
        for (Int m = -n; m <= n; ++m) {
          BigInt* src = at(next, n - k, m - dir);
          if (src && *src != 0) *at(next, n, m) += *src;
        }
    term = std::move(next);
    shift += s;
    for (Int n = shift; n <= N; ++n)
      for (Int i = 0; i <= 2 * n; ++i) total[n][i] += term[n][i];
  }

  RankTable t;
  t.max_n_ = N;
  t.rows_ = std::move(total);
  return t;
}

BigInt N_abn(Int a, Int b, Int n, const RankTable& table) {
  if (b < 1) throw std::invalid_argument("N_abn: b must be positive");
  table.row(n);
  BigInt s = 0;
  for (Int m = -n; m <= n; ++m)
    if (mod(m - a, b) == 0) s += table.count(m, n);
  return s;
}

CyclotomicInt A_ab(Int a, Int b, Int n, const RankTable& table) {
  if (b < 1) throw std::invalid_argument("A_ab: b must be positive");
  std::vector<BigInt> g(b, 0);
  for (Int m = -n; m <= n; ++m) g[mod(a * m, b)] += table.count(m, n);
  return CyclotomicInt::from_group_ring(b, g);
}

std::vector<CyclotomicInt> rank_series_at_root(Int a, Int b, Int max_n) {
  if (b < 1 || max_n < 0) throw std::invalid_argument("rank_series_at_root: bad arguments");
  const Int N = max_n;
  // Group ring Z[C_b] coefficients per q-order; multiplication by zeta^e rotates.
  using Coef = std::vector<BigInt>;
  std::vector<Coef> total(N + 1, Coef(b, 0)), term(N + 1, Coef(b, 0));
  total[0][0] = 1;
  term[0][0] = 1;
  const Int e = mod(a, b);
  for (Int k = 1; k * k <= N; ++k) {
    const Int s = 2 * k - 1;
    for (Int n = N; n >= 0; --n) term[n] = n >= s ? term[n - s] : Coef(b, 0);
    for (Int dir : {e, mod(-e, b)})
      for (Int n = k; n <= N; ++n)
        for (Int r = 0; r < b; ++r) term[n][mod(r + dir, b)] += term[n - k][r];
    for (Int n = 0; n <= N; ++n)
      for (Int r = 0; r < b; ++r) total[n][r] += term[n][r];
  }
  std::vector<CyclotomicInt> out;
  out.reserve(N + 1);
  for (Int n = 0; n <= N; ++n) out.push_back(CyclotomicInt::from_group_ring(b, total[n]));
  return out;
}

BigInt rank_difference(Int b, Int n) {
  if (b != 2 && b != 3) throw std::invalid_argument("rank_difference: b must be 2 or 3");
  if (n < 0 || n > 100000) throw std::out_of_range("rank_difference: n=" + std::to_string(n) + " outside oracle range");
  static std::mutex mu;
  static std::map<Int, std::vector<BigInt>> memo;
  std::lock_guard lock(mu);
  auto& v = memo[b];
  if (static_cast<Int>(v.size()) <= n) {
    Int target = std::max<Int>(n, 2 * static_cast<Int>(v.size()));
    target = std::min<Int>(std::max<Int>(target, 64), 100000);
    v.clear();
    for (const auto& x : rank_series_at_root(1, b, target)) v.push_back(x.to_integer());
  }
  return v[n];
}

}  // namespace kloost
