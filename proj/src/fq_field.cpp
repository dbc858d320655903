#include "epi/fq_field.hpp"

#include <map>
#include <mutex>

#include "epi/errors.hpp"

namespace epi {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Multiply a residue (digit vector of length f) by x modulo the monic modulus.
void times_x(std::vector<int>& v, const std::vector<int>& mod, int p) {
  int f = static_cast<int>(v.size());
  int top = v[f - 1];
  for (int i = f - 1; i > 0; --i) v[i] = v[i - 1];
  v[0] = 0;
  for (int i = 0; i < f; ++i) v[i] = ((v[i] - top * mod[i]) % p + p) % p;
}

std::vector<int> mulmod(const std::vector<int>& a, const std::vector<int>& b,
                        const std::vector<int>& mod, int p) {
  int f = static_cast<int>(a.size());
  std::vector<int> acc(f, 0), sh = a;
  for (int j = 0; j < f; ++j) {
    for (int i = 0; i < f; ++i) acc[i] = (acc[i] + sh[i] * b[j]) % p;
    times_x(sh, mod, p);
  }
  return acc;
}

std::vector<int> powmod_x(std::int64_t k, const std::vector<int>& mod, int p,
                          int f) {
  std::vector<int> r(f, 0), base(f, 0);
  r[0] = 1;
  if (f == 1) {
    base[0] = ((-mod[0]) % p + p) % p;
  } else {
    base[1] = 1;
  }
  while (k > 0) {
    if (k & 1) r = mulmod(r, base, mod, p);
    base = mulmod(base, base, mod, p);
    k >>= 1;
  }
  return r;
}

bool is_one(const std::vector<int>& v) {
  if (v[0] != 1) return false;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

}  // namespace

std::shared_ptr<const FqField> FqField::get(int p, int f) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FqField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, f);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const FqField>(p, f);
  cache.emplace(key, field);
  return field;
}

FqField::FqField(int p, int f) : p_(p), f_(f) {
  if (!is_prime(p)) throw DomainError("FqField: p must be prime");
  if (f < 1) throw DomainError("FqField: degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder) throw DomainError("FqField: order exceeds 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  pow_p_.resize(f + 1);
  pow_p_[0] = 1;
  for (int i = 1; i <= f; ++i) pow_p_[i] = pow_p_[i - 1] * p;

  auto factors = prime_factors(static_cast<std::int64_t>(q_) - 1);
  bool found = false;
  for (std::uint32_t code = 0; code < q_ && !found; ++code) {
    std::vector<int> mod(f + 1, 0);
    std::uint32_t c = code;
    for (int i = 0; i < f; ++i) {
      mod[i] = static_cast<int>(c % p);
      c /= p;
    }
    mod[f] = 1;
    if (mod[0] == 0) continue;
    if (!is_one(powmod_x(q_ - 1, mod, p, f))) continue;
    bool primitive = true;
    for (auto l : factors) {
      if (is_one(powmod_x((q_ - 1) / l, mod, p, f))) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      modulus_ = mod;
      found = true;
    }
  }
  if (!found) throw DomainError("FqField: no primitive polynomial found");

  exp_.resize(q_ - 1);
  log_.assign(q_, -1);
  std::vector<int> cur(f, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k + 1 < q_; ++k) {
    FqElem e = from_digits(cur);
    exp_[k] = e;
    log_[e.code] = k;
    if (f == 1) {
      cur[0] = (cur[0] * (((-modulus_[0]) % p + p) % p)) % p;
    } else {
      times_x(cur, modulus_, p);
    }
  }
}

FqElem FqField::from_int(std::int64_t a) const {
  return {static_cast<std::uint32_t>(((a % p_) + p_) % p_)};
}

FqElem FqField::element(std::uint32_t code) const {
  if (code >= q_) throw DomainError("FqField: code out of range");
  return {code};
}

std::vector<int> FqField::digits(FqElem a) const {
  std::vector<int> d(f_);
  std::uint32_t c = a.code;
  for (int i = 0; i < f_; ++i) {
    d[i] = static_cast<int>(c % p_);
    c /= p_;
  }
  return d;
}

FqElem FqField::from_digits(const std::vector<int>& d) const {
  std::uint32_t c = 0;
  for (int i = f_ - 1; i >= 0; --i)
    c = c * p_ + static_cast<std::uint32_t>(((d[i] % p_) + p_) % p_);
  return {c};
}

FqElem FqField::add(FqElem a, FqElem b) const {
  if (p_ == 2) return {a.code ^ b.code};
  std::uint32_t r = 0;
  std::uint32_t x = a.code, y = b.code;
  for (int i = 0; i < f_; ++i) {
    std::uint32_t s = (x % p_ + y % p_) % p_;
    r += s * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return {r};
}

FqElem FqField::neg(FqElem a) const {
  if (p_ == 2) return a;
  std::uint32_t r = 0, x = a.code;
  for (int i = 0; i < f_; ++i) {
    std::uint32_t s = (p_ - x % p_) % p_;
    r += s * pow_p_[i];
    x /= p_;
  }
  return {r};
}

FqElem FqField::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FqField::mul(FqElem a, FqElem b) const {
  if (a.code == 0 || b.code == 0) return {0};
  return exp_[(log_[a.code] + log_[b.code]) % (q_ - 1)];
}

FqElem FqField::inv(FqElem a) const {
  if (a.code == 0) throw DomainError("FqField: inverse of zero");
  return exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)];
}

FqElem FqField::pow(FqElem a, std::int64_t k) const {
  if (a.code == 0) {
    if (k < 0) throw DomainError("FqField: negative power of zero");
    return k == 0 ? one() : zero();
  }
  return exp(log_[a.code] * (k % static_cast<std::int64_t>(q_ - 1)));
}

std::int64_t FqField::log(FqElem a) const {
  if (a.code == 0 || a.code >= q_) throw DomainError("FqField: log of zero");
  return log_[a.code];
}

FqElem FqField::exp(std::int64_t k) const {
  std::int64_t m = static_cast<std::int64_t>(q_) - 1;
  return exp_[((k % m) + m) % m];
}

FqElem FqField::frobenius(FqElem a, std::int64_t k) const {
  if (a.code == 0) return a;
  std::int64_t m = static_cast<std::int64_t>(q_) - 1;
  std::int64_t kk = ((k % f_) + f_) % f_;
  std::int64_t e = 1;
  for (std::int64_t i = 0; i < kk; ++i) e = (e * p_) % m;
  return exp(log_[a.code] * e);
}

int FqField::trace_to_prime(FqElem a) const {
  FqElem acc = zero(), cur = a;
  for (int i = 0; i < f_; ++i) {
    acc = add(acc, cur);
    cur = frobenius(cur, 1);
  }
  if (acc.code >= static_cast<std::uint32_t>(p_))
    throw InvariantViolation("FqField: trace left the prime field");
  return static_cast<int>(acc.code);
}

std::string FqField::format(FqElem a) const {
  if (a.code == 0) return "0";
  return "g^" + std::to_string(log(a));
}

FqElem FqField::parse(const std::string& text) const {
  if (text == "0") return zero();
  if (text.size() < 3 || text.compare(0, 2, "g^") != 0)
    throw SchemaError("bad residue element: " + text);
  try {
    std::size_t used = 0;
    std::int64_t k = std::stoll(text.substr(2), &used);
    if (used != text.size() - 2) throw SchemaError("bad residue element: " + text);
    return exp(k);
  } catch (const std::logic_error&) {
    throw SchemaError("bad residue element: " + text);
  }
}

}  // namespace epi
