#include "epi/qmodz.hpp"

#include <numeric>

#include "epi/errors.hpp"

namespace epi {

QmodZ::QmodZ(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("QmodZ: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = den;
  num_ = num / g;
  den_ = den / g;
}

QmodZ QmodZ::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return QmodZ(std::stoll(text), 1);
    std::size_t used = 0;
    std::int64_t a = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw SchemaError("bad rational: " + text);
    std::string tail = text.substr(slash + 1);
    std::int64_t b = std::stoll(tail, &used);
    if (used != tail.size()) throw SchemaError("bad rational: " + text);
    return QmodZ(a, b);
  } catch (const std::logic_error&) {
    throw SchemaError("bad rational: " + text);
  }
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  __int128 n = static_cast<__int128>(num_) * (l / den_) +
               static_cast<__int128>(o.num_) * (l / o.den_);
  return QmodZ(static_cast<std::int64_t>(n % l), l);
}

QmodZ QmodZ::operator-() const { return QmodZ(-num_, den_); }

QmodZ QmodZ::operator-(const QmodZ& o) const { return *this + (-o); }

QmodZ QmodZ::times(std::int64_t k) const {
  __int128 n = static_cast<__int128>(num_) * k;
  n %= den_;
  return QmodZ(static_cast<std::int64_t>(n), den_);
}

std::string QmodZ::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace epi
