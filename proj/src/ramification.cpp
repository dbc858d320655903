#include "epi/ramification.hpp"

#include "epi/errors.hpp"

namespace epi {

std::string rational_str(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t a = std::stoll(text, &used);
      if (used != text.size()) throw SchemaError("bad rational: " + text);
      return Rational(a);
    }
    std::string head = text.substr(0, slash), tail = text.substr(slash + 1);
    std::int64_t a = std::stoll(head, &used);
    if (used != head.size()) throw SchemaError("bad rational: " + text);
    std::int64_t b = std::stoll(tail, &used);
    if (used != tail.size() || b == 0) throw SchemaError("bad rational: " + text);
    return Rational(a, b);
  } catch (const std::logic_error&) {
    throw SchemaError("bad rational: " + text);
  }
}

void RamFiltration::validate() const {
  if (breaks.empty() || breaks.front().first != 0)
    throw DomainError("not a filtration: must start at index 0");
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (breaks[k].second < 1) throw DomainError("not a filtration: order < 1");
    if (k > 0) {
      if (breaks[k].first <= breaks[k - 1].first)
        throw DomainError("not a filtration: indices must increase");
      if (breaks[k].second > breaks[k - 1].second)
        throw DomainError("not a filtration: orders increase");
    }
  }
  if (breaks.back().second != 1)
    throw DomainError("not a filtration: orders must end at 1");
}

std::int64_t RamFiltration::order_at(int j) const {
  std::int64_t o = breaks.front().second;
  for (const auto& [i, ord] : breaks) {
    if (i > j) break;
    o = ord;
  }
  return o;
}

int RamFiltration::support_end() const {
  for (const auto& [i, ord] : breaks)
    if (ord == 1) return i;
  return breaks.back().first;
}

PLFunction::PLFunction(std::vector<Rational> starts, std::vector<Rational> slopes)
    : starts_(std::move(starts)), slopes_(std::move(slopes)) {
  if (starts_.empty() || starts_.size() != slopes_.size() || starts_[0] != Rational(0))
    throw DomainError("PLFunction: malformed breakpoints");
  for (std::size_t k = 0; k < slopes_.size(); ++k) {
    if (slopes_[k] <= Rational(0)) throw DomainError("PLFunction: slopes must be positive");
    if (k > 0 && starts_[k] <= starts_[k - 1])
      throw DomainError("PLFunction: breakpoints must increase");
  }
}

PLFunction PLFunction::identity() { return PLFunction({Rational(0)}, {Rational(1)}); }

Rational PLFunction::operator()(const Rational& x) const {
  if (x < Rational(0)) throw DomainError("PLFunction: negative argument");
  Rational y(0);
  for (std::size_t k = 0; k < starts_.size(); ++k) {
    Rational end = (k + 1 < starts_.size()) ? starts_[k + 1] : x;
    if (x <= end) return y + slopes_[k] * (x - starts_[k]);
    y += slopes_[k] * (end - starts_[k]);
  }
  return y;
}

PLFunction PLFunction::inverse() const {
  std::vector<Rational> st, sl;
  for (std::size_t k = 0; k < starts_.size(); ++k) {
    st.push_back((*this)(starts_[k]));
    sl.push_back(1 / slopes_[k]);
  }
  return PLFunction(st, sl);
}

HerbrandResult herbrand_and_different(const RamFiltration& filt) {
  filt.validate();
  const std::int64_t g0 = filt.order_at(0);
  const int end = filt.support_end();
  std::int64_t d = 0;
  for (int i = 0; i < end; ++i) d += filt.order_at(i) - 1;
  // phi has slope |G_i| / |G_0| on (i-1, i].
  std::vector<Rational> starts, slopes;
  for (int i = 1; i <= end + 1; ++i) {
    Rational s(filt.order_at(i), g0);
    if (!slopes.empty() && slopes.back() == s) continue;
    starts.push_back(Rational(i - 1));
    slopes.push_back(s);
  }
  PLFunction phi(starts, slopes);
  return {phi, phi.inverse(), d};
}

std::int64_t swan_induce(const InductionData& x) {
  if (x.e < 1 || x.f < 1 || x.m < 1 || x.d < x.e - 1)
    throw DomainError("swan_induce: invalid induction data");
  return (x.sw_tau + x.m * (1 - x.e + x.d)) * x.f;
}

std::int64_t conductor_discriminant(const std::vector<std::int64_t>& a) {
  std::int64_t s = 0;
  for (auto v : a) {
    if (v < 0) throw DomainError("conductor_discriminant: negative exponent");
    s += v;
  }
  return s;
}

std::int64_t tame_different(std::int64_t e) {
  if (e < 1) throw DomainError("tame_different: e must be positive");
  return e - 1;
}

std::int64_t different_transitive(std::int64_t d_lk, std::int64_t e_lk,
                                  std::int64_t d_kf) {
  return d_lk + e_lk * d_kf;
}

std::int64_t transported_level(std::int64_t d, std::int64_t e, std::int64_t c) {
  return d + e * c;
}

}  // namespace epi
