#pragma once

#include <cstdint>
#include <string>

namespace epi {

/// Exact element of Q/Z, stored as num/den with 0 <= num < den, gcd 1.
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(std::int64_t num, std::int64_t den);

  static QmodZ parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QmodZ operator+(const QmodZ& o) const;
  QmodZ operator-(const QmodZ& o) const;
  QmodZ operator-() const;
  QmodZ times(std::int64_t k) const;
  QmodZ& operator+=(const QmodZ& o) { return *this = *this + o; }

  bool operator==(const QmodZ&) const = default;
  auto operator<=>(const QmodZ&) const = default;

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace epi
