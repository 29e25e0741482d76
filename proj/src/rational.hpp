// Exact rational arithmetic, backed by GMP.  Values are always kept in
// lowest terms with a positive denominator; serialization is "p/q" with the
// "/q" part omitted when the denominator is 1.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace parrep {

class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit on purpose, mirrors integer literals
  Rat(long n, long d) : v_(n, d) { v_.canonicalize(); }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) { v_.canonicalize(); }

  static std::optional<Rat> parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    // mpq_class accepts "p/q"; validate characters first, mpq aborts on junk.
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < s.size(); i++) {
      char c = s[i];
      if (c == '/') {
        if (slash != std::string::npos || i == 0 || i + 1 == s.size()) return std::nullopt;
        slash = i;
      } else if (c == '-') {
        if (i != 0 && i != slash + 1) return std::nullopt;
      } else if (!std::isdigit(static_cast<unsigned char>(c))) {
        return std::nullopt;
      }
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return Rat(std::move(q), already_canonical{});
  }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }
  const mpq_class& mpq() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { v_ /= o.v_; return *this; }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_), already_canonical{}); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend Rat abs(const Rat& a) { return Rat(mpq_class(abs(a.v_)), already_canonical{}); }

private:
  struct already_canonical {};
  Rat(mpq_class q, already_canonical) : v_(std::move(q)) {}

  mpq_class v_;
};

}  // namespace parrep
