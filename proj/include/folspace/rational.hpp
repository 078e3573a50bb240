#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace folspace {

// Arbitrary-precision natural number, little-endian base-2^32 limbs.
// Invariant: no trailing zero limbs; empty limb vector means zero.
class BigNat {
 public:
  BigNat() = default;
  BigNat(uint64_t v);  // NOLINT: implicit by design

  static BigNat pow2(uint64_t k);
  static BigNat from_decimal(const std::string& s);

  bool is_zero() const { return limbs_.empty(); }
  bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
  size_t bit_length() const;
  bool bit(size_t i) const;
  bool fits_u64() const { return limbs_.size() <= 2; }
  uint64_t to_u64() const;  // precondition: fits_u64()
  double to_double() const;

  static int cmp(const BigNat& a, const BigNat& b);

  BigNat& operator+=(const BigNat& o);
  BigNat& operator-=(const BigNat& o);  // precondition: *this >= o
  BigNat operator*(const BigNat& o) const;
  BigNat operator<<(uint64_t bits) const;
  BigNat operator>>(uint64_t bits) const;

  // Quotient; remainder written to rem.
  static BigNat divmod(const BigNat& a, const BigNat& b, BigNat& rem);
  static BigNat gcd(BigNat a, BigNat b);

  std::string to_string() const;  // decimal

  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator-(BigNat a, const BigNat& b) { return a -= b; }
  friend bool operator==(const BigNat& a, const BigNat& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigNat& a, const BigNat& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigNat& a, const BigNat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigNat& a, const BigNat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigNat& a, const BigNat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigNat& a, const BigNat& b) { return cmp(a, b) >= 0; }

 private:
  void trim();
  std::vector<uint32_t> limbs_;
};

// Signed arbitrary-precision integer.
class BigInt {
 public:
  BigInt() = default;
  BigInt(int64_t v);  // NOLINT
  BigInt(int sign, BigNat mag);

  int sign() const { return sign_; }
  const BigNat& mag() const { return mag_; }
  bool is_zero() const { return sign_ == 0; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  static int cmp(const BigInt& a, const BigInt& b);

  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }

 private:
  int sign_ = 0;  // -1, 0, +1
  BigNat mag_;
};

// Exact rational, always normalized: gcd(|num|, den) == 1, den >= 1, zero is 0/1.
class BigRat {
 public:
  BigRat() : num_(0), den_(1) {}
  BigRat(int64_t v) : num_(v), den_(1) {}  // NOLINT
  BigRat(int64_t num, int64_t den);
  BigRat(BigInt num, BigNat den);

  static BigRat parse(const std::string& s);  // "p/q" or "p"

  const BigInt& num() const { return num_; }
  const BigNat& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  BigRat operator+(const BigRat& o) const;
  BigRat operator-(const BigRat& o) const;
  BigRat operator*(const BigRat& o) const;
  BigRat operator/(const BigRat& o) const;  // precondition: o != 0
  BigRat operator-() const;

  BigRat& operator+=(const BigRat& o) { return *this = *this + o; }
  BigRat& operator-=(const BigRat& o) { return *this = *this - o; }
  BigRat& operator*=(const BigRat& o) { return *this = *this * o; }
  BigRat& operator/=(const BigRat& o) { return *this = *this / o; }

  static int cmp(const BigRat& a, const BigRat& b);

  std::string to_string() const;  // canonical "p/q"
  double to_double() const;

  friend bool operator==(const BigRat& a, const BigRat& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigRat& a, const BigRat& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigRat& a, const BigRat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigRat& a, const BigRat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigRat& a, const BigRat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigRat& a, const BigRat& b) { return cmp(a, b) >= 0; }

 private:
  void normalize();
  BigInt num_;
  BigNat den_;
};

}  // namespace folspace
