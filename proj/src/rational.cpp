#include "folspace/rational.hpp"

#include <algorithm>
#include <cstdlib>

#include "folspace/errors.hpp"

namespace folspace {

// ---------------------------------------------------------------- BigNat

BigNat::BigNat(uint64_t v) {
  if (v) limbs_.push_back(static_cast<uint32_t>(v));
  if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
}

void BigNat::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::pow2(uint64_t k) { return BigNat(1) << k; }

size_t BigNat::bit_length() const {
  if (limbs_.empty()) return 0;
  uint32_t top = limbs_.back();
  size_t n = 0;
  while (top) {
    top >>= 1;
    ++n;
  }
  return (limbs_.size() - 1) * 32 + n;
}

bool BigNat::bit(size_t i) const {
  size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

uint64_t BigNat::to_u64() const {
  uint64_t v = 0;
  if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) v |= limbs_[0];
  return v;
}

double BigNat::to_double() const {
  double v = 0.0;
  for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
  return v;
}

int BigNat::cmp(const BigNat& a, const BigNat& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigNat& BigNat::operator+=(const BigNat& o) {
  limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
    limbs_[i] = static_cast<uint32_t>(s);
    carry = s >> 32;
  }
  if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  return *this;
}

BigNat& BigNat::operator-=(const BigNat& o) {
  int64_t borrow = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    int64_t d = static_cast<int64_t>(limbs_[i]) - borrow - (i < o.limbs_.size() ? o.limbs_[i] : 0);
    if (d < 0) {
      d += int64_t(1) << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    limbs_[i] = static_cast<uint32_t>(d);
  }
  trim();
  return *this;
}

BigNat BigNat::operator*(const BigNat& o) const {
  if (is_zero() || o.is_zero()) return BigNat();
  BigNat r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      uint64_t cur = r.limbs_[i + j] + carry +
                     static_cast<uint64_t>(limbs_[i]) * o.limbs_[j];
      r.limbs_[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigNat BigNat::operator<<(uint64_t bits) const {
  if (is_zero()) return BigNat();
  size_t limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  BigNat r;
  r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t v = static_cast<uint64_t>(limbs_[i]) << bit_shift;
    r.limbs_[i + limb_shift] |= static_cast<uint32_t>(v);
    r.limbs_[i + limb_shift + 1] |= static_cast<uint32_t>(v >> 32);
  }
  r.trim();
  return r;
}

BigNat BigNat::operator>>(uint64_t bits) const {
  size_t limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  if (limb_shift >= limbs_.size()) return BigNat();
  BigNat r;
  r.limbs_.assign(limbs_.size() - limb_shift, 0);
  for (size_t i = 0; i < r.limbs_.size(); ++i) {
    uint64_t v = limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift && i + limb_shift + 1 < limbs_.size())
      v |= static_cast<uint64_t>(limbs_[i + limb_shift + 1]) << (32 - bit_shift);
    r.limbs_[i] = static_cast<uint32_t>(v);
  }
  r.trim();
  return r;
}

BigNat BigNat::divmod(const BigNat& a, const BigNat& b, BigNat& rem) {
  if (b.is_zero()) throw error("division by zero");
  if (cmp(a, b) < 0) {
    rem = a;
    return BigNat();
  }
  // Shift-subtract long division, one bit at a time.
  BigNat q, r;
  q.limbs_.assign(a.limbs_.size(), 0);
  size_t n = a.bit_length();
  for (size_t i = n; i-- > 0;) {
    r = r << 1;
    if (a.bit(i)) {
      if (r.limbs_.empty())
        r.limbs_.push_back(1);
      else
        r.limbs_[0] |= 1u;
    }
    if (cmp(r, b) >= 0) {
      r -= b;
      q.limbs_[i / 32] |= (1u << (i % 32));
    }
  }
  q.trim();
  rem = r;
  return q;
}

BigNat BigNat::gcd(BigNat a, BigNat b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  uint64_t shift = 0;
  while (a.is_even() && b.is_even()) {
    a = a >> 1;
    b = b >> 1;
    ++shift;
  }
  while (a.is_even()) a = a >> 1;
  while (!b.is_zero()) {
    while (b.is_even()) b = b >> 1;
    if (cmp(a, b) > 0) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

std::string BigNat::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  BigNat cur = *this;
  const BigNat chunk(1000000000u);
  while (!cur.is_zero()) {
    BigNat rem;
    cur = divmod(cur, chunk, rem);
    uint64_t r = rem.to_u64();
    for (int i = 0; i < 9; ++i) {
      out.push_back(static_cast<char>('0' + r % 10));
      r /= 10;
    }
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  std::reverse(out.begin(), out.end());
  return out;
}

BigNat BigNat::from_decimal(const std::string& s) {
  BigNat r;
  for (char c : s) {
    if (c < '0' || c > '9') throw error("invalid decimal digit in '" + s + "'");
    r = r * BigNat(10) + BigNat(static_cast<uint64_t>(c - '0'));
  }
  return r;
}

// ---------------------------------------------------------------- BigInt

BigInt::BigInt(int64_t v) {
  if (v > 0) {
    sign_ = 1;
    mag_ = BigNat(static_cast<uint64_t>(v));
  } else if (v < 0) {
    sign_ = -1;
    mag_ = BigNat(static_cast<uint64_t>(-(v + 1)) + 1);
  }
}

BigInt::BigInt(int sign, BigNat mag) : sign_(mag.is_zero() ? 0 : sign), mag_(std::move(mag)) {}

BigInt BigInt::operator-() const { return BigInt(-sign_, mag_); }

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  if (sign_ == o.sign_) return BigInt(sign_, mag_ + o.mag_);
  int c = BigNat::cmp(mag_, o.mag_);
  if (c == 0) return BigInt();
  if (c > 0) return BigInt(sign_, mag_ - o.mag_);
  return BigInt(o.sign_, o.mag_ - mag_);
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const { return BigInt(sign_ * o.sign_, mag_ * o.mag_); }

int BigInt::cmp(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
  int c = BigNat::cmp(a.mag_, b.mag_);
  return a.sign_ >= 0 ? c : -c;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  return (sign_ < 0 ? "-" : "") + mag_.to_string();
}

double BigInt::to_double() const { return sign_ * mag_.to_double(); }

// ---------------------------------------------------------------- BigRat

BigRat::BigRat(int64_t num, int64_t den) : num_(num), den_() {
  if (den == 0) throw error("zero denominator");
  if (den < 0) {
    num_ = -num_;
    den = -den;
  }
  den_ = BigNat(static_cast<uint64_t>(den));
  normalize();
}

BigRat::BigRat(BigInt num, BigNat den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw error("zero denominator");
  normalize();
}

void BigRat::normalize() {
  if (num_.is_zero()) {
    den_ = BigNat(1);
    return;
  }
  BigNat g = BigNat::gcd(num_.mag(), den_);
  if (!g.is_one()) {
    BigNat rem;
    BigNat n = BigNat::divmod(num_.mag(), g, rem);
    BigNat d = BigNat::divmod(den_, g, rem);
    num_ = BigInt(num_.sign(), std::move(n));
    den_ = std::move(d);
  }
}

BigRat BigRat::parse(const std::string& s) {
  size_t slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw error("empty rational component");
    if (t[0] == '-') return BigInt(-1, BigNat::from_decimal(t.substr(1)));
    return BigInt(1, BigNat::from_decimal(t));
  };
  if (slash == std::string::npos) return BigRat(parse_int(s), BigNat(1));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den.sign() <= 0) throw error("denominator must be positive in '" + s + "'");
  return BigRat(parse_int(s.substr(0, slash)), den.mag());
}

BigRat BigRat::operator+(const BigRat& o) const {
  return BigRat(num_ * BigInt(1, o.den_) + o.num_ * BigInt(1, den_), den_ * o.den_);
}

BigRat BigRat::operator-(const BigRat& o) const { return *this + (-o); }

BigRat BigRat::operator*(const BigRat& o) const {
  return BigRat(num_ * o.num_, den_ * o.den_);
}

BigRat BigRat::operator/(const BigRat& o) const {
  if (o.is_zero()) throw error("division by zero");
  return BigRat(num_ * BigInt(o.num_.sign(), BigNat(1)) * BigInt(1, o.den_),
                den_ * o.num_.mag());
}

BigRat BigRat::operator-() const {
  BigRat r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

int BigRat::cmp(const BigRat& a, const BigRat& b) {
  return BigInt::cmp(a.num_ * BigInt(1, b.den_), b.num_ * BigInt(1, a.den_));
}

std::string BigRat::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

double BigRat::to_double() const { return num_.to_double() / den_.to_double(); }

}  // namespace folspace
