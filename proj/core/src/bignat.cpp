#include "itl/bignat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace itl {

BigNat::BigNat(std::uint64_t v) {
  while (v) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    v >>= 32;
  }
}

void BigNat::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::pow2(std::uint64_t e) {
  BigNat r;
  r.limbs_.assign(e / 32 + 1, 0);
  r.limbs_.back() = 1u << (e % 32);
  return r;
}

BigNat BigNat::operator+(const BigNat& o) const {
  BigNat r;
  const auto& a = limbs_;
  const auto& b = o.limbs_;
  std::size_t n = std::max(a.size(), b.size());
  r.limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r.limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
  r.trim();
  return r;
}

BigNat BigNat::operator*(const BigNat& o) const {
  if (limbs_.empty() || o.limbs_.empty()) return BigNat();
  BigNat r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] +
                          static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                          carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

bool BigNat::operator<(const BigNat& o) const {
  if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
  }
  return false;
}

std::uint64_t BigNat::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::uint64_t bits = (limbs_.size() - 1) * 32ull;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

std::uint64_t BigNat::as_u64() const {
  if (!fits_u64()) throw std::overflow_error("BigNat does not fit in u64");
  std::uint64_t v = 0;
  if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) v |= limbs_[0];
  return v;
}

std::string BigNat::to_decimal() const {
  if (limbs_.empty()) return "0";
  std::vector<std::uint32_t> work = limbs_;
  std::string out;
  while (!work.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
      rem = cur % 1000000000ull;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    char buf[16];
    if (work.empty())
      std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(rem));
    else
      std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(rem));
    out.insert(0, buf);
  }
  return out;
}

double BigNat::log10_approx() const {
  if (limbs_.empty()) return 0.0;
  // top 64 bits as mantissa
  double mant = 0.0;
  std::uint64_t expo = 0;
  std::size_t n = limbs_.size();
  if (n == 1) {
    mant = limbs_[0];
  } else {
    mant = static_cast<double>(limbs_[n - 1]) * 4294967296.0 + limbs_[n - 2];
    expo = (n - 2) * 32ull;
  }
  return std::log10(mant) + static_cast<double>(expo) * std::log10(2.0);
}

std::string Bound::to_string() const {
  if (is_exact()) return exact->to_decimal();
  std::ostringstream os;
  os << "tower(" << expr << "; digits10~";
  if (digits10)
    os << *digits10;
  else
    os << "?";
  os << ")";
  return os.str();
}

bool Bound::at_least(std::uint64_t v) const {
  if (!is_exact()) return true;
  return BigNat(v) <= *exact;
}

namespace {

// Doubles carrying towers: value when small, else only log10.
struct Est {
  std::optional<double> value;   // absent when astronomically large
  std::optional<double> log10v;  // absent when even the log overflows
};

Est est_of(const BigNat& n) {
  Est e;
  e.log10v = n.log10_approx();
  if (n.bit_length() < 1000) e.value = std::pow(10.0, *e.log10v);
  return e;
}

Est est_mul(const Est& a, const Est& b) {
  Est r;
  if (a.log10v && b.log10v) {
    double l = *a.log10v + *b.log10v;
    if (std::isfinite(l)) r.log10v = l;
  }
  if (a.value && b.value) {
    double v = *a.value * *b.value;
    if (std::isfinite(v)) r.value = v;
  }
  return r;
}

Est est_add(const Est& a, const Est& b) {
  Est r;
  if (a.value && b.value) {
    double v = *a.value + *b.value;
    if (std::isfinite(v)) r.value = v;
  }
  if (a.log10v && b.log10v)
    r.log10v = std::max(*a.log10v, *b.log10v);
  if (r.value) r.log10v = std::log10(*r.value);
  return r;
}

// log10(x * 2^e) where e is given as an Est of the exponent.
Est est_mul_pow2(const Est& x, const Est& e) {
  Est r;
  if (e.value && x.log10v) {
    double l = *x.log10v + *e.value * std::log10(2.0);
    if (std::isfinite(l)) r.log10v = l;
    if (l < 300.0) r.value = std::pow(10.0, l);
  }
  return r;
}

struct BoundBuilder {
  Bound b;
  Est est;
};

BoundBuilder e_builder(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  BigNat cur(0);
  std::vector<BigNat> levels{cur};
  std::uint64_t i = 0;
  bool exact = true;
  for (; i < k; ++i) {
    if (!(cur.fits_u64() && cur.as_u64() <= cap)) {
      exact = false;
      break;
    }
    cur = cur + BigNat(n) * BigNat::pow2(cur.as_u64());
    levels.push_back(cur);
  }
  BoundBuilder r;
  if (exact) {
    r.b.exact = cur;
    r.est = est_of(cur);
    return r;
  }
  // carry the estimate through the remaining levels
  Est e = est_of(cur);
  Est nn = est_of(BigNat(n));
  for (; i < k; ++i) e = est_add(e, est_mul_pow2(nn, e));
  r.b.tower_levels = levels;
  std::ostringstream os;
  os << "E(" << n << "," << k << ")";
  r.b.expr = os.str();
  r.b.digits10 = e.log10v;
  r.est = e;
  return r;
}

BoundBuilder q_builder(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  BoundBuilder r;
  if (k == 0) {
    r.b.exact = BigNat(0);
    r.est = est_of(BigNat(0));
    return r;
  }
  BoundBuilder e = e_builder(n, k - 1, cap);
  BoundBuilder q = q_builder(n, k - 1, cap);
  if (e.b.is_exact() && q.b.is_exact() &&
      e.b.exact->bit_length() + q.b.exact->bit_length() <= cap) {
    r.b.exact = BigNat(1) + *e.b.exact * *q.b.exact;
    r.est = est_of(*r.b.exact);
    return r;
  }
  std::ostringstream os;
  os << "Q(" << n << "," << k << ")";
  r.b.expr = os.str();
  r.est = est_add(est_of(BigNat(1)), est_mul(e.est, q.est));
  r.b.digits10 = r.est.log10v;
  if (!e.b.tower_levels.empty()) r.b.tower_levels = e.b.tower_levels;
  if (!q.b.tower_levels.empty() && r.b.tower_levels.empty())
    r.b.tower_levels = q.b.tower_levels;
  return r;
}

}  // namespace

Bound e_number(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  return e_builder(n, k, cap).b;
}

Bound q_number(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  return q_builder(n, k, cap).b;
}

Bound fmp_bound(std::uint64_t s, std::uint64_t cap) {
  std::uint64_t p = 1ull << s;        // 2^s
  std::uint64_t p2 = 1ull << (s + 1);  // 2^{s+1}
  BoundBuilder qa = q_builder(p2, s + 3, cap);
  BoundBuilder eb = e_builder(p, s + 1, cap);
  BoundBuilder qc = q_builder(p, s + 1, cap);
  BoundBuilder ed = e_builder(p2, s + 3, cap);

  bool all_exact = qa.b.is_exact() && eb.b.is_exact() && qc.b.is_exact() &&
                   ed.b.is_exact();
  if (all_exact) {
    BigNat inner = BigNat(2) * *eb.b.exact +
                   BigNat(s) * *qc.b.exact * *ed.b.exact;
    if (qa.b.exact->bit_length() + inner.bit_length() <= cap) {
      Bound r;
      r.exact = *qa.b.exact * inner;
      return r;
    }
  }
  Bound r;
  std::ostringstream os;
  os << "Q(" << p2 << "," << (s + 3) << ")*(2*E(" << p << "," << (s + 1)
     << ")+" << s << "*Q(" << p << "," << (s + 1) << ")*E(" << p2 << ","
     << (s + 3) << "))";
  r.expr = os.str();
  Est inner = est_add(est_mul(est_of(BigNat(2)), eb.est),
                      est_mul(est_of(BigNat(s)), est_mul(qc.est, ed.est)));
  Est total = est_mul(qa.est, inner);
  r.digits10 = total.log10v;
  // keep the deepest exact tower prefix for inspection
  for (const BoundBuilder* bb : {&ed, &qa, &eb, &qc}) {
    if (!bb->b.tower_levels.empty()) {
      r.tower_levels = bb->b.tower_levels;
      break;
    }
  }
  return r;
}

}  // namespace itl
