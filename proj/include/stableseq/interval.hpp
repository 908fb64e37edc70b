#ifndef STABLESEQ_INTERVAL_HPP
#define STABLESEQ_INTERVAL_HPP

// Closed intervals of MPFR floats with outward (directed) rounding.
//
// Every transcendental quantity in the library is carried as an Interval
// that is guaranteed to contain the true real value. An upper bound is
// reported through hi(), a lower bound through lo(), so rounding can never
// turn a valid inequality into a reported violation.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "stableseq/error.hpp"

namespace stableseq {

namespace detail {
inline mpfr_prec_t &working_precision_ref() {
  thread_local mpfr_prec_t prec = 128;
  return prec;
}
} // namespace detail

/// Mantissa bits used for newly created intervals on this thread.
inline mpfr_prec_t working_precision() { return detail::working_precision_ref(); }

inline void set_working_precision(mpfr_prec_t bits) {
  if (bits < 64 || bits > 100000)
    throw InvalidArgument("working precision must be in [64, 100000] bits");
  detail::working_precision_ref() = bits;
}

/// RAII override of the working precision.
class ScopedPrecision {
public:
  explicit ScopedPrecision(mpfr_prec_t bits) : saved_(working_precision()) {
    set_working_precision(bits);
  }
  ~ScopedPrecision() { detail::working_precision_ref() = saved_; }
  ScopedPrecision(const ScopedPrecision &) = delete;
  ScopedPrecision &operator=(const ScopedPrecision &) = delete;

private:
  mpfr_prec_t saved_;
};

class Interval {
public:
  Interval() : Interval(0L) {}

  Interval(long v) { // NOLINT(google-explicit-constructor)
    init();
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
  }
  Interval(int v) : Interval(static_cast<long>(v)) {} // NOLINT
  Interval(unsigned long v) { // NOLINT
    init();
    mpfr_set_ui(lo_, v, MPFR_RNDD);
    mpfr_set_ui(hi_, v, MPFR_RNDU);
  }
  Interval(unsigned v) : Interval(static_cast<unsigned long>(v)) {} // NOLINT
  Interval(long long v) : Interval(mpz_class(std::to_string(v))) {} // NOLINT
  Interval(unsigned long long v) : Interval(mpz_class(std::to_string(v))) {} // NOLINT

  explicit Interval(double v) {
    init();
    mpfr_set_d(lo_, v, MPFR_RNDD);
    mpfr_set_d(hi_, v, MPFR_RNDU);
  }
  Interval(const mpz_class &v) { // NOLINT
    init();
    mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
  }
  Interval(const mpq_class &v) { // NOLINT
    init();
    mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
  }

  /// Hull of two rationals; lo must not exceed hi.
  static Interval hull(const mpq_class &lo, const mpq_class &hi) {
    Interval r;
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    if (mpfr_cmp(r.lo_, r.hi_) > 0)
      throw InvalidArgument("Interval::hull: lo > hi");
    return r;
  }

  Interval(const Interval &o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval &&o) noexcept {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval &operator=(Interval o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  const __mpfr_struct *lo_ptr() const { return lo_; }
  const __mpfr_struct *hi_ptr() const { return hi_; }

  double lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const {
    mpfr_t m;
    mpfr_init2(m, mpfr_get_prec(lo_) + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double r = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return r;
  }

  /// Upper endpoint as an exact rational.
  mpq_class hi_exact() const { return to_rational(hi_); }
  mpq_class lo_exact() const { return to_rational(lo_); }

  /// Width hi - lo, rounded up.
  double width() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
  }

  bool contains(const mpq_class &q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
  }
  bool overlaps(const Interval &o) const {
    return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
  }

  /// Decimal rendering of the midpoint with the given significant digits.
  std::string str(int digits = 17) const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.*g", digits, mid());
    return buf;
  }

  friend Interval operator-(const Interval &a) {
    Interval r;
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator+(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval &a, const Interval &b) {
    Interval r;
    const __mpfr_struct *xs[2] = {a.lo_, a.hi_};
    const __mpfr_struct *ys[2] = {b.lo_, b.hi_};
    mpfr_t tmp;
    mpfr_init2(tmp, working_precision());
    bool first = true;
    for (auto x : xs)
      for (auto y : ys) {
        mpfr_mul(tmp, x, y, MPFR_RNDD);
        if (first || mpfr_cmp(tmp, r.lo_) < 0)
          mpfr_set(r.lo_, tmp, MPFR_RNDD);
        mpfr_mul(tmp, x, y, MPFR_RNDU);
        if (first || mpfr_cmp(tmp, r.hi_) > 0)
          mpfr_set(r.hi_, tmp, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(tmp);
    return r;
  }
  friend Interval operator/(const Interval &a, const Interval &b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
      throw InvalidArgument("Interval division by an interval containing 0");
    Interval r;
    const __mpfr_struct *xs[2] = {a.lo_, a.hi_};
    const __mpfr_struct *ys[2] = {b.lo_, b.hi_};
    mpfr_t tmp;
    mpfr_init2(tmp, working_precision());
    bool first = true;
    for (auto x : xs)
      for (auto y : ys) {
        mpfr_div(tmp, x, y, MPFR_RNDD);
        if (first || mpfr_cmp(tmp, r.lo_) < 0)
          mpfr_set(r.lo_, tmp, MPFR_RNDD);
        mpfr_div(tmp, x, y, MPFR_RNDU);
        if (first || mpfr_cmp(tmp, r.hi_) > 0)
          mpfr_set(r.hi_, tmp, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(tmp);
    return r;
  }
  Interval &operator+=(const Interval &o) { return *this = *this + o; }
  Interval &operator-=(const Interval &o) { return *this = *this - o; }
  Interval &operator*=(const Interval &o) { return *this = *this * o; }
  Interval &operator/=(const Interval &o) { return *this = *this / o; }

  // Monotone increasing unary functions: apply endpoint-wise.
  friend Interval log2(const Interval &a) { return a.positive_map(mpfr_log2, "log2"); }
  friend Interval log(const Interval &a) { return a.positive_map(mpfr_log, "log"); }
  friend Interval exp(const Interval &a) { return a.monotone_map(mpfr_exp); }
  friend Interval expm1(const Interval &a) { return a.monotone_map(mpfr_expm1); }
  friend Interval log1p(const Interval &a) {
    if (mpfr_cmp_si(a.lo_, -1) <= 0)
      throw InvalidArgument("log1p of an interval reaching -1");
    return a.monotone_map(mpfr_log1p);
  }
  friend Interval exp2(const Interval &a) { return a.monotone_map(mpfr_exp2); }
  friend Interval sqrt(const Interval &a) {
    if (mpfr_sgn(a.lo_) < 0)
      throw InvalidArgument("sqrt of a negative interval");
    return a.monotone_map(mpfr_sqrt);
  }

  /// a^n for integer n >= 0.
  friend Interval pow(const Interval &a, unsigned long n) {
    if (n == 0)
      return Interval(1L);
    if (mpfr_sgn(a.lo_) >= 0) {
      Interval r;
      mpfr_pow_ui(r.lo_, a.lo_, n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_, a.hi_, n, MPFR_RNDU);
      return r;
    }
    // Sign-indefinite base: square-and-multiply keeps the enclosure valid.
    Interval base = a, r(1L);
    while (n) {
      if (n & 1UL)
        r *= base;
      n >>= 1;
      if (n)
        base *= base;
    }
    return r;
  }

  friend Interval min(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval max(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  /// Enclosure of e (Euler's number).
  static Interval e() { return exp(Interval(1L)); }
  static Interval ln2() { return log(Interval(2L)); }

  /// Enclosure of ln(n!) for a non-negative integer n.
  static Interval log_factorial(const mpz_class &n) {
    if (n < 0)
      throw InvalidArgument("log_factorial of a negative integer");
    if (n <= 1)
      return Interval(0L);
    Interval r;
    mpfr_t x;
    mpfr_init2(x, std::max<mpfr_prec_t>(working_precision(),
                                        static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2) + 2)));
    mpz_class np1 = n + 1;
    mpfr_set_z(x, np1.get_mpz_t(), MPFR_RNDN); // exact at this precision
    mpfr_lngamma(r.lo_, x, MPFR_RNDD);
    mpfr_lngamma(r.hi_, x, MPFR_RNDU);
    mpfr_clear(x);
    return r;
  }

  /// Smallest integer >= every point of the interval.
  mpz_class ceil_hi() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDU);
    return z;
  }
  mpz_class floor_lo() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
    return z;
  }

  friend bool certainly_less(const Interval &a, const Interval &b) {
    return mpfr_cmp(a.hi_, b.lo_) < 0;
  }
  friend bool certainly_le(const Interval &a, const Interval &b) {
    return mpfr_cmp(a.hi_, b.lo_) <= 0;
  }
  friend bool possibly_less(const Interval &a, const Interval &b) {
    return mpfr_cmp(a.lo_, b.hi_) < 0;
  }

private:
  void init() {
    mpfr_init2(lo_, working_precision());
    mpfr_init2(hi_, working_precision());
  }

  template <class F> Interval monotone_map(F f) const {
    Interval r;
    f(r.lo_, lo_, MPFR_RNDD);
    f(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  template <class F> Interval positive_map(F f, const char *name) const {
    if (mpfr_sgn(lo_) <= 0)
      throw InvalidArgument(std::string(name) + " of an interval reaching 0");
    return monotone_map(f);
  }

  static mpq_class to_rational(const __mpfr_struct *x) {
    if (!mpfr_number_p(x))
      throw Error("non-finite interval endpoint");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e >= 0)
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    q.canonicalize();
    return q;
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

} // namespace stableseq

#endif // STABLESEQ_INTERVAL_HPP
