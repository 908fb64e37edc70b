#ifndef STABLESEQ_COMBINATORICS_HPP
#define STABLESEQ_COMBINATORICS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <deque>
#include <mutex>
#include <vector>

#include "stableseq/error.hpp"
#include "stableseq/interval.hpp"

namespace stableseq {

/// Pascal triangle of arbitrary-precision binomials, grown on demand.
///
/// Rows live in a deque so references handed out stay valid while the
/// table grows. Growth and row lookup are serialized; hot loops should
/// fetch a row once and index it directly.
class PascalTable {
public:
  static constexpr std::uint64_t kMaxRows = 1u << 10;

  /// C(n, k); zero when k < 0 or k > n.
  const mpz_class &operator()(std::int64_t n, std::int64_t k) {
    static const mpz_class zero = 0;
    if (n < 0 || k < 0 || k > n)
      return zero;
    return row(static_cast<std::uint64_t>(n))[static_cast<std::size_t>(k)];
  }

  const std::vector<mpz_class> &row(std::uint64_t n) {
    if (n >= kMaxRows)
      throw CapExceeded("Pascal table row beyond cap");
    std::lock_guard<std::mutex> lock(mutex_);
    grow_to(n);
    return rows_[static_cast<std::size_t>(n)];
  }

  std::size_t rows_built() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return rows_.size();
  }

private:
  void grow_to(std::uint64_t n) {
    while (rows_.size() <= n) {
      std::vector<mpz_class> next(rows_.size() + 1);
      next.front() = 1;
      next.back() = 1;
      if (!rows_.empty()) {
        const auto &prev = rows_.back();
        for (std::size_t k = 1; k + 1 < next.size(); ++k)
          next[k] = prev[k - 1] + prev[k];
      }
      rows_.push_back(std::move(next));
    }
  }

  mutable std::mutex mutex_;
  std::deque<std::vector<mpz_class>> rows_;
};

/// Process-wide table shared by all modules.
inline PascalTable &pascal() {
  static PascalTable table;
  return table;
}

/// Exact binomial C(n, k) for any size; small n come from the shared table.
inline mpz_class binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n)
    return 0;
  if (n < 256)
    return pascal()(n, k);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Enclosure of log2 of a positive integer or rational.
inline Interval log2_exact(const mpq_class &q) {
  if (q <= 0)
    throw InvalidArgument("log2 of a non-positive number");
  return log2(Interval(q));
}

/// Enclosure of log2 C(n, k) for 0 <= k <= n, exact-then-log for
/// moderate n and via log-gamma for astronomically large n.
inline Interval log2_binomial(const mpz_class &n, const mpz_class &k) {
  if (k < 0 || k > n)
    throw InvalidArgument("log2_binomial: k outside [0, n]");
  if (n < 4096)
    return log2_exact(mpq_class(binomial(n.get_si(), k.get_si())));
  Interval ln = Interval::log_factorial(n) - Interval::log_factorial(k) -
                Interval::log_factorial(n - k);
  return ln / Interval::ln2();
}

inline mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpq_class pow_q(const mpq_class &base, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

/// Ceiling of a rational, as an integer.
inline mpz_class ceil_q(const mpq_class &q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}
inline mpz_class floor_q(const mpq_class &q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

} // namespace stableseq

#endif // STABLESEQ_COMBINATORICS_HPP
