#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fgap {

using u64 = std::uint64_t;

inline constexpr u64 kSieveMax = 0x7fffffffffffffffULL;
inline constexpr u64 kDefaultSegment = u64{1} << 20;
inline constexpr u64 kDefaultMemoryCap = u64{1} << 32;  // numbers per segment

// Primality of every integer in [lo, hi), odd-only bitset.
class SieveSegment {
public:
    SieveSegment() = default;
    SieveSegment(u64 lo, u64 hi, std::vector<std::uint64_t> odd_bits);

    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    bool is_prime(u64 n) const;
    u64 count() const;
    std::vector<u64> primes() const;

    // Visits primes in increasing order.
    template <class Fn>
    void for_each_prime(Fn&& fn) const {
        if (lo_ <= 2 && 2 < hi_) fn(u64{2});
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                const int b = __builtin_ctzll(word);
                word &= word - 1;
                const u64 n = base_ + 2 * (64 * static_cast<u64>(w) + static_cast<u64>(b));
                if (n >= hi_) return;
                fn(n);
            }
        }
    }

private:
    u64 lo_ = 0, hi_ = 0;
    u64 base_ = 1;  // first odd number >= lo; bit i stands for base_ + 2i
    std::vector<std::uint64_t> bits_;
};

SieveSegment sieve(u64 lo, u64 hi, u64 memory_cap = kDefaultMemoryCap);

// Primes up to at least `limit`, cached across calls; the snapshot stays valid while held.
std::shared_ptr<const std::vector<std::uint32_t>> small_primes(u64 limit);

bool is_prime(u64 n);
u64 next_prime(u64 n);  // least prime >= n
u64 prime_count(u64 lo, u64 hi);  // primes in [lo, hi)

struct GapRecord {
    u64 p = 0, q = 0, gap = 0;
    double cramer_ratio = 0.0;  // gap / (sqrt p log p)
    double log_sq_ratio = 0.0;  // gap / (log p)^2
};
GapRecord make_gap(u64 p, u64 q);

// Running state of a gap scan; serialisable so long scans can resume.
struct GapScanState {
    u64 next_lo = 2;   // first number not yet sieved
    u64 last_prime = 0;
    u64 primes_seen = 0;
    GapRecord max_cramer;   // over p >= 5
    GapRecord max_gap;
    GapRecord max_log_sq;   // over p >= 11
    u64 log_sq_violations = 0;  // p >= 11 with gap >= (log p)^2
    u64 cramer_violations = 0;  // p >= 5 with gap >= (22/25) sqrt p log p
    GapRecord first_log_sq_violation;
    GapRecord first_cramer_violation;
};

nlohmann::json to_json(const GapScanState& s);
GapScanState gap_state_from_json(const nlohmann::json& j);

struct GapScanOptions {
    u64 segment = kDefaultSegment;
    unsigned threads = 0;        // 0: process default
    u64 checkpoint_every = 0;    // segments between checkpoint callbacks (0: never)
    std::function<void(const GapScanState&)> checkpoint;
};

// Consecutive-prime gaps for all primes p <= N (q may exceed N).
GapScanState scan_gaps(u64 N, GapScanState state = {}, const GapScanOptions& opt = {});

GapRecord max_cramer_ratio(u64 N);  // over primes 5 <= p <= N
GapRecord max_gap_record(u64 N);    // largest gap with p <= N (first occurrence)

std::string gap_csv(const std::vector<GapRecord>& rows);

struct IntervalCheck {
    double x = 0.0, c = 0.0, length = 0.0;
    u64 lo = 0, hi = 0;  // integers in [x, x + c sqrt x log x]
    bool found = false;
    u64 witness = 0;     // least prime in the window
};

IntervalCheck verify_interval(double x, double c);

enum class WindowKind { sqrt_window, cramer_window };
const char* to_string(WindowKind k);

struct WindowStat {
    double x = 0.0;
    WindowKind kind = WindowKind::sqrt_window;
    double c = 1.0;
    u64 prime_count = 0;  // pi(x + y) - pi(x)
    double normalized = 0.0;
    double running_max = 0.0;
};

WindowStat window_stat(double x, WindowKind kind, double c = 1.0);
// Geometric grid of `samples` points in [x_lo, x_hi].
std::vector<WindowStat> bt_ratio_scan(double x_lo, double x_hi, int samples, WindowKind kind = WindowKind::sqrt_window,
                                      double c = 1.0);
std::string window_csv(const std::vector<WindowStat>& rows);

// [x, x + c sqrt x log x] = [a e^{-2 pi D}, a e^{2 pi D}].
struct WindowParameters {
    double x = 0.0, c = 0.0;
    double a = 0.0;
    double Delta = 0.0;
    double delta = 0.0;  // 2 pi Delta
};
WindowParameters window_parameters(double x, double c);

struct PrimePower {
    u64 n = 0, p = 0;
    int k = 1;
};

// All p^k (k >= min_k) in [lo, hi].
std::vector<PrimePower> prime_powers(u64 lo, u64 hi, int min_k = 1);

struct PrimePowerTail {
    double a = 0.0, delta = 0.0;
    double lo = 0.0, hi = 0.0;  // a e^{-2 delta}, a e^{2 delta}
    double value = 0.0;         // sum over p^k, k >= 2, of log p / sqrt(p^k)
    std::vector<PrimePower> terms;
    double counting_bound = 0.0;  // bound from counting k-th powers in the window
    double closed_bound = 0.0;    // 2 (log a + 1)^3 / (log 2 sqrt a)
};

PrimePowerTail prime_power_tail(double a, double delta);
double closed_prime_power_bound(double a);

}  // namespace fgap
