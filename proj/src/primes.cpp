#include "fgap/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fgap/errors.hpp"
#include "fgap/parallel.hpp"

namespace fgap {

namespace {

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// p^k, saturating at u64 max.
u64 ipow_sat(u64 p, int k) {
    u64 r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > std::numeric_limits<u64>::max() / p) return std::numeric_limits<u64>::max();
        r *= p;
    }
    return r;
}

// Largest r with r^k <= n.
u64 iroot(u64 n, int k) {
    if (k == 1) return n;
    u64 r = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
    while (r > 0 && ipow_sat(r, k) > n) --r;
    while (ipow_sat(r + 1, k) <= n) ++r;
    return r;
}

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// sieve

SieveSegment::SieveSegment(u64 lo, u64 hi, std::vector<std::uint64_t> odd_bits)
    : lo_(lo), hi_(hi), base_(lo | 1), bits_(std::move(odd_bits)) {}

bool SieveSegment::is_prime(u64 n) const {
    if (n < lo_ || n >= hi_) throw RangeError("SieveSegment: " + std::to_string(n) + " outside segment");
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    const u64 i = (n - base_) / 2;
    return (bits_[i / 64] >> (i % 64)) & 1u;
}

u64 SieveSegment::count() const {
    u64 c = (lo_ <= 2 && 2 < hi_) ? 1 : 0;
    for (auto w : bits_) c += static_cast<u64>(__builtin_popcountll(w));
    return c;
}

std::vector<u64> SieveSegment::primes() const {
    std::vector<u64> out;
    for_each_prime([&](u64 p) { out.push_back(p); });
    return out;
}

std::shared_ptr<const std::vector<std::uint32_t>> small_primes(u64 limit) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<std::uint32_t>> cache;
    static u64 sieved_to = 0;
    std::lock_guard<std::mutex> lock(mutex);
    if (cache && limit <= sieved_to) return cache;
    if (limit > std::numeric_limits<std::uint32_t>::max()) throw RangeError("small_primes: limit too large");
    const u64 n = std::max<u64>({limit, 2 * sieved_to, 1 << 16});
    std::vector<bool> comp(n + 1, false);
    auto primes = std::make_shared<std::vector<std::uint32_t>>();
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes->push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    cache = primes;
    sieved_to = n;
    return cache;
}

SieveSegment sieve(u64 lo, u64 hi, u64 memory_cap) {
    if (lo < 2 || hi <= lo) throw DomainError("sieve: need 2 <= lo < hi");
    if (hi - 1 > kSieveMax) throw RangeError("sieve: hi beyond 2^63 - 1");
    if (hi - lo > memory_cap) throw RangeError("sieve: segment exceeds the memory cap");
    const u64 base = lo | 1;
    const u64 n_odd = hi > base ? (hi - base + 1) / 2 : 0;
    std::vector<std::uint64_t> bits((n_odd + 63) / 64, ~std::uint64_t{0});
    if (n_odd % 64) bits.back() = (std::uint64_t{1} << (n_odd % 64)) - 1;
    const u64 root = isqrt(hi - 1);
    const auto sp = small_primes(std::max<u64>(root, 2));
    for (std::uint32_t p32 : *sp) {
        const u64 p = p32;
        if (p > root) break;
        if (p == 2) continue;
        u64 start = std::max(p * p, (base + p - 1) / p * p);
        if (start % 2 == 0) start += p;
        for (u64 m = start; m < hi; m += 2 * p) {
            const u64 i = (m - base) / 2;
            bits[i / 64] &= ~(std::uint64_t{1} << (i % 64));
        }
    }
    if (base == 1 && n_odd > 0) bits[0] &= ~std::uint64_t{1};
    return SieveSegment(lo, hi, std::move(bits));
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    using u128 = unsigned __int128;
    auto mulmod = [n](u64 a, u64 b) { return static_cast<u64>(static_cast<u128>(a) * b % n); };
    auto powmod = [&](u64 b, u64 e) {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    u64 lo = std::max<u64>(n, 2);
    u64 len = 2048;
    for (;;) {
        if (lo > kSieveMax - len) throw RangeError("next_prime: beyond sieve range");
        const u64 hi = lo + len;
        const auto seg = sieve(lo, hi);
        u64 found = 0;
        seg.for_each_prime([&](u64 p) {
            if (!found) found = p;
        });
        if (found) return found;
        lo = hi;
        len *= 2;
    }
}

u64 prime_count(u64 lo, u64 hi) {
    lo = std::max<u64>(lo, 2);
    if (hi <= lo) return 0;
    const u64 chunk = u64{1} << 24;
    u64 total = 0;
    for (u64 s = lo; s < hi; s += std::min(chunk, hi - s)) total += sieve(s, std::min(hi, s + chunk)).count();
    return total;
}

// ---------------------------------------------------------------------------
// gaps

GapRecord make_gap(u64 p, u64 q) {
    GapRecord g;
    g.p = p;
    g.q = q;
    g.gap = q - p;
    const double lp = std::log(static_cast<double>(p));
    g.cramer_ratio = static_cast<double>(g.gap) / (std::sqrt(static_cast<double>(p)) * lp);
    g.log_sq_ratio = static_cast<double>(g.gap) / (lp * lp);
    return g;
}

namespace {

constexpr double kCramerC = 22.0 / 25.0;

void record_gap(GapScanState& s, u64 p, u64 q) {
    const GapRecord g = make_gap(p, q);
    if (g.gap > s.max_gap.gap) s.max_gap = g;
    if (p >= 5) {
        if (g.cramer_ratio > s.max_cramer.cramer_ratio) s.max_cramer = g;
        if (g.cramer_ratio >= kCramerC) {
            if (s.cramer_violations++ == 0) s.first_cramer_violation = g;
        }
    }
    if (p >= 11) {
        if (g.log_sq_ratio > s.max_log_sq.log_sq_ratio) s.max_log_sq = g;
        if (g.log_sq_ratio >= 1.0) {
            if (s.log_sq_violations++ == 0) s.first_log_sq_violation = g;
        }
    }
}

struct SegmentSummary {
    u64 first = 0, last = 0;
    GapScanState inner;  // gaps between primes of this segment
};

// Merge the records of a later segment; earlier records win ties.
void absorb(GapScanState& s, const GapScanState& t) {
    if (t.max_gap.gap > s.max_gap.gap) s.max_gap = t.max_gap;
    if (t.max_cramer.cramer_ratio > s.max_cramer.cramer_ratio) s.max_cramer = t.max_cramer;
    if (t.max_log_sq.log_sq_ratio > s.max_log_sq.log_sq_ratio) s.max_log_sq = t.max_log_sq;
    if (s.cramer_violations == 0 && t.cramer_violations > 0) s.first_cramer_violation = t.first_cramer_violation;
    if (s.log_sq_violations == 0 && t.log_sq_violations > 0) s.first_log_sq_violation = t.first_log_sq_violation;
    s.cramer_violations += t.cramer_violations;
    s.log_sq_violations += t.log_sq_violations;
    s.primes_seen += t.primes_seen;
}

nlohmann::json gap_json(const GapRecord& g) {
    return {{"p", g.p}, {"q", g.q}, {"gap", g.gap}, {"cramer_ratio", g.cramer_ratio}, {"log_sq_ratio", g.log_sq_ratio}};
}

GapRecord gap_from_json(const nlohmann::json& j) {
    GapRecord g;
    g.p = j.at("p").get<u64>();
    g.q = j.at("q").get<u64>();
    g.gap = j.at("gap").get<u64>();
    g.cramer_ratio = j.at("cramer_ratio").get<double>();
    g.log_sq_ratio = j.at("log_sq_ratio").get<double>();
    return g;
}

}  // namespace

nlohmann::json to_json(const GapScanState& s) {
    return {{"next_lo", s.next_lo},
            {"last_prime", s.last_prime},
            {"primes_seen", s.primes_seen},
            {"running_max",
             {{"cramer", gap_json(s.max_cramer)}, {"gap", gap_json(s.max_gap)}, {"log_sq", gap_json(s.max_log_sq)}}},
            {"log_sq_violations", s.log_sq_violations},
            {"cramer_violations", s.cramer_violations},
            {"first_log_sq_violation", gap_json(s.first_log_sq_violation)},
            {"first_cramer_violation", gap_json(s.first_cramer_violation)}};
}

GapScanState gap_state_from_json(const nlohmann::json& j) {
    GapScanState s;
    s.next_lo = j.at("next_lo").get<u64>();
    s.last_prime = j.at("last_prime").get<u64>();
    s.primes_seen = j.at("primes_seen").get<u64>();
    const auto& rm = j.at("running_max");
    s.max_cramer = gap_from_json(rm.at("cramer"));
    s.max_gap = gap_from_json(rm.at("gap"));
    s.max_log_sq = gap_from_json(rm.at("log_sq"));
    s.log_sq_violations = j.at("log_sq_violations").get<u64>();
    s.cramer_violations = j.at("cramer_violations").get<u64>();
    s.first_log_sq_violation = gap_from_json(j.at("first_log_sq_violation"));
    s.first_cramer_violation = gap_from_json(j.at("first_cramer_violation"));
    return s;
}

GapScanState scan_gaps(u64 N, GapScanState state, const GapScanOptions& opt) {
    if (N >= kSieveMax) throw RangeError("scan_gaps: N beyond sieve range");
    if (opt.segment == 0) throw DomainError("scan_gaps: segment size must be positive");
    const unsigned threads = opt.threads ? opt.threads : default_threads();
    const u64 end = N + 1;
    const u64 batch = std::max<u64>(4, 4 * threads);
    u64 done_segments = 0;
    while (state.next_lo < end) {
        std::vector<u64> starts;
        for (u64 s = std::max<u64>(state.next_lo, 2); s < end && starts.size() < batch; s += opt.segment)
            starts.push_back(s);
        if (starts.empty()) break;
        std::vector<SegmentSummary> parts(starts.size());
        parallel_for(
            starts.size(),
            [&](std::size_t i) {
                const u64 lo = starts[i], hi = std::min(end, lo + opt.segment);
                auto& part = parts[i];
                sieve(lo, hi).for_each_prime([&](u64 p) {
                    if (part.first == 0) part.first = p;
                    else record_gap(part.inner, part.last, p);
                    part.last = p;
                    ++part.inner.primes_seen;
                });
            },
            threads);
        for (const auto& part : parts) {
            if (part.first == 0) continue;
            if (state.last_prime && part.first > state.last_prime) record_gap(state, state.last_prime, part.first);
            absorb(state, part.inner);
            state.last_prime = part.last;
        }
        state.next_lo = std::min(end, starts.back() + opt.segment);
        done_segments += starts.size();
        if (opt.checkpoint && opt.checkpoint_every && done_segments % opt.checkpoint_every < starts.size())
            opt.checkpoint(state);
    }
    // Close the last gap with the first prime beyond N.
    if (state.last_prime && state.last_prime <= N) {
        const u64 q = next_prime(state.last_prime + 1);
        record_gap(state, state.last_prime, q);
        state.last_prime = q;
    }
    return state;
}

GapRecord max_cramer_ratio(u64 N) {
    if (N < 5) throw DomainError("max_cramer_ratio: N must be at least 5");
    return scan_gaps(N).max_cramer;
}

GapRecord max_gap_record(u64 N) {
    if (N < 2) throw DomainError("max_gap_record: N must be at least 2");
    return scan_gaps(N).max_gap;
}

std::string gap_csv(const std::vector<GapRecord>& rows) {
    std::ostringstream os;
    os << "p,q,gap,cramer_ratio,log_sq_ratio\n";
    for (const auto& g : rows)
        os << g.p << ',' << g.q << ',' << g.gap << ',' << fmt(g.cramer_ratio, 6) << ',' << fmt(g.log_sq_ratio, 6) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// windows

IntervalCheck verify_interval(double x, double c) {
    if (!(x >= 4.0)) throw DomainError("verify_interval: x must be at least 4");
    if (!(c > 0.0)) throw DomainError("verify_interval: c must be positive");
    IntervalCheck r;
    r.x = x;
    r.c = c;
    r.length = c * std::sqrt(x) * std::log(x);
    const double top = x + r.length;
    if (!(top < 9.2e18)) throw RangeError("verify_interval: window beyond sieve range");
    r.lo = static_cast<u64>(std::ceil(x));
    r.hi = static_cast<u64>(std::floor(top));
    const u64 chunk = 1 << 16;
    for (u64 s = r.lo; s <= r.hi && !r.found; s += chunk) {
        const u64 e = std::min(r.hi + 1, s + chunk);
        sieve(s, e).for_each_prime([&](u64 p) {
            if (!r.found) {
                r.found = true;
                r.witness = p;
            }
        });
    }
    return r;
}

const char* to_string(WindowKind k) { return k == WindowKind::sqrt_window ? "sqrt" : "cramer"; }

WindowStat window_stat(double x, WindowKind kind, double c) {
    if (!(x >= 2.0)) throw DomainError("window_stat: x must be at least 2");
    WindowStat w;
    w.x = x;
    w.kind = kind;
    w.c = c;
    const double sx = std::sqrt(x), lx = std::log(x);
    const double y = kind == WindowKind::sqrt_window ? sx : c * sx * lx;
    if (!(x + y < 9.2e18)) throw RangeError("window_stat: window beyond sieve range");
    // pi(x + y) - pi(x): integers in (x, x + y]
    const u64 lo = static_cast<u64>(std::floor(x)) + 1, hi = static_cast<u64>(std::floor(x + y));
    w.prime_count = hi >= lo ? prime_count(lo, hi + 1) : 0;
    w.normalized = kind == WindowKind::sqrt_window ? static_cast<double>(w.prime_count) * lx / sx
                                                   : static_cast<double>(w.prime_count) / sx;
    w.running_max = w.normalized;
    return w;
}

std::vector<WindowStat> bt_ratio_scan(double x_lo, double x_hi, int samples, WindowKind kind, double c) {
    if (!(x_lo >= 100.0) || !(x_hi >= x_lo)) throw DomainError("bt_ratio_scan: need 100 <= x_lo <= x_hi");
    if (samples < 1) throw DomainError("bt_ratio_scan: samples must be positive");
    std::vector<WindowStat> out(static_cast<std::size_t>(samples));
    parallel_for(out.size(), [&](std::size_t i) {
        const double t = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        const double x = i + 1 == out.size() && samples > 1 ? x_hi : x_lo * std::pow(x_hi / x_lo, t);
        out[i] = window_stat(x, kind, c);
    });
    double run = 0.0;
    for (auto& w : out) {
        run = std::max(run, w.normalized);
        w.running_max = run;
    }
    return out;
}

std::string window_csv(const std::vector<WindowStat>& rows) {
    std::ostringstream os;
    os << "x,window,count,normalized\n";
    for (const auto& w : rows)
        os << fmt(w.x, 17) << ',' << to_string(w.kind) << ',' << w.prime_count << ',' << fmt(w.normalized, 6) << '\n';
    return os.str();
}

WindowParameters window_parameters(double x, double c) {
    if (!(x > 1.0) || !(c > 0.0)) throw DomainError("window_parameters: need x > 1 and c > 0");
    WindowParameters w;
    w.x = x;
    w.c = c;
    const double u = c * std::log(x) / std::sqrt(x);
    w.Delta = std::log1p(u) / (4.0 * std::numbers::pi);
    w.a = x * std::sqrt(1.0 + u);
    w.delta = 2.0 * std::numbers::pi * w.Delta;
    return w;
}

// ---------------------------------------------------------------------------
// prime powers

std::vector<PrimePower> prime_powers(u64 lo, u64 hi, int min_k) {
    std::vector<PrimePower> out;
    lo = std::max<u64>(lo, 2);
    if (hi < lo) return out;
    for (int k = std::max(1, min_k); ipow_sat(2, k) <= hi; ++k) {
        u64 plo = iroot(lo - 1, k) + 1;  // least p with p^k >= lo
        const u64 phi = iroot(hi, k);
        plo = std::max<u64>(plo, 2);
        if (phi < plo) continue;
        sieve(plo, phi + 1).for_each_prime([&](u64 p) { out.push_back({ipow_sat(p, k), p, k}); });
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    return out;
}

double closed_prime_power_bound(double a) {
    if (!(a > 1.0)) throw DomainError("closed_prime_power_bound: a must exceed 1");
    const double l = std::log(a) + 1.0;
    return 2.0 * l * l * l / (std::log(2.0) * std::sqrt(a));
}

PrimePowerTail prime_power_tail(double a, double delta) {
    if (!(a > 1.0) || !(delta > 0.0)) throw DomainError("prime_power_tail: need a > 1 and delta > 0");
    PrimePowerTail t;
    t.a = a;
    t.delta = delta;
    t.lo = a * std::exp(-2.0 * delta);
    t.hi = a * std::exp(2.0 * delta);
    if (!(t.hi < 9.2e18)) throw RangeError("prime_power_tail: window beyond sieve range");
    const u64 lo = static_cast<u64>(std::ceil(std::max(t.lo, 2.0))), hi = static_cast<u64>(std::floor(t.hi));
    if (hi >= lo) t.terms = prime_powers(lo, hi, 2);
    double s = 0.0;
    for (const auto& pp : t.terms)
        s += std::log(static_cast<double>(pp.p)) / std::sqrt(static_cast<double>(pp.n));
    t.value = s;
    // log p / sqrt n <= log L / (2 sqrt L) for n = p^k >= L (k >= 2), times a count of k-th powers.
    const double L = t.lo;
    double count = 0.0;
    const int kmax = static_cast<int>(std::floor(std::log(t.hi) / std::log(2.0)));
    for (int k = 2; k <= kmax; ++k)
        count += 1.0 + std::pow(a, 1.0 / k) * (std::exp(2.0 * delta / k) - std::exp(-2.0 * delta / k));
    t.counting_bound = L > std::exp(2.0) ? std::log(L) / (2.0 * std::sqrt(L)) * count
                                         : std::numeric_limits<double>::infinity();
    t.closed_bound = closed_prime_power_bound(a);
    return t;
}

}  // namespace fgap
