#pragma once

#include <compare>
#include <cstdint>
#include <limits>

namespace cover {

// Exponential clock value. +infinity is a real participant in comparisons
// (it always loses a min); it is produced only by rate 0.
struct ClockValue {
    double value = 0.0;

    static ClockValue infinite() {
        return ClockValue{std::numeric_limits<double>::infinity()};
    }
    bool is_infinite() const {
        return value == std::numeric_limits<double>::infinity();
    }
    auto operator<=>(const ClockValue&) const = default;
};

// Counter-based random stream in the SplittableRandom style: the j-th draw
// is a pure function of (master_seed, stream_id, j), so any (seed, stream,
// index) triple reproduces bit-identically on every platform and trials can
// be sharded across threads without coordination.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // [0, 1)
    double uniform01();
    // (0, 1] -- safe to feed into log()
    double uniform_open_closed();
    // (0, 1)
    double uniform_open_open();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t draw_count() const { return index_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t base_;
    std::uint64_t gamma_;
    std::uint64_t index_ = 0;
};

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

// Exp(rate) by inverse transform with U in (0,1]; Exp(0) is defined as
// +infinity. Negative or non-finite rates are parameter errors.
ClockValue sample_exponential(double rate, RandomStream& stream);

}  // namespace cover
