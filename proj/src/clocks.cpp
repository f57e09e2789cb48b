#include "cover/clocks.hpp"

#include <bit>
#include <cmath>

#include "cover/errors.hpp"

namespace cover {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stafford mix13 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-stream increment: odd, with enough bit transitions (Steele/Lea/Flood).
std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    const int transitions = std::popcount(z ^ (z >> 1));
    return (transitions < 24) ? z ^ 0xaaaaaaaaaaaaaaaaULL : z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    base_ = mix64(mix64(master_seed + kGolden) ^ mix64(stream_id + 0x5851f42d4c957f2dULL));
    gamma_ = mix_gamma(base_ + kGolden);
}

std::uint64_t RandomStream::next_u64() {
    ++index_;
    return mix64(base_ + gamma_ * index_);
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open_closed() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform_open_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RandomStream(master_seed, stream_id);
}

ClockValue sample_exponential(double rate, RandomStream& stream) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw ParameterError("sample_exponential: rate must be finite and >= 0");
    }
    if (rate == 0.0) {
        return ClockValue::infinite();
    }
    return ClockValue{-std::log(stream.uniform_open_closed()) / rate};
}

}  // namespace cover
