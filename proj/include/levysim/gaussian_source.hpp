#pragma once

// Seedable standard-normal streams with cheap independent substreams.
//
// The bit source is Philox4x64-10, a counter-based generator: the 64-bit
// seed is the key, the counter is (block index, stream id, 0, 0), so opening
// stream k costs nothing and never overlaps another stream. Normals are produced by the exact ziggurat transform of
// Boost.Random, which keeps no cached values between calls.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/random/normal_distribution.hpp>

namespace levysim {

struct StreamSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Philox4x64-10 counter-based engine (uniform_random_bit_generator).
/// Each block yields four 64-bit outputs in word order.
class Philox4x64 {
public:
    using result_type = std::uint64_t;

    explicit Philox4x64(StreamSpec spec);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        if (used_ == kOutputs) refill();
        return buffer_[used_++];
    }

    /// Raw block function, exposed for known-answer tests.
    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> counter,
                                              std::array<std::uint64_t, 2> key);

private:
    static constexpr std::size_t kBlocks = 8;  // blocks per refill
    static constexpr std::size_t kOutputs = 4 * kBlocks;

    void refill();

    std::array<std::uint64_t, 2> key_{};
    std::uint64_t block_ = 0;
    std::uint64_t stream_ = 0;
    std::array<std::uint64_t, kOutputs> buffer_{};
    std::size_t used_ = kOutputs;
};

/// Stateful N(0,1) stream. Single owner; not thread safe.
class NormalStream {
public:
    explicit NormalStream(StreamSpec spec);

    double next() { ++draws_; return dist_(engine_); }
    void fill(std::span<double> out) {
        for (double& v : out) v = dist_(engine_);
        draws_ += out.size();
    }

    /// Number of normals handed out so far.
    std::uint64_t draws() const { return draws_; }
    const StreamSpec& spec() const { return spec_; }

private:
    StreamSpec spec_;
    Philox4x64 engine_;
    boost::random::normal_distribution<double> dist_{0.0, 1.0};
    std::uint64_t draws_ = 0;
};

NormalStream open_stream(StreamSpec spec);

/// Advances the stream by exactly len draws.
std::vector<double> draw_normal_vector(NormalStream& stream, std::size_t len);

}  // namespace levysim
