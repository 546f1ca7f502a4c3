#include "levysim/gaussian_source.hpp"

namespace levysim {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

constexpr std::size_t kBatch = 8;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

// Ten rounds on Lanes independent counters held in registers; the lane loop
// is innermost so the multiplies of different blocks overlap.
template <std::size_t Lanes>
inline void philox_rounds(std::uint64_t* __restrict c, std::uint64_t k0, std::uint64_t k1) {
    std::uint64_t x0[Lanes], x1[Lanes], x2[Lanes], x3[Lanes];
    for (std::size_t l = 0; l < Lanes; ++l) {
        x0[l] = c[4 * l];
        x1[l] = c[4 * l + 1];
        x2[l] = c[4 * l + 2];
        x3[l] = c[4 * l + 3];
    }
#pragma GCC unroll 10
    for (int round = 0; round < 10; ++round) {
#pragma GCC unroll 8
        for (std::size_t l = 0; l < Lanes; ++l) {
            std::uint64_t hi0, lo0, hi1, lo1;
            mulhilo(kMul0, x0[l], hi0, lo0);
            mulhilo(kMul1, x2[l], hi1, lo1);
            x0[l] = hi1 ^ x1[l] ^ k0;
            x1[l] = lo1;
            x2[l] = hi0 ^ x3[l] ^ k1;
            x3[l] = lo0;
        }
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    for (std::size_t l = 0; l < Lanes; ++l) {
        c[4 * l] = x0[l];
        c[4 * l + 1] = x1[l];
        c[4 * l + 2] = x2[l];
        c[4 * l + 3] = x3[l];
    }
}

}  // namespace

Philox4x64::Philox4x64(StreamSpec spec) : key_{spec.seed, 0}, stream_(spec.stream_id) {
    static_assert(kBlocks == kBatch);
}

std::array<std::uint64_t, 4> Philox4x64::block(std::array<std::uint64_t, 4> counter, std::array<std::uint64_t, 2> key) {
    std::array<std::uint64_t, 4> c = counter;
    philox_rounds<1>(c.data(), key[0], key[1]);
    return c;
}

void Philox4x64::refill() {
    for (std::size_t l = 0; l < kBatch; ++l) {
        buffer_[4 * l] = block_ + l;
        buffer_[4 * l + 1] = stream_;
        buffer_[4 * l + 2] = 0;
        buffer_[4 * l + 3] = 0;
    }
    philox_rounds<kBatch>(buffer_.data(), key_[0], key_[1]);
    block_ += kBatch;
    used_ = 0;
}

NormalStream::NormalStream(StreamSpec spec) : spec_(spec), engine_(spec) {}

NormalStream open_stream(StreamSpec spec) { return NormalStream(spec); }

std::vector<double> draw_normal_vector(NormalStream& stream, std::size_t len) {
    std::vector<double> out(len);
    stream.fill(out);
    return out;
}

}  // namespace levysim
