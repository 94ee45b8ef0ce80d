/*
   Copyright 2026 The fsosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>

namespace fsosec {

/// Philox4x32-10 counter-based block cipher.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept;
};

/// Reproducible uniform stream keyed by (seed, stream id).
///
/// Block b of stream (seed, id) is Philox(counter = {b, id}, key = seed), so
/// any block can be reached in O(1) with seek(). Parallel shards that own
/// disjoint block ranges therefore reproduce the serial sequence exactly.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    /// Independent stream sharing this seed.
    RngStream substream(std::uint64_t stream_id) const noexcept { return {seed_, stream_id}; }

    void seek(std::uint64_t block) noexcept;
    std::uint64_t block_position() const noexcept { return block_; }

    /// Both uniforms of the current block, then advance one block.
    std::array<double, 2> next_pair() noexcept;

    /// One uniform in (0, 1); consumes half a block.
    double next_uniform() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Maps 64 random bits to the open interval (0, 1) on a 2^-52 grid.
inline double bits_to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

} // namespace fsosec
