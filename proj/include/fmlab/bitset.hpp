#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fmlab {

// Fixed-size bitset sized at runtime. Used for solution sets and
// measurable-set systems; most operations are word-parallel.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const noexcept {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const noexcept { return !any(); }

    DynBitset& operator&=(const DynBitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    DynBitset& operator|=(const DynBitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
    friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

    bool operator==(const DynBitset& o) const = default;

    // Lowest set bit, or size() when empty.
    std::size_t first() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return (i << 6) + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return size_;
    }

    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                out.push_back(static_cast<std::uint32_t>((i << 6) + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    std::size_t intersection_count(const DynBitset& o) const noexcept {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    // True when *this is a subset of o.
    bool subset_of(const DynBitset& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace fmlab
