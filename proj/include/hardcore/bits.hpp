#pragma once

// Minimal dynamic bitset for dense conflict graphs.

#include <bit>
#include <cstdint>
#include <vector>

namespace hardcore {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }

    void set_all() {
        for (auto& w : w_) w = ~std::uint64_t{0};
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    /// Lowest set index, or size() when empty.
    std::size_t first() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
        return n_;
    }

    /// Lowest set index strictly above i, or size().
    std::size_t next(std::size_t i) const {
        ++i;
        if (i >= n_) return n_;
        std::size_t k = i >> 6;
        std::uint64_t w = w_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
            if (++k >= w_.size()) return n_;
            w = w_[k];
        }
    }

    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bits& operator^=(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    /// this &= ~o
    Bits& subtract(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }
    bool intersects(const Bits& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

    /// (this ^ o) & mask is empty.
    bool agrees_on(const Bits& o, const Bits& mask) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if ((w_[k] ^ o.w_[k]) & mask.w_[k]) return false;
        return true;
    }
    friend bool operator==(const Bits&, const Bits&) = default;
    friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace hardcore
