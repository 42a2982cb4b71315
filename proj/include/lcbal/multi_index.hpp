#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace lcbal {

/// Strictly increasing tuple of 0-based basis indices, stored as a bit set.
/// Ambient dimensions up to 64 are supported.
class MultiIndex {
public:
    static constexpr int max_dim = 64;

    MultiIndex() = default;
    static MultiIndex from_mask(std::uint64_t mask) { return MultiIndex(mask); }
    /// Throws StructuralError on repeated, negative or too large entries.
    static MultiIndex from_sorted(const std::vector<int>& entries);
    static MultiIndex single(int i) { return MultiIndex(std::uint64_t{1} << i); }

    std::uint64_t mask() const { return mask_; }
    int size() const { return std::popcount(mask_); }
    bool contains(int i) const { return (mask_ >> i) & 1U; }
    bool empty() const { return mask_ == 0; }
    std::vector<int> entries() const;
    int max_entry() const { return mask_ == 0 ? -1 : 63 - std::countl_zero(mask_); }

    /// "1,2,4" with 1-based entries.
    std::string to_string() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    /// Lexicographic order on the increasing tuples (equal lengths).
    friend bool operator<(const MultiIndex& a, const MultiIndex& b)
    {
        std::uint64_t diff = a.mask_ ^ b.mask_;
        if (diff == 0)
            return false;
        std::uint64_t low = diff & (~diff + 1);
        if (a.size() != b.size())
            return a.size() < b.size();
        return (a.mask_ & low) != 0;
    }

private:
    explicit MultiIndex(std::uint64_t mask) : mask_(mask) {}
    std::uint64_t mask_ = 0;
};

/// Sign of the shuffle a ++ b -> sorted(a u b); 0 when they overlap.
inline int shuffle_sign(MultiIndex a, MultiIndex b)
{
    if (a.mask() & b.mask())
        return 0;
    // count pairs (i in a, j in b) with i > j
    int inversions = 0;
    std::uint64_t bm = b.mask();
    while (bm) {
        int j = std::countr_zero(bm);
        bm &= bm - 1;
        std::uint64_t above = (j == 63) ? 0 : (a.mask() >> (j + 1));
        inversions += std::popcount(above);
    }
    return (inversions & 1) ? -1 : 1;
}

} // namespace lcbal
