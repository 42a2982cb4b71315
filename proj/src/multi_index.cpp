#include "lcbal/multi_index.hpp"

#include "lcbal/errors.hpp"

namespace lcbal {

MultiIndex MultiIndex::from_sorted(const std::vector<int>& entries)
{
    std::uint64_t m = 0;
    int prev = -1;
    for (int e : entries) {
        if (e < 0 || e >= max_dim)
            throw StructuralError("basis index " + std::to_string(e) + " out of range");
        if (e <= prev)
            throw StructuralError("multi-index entries must be strictly increasing");
        m |= std::uint64_t{1} << e;
        prev = e;
    }
    return MultiIndex(m);
}

std::vector<int> MultiIndex::entries() const
{
    std::vector<int> out;
    std::uint64_t m = mask_;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

std::string MultiIndex::to_string() const
{
    std::string s;
    for (int e : entries()) {
        if (!s.empty())
            s += ",";
        s += std::to_string(e + 1);
    }
    return s;
}

} // namespace lcbal
