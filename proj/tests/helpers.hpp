#pragma once

#include <string>
#include <vector>

#include "oracle.hpp"
#include "wcg/preferences.hpp"
#include "wcg/rules.hpp"

namespace testing_support {

inline wcg::WeightVector wv(const oracle::Weights& w)
{
    return wcg::WeightVector(w);
}

inline wcg::Profile profile_of(const oracle::Electorate& e)
{
    std::string text;
    for (const auto& r : e) {
        if (!text.empty())
            text += ',';
        text += r;
    }
    return wcg::Profile::parse(text);
}

/// Sorted nonzero vectors with sum in [1, max_sum], (sum, lexicographic) order.
inline std::vector<oracle::Weights> sorted_up_to(int n, std::int64_t max_sum)
{
    std::vector<oracle::Weights> out;
    for (std::int64_t s = 1; s <= max_sum; ++s)
        for (const auto& w : oracle::sorted_vectors(n, s))
            out.push_back(w);
    return out;
}

/// All vectors (any order, zero included) with sum in [0, max_sum].
inline std::vector<oracle::Weights> all_up_to(int n, std::int64_t max_sum)
{
    std::vector<oracle::Weights> out;
    for (std::int64_t s = 0; s <= max_sum; ++s)
        for (const auto& w : oracle::all_vectors(n, s))
            out.push_back(w);
    return out;
}

inline std::vector<oracle::Weights> to_lists(const std::vector<wcg::WeightVector>& ws)
{
    std::vector<oracle::Weights> out;
    for (const auto& w : ws)
        out.push_back(w.to_std());
    return out;
}

} // namespace testing_support
