#pragma once

// Case labels, sliding lookup and D* for (lattice, D^2).

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hardcore/errors.hpp"
#include "hardcore/lattice.hpp"

namespace hardcore {

/// Prime factorization by trial division, ascending primes.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// n = a^2 + ab + b^2 for some integers a, b.
inline bool is_loeschian(i64 n) {
    if (n < 0) return false;
    if (n == 0) return true;
    for (auto [p, e] : factorize(n))
        if (p % 3 == 2 && e % 2) return false;
    return true;
}

inline bool is_sum_of_two_squares(i64 n) {
    if (n < 0) return false;
    if (n == 0) return true;
    for (auto [p, e] : factorize(n))
        if (p % 4 == 3 && e % 2) return false;
    return true;
}

enum class CaseTag { TA1, TA2, TB, HA1, HA2, HB, HC, HExceptional, ZGeneric, NotAttainable };

inline std::string_view to_string(CaseTag t) {
    switch (t) {
        case CaseTag::TA1: return "TA1";
        case CaseTag::TA2: return "TA2";
        case CaseTag::TB: return "TB";
        case CaseTag::HA1: return "HA1";
        case CaseTag::HA2: return "HA2";
        case CaseTag::HB: return "HB";
        case CaseTag::HC: return "HC";
        case CaseTag::HExceptional: return "HExceptional";
        case CaseTag::ZGeneric: return "ZGeneric";
        case CaseTag::NotAttainable: return "NotAttainable";
    }
    return "?";
}

struct CaseLabel {
    CaseTag tag = CaseTag::NotAttainable;
    i64 dstar2 = 0;  // set only for HC

    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

/// Exceptional honeycomb values: the PGS class is unique but non-lattice.
inline constexpr std::array<i64, 10> kH2Exceptional{1, 13, 16, 28, 49, 64, 67, 97, 157, 256};

inline constexpr std::array<i64, 4> kH2Sliding{4, 7, 31, 133};

/// The 39 published sliding values on Z^2, verbatim.
inline constexpr std::array<i64, 39> kZ2Sliding{
    4,    8,    9,    18,   20,   29,   45,   72,    80,    90,    106,   121,   157,
    160,  218,  281,  392,  521,  698,  821,  1042,  1325,  1348,  1517,  1565,  2005,
    2792, 3034, 3709, 4453, 4756, 6865, 11449, 12740, 13225, 15488, 22784, 29890, 37970};

/// Honeycomb values not covered by the D* density formula.
inline constexpr std::array<i64, 14> kH2Special{1, 4, 7, 13, 16, 28, 31, 49, 64, 67, 97, 133, 157, 256};

template <std::size_t N>
constexpr bool contains_value(const std::array<i64, N>& a, i64 v) {
    return std::find(a.begin(), a.end(), v) != a.end();
}

namespace detail {

inline CaseTag triangular_case(i64 d2) {
    int total = 0;
    for (auto [p, e] : factorize(d2))
        if (p % 3 == 1) total += e;
    if (total == 0) return CaseTag::TA1;
    if (total == 1) return CaseTag::TA2;
    return CaseTag::TB;
}

}  // namespace detail

/// Smallest Loeschian number strictly above d2 and divisible by 3.
inline i64 dstar(i64 d2) {
    if (d2 < 1 || !is_loeschian(d2) || d2 % 3 == 0)
        throw DomainError("dstar requires an H2-attainable d2 not divisible by 3, got " + std::to_string(d2));
    // 3 | n and n Loeschian  <=>  n = 3m with m Loeschian.
    for (i64 m = d2 / 3 + 1;; ++m)
        if (is_loeschian(m)) return 3 * m;
}

inline CaseLabel classify(LatticeKind k, i64 d2) {
    if (d2 < 1 || !attainable(k, d2)) return {CaseTag::NotAttainable, 0};
    switch (k) {
        case LatticeKind::A2: return {detail::triangular_case(d2), 0};
        case LatticeKind::Z2: return {CaseTag::ZGeneric, 0};
        case LatticeKind::H2: {
            if (contains_value(kH2Exceptional, d2)) return {CaseTag::HExceptional, 0};
            if (d2 % 3 == 0) {
                switch (detail::triangular_case(d2)) {
                    case CaseTag::TA1: return {CaseTag::HA1, 0};
                    case CaseTag::TA2: return {CaseTag::HA2, 0};
                    default: return {CaseTag::HB, 0};
                }
            }
            return {CaseTag::HC, dstar(d2)};
        }
    }
    return {};
}

/// Free-text remark attached to a classification, empty when there is none.
inline std::string case_remark(LatticeKind k, i64 d2) {
    if (k == LatticeKind::H2 && d2 == 67)
        return "two PGS classes, one of which is non-lattice";
    if (k == LatticeKind::H2 && contains_value(kH2Exceptional, d2))
        return "unique PGS class, non-lattice; detection only";
    return {};
}

enum class SlidingSource { Lookup, Verified };

struct SlidingStatus {
    bool sliding = false;
    SlidingSource source = SlidingSource::Lookup;
};

inline SlidingStatus sliding_status(LatticeKind k, i64 d2) {
    switch (k) {
        case LatticeKind::H2: return {contains_value(kH2Sliding, d2), SlidingSource::Lookup};
        case LatticeKind::Z2: return {contains_value(kZ2Sliding, d2), SlidingSource::Lookup};
        case LatticeKind::A2: return {false, SlidingSource::Lookup};
    }
    return {};
}

}  // namespace hardcore
