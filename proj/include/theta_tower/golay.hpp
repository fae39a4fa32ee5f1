#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace theta_tower
{

/// Binary linear code of length 24, words packed into the low 24 bits.
class BinaryCode
{
public:
    static constexpr int length = 24;
    std::vector<std::uint32_t> generators;

    BinaryCode() = default;
    explicit BinaryCode(std::vector<std::uint32_t> gens) : generators(std::move(gens)) { rebuild_echelon(); }

    void add_generator(std::uint32_t g)
    {
        generators.push_back(g);
        rebuild_echelon();
    }

    std::size_t dimension() const { return generators.size(); }

    /// All 2^dim codewords, ordered by their generator-coefficient index.
    std::vector<std::uint32_t> words() const
    {
        std::vector<std::uint32_t> out(std::size_t{1} << dimension(), 0);
        for (std::size_t i = 1; i < out.size(); ++i)
        {
            const int low = std::countr_zero(i);
            out[i] = out[i & (i - 1)] ^ generators[static_cast<std::size_t>(low)];
        }
        return out;
    }

    /// Count of codewords per Hamming weight 0..24.
    std::array<std::int64_t, 25> weight_distribution() const
    {
        std::array<std::int64_t, 25> w{};
        for (auto c : words())
            ++w[static_cast<std::size_t>(std::popcount(c))];
        return w;
    }

    /// Membership by reduction against an echelon basis.
    bool contains(std::uint32_t word) const
    {
        for (auto e : echelon_)
            if (word & (1u << (31 - std::countl_zero(e))))
                word ^= e;
        return word == 0;
    }

private:
    void rebuild_echelon()
    {
        echelon_.clear();
        for (auto g : generators)
        {
            for (auto e : echelon_)
                if (g & (1u << (31 - std::countl_zero(e))))
                    g ^= e;
            if (g == 0)
                continue;
            const std::uint32_t lead = 1u << (31 - std::countl_zero(g));
            for (auto& e : echelon_)
                if (e & lead)
                    e ^= g;
            echelon_.push_back(g);
        }
    }

    std::vector<std::uint32_t> echelon_; // reduced: each leading bit appears in exactly one row
};

class GolayError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The lexicographic code of length 24 and minimum distance 8, built greedily and then
/// checked against every invariant of the extended binary Golay code.
inline BinaryCode build_golay()
{
    constexpr std::uint32_t space = 1u << 24;
    // near[v] != 0 iff v is within distance 7 of the current code.
    std::vector<std::uint8_t> near(space, 0);
    for (std::uint32_t v = 0; v < space; ++v)
        if (std::popcount(v) <= 7)
            near[v] = 1;

    BinaryCode code;
    std::uint32_t cursor = 0;
    while (code.dimension() < 12)
    {
        while (cursor < space && near[cursor])
            ++cursor;
        if (cursor == space)
            throw GolayError("lexicode search exhausted before dimension 12");
        const std::uint32_t b = cursor;
        code.add_generator(b);
        // near(C + <b>) = near(C) u (b + near(C))
        for (std::uint32_t v = 0; v < space; ++v)
            if (near[v] & 1)
                near[v ^ b] |= 2;
        for (std::uint32_t v = 0; v < space; ++v)
            near[v] = near[v] ? 1 : 0;
    }

    // Self-check: self-dual, doubly even, minimum weight 8, 759 octads.
    for (auto a : code.generators)
        for (auto b : code.generators)
            if (std::popcount(a & b) % 2 != 0)
                throw GolayError("generators are not mutually orthogonal");
    const auto w = code.weight_distribution();
    for (std::size_t k = 1; k < 8; ++k)
        if (w[k] != 0)
            throw GolayError("code has a word of weight below 8");
    for (std::size_t k = 0; k <= 24; ++k)
        if (k % 4 != 0 && w[k] != 0)
            throw GolayError("code is not doubly even");
    if (w[8] != 759)
        throw GolayError("code does not have 759 octads");
    return code;
}

/// The Niemeier lattice with root system 24A1, realized as
/// { x in Z^24 : x mod 2 in C } with norm (sum x_i^2) / 2.
struct NiemeierModel
{
    BinaryCode code;

    static std::uint32_t parity_word(const std::array<int, 24>& x)
    {
        std::uint32_t w = 0;
        for (int i = 0; i < 24; ++i)
            if (x[static_cast<std::size_t>(i)] % 2 != 0)
                w |= 1u << i;
        return w;
    }

    bool contains(const std::array<int, 24>& x) const { return code.contains(parity_word(x)); }

    /// Lattice norm (sum x_i^2)/2; a Rational since non-members may give odd sums.
    static Rational norm(const std::array<int, 24>& x)
    {
        long s = 0;
        for (int v : x)
            s += static_cast<long>(v) * v;
        return make_rational(s, 2);
    }

    /// A random lattice vector: codeword plus twice a random integer vector.
    template <typename Rng>
    std::array<int, 24> random_vector(Rng& rng, int spread = 3) const
    {
        auto all = code.words();
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        std::uniform_int_distribution<int> coord(-spread, spread);
        const std::uint32_t c = all[pick(rng)];
        std::array<int, 24> x{};
        for (int i = 0; i < 24; ++i)
            x[static_cast<std::size_t>(i)] = static_cast<int>((c >> i) & 1u) + 2 * coord(rng);
        return x;
    }
};

/// Norm-2 vectors of the model, optionally restricted to those vanishing on `excluded`
/// coordinates (i.e. orthogonal to the A1 components 2e_i for i in `excluded`).
/// Exhaustive over all integer patterns with sum x_i^2 = 4: one entry +-2 or four entries +-1.
inline std::vector<std::array<int, 24>> niemeier_roots(const NiemeierModel& model, std::uint32_t excluded = 0)
{
    std::vector<std::array<int, 24>> roots;
    for (int i = 0; i < 24; ++i)
    {
        if (excluded & (1u << i))
            continue;
        for (int s : {-2, 2})
        {
            std::array<int, 24> x{};
            x[static_cast<std::size_t>(i)] = s;
            if (model.contains(x))
                roots.push_back(x);
        }
    }
    for (int a = 0; a < 24; ++a)
        for (int b = a + 1; b < 24; ++b)
            for (int c = b + 1; c < 24; ++c)
                for (int d = c + 1; d < 24; ++d)
                {
                    const std::uint32_t support = (1u << a) | (1u << b) | (1u << c) | (1u << d);
                    if (support & excluded)
                        continue;
                    for (int signs = 0; signs < 16; ++signs)
                    {
                        std::array<int, 24> x{};
                        const int idx[4] = {a, b, c, d};
                        for (int k = 0; k < 4; ++k)
                            x[static_cast<std::size_t>(idx[k])] = (signs >> k) & 1 ? -1 : 1;
                        if (model.contains(x))
                            roots.push_back(x);
                    }
                }
    return roots;
}

inline std::int64_t niemeier_root_count(const NiemeierModel& model)
{
    return static_cast<std::int64_t>(niemeier_roots(model).size());
}

struct ComplementRootData
{
    std::int64_t roots_removed = 0;
    std::int64_t n_k = 0; // N(K_m) = #R_{-2}(K_m) / 2
};

/// Root data of the complement of mA1 embedded along the A1 components listed in `components`.
inline ComplementRootData complement_root_data(const NiemeierModel& model, const std::vector<int>& components)
{
    std::uint32_t mask = 0;
    for (int c : components)
    {
        if (c < 0 || c >= 24 || (mask & (1u << c)))
            throw std::invalid_argument("invalid or repeated A1 component");
        mask |= 1u << c;
    }
    const auto all = niemeier_root_count(model);
    const auto kept = static_cast<std::int64_t>(niemeier_roots(model, mask).size());
    return ComplementRootData{all - kept, kept / 2};
}

/// Components 0..m-1; m in 0..4.
inline ComplementRootData complement_root_data(const NiemeierModel& model, int m)
{
    if (m < 0 || m > 4)
        throw std::invalid_argument("complement_root_data: m must be in 0..4");
    std::vector<int> comps;
    for (int i = 0; i < m; ++i)
        comps.push_back(i);
    return complement_root_data(model, comps);
}

/// Weight 12 + N(K_m) of the quasi-pullback for m in 1..4.
inline std::int64_t quasi_pullback_weight(const NiemeierModel& model, int m)
{
    if (m < 1 || m > 4)
        throw std::invalid_argument("quasi_pullback_weight: m must be in 1..4");
    return 12 + complement_root_data(model, m).n_k;
}

/// Number of model vectors of lattice norm N (sum x_i^2 = 2N), grouped by the parity codeword:
/// a codeword of weight w contributes [t^{2N}] f_odd(t)^w f_even(t)^{24-w}.
inline Integer niemeier_representation_count(const NiemeierModel& model, long lattice_norm)
{
    if (lattice_norm < 0)
        throw std::invalid_argument("norm must be nonnegative");
    const long target = 2 * lattice_norm;
    std::vector<Integer> odd(static_cast<std::size_t>(target) + 1, 0), even(static_cast<std::size_t>(target) + 1, 0);
    for (long k = -target; k <= target; ++k)
    {
        const long sq = k * k;
        if (sq > target)
            continue;
        (k % 2 == 0 ? even : odd)[static_cast<std::size_t>(sq)] += 1;
    }
    auto mul = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
        std::vector<Integer> c(a.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0)
                for (std::size_t j = 0; i + j < a.size(); ++j)
                    c[i + j] += a[i] * b[j];
        return c;
    };
    std::vector<Integer> unit(static_cast<std::size_t>(target) + 1, 0);
    unit[0] = 1;
    const auto weights = model.code.weight_distribution();
    Integer total = 0;
    for (std::size_t w = 0; w <= 24; ++w)
    {
        if (weights[w] == 0)
            continue;
        std::vector<Integer> p = unit;
        for (std::size_t i = 0; i < w; ++i)
            p = mul(p, odd);
        for (std::size_t i = w; i < 24; ++i)
            p = mul(p, even);
        total += Integer(static_cast<long>(weights[w])) * p[static_cast<std::size_t>(target)];
    }
    return total;
}

} // namespace theta_tower
