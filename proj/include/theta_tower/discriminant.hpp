#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "lattice.hpp"
#include "matrix.hpp"

namespace theta_tower
{

/// q(x) = (x, x) mod 2 for x in the dual lattice, as a rational in [0, 2).
inline Rational discriminant_form(const GramLattice& lattice, const LatticeVector& coset_rep)
{
    if (!in_dual(lattice, coset_rep))
        throw LatticeError("coset representative is not in the dual of " + lattice.name());
    return mod_rational(norm(lattice, coset_rep), Rational(2));
}

/// Finite quadratic module L^dual / L.
struct DiscriminantGroup
{
    std::vector<Integer> invariant_factors;  // nontrivial factors only; product = |det G|
    std::vector<LatticeVector> generators;   // one per invariant factor, in L-basis coordinates
    std::vector<LatticeVector> reps;         // canonical representatives, coordinates in [0, 1)
    std::vector<Rational> q_values;          // discriminant form per element, in [0, 2)

    std::size_t order() const { return reps.size(); }

    /// Index of the class of x (x must lie in the dual lattice).
    std::size_t index_of(const LatticeVector& x) const
    {
        auto it = lookup_.find(canonical(x));
        if (it == lookup_.end())
            throw LatticeError("vector is not in the dual lattice");
        return it->second;
    }

    /// Mixed-radix digits of element i over the generators.
    const std::vector<long>& digits(std::size_t i) const { return digits_[i]; }

    static LatticeVector canonical(const LatticeVector& x)
    {
        LatticeVector r = x;
        for (auto& c : r.coords)
            c = frac(c);
        return r;
    }

    // Filled in by dual_discriminant.
    std::map<LatticeVector, std::size_t> lookup_;
    std::vector<std::vector<long>> digits_;
};

/// Builds D(L) from the Smith form of the Gram matrix.
inline DiscriminantGroup dual_discriminant(const GramLattice& lattice)
{
    const std::size_t n = lattice.rank();
    DiscriminantGroup d;
    if (n == 0)
    {
        d.reps.push_back(LatticeVector{});
        d.q_values.push_back(Rational(0));
        d.lookup_[LatticeVector{}] = 0;
        d.digits_.push_back({});
        return d;
    }
    SmithForm s = smith_normal_form(lattice.gram());
    // G = U^{-1} D V^{-1}  =>  G^{-1} U^{-1} = V D^{-1}; column k of V / d_k generates a cyclic factor.
    std::vector<long> orders;
    for (std::size_t k = 0; k < n; ++k)
    {
        const Integer& dk = s.diagonal(k, k);
        if (dk == 0)
            throw LatticeError("degenerate Gram matrix");
        if (dk == 1)
            continue;
        LatticeVector g = LatticeVector::zero(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            g.coords[i] = Rational(s.right(i, k)) / Rational(dk);
            g.coords[i].canonicalize();
        }
        d.invariant_factors.push_back(dk);
        d.generators.push_back(g);
        orders.push_back(to_long(dk));
    }
    std::size_t total = 1;
    for (long o : orders)
        total *= static_cast<std::size_t>(o);
    if (total > (std::size_t{1} << 16))
        throw LatticeError("discriminant group too large to tabulate");

    std::vector<long> digit(orders.size(), 0);
    for (std::size_t e = 0; e < total; ++e)
    {
        LatticeVector x = LatticeVector::zero(n);
        for (std::size_t k = 0; k < orders.size(); ++k)
            if (digit[k] != 0)
                x = x + Rational(digit[k]) * d.generators[k];
        x = DiscriminantGroup::canonical(x);
        d.lookup_[x] = d.reps.size();
        d.q_values.push_back(mod_rational(norm(lattice, x), Rational(2)));
        d.reps.push_back(x);
        d.digits_.push_back(digit);
        for (std::size_t k = 0; k < orders.size(); ++k)
        {
            if (++digit[k] < orders[k])
                break;
            digit[k] = 0;
        }
    }
    if (d.lookup_.size() != total)
        throw std::logic_error("discriminant representatives are not distinct");
    return d;
}

/// Orthogonal group of a discriminant form, found by exhaustive search.
struct DiscriminantIsometries
{
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> generators; // each a permutation of element indices
};

inline DiscriminantIsometries disc_orthogonal_group_order(const GramLattice& lattice, std::size_t size_limit = 4096)
{
    const DiscriminantGroup d = dual_discriminant(lattice);
    if (d.order() > size_limit)
        throw LatticeError("discriminant group of order " + std::to_string(d.order()) + " exceeds search limit");
    const std::size_t n = d.order();
    const std::size_t r = d.generators.size();

    auto bil = [&](const LatticeVector& x, const LatticeVector& y) { return frac(inner(lattice, x, y)); };
    auto element_order = [&](std::size_t e) {
        long o = 1;
        LatticeVector acc = d.reps[e];
        while (!(DiscriminantGroup::canonical(acc) == LatticeVector::zero(lattice.rank())))
        {
            acc = acc + d.reps[e];
            ++o;
        }
        return o;
    };
    std::vector<long> orders(n);
    for (std::size_t e = 0; e < n; ++e)
        orders[e] = element_order(e);

    std::vector<std::size_t> gen_index(r);
    for (std::size_t k = 0; k < r; ++k)
        gen_index[k] = d.index_of(d.generators[k]);

    std::vector<std::vector<std::size_t>> automorphisms;
    std::vector<std::size_t> image(r);
    std::function<void(std::size_t)> search = [&](std::size_t k) {
        if (k == r)
        {
            // Extend to all elements, check bijectivity and q-preservation.
            std::vector<std::size_t> perm(n);
            std::vector<bool> hit(n, false);
            for (std::size_t e = 0; e < n; ++e)
            {
                LatticeVector y = LatticeVector::zero(lattice.rank());
                const auto& dg = d.digits(e);
                for (std::size_t j = 0; j < r; ++j)
                    if (dg[j] != 0)
                        y = y + Rational(dg[j]) * d.reps[image[j]];
                std::size_t idx = d.index_of(y);
                if (hit[idx] || d.q_values[idx] != d.q_values[e])
                    return;
                hit[idx] = true;
                perm[e] = idx;
            }
            automorphisms.push_back(std::move(perm));
            return;
        }
        const std::size_t g = gen_index[k];
        for (std::size_t cand = 0; cand < n; ++cand)
        {
            if (orders[cand] != orders[g] || d.q_values[cand] != d.q_values[g])
                continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j)
                ok = bil(d.reps[cand], d.reps[image[j]]) == bil(d.reps[g], d.reps[gen_index[j]]);
            if (!ok)
                continue;
            image[k] = cand;
            search(k + 1);
        }
    };
    search(0);

    DiscriminantIsometries out;
    out.order = automorphisms.size();

    // Greedy generating set: add any automorphism outside the subgroup generated so far.
    auto compose = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            c[i] = a[b[i]];
        return c;
    };
    std::set<std::vector<std::size_t>> generated;
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i)
        id[i] = i;
    generated.insert(id);
    for (const auto& a : automorphisms)
    {
        if (generated.count(a))
            continue;
        out.generators.push_back(a);
        std::vector<std::vector<std::size_t>> frontier(generated.begin(), generated.end());
        while (!frontier.empty())
        {
            std::vector<std::vector<std::size_t>> next;
            for (const auto& f : frontier)
                for (const auto& g : out.generators)
                {
                    auto c = compose(g, f);
                    if (generated.insert(c).second)
                        next.push_back(std::move(c));
                }
            frontier = std::move(next);
        }
    }
    return out;
}

} // namespace theta_tower
