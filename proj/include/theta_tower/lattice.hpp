#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "matrix.hpp"

namespace theta_tower
{

/// Raised when a lattice, vector or generator violates an operation's precondition.
class LatticeError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Coordinates with respect to a lattice basis. Dual-lattice elements have rational entries.
struct LatticeVector
{
    std::vector<Rational> coords;

    LatticeVector() = default;
    explicit LatticeVector(std::vector<Rational> c) : coords(std::move(c)) {}
    static LatticeVector zero(std::size_t rank) { return LatticeVector(std::vector<Rational>(rank, Rational(0))); }
    static LatticeVector of_ints(std::initializer_list<long> values)
    {
        LatticeVector v;
        for (long x : values)
            v.coords.emplace_back(x);
        return v;
    }

    std::size_t size() const { return coords.size(); }
    bool is_integral() const
    {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& r) { return is_integer(r); });
    }

    LatticeVector operator+(const LatticeVector& o) const
    {
        check_same(o);
        LatticeVector r = *this;
        for (std::size_t i = 0; i < size(); ++i)
            r.coords[i] += o.coords[i];
        return r;
    }
    LatticeVector operator-(const LatticeVector& o) const
    {
        check_same(o);
        LatticeVector r = *this;
        for (std::size_t i = 0; i < size(); ++i)
            r.coords[i] -= o.coords[i];
        return r;
    }
    LatticeVector operator-() const
    {
        LatticeVector r = *this;
        for (auto& c : r.coords)
            c = -c;
        return r;
    }
    friend LatticeVector operator*(const Rational& s, const LatticeVector& v)
    {
        LatticeVector r = v;
        for (auto& c : r.coords)
            c *= s;
        return r;
    }
    bool operator==(const LatticeVector&) const = default;
    bool operator<(const LatticeVector& o) const { return coords < o.coords; }

private:
    void check_same(const LatticeVector& o) const
    {
        if (o.size() != size())
            throw LatticeError("lattice vector dimension mismatch");
    }
};

/// Realization of a lattice inside a rational quadratic space Q^d.
struct AmbientModel
{
    std::size_t dim = 0;
    RatMatrix basis; // rank x dim, row i = i-th basis vector
    RatMatrix form;  // dim x dim symmetric bilinear form
};

/// Even positive definite lattice given by its Gram matrix.
class GramLattice
{
public:
    GramLattice(std::string name, IntMatrix gram, std::optional<AmbientModel> ambient = std::nullopt)
        : name_(std::move(name)), gram_(std::move(gram)), ambient_(std::move(ambient))
    {
        validate();
    }

    const std::string& name() const { return name_; }
    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    const std::optional<AmbientModel>& ambient() const { return ambient_; }
    bool has_ambient() const { return ambient_.has_value(); }

    Integer determinant() const { return theta_tower::determinant(gram_); }

    /// Copy with a different label.
    GramLattice renamed(std::string name) const
    {
        GramLattice l = *this;
        l.name_ = std::move(name);
        return l;
    }

    void check_dims(const LatticeVector& x) const
    {
        if (x.size() != rank())
            throw LatticeError("vector of length " + std::to_string(x.size()) + " used with rank-" +
                               std::to_string(rank()) + " lattice " + name_);
    }

private:
    void validate() const
    {
        if (!is_symmetric(gram_))
            throw LatticeError("Gram matrix of " + name_ + " is not symmetric");
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            if (gram_(i, i) % 2 != 0)
                throw LatticeError("lattice " + name_ + " is not even");
        // Sylvester: all leading principal minors positive.
        for (std::size_t k = 1; k <= gram_.rows(); ++k)
        {
            IntMatrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    minor(i, j) = gram_(i, j);
            if (theta_tower::determinant(minor) <= 0)
                throw LatticeError("lattice " + name_ + " is not positive definite");
        }
        if (ambient_)
        {
            const auto& a = *ambient_;
            if (a.basis.rows() != rank() || a.basis.cols() != a.dim || a.form.rows() != a.dim ||
                a.form.cols() != a.dim)
                throw LatticeError("ambient model of " + name_ + " has inconsistent dimensions");
            RatMatrix g = a.basis * a.form * a.basis.transpose();
            if (!(g == to_rational(gram_)))
                throw LatticeError("ambient model of " + name_ + " does not reproduce its Gram matrix");
        }
    }

    std::string name_;
    IntMatrix gram_;
    std::optional<AmbientModel> ambient_;
};

/// x^T G y, exact.
inline Rational inner(const GramLattice& lattice, const LatticeVector& x, const LatticeVector& y)
{
    lattice.check_dims(x);
    lattice.check_dims(y);
    Rational s = 0;
    const auto& g = lattice.gram();
    for (std::size_t i = 0; i < lattice.rank(); ++i)
    {
        if (x.coords[i] == 0)
            continue;
        Rational row = 0;
        for (std::size_t j = 0; j < lattice.rank(); ++j)
            if (g(i, j) != 0 && y.coords[j] != 0)
                row += Rational(g(i, j)) * y.coords[j];
        s += x.coords[i] * row;
    }
    return s;
}

inline Rational norm(const GramLattice& lattice, const LatticeVector& x) { return inner(lattice, x, x); }

/// True when x pairs integrally with every basis vector, i.e. x lies in the dual lattice.
inline bool in_dual(const GramLattice& lattice, const LatticeVector& x)
{
    lattice.check_dims(x);
    const auto& g = lattice.gram();
    for (std::size_t i = 0; i < lattice.rank(); ++i)
    {
        Rational s = 0;
        for (std::size_t j = 0; j < lattice.rank(); ++j)
            s += Rational(g(i, j)) * x.coords[j];
        if (!is_integer(s))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Ambient coordinates

using AmbientVector = std::vector<Rational>;

inline AmbientVector to_ambient(const GramLattice& lattice, const LatticeVector& x)
{
    if (!lattice.has_ambient())
        throw LatticeError("lattice " + lattice.name() + " has no ambient model");
    lattice.check_dims(x);
    const auto& a = *lattice.ambient();
    AmbientVector v(a.dim, Rational(0));
    for (std::size_t i = 0; i < lattice.rank(); ++i)
        for (std::size_t k = 0; k < a.dim; ++k)
            v[k] += x.coords[i] * a.basis(i, k);
    return v;
}

inline Rational ambient_inner(const AmbientModel& a, const AmbientVector& x, const AmbientVector& y)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            if (a.form(i, j) != 0)
                s += x[i] * a.form(i, j) * y[j];
    return s;
}

/// Basis coordinates of an ambient vector lying in the rational span of the lattice.
inline LatticeVector from_ambient(const GramLattice& lattice, const AmbientVector& v)
{
    if (!lattice.has_ambient())
        throw LatticeError("lattice " + lattice.name() + " has no ambient model");
    const auto& a = *lattice.ambient();
    if (v.size() != a.dim)
        throw LatticeError("ambient vector has wrong dimension");
    const std::size_t n = lattice.rank();
    // Solve G c = B A v.
    std::vector<Rational> rhs(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
    {
        AmbientVector bi(a.dim);
        for (std::size_t k = 0; k < a.dim; ++k)
            bi[k] = a.basis(i, k);
        rhs[i] = ambient_inner(a, bi, v);
    }
    RatMatrix ginv = inverse(to_rational(lattice.gram()));
    LatticeVector c = LatticeVector::zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c.coords[i] += ginv(i, j) * rhs[j];
    if (to_ambient(lattice, c) != v)
        throw LatticeError("ambient vector is not in the span of " + lattice.name());
    return c;
}

/// Membership of an ambient vector in the lattice itself.
inline bool contains_ambient(const GramLattice& lattice, const AmbientVector& v)
{
    try
    {
        return from_ambient(lattice, v).is_integral();
    }
    catch (const LatticeError&)
    {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Built-in lattices

namespace detail
{
inline AmbientModel make_ambient(const std::vector<std::vector<Rational>>& rows, std::size_t dim, const Rational& scale)
{
    AmbientModel a;
    a.dim = dim;
    a.basis = RatMatrix(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < dim; ++k)
            a.basis(i, k) = rows[i][k];
    a.form = RatMatrix(dim, dim);
    for (std::size_t k = 0; k < dim; ++k)
        a.form(k, k) = scale;
    return a;
}

inline IntMatrix gram_from_ambient(const AmbientModel& a)
{
    RatMatrix g = a.basis * a.form * a.basis.transpose();
    IntMatrix out(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
        {
            if (!is_integer(g(i, j)))
                throw LatticeError("ambient model is not integral");
            out(i, j) = g(i, j).get_num();
        }
    return out;
}

inline GramLattice from_model(std::string name, AmbientModel a)
{
    IntMatrix g = gram_from_ambient(a);
    return GramLattice(std::move(name), std::move(g), std::move(a));
}

inline std::vector<Rational> unit(std::size_t dim, std::size_t i, long value = 1)
{
    std::vector<Rational> v(dim, Rational(0));
    v[i] = value;
    return v;
}
} // namespace detail

/// mA1: standard basis of Z^m with the form 2(.,.).
inline GramLattice lattice_mA1(std::size_t m)
{
    if (m == 0)
        throw LatticeError("mA1 requires m >= 1");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < m; ++i)
        rows.push_back(detail::unit(m, i));
    std::string name = (m == 1) ? "A1" : std::to_string(m) + "A1";
    return detail::from_model(name, detail::make_ambient(rows, m, Rational(2)));
}

/// D_m = { x in Z^m : sum x = 0 mod 2 } with the dot product, basis e2+e1, e2-e1, e3-e2, ..., em-e(m-1).
inline GramLattice lattice_D(std::size_t m)
{
    if (m < 2)
        throw LatticeError("D_m requires m >= 2");
    std::vector<std::vector<Rational>> rows;
    auto v = detail::unit(m, 1);
    v[0] = 1;
    rows.push_back(v);
    v = detail::unit(m, 1);
    v[0] = -1;
    rows.push_back(v);
    for (std::size_t i = 2; i < m; ++i)
    {
        auto w = detail::unit(m, i);
        w[i - 1] = -1;
        rows.push_back(w);
    }
    return detail::from_model("D" + std::to_string(m), detail::make_ambient(rows, m, Rational(1)));
}

/// E8 = D8 u (D8 + (1/2,...,1/2)) with the dot product; Bourbaki simple roots as basis.
inline GramLattice lattice_E8()
{
    const std::size_t d = 8;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> a1(d, make_rational(-1, 2));
    a1[0] = make_rational(1, 2);
    a1[7] = make_rational(1, 2);
    rows.push_back(a1);
    auto a2 = detail::unit(d, 0);
    a2[1] = 1;
    rows.push_back(a2);
    for (std::size_t i = 1; i < 7; ++i)
    {
        auto v = detail::unit(d, i);
        v[i - 1] = -1;
        rows.push_back(v);
    }
    return detail::from_model("E8", detail::make_ambient(rows, d, Rational(1)));
}

/// The fixed chain A1 < 2A1 < 3A1 < 4A1 < E8 in ambient E8 coordinates:
/// e1+e2, e1-e2, e3+e4, e5+e6.
inline std::vector<AmbientVector> e8_chain()
{
    auto vec = [](std::initializer_list<long> xs) {
        AmbientVector v;
        for (long x : xs)
            v.emplace_back(x);
        return v;
    };
    return {vec({1, 1, 0, 0, 0, 0, 0, 0}), vec({1, -1, 0, 0, 0, 0, 0, 0}), vec({0, 0, 1, 1, 0, 0, 0, 0}),
            vec({0, 0, 0, 0, 1, 1, 0, 0})};
}

/// Orthogonal direct sum; ambient spaces are stacked when both summands carry one.
inline GramLattice direct_sum(const GramLattice& a, const GramLattice& b, std::string name = {})
{
    const std::size_t n = a.rank() + b.rank();
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j)
            g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j)
            g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
    if (name.empty())
        name = a.name() + "+" + b.name();
    std::optional<AmbientModel> amb;
    if (a.has_ambient() && b.has_ambient())
    {
        const auto& x = *a.ambient();
        const auto& y = *b.ambient();
        AmbientModel m;
        m.dim = x.dim + y.dim;
        m.basis = RatMatrix(n, m.dim);
        m.form = RatMatrix(m.dim, m.dim);
        for (std::size_t i = 0; i < a.rank(); ++i)
            for (std::size_t k = 0; k < x.dim; ++k)
                m.basis(i, k) = x.basis(i, k);
        for (std::size_t i = 0; i < b.rank(); ++i)
            for (std::size_t k = 0; k < y.dim; ++k)
                m.basis(a.rank() + i, x.dim + k) = y.basis(i, k);
        for (std::size_t i = 0; i < x.dim; ++i)
            for (std::size_t j = 0; j < x.dim; ++j)
                m.form(i, j) = x.form(i, j);
        for (std::size_t i = 0; i < y.dim; ++i)
            for (std::size_t j = 0; j < y.dim; ++j)
                m.form(x.dim + i, x.dim + j) = y.form(i, j);
        amb = std::move(m);
    }
    return GramLattice(std::move(name), std::move(g), std::move(amb));
}

namespace detail
{
/// Pairwise size reduction of a basis (columns of `basis`) w.r.t. Gram matrix `g`.
/// Shortens the basis so that |2 (b_i, b_j)| <= (b_j, b_j); shortest vectors first.
inline void size_reduce(IntMatrix& basis, IntMatrix& g)
{
    const std::size_t k = g.rows();
    bool changed = true;
    while (changed)
    {
        changed = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
            {
                if (i == j)
                    continue;
                Integer twice = 2 * abs(g(i, j));
                if (twice <= g(j, j))
                    continue;
                // q = round(g_ij / g_jj)
                Integer num = 2 * g(i, j) + g(j, j);
                Integer den = 2 * g(j, j);
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (q == 0)
                    continue;
                // b_i -= q b_j
                basis.add_col(i, j, -q);
                g.add_row(i, j, -q);
                g.add_col(i, j, -q);
                changed = true;
            }
    }
    // Stable ordering by norm.
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return g(x, x) < g(y, y); });
    IntMatrix nb(basis.rows(), k), ng(k, k);
    for (std::size_t a = 0; a < k; ++a)
    {
        for (std::size_t r = 0; r < basis.rows(); ++r)
            nb(r, a) = basis(r, order[a]);
        for (std::size_t b = 0; b < k; ++b)
            ng(a, b) = g(order[a], order[b]);
    }
    basis = std::move(nb);
    g = std::move(ng);
}
} // namespace detail

/// The sublattice { x in host : (x, g) = 0 for all generators g }, with a reduced basis.
inline GramLattice orthogonal_complement_in(const GramLattice& host, const std::vector<LatticeVector>& generators,
                                            std::string name = {})
{
    const std::size_t n = host.rank();
    for (const auto& g : generators)
    {
        host.check_dims(g);
        if (!g.is_integral())
            throw LatticeError("generator does not lie in host lattice " + host.name());
    }
    // Rows (g^T G); kernel of this integer matrix is the complement.
    IntMatrix constraints(generators.size(), n);
    for (std::size_t r = 0; r < generators.size(); ++r)
        for (std::size_t j = 0; j < n; ++j)
        {
            Integer s = 0;
            for (std::size_t i = 0; i < n; ++i)
                s += generators[r].coords[i].get_num() * host.gram()(i, j);
            constraints(r, j) = s;
        }
    IntMatrix basis = generators.empty() ? IntMatrix::identity(n) : integer_kernel(constraints);
    const std::size_t k = basis.cols();
    IntMatrix g = basis.transpose() * host.gram() * basis;
    detail::size_reduce(basis, g);

    std::optional<AmbientModel> amb;
    if (host.has_ambient())
    {
        const auto& h = *host.ambient();
        AmbientModel a;
        a.dim = h.dim;
        a.form = h.form;
        a.basis = to_rational(basis.transpose()) * h.basis;
        amb = std::move(a);
    }
    if (name.empty())
        name = "complement(" + host.name() + ")";
    GramLattice out(std::move(name), std::move(g), std::move(amb));
    if (out.rank() != k)
        throw std::logic_error("complement rank bookkeeping failed");
    return out;
}

/// Convenience: complement of ambient generators inside a host with an ambient model.
inline GramLattice orthogonal_complement_in(const GramLattice& host, const std::vector<AmbientVector>& generators,
                                            std::string name = {})
{
    std::vector<LatticeVector> gens;
    for (const auto& v : generators)
        gens.push_back(from_ambient(host, v));
    return orthogonal_complement_in(host, gens, std::move(name));
}

/// K_m: the orthogonal complement of the first m chain vectors in E8 (m = 0..4).
inline GramLattice chain_complement(std::size_t m)
{
    if (m > 4)
        throw LatticeError("chain complement defined for m = 0..4");
    static const char* names[] = {"E8", "E7", "D6", "A1+D4", "4A1"};
    auto chain = e8_chain();
    chain.resize(m);
    if (m == 0)
        return lattice_E8();
    return orthogonal_complement_in(lattice_E8(), chain, std::string("K") + std::to_string(m) + "=" + names[m]);
}

inline GramLattice lattice_E7() { return chain_complement(1).renamed("E7"); }

} // namespace theta_tower
