#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "enumerate.hpp"
#include "golay.hpp"
#include "lattice.hpp"

namespace theta_tower
{

/// The Golay code, built once per process.
inline const BinaryCode& golay_code()
{
    static const BinaryCode code = build_golay();
    return code;
}

inline const NiemeierModel& niemeier_model()
{
    static const NiemeierModel model{golay_code()};
    return model;
}

inline const std::vector<std::string>& repnum_lattice_names()
{
    static const std::vector<std::string> names{"E7", "D6", "A1+D4", "4A1", "E8", "Niemeier"};
    return names;
}

/// The named lattices as abstract Gram lattices (the Niemeier lattice is handled separately).
inline GramLattice named_lattice(const std::string& name)
{
    if (name == "E7")
        return lattice_E7();
    if (name == "D6")
        return lattice_D(6);
    if (name == "A1+D4")
        return direct_sum(lattice_mA1(1), lattice_D(4), "A1+D4");
    if (name == "4A1")
        return lattice_mA1(4);
    if (name == "E8")
        return lattice_E8();
    throw std::invalid_argument("unsupported lattice: " + name);
}

/// Number of lattice vectors of norm (x, x) = norm.
inline Integer representation_number(const std::string& name, long norm)
{
    if (norm < 0 || norm % 2 != 0)
        throw std::invalid_argument("norm must be a nonnegative even integer");
    if (name == "Niemeier")
        return niemeier_representation_count(niemeier_model(), norm);
    const GramLattice l = named_lattice(name);
    std::int64_t count = 0;
    ShortVectorEnumerator(l.gram()).for_each(norm, [&](std::span<const long>, std::int64_t n) {
        if (n == norm)
            ++count;
    });
    return Integer(static_cast<long>(count));
}

} // namespace theta_tower
